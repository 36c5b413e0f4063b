"""Indexing, enumeration and sampling of small Turing machine spaces.

Machine ``i`` of an (n, m) space is the mixed-radix number whose digits are
the table entries in ``(state, read)`` order, first entry most significant.
Each digit has base ``2 * m * (n + 1)`` and is split as
``(write * 2 + move) * (n + 1) + k``, where move 0 is Left and alternative
``k`` is state ``k + 1`` for ``k < n`` and Halt for ``k == n``. Index 0 is
the machine whose entries are all ``(0, Left, 1)``.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import reduce
from typing import Union

import numpy as np

from . import _kernel
from .distribution import FrequencyTable, RunMeta, TableError, merge
from .machine import HALT, Machine, MachineSpec, Move, Transition, run_from_blank

__all__ = [
    "MAX_INDEX",
    "DEFAULT_BUDGET",
    "Exhaustive",
    "Sampled",
    "EnumerationPlan",
    "BudgetExceededError",
    "MissingOrbitMetadataError",
    "machine_count",
    "digit_base",
    "decode_index",
    "encode_machine",
    "default_cutoff",
    "enumerate_outputs",
    "symmetry_complete",
    "complete_blanks",
]

log = logging.getLogger(__name__)

MAX_INDEX = 2**63 - 1
DEFAULT_BUDGET = 2**25
CHUNK = 1 << 20


class BudgetExceededError(RuntimeError):
    pass


class MissingOrbitMetadataError(TableError):
    pass


def digit_base(spec: MachineSpec) -> int:
    return 2 * spec.symbols * (spec.states + 1)


def machine_count(spec: MachineSpec) -> int:
    """Number of machines, ``(2 m (n+1)) ** (n m)``.

    Raises OverflowError when machine indices would not fit in a signed
    64-bit integer.
    """
    total = digit_base(spec) ** spec.entries
    if total - 1 > MAX_INDEX:
        raise OverflowError(f"{spec} space has {total} machines; indices exceed 64 bits")
    return total


def decode_index(spec: MachineSpec, index: int) -> Machine:
    total = machine_count(spec)
    if not 0 <= index < total:
        raise IndexError(f"index {index} outside 0..{total - 1}")
    n = spec.states
    base = digit_base(spec)
    digits = []
    for _ in range(spec.entries):
        index, d = divmod(index, base)
        digits.append(d)
    table = []
    for d in reversed(digits):
        wd, k = divmod(d, n + 1)
        w, mv = divmod(wd, 2)
        table.append(Transition(w, Move.RIGHT if mv else Move.LEFT, HALT if k == n else k + 1))
    return Machine(spec, tuple(table))


def encode_machine(machine: Machine) -> int:
    n = machine.spec.states
    base = digit_base(machine.spec)
    index = 0
    for t in machine.table:
        k = n if t.next_state == HALT else t.next_state - 1
        mv = 1 if t.move == Move.RIGHT else 0
        index = index * base + (t.write * 2 + mv) * (n + 1) + k
    return index


def default_cutoff(states: int) -> int:
    if states <= 3:
        return 1000
    if states == 4:
        return 107
    if states == 5:
        return 500
    raise ValueError(f"no default cutoff for {states}-state machines; pass one explicitly")


@dataclass(frozen=True)
class Exhaustive:
    pass


@dataclass(frozen=True)
class Sampled:
    count: int
    seed: int

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError("sample count must be positive")
        if not -(2**63) <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


Mode = Union[Exhaustive, Sampled]


@dataclass(frozen=True)
class EnumerationPlan:
    spec: MachineSpec
    mode: Mode = Exhaustive()
    cutoff: int = 1000
    symmetry_reduction: bool = False
    all_blanks: bool = True

    def __post_init__(self) -> None:
        if self.cutoff < 1:
            raise ValueError("cutoff must be >= 1")
        total = machine_count(self.spec)
        if isinstance(self.mode, Sampled):
            if self.mode.count > total:
                raise ValueError(f"sample of {self.mode.count} exceeds the {total} machines of {self.spec}")
            if self.symmetry_reduction:
                raise ValueError("symmetry reduction applies to exhaustive enumeration only")

    @property
    def total(self) -> int:
        return machine_count(self.spec)

    @property
    def work_items(self) -> int:
        """How many machines are actually simulated."""
        if isinstance(self.mode, Sampled):
            return self.mode.count
        return self.total // 2 if self.symmetry_reduction else self.total


# -- blank and mirror completion ---------------------------------------------


def _relabel(s: str, b: int) -> str:
    """Swap symbols 0 and ``b``."""
    if b == 0:
        return s
    zero, other = "0", np.base_repr(b, 36).lower()
    return s.translate(str.maketrans({zero: other, other: zero}))


def complete_blanks(counts: dict[str, int], symbols: int) -> dict[str, int]:
    """Credit the outputs each machine would print from every uniform blank tape.

    Running a machine from a tape of ``b`` symbols is equivalent, up to swapping
    ``0`` and ``b``, to running the relabeled machine from the zero tape. So
    over a whole space the ``b``-blank output counts are the zero-blank counts
    with symbols 0 and ``b`` swapped.
    """
    out: dict[str, int] = {}
    for s, c in counts.items():
        for b in range(symbols):
            t = _relabel(s, b)
            out[t] = out.get(t, 0) + c
    return out


def symmetry_complete(partial: FrequencyTable) -> FrequencyTable:
    """Expand a mirror-reduced table to the table of the full space.

    Every mirror orbit has exactly two machines (the pair differs in the move
    of every entry), and the partner prints the reversed output.
    """
    if not partial.meta or any(m.reduction != "mirror" for m in partial.meta):
        raise MissingOrbitMetadataError("table was not produced by mirror-reduced enumeration")
    counts: dict[str, int] = {}
    for s, c in partial.entries.items():
        counts[s] = counts.get(s, 0) + c
        r = s[::-1]
        counts[r] = counts.get(r, 0) + c
    meta = tuple(replace(m, machines_run=2 * m.machines_run, halters=2 * m.halters, reduction="none")
                 for m in partial.meta)
    return FrequencyTable(counts, meta)


# -- chunked execution -------------------------------------------------------


@dataclass(frozen=True)
class _Chunk:
    states: int
    symbols: int
    kind: str  # "range" | "mirror" | "sample"
    start: int
    count: int
    cutoff: int
    seed: int | None
    all_blanks: bool


def _chunk_indices(chunk: _Chunk) -> np.ndarray:
    spec = MachineSpec(chunk.states, chunk.symbols)
    out = np.empty(chunk.count, dtype=np.int64)
    if chunk.kind == "range":
        out[:] = np.arange(chunk.start, chunk.start + chunk.count, dtype=np.int64)
    elif chunk.kind == "mirror":
        lo_radix = digit_base(spec) ** (spec.entries - 1)
        _kernel.mirror_representatives(chunk.start, chunk.count, lo_radix, chunk.states, out)
    else:
        total = machine_count(spec)
        _kernel.permuted_indices(chunk.start, chunk.count, total, _kernel.half_bits_for(total),
                                 _kernel.round_keys_for(chunk.seed), out)
    return out


def _run_chunk(chunk: _Chunk) -> FrequencyTable:
    spec = MachineSpec(chunk.states, chunk.symbols)
    indices = _chunk_indices(chunk)
    keys = np.empty(chunk.count, dtype=np.int64)
    steps = np.empty(chunk.count, dtype=np.int64)
    _kernel.run_indices(indices, spec.states, spec.symbols, chunk.cutoff,
                        _kernel.max_packed_length(spec.symbols), keys, steps)
    halting = keys != _kernel.NO_HALT
    uniq, freq = np.unique(keys[keys >= 0], return_counts=True)
    counts = {_kernel.unpack_key(int(k), spec.symbols): int(c) for k, c in zip(uniq, freq)}
    for i in np.flatnonzero(keys == _kernel.LONG_OUTPUT):
        out = run_from_blank(decode_index(spec, int(indices[i])), chunk.cutoff).output
        counts[out] = counts.get(out, 0) + 1
    n_halting = int(halting.sum())
    max_steps = int(steps[halting].max()) if n_halting else 0
    if chunk.all_blanks:
        counts = complete_blanks(counts, spec.symbols)
    meta = RunMeta(
        states=spec.states, symbols=spec.symbols,
        mode="sampled" if chunk.kind == "sample" else "exhaustive",
        cutoff=chunk.cutoff, machines_run=chunk.count,
        halters=n_halting * (spec.symbols if chunk.all_blanks else 1),
        seed=chunk.seed, blanks="all" if chunk.all_blanks else "zero",
        max_steps=max_steps, reduction="mirror" if chunk.kind == "mirror" else "none",
    )
    return FrequencyTable(counts, (meta,))


def _chunks(plan: EnumerationPlan, chunk_size: int) -> list[_Chunk]:
    if isinstance(plan.mode, Sampled):
        kind, seed = "sample", plan.mode.seed
    else:
        kind, seed = ("mirror" if plan.symmetry_reduction else "range"), None
    items = plan.work_items
    return [
        _Chunk(plan.spec.states, plan.spec.symbols, kind, start, min(chunk_size, items - start),
               plan.cutoff, seed, plan.all_blanks)
        for start in range(0, items, chunk_size)
    ]


def enumerate_outputs(plan: EnumerationPlan, *, workers: int = 1, budget: int = DEFAULT_BUDGET,
                      chunk_size: int = CHUNK) -> FrequencyTable:
    """Run every machine of the plan from a blank tape and count halting outputs.

    The index range is cut into fixed-size chunks that are run independently
    and merged, so the result does not depend on ``workers``.
    """
    if isinstance(plan.mode, Exhaustive) and plan.total > budget:
        raise BudgetExceededError(
            f"exhaustive {plan.spec} enumeration needs {plan.total} runs, budget is {budget}")
    chunks = _chunks(plan, chunk_size)
    log.info("enumerating %s: %d machines in %d chunks on %d workers",
             plan.spec, plan.work_items, len(chunks), workers)
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(chunks))) as pool:
            parts = list(pool.map(_run_chunk, chunks))
    else:
        parts = [_run_chunk(c) for c in chunks]
    table = reduce(merge, parts, FrequencyTable())
    if plan.symmetry_reduction:
        table = symmetry_complete(table)
    return table


def available_workers() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)
