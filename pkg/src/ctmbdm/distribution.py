"""Frequency and complexity tables.

A :class:`FrequencyTable` counts halting outputs over a machine space; the
empirical algorithmic probability of a string is its share of the halting
runs, and its complexity estimate is ``-log2`` of that share.

Both table kinds round-trip through a small CSV format::

    # space=(2,2) mode=exhaustive cutoff=1000 seed=- machines_run=20736 ...
    string,count
    0,5140
    1,5140

Entries are always written shortest-first, then lexicographically.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, Union

import numpy as np

__all__ = [
    "RunMeta",
    "FrequencyTable",
    "ComplexityTable",
    "Lookup",
    "TableError",
    "TableFormatError",
    "IncompatibleTablesError",
    "EmptyTableError",
    "canonical_order",
    "to_probability",
    "to_complexity",
    "lookup_K",
    "merge",
    "import_table",
    "export_table",
    "read_table",
    "format_table",
]


class TableError(ValueError):
    pass


class TableFormatError(TableError):
    def __init__(self, line: int, message: str, source: str | None = None):
        self.line = line
        where = f"{source}:{line}" if source else f"line {line}"
        super().__init__(f"{where}: {message}")


class IncompatibleTablesError(TableError):
    pass


class EmptyTableError(TableError):
    pass


def canonical_order(s: str) -> tuple[int, str]:
    return (len(s), s)


@dataclass(frozen=True)
class RunMeta:
    """Provenance of one enumeration pass.

    ``blanks="all"`` means every halting machine was also credited with the
    outputs it produces from every other uniform blank tape, which doubles
    the halting runs for binary machines. ``reduction="mirror"`` marks a
    partial table holding one machine per Left/Right mirror pair.
    """

    states: int
    symbols: int
    mode: str
    cutoff: int
    machines_run: int
    halters: int
    seed: int | None = None
    blanks: str = "all"
    max_steps: int = 0
    reduction: str = "none"

    @property
    def runs_per_machine(self) -> int:
        return self.symbols if self.blanks == "all" else 1

    @property
    def compat_key(self) -> tuple:
        return (self.states, self.symbols, self.mode, self.cutoff, self.seed, self.blanks,
                self.reduction)

    def combine(self, other: RunMeta) -> RunMeta:
        return replace(self, machines_run=self.machines_run + other.machines_run,
                       halters=self.halters + other.halters,
                       max_steps=max(self.max_steps, other.max_steps))

    def render(self) -> str:
        seed = "-" if self.seed is None else str(self.seed)
        line = (f"# space=({self.states},{self.symbols}) mode={self.mode} cutoff={self.cutoff} "
                f"seed={seed} machines_run={self.machines_run} halters={self.halters} "
                f"blanks={self.blanks} max_steps={self.max_steps}")
        if self.reduction != "none":
            line += f" reduction={self.reduction}"
        return line

    @classmethod
    def parse(cls, line: str) -> RunMeta:
        fields = dict(tok.split("=", 1) for tok in line.lstrip("#").split())
        space = re.fullmatch(r"\((\d+),(\d+)\)", fields.pop("space"))
        if space is None:
            raise ValueError("space must look like (n,m)")
        seed = fields.pop("seed", "-")
        meta = cls(
            states=int(space.group(1)),
            symbols=int(space.group(2)),
            mode=fields.pop("mode"),
            cutoff=int(fields.pop("cutoff")),
            machines_run=int(fields.pop("machines_run")),
            halters=int(fields.pop("halters")),
            seed=None if seed == "-" else int(seed),
            blanks=fields.pop("blanks", "zero"),
            max_steps=int(fields.pop("max_steps", 0)),
            reduction=fields.pop("reduction", "none"),
        )
        if fields:
            raise ValueError(f"unknown metadata keys: {', '.join(sorted(fields))}")
        return meta


def _combine_meta(metas: Iterable[RunMeta]) -> tuple[RunMeta, ...]:
    grouped: dict[tuple, RunMeta] = {}
    for meta in metas:
        key = meta.compat_key
        grouped[key] = grouped[key].combine(meta) if key in grouped else meta
    return tuple(sorted(grouped.values(), key=RunMeta.render))


def _frozen(entries: Mapping[str, object]) -> Mapping:
    return MappingProxyType({s: entries[s] for s in sorted(entries, key=canonical_order)})


@dataclass(frozen=True)
class FrequencyTable:
    entries: Mapping[str, int] = field(default_factory=dict)
    meta: tuple[RunMeta, ...] = ()
    source: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        for s, c in self.entries.items():
            if not isinstance(c, int) or c < 1:
                raise TableError(f"count for {s!r} must be a positive integer, got {c!r}")
        object.__setattr__(self, "entries", _frozen(self.entries))
        object.__setattr__(self, "meta", _combine_meta(self.meta))
        if self.meta:
            total = sum(self.entries.values())
            if total != self.halters:
                raise TableError(f"counts sum to {total} but metadata records {self.halters} halters")
            runs = sum(m.machines_run * m.runs_per_machine for m in self.meta)
            if self.halters > runs:
                raise TableError(f"{self.halters} halters exceed {runs} runs")

    @property
    def halters(self) -> int:
        if self.meta:
            return sum(m.halters for m in self.meta)
        return sum(self.entries.values())

    @property
    def machines_run(self) -> int | None:
        return sum(m.machines_run for m in self.meta) if self.meta else None

    @property
    def max_steps(self) -> int:
        return max((m.max_steps for m in self.meta), default=0)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, s: object) -> bool:
        return s in self.entries

    def count(self, s: str) -> int:
        return self.entries.get(s, 0)

    def __reduce__(self):
        return (type(self), (dict(self.entries), self.meta, self.source))


@dataclass(frozen=True)
class Lookup:
    K: float
    extrapolated: bool


@dataclass(frozen=True)
class ComplexityTable:
    entries: Mapping[str, float] = field(default_factory=dict)
    meta: tuple[RunMeta, ...] = ()
    source: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        for s, k in self.entries.items():
            if not (k >= 0 and math.isfinite(k)):
                raise TableError(f"K for {s!r} must be finite and non-negative, got {k!r}")
        object.__setattr__(self, "entries", _frozen(self.entries))
        object.__setattr__(self, "meta", _combine_meta(self.meta))

    @cached_property
    def max_K(self) -> float:
        if not self.entries:
            raise EmptyTableError("complexity table is empty")
        return max(self.entries.values())

    @property
    def provenance(self) -> str:
        if self.source is not None and not self.meta:
            return f"imported:{self.source}"
        return "built:" + ";".join(m.render()[2:] for m in self.meta)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, s: object) -> bool:
        return s in self.entries

    def __reduce__(self):
        return (type(self), (dict(self.entries), self.meta, self.source))

    @cached_property
    def length_masses(self) -> dict[int, float]:
        """Total ``2**-K`` of the stored strings of each length."""
        terms: dict[int, list[float]] = {}
        for s, k in self.entries.items():
            terms.setdefault(len(s), []).append(2.0 ** -k)
        return {n: math.fsum(t) for n, t in terms.items()}


Table = Union[FrequencyTable, ComplexityTable]


def to_probability(table: FrequencyTable, s: str) -> float:
    """Share of halting runs that printed ``s``."""
    if not table.entries:
        raise EmptyTableError("frequency table is empty")
    return table.count(s) / table.halters


def to_complexity(table: FrequencyTable) -> ComplexityTable:
    """``K(s) = -log2(count(s) / halters)`` for every stored string.

    K is kept in extended precision: a float64 K is too coarse for
    ``2**-K`` to land within a few ulps of the float64 probability once
    K exceeds about 8 bits.
    """
    if not table.entries:
        raise EmptyTableError("frequency table is empty")
    h = np.longdouble(table.halters)
    # adding 0.0 turns the -0.0 of a certain string (count == halters) into 0.0
    return ComplexityTable({s: -np.log2(np.longdouble(c) / h) + 0.0 for s, c in table.entries.items()},
                           meta=table.meta, source=table.source)


def lookup_K(ctable: ComplexityTable, s: str) -> Lookup:
    """Stored K, or one bit more than the largest stored K for unseen strings."""
    k = ctable.entries.get(s)
    if k is not None:
        return Lookup(k, False)
    return Lookup(ctable.max_K + 1, True)


def merge(a: FrequencyTable, b: FrequencyTable, *, strict: bool = True) -> FrequencyTable:
    """Add counts pointwise.

    With ``strict`` both tables must come from the same machine space,
    cutoff and mode. Passing ``strict=False`` pools tables from different
    spaces; each source keeps its own metadata line.
    """
    if not a.entries and not a.meta:
        return b
    if not b.entries and not b.meta:
        return a
    if bool(a.meta) != bool(b.meta):
        raise IncompatibleTablesError("cannot merge a table with run metadata and one without")
    if strict and {m.compat_key for m in a.meta} != {m.compat_key for m in b.meta}:
        raise IncompatibleTablesError(
            "tables differ in space/mode/cutoff/seed: "
            f"{[m.render() for m in a.meta]} vs {[m.render() for m in b.meta]}")
    counts = dict(a.entries)
    for s, c in b.entries.items():
        counts[s] = counts.get(s, 0) + c
    return FrequencyTable(counts, a.meta + b.meta)


# -- CSV ---------------------------------------------------------------------

_SYMBOLS = re.compile(r"[0-9a-z]+|[0-9]+(?:-[0-9]+)+")
_COUNT = re.compile(r"[0-9]+")
_K = re.compile(r"[0-9]+(?:\.[0-9]+)?(?:[eE][+-]?[0-9]+)?")


def format_table(table: Table) -> str:
    lines = [m.render() for m in table.meta]
    if isinstance(table, FrequencyTable):
        lines.append("string,count")
        lines.extend(f"{s},{c}" for s, c in table.entries.items())
    else:
        lines.append("string,K")
        lines.extend(f"{s},{k + 0.0:.6f}" for s, k in table.entries.items())
    return "\n".join(lines) + "\n"


def export_table(table: Table, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_table(table))


def read_table(text: str, kind: str | None = None, source: str | None = None) -> Table:
    """Parse CSV text; ``kind`` is ``"frequency"``, ``"complexity"`` or None to sniff the header."""
    meta: list[RunMeta] = []
    entries: dict[str, float | int] = {}
    header_kind = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if header_kind is None:
            if line.startswith("#"):
                if "space=" in line:
                    try:
                        meta.append(RunMeta.parse(line))
                    except (KeyError, ValueError) as exc:
                        raise TableFormatError(lineno, f"bad metadata line: {exc}", source) from None
                continue
            header = line.replace(" ", "")
            if header == "string,count":
                header_kind = "frequency"
            elif header == "string,K":
                header_kind = "complexity"
            else:
                raise TableFormatError(lineno, f"expected header 'string,count' or 'string,K', got {line!r}",
                                       source)
            if kind is not None and kind != header_kind:
                raise TableFormatError(lineno, f"expected a {kind} table, found a {header_kind} header", source)
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise TableFormatError(lineno, f"expected 2 fields, got {len(parts)}", source)
        s, value = parts[0].strip(), parts[1].strip()
        if not _SYMBOLS.fullmatch(s):
            raise TableFormatError(lineno, f"invalid symbol string {s!r}", source)
        if s in entries:
            raise TableFormatError(lineno, f"duplicate string {s!r}", source)
        if header_kind == "frequency":
            if not _COUNT.fullmatch(value) or int(value) == 0:
                raise TableFormatError(lineno, f"count must be a positive integer, got {value!r}", source)
            entries[s] = int(value)
        else:
            if not _K.fullmatch(value):
                raise TableFormatError(lineno, f"K must be a non-negative number, got {value!r}", source)
            entries[s] = float(value)
    if header_kind is None:
        raise TableFormatError(max(1, len(text.splitlines())), "missing header line", source)
    try:
        if header_kind == "frequency":
            return FrequencyTable(entries, tuple(meta), source=source)
        return ComplexityTable(entries, tuple(meta), source=source)
    except TableError as exc:
        raise TableFormatError(1, str(exc), source) from None


def import_table(path: str | os.PathLike, kind: str | None = None) -> Table:
    path = Path(path)
    return read_table(path.read_text(encoding="utf-8"), kind, source=str(path))
