"""Turing machine formalism and bounded execution from a blank tape.

A machine with ``n`` states and ``m`` symbols is a total transition table
mapping every ``(state, read)`` pair to ``(write, move, next_state)``.
States are numbered ``1..n``; :data:`HALT` (``0``) is the halting target.
Execution starts in state 1 with the head on cell 0 of a tape filled with
the blank symbol.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, NamedTuple

__all__ = [
    "HALT",
    "Move",
    "MachineSpec",
    "Transition",
    "Machine",
    "Configuration",
    "Status",
    "RunOutcome",
    "step",
    "run_from_blank",
    "blank_configuration",
    "complement_machine",
    "mirror_machine",
]

HALT = 0


class Move(enum.IntEnum):
    LEFT = -1
    RIGHT = 1

    def flipped(self) -> Move:
        return Move(-self)


@dataclass(frozen=True)
class MachineSpec:
    states: int
    symbols: int = 2

    def __post_init__(self) -> None:
        if self.states < 1:
            raise ValueError(f"states must be >= 1, got {self.states}")
        if self.symbols < 2:
            raise ValueError(f"symbols must be >= 2, got {self.symbols}")

    @property
    def entries(self) -> int:
        return self.states * self.symbols

    def __str__(self) -> str:
        return f"({self.states},{self.symbols})"


class Transition(NamedTuple):
    write: int
    move: Move
    next_state: int

    @property
    def halts(self) -> bool:
        return self.next_state == HALT


@dataclass(frozen=True)
class Machine:
    """A total transition table.

    ``table[(q - 1) * m + a]`` is the transition taken in state ``q`` when
    reading symbol ``a``.
    """

    spec: MachineSpec
    table: tuple[Transition, ...]

    def __post_init__(self) -> None:
        n, m = self.spec.states, self.spec.symbols
        if len(self.table) != n * m:
            raise ValueError(f"table must have {n * m} entries, got {len(self.table)}")
        for t in self.table:
            if not 0 <= t.write < m:
                raise ValueError(f"write symbol {t.write} outside alphabet of size {m}")
            if not 0 <= t.next_state <= n:
                raise ValueError(f"next state {t.next_state} outside 1..{n} or HALT")

    def transition(self, state: int, symbol: int) -> Transition:
        return self.table[(state - 1) * self.spec.symbols + symbol]

    @classmethod
    def from_rules(cls, spec: MachineSpec, rules: Mapping[tuple[int, int], tuple[int, Move, int]],
                   default: tuple[int, Move, int] = (0, Move.RIGHT, HALT)) -> Machine:
        """Build a machine from a partial ``{(state, read): (write, move, next)}`` map.

        Unlisted pairs get ``default``.
        """
        table = []
        for q in range(1, spec.states + 1):
            for a in range(spec.symbols):
                w, d, nxt = rules.get((q, a), default)
                table.append(Transition(w, Move(d), nxt))
        return cls(spec, tuple(table))


@dataclass(frozen=True)
class Configuration:
    """Tape, head position and current state.

    ``tape`` only lists cells that were written; every other cell holds
    ``blank``. A configuration whose ``state`` is :data:`HALT` is the halt
    signal returned by :func:`step`.
    """

    tape: Mapping[int, int]
    head: int
    state: int
    blank: int = 0

    @property
    def halted(self) -> bool:
        return self.state == HALT

    def read(self, cell: int | None = None) -> int:
        return self.tape.get(self.head if cell is None else cell, self.blank)


def blank_configuration(blank: int = 0) -> Configuration:
    return Configuration(MappingProxyType({}), head=0, state=1, blank=blank)


def step(machine: Machine, config: Configuration) -> Configuration:
    """Apply exactly one transition.

    The halting transition still writes and moves before the returned
    configuration reports ``halted``.
    """
    if config.halted or not 1 <= config.state <= machine.spec.states:
        raise ValueError(f"state {config.state} is not a live state")
    t = machine.transition(config.state, config.read())
    tape = dict(config.tape)
    tape[config.head] = t.write
    return Configuration(MappingProxyType(tape), config.head + t.move, t.next_state, config.blank)


class Status(enum.Enum):
    HALTED = "halted"
    CUTOFF_EXCEEDED = "cutoff"


@dataclass(frozen=True)
class RunOutcome:
    status: Status
    output: str | None
    steps: int

    @property
    def halted(self) -> bool:
        return self.status is Status.HALTED


def _symbol_char(a: int) -> str:
    return str(a) if a < 10 else chr(ord("a") + a - 10)


def run_from_blank(machine: Machine, cutoff: int, blank: int = 0) -> RunOutcome:
    """Run ``machine`` from a blank tape for at most ``cutoff`` steps.

    On halting, the output is the tape segment between the leftmost and
    rightmost cells the head read during the run (the cell the halting move
    lands on is not read, so it is not part of the output).
    """
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    m = machine.spec.symbols
    table = machine.table
    tape: dict[int, int] = {}
    head = lo = hi = 0
    state = 1
    for t in range(1, cutoff + 1):
        if head < lo:
            lo = head
        elif head > hi:
            hi = head
        tr = table[(state - 1) * m + tape.get(head, blank)]
        tape[head] = tr.write
        head += tr.move
        state = tr.next_state
        if state == HALT:
            output = "".join(_symbol_char(tape.get(i, blank)) for i in range(lo, hi + 1))
            return RunOutcome(Status.HALTED, output, t)
    return RunOutcome(Status.CUTOFF_EXCEEDED, None, cutoff)


def complement_machine(machine: Machine) -> Machine:
    """Relabel symbols ``a -> m-1-a`` in reads and writes.

    Run with the relabeled blank (``m-1``), the result prints the relabeled
    output of the original machine with the same step count.
    """
    m = machine.spec.symbols
    table = []
    for q in range(1, machine.spec.states + 1):
        for a in range(m):
            t = machine.transition(q, m - 1 - a)
            table.append(Transition(m - 1 - t.write, t.move, t.next_state))
    return Machine(machine.spec, tuple(table))


def mirror_machine(machine: Machine) -> Machine:
    """Swap every Left move for Right and vice versa (output is reversed)."""
    return Machine(machine.spec, tuple(t._replace(move=t.move.flipped()) for t in machine.table))
