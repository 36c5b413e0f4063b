"""Block Decomposition Method and entropy baselines.

BDM cuts an object into blocks short enough to have a tabulated complexity,
then charges each distinct block type its complexity plus ``log2`` of its
multiplicity::

    BDM(s) = sum over block types p of  K(p) + log2(n_p)
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .distribution import ComplexityTable, lookup_K

__all__ = [
    "Remainder",
    "DecompositionSpec",
    "GridPattern",
    "GridFormatError",
    "BDMResult",
    "decompose_1d",
    "decompose_2d",
    "bdm_1d",
    "bdm_2d",
    "aggregate",
    "shannon_entropy",
    "block_entropy",
]


class Remainder(enum.Enum):
    KEEP = "keep"
    DROP = "drop"


@dataclass(frozen=True)
class DecompositionSpec:
    block_size: int = 12
    overlap: int = 0
    remainder: Remainder = Remainder.KEEP

    def __post_init__(self) -> None:
        if self.block_size < 1:
            raise ValueError("block_size must be >= 1")
        if not 0 <= self.overlap < self.block_size:
            raise ValueError(f"overlap must be in 0..{self.block_size - 1}, got {self.overlap}")

    @property
    def step(self) -> int:
        return self.block_size - self.overlap


class GridFormatError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


@dataclass(frozen=True)
class GridPattern:
    rows: int
    cols: int
    cells: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("grid must have at least one row and column")
        if len(self.cells) != self.rows * self.cols:
            raise ValueError(f"{self.rows}x{self.cols} grid needs {self.rows * self.cols} cells, "
                             f"got {len(self.cells)}")
        if any(c not in (0, 1) for c in self.cells):
            raise ValueError("grid cells must be 0 or 1")

    @classmethod
    def from_rows(cls, rows: Sequence[str]) -> GridPattern:
        return cls.parse("\n".join(rows))

    @classmethod
    def parse(cls, text: str) -> GridPattern:
        cells: list[int] = []
        width = None
        rows = 0
        for lineno, raw in enumerate(text.splitlines(), start=1):
            row = raw.strip()
            if not row:
                continue
            if set(row) - {"0", "1"}:
                raise GridFormatError(lineno, f"row {row!r} has characters other than 0 and 1")
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise GridFormatError(lineno, f"row has {len(row)} cells, expected {width}")
            cells.extend(int(ch) for ch in row)
            rows += 1
        if not rows:
            raise GridFormatError(1, "grid is empty")
        return cls(rows, width, tuple(cells))

    def row(self, r: int) -> tuple[int, ...]:
        return self.cells[r * self.cols:(r + 1) * self.cols]

    def key(self) -> str:
        """Rows joined by ``-``, e.g. ``0101-1010``."""
        return "-".join("".join(map(str, self.row(r))) for r in range(self.rows))

    def sub(self, r0: int, c0: int, height: int, width: int) -> GridPattern:
        cells = tuple(self.cells[r * self.cols + c] for r in range(r0, r0 + height)
                      for c in range(c0, c0 + width))
        return GridPattern(height, width, cells)


@dataclass(frozen=True)
class BDMResult:
    value: float
    blocks: int
    distinct: int
    extrapolated_blocks: int


def decompose_1d(s: str, spec: DecompositionSpec = DecompositionSpec()) -> list[str]:
    """Blocks starting at 0, step, 2*step, ... until a block reaches the end of ``s``."""
    if not s:
        raise ValueError("cannot decompose an empty string")
    b = spec.block_size
    blocks = []
    i = 0
    while True:
        block = s[i:i + b]
        if len(block) < b:
            if spec.remainder is Remainder.KEEP:
                blocks.append(block)
            break
        blocks.append(block)
        if i + b >= len(s):
            break
        i += spec.step
    return blocks


def decompose_2d(g: GridPattern, block: int = 4, remainder: Remainder = Remainder.KEEP) -> list[GridPattern]:
    """Non-overlapping ``block x block`` tiles in row-major order of their origins.

    Tiles cut by the right or bottom edge are smaller rectangles.
    """
    if block < 1:
        raise ValueError("block must be >= 1")
    tiles = []
    for r0 in range(0, g.rows, block):
        for c0 in range(0, g.cols, block):
            h = min(block, g.rows - r0)
            w = min(block, g.cols - c0)
            if (h < block or w < block) and remainder is Remainder.DROP:
                continue
            tiles.append(g.sub(r0, c0, h, w))
    return tiles


def aggregate(keys: Iterable[str], ctable: ComplexityTable) -> BDMResult:
    counts = Counter(keys)
    terms = []
    extrapolated = 0
    for key in sorted(counts, key=lambda k: (len(k), k)):
        hit = lookup_K(ctable, key)
        extrapolated += hit.extrapolated
        terms.append(math.log2(counts[key]) + hit.K)
    # Plain sum over the terms sorted by value: keeps the K type (float or
    # longdouble), is bit-exact for a single block type, and depends only on
    # the multiset of terms, so complemented inputs give identical values.
    return BDMResult(sum(sorted(terms), 0.0), sum(counts.values()), len(counts), extrapolated)


def bdm_1d(s: str, ctable: ComplexityTable, spec: DecompositionSpec = DecompositionSpec()) -> BDMResult:
    return aggregate(decompose_1d(s, spec), ctable)


def bdm_2d(g: GridPattern, ctable2d: ComplexityTable, block: int = 4,
           remainder: Remainder = Remainder.KEEP) -> BDMResult:
    return aggregate((t.key() for t in decompose_2d(g, block, remainder)), ctable2d)


def _entropy(counts: Counter) -> float:
    total = sum(counts.values())
    h = -math.fsum(c / total * math.log2(c / total) for c in counts.values())
    return h + 0.0  # normalise -0.0


def shannon_entropy(s: str) -> float:
    """Bits per symbol of the symbol frequency distribution."""
    if not s:
        raise ValueError("entropy of an empty string is undefined")
    return _entropy(Counter(s))


def block_entropy(s: str, block_size: int) -> float:
    """Bits per block over all length-``block_size`` sliding windows (step 1)."""
    if block_size < 1:
        raise ValueError("block_size must be >= 1")
    if len(s) < block_size:
        raise ValueError(f"string of length {len(s)} is shorter than block {block_size}")
    return _entropy(Counter(s[i:i + block_size] for i in range(len(s) - block_size + 1)))
