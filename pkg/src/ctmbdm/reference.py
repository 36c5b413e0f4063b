"""Published CTM reference tables.

The pybdm package ships the published CTM values (1D binary strings up to
length 12 from the (5,2) space, and 2D binary blocks up to 4x4) with one
entry per symbol-relabeling class: each key is written with symbols renamed
to 0, 1, ... in order of first appearance. :func:`expand_relabelings`
restores every member of each class so the tables can be used with plain
lookups.
"""

from __future__ import annotations

import gzip
import importlib.util
import itertools
import pickle
from pathlib import Path
from typing import Mapping

from .distribution import ComplexityTable

__all__ = ["DATASETS", "expand_relabelings", "pybdm_data_dir", "load_pybdm"]

DATASETS = {
    "CTM-B2-D12": ("ctm-b2-d12.pkl.gz", 2),
    "CTM-B4-D12": ("ctm-b4-d12.pkl.gz", 4),
    "CTM-B5-D12": ("ctm-b5-d12.pkl.gz", 5),
    "CTM-B6-D12": ("ctm-b6-d12.pkl.gz", 6),
    "CTM-B9-D12": ("ctm-b9-d12.pkl.gz", 9),
    "CTM-B2-D4x4": ("ctm-b2-d4x4.pkl.gz", 2),
}


def expand_relabelings(entries: Mapping[str, float], symbols: int) -> dict[str, float]:
    """Apply every injective renaming of the key's symbols into ``0..symbols-1``.

    ``-`` separators (2D keys) are left alone.
    """
    out: dict[str, float] = {}
    for key, k in entries.items():
        used = sorted(set(key) - {"-"})
        for image in itertools.permutations(map(str, range(symbols)), len(used)):
            table = str.maketrans(dict(zip(used, image)))
            out[key.translate(table)] = k
    return out


def pybdm_data_dir() -> Path:
    """Location of the pybdm CTM pickles; the package is located, not imported."""
    spec = importlib.util.find_spec("pybdm")
    if spec is None or not spec.submodule_search_locations:
        raise FileNotFoundError("pybdm is not installed (pip install pybdm)")
    return Path(list(spec.submodule_search_locations)[0]) / "ctmdata"


def _key_2d(flat: str, shape: tuple[int, ...]) -> str:
    rows, cols = shape
    return "-".join(flat[r * cols:(r + 1) * cols] for r in range(rows))


def load_pybdm(name: str = "CTM-B2-D12", data_dir: Path | None = None) -> ComplexityTable:
    """Load a pybdm dataset as a fully expanded :class:`ComplexityTable`."""
    try:
        filename, symbols = DATASETS[name]
    except KeyError:
        raise ValueError(f"unknown dataset {name!r}; choose from {', '.join(DATASETS)}") from None
    path = (data_dir or pybdm_data_dir()) / filename
    with gzip.open(path, "rb") as fh:
        raw = pickle.load(fh)
    entries: dict[str, float] = {}
    for shape, table in raw.items():
        for key, k in table.items():
            entries[_key_2d(key, shape) if len(shape) == 2 else key] = float(k)
    return ComplexityTable(expand_relabelings(entries, symbols), source=f"pybdm:{name}")
