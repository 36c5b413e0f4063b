"""Algorithmic complexity of short strings and small grids.

Complexity estimates come from the output frequencies of small Turing
machines run from blank tapes (Coding Theorem Method), extended to longer
strings and grids by block decomposition, and used as the deterministic
likelihood in a fair-coin-versus-algorithm Bayesian judgment.
"""

__version__ = "0.1.0"

from .bdm import (DecompositionSpec, GridPattern, Remainder, bdm_1d, bdm_2d, block_entropy,
                  decompose_1d, decompose_2d, shannon_entropy)
from .distribution import (ComplexityTable, FrequencyTable, RunMeta, export_table, import_table,
                           lookup_K, merge, to_complexity, to_probability)
from .enumeration import (EnumerationPlan, Exhaustive, Sampled, decode_index, encode_machine,
                          enumerate_outputs, machine_count, symmetry_complete)
from .machine import HALT, Machine, MachineSpec, Move, RunOutcome, Status, run_from_blank, step
from .randomness import compare_randomness, likelihood_deterministic, likelihood_random, posterior_random

__all__ = [
    "__version__",
    "DecompositionSpec", "GridPattern", "Remainder", "bdm_1d", "bdm_2d", "block_entropy",
    "decompose_1d", "decompose_2d", "shannon_entropy",
    "ComplexityTable", "FrequencyTable", "RunMeta", "export_table", "import_table", "lookup_K",
    "merge", "to_complexity", "to_probability",
    "EnumerationPlan", "Exhaustive", "Sampled", "decode_index", "encode_machine",
    "enumerate_outputs", "machine_count", "symmetry_complete",
    "HALT", "Machine", "MachineSpec", "Move", "RunOutcome", "Status", "run_from_blank", "step",
    "compare_randomness", "likelihood_deterministic", "likelihood_random", "posterior_random",
]
