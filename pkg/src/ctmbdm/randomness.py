"""Posterior probability that a binary string came from a fair coin.

The deterministic likelihood of ``s`` is its algorithmic probability
``2**-K(s)`` renormalised over the tabulated strings of the same length, so
that it competes with the fair-coin likelihood ``2**-len(s)`` on equal terms.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .distribution import ComplexityTable, TableError, lookup_K

__all__ = [
    "RandomnessJudgment",
    "Ordering",
    "Comparison",
    "NoSameLengthError",
    "to_binary",
    "likelihood_random",
    "likelihood_deterministic",
    "posterior_random",
    "compare_randomness",
]

_COIN = str.maketrans({"H": "1", "T": "0", "h": "1", "t": "0"})


class NoSameLengthError(TableError):
    pass


def to_binary(s: str) -> str:
    """Map heads/tails to 1/0 and check the result is binary."""
    b = s.translate(_COIN)
    if not b or set(b) - {"0", "1"}:
        raise ValueError(f"{s!r} is not a binary or H/T string")
    return b


def likelihood_random(s: str) -> float:
    if not s or set(s) - {"0", "1"}:
        raise ValueError(f"{s!r} is not a non-empty binary string")
    return 2.0 ** -len(s)


def likelihood_deterministic(s: str, ctable: ComplexityTable) -> tuple[float, bool]:
    """``2**-K(s)`` over the total ``2**-K`` of same-length tabulated strings.

    Returns the likelihood and whether ``K(s)`` was extrapolated. An
    untabulated ``s`` adds its own extrapolated weight to the denominator.
    """
    mass = ctable.length_masses.get(len(s))
    if mass is None:
        raise NoSameLengthError(f"table has no strings of length {len(s)}")
    hit = lookup_K(ctable, s)
    weight = 2.0 ** -hit.K
    if hit.extrapolated:
        mass += weight
    return weight / mass, hit.extrapolated


@dataclass(frozen=True)
class RandomnessJudgment:
    string: str
    prior_random: float
    p_s_given_R: float
    p_s_given_D: float
    posterior_random: float
    extrapolated: bool


def posterior_random(s: str, ctable: ComplexityTable, prior: float = 0.5) -> RandomnessJudgment:
    if not 0.0 <= prior <= 1.0:
        raise ValueError(f"prior must be in [0, 1], got {prior}")
    p_r = likelihood_random(s)
    p_d, extrapolated = likelihood_deterministic(s, ctable)
    numerator = p_r * prior
    posterior = numerator / (numerator + p_d * (1.0 - prior))
    return RandomnessJudgment(s, prior, p_r, p_d, posterior, extrapolated)


class Ordering(enum.Enum):
    FIRST = "first"
    SECOND = "second"
    EQUAL = "equal"

    def reversed(self) -> Ordering:
        return {Ordering.FIRST: Ordering.SECOND, Ordering.SECOND: Ordering.FIRST}.get(self, self)


@dataclass(frozen=True)
class Comparison:
    more_random: Ordering
    first: RandomnessJudgment
    second: RandomnessJudgment


def compare_randomness(a: str, b: str, ctable: ComplexityTable, prior: float = 0.5) -> Comparison:
    """Which of two equal-length strings looks more random."""
    if len(a) != len(b):
        raise ValueError(f"strings differ in length ({len(a)} vs {len(b)})")
    ja, jb = posterior_random(a, ctable, prior), posterior_random(b, ctable, prior)
    if ja.posterior_random > jb.posterior_random:
        order = Ordering.FIRST
    elif ja.posterior_random < jb.posterior_random:
        order = Ordering.SECOND
    else:
        order = Ordering.EQUAL
    return Comparison(order, ja, jb)
