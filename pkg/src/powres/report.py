"""Witness and report records produced by the harvest and consumed by the oracle."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction


class Case(enum.Enum):
    QUAD_1_MOD_4 = "Quad1Mod4"
    QUAD_3_MOD_4 = "Quad3Mod4"
    QUAD_3_MOD_4_SPECIAL = "Quad3Mod4Special"
    CUBIC = "Cubic"
    BIQUADRATIC = "Biquadratic"

    @property
    def power(self) -> int:
        """The k in "k-th power residue" certified by this case."""
        return {Case.CUBIC: 3, Case.BIQUADRATIC: 4}.get(self, 2)

    @property
    def degree(self) -> int:
        return {Case.CUBIC: 3, Case.BIQUADRATIC: 4}.get(self, 2)

    @property
    def is_quadratic(self) -> bool:
        return self.power == 2


class Exclusion(enum.Enum):
    SMALL_PRIME = "SmallPrime"
    EQUALS_P = "EqualsP"
    DIVIDES_LM = "DividesLM"
    OUT_OF_WINDOW = "OutOfWindow"
    # q = 2 dividing (n + r)^2 - p only to the first or second power says nothing about p mod 8
    TWO_ADIC = "TwoAdicValuation"


@dataclass(frozen=True, order=True)
class ResidueWitness:
    q: int
    n: int
    valuation: int
    exclusion_reason: Exclusion | None = field(default=None, compare=False)

    @property
    def excluded(self) -> bool:
        return self.exclusion_reason is not None

    def as_dict(self) -> dict:
        d = {"q": self.q, "n": self.n, "valuation": self.valuation}
        if self.excluded:
            d["reason"] = self.exclusion_reason.value
        return d


@dataclass(frozen=True)
class ResidueReport:
    """Outcome of one harvest run.

    ``x_limit`` is the search limit actually used; ``x_theoretical`` the one
    implied by epsilon (they differ only under an override). Witnesses with
    ``window_low < q <= window_high`` that pass the case's side conditions are
    harvested.
    """

    p: int
    case: Case
    epsilon: Fraction
    x_limit: int
    q_bound: int
    witnesses: tuple[ResidueWitness, ...]
    threshold: float = 0.0
    guaranteed_regime: bool = False
    deviations: tuple[str, ...] = ()
    x_theoretical: int = 0
    window_low: int = 0
    window_high: int = 0
    delta: Fraction | None = None
    parameters: dict = field(default_factory=dict)
    unfactored: tuple[tuple[int, int], ...] = ()
    oracle_checked: bool = False
    oracle_verified: bool = False
    offenders: tuple[int, ...] = ()
    residue_flags: dict = field(default_factory=dict)

    @property
    def incomplete(self) -> bool:
        return bool(self.unfactored)

    @property
    def harvested(self) -> list[int]:
        return sorted({w.q for w in self.witnesses if not w.excluded})

    @property
    def harvested_count(self) -> int:
        return len(self.harvested)

    @property
    def excluded(self) -> list[ResidueWitness]:
        return [w for w in self.witnesses if w.excluded]


def merge_witnesses(*groups) -> tuple[ResidueWitness, ...]:
    """Union of witness lists keeping the largest valuation per ``(q, n)``.

    Associative and commutative; the result is sorted by ``(q, n)``.
    """
    best: dict[tuple[int, int], ResidueWitness] = {}
    for group in groups:
        for w in group:
            key = (w.q, w.n)
            if key not in best or w.valuation > best[key].valuation:
                best[key] = w
    return tuple(best[k] for k in sorted(best))
