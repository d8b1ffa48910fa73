"""build -> collect -> verify -> audit, plus deterministic random prime selection."""

from __future__ import annotations

import random

from .audit import BoundAudit, inequality_chain_audit
from .numtheory import next_prime
from .oracle import verify_report
from .polys import build_poly, collect_witnesses
from .report import Case, ResidueReport

# residue class (modulus, remainder) each family needs; None = any odd prime
FAMILY_CLASS = {"quadratic": None, "cubic": (3, 1), "biquadratic": (4, 1)}


def quadratic_case(p: int, delta=None) -> Case:
    if delta is not None:
        return Case.QUAD_3_MOD_4_SPECIAL
    return Case.QUAD_1_MOD_4 if p % 4 == 1 else Case.QUAD_3_MOD_4


def case_for(family: str, p: int, delta=None) -> Case:
    if family == "quadratic":
        return quadratic_case(p, delta)
    return {"cubic": Case.CUBIC, "biquadratic": Case.BIQUADRATIC}[family]


def run(p, case: Case, epsilon, *, delta=None, x_override=None, workers=1) -> tuple[ResidueReport, BoundAudit]:
    f = build_poly(p, case, epsilon, delta=delta, x_override=x_override)
    report = verify_report(collect_witnesses(f, workers=workers))
    return report, inequality_chain_audit(case, report.p, report.epsilon, report)


def random_primes(bits: int, count: int, seed, residue_class=None) -> list[int]:
    """``count`` primes with exactly ``bits`` bits, reproducible from ``seed``."""
    if bits < 3:
        raise ValueError("bits must be at least 3")
    rng = random.Random(seed)
    lo, hi = 1 << (bits - 1), 1 << bits
    out = []
    while len(out) < count:
        p = next_prime(rng.randrange(lo, hi))
        while p < hi and residue_class and p % residue_class[0] != residue_class[1]:
            p = next_prime(p)
        if p < hi and p > 2:
            out.append(p)
    return out
