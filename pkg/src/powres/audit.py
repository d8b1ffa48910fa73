"""Numerical audit of the counting thresholds and inequality chains.

All analytic quantities are evaluated with mpmath at 50 significant digits.
Logarithms are natural. ``p`` may be any integer > 1 here; primality only
matters for the harvest.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import EpsilonOutOfRange, IncompleteReport
from .numtheory import as_fraction, sieve_primes
from .report import Case, ResidueReport

DPS = 50

# Largest epsilon accepted per case.
EPSILON_MAX = {
    Case.QUAD_1_MOD_4: Fraction(1, 4),
    Case.QUAD_3_MOD_4: Fraction(1, 5),
    Case.QUAD_3_MOD_4_SPECIAL: Fraction(1, 2),
    Case.CUBIC: Fraction(1, 2),
    Case.BIQUADRATIC: Fraction(1, 2),
}

# (leading constant, divisor of epsilon in the exponent of p)
_THRESHOLD = {
    Case.QUAD_1_MOD_4: (Fraction(1, 4), 2),
    Case.QUAD_3_MOD_4: (Fraction(1, 4), 2),
    Case.CUBIC: (Fraction(1, 15), 3),
    Case.BIQUADRATIC: (Fraction(1, 16), 4),
}


def _mpf(v):
    v = as_fraction(v) if not isinstance(v, (int, mpmath.mpf)) else v
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


def check_epsilon(case: Case, epsilon) -> Fraction:
    e = as_fraction(epsilon)
    if not 0 < e <= EPSILON_MAX[case]:
        raise EpsilonOutOfRange(f"epsilon = {e} outside (0, {EPSILON_MAX[case]}] for {case.value}")
    return e


def c1(x) -> mpmath.mpf:
    """``1 + 0.15 / log(x)**3``."""
    with mpmath.workdps(DPS):
        return 1 + mpmath.mpf("0.15") / mpmath.log(_mpf(x)) ** 3


def special_threshold(p: int, delta) -> mpmath.mpf:
    """``(1 - 2*delta) * p**delta`` for the epsilon = 1/2 quadratic case."""
    with mpmath.workdps(DPS):
        d = _mpf(as_fraction(delta))
        return (1 - 2 * d) * mpmath.power(_mpf(int(p)), d)


def theorem_threshold(case: Case, p: int, epsilon, delta=None) -> mpmath.mpf:
    """Lower bound on the number of harvested primes claimed for ``case``."""
    if case is Case.QUAD_3_MOD_4_SPECIAL:
        if delta is None:
            raise ValueError("the special case needs delta")
        return special_threshold(p, delta)
    e = check_epsilon(case, epsilon)
    const, k = _THRESHOLD[case]
    with mpmath.workdps(DPS):
        return _mpf(const) * mpmath.exp(_mpf(e) / k * mpmath.log(int(p)))


def regime_flags(case: Case, p: int, epsilon) -> dict[str, bool]:
    """Every validity condition stated for ``case``, evaluated in log space.

    ``theorem`` is the headline validity condition. The ``body_*`` entries are
    alternative phrasings of the same condition (different size of x or of
    ln p), reported next to it rather than chosen between.
    """
    with mpmath.workdps(DPS):
        e = _mpf(as_fraction(epsilon))
        lp = mpmath.log(int(p))
        if case in (Case.QUAD_1_MOD_4, Case.QUAD_3_MOD_4):
            flags = {"theorem": lp >= 312 and e <= mpmath.mpf(1) / 5}
            if case is Case.QUAD_1_MOD_4:
                flags["body_1mod4"] = lp >= 144 and e <= mpmath.mpf(1) / 4
            return flags
        if case is Case.CUBIC:
            lx = e / 3 * lp
            return {
                "theorem": lp >= max(e / 3 * mpmath.log(75), 100),
                "body_x75_e100": lx >= mpmath.log(75) and lp >= 100,
                "body_x50_e60": lx >= mpmath.log(50) and lp >= 60,
            }
        if case is Case.BIQUADRATIC:
            lx = e / 4 * lp
            return {
                "theorem": lp >= max(e / 4 * mpmath.log(60), 85),
                "body_x60_e84": lx >= mpmath.log(60) and lp >= 84,
                "body_x60_e85": lx >= mpmath.log(60) and lp >= 85,
            }
        return {"theorem": False}


def guaranteed_regime(case: Case, p: int, epsilon) -> bool:
    return regime_flags(case, p, epsilon)["theorem"]


@dataclass(frozen=True)
class ChebyshevAudit:
    x: int
    lhs: mpmath.mpf
    rhs: mpmath.mpf
    holds: bool


def chebyshev_sum_audit(x: int, primes=None) -> ChebyshevAudit:
    """Compare ``sum_{q <= x} log q / (q - 1)`` with ``c1(x) * (2 + log x)``."""
    if x < 10:
        raise ValueError("x must be at least 10")
    if primes is None:
        primes = sieve_primes(x)
    with mpmath.workdps(DPS):
        lhs = mpmath.fsum(mpmath.log(q) / (q - 1) for q in primes if q <= x)
        rhs = c1(x) * (2 + mpmath.log(x))
        return ChebyshevAudit(x, lhs, rhs, bool(lhs <= rhs))


def chebyshev_sum_grid(xs) -> list[ChebyshevAudit]:
    """:func:`chebyshev_sum_audit` for many ``x`` sharing one sieve and prefix sum."""
    xs = sorted(int(x) for x in xs)
    primes = sieve_primes(xs[-1])
    out = []
    with mpmath.workdps(DPS):
        acc, i = mpmath.mpf(0), 0
        for x in xs:
            if x < 10:
                raise ValueError("x must be at least 10")
            while i < len(primes) and primes[i] <= x:
                acc += mpmath.log(primes[i]) / (primes[i] - 1)
                i += 1
            rhs = c1(x) * (2 + mpmath.log(x))
            out.append(ChebyshevAudit(x, +acc, rhs, bool(acc <= rhs)))
    return out


def lower_bound_expression(case: Case, p: int, epsilon, delta=None, L=None, M=None) -> mpmath.mpf:
    """The closing lower bound on the harvest count for ``case``, at ``(p, epsilon)``.

    The cubic bound depends on whether ``|M|`` or ``|L|`` is the larger
    coefficient, so those must be supplied for ``Case.CUBIC``.
    """
    if case is Case.QUAD_3_MOD_4_SPECIAL:
        return special_threshold(p, delta)
    with mpmath.workdps(DPS):
        e = _mpf(as_fraction(epsilon))
        lp = mpmath.log(int(p))
        if case is Case.QUAD_1_MOD_4:
            x = mpmath.exp(e * lp)
            c = c1(x)
            return (mpmath.mpf(1) / 2 + (1 - 2 * c) * e - 4 * (1 + c) / lp) * x / (
                1 + 2 * e + mpmath.log(4) / lp
            )
        if case is Case.QUAD_3_MOD_4:
            x = mpmath.exp(e / 2 * lp)
            return (mpmath.mpf(1) / 2 - 5 * e / 6 - 9 / lp) * x / (1 + e + mpmath.log(4) / lp)
        if case is Case.CUBIC:
            x = mpmath.exp(e / 3 * lp)
            if abs(M) >= abs(L):
                lower = mpmath.mpf(1) / 2 + e - mpmath.mpf("0.68") / lp - 3 / x
            else:
                lower = mpmath.mpf(1) / 2 + 2 * e / 3 - mpmath.mpf("0.78") / lp - 4 / x
            upper = 3 * c1(x) * (2 / lp + e / 3)
            return (lower - upper) * x / (3 * (mpmath.mpf(1) / 2 + e + mpmath.log(72) / lp))
        x = mpmath.exp(e / 4 * lp)
        lower = mpmath.mpf(1) / 2 + 3 * e / 4 + 1 / (3 * lp) - 5 / (4 * x)
        upper = 4 * c1(x) * (2 / lp + e / 4)
        return (lower - upper) * x * lp / (4 * (mpmath.log(42) + (mpmath.mpf(1) / 2 + e) * lp))


@dataclass(frozen=True)
class BoundAudit:
    case: Case
    p: int
    epsilon: Fraction
    threshold: mpmath.mpf
    c1: mpmath.mpf
    lhs: mpmath.mpf
    rhs: int
    guaranteed_regime: bool
    regime_flags: dict
    empirical_count: int
    meets_threshold: bool

    def as_dict(self) -> dict:
        return {
            "case": self.case.value,
            "p": self.p,
            "epsilon": float(self.epsilon),
            "threshold": float(self.threshold),
            "c1": float(self.c1),
            "lower_bound_expression": float(self.lhs),
            "empirical_count": self.empirical_count,
            "meets_threshold": self.meets_threshold,
            "guaranteed_regime": self.guaranteed_regime,
            "regime_flags": self.regime_flags,
        }


def _case_x(case: Case, p: int, epsilon, delta):
    e = _mpf(as_fraction(epsilon))
    if case is Case.QUAD_3_MOD_4_SPECIAL:
        return mpmath.power(int(p), _mpf(as_fraction(delta)))
    k = {Case.QUAD_1_MOD_4: 1, Case.QUAD_3_MOD_4: 2, Case.CUBIC: 3, Case.BIQUADRATIC: 4}[case]
    return mpmath.exp(e / k * mpmath.log(int(p)))


def inequality_chain_audit(case: Case, p: int, epsilon, report: ResidueReport) -> BoundAudit:
    """Evaluate the case's closing inequality and compare with the harvest count."""
    if report.incomplete or not report.oracle_checked:
        raise IncompleteReport("the report must be complete and oracle-checked before auditing")
    delta = report.delta
    with mpmath.workdps(DPS):
        threshold = theorem_threshold(case, p, epsilon, delta=delta)
        lhs = lower_bound_expression(
            case, p, epsilon, delta, report.parameters.get("L"), report.parameters.get("M")
        )
        x = _case_x(case, p, epsilon, delta)
        c = c1(x) if x > 1 else mpmath.inf
    flags = regime_flags(case, p, epsilon)
    count = report.harvested_count
    return BoundAudit(
        case=case,
        p=int(p),
        epsilon=as_fraction(epsilon),
        threshold=threshold,
        c1=c,
        lhs=lhs,
        rhs=count,
        guaranteed_regime=flags["theorem"],
        regime_flags=flags,
        empirical_count=count,
        meets_threshold=bool(count >= threshold),
    )
