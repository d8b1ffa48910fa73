"""Brute-force ground truth for the harvest.

Nothing here goes through the reciprocity polynomials' criteria: residue
sets are computed by definition, roots by direct evaluation, and the log-sum
identity is checked as an exact integer product.
"""

from __future__ import annotations

import math
from dataclasses import replace
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import IncompleteReport
from .factoring import factor_value
from .numtheory import is_prime, kth_power_residue, sieve_primes
from .report import Case, ResidueReport

__all__ = [
    "ResidueReport",
    "kth_powers",
    "direct_residue_set",
    "in_direct_residue_set",
    "signed_prime",
    "verify_report",
    "LogsumCheck",
    "logsum_identity_check",
    "count_roots_brute",
]

BRUTE_ROOT_CAP = 10**6
ENUMERATION_LIMIT = 10**6


@lru_cache(maxsize=64)
def kth_powers(p: int, k: int) -> frozenset[int]:
    """The image of ``y -> y**k`` on the units mod ``p``, by enumeration."""
    return frozenset(pow(y, k, p) for y in range(1, p))


def signed_prime(q: int) -> int:
    """``(-1)**((q-1)/2) * q`` for odd ``q``."""
    return q if q % 4 == 1 else -q


def _is_residue(q: int, p: int, k: int, powers: frozenset[int] | None) -> bool:
    if powers is not None:
        return q % p in powers
    return kth_power_residue(q, p, k)


def direct_residue_set(p, k: int, limit: int, signed: bool = False) -> set[int]:
    """Primes ``q <= limit``, ``q != p``, that are k-th power residues mod ``p``.

    With ``signed=True`` the test is applied to ``q* = (-1)**((q-1)/2) q``
    instead of ``q`` (``q = 2`` is then left out).
    """
    p = int(p)
    if limit < 2:
        raise ValueError("limit must be at least 2")
    powers = kth_powers(p, k) if p <= ENUMERATION_LIMIT else None
    out = set()
    for q in sieve_primes(limit):
        if q == p or (signed and q == 2):
            continue
        if _is_residue(signed_prime(q) if signed else q, p, k, powers):
            out.add(q)
    return out


def in_direct_residue_set(q: int, p, k: int, limit: int, signed: bool = False) -> bool:
    """Membership in :func:`direct_residue_set` without building the whole set."""
    p = int(p)
    if not (2 <= q <= limit) or q == p or not is_prime(q) or (signed and q == 2):
        return False
    powers = kth_powers(p, k) if p <= 10**5 else None
    return _is_residue(signed_prime(q) if signed else q, p, k, powers)


def verify_report(report: ResidueReport) -> ResidueReport:
    """Certify every harvested prime against the definition of a k-th power residue.

    Quadratic and cubic cases assert ``q`` itself is a residue; the
    biquadratic case asserts ``q*`` is (both flags are recorded). The harvested
    set must also lie inside the directly computed residue set up to the
    window's upper end.
    """
    if report.incomplete:
        raise IncompleteReport(f"{len(report.unfactored)} value(s) were not factored")
    p, k = report.p, report.case.power
    signed = report.case is Case.BIQUADRATIC
    flags, offenders = {}, []
    for q in report.harvested:
        if q % p == 0:
            offenders.append(q)
            continue
        entry = {"q": kth_power_residue(q, p, k)}
        if signed:
            entry["q_star"] = kth_power_residue(signed_prime(q), p, k)
        flags[q] = entry
        asserted = entry["q_star"] if signed else entry["q"]
        if not asserted or not in_direct_residue_set(q, p, k, report.window_high, signed):
            offenders.append(q)
    return replace(
        report,
        oracle_checked=True,
        oracle_verified=not offenders,
        offenders=tuple(offenders),
        residue_flags=flags,
    )


class LogsumCheck(NamedTuple):
    exact: bool
    residual: float


def logsum_identity_check(f, x: int) -> LogsumCheck:
    """``prod_{n<=x} f(n)`` against the product over every prime-power division event.

    ``f`` is any callable on positive integers (a ``ReciprocityPolynomial``
    works). The residual is ``sum log f(n) - sum_{q^k | f(n)} log q`` in
    floating point, for diagnostics only.
    """
    lhs, rhs = 1, 1
    log_lhs, log_rhs = 0.0, 0.0
    for n in range(1, x + 1):
        v = f(n)
        lhs *= v
        log_lhs += math.log(v)
        for q, e in factor_value(v).items():
            # one division event per k = 1..e, each contributing log q
            for _ in range(e):
                rhs *= q
                log_rhs += math.log(q)
    return LogsumCheck(lhs == rhs, log_lhs - log_rhs)


def count_roots_brute(coeffs, m: int, cap: int = BRUTE_ROOT_CAP) -> int:
    """Number of ``n`` in ``[0, m)`` with ``f(n) = 0 (mod m)``, by evaluation."""
    if m < 1:
        raise ValueError("m must be positive")
    if m > cap:
        raise ValueError(f"modulus {m} above brute-force cap {cap}")
    n = np.arange(m, dtype=np.int64)
    acc = np.zeros(m, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * n + (int(c) % m)) % m
    return int(np.count_nonzero(acc == 0))
