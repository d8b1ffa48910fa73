"""Complete factorization of polynomial values.

Small primes are stripped by trial division; the cofactor is split with
Pollard rho (Brent's cycle detection, batched gcds) until every piece passes
the primality test.
"""

from __future__ import annotations

import math
from collections import Counter

from .errors import FactorizationTimeout
from .numtheory import is_prime, sieve_primes

DEFAULT_TRIAL_LIMIT = 1 << 12
RHO_BUDGET = 1 << 22

_DEFAULT_SMALL = sieve_primes(DEFAULT_TRIAL_LIMIT)


def brent_rho(n: int, budget: int = RHO_BUDGET) -> int | None:
    """A nontrivial factor of the odd composite ``n``, or None on budget exhaustion.

    Starting constants are fixed (c = 1, 2, ...) so results are reproducible.
    """
    if n % 2 == 0:
        return 2
    spent = 0
    for c in range(1, 64):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            spent += r
            if spent > budget:
                return None
        if g == n:
            # batch overshot; backtrack one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    return None


def factor_value(v: int, small_primes=None, budget: int = RHO_BUDGET) -> dict[int, int]:
    """Prime factorization of ``v >= 1`` as ``{prime: exponent}``, sorted by prime."""
    if v < 1:
        raise ValueError(f"factor_value needs v >= 1, got {v}")
    if small_primes is None:
        small_primes = _DEFAULT_SMALL
    out: Counter[int] = Counter()
    n = v
    for q in small_primes:
        if q * q > n:
            break
        while n % q == 0:
            n //= q
            out[q] += 1
    last = small_primes[-1] if small_primes else 1
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m < last * last or is_prime(m):
            out[m] += 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = brent_rho(m, budget)
        if d is None:
            raise FactorizationTimeout(v, m)
        stack += [d, m // d]
    return dict(sorted(out.items()))
