"""Exact integer and modular arithmetic primitives.

Everything here works on plain Python ints. Polynomials are lists of
integer coefficients in ascending degree order, ``[c0, c1, c2, ...]``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .errors import (
    CapacityError,
    DegeneratePolynomial,
    DivisibleByModulus,
    NotAResidue,
    NotPrime,
)

# Deterministic for n < 3.3 * 10**24, which covers the whole 64-bit range.
MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
MR_ROUNDS = 40
MAX_SIEVE_LIMIT = 2 * 10**8

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _mr_witness(n: int, d: int, s: int, a: int) -> bool:
    """True if ``a`` proves ``n`` composite."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int, rounds: int = MR_ROUNDS) -> bool:
    """Miller-Rabin primality test.

    Exact for ``n < 2**64`` (fixed base set). Above that, ``rounds`` extra
    random bases are tried on top of the fixed ones; a composite survives with
    probability at most ``4**-rounds``. The random bases are seeded from ``n``
    so the answer is reproducible.
    """
    if n < 2:
        return False
    for sp in _SMALL_PRIMES:
        if n == sp:
            return True
        if n % sp == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in MR_BASES_64:
        if _mr_witness(n, d, s, a):
            return False
    if n < 1 << 64:
        return True
    rng = random.Random(n)
    for _ in range(rounds):
        if _mr_witness(n, d, s, rng.randrange(2, n - 1)):
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    if n < 2:
        return 2
    c = n + 1
    if c % 2 == 0 and c != 2:
        c += 1
    while not is_prime(c):
        c += 2
    return c


def sieve_primes(limit: int, max_limit: int = MAX_SIEVE_LIMIT) -> list[int]:
    """All primes ``<= limit`` in ascending order (odd-only sieve)."""
    if limit < 0:
        raise ValueError("limit must be non-negative")
    if limit > max_limit:
        raise CapacityError(f"sieve limit {limit} exceeds budget {max_limit}")
    if limit < 2:
        return []
    # index i stands for the odd number 2*i + 1
    size = (limit - 1) // 2 + 1
    odd = np.ones(size, dtype=bool)
    odd[0] = False
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if odd[i]:
            p = 2 * i + 1
            odd[p * p // 2 :: p] = False
    return [2] + (2 * np.flatnonzero(odd) + 1).tolist()


def isqrt(n: int) -> int:
    if n < 0:
        raise ValueError("isqrt of negative number")
    return math.isqrt(n)


def iroot_ceil(n: int, k: int) -> int:
    """Smallest integer ``r >= 0`` with ``r**k >= n``."""
    if n <= 0:
        return 0
    # Newton iteration for the floor root, started above it.
    r = 1 << -(-n.bit_length() // k)
    while True:
        nr = ((k - 1) * r + n // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    return r if r**k >= n else r + 1


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol ``(a/n)`` for odd ``n >= 1``."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@dataclass(frozen=True)
class PrimeModulus:
    """An odd prime together with its residue classes mod 3 and mod 4."""

    p: int
    residue_mod_3: int = field(init=False)
    residue_mod_4: int = field(init=False)

    def __post_init__(self):
        p = int(self.p)
        if p < 3 or not is_prime(p):
            raise NotPrime(f"{p} is not an odd prime")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "residue_mod_3", p % 3)
        object.__setattr__(self, "residue_mod_4", p % 4)

    def __int__(self):
        return self.p

    def __index__(self):
        return self.p


def as_modulus(p) -> PrimeModulus:
    return p if isinstance(p, PrimeModulus) else PrimeModulus(p)


def sqrt_mod_prime(a: int, p) -> tuple[int, int]:
    """Both square roots of ``a`` modulo the odd prime ``p``, ascending.

    Uses ``a**((p+1)/4)`` when ``p = 3 (mod 4)`` and Tonelli-Shanks otherwise.
    """
    p = int(p)
    a %= p
    if a == 0:
        return (0, 0)
    if jacobi_symbol(a, p) != 1:
        raise NotAResidue(f"{a} is not a square modulo {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while jacobi_symbol(z, p) != -1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    assert r * r % p == a
    return tuple(sorted((r, p - r)))


def kth_power_residue(q: int, p, k: int) -> bool:
    """Euler's criterion generalised: ``q`` is a k-th power mod ``p``."""
    p = int(p)
    if k < 1:
        raise ValueError("k must be positive")
    if q % p == 0:
        raise DivisibleByModulus(f"{p} divides {q}")
    d = math.gcd(k, p - 1)
    return pow(q, (p - 1) // d, p) == 1


# --- polynomials -------------------------------------------------------------


def poly_eval(coeffs, n: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * n + c
    return acc


def poly_derivative(coeffs) -> list[int]:
    return [i * c for i, c in enumerate(coeffs)][1:]


def poly_content(coeffs) -> int:
    return math.gcd(*coeffs)


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod_rem(a, b, q):
    """Remainder of ``a`` by monic-able ``b`` over F_q."""
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, q)
    while len(a) - 1 >= db and a:
        coef = a[-1] * inv % q
        shift = len(a) - 1 - db
        for i in range(db + 1):
            a[shift + i] = (a[shift + i] - coef * b[i]) % q
        _trim(a)
    return a


def _pmulmod(a, b, m, q):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pdivmod_rem(_trim([c % q for c in out]), m, q)


def _ppowmod(base, e, m, q):
    result = [1]
    base = _pdivmod_rem(base, m, q)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, q)
        base = _pmulmod(base, base, m, q)
        e >>= 1
    return result


def _pgcd(a, b, q):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pdivmod_rem(a, b, q)
    if not a:
        return a
    inv = pow(a[-1], -1, q)
    return [c * inv % q for c in a]


def _split_roots(g, q, shift=1):
    """Roots of a monic squarefree ``g`` that splits into linear factors."""
    deg = len(g) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [(-g[0]) % q]
    a = shift
    while True:
        h = _ppowmod([a % q, 1], (q - 1) // 2, g, q)
        h = _trim(([(h[0] - 1) % q] + h[1:]) if h else [q - 1])
        d = _pgcd(g, h, q) if h else list(g)
        if 0 < len(d) - 1 < deg:
            rest = _pdiv_exact(g, d, q)
            return _split_roots(d, q, a + 1) + _split_roots(rest, q, a + 1)
        a += 1


def _pdiv_exact(a, b, q):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, q)
    quot = [0] * (len(a) - db)
    for shift in range(len(a) - 1 - db, -1, -1):
        coef = a[shift + db] * inv % q
        quot[shift] = coef
        for i in range(db + 1):
            a[shift + i] = (a[shift + i] - coef * b[i]) % q
    return quot


def roots_mod_prime(coeffs, q: int) -> list[int]:
    """Distinct roots in ``[0, q)`` of the polynomial over F_q, ascending.

    Small ``q`` are scanned directly; otherwise the split part
    ``gcd(f, x**q - x)`` is factored by Cantor-Zassenhaus with deterministic
    shifts.
    """
    f = _trim([c % q for c in coeffs])
    if not f:
        raise DegeneratePolynomial(f"polynomial vanishes identically mod {q}")
    if len(f) == 1:
        return []
    if q <= 64:
        return [n for n in range(q) if poly_eval(f, n) % q == 0]
    xq = _ppowmod([0, 1], q, f, q)
    h = list(xq) + [0] * max(0, 2 - len(xq))
    h[1] = (h[1] - 1) % q
    g = _pgcd(f, _trim(h), q) if _trim(h) else _pgcd(f, [], q)
    if not g:
        g = [c * pow(f[-1], -1, q) % q for c in f]
    return sorted(_split_roots(g, q))


def hensel_root_count(coeffs, q: int, k: int) -> int:
    """Number of roots of ``f`` modulo ``q**k`` for a prime ``q``.

    Roots mod q are lifted one level at a time. A simple root
    (``f'(r) != 0 mod q``) has exactly one lift; for a singular root all ``q``
    candidates ``r + t*q**j`` are tested.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if all(c % q == 0 for c in coeffs):
        raise DegeneratePolynomial(f"all coefficients divisible by {q}")
    deriv = poly_derivative(coeffs)
    roots = roots_mod_prime(coeffs, q)
    qj = q
    for _ in range(1, k):
        qnext = qj * q
        lifted = []
        for r in roots:
            fr = poly_eval(coeffs, r)
            dr = poly_eval(deriv, r)
            if dr % q:
                t = (-(fr // qj) * pow(dr, -1, q)) % q
                lifted.append(r + t * qj)
            else:
                lifted.extend(
                    c for c in (r + t * qj for t in range(q)) if poly_eval(coeffs, c) % qnext == 0
                )
        roots, qj = lifted, qnext
    return len(roots)


# --- real powers with exact rounding -------------------------------------------

_EXACT_DENOMINATOR = 4096


def as_fraction(e) -> Fraction:
    """Exact rational from an int, float, string (``'0.2'``, ``'1/5'``) or Fraction."""
    return e if isinstance(e, Fraction) else Fraction(str(e))


def floor_pow(n: int, e, scale: int = 1) -> int:
    """``floor(scale * n**e)`` for integer ``n >= 1`` and rational ``e >= 0``.

    Exact for exponent denominators up to 4096; beyond that the value is taken
    from a 60-digit mpmath evaluation.
    """
    e = as_fraction(e)
    if e.denominator <= _EXACT_DENOMINATOR:
        u, v = e.numerator, e.denominator
        target = scale**v * n**u
        r = iroot_ceil(target, v)
        return r if r**v == target else r - 1
    with mpmath.workdps(60):
        return int(mpmath.floor(scale * mpmath.power(n, mpmath.mpf(e.numerator) / e.denominator)))


def ceil_pow(n: int, e, scale: int = 1) -> int:
    """``ceil(scale * n**e)``, companion of :func:`floor_pow`."""
    e = as_fraction(e)
    if e.denominator <= _EXACT_DENOMINATOR:
        u, v = e.numerator, e.denominator
        return iroot_ceil(scale**v * n**u, v)
    with mpmath.workdps(60):
        return int(mpmath.ceil(scale * mpmath.power(n, mpmath.mpf(e.numerator) / e.denominator)))
