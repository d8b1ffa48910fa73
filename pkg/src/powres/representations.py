"""Representation problems behind the cubic, biquadratic and p = 3 (mod 4) constructions.

* ``4p = L**2 + 27*M**2`` for ``p = 1 (mod 3)``
* ``p = L**2 + 4*M**2`` for ``p = 1 (mod 4)``
* a positive definite form ``(a, b, c)`` of discriminant ``-p`` whose leading
  coefficient sits in a prescribed size window, for ``p = 3 (mod 4)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import EpsilonOutOfRange, NotOneModThree, WindowExhausted, WrongResidueClass
from .numtheory import as_fraction, as_modulus, floor_pow, is_prime, isqrt, jacobi_symbol, sqrt_mod_prime

CROSSCHECK_LIMIT = 10**6
FALLBACK_LIMIT = 10**4


class Kind(enum.Enum):
    FOUR_P_27 = "4p=L^2+27M^2"
    P_ONE_4 = "p=L^2+4M^2"


@dataclass(frozen=True)
class RepresentationPair:
    L: int
    M: int
    kind: Kind
    p: int

    def __post_init__(self):
        if self.kind is Kind.FOUR_P_27:
            assert self.L**2 + 27 * self.M**2 == 4 * self.p
            assert self.L % 3 == 1 and self.M > 0
            # 4p <= 28 max(|L|,|M|)^2
            assert 7 * max(abs(self.L), self.M) ** 2 >= self.p
        else:
            assert self.L**2 + 4 * self.M**2 == self.p
            assert self.L % 2 == 1 and self.L > 0 and self.M > 0
            assert 5 * max(self.L, self.M) ** 2 >= self.p


@dataclass(frozen=True)
class BinaryQuadraticForm:
    """``a*u**2 + b*u*v + c*v**2``; ``source`` says how it was found."""

    a: int
    b: int
    c: int
    discriminant: int
    source: str = "window"

    def __post_init__(self):
        assert self.b * self.b - 4 * self.a * self.c == self.discriminant
        assert self.a > 0 and self.discriminant < 0
        assert abs(self.b) <= self.a

    @property
    def coefficients(self) -> list[int]:
        """Ascending coefficients of ``f(n) = a n^2 + b n + c``."""
        return [self.c, self.b, self.a]


def cornacchia(d: int, m: int, root: int) -> tuple[int, int] | None:
    """Solve ``x**2 + d*y**2 = m`` from a square root of ``-d`` mod ``m``.

    Returns ``(x, y)`` with ``x, y >= 0`` or None if the descent finds nothing.
    """
    a, b = m, root % m
    if 2 * b < m:
        b = m - b
    bound = isqrt(m)
    while b > bound:
        a, b = b, a % b
    rest = m - b * b
    if rest % d:
        return None
    y2 = rest // d
    y = isqrt(y2)
    return (b, y) if y * y == y2 else None


def _cornacchia_4p(d: int, p: int) -> tuple[int, int] | None:
    """Solve ``x**2 + d*y**2 = 4p`` for odd ``d`` with ``-d = 1 (mod 4)``."""
    x0 = sqrt_mod_prime(-d, p)[0]
    if x0 % 2 != d % 2:
        x0 = p - x0
    a, b = 2 * p, x0
    bound = isqrt(4 * p)
    while b > bound:
        a, b = b, a % b
    rest = 4 * p - b * b
    if rest % d:
        return None
    y2 = rest // d
    y = isqrt(y2)
    return (b, y) if y * y == y2 else None


def exhaustive_4p_27(p: int) -> list[tuple[int, int]]:
    """Every ``(L, M)`` with ``L**2 + 27*M**2 = 4p`` and ``M > 0``."""
    out = []
    for M in range(1, isqrt(4 * p // 27) + 1):
        rest = 4 * p - 27 * M * M
        L = isqrt(rest)
        if L * L == rest:
            out += [(L, M), (-L, M)] if L else [(0, M)]
    return out


def exhaustive_p_4(p: int) -> list[tuple[int, int]]:
    """Every ``(L, M)`` with ``L**2 + 4*M**2 = p`` and ``L, M > 0``."""
    out = []
    for M in range(1, isqrt(p // 4) + 1):
        rest = p - 4 * M * M
        L = isqrt(rest)
        if L > 0 and L * L == rest:
            out.append((L, M))
    return out


def represent_4p_27(p, crosscheck: bool | None = None) -> RepresentationPair:
    """The pair with ``L**2 + 27*M**2 = 4p``, normalized ``L = 1 (mod 3)``, ``M > 0``."""
    p = as_modulus(p).p
    if p % 3 != 1:
        raise NotOneModThree(f"p = {p} ≢ 1 (mod 3)")
    sol = _cornacchia_4p(27, p)
    if sol is None:
        raise ArithmeticError(f"Cornacchia descent failed for 4*{p} = L^2 + 27M^2")
    L, M = sol
    if L % 3 != 1:
        L = -L
    pair = RepresentationPair(L, M, Kind.FOUR_P_27, p)
    if crosscheck if crosscheck is not None else p <= CROSSCHECK_LIMIT:
        if [(pair.L, pair.M)] != [s for s in exhaustive_4p_27(p) if s[0] % 3 == 1]:
            raise ArithmeticError(f"Cornacchia and exhaustive search disagree for p = {p}")
    return pair


def represent_p_4(p, crosscheck: bool | None = None) -> RepresentationPair:
    """The pair with ``L**2 + 4*M**2 = p``, ``L`` odd positive, ``M`` positive."""
    p = as_modulus(p).p
    if p % 4 != 1:
        raise WrongResidueClass(f"p = {p} ≢ 1 (mod 4)")
    sol = cornacchia(4, p, sqrt_mod_prime(-4, p)[0])
    if sol is None:
        raise ArithmeticError(f"Cornacchia descent failed for {p} = L^2 + 4M^2")
    pair = RepresentationPair(sol[0], sol[1], Kind.P_ONE_4, p)
    if crosscheck if crosscheck is not None else p <= CROSSCHECK_LIMIT:
        if exhaustive_p_4(p) != [(pair.L, pair.M)]:
            raise ArithmeticError(f"Cornacchia and exhaustive search disagree for p = {p}")
    return pair


def reduced_forms(D: int) -> list[BinaryQuadraticForm]:
    """All reduced positive definite forms of discriminant ``D < 0``."""
    out = []
    for a in range(1, isqrt(-D // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (b < 0 and (a == c)):
                continue
            out.append(BinaryQuadraticForm(a, b, c, D, source="reduced-fallback"))
    return out


def form_window(p: int, epsilon) -> tuple[int, int]:
    """Integer range ``[lo, hi]`` for ``p**(1/2 - eps/2) < a < p**(1/2) / 4``."""
    e = as_fraction(epsilon)
    lo = floor_pow(p, (1 - e) / 2) + 1
    hi = isqrt((p - 1) // 16)
    return lo, hi


def build_form_3mod4(p, epsilon) -> BinaryQuadraticForm:
    """Form ``(a, b, c)`` of discriminant ``-p`` with prime ``a`` in the size window.

    ``a`` is the least prime in ``(p**(1/2-eps/2), p**(1/2)/4)`` at which
    ``-p`` is a square; ``b`` is the odd square root of ``-p`` mod ``4a`` with
    ``|b| <= a`` and ``c = (b**2 + p) / (4a)``, so ``c > p**(1/2)``.
    Below ``p = 10**4`` the reduced form with the largest ``a`` is used instead.
    """
    p = as_modulus(p).p
    if p % 4 != 3:
        raise WrongResidueClass(f"p = {p} ≢ 3 (mod 4)")
    e = as_fraction(epsilon)
    if not 0 < e <= Fraction(1, 2):
        raise EpsilonOutOfRange(f"epsilon = {epsilon} outside (0, 1/2]")
    if p < FALLBACK_LIMIT:
        forms = reduced_forms(-p)
        return max(forms, key=lambda f: (f.a, f.b))
    lo, hi = form_window(p, e)
    for a in range(max(lo, 3), hi + 1):
        if not is_prime(a) or jacobi_symbol(-p, a) != 1:
            continue
        r = sqrt_mod_prime(-p, a)[0]
        b = r if r % 2 else r - a
        c = (b * b + p) // (4 * a)
        form = BinaryQuadraticForm(a, b, c, -p)
        assert c * c > p
        return form
    raise WindowExhausted(
        f"no prime a in ({lo - 1}, {hi + 1}) has -{p} as a square; try a larger epsilon"
    )
