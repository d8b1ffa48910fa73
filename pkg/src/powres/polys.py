"""Reciprocity polynomials and the harvest of prime power-residue witnesses.

Every prime ``q`` dividing some ``f(n)`` (outside a few degenerate primes)
is a k-th power residue modulo ``p`` by the reciprocity criterion the
polynomial encodes:

* ``Quad1Mod4``        ``(n + r)**2 - p`` with ``r = isqrt(p)``
* ``Quad3Mod4``        ``a n**2 + b n + c`` with ``b**2 - 4ac = -p``
* ``Quad3Mod4Special`` ``n**2 + n + (1 + p)/4``
* ``Cubic``            ``|L|(9n**2 - 1) + 27|M|(n**3 - n)`` from ``4p = L**2 + 27 M**2``
* ``Biquadratic``      ``6|L|(9n**3 - n) + |M|(81n**4 - 54n**2 + 1)`` from ``p = L**2 + 4 M**2``

The cubic and biquadratic criteria are unchanged by ``x -> -x``, which
absorbs any sign change of ``L`` or ``M``; taking absolute values keeps the
polynomials positive for ``n >= 1``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import reduce

from .audit import EPSILON_MAX, guaranteed_regime, theorem_threshold
from .errors import EpsilonOutOfRange, FactorizationTimeout, WrongResidueClass
from .factoring import RHO_BUDGET, factor_value
from .numtheory import PrimeModulus, as_fraction, as_modulus, ceil_pow, isqrt, poly_eval
from .report import Case, Exclusion, ResidueReport, ResidueWitness, merge_witnesses
from .representations import build_form_3mod4, represent_4p_27, represent_p_4

# C in q_bound = ceil(C * p**(1/2 + eps))
Q_BOUND_CONSTANT = {
    Case.QUAD_1_MOD_4: 2,
    Case.QUAD_3_MOD_4: 2,
    Case.QUAD_3_MOD_4_SPECIAL: 2,
    Case.CUBIC: 72,
    Case.BIQUADRATIC: 42,
}
# x = p**(eps / k)
X_EXPONENT_DIVISOR = {Case.QUAD_1_MOD_4: 1, Case.QUAD_3_MOD_4: 2, Case.CUBIC: 3, Case.BIQUADRATIC: 4}

FIXED_DIVISOR_SPAN = 30
POSITIVITY_SPAN = 1000


@dataclass(frozen=True)
class ReciprocityPolynomial:
    case: Case
    coefficients: tuple[int, ...]
    p: PrimeModulus
    epsilon: Fraction
    x_limit: int
    q_bound: int
    x_theoretical: int
    window_low: int
    window_high: int
    delta: Fraction | None = None
    parameters: tuple = ()
    fixed_divisor: int = 1
    deviations: tuple[str, ...] = ()

    def __call__(self, n: int) -> int:
        return poly_eval(self.coefficients, n)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def params(self) -> dict:
        return dict(self.parameters)

    @property
    def criterion_modulus(self) -> int:
        """Primes dividing this number make the criterion degenerate (cubic/biquadratic).

        Only ``6M`` matters: a prime dividing ``L`` but not ``6M`` satisfies
        the criterion at ``x = 0`` and is a genuine witness.
        """
        if self.case in (Case.CUBIC, Case.BIQUADRATIC):
            return 6 * abs(self.params["M"])
        return 0


def _prime_support(n: int) -> set[int]:
    return set(factor_value(n)) if n > 1 else set()


def build_poly(
    p,
    case: Case,
    epsilon,
    *,
    delta=None,
    x_override: int | None = None,
) -> ReciprocityPolynomial:
    """Construct the reciprocity polynomial for ``case`` with its search limit and window.

    ``x_limit`` is ``ceil(p**eps)``, ``ceil(p**(eps/2))``, ``ceil(p**delta)``,
    ``ceil(p**(eps/3))`` or ``ceil(p**(eps/4))`` depending on the case. The
    harvest window is ``(x_limit, q_bound]``. Passing ``x_override`` switches
    to desk mode: the search stops at ``x_override`` and the window opens to
    ``(1, max(q_bound, f(x_override))]``.
    """
    pm = as_modulus(p)
    p = pm.p
    eps = Fraction(1, 2) if case is Case.QUAD_3_MOD_4_SPECIAL else as_fraction(epsilon)
    if not 0 < eps <= EPSILON_MAX[case]:
        raise EpsilonOutOfRange(f"epsilon = {eps} outside (0, {EPSILON_MAX[case]}] for {case.value}")
    need = {
        Case.QUAD_1_MOD_4: (4, 1),
        Case.QUAD_3_MOD_4: (4, 3),
        Case.QUAD_3_MOD_4_SPECIAL: (4, 3),
        Case.CUBIC: (3, 1),
        Case.BIQUADRATIC: (4, 1),
    }[case]
    if p % need[0] != need[1]:
        raise WrongResidueClass(
            f"p = {p} ≢ {need[1]} (mod {need[0]}), which {case.value} requires"
        )

    deviations = []
    params: dict = {}
    if case is Case.QUAD_1_MOD_4:
        r = isqrt(p)
        coeffs = (r * r - p, 2 * r, 1)
        params = {"r": r}
    elif case is Case.QUAD_3_MOD_4:
        form = build_form_3mod4(pm, eps)
        coeffs = tuple(form.coefficients)
        params = {"a": form.a, "b": form.b, "c": form.c}
        if form.source != "window":
            deviations.append(
                "form taken from reduced forms of discriminant -p (size window unusable at this p)"
            )
        else:
            deviations.append("leading coefficient window tightened to a < p^(1/2)/4, so c > p^(1/2)")
    elif case is Case.QUAD_3_MOD_4_SPECIAL:
        if delta is None:
            raise ValueError("Quad3Mod4Special needs delta")
        delta = as_fraction(delta)
        if not 0 < delta < Fraction(1, 2):
            raise EpsilonOutOfRange(f"delta = {delta} outside (0, 1/2)")
        coeffs = ((1 + p) // 4, 1, 1)
    elif case is Case.CUBIC:
        rep = represent_4p_27(pm)
        L, M = abs(rep.L), abs(rep.M)
        # L(9n^2 - 1) + 27M(n^3 - n)
        coeffs = (-L, -27 * M, 9 * L, 27 * M)
        params = {"L": rep.L, "M": rep.M}
        deviations.append("signs of L, M replaced by absolute values to keep f(n) > 0")
    else:
        rep = represent_p_4(pm)
        L, M = rep.L, rep.M
        # 6L(9n^3 - n) + M(81n^4 - 54n^2 + 1)
        coeffs = (M, -6 * L, -54 * M, 54 * L, 81 * M)
        params = {"L": L, "M": M}
        deviations.append("criterion read with x^4 - 6x^2 + 1 (the form the expanded f(n) uses)")
        deviations.append("harvest window lower end taken as q > p^(eps/4)")

    if case is Case.QUAD_3_MOD_4_SPECIAL:
        x_theoretical = ceil_pow(p, delta)
    else:
        x_theoretical = ceil_pow(p, eps / X_EXPONENT_DIVISOR[case])
    q_bound = ceil_pow(p, Fraction(1, 2) + eps, scale=Q_BOUND_CONSTANT[case])

    def f(n):
        return poly_eval(coeffs, n)

    if x_override is not None:
        if x_override < 1:
            raise ValueError("x_override must be positive")
        x_limit = int(x_override)
        window_low, window_high = 1, max(q_bound, f(x_limit))
        deviations.append(
            f"desk mode: x limited to {x_limit} (theory {x_theoretical}), window (1, {window_high}]"
        )
    else:
        x_limit = x_theoretical
        window_low, window_high = x_limit, q_bound

    # f is increasing on n >= 1 in every case; spot-check the head of the range.
    assert all(f(n) >= 1 for n in range(1, min(x_limit, POSITIVITY_SPAN) + 1))
    fixed = reduce(math.gcd, (f(n) for n in range(1, FIXED_DIVISOR_SPAN + 1)))
    if case is Case.QUAD_1_MOD_4:
        assert fixed == 1, f"(n + r)^2 - p has fixed divisor {fixed}"
    else:
        # a fixed prime divisor of a degree-d primitive-ish polynomial is <= d
        assert _prime_support(fixed) <= {2, 3}, f"unexpected fixed divisor {fixed}"
    if fixed > 1:
        deviations.append(f"f(n) has fixed divisor {fixed}")

    return ReciprocityPolynomial(
        case=case,
        coefficients=tuple(coeffs),
        p=pm,
        epsilon=eps,
        x_limit=x_limit,
        q_bound=q_bound,
        x_theoretical=x_theoretical,
        window_low=window_low,
        window_high=window_high,
        delta=delta if case is Case.QUAD_3_MOD_4_SPECIAL else None,
        parameters=tuple(params.items()),
        fixed_divisor=fixed,
        deviations=tuple(deviations),
    )


def evaluate(f: ReciprocityPolynomial, n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return f(n)


def classify(f: ReciprocityPolynomial, q: int, valuation: int = 3) -> Exclusion | None:
    """Why ``q`` dividing ``f(n)`` exactly ``valuation`` times is not a witness, or None.

    The reciprocity criterion covers odd ``q``. For ``(n + r)**2 - p`` the
    prime 2 certifies only when ``8 | f(n)``, which forces ``p = 1 (mod 8)``;
    in the other quadratic families ``2 | f(n)`` already forces ``p = 7 (mod 8)``.
    """
    if q == f.p.p:
        return Exclusion.EQUALS_P
    crit = f.criterion_modulus
    if crit and crit % q == 0:
        return Exclusion.DIVIDES_LM
    if q <= f.window_low:
        return Exclusion.SMALL_PRIME
    if q > f.window_high:
        return Exclusion.OUT_OF_WINDOW
    if q == 2 and f.case is Case.QUAD_1_MOD_4 and valuation < 3:
        return Exclusion.TWO_ADIC
    return None


def _collect_range(f: ReciprocityPolynomial, start: int, stop: int, budget: int):
    witnesses, unfactored = [], []
    for n in range(start, stop):
        v = f(n)
        try:
            fac = factor_value(v, budget=budget)
        except FactorizationTimeout as exc:
            unfactored.append((n, exc.cofactor))
            continue
        for q, e in fac.items():
            witnesses.append(ResidueWitness(q, n, e, classify(f, q, e)))
    return witnesses, unfactored


def collect_witnesses(
    f: ReciprocityPolynomial, workers: int = 1, budget: int = RHO_BUDGET
) -> ResidueReport:
    """Factor ``f(n)`` for ``1 <= n <= x_limit`` and record every prime divisor.

    With ``workers > 1`` the range is split into contiguous chunks handled by
    separate processes; the merged report is identical to the serial one.
    """
    n_max = f.x_limit
    if workers > 1 and n_max > 1:
        step = -(-n_max // workers)
        bounds = [(s, min(s + step, n_max + 1)) for s in range(1, n_max + 1, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(_collect_range, [f] * len(bounds), *zip(*bounds), [budget] * len(bounds))
            )
    else:
        parts = [_collect_range(f, 1, n_max + 1, budget)]
    witnesses = merge_witnesses(*(w for w, _ in parts))
    unfactored = tuple(sorted(u for _, us in parts for u in us))

    p = f.p.p
    if f.case is Case.QUAD_1_MOD_4:
        r = f.params["r"]
        ceiling = f.x_limit**2 + 2 * r * f.x_limit
        assert all(w.q <= ceiling for w in witnesses)
    deviations = list(f.deviations)
    if unfactored:
        deviations.append(f"{len(unfactored)} value(s) not fully factored; report incomplete")
    return ResidueReport(
        p=p,
        case=f.case,
        epsilon=f.epsilon,
        x_limit=f.x_limit,
        q_bound=f.q_bound,
        witnesses=witnesses,
        threshold=float(theorem_threshold(f.case, p, f.epsilon, delta=f.delta)),
        guaranteed_regime=guaranteed_regime(f.case, p, f.epsilon),
        deviations=tuple(deviations),
        x_theoretical=f.x_theoretical,
        window_low=f.window_low,
        window_high=f.window_high,
        delta=f.delta,
        parameters=f.params,
        unfactored=unfactored,
    )


def with_witnesses(report: ResidueReport, extra) -> ResidueReport:
    """Copy of ``report`` with ``extra`` witnesses merged in (used to probe the oracle)."""
    return replace(report, witnesses=merge_witnesses(report.witnesses, extra))
