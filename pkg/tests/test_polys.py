import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powres.errors import EpsilonOutOfRange, WrongResidueClass
from powres.numtheory import jacobi_symbol, kth_power_residue, next_prime
from powres.oracle import verify_report
from powres.polys import build_poly, classify, collect_witnesses, evaluate
from powres.report import Case, Exclusion, ResidueWitness, merge_witnesses


def prime_in_class(n, m, r):
    p = next_prime(n)
    while p % m != r:
        p = next_prime(p)
    return p


def test_quad_1_mod_4_example():
    f = build_poly(17, Case.QUAD_1_MOD_4, Fraction(1, 4))
    assert f.coefficients == (-1, 8, 1)
    assert (f.x_limit, f.q_bound) == (3, 17)
    assert [evaluate(f, n) for n in (1, 2, 3)] == [8, 19, 32]


def test_cubic_example():
    f = build_poly(13, Case.CUBIC, 0.5)
    assert f(1) == 40
    assert all(f(n) == 5 * (9 * n * n - 1) + 27 * (n**3 - n) for n in range(10))
    assert f.params == {"L": -5, "M": 1}


def test_biquadratic_example():
    f = build_poly(13, Case.BIQUADRATIC, 0.5)
    assert f(1) == 172
    assert all(f(n) == 18 * (9 * n**3 - n) + 81 * n**4 - 54 * n * n + 1 for n in range(10))


def test_special_case_polynomial():
    f = build_poly(23, Case.QUAD_3_MOD_4_SPECIAL, 0.5, delta=0.25)
    assert f.coefficients == (6, 1, 1) and f.epsilon == Fraction(1, 2)
    assert f.x_limit == math.ceil(23**0.25)


def test_evaluate_rejects_zero():
    with pytest.raises(ValueError):
        evaluate(build_poly(17, Case.QUAD_1_MOD_4, 0.25), 0)


@pytest.mark.parametrize(
    "p, case",
    [(19, Case.QUAD_1_MOD_4), (17, Case.QUAD_3_MOD_4), (13, Case.QUAD_3_MOD_4_SPECIAL),
     (5, Case.CUBIC), (23, Case.CUBIC), (7, Case.BIQUADRATIC)],
)
def test_wrong_class(p, case):
    with pytest.raises(WrongResidueClass):
        build_poly(p, case, 0.2, delta=0.25)


def test_epsilon_ranges():
    with pytest.raises(EpsilonOutOfRange):
        build_poly(17, Case.QUAD_1_MOD_4, 0.3)
    with pytest.raises(EpsilonOutOfRange):
        build_poly(23, Case.QUAD_3_MOD_4, 0.25)
    with pytest.raises(EpsilonOutOfRange):
        build_poly(13, Case.CUBIC, 0.6)
    with pytest.raises(EpsilonOutOfRange):
        build_poly(13, Case.CUBIC, 0)
    with pytest.raises(EpsilonOutOfRange):
        build_poly(23, Case.QUAD_3_MOD_4_SPECIAL, 0.5, delta=0.5)
    with pytest.raises(ValueError):
        build_poly(23, Case.QUAD_3_MOD_4_SPECIAL, 0.5)


def test_degrees():
    assert build_poly(17, Case.QUAD_1_MOD_4, 0.2).degree == 2
    assert build_poly(23, Case.QUAD_3_MOD_4, 0.2).degree == 2
    assert build_poly(13, Case.CUBIC, 0.2).degree == 3
    assert build_poly(13, Case.BIQUADRATIC, 0.2).degree == 4


def test_q_bound_rounding():
    p = 10**6 + 3
    f = build_poly(p, Case.CUBIC, 0.5)
    assert f.q_bound == 72 * p and f.x_limit == math.ceil(p ** (1 / 6))
    p = prime_in_class(10**6, 4, 1)
    f = build_poly(p, Case.BIQUADRATIC, Fraction(1, 2))
    assert f.q_bound == 42 * p


def test_desk_harvest_p17():
    f = build_poly(17, Case.QUAD_1_MOD_4, 0.25, x_override=3)
    report = verify_report(collect_witnesses(f))
    assert report.harvested == [2, 19] and report.oracle_verified
    assert any("desk mode" in d for d in report.deviations)
    assert report.x_theoretical == 3 and report.window_low == 1


def test_theory_window_p17():
    report = collect_witnesses(build_poly(17, Case.QUAD_1_MOD_4, 0.25))
    assert report.harvested == []
    reasons = {(w.q, w.exclusion_reason) for w in report.excluded}
    assert reasons == {(2, Exclusion.SMALL_PRIME), (19, Exclusion.OUT_OF_WINDOW)}


def test_cubic_harvest_p13():
    report = verify_report(collect_witnesses(build_poly(13, Case.CUBIC, 0.5)))
    assert 5 in report.harvested
    assert [(w.q, w.n, w.valuation, w.exclusion_reason) for w in report.excluded] == [
        (2, 1, 3, Exclusion.DIVIDES_LM)
    ]


def test_biquadratic_harvest_p13():
    report = verify_report(collect_witnesses(build_poly(13, Case.BIQUADRATIC, 0.5)))
    assert 43 in report.harvested and report.oracle_verified
    assert report.residue_flags[43] == {"q": False, "q_star": True}


def test_classify_order():
    f = build_poly(13, Case.CUBIC, 0.5)
    assert classify(f, 13) is Exclusion.EQUALS_P
    assert classify(f, 3) is Exclusion.DIVIDES_LM
    assert classify(f, f.q_bound + 1) is Exclusion.OUT_OF_WINDOW
    assert classify(f, 5) is None


@settings(max_examples=40, deadline=None)
@given(st.integers(10**5, 10**12), st.sampled_from(list(Case)))
def test_valuations_exact_and_sound(n, case):
    mod = {Case.CUBIC: (3, 1), Case.QUAD_3_MOD_4: (4, 3), Case.QUAD_3_MOD_4_SPECIAL: (4, 3)}.get(case, (4, 1))
    p = prime_in_class(max(n, 2 * 10**6), *mod)
    eps = {Case.QUAD_1_MOD_4: 0.2, Case.QUAD_3_MOD_4: 0.2}.get(case, 0.5)
    f = build_poly(p, case, eps, delta=0.2, x_override=40)
    report = verify_report(collect_witnesses(f))
    for w in report.witnesses:
        v = f(w.n)
        assert v % w.q**w.valuation == 0 and v % w.q ** (w.valuation + 1)
    assert report.oracle_verified
    for q in report.harvested:
        if case.is_quadratic:
            assert jacobi_symbol(q, p) == 1
        elif case is Case.CUBIC:
            assert kth_power_residue(q, p, 3)


def test_fixed_divisor_recorded():
    # p = 7 mod 8 makes (1 + p)/4 even, so n^2 + n + (1+p)/4 is always even
    f = build_poly(23, Case.QUAD_3_MOD_4_SPECIAL, 0.5, delta=0.25)
    assert f.fixed_divisor == 2
    assert any("fixed divisor 2" in d for d in f.deviations)
    assert build_poly(17, Case.QUAD_1_MOD_4, 0.2).fixed_divisor == 1


def test_parallel_collection_matches_serial():
    p = prime_in_class(2**36, 3, 1)
    f = build_poly(p, Case.CUBIC, 0.5, x_override=300)
    serial = collect_witnesses(f)
    parallel = collect_witnesses(f, workers=3)
    assert serial.witnesses == parallel.witnesses
    assert [w.exclusion_reason for w in serial.witnesses] == [w.exclusion_reason for w in parallel.witnesses]


def test_merge_is_order_free():
    rng = random.Random(5)
    ws = [ResidueWitness(rng.choice([2, 3, 5]), rng.randrange(1, 4), rng.randrange(1, 5)) for _ in range(30)]
    a, b, c = ws[:10], ws[10:20], ws[20:]
    assert merge_witnesses(a, b, c) == merge_witnesses(c, a, b) == merge_witnesses(merge_witnesses(a, b), c)
    merged = merge_witnesses(ws)
    assert len({(w.q, w.n) for w in merged}) == len(merged)
    for w in merged:
        assert w.valuation == max(v.valuation for v in ws if (v.q, v.n) == (w.q, w.n))


def test_two_needs_eighth_power_divisibility():
    # p = 5 (mod 8): 2 divides (n + r)^2 - p but is not a square mod p
    p = 2000029
    report = verify_report(collect_witnesses(build_poly(p, Case.QUAD_1_MOD_4, 0.2, x_override=40)))
    assert 2 not in report.harvested and report.oracle_verified
    assert {w.exclusion_reason for w in report.excluded if w.q == 2} == {Exclusion.TWO_ADIC}
    # p = 17 = 1 (mod 8): f(1) = 8 certifies q = 2
    report = collect_witnesses(build_poly(17, Case.QUAD_1_MOD_4, 0.25, x_override=3))
    assert [(w.n, w.exclusion_reason) for w in report.witnesses if w.q == 2] == [(1, None), (3, None)]
