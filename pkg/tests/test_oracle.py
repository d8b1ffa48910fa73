import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powres.errors import IncompleteReport
from powres.numtheory import next_prime
from powres.oracle import (
    count_roots_brute,
    direct_residue_set,
    in_direct_residue_set,
    kth_powers,
    logsum_identity_check,
    signed_prime,
    verify_report,
)
from powres.polys import build_poly, collect_witnesses, with_witnesses
from powres.report import Case, ResidueReport, ResidueWitness


def test_kth_powers():
    assert kth_powers(13, 3) == {1, 5, 8, 12}
    assert kth_powers(17, 4) == {1, 4, 13, 16}


@pytest.mark.parametrize(
    "p, k, limit, expected",
    [(13, 3, 12, {5}), (17, 2, 20, {2, 13, 19}), (5, 1, 10, {2, 3, 7})],
)
def test_direct_residue_set(p, k, limit, expected):
    assert direct_residue_set(p, k, limit) == expected


def test_direct_residue_set_signed():
    # -43 is a fourth power mod 13, 43 is not
    assert 43 in direct_residue_set(13, 4, 50, signed=True)
    assert 43 not in direct_residue_set(13, 4, 50)
    assert 2 not in direct_residue_set(17, 4, 50, signed=True)


def test_membership_matches_set():
    for p, k in ((101, 4), (103, 3), (1000003, 2)):
        full = direct_residue_set(p, k, 500)
        assert {q for q in range(501) if in_direct_residue_set(q, p, k, 500)} == full
    with pytest.raises(ValueError):
        direct_residue_set(7, 2, 1)


def test_signed_prime():
    assert [signed_prime(q) for q in (3, 5, 7, 13, 43)] == [-3, 5, -7, 13, -43]


def test_verify_example_and_bogus_injection():
    report = collect_witnesses(build_poly(17, Case.QUAD_1_MOD_4, 0.25, x_override=3))
    good = verify_report(report)
    assert good.oracle_verified and good.offenders == ()
    bad = verify_report(with_witnesses(report, [ResidueWitness(3, 1, 1)]))
    assert not bad.oracle_verified and bad.offenders == (3,)


def test_verify_empty_is_vacuous():
    empty = ResidueReport(p=17, case=Case.QUAD_1_MOD_4, epsilon=0.25, x_limit=1, q_bound=17,
                          witnesses=(), window_high=17)
    assert verify_report(empty).oracle_verified


def test_verify_refuses_incomplete():
    partial = ResidueReport(p=17, case=Case.QUAD_1_MOD_4, epsilon=0.25, x_limit=1, q_bound=17,
                            witnesses=(), unfactored=((1, 91),))
    with pytest.raises(IncompleteReport):
        verify_report(partial)


def test_verify_rejects_window_escape():
    # a genuine residue above the window is not in the direct set up to window_high
    report = collect_witnesses(build_poly(17, Case.QUAD_1_MOD_4, 0.25, x_override=3))
    bogus = verify_report(with_witnesses(report, [ResidueWitness(53, 1, 1)]))
    assert 53 in bogus.offenders


def test_logsum_examples():
    f = build_poly(17, Case.QUAD_1_MOD_4, 0.25)
    # 8 * 19 = 152 = 2^3 * 19
    assert logsum_identity_check(f, 2).exact
    assert abs(logsum_identity_check(f, 2).residual) < 1e-9
    cubic = build_poly(13, Case.CUBIC, 0.5)
    assert logsum_identity_check(cubic, 1).exact
    assert logsum_identity_check(f, 0) == (True, 0.0)


@settings(max_examples=20, deadline=None)
@given(st.integers(10**8, 10**12))
def test_logsum_random(n):
    p = next_prime(n)
    while p % 12 != 1:
        p = next_prime(p)
    for case in (Case.QUAD_1_MOD_4, Case.CUBIC, Case.BIQUADRATIC):
        check = logsum_identity_check(build_poly(p, case, 0.2), 60)
        assert check.exact and abs(check.residual) < 1e-6


@pytest.mark.parametrize("coeffs, m, expected", [([-1, 8, 1], 3, 0), ([-1, 8, 1], 4, 2), ([0, 0, 1], 7, 1)])
def test_count_roots_brute(coeffs, m, expected):
    assert count_roots_brute(coeffs, m) == expected


def test_count_roots_cap():
    with pytest.raises(ValueError):
        count_roots_brute([1, 1], 10**6 + 1)
    with pytest.raises(ValueError):
        count_roots_brute([1, 1], 0)


def test_count_roots_large_coefficients():
    # coefficients far beyond int64 are reduced before evaluation
    big = 10**40 + 7
    coeffs = [-(big**2), 0, 1]
    assert count_roots_brute(coeffs, 9973) == sum(1 for n in range(9973) if (n * n - big * big) % 9973 == 0)
