from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powres.audit import (
    c1,
    chebyshev_sum_audit,
    chebyshev_sum_grid,
    guaranteed_regime,
    inequality_chain_audit,
    lower_bound_expression,
    regime_flags,
    theorem_threshold,
)
from powres.errors import EpsilonOutOfRange, IncompleteReport
from powres.oracle import verify_report
from powres.pipeline import run
from powres.report import Case, ResidueReport

# mpmath at 60 digits, computed once by hand
CHEB_10 = ("1.96913116117841079961593669713", "4.35545075331615336812250804187")
CHEB_100 = ("4.1148939770753765085978147613", "6.61531486284732258972192174833")
QUAD_1E6 = "0.995267926383743126925630762719"  # 0.25 * 10^0.6
SPECIAL_1E7 = "28.1170662595174540197475519888"  # 0.5 * 10^1.75

P_LN101 = 73070599793680672726476826340615135890079017  # ln p = 101.0000...
P_LN84 = 3025077322201142338266566396443428781  # ln p = 84.0000...

REL = 1e-9


def close(a, b, tol=REL):
    return abs(mpmath.mpf(a) - mpmath.mpf(b)) <= tol


def test_threshold_examples():
    assert close(theorem_threshold(Case.QUAD_3_MOD_4, 10**6, 0.2), QUAD_1E6)
    assert close(theorem_threshold(Case.QUAD_1_MOD_4, 10**6, Fraction(1, 5)), QUAD_1E6)
    assert close(theorem_threshold(Case.CUBIC, 10**9, Fraction(1, 10**12)), mpmath.mpf(1) / 15, 1e-9)
    assert close(theorem_threshold(Case.BIQUADRATIC, 2**40, 0.5), mpmath.mpf(2) ** 5 / 16)


@pytest.mark.parametrize("case, eps", [(Case.QUAD_3_MOD_4, 0.3), (Case.QUAD_1_MOD_4, 0.3), (Case.CUBIC, 0.6),
                                       (Case.BIQUADRATIC, 0), (Case.QUAD_3_MOD_4, 0.25)])
def test_threshold_epsilon_range(case, eps):
    with pytest.raises(EpsilonOutOfRange):
        theorem_threshold(case, 10**6, eps)


def test_special_threshold():
    assert close(theorem_threshold(Case.QUAD_3_MOD_4_SPECIAL, 10**7, 0.5, delta=0.25), SPECIAL_1E7)
    assert close(lower_bound_expression(Case.QUAD_3_MOD_4_SPECIAL, 10**7, 0.5, delta=0.25), SPECIAL_1E7)
    with pytest.raises(ValueError):
        theorem_threshold(Case.QUAD_3_MOD_4_SPECIAL, 10**7, 0.5)


@settings(max_examples=200)
@given(
    st.sampled_from([Case.QUAD_1_MOD_4, Case.QUAD_3_MOD_4, Case.CUBIC, Case.BIQUADRATIC]),
    st.integers(10, 10**40),
    st.integers(10, 10**40),
    st.fractions(Fraction(1, 1000), Fraction(1, 5)),
    st.fractions(Fraction(1, 1000), Fraction(1, 5)),
)
def test_threshold_monotone(case, p1, p2, e1, e2):
    (p1, p2), (e1, e2) = sorted((p1, p2)), sorted((e1, e2))
    assert theorem_threshold(case, p1, e1) <= theorem_threshold(case, p2, e1)
    assert theorem_threshold(case, p1, e1) <= theorem_threshold(case, p1, e2)


def test_regime_examples():
    assert not guaranteed_regime(Case.QUAD_1_MOD_4, 10**9, 0.1)
    assert guaranteed_regime(Case.CUBIC, P_LN101, 0.5)
    assert not guaranteed_regime(Case.BIQUADRATIC, P_LN84, 0.5)


def test_regime_variants_reported_side_by_side():
    flags = regime_flags(Case.BIQUADRATIC, P_LN84, 0.5)
    # x = p^(1/8) ~ e^10.5 >= 60 in both readings; only the e^84 variant holds
    assert flags == {"theorem": False, "body_x60_e84": True, "body_x60_e85": False}
    flags = regime_flags(Case.CUBIC, P_LN101, 0.5)
    assert flags == {"theorem": True, "body_x75_e100": True, "body_x50_e60": True}
    # x = p^(eps/3) < 75 for small eps even when ln p >= 100
    assert regime_flags(Case.CUBIC, P_LN101, 0.01)["body_x75_e100"] is False


@settings(max_examples=100)
@given(st.integers(3, 10**135), st.fractions(Fraction(1, 1000), Fraction(1, 5)))
def test_quadratic_regime_never_reached(p, eps):
    # e^312 is about 10^135.5
    assert not guaranteed_regime(Case.QUAD_3_MOD_4, p, eps)
    assert not guaranteed_regime(Case.QUAD_1_MOD_4, p, eps)


def test_quadratic_regime_boundary():
    assert guaranteed_regime(Case.QUAD_3_MOD_4, 10**136, 0.2)
    assert not guaranteed_regime(Case.QUAD_3_MOD_4, 10**135, 0.2)


def test_c1():
    assert close(c1(10), 1 + mpmath.mpf("0.15") / mpmath.log(10) ** 3)


def test_chebyshev_worked_values():
    a = chebyshev_sum_audit(10)
    assert close(a.lhs, CHEB_10[0]) and close(a.rhs, CHEB_10[1]) and a.holds
    a = chebyshev_sum_audit(100)
    assert close(a.lhs, CHEB_100[0]) and close(a.rhs, CHEB_100[1]) and a.holds


def test_chebyshev_grid_matches_single():
    xs = [10, 11, 97, 100, 1000, 12345]
    for g, x in zip(chebyshev_sum_grid(xs), xs):
        s = chebyshev_sum_audit(x)
        assert g.x == x and close(g.lhs, s.lhs, 1e-30) and close(g.rhs, s.rhs, 1e-30)


def test_chebyshev_rejects_small_x():
    with pytest.raises(ValueError):
        chebyshev_sum_audit(9)


def test_chain_audit_quad():
    report, audit = run(17, Case.QUAD_1_MOD_4, 0.25, x_override=3)
    assert audit.empirical_count == 2 and audit.rhs == 2
    assert audit.meets_threshold == (2 >= audit.threshold)
    assert set(audit.as_dict()) >= {"threshold", "c1", "lower_bound_expression", "empirical_count"}


def test_chain_audit_special_reports_expression():
    p = 10000019
    report, audit = run(p, Case.QUAD_3_MOD_4_SPECIAL, 0.5, delta=0.25)
    assert close(audit.lhs, mpmath.mpf("0.5") * mpmath.power(p, 0.25))
    assert audit.empirical_count == report.harvested_count > 0


def test_chain_audit_zero_count():
    report = verify_report(ResidueReport(p=10**6 + 33, case=Case.QUAD_1_MOD_4, epsilon=Fraction(1, 5),
                                         x_limit=16, q_bound=1, witnesses=(), window_high=1))
    audit = inequality_chain_audit(Case.QUAD_1_MOD_4, report.p, report.epsilon, report)
    assert audit.empirical_count == 0 and not audit.meets_threshold


def test_chain_audit_needs_verified_report():
    raw = ResidueReport(p=17, case=Case.QUAD_1_MOD_4, epsilon=Fraction(1, 4), x_limit=3, q_bound=17, witnesses=())
    with pytest.raises(IncompleteReport):
        inequality_chain_audit(Case.QUAD_1_MOD_4, 17, 0.25, raw)


def test_cubic_expression_branches():
    # the closing bound is taken from whichever of |L|, |M| is larger
    big_m = lower_bound_expression(Case.CUBIC, 10**30, 0.5, L=1, M=2)
    big_l = lower_bound_expression(Case.CUBIC, 10**30, 0.5, L=2, M=1)
    assert big_m > big_l
