import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle_bruteforce as oracle
from rigiditylab.errors import FixtureError, PoleProximityError
from rigiditylab.exact_algebra import GaussRat, LaurentPolyZ, QSeries, RatFunZ
from rigiditylab.fixture_io import BUNDLED, bundled_fixture, fixture_to_dict
from rigiditylab.lefschetz_core import (
    FixedPointComponent,
    ManifoldFixture,
    anomaly_report,
    evaluate_qexpansion,
    kappa,
    lefschetz_eval,
    lefschetz_qexpansion,
    modular_image_residual,
    periodicity_residual,
    rigidity_check,
    tau_shift_prediction_residual,
    validate_fixture,
)

Z = LaurentPolyZ.z()
ZI = Z.inverse()
I = GaussRat(0, 1)
C = FixedPointComponent

S2 = bundled_fixture("s2")
ONEPOINT = bundled_fixture("onepoint")
ANOMALOUS = bundled_fixture("anomalous")
POINTS = [(0.23 + 0.05j, 1.1j), (0.41 - 0.02j, -0.3 + 0.8j), (0.137, 0.25 + 1.3j)]


def fixture(d, l, comps, name="x"):
    return validate_fixture(ManifoldFixture(name, d, l, tuple(comps)))


# --- validation --------------------------------------------------------------

def test_validate_examples():
    assert validate_fixture(S2) == S2
    with pytest.raises(FixtureError, match="zero tangent weight"):
        fixture(1, 0, [C((0,))])
    with pytest.raises(FixtureError, match="length mismatch"):
        fixture(1, 1, [C((1,), ())])
    with pytest.raises(FixtureError, match="empty name"):
        fixture(1, 0, [C((1,))], name=" ")
    with pytest.raises(FixtureError):
        fixture(1, 0, [C((1,), (), 2)])
    with pytest.raises(FixtureError):
        fixture(1, 0, [C((1.5,))])


# --- numerical evaluator -----------------------------------------------------

def test_empty_fixture_is_zero():
    f = fixture(2, 1, [])
    assert lefschetz_eval(1, f, 0.3, 1j) == 0
    assert all(c.is_zero() for c in lefschetz_qexpansion(1, f, 3).coeffs)


@pytest.mark.parametrize("weights", [(1,), (1, 2, 3), (2, -1, 5)])
def test_antipodal_pair_cancels_in_odd_dimension(weights):
    neg = tuple(-n for n in weights)
    f = fixture(len(weights), 0, [C(weights), C(neg)])
    for t, tau in POINTS:
        assert abs(lefschetz_eval(2, f, t, tau)) < 1e-10


def test_pole_proximity():
    with pytest.raises(PoleProximityError):
        lefschetz_eval(1, S2, 1.0, 1j)
    with pytest.raises(PoleProximityError):
        lefschetz_eval(1, bundled_fixture("s4"), 0.5, 1j)


@pytest.mark.parametrize("name", ["onepoint", "anomalous", "cp3"])
@pytest.mark.parametrize("lam", [1, 2, 3])
def test_matches_bruteforce_oracle(name, lam):
    f = bundled_fixture(name)
    doc = fixture_to_dict(f)
    for t, tau in POINTS:
        a = lefschetz_eval(lam, f, t, tau)
        b = oracle.lefschetz_bruteforce(lam, doc, t, tau)
        assert abs(a - b) < 1e-11 * (1 + abs(b))


def test_kappa():
    assert kappa(1, 3) == 8 and kappa(2, 3) == 1 and kappa(3, 0) == 1


# --- exact expansion ---------------------------------------------------------

def test_l0_fixtures_lambda_independent():
    for name in ("s2", "s6", "onepoint", "cp3"):
        f = bundled_fixture(name)
        series = [lefschetz_qexpansion(lam, f, 4) for lam in (1, 2, 3)]
        assert series[0].coeffs == series[1].coeffs == series[2].coeffs


def test_onepoint_order_zero_closed_form():
    expected = RatFunZ(2 * I * (Z + ZI + 4), Z - ZI)
    for lam in (1, 2, 3):
        assert lefschetz_qexpansion(lam, ONEPOINT, 0).coeffs[0] == expected
    f = fixture(1, 2, [C((1,), (0, 0))])
    assert lefschetz_qexpansion(1, f, 0).coeffs[0] == expected * 4


def test_s2_all_zero():
    s = lefschetz_qexpansion(2, S2, 12)
    assert all(c.is_zero() for c in s.coeffs)


@pytest.mark.parametrize("name", ["onepoint", "anomalous"])
@pytest.mark.parametrize("lam", [1, 2, 3])
def test_coefficients_match_oracle_dft(name, lam):
    f = bundled_fixture(name)
    K = 6
    series = lefschetz_qexpansion(lam, f, K)
    t = 0.29 + 0.04j
    z = cmath.exp(1j * math.pi * t)
    dft = oracle.coefficients(lam, fixture_to_dict(f), t, K)
    for k in range(K + 1):
        exact = series.coeffs[k].evaluate(z)
        assert abs(dft[k] - exact) < 1e-9 * (1 + abs(exact))


comp_st = st.tuples(
    st.lists(st.integers(-3, 3).filter(bool), min_size=2, max_size=2),
    st.lists(st.integers(-2, 2), min_size=1, max_size=1),
    st.sampled_from([1, -1]),
)


@given(st.lists(comp_st, min_size=1, max_size=3), st.integers(0, 2), st.integers(0, 1), st.sampled_from([1, 2, 3]))
def test_sign_weight_redundancy(comps, which, pos, lam):
    which %= len(comps)
    base = [C(tuple(tw), tuple(bw), s) for tw, bw, s in comps]
    tw, bw, s = comps[which]
    tw = list(tw)
    tw[pos] = -tw[pos]
    flipped = list(base)
    flipped[which] = C(tuple(tw), tuple(bw), -s)
    a = lefschetz_qexpansion(lam, fixture(2, 1, base), 3)
    b = lefschetz_qexpansion(lam, fixture(2, 1, flipped), 3)
    assert a.coeffs == b.coeffs


# --- verdicts ----------------------------------------------------------------

def test_rigidity_examples():
    zero = QSeries((RatFunZ(0),) * 3)
    rep = rigidity_check(zero)
    assert rep.all_constant and all(o.constant_value == 0 for o in rep.orders)
    rep = rigidity_check(lefschetz_qexpansion(3, S2, 4))
    assert rep.all_constant and all(o.constant_value == 0 and o.constant_is_integer for o in rep.orders)
    rep = rigidity_check(lefschetz_qexpansion(2, ONEPOINT, 2))
    assert not rep.orders[0].is_laurent and rep.orders[0].constant_value is None


def test_rigidity_anomalous_laurent_not_constant():
    rep = rigidity_check(lefschetz_qexpansion(2, ANOMALOUS, 4))
    assert rep.all_laurent and not rep.all_constant


def test_rigidity_report_invariants():
    for name in BUNDLED:
        rep = rigidity_check(lefschetz_qexpansion(1, bundled_fixture(name), 2))
        for o in rep.orders:
            assert (not o.is_constant) or o.is_laurent
            assert (o.constant_value is not None) == o.is_constant


def test_anomaly_examples():
    rep = anomaly_report(S2)
    assert rep.rigid_condition_met and rep.uniform_anomaly
    rep = anomaly_report(fixture(1, 2, [C((1,), (1, -1))]))
    assert rep.components[0].sum_m2 == 2 and not rep.rigid_condition_met
    rep = anomaly_report(fixture(1, 2, [C((1,), (1, -1)), C((-1,), (1, 1))]))
    assert rep.uniform_anomaly and not rep.rigid_condition_met
    rep = anomaly_report(ANOMALOUS)
    assert not rep.uniform_anomaly and [c.sum_m2 for c in rep.components] == [4, 0]


# --- periodicity and modularity ----------------------------------------------

@pytest.mark.parametrize("name", BUNDLED)
def test_periodicity(name):
    f = bundled_fixture(name)
    rigid = anomaly_report(f).rigid_condition_met
    for lam in (1, 2, 3):
        for t, tau in POINTS:
            r1, r2 = periodicity_residual(lam, f, t, tau, a=2)
            assert r1 < 1e-10
            if rigid:
                assert r2 < 1e-8
            assert tau_shift_prediction_residual(lam, f, t, tau) < 1e-8


def test_anomalous_tau_shift_is_large():
    r1, r2 = periodicity_residual(2, ANOMALOUS, 0.23 + 0.05j, -0.21 + 0.95j)
    assert r2 > 1e-3


def test_periodicity_requires_even_shift():
    with pytest.raises(Exception):
        periodicity_residual(1, S2, 0.2, 1j, a=1)


@pytest.mark.parametrize("name", BUNDLED)
def test_modular_images(name):
    f = bundled_fixture(name)
    for lam in (1, 2, 3):
        for t, tau in POINTS:
            assert modular_image_residual(lam, f, t, tau, "T") < 1e-10
            assert modular_image_residual(lam, f, t, tau, "S") < 1e-8


def test_s_law_kappa_ratio_with_trivial_bundle():
    # all bundle weights 0 but l > 0: L_1 = 2^l L_2 and the tau^d law links them
    f = bundled_fixture("s2xs2")
    t, tau = 0.23 + 0.05j, 0.2 + 1.1j
    l1 = lefschetz_eval(1, f, t / tau, -1 / tau)
    l2 = lefschetz_eval(2, f, t, tau)
    assert abs(l1 - tau**2 * 4 * l2) < 1e-8 * (1 + abs(l1))


def test_cross_backend_s2():
    K = 12
    t, tau = 0.23, 1.1j
    s = lefschetz_qexpansion(2, S2, K)
    exact = evaluate_qexpansion(s, t, tau)
    numeric = lefschetz_eval(2, S2, t, tau)
    assert abs(exact - numeric) <= 2 * abs(cmath.exp(2j * math.pi * tau)) ** ((K + 1) / 2) * (1 + abs(numeric))
