import cmath
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from rigiditylab.errors import DomainError, PrefactorMismatch
from rigiditylab.exact_algebra import (
    GaussRat,
    LaurentPolyZ,
    QSeries,
    RatFunZ,
    laurent_arith,
    poly_from_ints,
    qseries_arith,
    qseries_inverse,
    ratfun_normalize,
    scalar_arith,
)

I = GaussRat(0, 1)
Z = LaurentPolyZ.z()
ZI = Z.inverse()

small = st.integers(-6, 6)
rats = st.builds(Fraction, small, st.integers(1, 5))
gauss = st.builds(GaussRat, rats, rats)
laurent = st.dictionaries(st.integers(-3, 3), st.builds(GaussRat, small, small), max_size=4).map(LaurentPolyZ)
nonzero_laurent = laurent.filter(lambda p: not p.is_zero())
int_series = st.lists(small, min_size=1, max_size=6).map(lambda c: QSeries(tuple(c)))


# --- scalars -----------------------------------------------------------------

def test_scalar_examples():
    assert scalar_arith(GaussRat(Fraction(1, 2), 1), GaussRat(Fraction(1, 2), -1), "add") == 1
    assert scalar_arith(I, I, "mul") == -1
    assert scalar_arith(GaussRat(1, 1), GaussRat(1, -1), "div") == I


def test_scalar_division_by_zero():
    with pytest.raises(DomainError):
        scalar_arith(1, 0, "div")


def test_gaussrat_lowest_terms_and_text():
    x = GaussRat(Fraction(2, 4), Fraction(-3, 6))
    assert x.re == Fraction(1, 2) and x.re.denominator == 2
    assert str(GaussRat(1, -1)) == "1-i"
    assert GaussRat(3).is_integer() and not GaussRat(0, 1).is_integer()


@given(gauss, gauss, gauss)
def test_gaussrat_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(gauss)
def test_gaussrat_inverse(a):
    assume(a)
    assert a * a.inverse() == 1


# --- Laurent polynomials -----------------------------------------------------

def test_laurent_examples():
    assert laurent_arith(Z - ZI, Z + ZI, "mul") == Z**2 - ZI**2
    p = Z + 1
    assert laurent_arith(p, -p, "add").is_zero()
    assert laurent_arith(Z + 1, LaurentPolyZ.zero(), "mul").is_zero()


def test_laurent_degrees_and_text():
    p = poly_from_ints([1, 0, -1, 2], lo=-1)
    assert p.min_degree == -1 and p.max_degree == 2
    assert 0 not in p.exponents()
    assert (2 * I * Z**2 - Z + Fraction(1, 2) + ZI).to_text() == "2i*z^2-z+1/2+z^-1"


def test_laurent_big_integers():
    p = (Z + 1) ** 80
    assert p.coeff(40) == 107507208733336176461620  # binomial(80, 40)


@given(laurent, laurent, laurent)
def test_laurent_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(laurent)
def test_laurent_no_stored_zeros(p):
    assert all(c for _, c in p.items())


# --- rational functions ------------------------------------------------------

def test_ratfun_examples():
    r = ratfun_normalize(Z - ZI, Z - ZI)
    assert r.is_laurent() and r == RatFunZ(1)
    r = ratfun_normalize(Z**2 - 1, Z)
    assert r.is_laurent() and r.num == Z - ZI
    r = ratfun_normalize(LaurentPolyZ.one(), Z - ZI)
    assert not r.is_laurent()
    assert r.den.min_degree == 0 and r.den.constant_term() == 1


def test_ratfun_zero_denominator():
    with pytest.raises(DomainError):
        ratfun_normalize(Z, LaurentPolyZ.zero())


@given(nonzero_laurent, nonzero_laurent)
def test_ratfun_idempotent(n, d):
    r = RatFunZ(n, d)
    assert RatFunZ(r.num, r.den) == r
    assert r.den.min_degree == 0 and r.den.constant_term() == 1


@given(nonzero_laurent, nonzero_laurent, nonzero_laurent)
def test_ratfun_common_factor_cancels(n, d, k):
    assert RatFunZ(n * k, d * k) == RatFunZ(n, d)


@given(nonzero_laurent, nonzero_laurent, st.integers(0, 10_000))
def test_ratfun_evaluation_matches_canonical(n, d, seed):
    rng = random.Random(seed)
    r = RatFunZ(n, d)
    checked = 0
    while checked < 20:
        z = cmath.exp(2j * cmath.pi * rng.random())
        dv = d.evaluate(z)
        if abs(dv) < 1e-6 or abs(r.den.evaluate(z)) < 1e-6:
            continue
        direct = n.evaluate(z) / dv
        assert abs(direct - r.evaluate(z)) <= 1e-12 * max(1.0, abs(direct))
        checked += 1


@given(nonzero_laurent, nonzero_laurent, nonzero_laurent, nonzero_laurent)
def test_ratfun_field_operations(a, b, c, d):
    x, y = RatFunZ(a, b), RatFunZ(c, d)
    assert x * y == y * x
    assert x + y == y + x
    assert (x * y) / y == x
    assert (x + y) - y == x


# --- q-series ----------------------------------------------------------------

def test_qseries_examples():
    a = QSeries((1, 0, -1, 0, 0))
    b = QSeries((1, 0, 1, 0, 1))
    assert (a * b).coeffs == (1, 0, 0, 0, 0)
    s = QSeries((1, 2, 3))
    assert s * QSeries((1, 0, 0)) == s
    assert (QSeries((1,), 1) * QSeries((1,), 3)).prefactor_eighths == 4


def test_qseries_add_misaligned_prefactor():
    with pytest.raises(PrefactorMismatch):
        qseries_arith(QSeries((1,), 1), QSeries((1,), 0), "add")


def test_qseries_truncation_is_min():
    assert (QSeries((1, 1, 1)) * QSeries((1, 1))).order == 1
    assert (QSeries((1, 1, 1)) + QSeries((1,))).order == 0


def test_qseries_inverse_examples():
    assert qseries_inverse(QSeries((1, 0, -1, 0, 0)), 4).coeffs == (1, 0, 1, 0, 1)
    assert qseries_inverse(QSeries((1,)), 0).coeffs == (1,)
    assert qseries_inverse(QSeries((1, -1, 0)), 2).coeffs == (1, 1, 1)
    assert qseries_inverse(QSeries((1, 0), 3)).prefactor_eighths == -3


def test_qseries_inverse_not_invertible():
    with pytest.raises(DomainError):
        qseries_inverse(QSeries((0, 1)))
    with pytest.raises(DomainError):
        qseries_inverse(QSeries((Z - ZI, Z)))


@given(int_series, int_series, int_series)
def test_qseries_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(st.lists(small, min_size=1, max_size=7).filter(lambda c: c[0] != 0))
def test_qseries_inverse_round_trip(coeffs):
    a = QSeries(tuple(Fraction(c) for c in coeffs))
    prod = a * qseries_inverse(a)
    assert prod.coeffs[0] == 1
    assert all(c == 0 for c in prod.coeffs[1:])


def test_qseries_inverse_laurent_coefficients():
    a = QSeries((LaurentPolyZ.one(), Z + ZI, Z**2))
    prod = a * a.inverse()
    assert prod.coeffs[0].is_one() and all(c.is_zero() for c in prod.coeffs[1:])


def test_qseries_evaluate():
    s = QSeries((1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1))
    tau = 0.7j
    qh = cmath.exp(1j * cmath.pi * tau)
    assert abs(s.evaluate(tau) - (1 - qh**21) / (1 - qh)) < 1e-14
