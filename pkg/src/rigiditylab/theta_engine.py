"""Jacobi theta functions from their product formulas.

Conventions, with ``q = exp(2 pi i tau)`` and ``w = exp(2 pi i v)``::

    theta (v) = c q^(1/8) 2 sin(pi v) prod_r (1 - q^r w)(1 - q^r / w)
    theta1(v) = c q^(1/8) 2 cos(pi v) prod_r (1 + q^r w)(1 + q^r / w)
    theta2(v) = c prod_r (1 - q^(r-1/2) w)(1 - q^(r-1/2) / w)
    theta3(v) = c prod_r (1 + q^(r-1/2) w)(1 + q^(r-1/2) / w)
    c = prod_r (1 - q^r),   theta'(0) = 2 pi q^(1/8) prod_r (1 - q^r)^3

Two backends are provided.  ``theta_eval``/``theta_prime0`` are floating
point.  ``theta_qseries``, ``local_factor`` and ``bundle_factor`` are exact
truncated expansions for first arguments ``n*t``, with coefficients Laurent
in ``z = exp(pi i t)`` so that ``2 sin(pi n t) = -i (z^n - z^-n)`` and
``2 cos(pi n t) = z^n + z^-n``.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError
from .exact_algebra import GaussRat, LaurentPolyZ, QSeries, RatFunZ

DEFAULT_EPS = 1e-16
MAX_TERMS = 100_000


class ThetaKind(enum.Enum):
    THETA = "t"
    THETA1 = "t1"
    THETA2 = "t2"
    THETA3 = "t3"

    @classmethod
    def from_index(cls, mu: int) -> "ThetaKind":
        """0 -> theta, 1 -> theta1, 2 -> theta2, 3 -> theta3."""
        return (cls.THETA, cls.THETA1, cls.THETA2, cls.THETA3)[mu]

    @property
    def index(self) -> int:
        return ("t", "t1", "t2", "t3").index(self.value)

    @property
    def half_integral(self) -> bool:
        """Products run over q^(r-1/2) rather than q^r."""
        return self in (ThetaKind.THETA2, ThetaKind.THETA3)

    @property
    def minus(self) -> bool:
        """Product factors are (1 - ...) rather than (1 + ...)."""
        return self in (ThetaKind.THETA, ThetaKind.THETA2)


@dataclass(frozen=True)
class ModuliPoint:
    v: complex
    tau: complex

    def __post_init__(self):
        object.__setattr__(self, "v", complex(self.v))
        object.__setattr__(self, "tau", complex(self.tau))
        check_tau(self.tau)


def check_tau(tau: complex) -> None:
    if not complex(tau).imag > 0:
        raise DomainError("tau not in upper half-plane")


# ---------------------------------------------------------------------------
# numerical backend


def truncation_index(v: complex, tau: complex, eps: float = DEFAULT_EPS) -> int:
    """Smallest R with |q|^R max(|w|, 1/|w|) < eps/8 and a geometric tail
    bound sum_{r>R} |q|^r (|w| + 1/|w|) < eps/4."""
    check_tau(tau)
    if eps <= 0:
        raise DomainError("eps must be positive")
    aq = math.exp(-2 * math.pi * complex(tau).imag)
    lw = 2 * math.pi * abs(complex(v).imag)  # log max(|w|, 1/|w|)
    big = math.exp(lw)
    for R in range(1, MAX_TERMS):
        head = R * math.log(aq) + lw
        if head < math.log(eps / 8):
            tail = aq ** (R + 1) / (1 - aq) * (big + 1 / big)
            if tail < eps / 4:
                return R
    raise DomainError("tau too close to the real axis for the product expansion")


def _product(kind: ThetaKind, v: complex, tau: complex, R: int) -> complex:
    # every q^r w^(+-1) is one exp of its exponent: repeated multiplication
    # would accumulate r rounding errors, which matters when |w| is large
    sign = -1 if kind.minus else 1
    off = 0.5 if kind.half_integral else 0.0
    a = 2j * math.pi * v
    c = 1 + 0j
    prod = 1 + 0j
    for r in range(1, R + 1):
        c *= 1 - cmath.exp(2j * math.pi * r * tau)
        e = 2j * math.pi * (r - off) * tau
        prod *= (1 + sign * cmath.exp(e + a)) * (1 + sign * cmath.exp(e - a))
    if kind is ThetaKind.THETA:
        lead = cmath.exp(1j * math.pi * tau / 4) * 2 * cmath.sin(math.pi * v)
    elif kind is ThetaKind.THETA1:
        lead = cmath.exp(1j * math.pi * tau / 4) * 2 * cmath.cos(math.pi * v)
    else:
        lead = 1
    return c * lead * prod


def theta_eval(kind: ThetaKind, v: complex, tau: complex, eps: float = DEFAULT_EPS,
               terms: int | None = None) -> complex:
    """theta_kind(v, tau) by the truncated product.

    ``terms`` overrides the truncation index chosen from ``eps``.
    """
    check_tau(tau)
    R = truncation_index(v, tau, eps) if terms is None else terms
    return _product(kind, complex(v), complex(tau), R)


def theta_prime0(tau: complex, eps: float = DEFAULT_EPS, terms: int | None = None) -> complex:
    """d/dv theta(v, tau) at v = 0."""
    check_tau(tau)
    R = truncation_index(0, tau, eps) if terms is None else terms
    q = cmath.exp(2j * math.pi * tau)
    prod = 1 + 0j
    qn = 1 + 0j
    for _ in range(R):
        qn *= q
        prod *= 1 - qn
    return 2 * math.pi * cmath.exp(1j * math.pi * tau / 4) * prod**3


# ---------------------------------------------------------------------------
# exact backend

_I = GaussRat(0, 1)


def _mul_sparse(coeffs: list, k: int, c: LaurentPolyZ) -> None:
    """In place: series *= (1 + c q^(k/2))."""
    for n in range(len(coeffs) - 1, k - 1, -1):
        prev = coeffs[n - k]
        if prev:
            coeffs[n] = coeffs[n] + prev * c


@lru_cache(maxsize=None)
def _dedekind_c(order: int) -> QSeries:
    """c = prod_r (1 - q^r) to q-index ``order``."""
    coeffs = [LaurentPolyZ.one()] + [LaurentPolyZ()] * order
    minus_one = LaurentPolyZ.constant(-1)
    for r in range(1, order // 2 + 1):
        _mul_sparse(coeffs, 2 * r, minus_one)
    return QSeries(tuple(coeffs))


@lru_cache(maxsize=None)
def theta_parts(kind: ThetaKind, weight: int, order: int) -> tuple[int, LaurentPolyZ, QSeries]:
    """Split theta_kind(weight*t) into (prefactor eighths, trig factor, tail).

    The tail includes the constant ``c`` and has q^0 coefficient 1.
    """
    n = int(weight)
    if kind is ThetaKind.THETA:
        trig = LaurentPolyZ({n: -_I, -n: _I}) if n else LaurentPolyZ()
    elif kind is ThetaKind.THETA1:
        trig = LaurentPolyZ({n: 1, -n: 1}) if n else LaurentPolyZ.constant(2)
    else:
        trig = LaurentPolyZ.one()
    eighths = 1 if kind in (ThetaKind.THETA, ThetaKind.THETA1) else 0

    coeffs = list(_dedekind_c(order).coeffs)
    sign = -1 if kind.minus else 1
    up = LaurentPolyZ.monomial(2 * n, sign)
    down = LaurentPolyZ.monomial(-2 * n, sign)
    r = 1
    while True:
        k = 2 * r - 1 if kind.half_integral else 2 * r
        if k > order:
            break
        _mul_sparse(coeffs, k, up)
        _mul_sparse(coeffs, k, down)
        r += 1
    return eighths, trig, QSeries(tuple(coeffs))


def theta_qseries(kind: ThetaKind, weight: int, order: int) -> QSeries:
    """Exact expansion of theta_kind(weight*t, tau) through q^(order/2)."""
    if order < 0:
        raise DomainError("order must be nonnegative")
    eighths, trig, tail = theta_parts(kind, int(weight), order)
    return QSeries(tuple(trig * c for c in tail.coeffs), eighths)


@lru_cache(maxsize=None)
def local_factor_parts(mu: int, n: int, order: int) -> tuple[QSeries, LaurentPolyZ]:
    """F_mu(n) = (2/pi) theta'(0) theta_mu(nt) / (theta(nt) theta_mu(0)) as
    (Laurent-coefficient series P, denominator delta) with F = P / delta.

    delta = -i (z^n - z^-n).  The 2 pi of theta'(0) is cancelled against 2/pi,
    leaving the rational factor 4.
    """
    if mu not in (1, 2, 3):
        raise DomainError(f"mu must be 1, 2 or 3, got {mu}")
    if n == 0:
        raise DomainError("theta(0*t) vanishes identically; tangent weight must be nonzero")
    if order < 0:
        raise DomainError("order must be nonnegative")
    kind = ThetaKind.from_index(mu)
    e_t, trig_t, tail_t = theta_parts(ThetaKind.THETA, n, order)
    e_n, trig_n, tail_n = theta_parts(kind, n, order)
    e_0, trig_0, tail_0 = theta_parts(kind, 0, order)
    # theta'(0) carries q^(1/8); numerator q^(1/8 + e_n), denominator q^(e_t + e_0)
    assert 1 + e_n - e_t - e_0 == 0, "q^(1/8) prefactors failed to cancel"
    c = _dedekind_c(order)
    c3 = c * c * c
    scalar = trig_n * 4 / trig_0.constant_term()
    P = c3 * tail_n * (tail_t * tail_0).inverse()
    P = QSeries(tuple(scalar * x for x in P.coeffs))
    return P, trig_t


def local_factor(mu: int, n: int, order: int) -> QSeries:
    """Exact F_mu(n) as a series of canonical rational functions."""
    P, delta = local_factor_parts(mu, n, order)
    return QSeries(tuple(RatFunZ(x, delta) for x in P.coeffs))


@lru_cache(maxsize=None)
def bundle_factor_series(lam: int, m: int, order: int) -> QSeries:
    """G_lambda(m) = theta_lambda(mt) / theta_lambda(0), Laurent coefficients."""
    if lam not in (1, 2, 3):
        raise DomainError(f"lambda must be 1, 2 or 3, got {lam}")
    if order < 0:
        raise DomainError("order must be nonnegative")
    kind = ThetaKind.from_index(lam)
    e_m, trig_m, tail_m = theta_parts(kind, m, order)
    e_0, trig_0, tail_0 = theta_parts(kind, 0, order)
    assert e_m == e_0, "q^(1/8) prefactors failed to cancel"
    scalar = trig_m / trig_0.constant_term()
    G = tail_m * tail_0.inverse()
    return QSeries(tuple(scalar * x for x in G.coeffs))


def bundle_factor(lam: int, m: int, order: int) -> QSeries:
    """Exact G_lambda(m) as a series of canonical rational functions."""
    return bundle_factor_series(lam, m, order).map(RatFunZ)
