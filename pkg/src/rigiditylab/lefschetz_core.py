"""Lefschetz numbers L_lambda(t, tau) of the twisted Dirac operators on
Phi_lambda for S^1-actions with isolated fixed points.

For fixed-point data (tangent weights n_i, bundle weights m_j, sign eps)::

    L_lambda = kappa_lambda * sum_alpha eps_alpha
               * (sum_{mu=1..3} prod_i F_mu(n_i)) * prod_j G_lambda(m_j)

with kappa_1 = 2^l, kappa_2 = kappa_3 = 1,
F_mu(n) = (2/pi) theta'(0) theta_mu(nt) / (theta(nt) theta_mu(0)) and
G_lambda(m) = theta_lambda(mt) / theta_lambda(0).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import DomainError, FixtureError, PoleProximityError
from .exact_algebra import GaussRat, LaurentPolyZ, QSeries, RatFunZ
from .theta_engine import (
    DEFAULT_EPS,
    ThetaKind,
    bundle_factor_series,
    check_tau,
    local_factor_parts,
    theta_eval,
    theta_prime0,
)

POLE_THRESHOLD = 1e-13

# partner of lambda under S and under T
S_PARTNER = {1: 2, 2: 1, 3: 3}
T_PARTNER = {1: 1, 2: 3, 3: 2}


@dataclass(frozen=True)
class FixedPointComponent:
    tangent_weights: tuple[int, ...]
    bundle_weights: tuple[int, ...] = ()
    sign: int = 1


@dataclass(frozen=True)
class ManifoldFixture:
    name: str
    d: int
    l: int
    components: tuple[FixedPointComponent, ...]
    comment: str = ""


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FixtureError(f"{what} must be an integer, got {x!r}")
    return x


def validate_fixture(f: ManifoldFixture) -> ManifoldFixture:
    """Check all fixture invariants and return a normalized copy."""
    if not isinstance(f.name, str) or not f.name.strip():
        raise FixtureError("empty name")
    d = _int(f.d, "d")
    l = _int(f.l, "l")
    if d <= 0:
        raise FixtureError(f"d must be positive, got {d}")
    if l < 0:
        raise FixtureError(f"l must be nonnegative, got {l}")
    comps = []
    for idx, c in enumerate(f.components):
        tw = tuple(_int(n, "tangent weight") for n in c.tangent_weights)
        bw = tuple(_int(m, "bundle weight") for m in c.bundle_weights)
        if len(tw) != d:
            raise FixtureError(f"component {idx}: length mismatch, {len(tw)} tangent weights for d = {d}")
        if len(bw) != l:
            raise FixtureError(f"component {idx}: length mismatch, {len(bw)} bundle weights for l = {l}")
        if any(n == 0 for n in tw):
            raise FixtureError(f"component {idx}: zero tangent weight")
        sign = _int(c.sign, "sign")
        if sign not in (1, -1):
            raise FixtureError(f"component {idx}: sign must be +1 or -1, got {sign}")
        comps.append(FixedPointComponent(tw, bw, sign))
    return ManifoldFixture(f.name, d, l, tuple(comps), f.comment)


def kappa(lam: int, l: int) -> int:
    if lam not in (1, 2, 3):
        raise DomainError(f"lambda must be 1, 2 or 3, got {lam}")
    return 2**l if lam == 1 else 1


# ---------------------------------------------------------------------------
# numerical evaluator


class _ThetaCache:
    """Per-point cache of theta values at multiples of t."""

    def __init__(self, t: complex, tau: complex, eps: float):
        check_tau(tau)
        self.t, self.tau, self.eps = complex(t), complex(tau), eps
        self.prime = theta_prime0(tau, eps)
        self.zero = {mu: theta_eval(ThetaKind.from_index(mu), 0, tau, eps) for mu in (1, 2, 3)}
        self._vals: dict[tuple[int, int], complex] = {}

    def theta(self, mu: int, n: int) -> complex:
        key = (mu, n)
        if key not in self._vals:
            self._vals[key] = theta_eval(ThetaKind.from_index(mu), n * self.t, self.tau, self.eps)
        return self._vals[key]

    def local(self, mu: int, n: int) -> complex:
        den = self.theta(0, n)
        if abs(den) < POLE_THRESHOLD:
            raise PoleProximityError(f"theta({n}t, tau) = {abs(den):.2e} at t = {self.t}, tau = {self.tau}")
        return (2 / math.pi) * self.prime * self.theta(mu, n) / (den * self.zero[mu])

    def bundle(self, lam: int, m: int) -> complex:
        return self.theta(lam, m) / self.zero[lam]


def component_terms(lam: int, f: ManifoldFixture, t: complex, tau: complex,
                    eps: float = DEFAULT_EPS) -> list[complex]:
    """The per-fixed-point summands of L_lambda (kappa and sign included)."""
    k = kappa(lam, f.l)
    cache = _ThetaCache(t, tau, eps)
    out = []
    for c in f.components:
        mu_sum = 0j
        for mu in (1, 2, 3):
            p = 1 + 0j
            for n in c.tangent_weights:
                p *= cache.local(mu, n)
            mu_sum += p
        g = 1 + 0j
        for m in c.bundle_weights:
            g *= cache.bundle(lam, m)
        out.append(k * c.sign * mu_sum * g)
    return out


def lefschetz_eval(lam: int, f: ManifoldFixture, t: complex, tau: complex,
                   eps: float = DEFAULT_EPS) -> complex:
    """L_lambda(t, tau) in floating point; raises PoleProximityError near a pole."""
    return sum(component_terms(lam, f, t, tau, eps), 0j)


# ---------------------------------------------------------------------------
# exact q-expansion


@lru_cache(maxsize=None)
def _tangent_sum(weights: tuple[int, ...], order: int) -> QSeries:
    """sum_mu prod_i P_mu(|n_i|), the numerator of sum_mu prod_i F_mu(|n_i|)."""
    total = None
    for mu in (1, 2, 3):
        prod = None
        for n in weights:
            P, _ = local_factor_parts(mu, n, order)
            prod = P if prod is None else prod * P
        total = prod if total is None else total + prod
    return total


@lru_cache(maxsize=None)
def _delta_product(weights: tuple[int, ...]) -> LaurentPolyZ:
    out = LaurentPolyZ.one()
    for n in weights:
        _, delta = local_factor_parts(1, n, 0)
        out = out * delta
    return out


def lefschetz_qexpansion(lam: int, f: ManifoldFixture, order: int) -> QSeries:
    """Exact series sum_k b_k(z) q^(k/2) with canonical ``RatFunZ`` b_k."""
    if order < 0:
        raise DomainError("order must be nonnegative")
    k = kappa(lam, f.l)
    zero = LaurentPolyZ()
    # group components by the multiset of |n_i|; F_mu(-n) = -F_mu(n)
    groups: dict[tuple[int, ...], list] = {}
    for c in f.components:
        key = tuple(sorted(abs(n) for n in c.tangent_weights))
        sign = c.sign
        for n in c.tangent_weights:
            if n < 0:
                sign = -sign
        num = _tangent_sum(key, order)
        for m in c.bundle_weights:
            num = num * bundle_factor_series(lam, m, order)
        num = num * (k * sign)
        acc = groups.get(key)
        groups[key] = num if acc is None else acc + num
    coeffs = [RatFunZ() for _ in range(order + 1)]
    for key, num in groups.items():
        delta = _delta_product(key)
        for i, x in enumerate(num.coeffs):
            if x:
                coeffs[i] = coeffs[i] + RatFunZ(x, delta)
    return QSeries(tuple(coeffs))


def evaluate_qexpansion(series: QSeries, t: complex, tau: complex) -> complex:
    """Sum an exact series at z = exp(pi i t), q = exp(2 pi i tau)."""
    z = cmath.exp(1j * math.pi * t)
    return series.evaluate(tau, lambda c: c.evaluate(z))


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class OrderVerdict:
    k: int
    coefficient: RatFunZ
    is_laurent: bool
    is_constant: bool
    constant_value: GaussRat | None
    constant_is_integer: bool


@dataclass(frozen=True)
class RigidityReport:
    orders: tuple[OrderVerdict, ...]

    @property
    def all_constant(self) -> bool:
        return all(o.is_constant for o in self.orders)

    @property
    def all_laurent(self) -> bool:
        return all(o.is_laurent for o in self.orders)


def rigidity_check(series: QSeries) -> RigidityReport:
    orders = []
    for k, c in enumerate(series.coeffs):
        c = RatFunZ._coerce(c)
        value = c.constant_value()
        orders.append(OrderVerdict(
            k=k,
            coefficient=c,
            is_laurent=c.is_laurent(),
            is_constant=c.is_constant(),
            constant_value=value,
            constant_is_integer=value is not None and value.is_integer(),
        ))
    return RigidityReport(tuple(orders))


@dataclass(frozen=True)
class ComponentAnomaly:
    sum_m2: int
    sum_mb: int = 0  # Chern roots b_j vanish at isolated fixed points


@dataclass(frozen=True)
class AnomalyReport:
    components: tuple[ComponentAnomaly, ...]
    rigid_condition_met: bool
    uniform_anomaly: bool


def anomaly_report(f: ManifoldFixture) -> AnomalyReport:
    comps = tuple(ComponentAnomaly(sum(m * m for m in c.bundle_weights)) for c in f.components)
    values = {c.sum_m2 for c in comps}
    return AnomalyReport(
        components=comps,
        rigid_condition_met=all(c.sum_m2 == 0 for c in comps),
        uniform_anomaly=len(values) <= 1,
    )


# ---------------------------------------------------------------------------
# periodicity and modularity residuals


def _check_even(a: int) -> None:
    if isinstance(a, bool) or not isinstance(a, int) or a % 2:
        raise DomainError(f"shift must be an even integer, got {a!r}")


def periodicity_residual(lam: int, f: ManifoldFixture, t: complex, tau: complex,
                         a: int = 2) -> tuple[float, float]:
    """(|L(t+a) - L(t)|, |L(t+a tau) - L(t)|) for even ``a``."""
    _check_even(a)
    base = lefschetz_eval(lam, f, t, tau)
    r1 = abs(lefschetz_eval(lam, f, t + a, tau) - base)
    r2 = abs(lefschetz_eval(lam, f, t + a * tau, tau) - base)
    return r1, r2


def tau_shift_factors(f: ManifoldFixture, t: complex, tau: complex, a: int) -> list[complex]:
    """Per-component multiplier of L under t -> t + a tau.

    Each G_lambda(m) gains exp(-2 pi i a m^2 (t + a tau / 2)); the tangent
    factors are invariant.
    """
    _check_even(a)
    return [
        cmath.exp(-2j * math.pi * a * sum(m * m for m in c.bundle_weights) * (t + a * tau / 2))
        for c in f.components
    ]


def tau_shift_prediction_residual(lam: int, f: ManifoldFixture, t: complex, tau: complex,
                                  a: int = 2) -> float:
    """|L(t + a tau) - sum_alpha factor_alpha * term_alpha(t)| / (1 + sum |terms|)."""
    terms = component_terms(lam, f, t, tau)
    factors = tau_shift_factors(f, t, tau, a)
    predicted = sum((x * y for x, y in zip(terms, factors)), 0j)
    actual = lefschetz_eval(lam, f, t + a * tau, tau)
    scale = 1 + sum(abs(x * y) for x, y in zip(terms, factors))
    return abs(actual - predicted) / scale


def s_anomaly_factors(f: ManifoldFixture, t: complex, tau: complex) -> list[complex]:
    """Per-component factor exp(i pi t^2 sum_j m_j^2 / tau) picked up under S."""
    return [cmath.exp(1j * math.pi * t * t * sum(m * m for m in c.bundle_weights) / tau)
            for c in f.components]


def modular_image_residual(lam: int, f: ManifoldFixture, t: complex, tau: complex,
                           g: str) -> float:
    """Residual of the S or T transformation law of L_lambda.

    T: L_lambda(t, tau + 1) against L_lambda'(t, tau), lambda' = 1, 3, 2.
    S: L_lambda(t/tau, -1/tau) against
       tau^d (kappa_lambda / kappa_lambda') sum_alpha a_alpha term_lambda'(alpha)
       with lambda' = 2, 1, 3 and a_alpha the per-component anomaly factor.
    Normalized by 1 + sum of |predicted component terms|.
    """
    check_tau(tau)
    if g == "T":
        lhs = lefschetz_eval(lam, f, t, tau + 1)
        terms = component_terms(T_PARTNER[lam], f, t, tau)
    elif g == "S":
        lam2 = S_PARTNER[lam]
        lhs = lefschetz_eval(lam, f, t / tau, -1 / tau)
        ratio = kappa(lam, f.l) / kappa(lam2, f.l)
        pref = tau**f.d * ratio
        terms = [pref * a * x for a, x in zip(s_anomaly_factors(f, t, tau),
                                               component_terms(lam2, f, t, tau))]
    else:
        raise DomainError(f"g must be 'S' or 'T', got {g!r}")
    rhs = sum(terms, 0j)
    return abs(lhs - rhs) / (1 + sum(abs(x) for x in terms))
