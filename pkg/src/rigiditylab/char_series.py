"""Chern-character calculus in complex floating point.

Bundles are described by formal Chern roots ``+-2 pi i c`` (``RootData``).
Two independent routes produce the q-series of the infinite tensor products
of symmetric and exterior power operations:

* ``witten_product_series`` multiplies the characters of the individual
  factors ``S_t`` / ``Lambda_t`` for ``t = +-q^r`` or ``+-q^(r-1/2)``;
* ``theta_ratio_series`` expands the matching quotient of theta products.

Their agreement is the identity check run by ``chseries_suite``.  The theta
products here are expanded independently of ``theta_engine``.

Series are ``QSeries`` with complex coefficients on the half-integer grid
(index k is the coefficient of q^(k/2)).  The coefficients are formal in q;
``tau`` only selects the point used by ``QSeries.evaluate``.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError
from .exact_algebra import QSeries
from .theta_engine import check_tau

TWO_PI_I = 2j * math.pi


@dataclass(frozen=True)
class RootData:
    """Complexification of a real rank-2l bundle with Chern roots +-2 pi i c_i
    and S^1 weights m_i."""

    roots: tuple
    weights: tuple = field(default=())

    def __post_init__(self):
        roots = tuple(complex(c) for c in self.roots)
        weights = tuple(int(m) for m in self.weights) if self.weights else (0,) * len(roots)
        if len(weights) != len(roots):
            raise DomainError("length mismatch between roots and weights")
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "weights", weights)

    @property
    def rank_half(self) -> int:
        return len(self.roots)

    def exponentials(self) -> list[complex]:
        """e^(xi) for every Chern root xi of the complexification."""
        out = []
        for c in self.roots:
            x = cmath.exp(TWO_PI_I * c)
            out += [x, 1 / x]
        return out


def _as_roots(c) -> RootData:
    if isinstance(c, RootData):
        return c
    if isinstance(c, (int, float, complex)):
        return RootData((c,))
    return RootData(tuple(c))


class FamilyKind(enum.Enum):
    S_INT = "S_int"              # tensor over r of S_{q^r}
    LAMBDA_INT = "Lambda_int"    # tensor over r of Lambda_{q^r}
    S_HALFPLUS = "S_halfplus"    # tensor over r of S_{q^(r-1/2)}
    S_HALFMINUS = "S_halfminus"  # tensor over r of S_{-q^(r-1/2)}
    LAMBDA_HALFPLUS = "Lambda_halfplus"
    LAMBDA_HALFMINUS = "Lambda_halfminus"

    @property
    def symmetric(self) -> bool:
        return self in (FamilyKind.S_INT, FamilyKind.S_HALFPLUS, FamilyKind.S_HALFMINUS)

    @property
    def half(self) -> bool:
        return self not in (FamilyKind.S_INT, FamilyKind.LAMBDA_INT)

    @property
    def t_sign(self) -> int:
        return -1 if self in (FamilyKind.S_HALFMINUS, FamilyKind.LAMBDA_HALFMINUS) else 1


# ---------------------------------------------------------------------------
# characters of S_t and Lambda_t

POLE_TOL = 1e-14


def ch_op(kind: str, bundle: str, t: complex, roots: RootData | int) -> complex:
    """Character of ``S_t`` or ``Lambda_t`` applied to ``+W``, ``-W`` or the
    trivial bundle of rank N (pass N as ``roots``), or to the reduced bundle
    ``W - dim W`` (``bundle='reduced'``)."""
    if kind not in ("S", "Lambda"):
        raise DomainError(f"kind must be 'S' or 'Lambda', got {kind!r}")
    if bundle == "trivial":
        N = int(roots)
        if kind == "S":
            if abs(1 - t) < POLE_TOL:
                raise DomainError("pole of S_t at t = 1")
            return (1 - t) ** (-N)
        return (1 + t) ** N
    if bundle not in ("+W", "-W", "reduced"):
        raise DomainError(f"bundle must be '+W', '-W', 'reduced' or 'trivial', got {bundle!r}")
    rd = _as_roots(roots)
    val = 1 + 0j
    for x in rd.exponentials():
        f = 1 - t * x if kind == "S" else 1 + t * x
        if kind == "S" and bundle != "-W" and abs(f) < POLE_TOL:
            raise DomainError("pole of S_t at t e^xi = 1")
        if kind == "Lambda" and bundle == "-W" and abs(f) < POLE_TOL:
            raise DomainError("pole of Lambda_t(-W) at t e^xi = -1")
        if kind == "S":
            val = val * f if bundle == "-W" else val / f
        else:
            val = val / f if bundle == "-W" else val * f
    if bundle == "reduced":
        val *= ch_op(kind, "trivial", t, -2 * rd.rank_half)
    return val


# ---------------------------------------------------------------------------
# numeric series helpers (numpy arrays indexed by half-integer q-power)


def _series_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.convolve(a, b)[: len(a)]


def _series_inv(a: np.ndarray) -> np.ndarray:
    if abs(a[0]) == 0:
        raise DomainError("series with vanishing leading coefficient is not invertible")
    out = np.zeros_like(a)
    out[0] = 1 / a[0]
    for n in range(1, len(a)):
        out[n] = -np.dot(a[1 : n + 1], out[n - 1 :: -1][:n]) / a[0]
    return out


def _to_qseries(a: np.ndarray) -> QSeries:
    return QSeries(tuple(complex(x) for x in a))


def _power_factor(poly_t: np.ndarray, step: int, sign: int, K: int) -> np.ndarray:
    """Substitute t = sign q^(step/2) into a polynomial in t, truncated at K."""
    out = np.zeros(K + 1, dtype=complex)
    for j, coeff in enumerate(poly_t):
        if j * step > K:
            break
        out[j * step] += coeff * sign**j
    return out


def _single_operation(kind_symmetric: bool, exps: Sequence[complex], deg: int) -> np.ndarray:
    """Polynomial in t (through degree deg) of ch(S_t W~) or ch(Lambda_t W~)
    for a bundle W with root exponentials ``exps``; W~ = W - rank W."""
    poly = np.zeros(deg + 1, dtype=complex)
    poly[0] = 1
    for x in exps:
        if kind_symmetric:
            geo = x ** np.arange(deg + 1)  # 1/(1 - t x)
            poly = np.convolve(poly, geo)[: deg + 1]
            poly = np.convolve(poly, [1, -1])[: deg + 1]  # (1 - t) per trivial line
        else:
            poly = np.convolve(poly, [1, x])[: deg + 1]
            alt = (-1.0) ** np.arange(deg + 1)  # 1/(1 + t)
            poly = np.convolve(poly, alt)[: deg + 1]
    return poly


def witten_product_series(family: FamilyKind, c, tau: complex, K: int) -> QSeries:
    """Character of the infinite tensor product of ``family`` applied to
    W~, by multiplying the individual factors through q^(K/2)."""
    check_tau(tau)
    if K < 0:
        raise DomainError("order must be nonnegative")
    exps = _as_roots(c).exponentials()
    series = np.zeros(K + 1, dtype=complex)
    series[0] = 1
    r = 1
    while True:
        step = 2 * r - 1 if family.half else 2 * r
        if step > K:
            break
        poly = _single_operation(family.symmetric, exps, K // step)
        series = _series_mul(series, _power_factor(poly, step, family.t_sign, K))
        r += 1
    return _to_qseries(series)


# ---------------------------------------------------------------------------
# theta closed forms, with the q^(1/8) prefactors removed


def _theta_tail(kind: str, c: complex, K: int) -> np.ndarray:
    """prod over r of the theta-product factors of theta_kind(c) (without the
    leading trigonometric factor, q^(1/8) and the constant prod(1 - q^r))."""
    w = cmath.exp(TWO_PI_I * c)
    sign = -1 if kind in ("t", "t2") else 1
    half = kind in ("t2", "t3")
    out = np.zeros(K + 1, dtype=complex)
    out[0] = 1
    r = 1
    while True:
        step = 2 * r - 1 if half else 2 * r
        if step > K:
            break
        for y in (w, 1 / w):
            fac = np.zeros(K + 1, dtype=complex)
            fac[0] = 1
            fac[step] = sign * y
            out = _series_mul(out, fac)
        r += 1
    return out


def _euler_const(K: int) -> np.ndarray:
    out = np.zeros(K + 1, dtype=complex)
    out[0] = 1
    for r in range(1, K // 2 + 1):
        fac = np.zeros(K + 1, dtype=complex)
        fac[0] = 1
        fac[2 * r] = -1
        out = _series_mul(out, fac)
    return out


def theta_series(kind: str, c: complex, K: int) -> np.ndarray:
    """theta_kind(c, tau) / q^(1/8 or 0) as a numeric series in q^(1/2)."""
    lead = {"t": 2 * cmath.sin(math.pi * c), "t1": 2 * cmath.cos(math.pi * c)}.get(kind, 1)
    return lead * _series_mul(_euler_const(K), _theta_tail(kind, c, K))


def theta_prime_series(K: int) -> np.ndarray:
    """theta'(0, tau) / q^(1/8) as a numeric series."""
    c = _euler_const(K)
    return 2 * math.pi * _series_mul(_series_mul(c, c), c)


def _ratio_one_root(family: FamilyKind, c: complex, K: int) -> np.ndarray:
    if family is FamilyKind.S_INT:
        num = cmath.sin(math.pi * c) / math.pi * theta_prime_series(K)
        return _series_mul(num, _series_inv(theta_series("t", c, K)))
    if family is FamilyKind.LAMBDA_INT:
        ratio = _series_mul(theta_series("t1", c, K), _series_inv(theta_series("t1", 0, K)))
        return ratio / cmath.cos(math.pi * c)
    kind = "t2" if family in (FamilyKind.S_HALFPLUS, FamilyKind.LAMBDA_HALFMINUS) else "t3"
    at_c, at_0 = theta_series(kind, c, K), theta_series(kind, 0, K)
    if family.symmetric:
        return _series_mul(at_0, _series_inv(at_c))
    return _series_mul(at_c, _series_inv(at_0))


def theta_ratio_series(family: FamilyKind, c, tau: complex, K: int) -> QSeries:
    """The theta-quotient closed form for ``family``, as a numeric series."""
    check_tau(tau)
    if K < 0:
        raise DomainError("order must be nonnegative")
    out = np.zeros(K + 1, dtype=complex)
    out[0] = 1
    for root in _as_roots(c).roots:
        out = _series_mul(out, _ratio_one_root(family, root, K))
    return _to_qseries(out)


def identity_residual(family: FamilyKind, c, tau: complex, K: int) -> float:
    a = witten_product_series(family, c, tau, K)
    b = theta_ratio_series(family, c, tau, K)
    return a.max_abs_diff(b)


# ---------------------------------------------------------------------------
# spinor bundle, the bundles Phi_lambda and equivariant classes


def spinor_ch(roots: RootData) -> complex:
    val = 1 + 0j
    for c in roots.roots:
        val *= cmath.exp(1j * math.pi * c) + cmath.exp(-1j * math.pi * c)
    return val


_BUNDLE_FAMILY = {2: FamilyKind.LAMBDA_HALFMINUS, 3: FamilyKind.LAMBDA_HALFPLUS}


def _phi0(tangent: RootData, K: int) -> np.ndarray:
    """ch(Phi_0) as a sum over mu of products over the tangent roots of
    2 (sin(pi c)/pi) theta'(0)/theta(c) times theta_mu(c)/theta_mu(0)."""
    total = np.zeros(K + 1, dtype=complex)
    for mu in (1, 2, 3):
        term = np.zeros(K + 1, dtype=complex)
        term[0] = 1
        for c in tangent.roots:
            sym = 2 * _ratio_one_root(FamilyKind.S_INT, c, K)
            if mu == 1:
                ext = cmath.cos(math.pi * c) * _ratio_one_root(FamilyKind.LAMBDA_INT, c, K)
            else:
                ext = _ratio_one_root(_BUNDLE_FAMILY[mu], c, K)
            term = _series_mul(term, _series_mul(sym, ext))
        total += term
    return total


def phi_ch_series(lam: int, tangent: RootData, bundle: RootData, tau: complex, K: int) -> QSeries:
    """ch(Phi_lambda) for lambda in {0, 1, 2, 3} as a numeric q-series; the
    lambda = 1 bundle factor carries the 2^l of the spinor bundle of V."""
    check_tau(tau)
    if lam not in (0, 1, 2, 3):
        raise DomainError(f"lambda must be 0, 1, 2 or 3, got {lam}")
    out = _phi0(tangent, K)
    if lam == 0:
        return _to_qseries(out)
    for b in bundle.roots:
        if lam == 1:
            fac = 2 * cmath.cos(math.pi * b) * _ratio_one_root(FamilyKind.LAMBDA_INT, b, K)
        else:
            fac = _ratio_one_root(_BUNDLE_FAMILY[lam], b, K)
        out = _series_mul(out, fac)
    return _to_qseries(out)


def _ahat_g(z: complex) -> complex:
    """(z/2) / sinh(z/2), with its Maclaurin series near 0."""
    if abs(z) < 1e-4:
        return 1 - z * z / 24 + 7 * z**4 / 5760
    return (z / 2) / cmath.sinh(z / 2)


def class_eval(kind: str, roots: RootData, w_value: complex) -> complex:
    """Equivariant A-hat, Chern character, Euler or total Pontryagin class
    evaluated at xi_i = 2 pi i c_i and w = w_value."""
    shifted = [TWO_PI_I * c + m * w_value for c, m in zip(roots.roots, roots.weights)]
    if kind == "Ahat":
        return complex(np.prod([_ahat_g(x) for x in shifted])) if shifted else 1 + 0j
    if kind == "ch":
        return sum((2 * cmath.cosh(x) for x in shifted), 0j)
    if kind == "Euler":
        return complex(np.prod(shifted)) if shifted else 1 + 0j
    if kind == "p_total":
        return complex(np.prod([1 + x * x for x in shifted])) if shifted else 1 + 0j
    raise DomainError(f"unknown class {kind!r}")


def p1_coefficients(bundle: RootData) -> tuple[complex, int]:
    """(sum m_j b_j, sum m_j^2): the w and w^2 coefficients of the
    equivariant first Pontryagin class beyond its base term."""
    sum_mb = sum((m * b for b, m in zip(bundle.roots, bundle.weights)), 0j)
    sum_m2 = sum(m * m for m in bundle.weights)
    return sum_mb, sum_m2


# ---------------------------------------------------------------------------
# seeded identity suite


def chseries_suite(samples: int, seed: int = 0, K: int = 6) -> float:
    """Max identity residual over every family at seeded (c, tau) with
    |c| <= 0.3 and Im tau >= 0.8."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        radius = 0.3 * math.sqrt(rng.uniform())
        c = radius * cmath.exp(TWO_PI_I * rng.uniform())
        tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 2.0))
        for fam in FamilyKind:
            worst = max(worst, identity_residual(fam, c, tau, K))
    return worst
