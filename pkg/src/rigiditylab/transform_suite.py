"""Translation and modular transformation laws of the theta functions as
residual-returning checks, the SL2(Z) action on C x H, Bezout completion and
the candidate pole lattice of the local factors.

The SL2(Z) action is the left action
``[a b; c d] . (v, tau) = (v / (c tau + d), (a tau + b) / (c tau + d))``,
so ``(g @ h) . p == g . (h . p)``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DomainError
from .theta_engine import DEFAULT_EPS, ModuliPoint, ThetaKind, check_tau, theta_eval, theta_prime0


@dataclass(frozen=True)
class SL2Z:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError(f"det [{self.a} {self.b}; {self.c} {self.d}] != 1")

    def __matmul__(self, other: "SL2Z") -> "SL2Z":
        return SL2Z(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "SL2Z":
        return SL2Z(self.d, -self.b, -self.c, self.a)


IDENTITY = SL2Z(1, 0, 0, 1)
S = SL2Z(0, -1, 1, 0)
T = SL2Z(1, 1, 0, 1)


def modular_act(g: SL2Z, p: ModuliPoint) -> ModuliPoint:
    j = g.c * p.tau + g.d
    return ModuliPoint(p.v / j, (g.a * p.tau + g.b) / j)


# ---------------------------------------------------------------------------
# translations

_BY_ONE_SIGN = {ThetaKind.THETA: -1, ThetaKind.THETA1: -1, ThetaKind.THETA2: 1, ThetaKind.THETA3: 1}


def translation_multiplier(kind: ThetaKind, v: complex, tau: complex, shift: str) -> complex:
    """m with theta_kind(v + 1) = m theta_kind(v) or theta_kind(v + tau) = m theta_kind(v)."""
    if shift == "by_one":
        return _BY_ONE_SIGN[kind]
    if shift == "by_tau":
        return lattice_shift_factor(kind, 1, v, tau)
    raise DomainError(f"shift must be 'by_one' or 'by_tau', got {shift!r}")


def translation_residual(kind: ThetaKind, v: complex, tau: complex, shift: str,
                         eps: float = DEFAULT_EPS) -> float:
    check_tau(tau)
    base = theta_eval(kind, v, tau, eps)
    moved = theta_eval(kind, v + (1 if shift == "by_one" else tau), tau, eps)
    m = translation_multiplier(kind, v, tau, shift)
    return abs(moved - m * base) / (1 + abs(base))


def lattice_shift_factor(kind: ThetaKind, k: int, v: complex, tau: complex) -> complex:
    """m with theta_kind(v + k tau) = m theta_kind(v); the sign (-1)^k appears
    for theta and theta2 only."""
    sign = (-1) ** (k % 2) if kind in (ThetaKind.THETA, ThetaKind.THETA2) else 1
    return sign * cmath.exp(-2j * math.pi * k * (v + k * tau / 2))


def lattice_shift_residual(kind: ThetaKind, k: int, v: complex, tau: complex,
                           eps: float = DEFAULT_EPS) -> float:
    base = theta_eval(kind, v, tau, eps)
    moved = theta_eval(kind, v + k * tau, tau, eps)
    m = lattice_shift_factor(kind, k, v, tau)
    return abs(moved - m * base) / (abs(m) * (1 + abs(base)))


# ---------------------------------------------------------------------------
# modular table

_S_PARTNER = {ThetaKind.THETA: ThetaKind.THETA, ThetaKind.THETA1: ThetaKind.THETA2,
              ThetaKind.THETA2: ThetaKind.THETA1, ThetaKind.THETA3: ThetaKind.THETA3}
_T_PARTNER = {ThetaKind.THETA: ThetaKind.THETA, ThetaKind.THETA1: ThetaKind.THETA1,
              ThetaKind.THETA2: ThetaKind.THETA3, ThetaKind.THETA3: ThetaKind.THETA2}
_EIGHTH_ROOT = cmath.exp(1j * math.pi / 4)


def modular_residual(kind: ThetaKind, v: complex, tau: complex, g: str,
                     derivative: bool = False, eps: float = DEFAULT_EPS) -> float:
    """Normalized residual |lhs - rhs| / (1 + |rhs|) of one row of the S/T
    table.  With ``derivative=True`` the theta'(0, tau) row is checked and
    ``kind``/``v`` are ignored.  Square roots use the principal branch; tau/i
    has positive real part on H."""
    check_tau(tau)
    root = cmath.sqrt(tau / 1j)
    if derivative:
        if g == "S":
            lhs = theta_prime0(-1 / tau, eps)
            rhs = (tau / 1j) * root * theta_prime0(tau, eps)
        elif g == "T":
            lhs = theta_prime0(tau + 1, eps)
            rhs = _EIGHTH_ROOT * theta_prime0(tau, eps)
        else:
            raise DomainError(f"g must be 'S' or 'T', got {g!r}")
        return abs(lhs - rhs) / (1 + abs(rhs))
    if g == "S":
        lhs = theta_eval(kind, v / tau, -1 / tau, eps)
        pref = root * cmath.exp(1j * math.pi * v * v / tau)
        if kind is ThetaKind.THETA:
            pref /= 1j
        rhs = pref * theta_eval(_S_PARTNER[kind], v, tau, eps)
    elif g == "T":
        lhs = theta_eval(kind, v, tau + 1, eps)
        pref = _EIGHTH_ROOT if kind in (ThetaKind.THETA, ThetaKind.THETA1) else 1
        rhs = pref * theta_eval(_T_PARTNER[kind], v, tau, eps)
    else:
        raise DomainError(f"g must be 'S' or 'T', got {g!r}")
    return abs(lhs - rhs) / (1 + abs(rhs))


# ---------------------------------------------------------------------------
# Bezout completion and pole lattice


def _ext_gcd(x: int, y: int) -> tuple[int, int, int]:
    """(g, s, t) with s x + t y = g = gcd(x, y) >= 0."""
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def bezout_complete(c: int, d: int) -> SL2Z:
    """[a b; c d] in SL2(Z) with the smallest |a|, then the smallest |b|,
    then a >= 0."""
    g, s, t = _ext_gcd(d, -c)  # s d - t c = g, i.e. a = s, b = t
    if g != 1:
        raise DomainError(f"gcd({c}, {d}) = {g}, not 1")
    a0, b0 = s, t
    # all solutions: a = a0 + k c, b = b0 + k d
    if c == 0:
        # d = +-1 forces a = d; minimize |b| over b0 + k d
        ks = [-b0 * d]
    else:
        k0 = -a0 / c
        ks = [math.floor(k0) + j for j in (-1, 0, 1, 2)]
    best = min(
        ((a0 + k * c, b0 + k * d) for k in ks),
        key=lambda ab: (abs(ab[0]), abs(ab[1]), ab[0] < 0),
    )
    return SL2Z(best[0], best[1], c, d)


@dataclass(frozen=True)
class PoleLattice:
    """Candidate poles t in the union over n of (1/n)(Z + tau Z)."""

    denominators: frozenset

    def lattice_coordinates(self, t: complex, tau: complex, n: int) -> tuple[float, float]:
        """(j, k) with n t = j + k tau."""
        x = n * complex(t)
        k = x.imag / tau.imag
        j = x.real - k * tau.real
        return j, k

    def distance(self, t: complex, tau: complex) -> float:
        """Distance of n t to the nearest point of Z + tau Z, minimized over n."""
        best = math.inf
        for n in self.denominators:
            j, k = self.lattice_coordinates(t, tau, n)
            for kk in (math.floor(k), math.ceil(k)):
                for jj in (math.floor(j + (k - kk) * tau.real), math.ceil(j + (k - kk) * tau.real)):
                    best = min(best, abs(n * t - (jj + kk * tau)))
        return best

    def contains(self, t: complex, tau: complex, tol: float = 1e-9) -> bool:
        return self.distance(t, tau) < tol

    def points(self, tau: complex, n: int, j_range: Iterable[int], k_range: Iterable[int]) -> list[complex]:
        if n not in self.denominators:
            raise DomainError(f"{n} is not a denominator of this lattice")
        return [(j + k * tau) / n for k in k_range for j in j_range]


def pole_lattice(weights: Iterable[int]) -> PoleLattice:
    ws = list(weights)
    if any(w == 0 for w in ws):
        raise DomainError("zero weight")
    return PoleLattice(frozenset(abs(int(w)) for w in ws))


# ---------------------------------------------------------------------------
# seeded residual suites


def _sample_point(rng: np.random.Generator) -> tuple[complex, complex]:
    v = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    tau = complex(rng.uniform(-1, 1), rng.uniform(0.5, 2))
    return v, tau


def translation_suite(samples: int, seed: int = 0) -> float:
    """Max residual over seeded (kind, v, tau, shift) samples, including the
    general lattice shifts k = -3..3."""
    rng = np.random.default_rng(seed)
    kinds = list(ThetaKind)
    worst = 0.0
    for _ in range(samples):
        kind = kinds[rng.integers(4)]
        v, tau = _sample_point(rng)
        shift = ("by_one", "by_tau")[rng.integers(2)]
        worst = max(worst, translation_residual(kind, v, tau, shift))
        k = int(rng.integers(-3, 4))
        worst = max(worst, lattice_shift_residual(kind, k, v, tau))
    return worst


def modular_suite(samples: int, seed: int = 0) -> float:
    """Max residual over seeded samples; sample i checks row i mod 10 of the
    S/T table (four theta rows and the theta' row, each under S and T)."""
    rng = np.random.default_rng(seed)
    kinds = list(ThetaKind)
    worst = 0.0
    for i in range(samples):
        v, tau = _sample_point(rng)
        g = ("S", "T")[i % 2]
        row = (i // 2) % 5
        if row == 4:
            r = modular_residual(ThetaKind.THETA, 0, tau, g, derivative=True)
        else:
            r = modular_residual(kinds[row], v, tau, g)
        worst = max(worst, r)
    return worst


def jacobi_residual(tau: complex, eps: float = DEFAULT_EPS) -> float:
    """|theta'(0) - pi theta1 theta2 theta3 (0)| / |theta'(0)|."""
    tp = theta_prime0(tau, eps)
    prod = math.pi
    for kind in (ThetaKind.THETA1, ThetaKind.THETA2, ThetaKind.THETA3):
        prod *= theta_eval(kind, 0, tau, eps)
    return abs(tp - prod) / abs(tp)


def jacobi_suite(samples: int, seed: int = 0) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        tau = complex(rng.uniform(-1, 1), rng.uniform(0.2, 2.5))
        worst = max(worst, jacobi_residual(tau))
    return worst
