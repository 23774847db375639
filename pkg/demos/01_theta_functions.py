"""A tour of the four theta functions: evaluation, the Jacobi identity and
their behaviour under lattice shifts and the S/T generators of SL2(Z)."""
import numpy as np

from rigiditylab import ThetaKind, theta_eval, theta_prime0
from rigiditylab.transform_suite import (
    S, T, bezout_complete, jacobi_residual, lattice_shift_residual,
    modular_residual, pole_lattice, translation_residual,
)

v, tau = 0.3 + 0.1j, -0.2 + 1.1j

# values at one point
for kind in ThetaKind:
    print(f"{kind.value:3s}({v}, {tau}) = {theta_eval(kind, v, tau):.12f}")
print("theta'(0) =", theta_prime0(tau))

# theta'(0) = pi theta1(0) theta2(0) theta3(0)
print("Jacobi identity residual:", jacobi_residual(tau))

# quasi-periodicity: shifting by 1 only flips signs, shifting by tau
# multiplies by an exponential factor
for kind in ThetaKind:
    print(kind.value,
          "by 1: %.1e" % translation_residual(kind, v, tau, "by_one"),
          "by tau: %.1e" % translation_residual(kind, v, tau, "by_tau"),
          "by 3 tau: %.1e" % lattice_shift_residual(kind, 3, v, tau))

# S swaps theta1 and theta2, T swaps theta2 and theta3
for g in ("S", "T"):
    worst = max(modular_residual(k, v, tau, g) for k in ThetaKind)
    print(g, "table residual %.1e" % worst,
          "theta' row %.1e" % modular_residual(ThetaKind.THETA, 0, tau, g, derivative=True))

# a general element of SL2(Z) from its bottom row
g = bezout_complete(5, 7)
print("completion of (5, 7):", g, " composed with S then T:", T @ S @ g)

# the local factors can only have poles on (1/n)(Z + tau Z)
lat = pole_lattice([1, 2, 3])
print("distance of 0.5 + 0.5 tau to the lattice:", lat.distance(0.5 + 0.5 * tau, tau))
print("distance of 0.1 + 0.07i:", lat.distance(0.1 + 0.07j, tau))

# the product converges fast: compare a few truncations
for terms in (1, 2, 4, 8):
    err = abs(theta_eval(ThetaKind.THETA3, v, tau, terms=terms) - theta_eval(ThetaKind.THETA3, v, tau))
    print(f"{terms} product terms: error {err:.1e}")
print("log10 |q| =", np.log10(abs(np.exp(2j * np.pi * tau))))
