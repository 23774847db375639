"""Exact arithmetic: Gaussian rationals, Laurent polynomials in z = e^(pi i t)
and truncated q-series whose coefficients live in those rings."""
import cmath
import math
from fractions import Fraction

from rigiditylab import GaussRat, LaurentPolyZ, QSeries, RatFunZ, ThetaKind
from rigiditylab.theta_engine import bundle_factor, local_factor, theta_qseries

half_i = GaussRat(0, Fraction(1, 2))
print("(i/2)^2 =", half_i * half_i, "  (1+2i)(3-i) =", GaussRat(1, 2) * GaussRat(3, -1))

# z + 1/z is 2 cos(pi t)
cos2 = LaurentPolyZ({1: 1, -1: 1})
print("(z + 1/z)^2 =", (cos2 * cos2).to_text())

# rational functions are kept in lowest terms
f = RatFunZ(LaurentPolyZ({2: 1, 0: -1}), LaurentPolyZ({1: 1, 0: -1}))
print("(z^2 - 1)/(z - 1) =", f.to_text(), " laurent?", f.is_laurent())

# theta2(0) = 1 - 2 q^(1/2) + 2 q^2 - ...
s = theta_qseries(ThetaKind.THETA2, 0, 8)
print("theta2(0):", [c.to_text() for c in s.coeffs])

# a power series with unit constant term has an inverse
inv = s.inverse()
print("theta2(0) * 1/theta2(0):", [c.to_text() for c in (s * inv).coeffs])

# the tangent local factor at weight 1, three orders
F = local_factor(2, 1, 2)
for k, c in enumerate(F.coeffs):
    print(f"F_2(1) q^({k}/2):", c.to_text())

# the bundle factor theta1(2t)/theta1(0)
G = bundle_factor(1, 2, 2)
print("G_1(2):", [c.to_text() for c in G.coeffs])
# coefficients are functions of z = e^(pi i t)
z = cmath.exp(1j * math.pi * 0.1)
print("G_1(2) at t = 0.1, tau = 1.3i:", G.evaluate(1.3j, lambda c: c(z)))
