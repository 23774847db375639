"""The six infinite tensor products of symmetric and exterior powers, once by
brute expansion of their characters and once as ratios of theta functions."""
from rigiditylab.char_series import (
    FamilyKind, RootData, ch_op, class_eval, identity_residual,
    phi_ch_series, theta_ratio_series, witten_product_series,
)

c, tau, K = 0.17 + 0.03j, 0.1 + 1.2j, 6

for fam in FamilyKind:
    r = identity_residual(fam, c, tau, K)
    print(f"{fam.value:16s} residual through q^{K // 2}: {r:.1e}")

# the first few coefficients of one of them, side by side
brute = witten_product_series(FamilyKind.LAMBDA_HALFPLUS, c, tau, 4)
closed = theta_ratio_series(FamilyKind.LAMBDA_HALFPLUS, c, tau, 4)
for k, (a, b) in enumerate(zip(brute.coeffs, closed.coeffs)):
    print(f"q^({k}/2): {complex(a):.10f}  {complex(b):.10f}")

# characters of S_t and Lambda_t on a rank-4 bundle with two root pairs
W = RootData((0.11, 0.23))
print("ch Lambda_t(W) at t = 0.4:", ch_op("Lambda", "+W", 0.4, W))
print("ch S_t(W) * ch Lambda_-t(W) should be 1:",
      ch_op("S", "+W", 0.4, W) * ch_op("Lambda", "+W", -0.4, W))

# characteristic classes evaluated on the roots
for kind in ("Ahat", "ch", "Euler", "p_total"):
    print(kind, class_eval(kind, W, 1))

# a twisted elliptic character, lambda = 2
series = phi_ch_series(2, RootData((0.11, 0.23)), RootData((0.05,)), tau, 4)
print("twisted character, first terms:", [f"{complex(x):.6f}" for x in series.coeffs])
