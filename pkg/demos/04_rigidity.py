"""Exact rigidity: the q-expansion of the Lefschetz number of every bundled
fixture, order by order, with a numerical cross-check."""
from rigiditylab import (
    bundled_fixture, lefschetz_eval, lefschetz_qexpansion, rigidity_check,
)
from rigiditylab.fixture_io import BUNDLED
from rigiditylab.lefschetz_core import evaluate_qexpansion

K = 4
for name in BUNDLED:
    f = bundled_fixture(name)
    for lam in (1, 2, 3):
        rep = rigidity_check(lefschetz_qexpansion(lam, f, K))
        consts = [str(o.constant_value) if o.is_constant else "~" for o in rep.orders]
        print(f"{name:10s} lambda={lam} rigid={rep.all_constant!s:5s} coefficients: {' '.join(consts)}")

# the one-point fixture is not a manifold: its coefficients depend on t
f = bundled_fixture("onepoint")
series = lefschetz_qexpansion(2, f, 2)
for k, c in enumerate(series.coeffs):
    print(f"onepoint q^({k}/2):", c.to_text())

# the exact expansion against the numerical theta products
t, tau = 0.21 + 0.02j, 0.1 + 1.4j
for name in ("s4", "onepoint"):
    f = bundled_fixture(name)
    exact = evaluate_qexpansion(lefschetz_qexpansion(2, f, 16), t, tau)
    numeric = lefschetz_eval(2, f, t, tau)
    print(f"{name}: series {exact:.12f}  product {numeric:.12f}")
