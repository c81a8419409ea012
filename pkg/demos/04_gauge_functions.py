"""Gauge admissibility: the diagonal dichotomy g(t) < t <=> iterates vanish."""
import gmetric as gm
from gmetric import catalog

print("=" * 64)
print("GAUGE ADMISSIBILITY")
print("=" * 64)

GRID = [1e-3, 0.1, 1.0, 10.0, 1e3]

for name in ("ratio1", "half", "linear-0.9", "identity-diag"):
    gauge = catalog.get_gauge(name)
    rep = gm.check_gauge_admissible(gauge, GRID, n_max=500, thresh=1e-8)
    print(f"\n{name}:")
    print(f"  monotone         {rep.monotone.status}")
    print(f"  diagonal g(t)<t  {rep.diagonal_strict.status}")
    print(f"  iterates vanish  {rep.iterates_vanish.status}")
    print(f"  usc (heuristic)  {rep.usc_heuristic.status}")
    print(f"  views agree      {rep.equivalence_consistent}")
    for t, info in rep.details["iterates"].items():
        hit = info["hit_iteration"]
        state = f"hits 1e-8 at n={hit}" if hit else (
            "stalled" if info["stalled"] else f"still descending (value {info['final']:.3e})")
        print(f"    t={t:<8g} {state}")

# The reciprocal gauge iterates in closed form: g^n(t) = t / (1 + n t).
gauge = catalog.get_gauge("ratio1")
t = 1.0
v = t
print("\nratio1 iterates from t=1 against the closed form:")
for n in range(1, 6):
    v = gauge.diagonal(v)
    print(f"  n={n}: {v:.6f}  vs  {t / (1 + n * t):.6f}")
