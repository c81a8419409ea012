"""Certifying contractive conditions on sampled triples.

The reciprocal map T x = x/(x+1) is the instructive case: it satisfies the
gauge-majorant condition with h(t1,t2,t3) = t1/(t1+1) everywhere, yet no
fixed ratio q < 1 works for the strict q-majorant condition, because the
contraction factor 1/((1+x)(1+y)) creeps up to 1 near the origin.
"""
import gmetric as gm
from gmetric import catalog, sampling

absmax = catalog.space_absmax()
moebius = catalog.get_map("moebius", absmax)

print("=" * 64)
print("CONDITION CERTIFICATES")
print("=" * 64)

# Gauge condition: holds on every sampled triple.
spec = gm.ConditionSpec(id="C-GAUGE", h=catalog.get_gauge("ratio1"))
stream = sampling.triple_stream(absmax, seed=0, lo=0.0, hi=100.0)
cert = gm.certify_on_samples(absmax, moebius, spec, stream, 10_000)
print(f"\ngauge condition, 10^4 triples in [0,100]^3:")
print(f"  holds={cert.holds} fails={cert.fails} vacuous={cert.vacuous}")

# Strict q-condition: fails for every q < 1; witnesses sit near the origin.
print("\nstrict q-condition witnesses (x below 1/q - 1 violates):")
for q in (0.5, 0.9, 0.99):
    spec = gm.ConditionSpec(id="C-Q", q=q)
    x = (1.0 / q - 1.0) * 0.9
    v = gm.eval_condition(absmax, moebius, spec, 0.0, x, x)
    print(f"  q={q}: triple (0, {x:.4f}, {x:.4f}) -> {v.status} "
          f"(lhs={v.lhs:.5f}, rhs={v.rhs:.5f})")

# A genuine linear contraction passes the q-condition comfortably.
halving = catalog.get_map("scale-0.5", absmax)
spec = gm.ConditionSpec(id="C-Q", q=0.6)
stream = sampling.triple_stream(absmax, seed=0, lo=0.0, hi=100.0)
cert = gm.certify_on_samples(absmax, halving, spec, stream, 5_000)
print(f"\nT x = x/2 under q=0.6: holds={cert.holds} fails={cert.fails}")

# Extension conditions and their per-step contraction factors.
out = gm.eval_extension(absmax, halving, 1.0, 2.0, 3.0, alpha=2.0, beta=0.6,
                        delta=0.5)
print("\nextension conditions on the triple (1, 2, 3) for T x = x/2:")
for label, verdict in (("(i)", out.i), ("(ii)", out.ii), ("(iii)", out.iii)):
    print(f"  {label:5s} {verdict.status:13s} lhs={verdict.lhs:.3f} rhs={verdict.rhs:.3f}")
for mode in ("paper", "sound"):
    fr = gm.contraction_factor(2.0, 0.6, 0.5, mode)
    print(f"  {mode} combination: lambda={fr.lam:.3f} admissible={fr.admissible}")
fr = gm.contraction_factor(2.0, 0.8, 0.5, "sound")
print(f"  beta=0.8 makes the middle factor {fr.factors['ii']:.2f} -> "
      f"admissible={fr.admissible}")

# Uniqueness separations around the fixed point 0.
rep = gm.check_uniqueness_conditions(absmax, halving, 0.0, [1.0, 2.0, 5.0])
print(f"\nuniqueness separations for T x = x/2 at 0: "
      f"(v)={rep.v.status} (vi)={rep.vi.status} on {rep.checked} points")
