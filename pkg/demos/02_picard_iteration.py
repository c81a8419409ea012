"""Fixed-point iteration: geometric vs sublinear decay, certified bounds."""
import gmetric as gm
from gmetric import catalog

absmax = catalog.space_absmax()

print("=" * 64)
print("PICARD ITERATION")
print("=" * 64)

# A linear contraction converges geometrically and admits an a-priori bound.
halving = catalog.get_map("scale-0.5", absmax)
cert = gm.solve_picard(absmax, halving, 1.0, eps_stop=1e-6, max_iter=1000,
                       certified_q=0.5)
print(f"\nT x = x/2 from x0 = 1:")
print(f"  candidate   {cert.candidate:.3e}")
print(f"  iterations  {cert.iterations}")
print(f"  class       {cert.convergence_class}")
print(f"  bound       {cert.apriori_bound:.3e}  (residual {cert.residual:.3e})")

n_needed = gm.iterations_needed(0.5, cert.initial_gap, 1e-9)
print(f"  iterations for a 1e-9 guarantee: {n_needed}")

# The reciprocal map T x = x/(x+1) reaches 0 only at rate 1/n; the solver
# distinguishes that from geometric decay instead of assuming it.
moebius = catalog.get_map("moebius", absmax)
cert = gm.solve_picard(absmax, moebius, 1.0, eps_stop=1e-10, max_iter=200_000)
print(f"\nT x = x/(x+1) from x0 = 1:")
print(f"  candidate   {cert.candidate:.3e}")
print(f"  iterations  {cert.iterations}")
print(f"  class       {cert.convergence_class}")

tr = gm.orbit(absmax, moebius, 1.0, 10)
print(f"  first iterates: {[round(p, 4) for p in tr.points[:6]]}  (closed form 1/(1+n))")

# Cluster detection and the sampled continuity probe on the same orbit.
tr = gm.orbit(absmax, moebius, 1.0, 400)
u = gm.detect_cluster_point(absmax, tr, tol=1e-2, min_hits=5)
print(f"\n  earliest cluster point with 5 hits at tol 1e-2: {u:.4f}")
probe = gm.probe_orbital_continuity(absmax, moebius, tr, 0.0, tol=1e-3)
print(f"  orbital continuity at 0: {probe.status} ({probe.note})")
probe = gm.probe_injectivity(moebius, [0.0, 0.5, 1.0, 2.0, 5.0])
print(f"  injectivity on a sample: {probe.status} ({probe.note})")
