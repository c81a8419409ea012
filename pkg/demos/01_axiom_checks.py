"""Checking the ternary-distance axioms on healthy and broken spaces."""
from fractions import Fraction

import gmetric as gm
from gmetric import catalog

print("=" * 64)
print("AXIOM CHECKS")
print("=" * 64)

# The built-in real-line space: G(x,y,z) = max pairwise |difference|.
absmax = catalog.space_absmax()
report = gm.check_axioms(absmax, catalog.standard_sample(absmax))
print("\nabsmax on its standard sample:")
for axiom, verdict in report.verdicts.items():
    print(f"  {axiom:9s} {verdict.status}")

# A deliberately broken function that ignores its third argument.
drop_z = catalog.space_drop_z()
report = gm.check_axioms(drop_z, catalog.standard_sample(drop_z))
print("\ndrop-z (ignores its third argument):")
for axiom, verdict in report.verdicts.items():
    extra = ""
    if verdict.witness is not None:
        extra = f"  witness={verdict.witness} values={verdict.values}"
    print(f"  {axiom:9s} {verdict.status}{extra}")

# Exact finite spaces built from a rational metric: every triple and
# quadruple is checked, with no floating point involved.
metric = gm.FiniteMetric.from_rows([
    [Fraction(0), Fraction(1), Fraction("3/2")],
    [Fraction(1), Fraction(0), Fraction(2)],
    [Fraction("3/2"), Fraction(2), Fraction(0)],
])
for construction in ("max", "perimeter"):
    sp = gm.build_gmetric(metric, construction)
    rep = gm.exhaustive_axiom_check(sp)
    print(f"\n{construction} construction from a 3-point rational metric: "
          f"{'all PASS' if rep.all_pass() else 'FAIL'} "
          f"({rep.sample_size} triples, {rep.quadruple_count} quadruples)")

# The induced ordinary metric d(x,y) = G(x,y,y) + G(x,x,y).
print("\ninduced metric on absmax:")
for x, y in [(1, 2), (0, 3.7), (5, 5)]:
    print(f"  d({x}, {y}) = {gm.derived_metric(absmax, x, y)}")
