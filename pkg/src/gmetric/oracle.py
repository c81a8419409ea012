"""Exact exhaustive verification on small finite spaces.

Builds ternary distances from finite rational metrics (max-of-pairs and
perimeter constructions), enumerates all self-maps of a small carrier,
and brute-force checks each fixed-point theorem's hypothesis-implies-
conclusion statement with rational arithmetic end to end.  No floating
point enters this module; every comparison is exact.

Theorem identifiers accepted by :func:`exhaustive_theorem_check`:

  THM-2.2   strict q-majorant condition (q < 1) + injectivity; every
            orbit must converge to a fixed point, unique when the weight
            satisfies the reciprocal bound.
  THM-2.5   the same majorant condition with q = 1 + injectivity; every
            orbit cluster point must be a fixed point the orbit settles on.
  THM-2.10  gauge-majorant condition + injectivity; same conclusion as
            THM-2.2.
  THM-2.12  the extension conditions (i)/(ii)/(iii) quantified over
            orbit-set triples; every orbit must reach a fixed point.

On a finite carrier every map is orbitally continuous and every orbit is
eventually periodic, so those hypotheses are recorded as automatically
satisfied and convergence reduces to "the reached cycle has length 1".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Optional, Sequence

from .errors import CapExceededError, DomainError, ParameterError
from .conditions import (
    AuxWeight,
    ConditionSpec,
    FAILS,
    GaugeFunction,
    _EvalContext,
    _eval_ext_single,
    _eval_majorant,
    check_aux_bound,
)
from .dynamics import SelfMap
from .spaces import EXACT, AxiomReport, FiniteCarrier, GMetricSpace, check_axioms

DEFAULT_MAP_CAP = 5

THEOREM_IDS = ("THM-2.2", "THM-2.5", "THM-2.10", "THM-2.12")


@dataclass(frozen=True)
class FiniteMetric:
    """A finite metric given by an m x m table of exact rationals."""

    d: tuple

    def __post_init__(self):
        m = len(self.d)
        if m == 0:
            raise ParameterError("metric table must be nonempty")
        for row in self.d:
            if len(row) != m:
                raise ParameterError("metric table must be square")
        for i in range(m):
            if self.d[i][i] != 0:
                raise ParameterError(f"diagonal entry d[{i}][{i}] must be 0")
            for j in range(m):
                v = self.d[i][j]
                if not isinstance(v, Fraction):
                    raise ParameterError("metric entries must be Fractions")
                if i != j and v <= 0:
                    raise ParameterError(f"off-diagonal entry d[{i}][{j}] must be positive")
                if v != self.d[j][i]:
                    raise ParameterError(f"metric table not symmetric at ({i},{j})")
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    if self.d[i][j] > self.d[i][k] + self.d[k][j]:
                        raise ParameterError(
                            f"triangle inequality fails at ({i},{j}) via {k}")

    @property
    def size(self) -> int:
        return len(self.d)

    @classmethod
    def from_rows(cls, rows) -> "FiniteMetric":
        table = tuple(tuple(Fraction(v) for v in row) for row in rows)
        return cls(table)

    @classmethod
    def uniform(cls, m: int) -> "FiniteMetric":
        if m < 1:
            raise ParameterError("size must be at least 1")
        one, zero = Fraction(1), Fraction(0)
        return cls(tuple(tuple(zero if i == j else one for j in range(m))
                         for i in range(m)))


def random_metric(rng, min_size: int = 2, max_size: int = 6,
                  max_denominator: int = 12) -> FiniteMetric:
    """Seeded random rational metric with entries in [1, 2].

    Keeping every off-diagonal distance in [1, 2] makes the triangle
    inequality automatic, so any symmetric positive table qualifies.
    """
    m = int(rng.integers(min_size, max_size + 1))
    rows = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            den = int(rng.integers(1, max_denominator + 1))
            num = int(rng.integers(den, 2 * den + 1))
            rows[i][j] = rows[j][i] = Fraction(num, den)
    return FiniteMetric.from_rows(rows)


def load_metric_table(path) -> FiniteMetric:
    """Read a metric from a plain-text table: first line m, then m rows of
    whitespace-separated rationals ("p/q" or integers)."""
    with open(path) as fh:
        tokens = fh.read().split()
    if not tokens:
        raise ParameterError(f"empty metric table file {path}")
    m = int(tokens[0])
    vals = tokens[1:]
    if len(vals) != m * m:
        raise ParameterError(f"expected {m * m} entries, found {len(vals)}")
    rows = [[Fraction(vals[i * m + j]) for j in range(m)] for i in range(m)]
    return FiniteMetric.from_rows(rows)


def build_gmetric(metric: FiniteMetric, construction: str) -> GMetricSpace:
    """Exact ternary distance from a finite metric.

    ``max``: G(x,y,z) = max of the three pairwise distances;
    ``perimeter``: their sum.  Both are symmetric by construction.
    """
    d = metric.d
    if construction == "max":
        def g(i, j, k):
            return max(d[i][j], d[j][k], d[k][i])
    elif construction == "perimeter":
        def g(i, j, k):
            return d[i][j] + d[j][k] + d[k][i]
    else:
        raise ParameterError(f"unknown construction {construction!r}")
    return GMetricSpace(carrier=FiniteCarrier(metric.size), g=g,
                        arithmetic=EXACT, symmetric_claimed=True,
                        name=f"{construction}-m{metric.size}")


def enumerate_self_maps(m: int, cap: int = DEFAULT_MAP_CAP) -> Iterator[tuple]:
    """All m^m self-map tables of {0..m-1} in lexicographic order."""
    if m < 1:
        raise ParameterError("size must be at least 1")
    if m > cap:
        raise CapExceededError(
            f"carrier size {m} exceeds the enumeration cap {cap} ({m}^{m} maps)")
    return product(range(m), repeat=m)


def table_self_map(space: GMetricSpace, table: Sequence[int], name: str = "") -> SelfMap:
    tbl = tuple(table)
    return SelfMap(domain=space.carrier, apply=lambda i: tbl[i],
                   name=name or "table" + "".join(str(t) for t in tbl))


def orbit_cycle(table: Sequence[int], start: int):
    """Iterate a table map from ``start`` until a state repeats.

    Returns (steps_to_cycle, cycle) where ``cycle`` is the tuple of states
    on the eventual cycle, beginning at the first repeated state.
    """
    seen = {}
    x = start
    k = 0
    while x not in seen:
        seen[x] = k
        x = table[x]
        k += 1
    mu = seen[x]
    cycle = [x]
    y = table[x]
    while y != x:
        cycle.append(y)
        y = table[y]
    return mu, tuple(cycle)


def orbit_set(table: Sequence[int], start: int) -> tuple:
    """The orbit {start, T start, T^2 start, ...} as a tuple in first-visit order."""
    seen = []
    x = start
    while x not in seen:
        seen.append(x)
        x = table[x]
    return tuple(seen)


def steps_to_fixed(table: Sequence[int], start: int) -> Optional[int]:
    """Number of applications until a fixed point, or None if the orbit
    ends in a longer cycle."""
    mu, cycle = orbit_cycle(table, start)
    return mu if len(cycle) == 1 else None


@dataclass
class TheoremCheckReport:
    theorem_id: str
    maps_total: int
    maps_satisfying_hypothesis: int
    conclusion_holds: int
    counterexamples: list = field(default_factory=list)
    params: dict = field(default_factory=dict)
    hypothesis_failing: int = 0
    notes: tuple = ("orbital continuity and orbital completeness are automatic on finite carriers",)

    def consistent(self) -> bool:
        return (self.conclusion_holds + len(self.counterexamples)
                == self.maps_satisfying_hypothesis)


def _carrier_condition_triples(m: int):
    for x in range(m):
        for y in range(m):
            if x == y:
                continue
            for z in range(m):
                yield (x, y, z)


def _orbit_condition_triples(table, m: int):
    seen = set()
    for a in range(m):
        pts = orbit_set(table, a)
        for x in pts:
            for y in pts:
                if x == y:
                    continue
                for z in pts:
                    t = (x, y, z)
                    if t not in seen:
                        seen.add(t)
                        yield t


def _majorant_hypothesis(space, smap, spec, triples) -> Optional[tuple]:
    """First violating triple of a majorant condition, or None."""
    ctx = _EvalContext(space, smap)
    for (x, y, z) in triples:
        verdict = _eval_majorant(ctx, spec, x, y, z, tol_base=0.0)
        if verdict.status == FAILS:
            return (x, y, z)
    return None


def _extension_hypothesis(space, smap, table, m, alpha, beta, delta) -> Optional[tuple]:
    """First (start, triple) whose orbit-set triple satisfies none of the
    enabled extension conditions, or None.

    The quantifier is read universally over starting points: the
    hypothesis holds for the map only when every starting orbit set has
    all its triples satisfied.
    """
    ctx = _EvalContext(space, smap)
    checked = set()
    for a in range(m):
        pts = orbit_set(table, a)
        for x in pts:
            for y in pts:
                for z in pts:
                    t = (x, y, z)
                    if t in checked:
                        continue
                    checked.add(t)
                    ok = False
                    for which, param in (("EXT-I", alpha), ("EXT-II", beta),
                                         ("EXT-III", delta)):
                        if param is None:
                            continue
                        v = _eval_ext_single(ctx, which, param, x, y, z, tol_base=0.0)
                        if v.holds:
                            ok = True
                            break
                    if not ok:
                        return (a, t)
    return None


def _as_fraction(v, name: str) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(str(v))
    raise ParameterError(f"{name} must be rational-valued, got {v!r}")


def exhaustive_theorem_check(space: GMetricSpace, theorem_id: str,
                             params: Optional[dict] = None,
                             cap: int = DEFAULT_MAP_CAP) -> TheoremCheckReport:
    """Brute-force a theorem over every self-map of an exact finite space.

    For each map the hypothesis is decided exactly (condition on all
    admissible triples, injectivity where required), then the conclusion
    is verified by exact orbit iteration.  Counterexamples carry the map
    table, the violated clause, and a witness, and always re-verify.

    ``params`` per theorem: THM-2.2 needs ``q`` (rational in (0,1));
    THM-2.10 needs ``gauge`` (a GaugeFunction); THM-2.12 needs at least
    one of ``alpha``/``beta``/``delta``.  All accept ``a`` (an AuxWeight,
    default zero) where the condition uses a weight, and THM-2.2/2.5/2.10
    accept ``scope`` = "carrier" (default) or "orbit" for the condition's
    quantifier range.
    """
    if theorem_id not in THEOREM_IDS:
        raise ParameterError(f"unknown theorem id {theorem_id!r}")
    if not space.exact:
        raise ParameterError("theorem checking requires an exact-rational space")
    if not space.symmetric_claimed:
        raise DomainError("theorem checking requires a symmetric space")
    params = dict(params or {})
    m = space.carrier.size

    aux = params.pop("a", None) or AuxWeight.zero()
    scope = params.pop("scope", "carrier")
    if scope not in ("carrier", "orbit"):
        raise ParameterError(f"unknown scope {scope!r}")

    spec = None
    alpha = beta = delta = None
    if theorem_id == "THM-2.2":
        q = _as_fraction(params.pop("q"), "q")
        spec = ConditionSpec(id="C-Q", q=q, a=aux)
    elif theorem_id == "THM-2.5":
        spec = ConditionSpec(id="C-UNIT", a=aux)
    elif theorem_id == "THM-2.10":
        gauge = params.pop("gauge")
        if not isinstance(gauge, GaugeFunction):
            raise ParameterError("THM-2.10 requires a GaugeFunction")
        spec = ConditionSpec(id="C-GAUGE", h=gauge, a=aux)
    else:
        alpha = params.pop("alpha", None)
        beta = params.pop("beta", None)
        delta = params.pop("delta", None)
        alpha = None if alpha is None else _as_fraction(alpha, "alpha")
        beta = None if beta is None else _as_fraction(beta, "beta")
        delta = None if delta is None else _as_fraction(delta, "delta")
        if alpha is None and beta is None and delta is None:
            raise ParameterError("THM-2.12 requires at least one of alpha/beta/delta")
    if params:
        raise ParameterError(f"unknown theorem parameters {sorted(params)}")

    needs_injectivity = theorem_id in ("THM-2.2", "THM-2.5", "THM-2.10")
    # The uniqueness clause evaluates the condition at pairs of distinct
    # fixed points, which never share an orbit, so it is only claimed when
    # the condition is quantified over the whole carrier.
    check_uniqueness = theorem_id in ("THM-2.2", "THM-2.10") and scope == "carrier"

    maps_total = 0
    satisfying = 0
    conclusion_holds = 0
    counterexamples = []

    for table in enumerate_self_maps(m, cap=cap):
        maps_total += 1
        smap = table_self_map(space, table)

        if needs_injectivity and len(set(table)) != m:
            continue
        if spec is not None:
            triples = (_carrier_condition_triples(m) if scope == "carrier"
                       else _orbit_condition_triples(table, m))
            if _majorant_hypothesis(space, smap, spec, triples) is not None:
                continue
        else:
            if _extension_hypothesis(space, smap, table, m, alpha, beta, delta) is not None:
                continue

        satisfying += 1
        violation = None

        cycles = {a: orbit_cycle(table, a) for a in range(m)}
        for a in range(m):
            _, cycle = cycles[a]
            if len(cycle) != 1:
                clause = ("cluster-not-fixed" if theorem_id == "THM-2.5"
                          else "orbit-not-convergent")
                violation = (tuple(table), clause, {"start": a, "cycle": cycle})
                break

        if violation is None and check_uniqueness:
            bound_ok = check_aux_bound(
                space, smap, aux, _carrier_condition_triples(m)).passed
            if bound_ok:
                fixed = [i for i in range(m) if table[i] == i]
                if len(fixed) != 1:
                    violation = (tuple(table), "fixed-point-not-unique",
                                 {"fixed_points": tuple(fixed)})

        if violation is None:
            conclusion_holds += 1
        else:
            counterexamples.append(violation)

    counterexamples.sort(key=lambda c: c[0])
    report_params = {"scope": scope, "a": aux.label()}
    if theorem_id == "THM-2.2":
        report_params["q"] = str(spec.q)
    if theorem_id == "THM-2.10":
        report_params["gauge"] = spec.h.name
    if theorem_id == "THM-2.12":
        for nm, v in (("alpha", alpha), ("beta", beta), ("delta", delta)):
            if v is not None:
                report_params[nm] = str(v)
        report_params.pop("scope")

    return TheoremCheckReport(
        theorem_id=theorem_id, maps_total=maps_total,
        maps_satisfying_hypothesis=satisfying,
        conclusion_holds=conclusion_holds,
        counterexamples=counterexamples, params=report_params,
        hypothesis_failing=maps_total - satisfying)


def exhaustive_axiom_check(space: GMetricSpace) -> AxiomReport:
    """All-triples, all-quadruples axiom check with exact comparisons."""
    if not space.exact:
        raise ParameterError("exhaustive exact checking requires an exact space")
    return check_axioms(space, mode="exhaustive", tol=0.0)
