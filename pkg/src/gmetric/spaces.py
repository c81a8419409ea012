"""Ternary-distance (G-metric) spaces.

A G-metric assigns a nonnegative "perimeter-like" distance G(x, y, z) to
every triple of points.  This module holds the carrier descriptors, the
space record, sample-based and exhaustive axiom checking, the derived
ordinary metric d(x, y) = G(x, y, y) + G(x, x, y), and convergence
diagnostics for point sequences.

Two arithmetic regimes are supported: plain floats (with scale-aware
tolerances) and exact rationals on finite carriers (strict comparisons,
no tolerance).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Callable, Optional, Union

from .errors import DomainError, ParameterError

Point = Union[float, int, tuple]

DEFAULT_TOL = 1e-12

FLOAT = "float"
EXACT = "exact"

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"

AXIOM_KEYS = ("G1", "G2", "G3", "G4", "G5", "symmetry")


@dataclass(frozen=True)
class RealCarrier:
    """Real points: scalars for dim 1, float tuples for dim >= 2.

    Optional box bounds restrict the carrier (e.g. the nonnegative
    half-line); points outside raise DomainError at normalization.
    """

    dim: int = 1
    lo: Optional[float] = None
    hi: Optional[float] = None


@dataclass(frozen=True)
class FiniteCarrier:
    """Finite carrier: points are indices 0..size-1."""

    size: int


Carrier = Union[RealCarrier, FiniteCarrier]


def normalize_point(carrier: Carrier, p) -> Point:
    """Coerce ``p`` into the carrier's canonical point form or raise DomainError."""
    if isinstance(carrier, FiniteCarrier):
        if isinstance(p, bool) or not isinstance(p, int):
            raise DomainError(f"finite carrier expects an integer index, got {p!r}")
        if not 0 <= p < carrier.size:
            raise DomainError(f"index {p} outside carrier of size {carrier.size}")
        return p
    if carrier.dim == 1:
        if isinstance(p, (tuple, list)):
            if len(p) != 1:
                raise DomainError(f"expected a scalar or 1-tuple, got {p!r}")
            p = p[0]
        if isinstance(p, bool) or not isinstance(p, (int, float, Fraction)):
            raise DomainError(f"expected a real scalar, got {p!r}")
        v = float(p)
        _check_coord(carrier, v)
        return v
    if not isinstance(p, (tuple, list)) or len(p) != carrier.dim:
        raise DomainError(f"expected a {carrier.dim}-tuple, got {p!r}")
    coords = []
    for c in p:
        if isinstance(c, bool) or not isinstance(c, (int, float, Fraction)):
            raise DomainError(f"non-numeric coordinate {c!r}")
        v = float(c)
        _check_coord(carrier, v)
        coords.append(v)
    return tuple(coords)


def _check_coord(carrier: RealCarrier, v: float) -> None:
    if not math.isfinite(v):
        raise DomainError(f"non-finite coordinate {v!r}")
    if carrier.lo is not None and v < carrier.lo:
        raise DomainError(f"coordinate {v} below carrier bound {carrier.lo}")
    if carrier.hi is not None and v > carrier.hi:
        raise DomainError(f"coordinate {v} above carrier bound {carrier.hi}")


def coord_distance(p: Point, q: Point) -> float:
    """Chebyshev distance between two normalized real/finite points."""
    if isinstance(p, tuple):
        return max(abs(a - b) for a, b in zip(p, q))
    return abs(p - q)


def scaled_tol(base: float, *values) -> float:
    """Scale-aware tolerance: base * (1 + max |value|)."""
    m = 0.0
    for v in values:
        a = abs(float(v))
        if a > m:
            m = a
    return base * (1.0 + m)


def format_point(p: Point) -> str:
    """Stable text form of a point (used in CSV traces and reports)."""
    if isinstance(p, tuple):
        return ";".join(repr(c) for c in p)
    if isinstance(p, float):
        return repr(p)
    return str(p)


@dataclass(frozen=True)
class GMetricSpace:
    """A carrier together with a ternary distance function.

    ``arithmetic`` is "float" or "exact"; exact spaces must have a finite
    carrier and a distance returning Fractions (or ints).  The symmetry
    flag is a claim, verified by :func:`check_symmetry`, not assumed.
    """

    carrier: Carrier
    g: Callable
    arithmetic: str = FLOAT
    symmetric_claimed: bool = True
    name: str = ""

    def __post_init__(self):
        if self.arithmetic not in (FLOAT, EXACT):
            raise ParameterError(f"unknown arithmetic mode {self.arithmetic!r}")
        if self.arithmetic == EXACT and not isinstance(self.carrier, FiniteCarrier):
            raise ParameterError("exact arithmetic requires a finite carrier")

    @property
    def exact(self) -> bool:
        return self.arithmetic == EXACT


def _validate_value(space: GMetricSpace, v):
    if space.exact:
        if isinstance(v, int):
            v = Fraction(v)
        if not isinstance(v, Fraction):
            raise DomainError(f"exact space produced non-rational value {v!r}")
        return v
    v = float(v)
    if not math.isfinite(v):
        raise DomainError(f"distance evaluated to non-finite value {v!r}")
    return v


def raw_g(space: GMetricSpace, x: Point, y: Point, z: Point):
    """Distance on already-normalized points (validates the value only)."""
    return _validate_value(space, space.g(x, y, z))


def eval_g(space: GMetricSpace, x, y, z):
    """Evaluate G(x, y, z) after normalizing the three points."""
    c = space.carrier
    return raw_g(space, normalize_point(c, x), normalize_point(c, y), normalize_point(c, z))


def derived_metric(space: GMetricSpace, x, y):
    """The ordinary metric induced by G: d(x, y) = G(x, y, y) + G(x, x, y)."""
    c = space.carrier
    xn, yn = normalize_point(c, x), normalize_point(c, y)
    return raw_g(space, xn, yn, yn) + raw_g(space, xn, xn, yn)


def points_distinct(space: GMetricSpace, p: Point, q: Point, tol: float = DEFAULT_TOL) -> bool:
    """Distinctness guard matching the arithmetic regime.

    Exact spaces compare indices; float spaces require coordinate distance
    above the scale-aware tolerance.
    """
    if space.exact:
        return p != q
    if isinstance(p, tuple):
        return coord_distance(p, q) > scaled_tol(tol, *p, *q)
    return abs(p - q) > scaled_tol(tol, p, q)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a single check: PASS, FAIL (with witness), or SKIPPED."""

    status: str
    witness: Optional[tuple] = None
    values: Optional[tuple] = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS


@dataclass
class AxiomReport:
    verdicts: dict
    sample_size: int
    quadruple_count: int
    mode: str

    def all_pass(self) -> bool:
        return all(v.status != FAIL for v in self.verdicts.values())

    def failures(self) -> dict:
        return {k: v for k, v in self.verdicts.items() if v.status == FAIL}


def _axiom_points(space, sample, mode):
    if mode == "exhaustive":
        if not isinstance(space.carrier, FiniteCarrier):
            raise ParameterError("exhaustive axiom checking requires a finite carrier")
        return list(range(space.carrier.size))
    if mode != "sampled":
        raise ParameterError(f"unknown mode {mode!r}")
    if not sample:
        raise ParameterError("sampled mode requires a nonempty sample")
    pts = [normalize_point(space.carrier, p) for p in sample]
    return list(dict.fromkeys(pts))  # drop exact duplicates, keep order


def check_axioms(space: GMetricSpace, sample=None, tol: float = DEFAULT_TOL,
                 mode: str = "sampled") -> AxiomReport:
    """Check the five G-metric axioms (and the symmetry property) on a point set.

    Sampled mode draws all triples/quadruples from the given sample;
    exhaustive mode (finite carriers only) uses the whole carrier.  In the
    float regime, strict inequalities are tested against a scale-aware
    tolerance so rounding noise cannot fabricate a failure; exact spaces
    use true comparisons.

    Axioms, for all points drawn from the set:
      G1: G(x, x, x) = 0
      G2: G(x, x, y) > 0 when x != y
      G3: G(x, x, y) <= G(x, y, z) when z != y
      G4: G is invariant under all permutations of its arguments
      G5: G(x, y, z) <= G(x, a, a) + G(a, y, z) for every a
    plus the symmetry property G(x, y, y) = G(x, x, y) (skipped when the
    space does not claim it).
    """
    pts = _axiom_points(space, sample, mode)
    exact = space.exact
    base = 0.0 if exact else tol
    memo = {}

    def g(a, b, c):
        key = (a, b, c)
        v = memo.get(key)
        if v is None:
            v = raw_g(space, a, b, c)
            memo[key] = v
        return v

    def distinct(a, b):
        return points_distinct(space, a, b, tol)

    verdicts = {}

    # G1: zero on the diagonal
    v1 = Verdict(PASS)
    for x in pts:
        val = g(x, x, x)
        if (val != 0) if exact else (abs(val) > scaled_tol(base, val)):
            v1 = Verdict(FAIL, witness=(x, x, x), values=(val,))
            break
    verdicts["G1"] = v1

    # G2: strictly positive off the diagonal
    v2 = Verdict(PASS)
    for x in pts:
        if v2.status == FAIL:
            break
        for y in pts:
            if not distinct(x, y):
                continue
            val = g(x, x, y)
            ok = (val > 0) if exact else (val > scaled_tol(base, val))
            if not ok:
                v2 = Verdict(FAIL, witness=(x, x, y), values=(val,))
                break
    verdicts["G2"] = v2

    def exceeds(lhs, rhs):
        # "lhs > rhs" with float slack; exact values never touch floats
        if exact:
            return lhs > rhs
        return lhs > rhs + scaled_tol(base, lhs, rhs)

    # G3: the two-point value is a lower bound over third points
    v3 = Verdict(PASS)
    for x in pts:
        if v3.status == FAIL:
            break
        for y in pts:
            if v3.status == FAIL:
                break
            lhs = None
            for z in pts:
                if not distinct(z, y):
                    continue
                if lhs is None:
                    lhs = g(x, x, y)
                rhs = g(x, y, z)
                if exceeds(lhs, rhs):
                    v3 = Verdict(FAIL, witness=(x, y, z), values=(lhs, rhs))
                    break
    verdicts["G3"] = v3

    # G4: full permutation symmetry
    v4 = Verdict(PASS)
    for x in pts:
        if v4.status == FAIL:
            break
        for y in pts:
            if v4.status == FAIL:
                break
            for z in pts:
                vals = [g(*p) for p in permutations((x, y, z))]
                spread = max(vals) - min(vals)
                if (spread != 0) if exact else (spread > scaled_tol(base, *vals)):
                    v4 = Verdict(FAIL, witness=(x, y, z), values=tuple(vals))
                    break
    verdicts["G4"] = v4

    # G5: rectangle inequality through any fourth point
    v5 = Verdict(PASS)
    for x in pts:
        if v5.status == FAIL:
            break
        for y in pts:
            if v5.status == FAIL:
                break
            for z in pts:
                if v5.status == FAIL:
                    break
                lhs = g(x, y, z)
                for a in pts:
                    rhs = g(x, a, a) + g(a, y, z)
                    if exceeds(lhs, rhs):
                        v5 = Verdict(FAIL, witness=(x, y, z, a), values=(lhs, rhs))
                        break
    verdicts["G5"] = v5

    # symmetry property (a claim about the space, not one of G1-G5)
    if not space.symmetric_claimed:
        vs = Verdict(SKIPPED, note="space does not claim symmetry")
    else:
        vs = Verdict(PASS)
        for x in pts:
            if vs.status == FAIL:
                break
            for y in pts:
                a, b = g(x, y, y), g(x, x, y)
                diff = abs(a - b)
                if (diff != 0) if exact else (diff > scaled_tol(base, a, b)):
                    vs = Verdict(FAIL, witness=(x, y), values=(a, b))
                    break
    verdicts["symmetry"] = vs

    n = len(pts)
    return AxiomReport(verdicts=verdicts, sample_size=n ** 3,
                       quadruple_count=n ** 4, mode=mode)


def check_symmetry(space: GMetricSpace, sample, tol: float = DEFAULT_TOL) -> Verdict:
    """Verify G(x, y, y) = G(x, x, y) on all sampled pairs."""
    if not sample:
        raise ParameterError("symmetry check requires a nonempty sample")
    pts = [normalize_point(space.carrier, p) for p in sample]
    base = 0.0 if space.exact else tol
    for x in pts:
        for y in pts:
            a = raw_g(space, x, y, y)
            b = raw_g(space, x, x, y)
            diff = abs(a - b)
            if (diff != 0) if space.exact else (diff > scaled_tol(base, a, b)):
                return Verdict(FAIL, witness=(x, y), values=(a, b))
    return Verdict(PASS)


# Indicator keys follow the quantities of the convergence-equivalence
# result: G(x, x_n, x_m), d_G(x_n, x), G(x, x_n, x_n), G(x_n, x, x),
# plus the Cauchy tail gap sup G(x_n, x_m, x_m).
INDICATOR_KEYS = ("G_x_xn_xm", "dG_xn_x", "G_x_xn_xn", "G_xn_x_x", "cauchy_gap")


@dataclass
class ConvergenceDiagnosis:
    candidate_limit: Optional[Point]
    indicators: dict
    thresholds_met: dict
    eps: float
    tail_start: int
    tail_indices: list = field(default_factory=list)
    tail_traces: dict = field(default_factory=dict)

    def all_met(self) -> bool:
        return all(self.thresholds_met.values())


def _strided(indices, cap):
    if len(indices) <= cap:
        return list(indices)
    step = max(1, len(indices) // cap)
    picked = list(indices[::step])
    if picked[-1] != indices[-1]:
        picked.append(indices[-1])
    return picked


def diagnose_sequence(space: GMetricSpace, prefix, candidate=None, eps: float = 1e-6,
                      tail_fraction: float = 0.5, max_points: int = 256) -> ConvergenceDiagnosis:
    """Evaluate the convergence indicators of a sequence prefix.

    Indicators are computed on the prefix tail (default: last half).  The
    two-index quantities (pair sup toward the candidate, and the Cauchy
    gap) are taken as sups over a strided subset of tail index pairs that
    always includes the tail endpoints; the single-index quantities are
    additionally recorded along the tail so implications can be asserted
    index by index.  Without a candidate all thresholds are reported unmet.
    """
    if eps <= 0:
        raise ParameterError("eps must be positive")
    if not (0 < tail_fraction <= 1):
        raise ParameterError("tail_fraction must lie in (0, 1]")
    pts = [normalize_point(space.carrier, p) for p in prefix]
    if len(pts) < 2:
        raise ParameterError("prefix must contain at least 2 points")
    cand = None if candidate is None else normalize_point(space.carrier, candidate)

    n = len(pts)
    tail_start = min(n - 2, n - max(2, math.ceil(n * tail_fraction)))
    tail_start = max(0, tail_start)
    idxs = _strided(range(tail_start, n), max_points)
    last = n - 1

    indicators = {k: None for k in INDICATOR_KEYS}
    traces = {"dG_xn_x": [], "G_x_xn_xn": [], "G_xn_x_x": []}

    # Cauchy gap: sup G(x_i, x_j, x_j) over tail pairs i < j
    cauchy = 0.0 if not space.exact else Fraction(0)
    for a in range(len(idxs)):
        pa = pts[idxs[a]]
        for b in range(a + 1, len(idxs)):
            pb = pts[idxs[b]]
            v = raw_g(space, pa, pb, pb)
            if v > cauchy:
                cauchy = v
    indicators["cauchy_gap"] = cauchy

    if cand is not None:
        pair_sup = 0.0 if not space.exact else Fraction(0)
        for a in range(len(idxs)):
            pa = pts[idxs[a]]
            for b in range(a, len(idxs)):
                pb = pts[idxs[b]]
                v = raw_g(space, cand, pa, pb)
                if v > pair_sup:
                    pair_sup = v
        indicators["G_x_xn_xm"] = pair_sup
        for i in idxs:
            p = pts[i]
            traces["G_x_xn_xn"].append(raw_g(space, cand, p, p))
            traces["G_xn_x_x"].append(raw_g(space, p, cand, cand))
            traces["dG_xn_x"].append(raw_g(space, p, cand, cand) + raw_g(space, p, p, cand))
        indicators["G_x_xn_xn"] = traces["G_x_xn_xn"][-1]
        indicators["G_xn_x_x"] = traces["G_xn_x_x"][-1]
        indicators["dG_xn_x"] = traces["dG_xn_x"][-1]

    if cand is None:
        met = {k: False for k in INDICATOR_KEYS}
    else:
        met = {k: (indicators[k] is not None and indicators[k] <= eps)
               for k in INDICATOR_KEYS}

    return ConvergenceDiagnosis(candidate_limit=cand, indicators=indicators,
                                thresholds_met=met, eps=eps, tail_start=tail_start,
                                tail_indices=idxs, tail_traces=traces)
