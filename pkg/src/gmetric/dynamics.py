"""Orbits and Picard iteration on G-metric spaces.

Provides orbit traces with successive-gap bookkeeping, a fixed-point
solver with convergence-rate classification and an optional certified
geometric error bound, cluster-point detection, and sampled probes for
orbital continuity and injectivity.  The probes are finite evidence,
never proofs, and are labeled as such in their verdicts.
"""
from __future__ import annotations

import csv
import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import DomainError, ParameterError
from .spaces import (
    Carrier,
    DEFAULT_TOL,
    FAIL,
    FiniteCarrier,
    GMetricSpace,
    PASS,
    Point,
    Verdict,
    coord_distance,
    format_point,
    normalize_point,
    raw_g,
    scaled_tol,
)


@dataclass(frozen=True)
class SelfMap:
    """A self-map of a carrier.  ``apply`` must be total and deterministic."""

    domain: Carrier
    apply: Callable[[Point], Point]
    name: str = ""

    def step(self, p: Point) -> Point:
        """Apply the map to an already-normalized point, validating the image."""
        return normalize_point(self.domain, self.apply(p))


@dataclass
class OrbitTrace:
    """The prefix x0, Tx0, ..., Tnx0 with gaps G(x_k, x_{k+1}, x_{k+1})."""

    points: list
    gaps: list
    space_id: str = ""
    map_id: str = ""
    exact_fixed: bool = False

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class ConvergenceClass:
    kind: str  # geometric | sublinear | stagnated | diverged
    ratio: Optional[float] = None

    def __str__(self) -> str:
        if self.kind == "geometric" and self.ratio is not None:
            return f"geometric({self.ratio:.6g})"
        return self.kind


@dataclass
class FixedPointCertificate:
    candidate: Point
    residual: float
    iterations: int
    convergence_class: ConvergenceClass
    apriori_bound: Optional[float]
    stop_reason: str  # gap-threshold | max-iter | exact-fixed
    initial_gap: Optional[float] = None
    certified_q: Optional[float] = None
    space_id: str = ""
    map_id: str = ""


def _points_fixed(space: GMetricSpace, a: Point, b: Point, fix_tol: float) -> bool:
    if space.exact:
        return a == b
    return coord_distance(a, b) <= fix_tol


def orbit(space: GMetricSpace, smap: SelfMap, x0, n: int, fix_tol: float = 0.0) -> OrbitTrace:
    """Iterate the map n times from x0, recording points and successive gaps.

    Stops early, flagged ``exact_fixed``, when an iterate repeats (exact
    comparison in the rational regime; coordinate-wise within ``fix_tol``,
    default bitwise, for floats).
    """
    if n < 1:
        raise ParameterError("orbit length must be at least 1")
    if smap.domain != space.carrier:
        raise DomainError("map domain does not match the space carrier")
    x = normalize_point(space.carrier, x0)
    points = [x]
    gaps = []
    fixed = False
    for _ in range(n):
        x1 = smap.step(x)
        gaps.append(raw_g(space, x, x1, x1))
        points.append(x1)
        if _points_fixed(space, x, x1, fix_tol):
            fixed = True
            break
        x = x1
    return OrbitTrace(points=points, gaps=gaps, space_id=space.name,
                      map_id=smap.name, exact_fixed=fixed)


def classify_gaps(gap_tail: Sequence[float], min_gap: float, eps_stop: float,
                  residual: float) -> ConvergenceClass:
    """Classify the decay of a gap sequence from its tail.

    Ratio test over the last (up to) 10 gaps: geometric when every tail
    ratio stays at or below 0.95; sublinear when the gaps still decrease
    but the ratios exceed that; diverged when the last gap has grown to
    10x the running minimum; stagnated otherwise.
    """
    if residual == 0 or not gap_tail:
        return ConvergenceClass("geometric", 0.0)
    last = gap_tail[-1]
    if last == 0:
        return ConvergenceClass("geometric", 0.0)
    if min_gap > 0 and last >= 10.0 * min_gap and last > min_gap:
        return ConvergenceClass("diverged")
    ratios = [b / a for a, b in zip(gap_tail, list(gap_tail)[1:]) if a > 0]
    if ratios and max(ratios) <= 0.95:
        return ConvergenceClass("geometric", max(ratios))
    if ratios and all(r < 1.0 for r in ratios):
        return ConvergenceClass("sublinear")
    if last <= eps_stop:
        return ConvergenceClass("sublinear")
    return ConvergenceClass("stagnated")


def solve_picard(space: GMetricSpace, smap: SelfMap, x0, eps_stop: float,
                 max_iter: int, certified_q: Optional[float] = None,
                 fix_tol: float = 0.0) -> FixedPointCertificate:
    """Run Picard iteration until the successive gap falls to eps_stop.

    Exhausting ``max_iter`` is reported in ``stop_reason``, not raised.
    When a certified contraction ratio q is supplied, the certificate
    carries the geometric tail bound q^n/(1-q) * G(x0, Tx0, Tx0) at the
    reported iteration count.
    """
    if eps_stop <= 0:
        raise ParameterError("eps_stop must be positive")
    if max_iter < 0:
        raise ParameterError("max_iter must be nonnegative")
    if certified_q is not None and not (0 < certified_q < 1):
        raise ParameterError("certified_q must lie in (0, 1)")
    if smap.domain != space.carrier:
        raise DomainError("map domain does not match the space carrier")

    x = normalize_point(space.carrier, x0)
    apply_raw = smap.apply
    carrier = space.carrier
    g = space.g
    exact = space.exact

    tail = deque(maxlen=11)
    g0 = None
    min_gap = math.inf
    iterations = 0
    stop_reason = "max-iter"

    for k in range(max_iter):
        x1 = apply_raw(x)
        if not exact:
            if isinstance(x1, tuple):
                x1 = normalize_point(carrier, x1)
            else:
                x1 = float(x1)
                if not math.isfinite(x1):
                    raise DomainError(f"map produced non-finite value at iteration {k}")
        gap = g(x, x1, x1)
        if g0 is None:
            g0 = gap
        if gap < min_gap:
            min_gap = gap
        tail.append(gap)
        if _points_fixed(space, x, x1, fix_tol):
            stop_reason = "exact-fixed"
            break
        iterations = k + 1
        x = x1
        if gap <= eps_stop:
            stop_reason = "gap-threshold"
            break

    x_img = smap.step(x)
    residual = raw_g(space, x, x_img, x_img)

    klass = classify_gaps(list(tail), min_gap if min_gap < math.inf else 0.0,
                          eps_stop, residual)
    bound = None
    if certified_q is not None:
        if g0 is None:
            g0 = residual  # no step taken: the initial gap is the residual itself
        bound = apriori_bound(certified_q, g0, iterations)

    return FixedPointCertificate(
        candidate=x, residual=residual, iterations=iterations,
        convergence_class=klass, apriori_bound=bound, stop_reason=stop_reason,
        initial_gap=g0, certified_q=certified_q,
        space_id=space.name, map_id=smap.name)


def apriori_bound(q, g0, n: int):
    """Geometric tail bound q^n * g0 / (1 - q) on the distance from the
    n-th iterate to every later iterate (hence to the limit)."""
    if not 0 < q < 1:
        raise ParameterError("q must lie in (0, 1)")
    if g0 < 0:
        raise ParameterError("initial gap must be nonnegative")
    if n < 0:
        raise ParameterError("iteration count must be nonnegative")
    return (q ** n) * g0 / (1 - q)


def iterations_needed(q: float, g0: float, eps: float) -> int:
    """Smallest n with q^n * g0 / (1 - q) <= eps, verified by direct evaluation."""
    if not 0 < q < 1:
        raise ParameterError("q must lie in (0, 1)")
    if g0 <= 0:
        raise ParameterError("initial gap must be positive")
    if eps <= 0:
        raise ParameterError("eps must be positive")
    if apriori_bound(q, g0, 0) <= eps:
        return 0
    n = max(0, math.ceil(math.log(eps * (1 - q) / g0) / math.log(q)))
    while apriori_bound(q, g0, n) > eps:
        n += 1
    while n > 0 and apriori_bound(q, g0, n - 1) <= eps:
        n -= 1
    return n


def detect_cluster_point(space: GMetricSpace, trace: OrbitTrace, tol: float,
                         min_hits: int) -> Optional[Point]:
    """Earliest trace point u with at least ``min_hits`` trace entries
    satisfying G(u, x_k, x_k) <= tol; None when no point qualifies."""
    if min_hits < 2:
        raise ParameterError("min_hits must be at least 2")
    pts = trace.points
    for u in pts:
        hits = 0
        for p in pts:
            if raw_g(space, u, p, p) <= tol:
                hits += 1
                if hits >= min_hits:
                    break
        if hits >= min_hits:
            return u
    return None


def _trace_points(trace_or_points):
    if isinstance(trace_or_points, OrbitTrace):
        return trace_or_points.points
    return list(trace_or_points)


def probe_orbital_continuity(space: GMetricSpace, smap: SelfMap, trace,
                             candidate, tol: float) -> Verdict:
    """Check that the map carries trace points near the candidate to points
    near the candidate's image.  Finite evidence only, not a proof."""
    c = normalize_point(space.carrier, candidate)
    tc = smap.step(c)
    checked = 0
    for k, p in enumerate(_trace_points(trace)):
        p = normalize_point(space.carrier, p)
        if raw_g(space, c, p, p) <= tol:
            checked += 1
            tp = smap.step(p)
            v = raw_g(space, tc, tp, tp)
            if v > tol:
                return Verdict(FAIL, witness=(k, p), values=(v,),
                               note="finite evidence only")
    return Verdict(PASS, values=(checked,), note="finite evidence only")


def probe_injectivity(smap: SelfMap, sample, tol: float = DEFAULT_TOL) -> Verdict:
    """Look for two distinct sample points with (numerically) equal images.
    Finite evidence only, not a proof."""
    if not sample:
        raise ParameterError("injectivity probe requires a nonempty sample")
    pts = [normalize_point(smap.domain, p) for p in sample]
    images = [smap.step(p) for p in pts]
    finite = isinstance(smap.domain, FiniteCarrier)

    def flat(p):
        return p if isinstance(p, tuple) else (p,)

    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if finite:
                distinct, collide = pts[i] != pts[j], images[i] == images[j]
            else:
                distinct = coord_distance(pts[i], pts[j]) > scaled_tol(
                    tol, *flat(pts[i]), *flat(pts[j]))
                collide = coord_distance(images[i], images[j]) <= scaled_tol(
                    tol, *flat(images[i]), *flat(images[j]))
            if distinct and collide:
                return Verdict(FAIL, witness=(pts[i], pts[j]),
                               values=(images[i], images[j]),
                               note="finite evidence only")
    return Verdict(PASS, values=(len(pts),), note="finite evidence only")


def write_trace_csv(trace: OrbitTrace, path, certified_q: Optional[float] = None) -> None:
    """Serialize a trace as CSV with the fixed header ``n,x,gap,bound``.

    The bound column is the geometric tail bound per row when a certified
    q is supplied and empty otherwise; the gap column is empty on the
    final row.
    """
    g0 = trace.gaps[0] if trace.gaps else None
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "x", "gap", "bound"])
        for n, p in enumerate(trace.points):
            gap = repr(trace.gaps[n]) if n < len(trace.gaps) else ""
            if certified_q is not None and g0 is not None:
                bound = repr(apriori_bound(certified_q, g0, n))
            else:
                bound = ""
            w.writerow([n, format_point(p), gap, bound])
