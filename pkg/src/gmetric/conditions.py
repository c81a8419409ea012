"""Contractive-condition evaluators.

Three single-inequality conditions compare G(Tx, Ty, Tz) against a
majorant built from three competing terms:

    M1 = G(x, y, z)
    M2 = a(x, y, z) * G(Tx, y, z) * G(x, Ty, z) * G(x, y, Tz)
    M3 = G(x, Tx, Tx) * G(y, Ty, Ty) * G(z, Tz, Tz) / (M1 * G(Tx, Ty, Tz))

  C-Q     strict:      lhs <  q * max{M1, M2, M3},  q in (0, 1)
  C-UNIT  strict:      lhs <      max{M1, M2, M3}
  C-GAUGE non-strict:  lhs <= h(M1, M3, M2)   (note the argument order)

M3 contains the left-hand side in its denominator; it is evaluated
literally, and when the denominator vanishes while the left side is
positive the term is dropped from the majorant (for the gauge form it
contributes 0) and the exclusion recorded.  That is the conservative
reading: it can never manufacture a HOLDS.

The three "extension" conditions bound iterate displacements instead:

  (i)   G(x,Tx,Tx) + G(y,Ty,Ty) + G(z,Tz,Tz) <= alpha * G(x,y,z)
  (ii)  same left side <= beta * [G(Tx,y,z) + G(x,Ty,z) + G(x,y,Tz)]
  (iii) G(Tx,Ty,Tz) <= delta * max{G(x,y,z), G(x,Tx,Tx), G(y,Ty,Ty),
          G(z,Tz,Tz), (1/4)[G(Tx,y,z) + G(x,Ty,z) + G(x,y,Tz)]}

with alpha in [1,3), beta in [1/2,1), delta in [0,1).  The per-condition
contraction factors are (alpha-1)/2, (2*beta-1)/(2-2*beta) and delta; the
combined factor is exposed in two modes, a min-combination ("paper") and
a max-combination ("sound"), because the min-combination stops being a
contraction factor for beta >= 3/4, where its middle factor reaches 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from typing import Callable, Iterable, Optional

from .errors import DomainError, ParameterError
from .spaces import (
    DEFAULT_TOL,
    FAIL,
    GMetricSpace,
    PASS,
    Point,
    Verdict,
    normalize_point,
    points_distinct,
    raw_g,
    scaled_tol,
)
from .dynamics import SelfMap

HOLDS_STRICT = "HOLDS_STRICT"
HOLDS_WEAK = "HOLDS_WEAK"
FAILS = "FAILS"
VACUOUS = "VACUOUS"

CONDITION_IDS = ("C-Q", "C-UNIT", "C-GAUGE", "EXT-I", "EXT-II", "EXT-III")


@dataclass(frozen=True)
class AuxWeight:
    """Nonnegative weight a(x, y, z) entering the M2 product term.

    Kinds: ``zero``; ``constant`` c >= 0; ``reciprocal-cap`` which returns
    min(c, 1 / (G(x,y,z) * G(Tx,Ty,Tz))) where the denominator is positive
    and 0 where it vanishes (so the weight automatically satisfies the
    uniqueness hypothesis a <= 1/(G * G)); ``custom`` wraps a callable.
    """

    kind: str
    c: Optional[object] = None
    fn: Optional[Callable] = None

    @classmethod
    def zero(cls) -> "AuxWeight":
        return cls("zero")

    @classmethod
    def constant(cls, c) -> "AuxWeight":
        if c < 0:
            raise ParameterError("constant weight must be nonnegative")
        return cls("constant", c=c)

    @classmethod
    def reciprocal_cap(cls, c) -> "AuxWeight":
        if c < 0:
            raise ParameterError("cap must be nonnegative")
        return cls("reciprocal-cap", c=c)

    @classmethod
    def custom(cls, fn: Callable) -> "AuxWeight":
        return cls("custom", fn=fn)

    def value(self, ctx: "_EvalContext", x, y, z):
        if self.kind == "zero":
            return 0
        if self.kind == "constant":
            return self.c
        if self.kind == "reciprocal-cap":
            denom = ctx.g(x, y, z) * ctx.g(ctx.t(x), ctx.t(y), ctx.t(z))
            if denom == 0:
                return 0
            inv = (Fraction(1) if ctx.space.exact else 1.0) / denom
            return min(self.c, inv)
        v = self.fn(x, y, z)
        if v < 0:
            raise DomainError("custom weight returned a negative value")
        return v

    def label(self) -> str:
        if self.kind in ("constant", "reciprocal-cap"):
            return f"{self.kind}({self.c})"
        return self.kind


@dataclass(frozen=True)
class GaugeFunction:
    """Three-variable gauge; admissibility (monotone, usc, shrinking
    diagonal) is checked by :func:`check_gauge_admissible`, never assumed."""

    evaluate: Callable
    name: str = ""

    def diagonal(self, t):
        return self.evaluate(t, t, t)


@dataclass(frozen=True)
class ConditionSpec:
    """Which contractive condition to evaluate, with its parameters."""

    id: str
    q: Optional[object] = None
    a: Optional[AuxWeight] = None
    h: Optional[GaugeFunction] = None
    alpha: Optional[object] = None
    beta: Optional[object] = None
    delta: Optional[object] = None

    def __post_init__(self):
        if self.id not in CONDITION_IDS:
            raise ParameterError(f"unknown condition id {self.id!r}")
        need_a = self.id in ("C-Q", "C-UNIT", "C-GAUGE")
        if need_a and self.a is None:
            object.__setattr__(self, "a", AuxWeight.zero())
        if not need_a and self.a is not None:
            raise ParameterError(f"{self.id} does not take a weight function")
        if self.id == "C-Q":
            if self.q is None or not 0 < self.q < 1:
                raise ParameterError("C-Q requires q in (0, 1)")
        elif self.q is not None:
            raise ParameterError(f"{self.id} does not take q")
        if self.id == "C-GAUGE":
            if self.h is None:
                raise ParameterError("C-GAUGE requires a gauge function")
        elif self.h is not None:
            raise ParameterError(f"{self.id} does not take a gauge")
        for name, val, lo, hi in (("alpha", self.alpha, 1, 3),
                                  ("beta", self.beta, Fraction(1, 2), 1),
                                  ("delta", self.delta, 0, 1)):
            required = self.id == {"alpha": "EXT-I", "beta": "EXT-II", "delta": "EXT-III"}[name]
            if required:
                if val is None or not lo <= val < hi:
                    raise ParameterError(f"{self.id} requires {name} in [{lo}, {hi})")
            elif val is not None:
                raise ParameterError(f"{self.id} does not take {name}")

    def params_label(self) -> str:
        parts = []
        if self.q is not None:
            parts.append(f"q={self.q}")
        if self.a is not None and self.a.kind != "zero":
            parts.append(f"a={self.a.label()}")
        if self.h is not None:
            parts.append(f"h={self.h.name}")
        for nm in ("alpha", "beta", "delta"):
            v = getattr(self, nm)
            if v is not None:
                parts.append(f"{nm}={v}")
        return ",".join(parts)


@dataclass(frozen=True)
class ConditionVerdict:
    status: str
    lhs: object
    rhs: object
    excluded_terms: tuple = ()
    triple: tuple = ()

    @property
    def holds(self) -> bool:
        return self.status in (HOLDS_STRICT, HOLDS_WEAK, VACUOUS)

    def violation(self):
        return self.lhs - self.rhs


class _EvalContext:
    """Memoized evaluation of G values and map images on normalized points."""

    def __init__(self, space: GMetricSpace, smap: SelfMap):
        if smap.domain != space.carrier:
            raise DomainError("map domain does not match the space carrier")
        self.space = space
        self.smap = smap
        self._g = {}
        self._t = {}

    def t(self, p):
        v = self._t.get(p)
        if v is None:
            v = self.smap.step(p)
            self._t[p] = v
        return v

    def g(self, a, b, c):
        key = (a, b, c)
        v = self._g.get(key)
        if v is None:
            v = raw_g(self.space, a, b, c)
            self._g[key] = v
        return v


def _zero(space: GMetricSpace):
    return Fraction(0) if space.exact else 0.0


def _is_vacuous(space: GMetricSpace, lhs, tol_base: float) -> bool:
    if space.exact:
        return lhs == 0
    return lhs <= tol_base


def _tau(tol_base: float, lhs, rhs) -> float:
    """Strictness slack for float comparisons: tol_base * (1 + |lhs| + |rhs|)."""
    return tol_base * (1.0 + abs(float(lhs)) + abs(float(rhs)))


def _status(space: GMetricSpace, lhs, rhs, strict: bool, tol_base: float) -> str:
    if _is_vacuous(space, lhs, tol_base):
        return VACUOUS
    if space.exact:
        if lhs < rhs:
            return HOLDS_STRICT
        if lhs == rhs and not strict:
            return HOLDS_WEAK
        return FAILS
    tau = _tau(tol_base, lhs, rhs)
    if lhs < rhs - tau:
        return HOLDS_STRICT
    if abs(lhs - rhs) <= tau and not strict:
        return HOLDS_WEAK
    return FAILS


def eval_condition(space: GMetricSpace, smap: SelfMap, spec: ConditionSpec,
                   x, y, z, tol_base: float = DEFAULT_TOL) -> ConditionVerdict:
    """Evaluate one of the majorant conditions (C-Q, C-UNIT, C-GAUGE) on a triple.

    The quantifier behind these conditions requires x != y; passing equal
    points raises DomainError.  A zero left-hand side yields VACUOUS.
    """
    if spec.id not in ("C-Q", "C-UNIT", "C-GAUGE"):
        raise ParameterError(f"eval_condition does not handle {spec.id}; see eval_extension")
    c = space.carrier
    xn, yn, zn = normalize_point(c, x), normalize_point(c, y), normalize_point(c, z)
    if not points_distinct(space, xn, yn, tol_base):
        raise DomainError("condition requires x != y")
    ctx = _EvalContext(space, smap)
    return _eval_majorant(ctx, spec, xn, yn, zn, tol_base)


def _eval_majorant(ctx: _EvalContext, spec: ConditionSpec, x, y, z,
                   tol_base: float) -> ConditionVerdict:
    space = ctx.space
    tx, ty, tz = ctx.t(x), ctx.t(y), ctx.t(z)
    lhs = ctx.g(tx, ty, tz)
    m1 = ctx.g(x, y, z)

    a_val = spec.a.value(ctx, x, y, z)
    if a_val == 0:
        m2 = _zero(space)
    else:
        m2 = a_val * ctx.g(tx, y, z) * ctx.g(x, ty, z) * ctx.g(x, y, tz)

    excluded = ()
    denom = m1 * lhs
    if denom == 0:
        m3 = None
        if not _is_vacuous(space, lhs, tol_base):
            excluded = ("M3",)
    else:
        m3 = ctx.g(x, tx, tx) * ctx.g(y, ty, ty) * ctx.g(z, tz, tz) / denom

    if spec.id == "C-GAUGE":
        m3_arg = m3 if m3 is not None else _zero(space)
        rhs = spec.h.evaluate(m1, m3_arg, m2)
        strict = False
    else:
        cands = [m1, m2] if m3 is None else [m1, m2, m3]
        q = spec.q if spec.id == "C-Q" else 1
        rhs = q * max(cands)
        strict = True

    status = _status(space, lhs, rhs, strict, tol_base)
    return ConditionVerdict(status=status, lhs=lhs, rhs=rhs,
                            excluded_terms=excluded, triple=(x, y, z))


@dataclass
class ExtensionVerdicts:
    i: Optional[ConditionVerdict]
    ii: Optional[ConditionVerdict]
    iii: Optional[ConditionVerdict]
    any_holds: bool


def _eval_ext_single(ctx: _EvalContext, which: str, param, x, y, z,
                     tol_base: float) -> ConditionVerdict:
    space = ctx.space
    tx, ty, tz = ctx.t(x), ctx.t(y), ctx.t(z)
    gx = ctx.g(x, tx, tx)
    gy = ctx.g(y, ty, ty)
    gz = ctx.g(z, tz, tz)
    if which == "EXT-I":
        lhs = gx + gy + gz
        rhs = param * ctx.g(x, y, z)
    elif which == "EXT-II":
        lhs = gx + gy + gz
        rhs = param * (ctx.g(tx, y, z) + ctx.g(x, ty, z) + ctx.g(x, y, tz))
    elif which == "EXT-III":
        cross = ctx.g(tx, y, z) + ctx.g(x, ty, z) + ctx.g(x, y, tz)
        quarter = cross / 4 if space.exact else cross / 4.0
        lhs = ctx.g(tx, ty, tz)
        rhs = param * max(ctx.g(x, y, z), gx, gy, gz, quarter)
    else:
        raise ParameterError(f"unknown extension condition {which!r}")
    status = _status(space, lhs, rhs, strict=False, tol_base=tol_base)
    return ConditionVerdict(status=status, lhs=lhs, rhs=rhs, triple=(x, y, z))


def eval_extension(space: GMetricSpace, smap: SelfMap, x, y, z,
                   alpha=None, beta=None, delta=None,
                   tol_base: float = DEFAULT_TOL) -> ExtensionVerdicts:
    """Evaluate the enabled extension conditions (i)/(ii)/(iii) on a triple.

    A condition is enabled by passing its parameter; at least one must be
    given.  Any triple is admissible (no x != y restriction here).
    """
    if alpha is None and beta is None and delta is None:
        raise ParameterError("enable at least one of alpha, beta, delta")
    for nm, v, lo in (("alpha", alpha, 1), ("beta", beta, Fraction(1, 2)), ("delta", delta, 0)):
        hi = 3 if nm == "alpha" else 1
        if v is not None and not lo <= v < hi:
            raise ParameterError(f"{nm} must lie in [{lo}, {hi})")
    c = space.carrier
    xn, yn, zn = normalize_point(c, x), normalize_point(c, y), normalize_point(c, z)
    ctx = _EvalContext(space, smap)
    vi = _eval_ext_single(ctx, "EXT-I", alpha, xn, yn, zn, tol_base) if alpha is not None else None
    vii = _eval_ext_single(ctx, "EXT-II", beta, xn, yn, zn, tol_base) if beta is not None else None
    viii = _eval_ext_single(ctx, "EXT-III", delta, xn, yn, zn, tol_base) if delta is not None else None
    any_holds = any(v is not None and v.holds for v in (vi, vii, viii))
    return ExtensionVerdicts(i=vi, ii=vii, iii=viii, any_holds=any_holds)


@dataclass
class FactorReport:
    lam: object
    factors: dict
    admissible: bool
    mode: str


def contraction_factor(alpha, beta, delta, mode: str = "paper") -> FactorReport:
    """Per-step contraction factor implied by the extension conditions.

    ``paper`` mode combines the three per-condition factors with min;
    ``sound`` mode combines with max and flags the parameters as
    inadmissible when any factor reaches 1 (the middle factor
    (2*beta-1)/(2-2*beta) does so for beta >= 3/4).
    """
    if not 1 <= alpha < 3:
        raise ParameterError("alpha must lie in [1, 3)")
    if not Fraction(1, 2) <= beta < 1:
        raise ParameterError("beta must lie in [1/2, 1)")
    if not 0 <= delta < 1:
        raise ParameterError("delta must lie in [0, 1)")
    if mode not in ("paper", "sound"):
        raise ParameterError(f"unknown mode {mode!r}")
    f1 = (alpha - 1) / 2
    f2 = (2 * beta - 1) / (2 - 2 * beta)
    f3 = delta
    factors = {"i": f1, "ii": f2, "iii": f3}
    admissible = all(f < 1 for f in factors.values())
    lam = min(factors.values()) if mode == "paper" else max(factors.values())
    return FactorReport(lam=lam, factors=factors, admissible=admissible, mode=mode)


@dataclass
class GaugeReport:
    monotone: Verdict
    usc_heuristic: Verdict
    diagonal_strict: Verdict
    iterates_vanish: Verdict
    equivalence_consistent: bool
    details: dict = field(default_factory=dict)

    def admissible(self) -> bool:
        """All non-heuristic verdicts pass and the two diagonal views agree."""
        return (self.monotone.passed and self.diagonal_strict.passed
                and self.iterates_vanish.passed and self.equivalence_consistent)


def check_gauge_admissible(h: GaugeFunction, ts, n_max: int = 500,
                           thresh: float = 1e-8,
                           tol_base: float = DEFAULT_TOL) -> GaugeReport:
    """Grid-check the gauge admissibility requirements.

    * monotone: h nondecreasing in each argument over all grid pairs;
    * diagonal_strict: g(t) = h(t,t,t) < t at every grid point;
    * iterates_vanish: iterating g from each grid point either reaches
      ``thresh`` within ``n_max`` steps or is still making strict progress
      at the horizon (no stall at a positive value).  A sequence stalled
      at a positive near-fixed value fails, which is exactly the behavior
      that separates shrinking diagonals from non-shrinking ones;
    * usc_heuristic: a refining-grid upper-semicontinuity probe along the
      diagonal, labeled heuristic;
    * equivalence_consistent: diagonal_strict and iterates_vanish agree,
      the grid-testable face of the "g(t) < t iff iterates vanish" dichotomy.
    """
    ts = sorted(set(float(t) for t in ts))
    if not ts:
        raise ParameterError("gauge check requires a nonempty grid")
    if any(t <= 0 for t in ts):
        raise ParameterError("grid values must be positive")
    if n_max < 1:
        raise ParameterError("n_max must be at least 1")
    if thresh <= 0:
        raise ParameterError("thresh must be positive")

    # monotone in each variable slot, all grid pairs, other slots on the grid
    monotone = Verdict(PASS)
    for slot in range(3):
        if monotone.status == FAIL:
            break
        for lo_i in range(len(ts)):
            if monotone.status == FAIL:
                break
            for hi_i in range(lo_i + 1, len(ts)):
                lo_t, hi_t = ts[lo_i], ts[hi_i]
                done = False
                for u in ts:
                    for v in ts:
                        args_lo = [u, v]
                        args_lo.insert(slot, lo_t)
                        args_hi = [u, v]
                        args_hi.insert(slot, hi_t)
                        a = h.evaluate(*args_lo)
                        b = h.evaluate(*args_hi)
                        if a > b + scaled_tol(tol_base, a, b):
                            monotone = Verdict(FAIL, witness=(slot, lo_t, hi_t, u, v),
                                               values=(a, b))
                            done = True
                            break
                    if done:
                        break
                if done:
                    break

    diag = Verdict(PASS)
    for t in ts:
        gt = h.diagonal(t)
        if not gt < t - scaled_tol(tol_base, t, gt):
            diag = Verdict(FAIL, witness=(t,), values=(gt,))
            break

    vanish = Verdict(PASS)
    iterate_details = {}
    for t in ts:
        v = float(t)
        hit = None
        for i in range(1, n_max + 1):
            v = h.diagonal(v)
            if v <= thresh:
                hit = i
                break
        if hit is not None:
            iterate_details[t] = {"hit_iteration": hit, "final": v, "stalled": False}
            continue
        progress = v - h.diagonal(v)
        stalled = progress <= thresh * (1.0 + abs(v))
        iterate_details[t] = {"hit_iteration": None, "final": v, "stalled": stalled}
        if stalled or not v < t:
            vanish = Verdict(FAIL, witness=(t,), values=(v,))
            break

    # usc probe: on a refining ladder toward t from either side, the excess
    # of the approach values over g(t) must decay; a persistent excess is a
    # jump up at t, which upper semicontinuity forbids.
    usc = Verdict(PASS, note="heuristic")
    for t in ts:
        gt = h.diagonal(t)
        jump = False
        for sign in (1.0, -1.0):
            ladder = [t + sign * t * 1e-3 * (2.0 ** -j) for j in range(6)]
            ladder = [p for p in ladder if p > 0]
            if not ladder:
                continue
            excesses = [h.diagonal(p) - gt for p in ladder]
            floor = 1e-9 * (1.0 + abs(gt))
            if excesses[-1] > floor and excesses[-1] > 0.6 * excesses[0]:
                usc = Verdict(FAIL, witness=(t,), values=(gt, gt + excesses[-1]),
                              note="heuristic")
                jump = True
                break
        if jump:
            break

    return GaugeReport(
        monotone=monotone, usc_heuristic=usc, diagonal_strict=diag,
        iterates_vanish=vanish,
        equivalence_consistent=(diag.passed == vanish.passed),
        details={"iterates": iterate_details, "grid": ts,
                 "n_max": n_max, "thresh": thresh})


@dataclass
class UniquenessReport:
    v: Verdict
    vi: Verdict
    checked: int

    def both_hold(self) -> bool:
        return self.v.passed and self.vi.passed

    def any_holds(self) -> bool:
        return self.v.passed or self.vi.passed


def check_uniqueness_conditions(space: GMetricSpace, smap: SelfMap, xi,
                                sample, tol: float = 1e-9,
                                tol_base: float = DEFAULT_TOL) -> UniquenessReport:
    """Check the two strict separation conditions that force uniqueness.

    For every sampled x != xi:
      (v)  G(xi, Tx, Tx) < G(x, x, xi) + G(x, Tx, Tx)
      (vi) G(xi, x, x)  < G(xi, Tx, Tx) + G(x, Tx, Tx)

    ``xi`` must be approximately fixed: G(xi, T xi, T xi) <= tol.
    """
    c = space.carrier
    xin = normalize_point(c, xi)
    ctx = _EvalContext(space, smap)
    residual = ctx.g(xin, ctx.t(xin), ctx.t(xin))
    if residual > tol:
        raise DomainError(f"xi is not approximately fixed (residual {residual})")

    def strictly_below(lhs, rhs):
        if space.exact:
            return lhs < rhs
        return lhs < rhs - _tau(tol_base, lhs, rhs)

    v_verdict = Verdict(PASS)
    vi_verdict = Verdict(PASS)
    checked = 0
    for p in sample:
        pn = normalize_point(c, p)
        if not points_distinct(space, pn, xin, tol_base):
            continue
        checked += 1
        tp = ctx.t(pn)
        g_xtp = ctx.g(xin, tp, tp)
        g_ptp = ctx.g(pn, tp, tp)
        if v_verdict.passed:
            rhs = ctx.g(pn, pn, xin) + g_ptp
            if not strictly_below(g_xtp, rhs):
                v_verdict = Verdict(FAIL, witness=(pn,), values=(g_xtp, rhs))
        if vi_verdict.passed:
            lhs = ctx.g(xin, pn, pn)
            rhs = g_xtp + g_ptp
            if not strictly_below(lhs, rhs):
                vi_verdict = Verdict(FAIL, witness=(pn,), values=(lhs, rhs))
    return UniquenessReport(v=v_verdict, vi=vi_verdict, checked=checked)


def check_aux_bound(space: GMetricSpace, smap: SelfMap, a: AuxWeight,
                    triples, tol_base: float = DEFAULT_TOL) -> Verdict:
    """Pointwise check of the uniqueness hypothesis a <= 1/(G * G') on a
    collection of triples, skipping triples where the denominator vanishes."""
    ctx = _EvalContext(space, smap)
    c = space.carrier
    for (x, y, z) in triples:
        xn, yn, zn = normalize_point(c, x), normalize_point(c, y), normalize_point(c, z)
        denom = ctx.g(xn, yn, zn) * ctx.g(ctx.t(xn), ctx.t(yn), ctx.t(zn))
        if denom == 0:
            continue
        bound = (Fraction(1) if space.exact else 1.0) / denom
        a_val = a.value(ctx, xn, yn, zn)
        if space.exact:
            violated = a_val > bound
        else:
            violated = a_val > bound + _tau(tol_base, a_val, bound)
        if violated:
            return Verdict(FAIL, witness=(xn, yn, zn), values=(a_val, bound))
    return Verdict(PASS)


def _triple_sort_key(verdict: ConditionVerdict):
    key_pts = tuple(p if isinstance(p, tuple) else (p,) for p in verdict.triple)
    return (-(verdict.lhs - verdict.rhs), key_pts)


@dataclass
class Certificate:
    """Aggregate outcome of evaluating a condition over sampled triples."""

    condition_id: str
    params: str
    checked: int
    holds_strict: int
    holds_weak: int
    vacuous: int
    fails: int
    worst: list
    excluded_term_count: int

    @property
    def holds(self) -> int:
        return self.holds_strict + self.holds_weak + self.vacuous


def certify_on_samples(space: GMetricSpace, smap: SelfMap, spec: ConditionSpec,
                       sampler: Iterable, count: int,
                       tol_base: float = DEFAULT_TOL, worst_cap: int = 10) -> Certificate:
    """Evaluate a condition on ``count`` sampled triples and aggregate.

    The sampler must respect the x != y constraint for the majorant
    conditions.  The worst violations (up to ``worst_cap``) are kept,
    canonically ordered by decreasing violation then triple, so the
    aggregate does not depend on how the stream was partitioned.
    """
    ctx = _EvalContext(space, smap)
    ext_param = {"EXT-I": spec.alpha, "EXT-II": spec.beta, "EXT-III": spec.delta}.get(spec.id)

    tallies = {HOLDS_STRICT: 0, HOLDS_WEAK: 0, VACUOUS: 0, FAILS: 0}
    worst = []
    excluded = 0
    checked = 0
    norm = space.carrier
    for (x, y, z) in islice(sampler, count):
        xn, yn, zn = normalize_point(norm, x), normalize_point(norm, y), normalize_point(norm, z)
        if ext_param is not None:
            verdict = _eval_ext_single(ctx, spec.id, ext_param, xn, yn, zn, tol_base)
        else:
            if not points_distinct(space, xn, yn, tol_base):
                raise DomainError("sampler produced a triple with x == y")
            verdict = _eval_majorant(ctx, spec, xn, yn, zn, tol_base)
        checked += 1
        tallies[verdict.status] += 1
        excluded += len(verdict.excluded_terms)
        if verdict.status == FAILS:
            worst.append(verdict)

    worst.sort(key=_triple_sort_key)
    return Certificate(
        condition_id=spec.id, params=spec.params_label(), checked=checked,
        holds_strict=tallies[HOLDS_STRICT], holds_weak=tallies[HOLDS_WEAK],
        vacuous=tallies[VACUOUS], fails=tallies[FAILS],
        worst=worst[:worst_cap], excluded_term_count=excluded)
