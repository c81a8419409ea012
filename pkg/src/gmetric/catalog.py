"""Built-in spaces, self-maps, gauges, and weight functions.

Catalog names are plain strings so they can appear in run configs.
Parameterized entries encode their parameter in the name: ``scale-0.5``,
``constant-3``, ``finite-uniform-4``, ``linear-0.9``, ``reciprocal-cap-2``.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import ConfigError
from .conditions import AuxWeight, GaugeFunction
from .dynamics import SelfMap
from .oracle import FiniteMetric, build_gmetric
from .spaces import FiniteCarrier, GMetricSpace, RealCarrier

# The half-line with G = max pairwise absolute difference. This is the
# home of the worked moebius example; scale/step/constant maps live here too.
_NONNEG = RealCarrier(dim=1, lo=0.0)


def _absmax_g(x, y, z):
    return max(abs(x - y), abs(y - z), abs(z - x))


def _perimeter_g(x, y, z):
    return abs(x - y) + abs(y - z) + abs(z - x)


def space_absmax() -> GMetricSpace:
    return GMetricSpace(carrier=_NONNEG, g=_absmax_g, name="absmax")


def space_perimeter() -> GMetricSpace:
    return GMetricSpace(carrier=RealCarrier(dim=1), g=_perimeter_g, name="perimeter-r")


def space_drop_z() -> GMetricSpace:
    """Deliberately broken: ignores its third argument, so two equal
    leading points always give 0 and the positivity axiom fails."""
    return GMetricSpace(carrier=RealCarrier(dim=1), g=lambda x, y, z: abs(x - y),
                        symmetric_claimed=False, name="drop-z")


def space_finite_uniform(m: int) -> GMetricSpace:
    space = build_gmetric(FiniteMetric.uniform(m), "max")
    return GMetricSpace(carrier=space.carrier, g=space.g, arithmetic=space.arithmetic,
                        symmetric_claimed=True, name=f"finite-uniform-{m}")


def get_space(name: str) -> GMetricSpace:
    if name == "absmax":
        return space_absmax()
    if name == "perimeter-r":
        return space_perimeter()
    if name == "drop-z":
        return space_drop_z()
    if name.startswith("finite-uniform-"):
        try:
            m = int(name.rsplit("-", 1)[1])
        except ValueError:
            raise ConfigError(f"bad finite-uniform size in {name!r}")
        if m < 1:
            raise ConfigError(f"finite-uniform size must be positive, got {m}")
        return space_finite_uniform(m)
    raise ConfigError(f"unknown space {name!r}")


def standard_sample(space: GMetricSpace):
    """Default point sample used for sampled axiom checks."""
    if isinstance(space.carrier, FiniteCarrier):
        return list(range(space.carrier.size))
    pts = [0.0, 0.5, 1.0, 2.0, 3.7, 10.0, 100.0]
    lo = space.carrier.lo
    if lo is not None:
        pts = [p for p in pts if p >= lo]
    return pts


def _parse_param(name: str, prefix: str) -> str:
    return name[len(prefix):]


def get_map(name: str, space: GMetricSpace) -> SelfMap:
    """Resolve a catalog map name against a space's carrier."""
    carrier = space.carrier
    finite = isinstance(carrier, FiniteCarrier)
    if name == "identity":
        return SelfMap(domain=carrier, apply=lambda p: p, name="identity")
    if name.startswith("constant-"):
        raw = _parse_param(name, "constant-")
        if finite:
            c = int(raw)
            if not 0 <= c < carrier.size:
                raise ConfigError(f"constant {c} outside carrier")
        else:
            c = float(raw)
        return SelfMap(domain=carrier, apply=lambda p: c, name=name)
    if finite:
        raise ConfigError(f"map {name!r} needs a real carrier")
    if carrier.dim != 1:
        raise ConfigError(f"map {name!r} needs a one-dimensional carrier")
    if name == "moebius":
        return SelfMap(domain=carrier, apply=lambda x: x / (x + 1.0), name="moebius")
    if name == "step":
        return SelfMap(domain=carrier, apply=lambda x: 0.0 if x <= 1.0 else 1.0, name="step")
    if name.startswith("scale-"):
        c = float(_parse_param(name, "scale-"))
        if carrier.lo is not None and carrier.lo >= 0 and c < 0:
            raise ConfigError(f"scale factor {c} leaves the carrier")
        return SelfMap(domain=carrier, apply=lambda x: c * x, name=name)
    raise ConfigError(f"unknown map {name!r}")


def _ratio1(t1, t2, t3):
    return t1 / (t1 + 1)


def _half_max(t1, t2, t3):
    return max(t1, t2, t3) / 2


def _first(t1, t2, t3):
    return t1


def get_gauge(name: str) -> GaugeFunction:
    if name == "ratio1":
        return GaugeFunction(evaluate=_ratio1, name="ratio1")
    if name == "half":
        return GaugeFunction(evaluate=_half_max, name="half")
    if name == "identity-diag":
        return GaugeFunction(evaluate=_first, name="identity-diag")
    if name.startswith("linear-"):
        c = Fraction(_parse_param(name, "linear-"))
        if not 0 <= c:
            raise ConfigError("linear gauge factor must be nonnegative")
        return GaugeFunction(evaluate=lambda t1, t2, t3: c * t1, name=name)
    raise ConfigError(f"unknown gauge {name!r}")


def get_aux(name: str) -> AuxWeight:
    if name == "zero":
        return AuxWeight.zero()
    if name.startswith("constant-"):
        return AuxWeight.constant(Fraction(_parse_param(name, "constant-")))
    if name.startswith("reciprocal-cap-"):
        return AuxWeight.reciprocal_cap(Fraction(_parse_param(name, "reciprocal-cap-")))
    raise ConfigError(f"unknown weight function {name!r}")


CATALOG = {
    "spaces": ("absmax", "perimeter-r", "drop-z", "finite-uniform-<m>"),
    "maps": ("moebius", "identity", "step", "scale-<c>", "constant-<c>"),
    "gauges": ("ratio1", "half", "identity-diag", "linear-<c>"),
    "weights": ("zero", "constant-<c>", "reciprocal-cap-<c>"),
}
