# -*- coding: utf-8 -*-
"""
Rate regions of the 3-way channel and of its star (Y) equivalent.

Every region is a downward-closed polytope

    { R >= 0 : coeffs . R <= rhs for every bound }

where each `LinearBound` has 0/1 coefficients over the six rates in
canonical `triway.core.Direction` order. The eight rate patterns shared by
the outer bound, the approximate capacity region and the achievable regions
are, in order,

    R31+R32, R13+R23,
    R12+R13+R32, R12+R13+R23, R21+R23+R13,
    R21+R23+R31, R31+R32+R21, R31+R32+R12

so that regions built here can be compared bound by bound.

Region builders
---------------

* `theorem1_region`: the approximate capacity region.
* `lemma1_outer`: the relaxed cut-set and genie-aided outer bound.
* `cutset_region`: the Gaussian-input cut-set bounds, exact or relaxed.
* `prop1_y_region`: achievable region of the star channel with successive
  channel decomposition into `Ñ1` sub-channels.
* `prop2_3wc_region`: the same scheme mapped back to the 3-way channel via
  `y_of_3wc`, ungrouped or with grouped sub-channels.
* `special_case_region`: frontier samples of the cooperative MAC and BC
  scenarios of `triway.baselib.scenarios` with their comparator.

Regions serialize to JSON-ready dictionaries with `Region.to_dict`.

"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

import triway.baselib.scenarios  # noqa: F401  registers the scenario library
from triway.core import (DIRECTIONS, Convention, Direction, DomainError, FeasibilityError, RateTuple,
                         SnrTriple, cap, cap_hat, rate_label)
from triway.scenarios import Scenario

logger = logging.getLogger(__name__)

FLOOR_GUARD = 1e-12
WINDOW_TOL = 1e-9

# Rate patterns in the order used by every builder.
PATTERNS: Tuple[Tuple[int, ...], ...] = (
    (0, 1, 0, 1, 0, 0),  # R31+R32
    (0, 0, 0, 0, 1, 1),  # R13+R23
    (0, 0, 1, 1, 1, 0),  # R12+R13+R32
    (0, 0, 1, 0, 1, 1),  # R12+R13+R23
    (1, 0, 0, 0, 1, 1),  # R21+R23+R13
    (1, 1, 0, 0, 0, 1),  # R21+R23+R31
    (1, 1, 0, 1, 0, 0),  # R31+R32+R21
    (0, 1, 1, 1, 0, 0),  # R31+R32+R12
)
TWO_RATE = (0, 1)
STRONG_THREE_RATE = (2, 3, 5, 6)
CROSS_THREE_RATE = (4, 7)


class RegionKind(Enum):
    OUTER = "Outer"
    APPROX = "Approx"
    ACHIEVABLE = "Achievable"
    PARAMETRIZED = "Parametrized"


@dataclass(frozen=True)
class LinearBound:
    """A single inequality coeffs . R <= rhs."""
    coeffs: Tuple[int, ...]
    rhs: float
    label: str

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != 6 or any(c not in (0, 1) for c in coeffs):
            raise DomainError("bound coefficients must be six 0/1 entries, got %r" % (self.coeffs,))
        if sum(coeffs) == 0:
            raise DomainError("bound %r has no unit coefficient" % self.label)
        if not math.isfinite(self.rhs):
            raise DomainError("bound %r has a non-finite rhs" % self.label)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "rhs", float(self.rhs))

    @property
    def pattern(self) -> str:
        return rate_label(self.coeffs)

    @property
    def size(self) -> int:
        return sum(self.coeffs)

    def value(self, r) -> float:
        return float(np.dot(self.coeffs, list(r)))

    def to_dict(self) -> dict:
        return {"coeffs": list(self.coeffs), "rhs": self.rhs, "label": self.label}


@dataclass(frozen=True)
class Region:
    bounds: Tuple[LinearBound, ...]
    kind: RegionKind
    snr: Optional[SnrTriple] = None
    meta: Dict = field(default_factory=dict, compare=False)

    @property
    def A(self) -> np.ndarray:
        return np.array([b.coeffs for b in self.bounds], dtype=float).reshape(-1, 6)

    @property
    def b(self) -> np.ndarray:
        return np.array([b.rhs for b in self.bounds], dtype=float)

    @property
    def rhs(self) -> List[float]:
        return [b.rhs for b in self.bounds]

    def bound(self, pattern: str) -> LinearBound:
        """
        The bound with the given rate pattern, e.g. 'R31+R32'.
        Patterns are compared in canonical direction order.
        """
        key = _canonical_pattern(pattern)
        for bnd in self.bounds:
            if bnd.pattern == key:
                return bnd
        raise KeyError(pattern)

    def restrict(self, keep: Sequence) -> "Region":
        """
        Restriction to the rates in `keep`; the other rates are fixed at 0
        by additional unit bounds. Rates are `Direction` members or their names.
        """
        keep = {k if isinstance(k, Direction) else Direction.parse(str(k)) for k in keep}
        extra = []
        for d in DIRECTIONS:
            if d not in keep:
                coeffs = [0] * 6
                coeffs[d.index] = 1
                extra.append(LinearBound(tuple(coeffs), 0.0, "fix:%s" % d.name))
        meta = dict(self.meta)
        meta["restricted_to"] = [d.name for d in DIRECTIONS if d in keep]
        return Region(self.bounds + tuple(extra), self.kind, self.snr, meta)

    def to_dict(self) -> dict:
        return {"snr": self.snr.to_dict() if self.snr is not None else None,
                "kind": self.kind.value,
                "bounds": [b.to_dict() for b in self.bounds],
                "meta": dict(self.meta)}

    @classmethod
    def from_dict(cls, d: dict) -> "Region":
        snr = SnrTriple.from_dict(d["snr"]) if d.get("snr") else None
        bounds = tuple(LinearBound(tuple(b["coeffs"]), b["rhs"], b["label"]) for b in d["bounds"])
        return cls(bounds, RegionKind(d["kind"]), snr, dict(d.get("meta", {})))


def _canonical_pattern(pattern: str) -> str:
    names = {p.strip().upper() for p in pattern.split("+")}
    return "+".join(d.name for d in DIRECTIONS if d.name in names)


def _region(rhs: Sequence[float], family: str, kind: RegionKind, s: SnrTriple, meta=None) -> Region:
    bounds = tuple(LinearBound(c, max(0.0, r), "%s:%s" % (family, rate_label(c)))
                   for c, r in zip(PATTERNS, rhs))
    meta = dict(meta or {})
    clamped = [b.label for b, r in zip(bounds, rhs) if r < 0]
    if clamped:
        meta["clamped"] = clamped
    return Region(bounds, kind, s, meta)


def _require(s: SnrTriple, convention: Convention):
    if not isinstance(s, SnrTriple):
        raise DomainError("expected an SnrTriple, got %r" % (s,))
    if s.convention != convention:
        raise DomainError("expected a %s triple, got %s" % (convention.value, s.convention.value))


def _cross_snr(s: SnrTriple) -> float:
    return s.g3 * (s.g2 / s.g1)


def open_window_integers(lo: float, hi: float) -> List[int]:
    """Integers strictly inside (lo, hi), robust to rounding at the endpoints."""
    if not math.isfinite(lo) or hi <= lo:
        return []
    start = math.floor(lo + WINDOW_TOL) + 1
    stop = math.ceil(hi - WINDOW_TOL) - 1
    return list(range(start, stop + 1))


def level_count(n_top: int, log_top: float, log_i: float) -> int:
    """floor(n_top * log_i / log_top) with a guard band at exact powers."""
    x = n_top * log_i / log_top
    return int(math.floor(x + FLOOR_GUARD * max(1.0, abs(x))))


def theorem1_region(s: SnrTriple) -> Region:
    """
    Approximate capacity region of the 3-way channel.

    Parameters
    ----------
    s : SnrTriple
        ThreeWay triple.

    Returns
    -------
    Region
        Eight bounds with rhs C^(g2) (twice), C^(g3) (four times) and
        C^(g3 g2 / g1) (twice).

    """
    _require(s, Convention.THREE_WAY)
    c2, c3, cx = cap_hat(s.g2), cap_hat(s.g3), cap_hat(_cross_snr(s))
    rhs = [c2, c2, c3, c3, cx, c3, c3, cx]
    return _region(rhs, "approx", RegionKind.APPROX, s)


def lemma1_outer(s: SnrTriple) -> Region:
    """
    Outer bound: relaxed cut-set bounds on the two 2-rate patterns
    (+3/2 on R31+R32, +1 on R13+R23) and genie-aided bounds with +2 slack.
    """
    _require(s, Convention.THREE_WAY)
    c2, c3, cx = cap_hat(s.g2), cap_hat(s.g3), cap_hat(_cross_snr(s))
    rhs = [c2 + 1.5, c2 + 1.0, c3 + 2, c3 + 2, cx + 2, c3 + 2, c3 + 2, cx + 2]
    region = _region(rhs, "genie", RegionKind.OUTER, s)
    bounds = list(region.bounds)
    for k in TWO_RATE:
        bounds[k] = LinearBound(bounds[k].coeffs, bounds[k].rhs, "cutset:" + bounds[k].pattern)
    return Region(tuple(bounds), RegionKind.OUTER, s, {})


def cutset_region(s: SnrTriple, relaxed: bool = False) -> Region:
    """
    Cut-set bounds with Gaussian inputs for each of the three nodes.

    Node i broadcasting to j and k gives R_ji + R_ki <= C(g_j + g_k); the two
    others transmitting coherently to node i give R_ij + R_ik <= C((sqrt(g_j)+sqrt(g_k))^2),
    where g_k is the SNR of the link between i and j. The relaxed forms replace
    these by C^(max) + 1 and C^(max) + 3/2.
    """
    _require(s, Convention.THREE_WAY)
    g = {1: s.g1, 2: s.g2, 3: s.g3}
    bounds = []
    for i in (1, 2, 3):
        j, k = [u for u in (1, 2, 3) if u != i]
        # link i<->j has SNR g[k], link i<->k has SNR g[j]
        out_coeffs = [0] * 6
        in_coeffs = [0] * 6
        for other in (j, k):
            out_coeffs[Direction.of(i, other).index] = 1
            in_coeffs[Direction.of(other, i).index] = 1
        strongest = max(g[j], g[k])
        if relaxed:
            out_rhs = cap_hat(strongest) + 1.0
            in_rhs = cap_hat(strongest) + 1.5
        else:
            out_rhs = cap(g[j] + g[k])
            in_rhs = cap((math.sqrt(g[j]) + math.sqrt(g[k])) ** 2)
        bounds.append(LinearBound(tuple(out_coeffs), out_rhs, "cutset-out%d:%s" % (i, rate_label(out_coeffs))))
        bounds.append(LinearBound(tuple(in_coeffs), in_rhs, "cutset-in%d:%s" % (i, rate_label(in_coeffs))))
    return Region(tuple(bounds), RegionKind.OUTER, s, {"relaxed": bool(relaxed)})


def admissible_n1_tilde(s: SnrTriple) -> List[int]:
    """Integers strictly inside (log g1/log g3, log2 g1) for a Ystar triple."""
    _require(s, Convention.YSTAR)
    lo, hi = n1_tilde_window(s)
    return open_window_integers(lo, hi)


def n1_tilde_window(s: SnrTriple) -> Tuple[float, float]:
    lo = math.log2(s.g1) / math.log2(s.g3) if s.g3 > 1 else math.inf
    hi = math.log2(s.g1) if s.g1 > 1 else 0.0
    return lo, hi


def y_levels(s: SnrTriple, n1_tilde: int) -> Tuple[float, int, int, int]:
    """
    Sub-channel SNR gamma and counts (Ñ1, Ñ2, Ñ3) of the star channel.
    """
    _require(s, Convention.YSTAR)
    log1 = math.log2(s.g1)
    gamma = s.g1 ** (1.0 / n1_tilde)
    n2 = level_count(n1_tilde, log1, math.log2(s.g2))
    n3 = level_count(n1_tilde, log1, math.log2(s.g3))
    return gamma, n1_tilde, n2, n3


def prop1_y_region(s: SnrTriple, n1_tilde: int, grouped: bool = False) -> Region:
    """
    Achievable region of the star channel with Ñ1 successive sub-channels.

    Parameters
    ----------
    s : SnrTriple
        Ystar triple (g1 >= g2 >= g3).
    n1_tilde : int
        Number of sub-channels of the strongest user.
    grouped : bool, optional
        Use grouped sub-channels (loss 3 on 2-rate and 9/2 on 3-rate bounds).
        The default is False.

    Returns
    -------
    Region

    """
    _require(s, Convention.YSTAR)
    lo, hi = n1_tilde_window(s)
    admissible = open_window_integers(lo, hi)
    if n1_tilde not in admissible:
        raise FeasibilityError("Ñ1=%r outside the window (%.6g, %.6g); admissible: %s"
                               % (n1_tilde, lo, hi, admissible), (lo, hi), admissible)
    gamma, n1, n2, n3 = y_levels(s, n1_tilde)
    if gamma <= 2 or n2 < 1 or n3 < 1:
        raise FeasibilityError("Ñ1=%d gives gamma=%.6g, Ñ2=%d, Ñ3=%d" % (n1, gamma, n2, n3),
                               (lo, hi), admissible)
    c1, c2, c3 = cap_hat(s.g1), cap_hat(s.g2), cap_hat(s.g3)
    if grouped:
        l2, l3, lx = 3.0, 4.5, 4.5
    else:
        l2, l3, lx = n3 / 2, n2 / 2, n1 / 2
    rhs = [c3 - l2, c3 - l2, c2 - l3, c2 - l3, c1 - lx, c2 - l3, c2 - l3, c1 - lx]
    meta = {"N1_tilde": n1, "N2_tilde": n2, "N3_tilde": n3, "gamma": gamma, "grouped": bool(grouped)}
    return _region(rhs, "y-grouped" if grouped else "y-scd", RegionKind.ACHIEVABLE, s, meta)


def y_of_3wc(s: SnrTriple) -> SnrTriple:
    """
    Delta-star transformation (g1, g2, g3) -> (g3 g2 / g1, g3, g2).
    """
    _require(s, Convention.THREE_WAY)
    return SnrTriple(_cross_snr(s), s.g3, s.g2, Convention.YSTAR)


def prop2_window(s: SnrTriple) -> Tuple[float, float]:
    """Real window (log g3 / log g1, log g3 / log 3) of N3."""
    _require(s, Convention.THREE_WAY)
    lo = math.log2(s.g3) / math.log2(s.g1) if s.g1 > 1 else math.inf
    hi = math.log2(s.g3) / math.log2(3.0) if s.g3 > 1 else 0.0
    return lo, hi


def admissible_n3(s: SnrTriple) -> List[int]:
    """
    All integers strictly inside the N3 window; possibly empty.

    A nonempty real window (g1 > 3) does not guarantee an integer in it,
    e.g. (4, 16, 64) has window (3, 3.786).
    """
    lo, hi = prop2_window(s)
    return open_window_integers(lo, hi)


def prop2_levels(s: SnrTriple, n3: int) -> Tuple[float, int, int, int]:
    """gamma and (N1, N2, N3) of the 3-way channel decomposition."""
    _require(s, Convention.THREE_WAY)
    log3 = math.log2(s.g3)
    gamma = s.g3 ** (1.0 / n3)
    n1 = level_count(n3, log3, math.log2(s.g1))
    n2 = level_count(n3, log3, math.log2(s.g2))
    return gamma, n1, n2, n3


def n_tilde_of_3wc(n1: int, n2: int, n3: int) -> Tuple[int, int, int]:
    """Star channel counts (N3+N2-N1, N3, N2) of the extended Y-channel."""
    return n3 + n2 - n1, n3, n2


def prop2_3wc_region(s: SnrTriple, n3: int, grouped: bool = False) -> Region:
    """
    Achievable region of the 3-way channel.

    Parameters
    ----------
    s : SnrTriple
        ThreeWay triple.
    n3 : int
        Number of sub-channels of the strongest link, inside `admissible_n3(s)`.
    grouped : bool, optional
        Replace the N*C^(3) losses by 6 C^(3) on 2-rate bounds and 9 C^(3)
        on 3-rate bounds. The default is False.

    Returns
    -------
    Region

    """
    _require(s, Convention.THREE_WAY)
    lo, hi = prop2_window(s)
    admissible = open_window_integers(lo, hi)
    if not admissible:
        raise FeasibilityError("empty N3 window (%.6g, %.6g) at %s" % (lo, hi, s.as_tuple()),
                               (lo, hi), admissible)
    if n3 not in admissible:
        raise FeasibilityError("N3=%r outside the window (%.6g, %.6g); admissible: %s"
                               % (n3, lo, hi, admissible), (lo, hi), admissible)
    gamma, n1, n2, n3 = prop2_levels(s, n3)
    unit = cap_hat(3)
    c2, c3, cx = cap_hat(s.g2), cap_hat(s.g3), cap_hat(_cross_snr(s))
    if grouped:
        l2, l3, lx = 6 * unit, 9 * unit, 9 * unit
    else:
        l2, l3, lx = n2 * unit, n3 * unit, (n3 + n2 - n1) * unit
    rhs = [c2 - l2, c2 - l2, c3 - l3, c3 - l3, cx - lx, c3 - l3, c3 - l3, cx - lx]
    meta = {"N1": n1, "N2": n2, "N3": n3, "gamma": gamma, "grouped": bool(grouped)}
    if grouped:
        meta["derived_constants"] = True
    return _region(rhs, "grouped-scd" if grouped else "scd", RegionKind.ACHIEVABLE, s, meta)


def adaptation_gap(g1: float, g2: float) -> float:
    """
    Rate lost without adaptation, C^(g2) - C(g1), clamped at 0.
    Equals 1/2 log2(g2 / (1 + g1)) whenever g2 >= 1 + g1.
    """
    return max(0.0, cap_hat(g2) - cap(g1))


def sum_capacity(s: SnrTriple) -> Tuple[float, RateTuple]:
    """
    Sum-capacity approximation 2 C^(g3) and the two-way exchange between
    users 1 and 2 achieving it inside `theorem1_region`.
    """
    _require(s, Convention.THREE_WAY)
    c3 = cap_hat(s.g3)
    return 2 * c3, RateTuple.from_mapping({"R12": c3, "R21": c3})


SPECIAL_CASES = {
    "MacConferencing": "MAC_CONF",
    "MacInband": "MAC_INBAND",
    "BcCoop": "BC_COOP",
}


@dataclass(frozen=True)
class SpecialCaseResult:
    kind: str
    frontier: Tuple[RateTuple, ...]
    comparator: Region

    @property
    def max_sum_rate(self) -> float:
        return max((r["R31"] + r["R32"] for r in self.frontier), default=0.0)

    @property
    def sum_rate_gap(self) -> float:
        """Distance between the best sampled sum-rate and the comparator bound."""
        return abs(self.max_sum_rate - self.comparator.bounds[0].rhs)

    def to_dict(self) -> dict:
        return {"kind": self.kind,
                "frontier": [[r["R31"], r["R32"]] for r in self.frontier],
                "comparator": self.comparator.to_dict(),
                "sum_rate_gap": self.sum_rate_gap}


def two_user_comparator(s: SnrTriple) -> Region:
    """R31 + R32 <= C^(g2) with the other four rates fixed at 0."""
    _require(s, Convention.THREE_WAY)
    region = Region((LinearBound(PATTERNS[0], cap_hat(s.g2), "approx:R31+R32"),),
                    RegionKind.APPROX, s, {})
    return region.restrict([d for d in DIRECTIONS if d.name in ("R31", "R32")])


def special_case_region(kind: str, s: SnrTriple, grid_resolution: int = 64, **params) -> SpecialCaseResult:
    """
    Sampled Pareto frontier of a cooperative MAC / BC scenario and its comparator.

    Parameters
    ----------
    kind : str
        'MacConferencing', 'MacInband', 'BcCoop' or a registered scenario name.
    s : SnrTriple
        ThreeWay triple.
    grid_resolution : int, optional
        Points per parameter dimension. The default is 64.
    **params :
        Fixed scenario parameters (e.g. C12, C21 for conferencing).

    Returns
    -------
    SpecialCaseResult

    """
    _require(s, Convention.THREE_WAY)
    scenario = Scenario.build_registered(SPECIAL_CASES.get(kind, kind))
    for name, value in params.items():
        scenario.set_param(name, value)
    front = scenario.frontier(s, grid_resolution)
    rates = tuple(RateTuple.from_mapping({"R31": max(0.0, r1), "R32": max(0.0, r2)}) for r1, r2 in front)
    return SpecialCaseResult(scenario.name, rates, two_user_comparator(s))
