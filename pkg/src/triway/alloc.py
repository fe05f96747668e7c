# -*- coding: utf-8 -*-
"""
Sub-channel allocation for the extended Y-channel.

Users are numbered 1 (the virtual user co-located with the relay), 2 and 3,
with `Ñ1 >= Ñ2 >= Ñ3` sub-channels. A demand asks for an integer number of
sub-channels per direction. Demands are split into 13 usage cases:

* three bidirectional exchanges (`BI_12`, `BI_13`, `BI_23`), one sub-channel
  carrying the modulo sum of one unit of each of the two messages;
* two cyclic schemes with two slots each. Scheme A carries one unit of
  R21, R32 and R13 over the slots (λ21+λ32) and (λ32+λ13); scheme B
  carries R31, R12 and R23 over (λ31+λ12) and (λ31+λ23);
* six uni-directional decode-and-forward cases.

Each resulting signal is placed on one uplink index (inside the access
window of all its transmitters, [1..Ñt]) and one downlink index (inside
the window of all its receivers, [Ñ1-Ñr+1..Ñ1]).

Users 2 and 3 also hear each other over `N1 = Ñ2 + Ñ3 - Ñ1` levels. Interference
at a receiver is neutralized by the other user pre-transmitting on the uplink
index of the forwarded signal, which requires that index to be within the
aggressor's reach. Signals desired by user 2 (3) whose uplink index exceeds Ñ3
(Ñ2) are therefore forwarded on levels above Ñ3 (Ñ2), which user 2 (3) receives
free of interference.

"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from triway.core import DIRECTIONS, Direction, DomainError, InfeasibleError, PlacementError, cap_hat
from triway.regions import PATTERNS
from triway.scd import SubChannelPlan, decoding_loss

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 12

R21, R31, R12, R32, R13, R23 = DIRECTIONS


class DemandTuple:
    """
    Nonnegative integer sub-channel counts per direction.
    """
    __slots__ = ("_r",)

    def __init__(self, values: Sequence[int] = (0, 0, 0, 0, 0, 0)):
        vals = tuple(values)
        if len(vals) != 6:
            raise DomainError("a demand has 6 entries, got %d" % len(vals))
        out = []
        for v in vals:
            if isinstance(v, bool) or int(v) != v or v < 0:
                raise DomainError("demands must be nonnegative integers, got %r" % (vals,))
            out.append(int(v))
        self._r = tuple(out)

    @classmethod
    def from_mapping(cls, rates: Mapping) -> "DemandTuple":
        vals = [0] * 6
        for key, val in rates.items():
            d = key if isinstance(key, Direction) else Direction.parse(str(key))
            vals[d.index] = val
        return cls(vals)

    @classmethod
    def parse(cls, text: str) -> "DemandTuple":
        """'r21,r31,r12,r32,r13,r23' in canonical order."""
        try:
            return cls([int(p) for p in text.replace(" ", "").split(",") if p != ""])
        except ValueError:
            raise DomainError("malformed demand %r" % text) from None

    def __getitem__(self, key) -> int:
        d = key if isinstance(key, Direction) else Direction.parse(str(key))
        return self._r[d.index]

    def __iter__(self):
        return iter(self._r)

    def __len__(self):
        return 6

    def __eq__(self, other):
        return isinstance(other, DemandTuple) and self._r == other._r

    def __hash__(self):
        return hash(self._r)

    def __repr__(self):
        return "DemandTuple(%s)" % ", ".join("%s=%d" % (d.name, v) for d, v in zip(DIRECTIONS, self._r))

    def total(self) -> int:
        return sum(self._r)

    def to_dict(self) -> Dict[str, int]:
        return {d.name: v for d, v in zip(DIRECTIONS, self._r)}


class UsageCase(Enum):
    BI_12 = "Bi12"
    BI_13 = "Bi13"
    BI_23 = "Bi23"
    CYC_A1 = "CycA1"
    CYC_A2 = "CycA2"
    CYC_B1 = "CycB1"
    CYC_B2 = "CycB2"
    UNI_21 = "Uni21"
    UNI_31 = "Uni31"
    UNI_12 = "Uni12"
    UNI_32 = "Uni32"
    UNI_13 = "Uni13"
    UNI_23 = "Uni23"

    @property
    def directions(self) -> Tuple[Direction, ...]:
        return _CASE_DIRECTIONS[self]

    @property
    def transmitters(self) -> Tuple[int, ...]:
        return tuple(sorted({d.src for d in self.directions}))

    @property
    def receivers(self) -> Tuple[int, ...]:
        return _CASE_RECEIVERS[self]

    @property
    def level(self) -> int:
        """Weakest transmitter involved (3, 2 or 1)."""
        return max(self.transmitters)


_CASE_DIRECTIONS = {
    UsageCase.BI_12: (R21, R12),
    UsageCase.BI_13: (R31, R13),
    UsageCase.BI_23: (R32, R23),
    UsageCase.CYC_A1: (R21, R32),
    UsageCase.CYC_A2: (R32, R13),
    UsageCase.CYC_B1: (R31, R12),
    UsageCase.CYC_B2: (R31, R23),
    UsageCase.UNI_21: (R21,),
    UsageCase.UNI_31: (R31,),
    UsageCase.UNI_12: (R12,),
    UsageCase.UNI_32: (R32,),
    UsageCase.UNI_13: (R13,),
    UsageCase.UNI_23: (R23,),
}
_CASE_RECEIVERS = {
    UsageCase.BI_12: (1, 2),
    UsageCase.BI_13: (1, 3),
    UsageCase.BI_23: (2, 3),
    UsageCase.CYC_A1: (1, 2),
    UsageCase.CYC_A2: (1, 3),
    UsageCase.CYC_B1: (1, 2),
    UsageCase.CYC_B2: (2, 3),
}
for _d in DIRECTIONS:
    _CASE_RECEIVERS[UsageCase("Uni%d%d" % (_d.dst, _d.src))] = (_d.dst,)
_UNI = {d: UsageCase("Uni%d%d" % (d.dst, d.src)) for d in DIRECTIONS}

# victim -> interfering user
AGGRESSOR = {2: 3, 3: 2}


@dataclass(frozen=True)
class Signal:
    """
    One forwarded signal: the modulo sum of `components`, each a
    (direction, unit) pair sent by the direction's source.
    """
    case: UsageCase
    components: Tuple[Tuple[Direction, int], ...]
    uplink: int = 0
    downlink: int = 0

    def placed(self, uplink: int, downlink: int) -> "Signal":
        return Signal(self.case, self.components, uplink, downlink)


def validate_n_tilde(n_tilde: Sequence[int], N1: Optional[int] = None) -> Tuple[Tuple[int, int, int], int]:
    """
    Checks Ñ1 >= Ñ2 >= Ñ3 >= 1 and returns (Ñ, N1) with N1 = Ñ2 + Ñ3 - Ñ1.

    Raises
    ------
    DomainError
        When the ordering fails, when N1 falls outside [0, Ñ3] or when a
        given N1 disagrees with the identity.

    """
    if isinstance(n_tilde, SubChannelPlan):
        n_tilde = n_tilde.counts
    nt = tuple(int(n) for n in n_tilde)
    if len(nt) != 3 or not nt[0] >= nt[1] >= nt[2] >= 1:
        raise DomainError("expected Ñ1 >= Ñ2 >= Ñ3 >= 1, got %r" % (tuple(n_tilde),))
    n1 = nt[1] + nt[2] - nt[0]
    if not 0 <= n1 <= nt[2]:
        raise DomainError("Ñ=%r gives N1=%d outside [0, Ñ3]" % (nt, n1))
    if N1 is not None and N1 != n1:
        raise DomainError("N1=%r contradicts Ñ1-Ñ2 = Ñ3-N1 for Ñ=%r" % (N1, nt))
    return nt, n1


class _Windows:
    def __init__(self, n_tilde):
        self.nt = n_tilde
        self.reach = {1: n_tilde[0], 2: n_tilde[1], 3: n_tilde[2]}

    def uplink_top(self, case: UsageCase) -> int:
        return min(self.reach[t] for t in case.transmitters)

    def downlink_start(self, case: UsageCase, uplink: int) -> int:
        n1t = self.nt[0]
        start = max(n1t - self.reach[r] + 1 for r in case.receivers)
        for v in case.receivers:
            if v in AGGRESSOR:
                aggr = self.reach[AGGRESSOR[v]]
                if uplink > aggr:
                    start = max(start, aggr + 1)
        return start


@dataclass(frozen=True)
class Allocation:
    n_tilde: Tuple[int, int, int]
    n1: int
    signals: Tuple[Signal, ...]

    @property
    def uplink(self) -> Dict[int, UsageCase]:
        return {s.uplink: s.case for s in self.signals}

    @property
    def downlink(self) -> Dict[int, UsageCase]:
        return {s.downlink: s.case for s in self.signals}

    @property
    def pairing(self) -> Dict[int, int]:
        """downlink index -> uplink index of the forwarded signal"""
        return {s.downlink: s.uplink for s in self.signals}

    def signal_at_downlink(self, index: int) -> Optional[Signal]:
        for s in self.signals:
            if s.downlink == index:
                return s
        return None

    def case_counts(self) -> Dict[UsageCase, int]:
        out = {c: 0 for c in UsageCase}
        for s in self.signals:
            out[s.case] += 1
        return out

    def demand(self) -> DemandTuple:
        """Recount of the distinct message units carried per direction."""
        units = {d: set() for d in DIRECTIONS}
        for s in self.signals:
            for d, k in s.components:
                units[d].add(k)
        return DemandTuple([len(units[d]) for d in DIRECTIONS])

    def to_dict(self) -> dict:
        ordered = sorted(self.signals, key=lambda s: s.uplink)
        return {"N_tilde": list(self.n_tilde),
                "N1": self.n1,
                "uplink": [{"index": s.uplink, "case": s.case.value, "users": list(s.case.transmitters)}
                           for s in ordered],
                "downlink": [{"index": s.downlink, "case": s.case.value, "users": list(s.case.receivers)}
                             for s in sorted(self.signals, key=lambda s: s.downlink)],
                "pairing": [{"uplink": s.uplink, "downlink": s.downlink, "case": s.case.value,
                             "units": [[d.name, k] for d, k in s.components]} for s in ordered]}

    @classmethod
    def from_dict(cls, d: Mapping) -> "Allocation":
        nt, n1 = validate_n_tilde(d["N_tilde"], d.get("N1"))
        signals = []
        for p in d["pairing"]:
            comps = tuple((Direction.parse(name), int(k)) for name, k in p["units"])
            signals.append(Signal(UsageCase(p["case"]), comps, int(p["uplink"]), int(p["downlink"])))
        return cls(nt, n1, tuple(signals))


def feasible(d: DemandTuple, n_tilde: Sequence[int]) -> bool:
    """
    The eight counting inequalities of the Y-channel scheme.

    Parameters
    ----------
    d : DemandTuple
        Requested sub-channels per direction.
    n_tilde : (int, int, int)
        (Ñ1, Ñ2, Ñ3).

    Returns
    -------
    bool

    """
    n1t, n2t, n3t = validate_n_tilde(n_tilde)[0]
    caps = (n3t, n3t, n2t, n2t, n1t, n2t, n2t, n1t)
    r = list(d)
    return all(sum(c * x for c, x in zip(coeffs, r)) <= cap for coeffs, cap in zip(PATTERNS, caps))


def _decompositions(d: DemandTuple):
    """All splits of a demand into case counts, in priority order."""
    r = {dd: d[dd] for dd in DIRECTIONS}
    out = []
    for b12 in range(min(r[R12], r[R21]) + 1):
        for b13 in range(min(r[R13], r[R31]) + 1):
            for b23 in range(min(r[R23], r[R32]) + 1):
                for ca in range(min(r[R21] - b12, r[R32] - b23, r[R13] - b13) + 1):
                    for cb in range(min(r[R31] - b13, r[R12] - b12, r[R23] - b23) + 1):
                        out.append((b12, b13, b23, ca, cb))
    out.sort(key=lambda t: (-(t[0] + t[1] + t[2]), -(t[3] + t[4]), tuple(-x for x in t)))
    return out


def _signals(d: DemandTuple, split) -> List[Signal]:
    b12, b13, b23, ca, cb = split
    nxt = {dd: 0 for dd in DIRECTIONS}

    def unit(dd):
        k = nxt[dd]
        nxt[dd] += 1
        return (dd, k)

    sig = []
    for case, n in ((UsageCase.BI_12, b12), (UsageCase.BI_13, b13), (UsageCase.BI_23, b23)):
        for _ in range(n):
            sig.append(Signal(case, tuple(unit(dd) for dd in case.directions)))
    for _ in range(ca):
        u21, u32, u13 = unit(R21), unit(R32), unit(R13)
        sig.append(Signal(UsageCase.CYC_A1, (u21, u32)))
        sig.append(Signal(UsageCase.CYC_A2, (u32, u13)))
    for _ in range(cb):
        u31, u12, u23 = unit(R31), unit(R12), unit(R23)
        sig.append(Signal(UsageCase.CYC_B1, (u31, u12)))
        sig.append(Signal(UsageCase.CYC_B2, (u31, u23)))
    for dd in DIRECTIONS:
        while nxt[dd] < d[dd]:
            sig.append(Signal(_UNI[dd], (unit(dd),)))
    return sig


def _assign_downlink(sig: List[Signal], ups: List[int], win: _Windows) -> Optional[List[Signal]]:
    """Most restrictive window first, highest free index; None if impossible."""
    starts = [win.downlink_start(s.case, u) for s, u in zip(sig, ups)]
    order = sorted(range(len(sig)), key=lambda i: (-starts[i], ups[i]))
    free = win.nt[0]
    out = [None] * len(sig)
    for i in order:
        if free < starts[i]:
            return None
        out[i] = sig[i].placed(ups[i], free)
        free -= 1
    return out


def _place(sig: List[Signal], win: _Windows) -> Optional[List[Signal]]:
    n1t, n2t, n3t = win.nt
    cap3, cap2, cap1 = n3t, n2t - n3t, n1t - n2t
    level3 = [s for s in sig if s.case.level == 3]
    ptype = [s for s in sig if s.case.level == 2 and 2 in s.case.receivers]
    nonp = [s for s in sig if s.case.level == 2 and 2 not in s.case.receivers]
    to2 = [s for s in sig if s.case.level == 1 and 2 in s.case.receivers]
    to3 = [s for s in sig if s.case.level == 1 and 3 in s.case.receivers]
    excess = len(sig) - cap3
    if len(level3) > cap3 or len(sig) > n1t:
        return None

    choices = product(range(len(ptype) + 1), range(len(to2) + 1), range(min(len(to3), cap1) + 1))
    for a, c, e1 in sorted(choices, key=lambda t: (t[0] + t[1] + t[2], t)):
        c1 = min(c, cap1 - e1)
        c2 = c - c1
        room = cap2 - a - c2
        if room < 0:
            continue
        z = min(len(nonp), room)
        e2 = min(len(to3) - e1, room - z)
        if a + z + c + e1 + e2 < excess:
            continue
        band1 = to2[:c1] + to3[:e1]
        band2 = ptype[:a] + nonp[:z] + to2[c1:c] + to3[e1:e1 + e2]
        band3 = level3 + ptype[a:] + nonp[z:] + to2[c:] + to3[e1 + e2:]
        ordered = band3 + band2 + band1
        ups = (list(range(1, len(band3) + 1))
               + list(range(n3t + 1, n3t + 1 + len(band2)))
               + list(range(n2t + 1, n2t + 1 + len(band1))))
        placed = _assign_downlink(ordered, ups, win)
        if placed is not None:
            return placed
    return None


def allocate(d: DemandTuple, plan, N1: Optional[int] = None) -> Allocation:
    """
    Place a demand on uplink and downlink sub-channels.

    Parameters
    ----------
    d : DemandTuple
        Requested sub-channels per direction.
    plan : SubChannelPlan or (int, int, int)
        Plan of the extended Y-channel (its counts are (Ñ1, Ñ2, Ñ3)) or the counts.
    N1 : int, optional
        Cross-interference depth; checked against Ñ2 + Ñ3 - Ñ1.

    Returns
    -------
    Allocation

    Raises
    ------
    InfeasibleError
        The demand violates the counting inequalities.
    PlacementError
        The counts fit but no placement keeps every interfered signal
        within reach of its aggressor.

    """
    nt, n1 = validate_n_tilde(plan, N1)
    if not feasible(d, nt):
        raise InfeasibleError("demand %r exceeds the sub-channels Ñ=%r" % (d, nt))
    win = _Windows(nt)
    splits = _decompositions(d)
    for split in splits:
        placed = _place(_signals(d, split), win)
        if placed is not None:
            alloc = Allocation(nt, n1, tuple(sorted(placed, key=lambda s: s.uplink)))
            logger.debug("allocated %r on Ñ=%r with split %r", d, nt, split)
            return alloc
    top = _signals(d, splits[0])
    cases = sorted({s.case.value for s in top if s.case.level < 3})
    logger.info("no placement for %r on Ñ=%r, N1=%d; cases %s", d, nt, n1, cases)
    raise PlacementError("no placement of %r on Ñ=%r honors the neutralization rules" % (d, nt), cases)


def check_allocation(a: Allocation) -> List[str]:
    """
    All window and placement violations of an allocation; empty when valid.
    """
    win = _Windows(a.n_tilde)
    n1t = a.n_tilde[0]
    problems = []
    ups = [s.uplink for s in a.signals]
    downs = [s.downlink for s in a.signals]
    if len(set(ups)) != len(ups):
        problems.append("uplink index used twice")
    if len(set(downs)) != len(downs):
        problems.append("downlink index used twice")
    for s in a.signals:
        top = win.uplink_top(s.case)
        if not 1 <= s.uplink <= top:
            problems.append("%s uplink %d outside [1..%d]" % (s.case.value, s.uplink, top))
        start = win.downlink_start(s.case, s.uplink)
        if not start <= s.downlink <= n1t:
            problems.append("%s downlink %d outside [%d..%d]" % (s.case.value, s.downlink, start, n1t))
    return problems


def exhaustive_allocation_exists(d: DemandTuple, n_tilde: Sequence[int], N1: Optional[int] = None) -> bool:
    """
    Brute force: any split of the demand and any uplink index assignment
    whose downlink windows admit distinct indices.
    """
    nt, _ = validate_n_tilde(n_tilde, N1)
    win = _Windows(nt)
    for split in _decompositions(d):
        sig = _signals(d, split)
        if len(sig) > nt[0]:
            continue
        tops = [win.uplink_top(s.case) for s in sig]
        if _search_uplink(sig, tops, 0, [], set(), win):
            return True
    return False


def _search_uplink(sig, tops, i, ups, used, win) -> bool:
    if i == len(sig):
        return _assign_downlink(sig, ups, win) is not None
    lo = 1
    if i > 0 and sig[i - 1].case == sig[i].case:
        lo = ups[-1] + 1
    for u in range(lo, tops[i] + 1):
        if u in used:
            continue
        used.add(u)
        ups.append(u)
        if _search_uplink(sig, tops, i + 1, ups, used, win):
            return True
        ups.pop()
        used.discard(u)
    return False


@dataclass(frozen=True)
class Group:
    case: UsageCase
    first: int
    last: int
    power: float
    rate: float

    @property
    def size(self) -> int:
        return self.last - self.first + 1


@dataclass(frozen=True)
class GroupedAllocation:
    groups: Tuple[Group, ...]
    gamma: float
    kappa_mu: int

    @property
    def total_rate(self) -> float:
        return sum(g.rate for g in self.groups)

    @property
    def ungrouped_rate(self) -> float:
        n = sum(g.size for g in self.groups)
        return n * cap_hat(self.gamma / self.kappa_mu)

    def to_dict(self) -> dict:
        return {"gamma": self.gamma, "kappa_mu": self.kappa_mu,
                "groups": [{"case": g.case.value, "first": g.first, "last": g.last,
                            "power": g.power, "rate": g.rate} for g in self.groups],
                "total_rate": self.total_rate, "ungrouped_rate": self.ungrouped_rate}


def group(a: Allocation, gamma: float, kappa_mu: int = 2) -> GroupedAllocation:
    """
    Merge the sub-channels of each usage case into one block of consecutive
    levels, paying the decoding loss once per block.

    Parameters
    ----------
    a : Allocation
    gamma : float
        Per-level SNR.
    kappa_mu : int, optional
        kappa + mu of the decoding step. The default is 2.

    Returns
    -------
    GroupedAllocation

    """
    if gamma <= 1:
        raise DomainError("gamma must exceed 1, got %r" % (gamma,))
    loss = decoding_loss(kappa_mu)
    groups = []
    first = 1
    for case, n in a.case_counts().items():
        if n == 0:
            continue
        last = first + n - 1
        power = gamma ** last - gamma ** (first - 1)
        groups.append(Group(case, first, last, power, max(0.0, n * cap_hat(gamma) - loss)))
        first = last + 1
    return GroupedAllocation(tuple(groups), gamma, kappa_mu)


@dataclass(frozen=True)
class WeightedDemand:
    demand: DemandTuple
    value: float
    optimal: bool


def _weights(weights: Mapping) -> np.ndarray:
    w = np.zeros(6)
    for key, val in weights.items():
        dd = key if isinstance(key, Direction) else Direction.parse(str(key))
        if val < 0 or not math.isfinite(val):
            raise DomainError("weights must be finite and nonnegative, got %r" % (val,))
        w[dd.index] = val
    return w


def max_weighted_demand(weights: Mapping, n_tilde: Sequence[int]) -> WeightedDemand:
    """
    Integer demand maximizing the weighted sum under the counting inequalities.

    Exhaustive over (R31, R32, R13, R23) for Ñ1 <= 12; R12 and R21 never share
    an inequality and are set to their largest value. Larger systems use the
    LP relaxation, rounded down and completed greedily; `optimal` is then
    set only when the rounded value reaches the LP bound.

    Parameters
    ----------
    weights : mapping
        Direction (or its name) -> nonnegative weight; missing entries are 0.
    n_tilde : (int, int, int)

    Returns
    -------
    WeightedDemand

    """
    nt = validate_n_tilde(n_tilde)[0]
    w = _weights(weights)
    if nt[0] <= EXHAUSTIVE_LIMIT:
        return _exhaustive_weighted(w, nt)
    return _lp_weighted(w, nt)


def _exhaustive_weighted(w, nt) -> WeightedDemand:
    n1t, n2t, n3t = nt
    ax = np.arange(n3t + 1)
    r31, r32, r13, r23 = (x.ravel() for x in np.meshgrid(ax, ax, ax, ax, indexing="ij"))
    ok = (r31 + r32 <= n3t) & (r13 + r23 <= n3t)
    r31, r32, r13, r23 = r31[ok], r32[ok], r13[ok], r23[ok]
    ub12 = np.minimum.reduce([n2t - r13 - r32, n2t - r13 - r23, n1t - r31 - r32])
    ub21 = np.minimum.reduce([n1t - r23 - r13, n2t - r23 - r31, n2t - r31 - r32])
    ok = (ub12 >= 0) & (ub21 >= 0)
    r31, r32, r13, r23, ub12, ub21 = (x[ok] for x in (r31, r32, r13, r23, ub12, ub21))
    r12 = ub12 if w[R12.index] > 0 else np.zeros_like(ub12)
    r21 = ub21 if w[R21.index] > 0 else np.zeros_like(ub21)
    mat = np.stack([r21, r31, r12, r32, r13, r23], axis=1)
    vals = mat @ w
    k = int(np.argmax(vals))
    return WeightedDemand(DemandTuple(mat[k].tolist()), float(vals[k]), True)


def _lp_weighted(w, nt) -> WeightedDemand:
    n1t, n2t, n3t = nt
    caps = np.array([n3t, n3t, n2t, n2t, n1t, n2t, n2t, n1t], dtype=float)
    A = np.array(PATTERNS, dtype=float)
    res = linprog(-w, A_ub=A, b_ub=caps, bounds=[(0, None)] * 6, method="highs")
    x = np.floor(res.x + 1e-9).astype(int) if res.success else np.zeros(6, dtype=int)
    for i in np.argsort(-w, kind="stable"):
        if w[i] <= 0:
            continue
        while True:
            x[i] += 1
            if np.any(A @ x > caps):
                x[i] -= 1
                break
    value = float(w @ x)
    optimal = bool(res.success and value >= -res.fun - 1e-9)
    return WeightedDemand(DemandTuple(x.tolist()), value, optimal)
