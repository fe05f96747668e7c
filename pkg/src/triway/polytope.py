# -*- coding: utf-8 -*-
"""
Geometry over `triway.regions.Region` values: membership, vertex enumeration
and the per-dimension gap between an outer and an inner region.

Vertices are found by solving every 6-subset of the constraint rows (the
region bounds plus the six nonnegativity facets) in one batched
`numpy.linalg.solve` call. All coefficient matrices are 0/1 so a basis is
recognized by |det| > 1/2.

The gap report carries three numbers:

* `exact_gap`: smallest g >= 0 such that R - g (every rate lowered by g)
  satisfies every inner inequality for all R in the outer region.
* `clamped_gap`: the same with the rates clamped at zero, max(R - g, 0).
  It is never smaller than `exact_gap`.
* `sufficient_gap`: max over bounds of (rhs_outer - rhs_inner) / m for
  bounds matched by rate pattern, where m is the number of rates in the bound.

Both exact quantities are attained at outer vertices and are computed as
roots of piecewise-linear functions, without bisection.

"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import numpy as np

from triway.core import DIRECTIONS, RateTuple, SnrTriple, UnboundedRegionError
from triway.regions import Region

logger = logging.getLogger(__name__)

FEAS_TOL = 1e-9
DEDUP_TOL = 1e-7
ACTIVE_TOL = 1e-7


@dataclass(frozen=True)
class Vertex:
    point: RateTuple
    active_labels: Tuple[str, ...]

    def to_dict(self) -> dict:
        return {"point": self.point.to_dict(), "active": list(self.active_labels)}


def contains(region: Region, r) -> bool:
    """
    Membership test within `FEAS_TOL`.

    Parameters
    ----------
    region : Region
        Any region.
    r : RateTuple or sequence of 6 floats
        The rates in canonical order.

    Returns
    -------
    bool

    """
    x = np.asarray(list(r), dtype=float)
    if x.shape != (6,):
        return False
    if np.any(x < -FEAS_TOL):
        return False
    if not region.bounds:
        return True
    return bool(np.all(region.A @ x <= region.b + FEAS_TOL))


def _constraint_rows(region: Region):
    rows = [b.coeffs for b in region.bounds]
    rhs = [b.rhs for b in region.bounds]
    labels = [b.label for b in region.bounds]
    for d in DIRECTIONS:
        facet = [0] * 6
        facet[d.index] = -1
        rows.append(tuple(facet))
        rhs.append(0.0)
        labels.append("%s>=0" % d.name)
    return np.array(rows, dtype=float), np.array(rhs, dtype=float), labels


def _check_bounded(region: Region):
    covered = np.zeros(6, dtype=bool)
    for b in region.bounds:
        covered |= np.asarray(b.coeffs, dtype=bool)
    if not covered.all():
        missing = [d.name for d, c in zip(DIRECTIONS, covered) if not c]
        raise UnboundedRegionError("rates %s are not bounded by any inequality" % ", ".join(missing))


def vertices(region: Region) -> List[Vertex]:
    """
    All extreme points of a bounded region.

    Parameters
    ----------
    region : Region
        A region whose bounds cover every rate.

    Returns
    -------
    list of Vertex
        Deduplicated vertices sorted lexicographically by their rates.

    """
    _check_bounded(region)
    rows, rhs, labels = _constraint_rows(region)
    subsets = np.array(list(combinations(range(len(rows)), 6)), dtype=int)
    mats = rows[subsets]
    dets = np.linalg.det(mats)
    basis = np.abs(dets) > 0.5
    subsets, mats = subsets[basis], mats[basis]
    if len(subsets) == 0:
        return []
    pts = np.linalg.solve(mats, rhs[subsets][..., None])[..., 0]
    slack = rows @ pts.T - rhs[:, None]
    feasible = np.all(slack <= FEAS_TOL, axis=0)
    pts, slack = pts[feasible], slack[:, feasible]
    pts[np.abs(pts) < FEAS_TOL] = 0.0

    out = []
    kept = np.zeros((0, 6))
    for k in np.lexsort(pts.T[::-1]):
        p = pts[k]
        if len(kept) and np.any(np.max(np.abs(kept - p), axis=1) < DEDUP_TOL):
            continue
        kept = np.vstack([kept, p])
        active = tuple(lbl for lbl, s in zip(labels, slack[:, k]) if abs(s) <= ACTIVE_TOL)
        out.append(Vertex(RateTuple(p), active))
    logger.debug("%d vertices from %d bases", len(out), len(subsets))
    return out


def _clamped_shift(v: np.ndarray, rhs: float) -> float:
    """
    Smallest g >= 0 with sum(max(v_i - g, 0)) <= rhs for the entries v of one bound.
    """
    v = np.sort(v)[::-1]
    if v.sum() <= rhs + FEAS_TOL:
        return 0.0
    top = np.cumsum(v)
    for k in range(1, len(v) + 1):
        g = (top[k - 1] - rhs) / k
        lower = v[k] if k < len(v) else 0.0
        if lower - FEAS_TOL <= g <= v[k - 1] + FEAS_TOL:
            return max(0.0, float(g))
    return float(v[0])


@dataclass
class GapReport:
    exact_gap: float
    clamped_gap: float
    sufficient_gap: Optional[float]
    per_bound: Dict[str, float]
    certificate: Optional[Vertex]
    snr: Optional[SnrTriple] = None
    n3: Optional[int] = None
    grouped: Optional[bool] = None
    meta: Dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"snr": self.snr.to_dict() if self.snr is not None else None,
                "N3": self.n3,
                "grouped": self.grouped,
                "exact_gap": self.exact_gap,
                "clamped_gap": self.clamped_gap,
                "sufficient_gap": self.sufficient_gap,
                "per_bound": dict(self.per_bound),
                "certificate": self.certificate.to_dict() if self.certificate else None,
                "meta": dict(self.meta)}

    def csv_row(self) -> dict:
        g = self.snr.as_tuple() if self.snr is not None else (None, None, None)
        return {"g1": g[0], "g2": g[1], "g3": g[2], "N3": self.n3,
                "grouped": self.grouped, "exact_gap": self.exact_gap,
                "sufficient_gap": self.sufficient_gap, "skipped": False}


def per_dimension_gap(outer: Region, inner: Region) -> GapReport:
    """
    Gap between an outer and an inner region in bits per dimension.

    Parameters
    ----------
    outer : Region
        Bounded outer region.
    inner : Region
        Inner region; every bound is tested at the outer vertices.

    Returns
    -------
    GapReport
        `sufficient_gap` is None when some inner bound has no outer bound
        with the same rate pattern.

    """
    verts = vertices(outer)
    pts = np.array([v.point.as_array() for v in verts]) if verts else np.zeros((1, 6))

    exact, cert = 0.0, verts[0] if verts else None
    clamped = 0.0
    for bnd in inner.bounds:
        a = np.asarray(bnd.coeffs, dtype=float)
        need = (pts @ a - bnd.rhs) / bnd.size
        k = int(np.argmax(need))
        if need[k] > exact:
            exact, cert = float(need[k]), verts[k]
        mask = a.astype(bool)
        for p in pts:
            clamped = max(clamped, _clamped_shift(p[mask], bnd.rhs))

    per_bound = dict()
    sufficient = 0.0
    outer_by_pattern = dict()
    for bnd in outer.bounds:
        prev = outer_by_pattern.get(bnd.pattern)
        if prev is None or bnd.rhs < prev.rhs:
            outer_by_pattern[bnd.pattern] = bnd
    for bnd in inner.bounds:
        match = outer_by_pattern.get(bnd.pattern)
        if match is None:
            sufficient = None
            continue
        diff = match.rhs - bnd.rhs
        per_bound[bnd.pattern] = diff
        if sufficient is not None:
            sufficient = max(sufficient, diff / bnd.size)

    meta = inner.meta
    return GapReport(exact_gap=exact, clamped_gap=max(clamped, exact), sufficient_gap=sufficient,
                     per_bound=per_bound, certificate=cert,
                     snr=inner.snr if inner.snr is not None else outer.snr,
                     n3=meta.get("N3"), grouped=meta.get("grouped"))
