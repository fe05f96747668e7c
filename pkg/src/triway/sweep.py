# -*- coding: utf-8 -*-
"""
SNR sweeps of the gap between the outer bound and the achievable regions.

For every triple of a grid the admissible N3 values are listed, one or more
of them are picked by an `N3Policy`, and the per-dimension gaps between
`lemma1_outer` and `prop2_3wc_region` (grouped and ungrouped) are computed.
Triples without an admissible N3 produce a skipped point.

Points are independent and evaluated by a thread pool capped by the
`TRIWAY_THREADS` environment variable; the output keeps the grid order.

"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Optional

from triway.core import ConfigError, SnrTriple, cap_hat
from triway.polytope import GapReport, per_dimension_gap
from triway.regions import (admissible_n3, lemma1_outer, prop2_3wc_region, prop2_levels,  # noqa: F401
                            prop2_window)

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("g1", "g2", "g3", "N3", "grouped", "exact_gap", "sufficient_gap", "skipped")


class N3Policy(Enum):
    MIN = "MinInWindow"
    MAX = "MaxInWindow"
    ALL = "All"


@dataclass
class SweepPoint:
    s: SnrTriple
    n3_choices: List[int]
    n3: Optional[int] = None
    gap_grouped: Optional[GapReport] = None
    gap_ungrouped: Optional[GapReport] = None
    ungrouped_prediction: Optional[float] = None
    window: tuple = ()
    clamped: bool = False
    meta: dict = field(default_factory=dict)

    @property
    def skipped(self) -> bool:
        return self.n3 is None

    def csv_rows(self) -> List[dict]:
        g1, g2, g3 = self.s.as_tuple()
        if self.skipped:
            return [{"g1": g1, "g2": g2, "g3": g3, "N3": None, "grouped": None,
                     "exact_gap": None, "sufficient_gap": None, "skipped": True}]
        return [self.gap_ungrouped.csv_row(), self.gap_grouped.csv_row()]

    def to_dict(self) -> dict:
        return {"snr": self.s.to_dict(),
                "n3_choices": list(self.n3_choices),
                "N3": self.n3,
                "skipped": self.skipped,
                "window": list(self.window),
                "clamped": self.clamped,
                "ungrouped_prediction": self.ungrouped_prediction,
                "gap_grouped": self.gap_grouped.to_dict() if self.gap_grouped else None,
                "gap_ungrouped": self.gap_ungrouped.to_dict() if self.gap_ungrouped else None}


def ungrouped_prediction(s: SnrTriple, n3: int) -> float:
    """
    Largest rhs difference per rate between the outer bound and the
    ungrouped region, from the loss formulas (clamping ignored).
    """
    _, n1, n2, n3 = prop2_levels(s, n3)
    c = cap_hat(3)
    return max((1.5 + n2 * c) / 2, (1.0 + n2 * c) / 2,
               (2.0 + n3 * c) / 3, (2.0 + (n3 + n2 - n1) * c) / 3)


def grouped_bound() -> float:
    """SNR-independent gap of the grouped scheme, about 3.127 bits."""
    c = cap_hat(3)
    return max((1.5 + 6 * c) / 2, (2.0 + 9 * c) / 3)


def _pick(choices: List[int], policy: N3Policy) -> List[int]:
    if not choices:
        return []
    if policy == N3Policy.MIN:
        return [choices[0]]
    if policy == N3Policy.MAX:
        return [choices[-1]]
    return list(choices)


def evaluate_point(s: SnrTriple, n3_policy: N3Policy = N3Policy.MIN) -> List[SweepPoint]:
    """
    Sweep points of a single triple, one per selected N3 (a single skipped
    point when the N3 window holds no integer).
    """
    choices = admissible_n3(s)
    window = prop2_window(s)
    if not choices:
        logger.warning("no admissible N3 at %s, window (%.6g, %.6g)", s.as_tuple(), *window)
        return [SweepPoint(s, [], window=window)]
    outer = lemma1_outer(s)
    out = []
    for n3 in _pick(choices, n3_policy):
        grouped = prop2_3wc_region(s, n3, grouped=True)
        ungrouped = prop2_3wc_region(s, n3, grouped=False)
        out.append(SweepPoint(s, choices, n3,
                              gap_grouped=per_dimension_gap(outer, grouped),
                              gap_ungrouped=per_dimension_gap(outer, ungrouped),
                              ungrouped_prediction=ungrouped_prediction(s, n3),
                              window=window,
                              clamped=bool(grouped.meta.get("clamped") or ungrouped.meta.get("clamped"))))
    return out


def thread_count() -> int:
    env = os.environ.get("TRIWAY_THREADS")
    if env is None or env == "":
        return os.cpu_count() or 1
    try:
        n = int(env)
    except ValueError:
        raise ConfigError("TRIWAY_THREADS must be an integer, got %r" % env) from None
    return max(1, n)


def sweep(grid: Iterable[SnrTriple], n3_policy: N3Policy = N3Policy.MIN,
          threads: Optional[int] = None) -> List[SweepPoint]:
    """
    Evaluate a grid of SNR triples.

    Parameters
    ----------
    grid : iterable of SnrTriple
        ThreeWay triples.
    n3_policy : N3Policy, optional
        Which admissible N3 to use. The default is N3Policy.MIN.
    threads : int, optional
        Worker threads; defaults to `TRIWAY_THREADS` or the CPU count.

    Returns
    -------
    list of SweepPoint
        In grid order.

    """
    grid = list(grid)
    if not isinstance(n3_policy, N3Policy):
        n3_policy = N3Policy(n3_policy)
    workers = max(1, min(threads or thread_count(), len(grid) or 1))
    if workers == 1:
        results = [evaluate_point(s, n3_policy) for s in grid]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda s: evaluate_point(s, n3_policy), grid))
    points = [p for res in results for p in res]
    logger.info("swept %d triples, %d points, %d skipped",
                len(grid), len(points), sum(p.skipped for p in points))
    return points


def flatness(points: Iterable[SweepPoint], grouped: bool = True, include_clamped: bool = False) -> float:
    """
    Spread (max - min) of the exact gaps of the evaluated points.
    Points whose inner region has a clamped bound are left out unless
    `include_clamped` is set.
    """
    gaps = []
    for p in points:
        if p.skipped or (p.clamped and not include_clamped):
            continue
        rep = p.gap_grouped if grouped else p.gap_ungrouped
        gaps.append(rep.exact_gap)
    if not gaps:
        return 0.0
    return max(gaps) - min(gaps)
