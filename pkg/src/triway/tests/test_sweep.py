"""
Tests for SNR sweeps of the outer-to-achievable gap.

Along g1 = g3^(1/3), g2 = g3^(2/3) the grouped scheme has a constant gap of
max((3/2 + 6 C^(3)) / 2, (2 + 9 C^(3)) / 3) once none of its bounds is
clamped at zero, which happens from g3 = 1e5 on.
"""

import pytest
from pytest import approx

from triway.core import ConfigError, cap_hat, validate_snr
from triway.sweep import (CSV_COLUMNS, N3Policy, evaluate_point, flatness, grouped_bound, sweep,
                          thread_count, ungrouped_prediction)

C = cap_hat(3)


def _scaling(g3):
    return validate_snr(g3 ** (1 / 3), g3 ** (2 / 3), g3)


def test_grouped_bound_value():
    assert grouped_bound() == approx(max((1.5 + 6 * C) / 2, (2 + 9 * C) / 3))
    assert grouped_bound() == approx(3.1274, abs=1e-4)


def test_ungrouped_prediction_matches_report(snr_ref):
    (point,) = evaluate_point(snr_ref, N3Policy.MIN)
    assert point.n3 == 4
    assert point.ungrouped_prediction == approx((2 + 5 * C) / 3)
    assert point.gap_ungrouped.sufficient_gap == approx(ungrouped_prediction(snr_ref, 4))


def test_policies(snr_ref):
    assert [p.n3 for p in evaluate_point(snr_ref, N3Policy.MAX)] == [6]
    assert [p.n3 for p in evaluate_point(snr_ref, N3Policy.ALL)] == [4, 5, 6]


def test_ungrouped_gap_grows_with_n3(snr_ref):
    pts = evaluate_point(snr_ref, N3Policy.ALL)
    gaps = [p.gap_ungrouped.sufficient_gap for p in pts]
    assert gaps == sorted(gaps)
    assert gaps[-1] == approx((2 + 8 * C) / 3)


def test_empty_window_is_skipped(snr_small):
    (point,) = evaluate_point(snr_small)
    assert point.skipped
    assert point.n3_choices == []
    rows = point.csv_rows()
    assert rows[0]["skipped"] is True and rows[0]["exact_gap"] is None


def test_grouped_gap_is_flat():
    points = sweep([_scaling(10.0 ** k) for k in (5, 6, 7, 8)], N3Policy.MIN, threads=2)
    assert not any(p.skipped or p.clamped for p in points)
    assert flatness(points) < 1e-6
    for p in points:
        assert p.gap_grouped.exact_gap == approx(grouped_bound(), abs=1e-6)


def test_clamped_points_left_out_of_flatness():
    points = sweep([_scaling(10.0 ** k) for k in (3, 4, 5, 6)], threads=1)
    assert not any(p.skipped for p in points)
    assert points[0].clamped and points[1].clamped
    assert points[0].gap_grouped.exact_gap < points[1].gap_grouped.exact_gap
    assert points[1].gap_grouped.exact_gap < grouped_bound() - 1e-3
    assert flatness(points) < 1e-6
    assert flatness(points, include_clamped=True) > 1e-3


def test_grouped_beats_ungrouped_at_high_snr():
    s = validate_snr(1e3, 1e6, 1e9)
    pts = {p.n3: p for p in evaluate_point(s, N3Policy.ALL)}
    p = pts[18]
    assert p.gap_grouped.exact_gap <= p.gap_ungrouped.exact_gap + 1e-9


def test_sweep_keeps_grid_order(snr_ref):
    grid = [_scaling(1e6), snr_ref, validate_snr(4, 16, 64), _scaling(1e5)]
    points = sweep(grid, threads=3)
    assert [p.s for p in points] == grid
    assert [p.skipped for p in points] == [False, False, True, False]


def test_csv_rows(snr_ref):
    (point,) = evaluate_point(snr_ref)
    rows = point.csv_rows()
    assert [r["grouped"] for r in rows] == [False, True]
    assert all(set(r) == set(CSV_COLUMNS) for r in rows)


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("TRIWAY_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("TRIWAY_THREADS", "0")
    assert thread_count() == 1
    monkeypatch.setenv("TRIWAY_THREADS", "many")
    with pytest.raises(ConfigError):
        thread_count()
    monkeypatch.delenv("TRIWAY_THREADS")
    assert thread_count() >= 1
