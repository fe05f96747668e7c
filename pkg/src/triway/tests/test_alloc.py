"""
Tests for the sub-channel allocation of the extended Y-channel.
"""

from itertools import product

import pytest
from pytest import approx

from triway.alloc import (Allocation, DemandTuple, Signal, UsageCase, allocate, check_allocation,
                          exhaustive_allocation_exists, feasible, group, max_weighted_demand,
                          validate_n_tilde)
from triway.core import DIRECTIONS, Direction, DomainError, InfeasibleError, PlacementError, cap_hat
from triway.scd import decompose_one_to_many


def _n_tilde_triples(top):
    for n1t in range(1, top + 1):
        for n2t in range(1, n1t + 1):
            for n3t in range(1, n2t + 1):
                if 0 <= n2t + n3t - n1t <= n3t:
                    yield (n1t, n2t, n3t)


def _spread(n, k):
    """All ways to put n signals into k bands."""
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _spread(n - first, k - 1):
            yield (first,) + rest


def _downlink_start(case, band, nt):
    n1t, n2t, n3t = nt
    reach = {1: n1t, 2: n2t, 3: n3t}
    start = max(n1t - reach[r] + 1 for r in case.receivers)
    # the aggressor pre-transmits only on uplink levels within its own reach
    if 2 in case.receivers and band >= 1:
        start = max(start, n3t + 1)
    if 3 in case.receivers and band == 2:
        start = max(start, n2t + 1)
    return start


def _bands_fit(counts, nt):
    """
    Uplink levels fall into three bands [1..Ñ3], [Ñ3+1..Ñ2] and [Ñ2+1..Ñ1];
    the band of a signal fixes its downlink window [start..Ñ1]. A placement
    exists iff some split over bands respects the band sizes and the
    downlink windows pass the Hall count.
    """
    n1t, n2t, n3t = nt
    sizes = (n3t, n2t - n3t, n1t - n2t)
    items = [(case, n) for case, n in counts.items() if n]

    def search(i, used, starts):
        if i == len(items):
            ordered = sorted(starts, reverse=True)
            return all(s <= n1t - k for k, s in enumerate(ordered))
        case, n = items[i]
        nbands = {3: 1, 2: 2, 1: 3}[max(case.transmitters)]
        for split in _spread(n, nbands):
            if any(used[b] + split[b] > sizes[b] for b in range(nbands)):
                continue
            more = [_downlink_start(case, b, nt) for b in range(nbands) for _ in range(split[b])]
            nxt = tuple(used[b] + (split[b] if b < nbands else 0) for b in range(3))
            if search(i + 1, nxt, starts + more):
                return True
        return False

    return search(0, (0, 0, 0), [])


def _placement_exists(vals, nt):
    r21, r31, r12, r32, r13, r23 = vals
    for b12 in range(min(r12, r21) + 1):
        for b13 in range(min(r13, r31) + 1):
            for b23 in range(min(r23, r32) + 1):
                for ca in range(min(r21 - b12, r32 - b23, r13 - b13) + 1):
                    for cb in range(min(r31 - b13, r12 - b12, r23 - b23) + 1):
                        counts = {UsageCase.BI_12: b12, UsageCase.BI_13: b13, UsageCase.BI_23: b23,
                                  UsageCase.CYC_A1: ca, UsageCase.CYC_A2: ca,
                                  UsageCase.CYC_B1: cb, UsageCase.CYC_B2: cb,
                                  UsageCase.UNI_21: r21 - b12 - ca, UsageCase.UNI_31: r31 - b13 - cb,
                                  UsageCase.UNI_12: r12 - b12 - cb, UsageCase.UNI_32: r32 - b23 - ca,
                                  UsageCase.UNI_13: r13 - b13 - ca, UsageCase.UNI_23: r23 - b23 - cb}
                        if sum(counts.values()) <= nt[0] and _bands_fit(counts, nt):
                            return True
    return False


def _agreement(nt):
    for vals in product(range(nt[1] + 1), repeat=6):
        d = DemandTuple(vals)
        if not feasible(d, nt):
            continue
        try:
            a = allocate(d, nt)
        except PlacementError:
            assert not exhaustive_allocation_exists(d, nt), (d, nt)
            assert not _placement_exists(vals, nt), (d, nt)
            continue
        assert check_allocation(a) == [], (d, nt)
        assert a.demand() == d
        assert exhaustive_allocation_exists(d, nt)
        assert _placement_exists(vals, nt), (d, nt)


def test_demand_tuple():
    d = DemandTuple.parse("1, 0,2,0,0,3")
    assert d["R12"] == 2 and d[Direction.R23] == 3
    assert d.total() == 6
    assert DemandTuple.from_mapping(d.to_dict()) == d
    assert list(d) == [1, 0, 2, 0, 0, 3]
    with pytest.raises(DomainError):
        DemandTuple((1, 2, 3))
    with pytest.raises(DomainError):
        DemandTuple((0, 0, 0, 0, 0, -1))
    with pytest.raises(DomainError):
        DemandTuple((0, 0, 0, 0, 0, 0.5))
    with pytest.raises(DomainError):
        DemandTuple.parse("1,x,0,0,0,0")


def test_usage_case_properties():
    assert UsageCase.BI_12.transmitters == (1, 2)
    assert UsageCase.BI_12.level == 2
    assert UsageCase.CYC_A2.directions == (Direction.R32, Direction.R13)
    assert UsageCase.CYC_A2.level == 3
    assert UsageCase.UNI_31.receivers == (3,)
    assert UsageCase.UNI_31.level == 1
    assert len(UsageCase) == 13


def test_validate_n_tilde():
    assert validate_n_tilde((7, 5, 3)) == ((7, 5, 3), 1)
    assert validate_n_tilde((8, 5, 3))[1] == 0
    assert validate_n_tilde((5, 5, 3))[1] == 3
    with pytest.raises(DomainError):
        validate_n_tilde((9, 5, 3))
    with pytest.raises(DomainError):
        validate_n_tilde((3, 5, 3))
    with pytest.raises(DomainError):
        validate_n_tilde((7, 5, 3), N1=2)


def test_validate_n_tilde_from_plan():
    plan, _ = decompose_one_to_many([2 ** 12, 2 ** 9, 2 ** 6], 4)
    assert validate_n_tilde(plan) == ((4, 3, 2), 1)


def test_feasible_counting_bounds(n_tilde):
    assert feasible(DemandTuple((0, 3, 0, 0, 0, 0)), n_tilde)
    assert not feasible(DemandTuple((0, 2, 0, 2, 0, 0)), n_tilde)
    assert feasible(DemandTuple((0, 3, 4, 0, 0, 0)), n_tilde)
    assert not feasible(DemandTuple((0, 3, 5, 0, 0, 0)), n_tilde)
    assert feasible(DemandTuple((5, 0, 5, 0, 0, 0)), n_tilde)


def test_bidirectional_placement(n_tilde):
    a = allocate(DemandTuple((1, 0, 1, 0, 0, 0)), n_tilde)
    assert len(a.signals) == 1
    sig = a.signals[0]
    assert sig.case == UsageCase.BI_12
    assert (sig.uplink, sig.downlink) == (1, 7)
    assert a.case_counts()[UsageCase.BI_12] == 1


def test_neutralized_placement(n_tilde, neutralizing_demand):
    a = allocate(neutralizing_demand, n_tilde)
    assert check_allocation(a) == []
    assert a.demand() == neutralizing_demand
    # the R31 signal on user 3's interfered level stays within user 2's reach
    assert a.downlink[5] == UsageCase.UNI_31
    assert a.pairing[5] <= n_tilde[1]
    for s in a.signals:
        if s.case == UsageCase.UNI_31 and s.uplink > n_tilde[1]:
            assert s.downlink > n_tilde[1]


def test_allocation_dict_roundtrip(n_tilde, neutralizing_demand):
    a = allocate(neutralizing_demand, n_tilde)
    d = a.to_dict()
    assert d["N1"] == 1
    assert [p["index"] for p in d["uplink"]] == sorted(p["index"] for p in d["uplink"])
    assert Allocation.from_dict(d) == a


def test_infeasible_demand(n_tilde):
    with pytest.raises(InfeasibleError):
        allocate(DemandTuple((0, 4, 0, 0, 0, 0)), n_tilde)


def test_check_allocation_flags_violations(n_tilde):
    bad = Allocation(n_tilde, 1, (Signal(UsageCase.UNI_31, ((Direction.R31, 0),), 6, 5),
                                  Signal(UsageCase.UNI_12, ((Direction.R12, 0),), 6, 7)))
    problems = check_allocation(bad)
    assert "uplink index used twice" in problems
    assert any(p.startswith("Uni31 downlink 5") for p in problems)
    assert any(p.startswith("Uni12 uplink 6") for p in problems)


@pytest.mark.parametrize("nt", list(_n_tilde_triples(3)))
def test_greedy_matches_exhaustive_small(nt):
    _agreement(nt)


@pytest.mark.slow
@pytest.mark.parametrize("nt", [t for t in _n_tilde_triples(6) if t[0] > 3])
def test_greedy_matches_exhaustive(nt):
    _agreement(nt)


def test_grouping(n_tilde, neutralizing_demand):
    a = allocate(neutralizing_demand, n_tilde)
    g = group(a, 8.0)
    assert [grp.case for grp in g.groups] == [UsageCase.UNI_31, UsageCase.UNI_12]
    assert (g.groups[0].first, g.groups[0].last) == (1, 3)
    assert (g.groups[1].first, g.groups[1].last) == (4, 7)
    assert g.groups[0].power == approx(8.0 ** 3 - 1)
    assert g.total_rate == approx(7 * cap_hat(8.0) - 2 * 0.5)
    assert g.total_rate >= g.ungrouped_rate
    with pytest.raises(DomainError):
        group(a, 1.0)


def test_max_weighted_demand_single_direction(n_tilde):
    best = max_weighted_demand({"R31": 1.0}, n_tilde)
    assert best.demand == DemandTuple((0, 3, 0, 0, 0, 0))
    assert best.value == approx(3.0)
    assert best.optimal


@pytest.mark.parametrize("nt", [(7, 5, 3), (14, 10, 6)])
def test_max_weighted_demand_is_maximal(nt):
    best = max_weighted_demand({d: 1.0 for d in DIRECTIONS}, nt)
    assert feasible(best.demand, nt)
    vals = list(best.demand)
    for i in range(6):
        bumped = list(vals)
        bumped[i] += 1
        assert not feasible(DemandTuple(bumped), nt)
    assert best.value == approx(sum(vals))


def test_max_weighted_demand_rejects_negative(n_tilde):
    with pytest.raises(DomainError):
        max_weighted_demand({"R31": -1.0}, n_tilde)


def test_placement_error_lists_cases():
    # Bi13 and Uni21 both need downlink 2 on (2, 2, 1)
    d = DemandTuple((1, 1, 0, 0, 1, 0))
    assert feasible(d, (2, 2, 1))
    with pytest.raises(PlacementError) as err:
        allocate(d, (2, 2, 1))
    assert err.value.cases == ["Uni21"]
    assert err.value.code == "placement"
    assert not exhaustive_allocation_exists(d, (2, 2, 1))
    assert not _placement_exists(list(d), (2, 2, 1))


@pytest.mark.parametrize("nt", [t for t in _n_tilde_triples(4) if t[1] + t[2] == t[0]])
def test_without_cross_interference_every_feasible_demand_places(nt):
    for vals in product(range(nt[1] + 1), repeat=6):
        d = DemandTuple(vals)
        if feasible(d, nt):
            assert check_allocation(allocate(d, nt)) == [], (d, nt)


def test_band_oracle_on_known_demands(n_tilde, neutralizing_demand):
    assert _placement_exists(list(neutralizing_demand), n_tilde)
    assert _placement_exists([1, 0, 1, 0, 0, 0], n_tilde)
    # four level-3 signals on three level-3 sub-channels
    assert not _placement_exists([0, 0, 0, 0, 2, 2], n_tilde)


def test_rates_stay_nonnegative_at_low_snr(n_tilde, neutralizing_demand):
    g = group(allocate(neutralizing_demand, n_tilde), 1.5)
    assert g.ungrouped_rate == 0.0
    assert all(grp.rate >= 0.0 for grp in g.groups)
    assert group(allocate(neutralizing_demand, n_tilde), 8.0).ungrouped_rate == approx(7 * cap_hat(4.0))
