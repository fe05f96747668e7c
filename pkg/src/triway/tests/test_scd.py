"""
Tests for successive channel decomposition.
"""

import math

import numpy as np
import pytest
from pytest import approx

from triway.core import DomainError, ValidityError, cap_hat
from triway.scd import (Strategy, Topology, decompose_many_to_one, decompose_one_to_many, decompose_p2p,
                        decoding_loss, level_powers, strategy_rate)


@pytest.mark.parametrize("Gamma, N", [(1000.0, 4), (2.0, 1), (1e6, 9)])
def test_p2p_power_budget(Gamma, N):
    plan = decompose_p2p(Gamma, N)
    assert plan.topology == Topology.P2P
    assert plan.total_snr == approx(Gamma)
    assert N * plan.rate == approx(cap_hat(Gamma))
    assert plan.levels == N


def test_level_powers():
    assert level_powers(2.0, 3) == approx((1.0, 2.0, 4.0))


def test_p2p_rejects_bad_input():
    with pytest.raises(DomainError):
        decompose_p2p(1.0, 3)
    with pytest.raises(DomainError):
        decompose_p2p(10.0, 0)


def test_many_to_one_counts():
    plan, sr = decompose_many_to_one([2 ** 12, 2 ** 9, 2 ** 6], 4, 2)
    assert plan.counts == (4, 3, 2)
    assert plan.gamma == approx(8.0)
    assert plan.uplink_access == {1: (1, 4), 2: (1, 3), 3: (1, 2)}
    assert sr.rate == approx(cap_hat(4.0))
    assert sr.loss == approx(0.5)


def test_many_to_one_validity():
    with pytest.raises(ValidityError):
        decompose_many_to_one([2 ** 4, 2 ** 3], 4, 2)
    with pytest.raises(ValidityError):
        # the weaker user gets no level
        decompose_many_to_one([2 ** 12, 4.0], 3, 2)


def test_one_to_many_windows():
    plan, sr = decompose_one_to_many([2 ** 12, 2 ** 9, 2 ** 6], 4)
    assert plan.counts == (4, 3, 2)
    assert plan.downlink_access == {1: (1, 4), 2: (2, 4), 3: (3, 4)}
    # sigma^2 = 8 -> q = ceil(log 7 / log 8 + 1) = 2, sigma^2 = 64 -> q = 3
    assert plan.q == {2: 2, 3: 3}
    assert sr.mu == 1
    assert sr.rate == approx(cap_hat(4.0))


def test_one_to_many_single_receiver():
    plan, sr = decompose_one_to_many([1024.0], 5)
    assert sr.mu == 0
    assert sr.rate == approx(1.0)
    assert plan.q == {}


def test_one_to_many_validity():
    with pytest.raises(ValidityError):
        decompose_one_to_many([2 ** 3, 2 ** 2], 3)


def test_too_many_users():
    with pytest.raises(DomainError):
        decompose_many_to_one([16, 8, 4, 2], 2, 1)


def test_strategy_rates():
    g = 64.0
    assert strategy_rate(g, Strategy.DECODE, 1).rate == approx(3.0)
    assert strategy_rate(g, Strategy.DECODE, 2).rate == approx(2.5)
    assert strategy_rate(g, Strategy.COMPUTE, 2, 1).rate == approx(0.5 * math.log2(1 + 32))
    assert strategy_rate(g, "Neutralize", 2).rate == approx(0.5 * math.log2(32.5))
    assert strategy_rate(g, Strategy.DECODE, 2, mu=1).rate == approx(0.5 * math.log2(64 / 3))
    with pytest.raises(DomainError):
        strategy_rate(g, Strategy.COMPUTE, 1, 2)
    with pytest.raises(DomainError):
        strategy_rate(g, Strategy.DECODE, 1, mu=2)


def test_strategy_rate_at_least_decode_rate():
    for kappa in (1, 2, 3):
        dec = strategy_rate(10.0, Strategy.DECODE, kappa).rate
        assert strategy_rate(10.0, Strategy.COMPUTE, kappa).rate >= dec
        assert strategy_rate(10.0, Strategy.NEUTRALIZE, kappa).rate >= dec


def test_decoding_loss():
    assert decoding_loss(1) == 0.0
    assert decoding_loss(2, 1) == approx(0.5 * math.log2(3))


def test_p2p_conservation_random():
    rng = np.random.default_rng(17)
    for Gamma, N in zip(10 ** rng.uniform(0.01, 9, 1000), rng.integers(1, 21, 1000)):
        plan = decompose_p2p(float(Gamma), int(N))
        assert plan.total_snr == approx(Gamma, rel=1e-9)
        assert N * plan.rate == approx(cap_hat(Gamma), rel=1e-9, abs=1e-12)


def test_access_windows_nest():
    rng = np.random.default_rng(23)
    checked = 0
    for _ in range(300):
        g1 = 10 ** rng.uniform(3, 9)
        g2 = g1 ** rng.uniform(0.3, 1)
        g3 = g2 ** rng.uniform(0.3, 1)
        n1 = int(rng.integers(2, 9))
        try:
            up, _ = decompose_many_to_one([g1, g2, g3], n1, 2)
            down, _ = decompose_one_to_many([g1, g2, g3], n1)
        except ValidityError:
            continue
        checked += 1
        for i, j in ((1, 2), (1, 3), (2, 3)):
            lo_i, hi_i = up.uplink_access[i]
            lo_j, hi_j = up.uplink_access[j]
            assert lo_i <= lo_j <= hi_j <= hi_i
            lo_i, hi_i = down.downlink_access[i]
            lo_j, hi_j = down.downlink_access[j]
            assert lo_i <= lo_j <= hi_j <= hi_i
            assert hi_j == n1
    assert checked > 50
