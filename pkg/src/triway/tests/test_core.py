"""
Tests for the capacity primitives, directions and SNR triples.
"""

import math

import numpy as np
import pytest
from pytest import approx

from triway.core import (DIRECTIONS, Convention, DomainError, Direction, OrderingError, RateTuple,
                         SnrTriple, TriwayError, cap, cap_hat, parse_snr, rate_label, validate_snr)


def test_cap_values():
    assert cap(0) == 0.0
    assert cap(1) == approx(0.5)
    assert cap(3) == approx(1.0)
    assert cap(255) == approx(4.0)


def test_cap_hat_values():
    assert cap_hat(0) == 0.0
    assert cap_hat(0.5) == 0.0
    assert cap_hat(1) == 0.0
    assert cap_hat(4) == approx(1.0)
    assert cap_hat(3) == approx(0.79248125, abs=1e-8)


def test_cap_hat_is_shifted_cap():
    for x in (1.0, 2.5, 10.0, 1e6):
        assert cap_hat(x) == approx(cap(x - 1))


@pytest.mark.parametrize("fn", [cap, cap_hat])
def test_negative_snr_rejected(fn):
    with pytest.raises(DomainError):
        fn(-1e-3)


def test_direction_order_and_fields():
    assert [d.name for d in DIRECTIONS] == ["R21", "R31", "R12", "R32", "R13", "R23"]
    assert Direction.R31.dst == 3 and Direction.R31.src == 1
    assert Direction.of(2, 3) is Direction.R32
    assert Direction.parse(" r13 ") is Direction.R13
    assert [d.index for d in DIRECTIONS] == list(range(6))
    with pytest.raises(DomainError):
        Direction.of(1, 1)
    with pytest.raises(DomainError):
        Direction.parse("R11")


def test_rate_label():
    assert rate_label((0, 1, 0, 1, 0, 0)) == "R31+R32"
    assert rate_label((1, 0, 0, 0, 1, 1)) == "R21+R13+R23"


def test_snr_conventions():
    s = validate_snr(1, 2, 3)
    assert s.convention == Convention.THREE_WAY
    y = validate_snr(3, 2, 1, tag="Ystar")
    assert y.as_tuple() == (3, 2, 1)
    with pytest.raises(OrderingError):
        validate_snr(3, 2, 1)
    with pytest.raises(OrderingError):
        validate_snr(1, 2, 3, tag="Ystar")
    with pytest.raises(DomainError):
        validate_snr(0, 2, 3)
    with pytest.raises(DomainError):
        validate_snr(1, 2, math.inf)
    with pytest.raises(DomainError):
        validate_snr(1, 2, 3, tag="Star")


def test_ordering_error_is_domain_error():
    assert issubclass(OrderingError, DomainError)
    assert OrderingError.code == "ordering"
    assert issubclass(DomainError, TriwayError)


def test_parse_snr_and_dict():
    s = parse_snr("10, 100,1000")
    assert s == SnrTriple(10.0, 100.0, 1000.0)
    assert SnrTriple.from_dict(s.to_dict()) == s
    assert s.scaled(2).as_tuple() == (20.0, 200.0, 2000.0)
    with pytest.raises(DomainError):
        parse_snr("1,2")
    with pytest.raises(DomainError):
        parse_snr("a,b,c")


def test_rate_tuple():
    r = RateTuple.from_mapping({"R31": 1.5, Direction.R23: 2})
    assert r["R31"] == 1.5
    assert r[Direction.R23] == 2.0
    assert r.total() == approx(3.5)
    assert list(r.as_array()) == [0, 1.5, 0, 0, 0, 2]
    assert RateTuple.zeros().total() == 0
    with pytest.raises(DomainError):
        RateTuple((1, 2, 3))
    with pytest.raises(DomainError):
        RateTuple((0, 0, 0, 0, 0, -1))


def test_cap_bounds_and_monotonicity():
    rng = np.random.default_rng(3)
    xs = np.sort(10 ** rng.uniform(-3, 9, 500))
    caps = [cap(x) for x in xs]
    hats = [cap_hat(x) for x in xs]
    for c, h in zip(caps, hats):
        assert h <= c <= h + 0.5
    assert caps == sorted(caps)
    assert hats == sorted(hats)


def test_cap_hat_additive_above_one():
    rng = np.random.default_rng(4)
    for x, y in 10 ** rng.uniform(0, 6, size=(200, 2)):
        assert cap_hat(x * y) == approx(cap_hat(x) + cap_hat(y), abs=1e-12)
