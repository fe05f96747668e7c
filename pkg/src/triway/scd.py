# -*- coding: utf-8 -*-
"""
Successive channel decomposition.

A Gaussian channel with SNR `Gamma` is split into `N` power levels with
SNR `gamma = Gamma**(1/N)` each, level `l` carrying power
`p_l = gamma**l - gamma**(l-1)`, so that

    1 + sum(p_l) = Gamma.

Levels are numbered from 1 (weakest) to N (strongest). In a channel with
several users of decreasing SNRs `Gamma_1 >= Gamma_2 >= ...` user `i` owns
`N_i = floor(log Gamma_i / log gamma)` levels:

* many-to-one (uplink): user `i` reaches levels `1..N_i` at the receiver;
* one-to-many (downlink): user `i` decodes levels `N_1-N_i+1..N_1`.

Each level is then used with one of three strategies, whose rates are
given by `strategy_rate`.

"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Sequence, Tuple

from triway.core import DomainError, ValidityError, cap_hat

logger = logging.getLogger(__name__)

FLOOR_GUARD = 1e-12
MAX_USERS = 3


class Topology(Enum):
    P2P = "P2P"
    MANY_TO_ONE = "ManyToOne"
    ONE_TO_MANY = "OneToMany"


class Strategy(Enum):
    DECODE = "Decode"
    COMPUTE = "Compute"
    NEUTRALIZE = "Neutralize"


def decoding_loss(kappa: int, mu: int = 0) -> float:
    """Rate lost per decoding step, 1/2 log2(kappa + mu)."""
    return 0.5 * math.log2(kappa + mu)


@dataclass(frozen=True)
class StrategyRate:
    strategy: Strategy
    kappa: int
    kappa_prime: int
    mu: int
    rate: float

    @property
    def loss(self) -> float:
        return decoding_loss(self.kappa, self.mu)

    def to_dict(self) -> dict:
        return {"strategy": self.strategy.value, "kappa": self.kappa,
                "kappa_prime": self.kappa_prime, "mu": self.mu, "rate": self.rate}


@dataclass(frozen=True)
class SubChannelPlan:
    """
    Power levels of a decomposed channel and the levels each user reaches.
    Access windows are inclusive (first, last) pairs keyed by user number.
    """
    gamma: float
    topology: Topology
    counts: Tuple[int, ...]
    powers: Tuple[float, ...]
    uplink_access: Dict[int, Tuple[int, int]] = field(default_factory=dict)
    downlink_access: Dict[int, Tuple[int, int]] = field(default_factory=dict)
    rate: float = 0.0
    q: Dict[int, int] = field(default_factory=dict)

    @property
    def levels(self) -> int:
        return self.counts[0]

    @property
    def total_snr(self) -> float:
        return 1.0 + math.fsum(self.powers)

    def to_dict(self) -> dict:
        return {"gamma": self.gamma,
                "topology": self.topology.value,
                "counts": list(self.counts),
                "powers": list(self.powers),
                "uplink_access": {str(k): list(v) for k, v in self.uplink_access.items()},
                "downlink_access": {str(k): list(v) for k, v in self.downlink_access.items()},
                "rate": self.rate,
                "q": {str(k): v for k, v in self.q.items()}}


def level_powers(gamma: float, n: int) -> Tuple[float, ...]:
    return tuple(gamma ** l - gamma ** (l - 1) for l in range(1, n + 1))


def _check_levels(n, name="N"):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError("%s must be a positive integer, got %r" % (name, n))
    return int(n)


def _check_gammas(gammas: Sequence[float]) -> Tuple[float, ...]:
    g = tuple(float(x) for x in gammas)
    if not 1 <= len(g) <= MAX_USERS:
        raise DomainError("between 1 and %d users are supported, got %d" % (MAX_USERS, len(g)))
    if any(not math.isfinite(x) or x <= 1 for x in g):
        raise DomainError("every SNR must exceed 1, got %r" % (g,))
    if any(a < b for a, b in zip(g, g[1:])):
        raise DomainError("SNRs must be in descending order, got %r" % (g,))
    return g


def _counts(g: Tuple[float, ...], n1: int) -> Tuple[float, Tuple[int, ...]]:
    gamma = g[0] ** (1.0 / n1)
    log_gamma = math.log(g[0]) / n1
    counts = [n1]
    for x in g[1:]:
        v = math.log(x) / log_gamma
        counts.append(int(math.floor(v + FLOOR_GUARD * max(1.0, v))))
    if min(counts) < 1:
        raise ValidityError("SNRs %r leave a user without sub-channels at N1=%d (counts %r)"
                            % (g, n1, counts))
    return gamma, tuple(counts)


def decompose_p2p(Gamma: float, N: int) -> SubChannelPlan:
    """
    Split a point-to-point channel into N levels of rate C^(gamma) each,
    N C^(gamma) = C^(Gamma).

    Parameters
    ----------
    Gamma : float
        Channel SNR, must exceed 1.
    N : int
        Number of levels.

    Returns
    -------
    SubChannelPlan

    """
    n = _check_levels(N)
    if not math.isfinite(Gamma) or Gamma <= 1:
        raise DomainError("a point-to-point decomposition needs Gamma > 1, got %r" % (Gamma,))
    gamma = Gamma ** (1.0 / n)
    return SubChannelPlan(gamma=gamma, topology=Topology.P2P, counts=(n,),
                          powers=level_powers(gamma, n),
                          uplink_access={1: (1, n)}, downlink_access={1: (1, n)},
                          rate=cap_hat(gamma))


def decompose_many_to_one(gammas: Sequence[float], N1: int, kappa: int) -> Tuple[SubChannelPlan, StrategyRate]:
    """
    Decompose a multiple-access channel; user i reaches levels 1..N_i.

    Parameters
    ----------
    gammas : sequence of float
        Descending user SNRs.
    N1 : int
        Levels of the strongest user.
    kappa : int
        Largest number of users sharing a level.

    Returns
    -------
    (SubChannelPlan, StrategyRate)
        Per-level rate C^(gamma / kappa).

    """
    n1 = _check_levels(N1, "N1")
    kappa = _check_levels(kappa, "kappa")
    g = _check_gammas(gammas)
    if g[0] <= kappa ** n1:
        raise ValidityError("many-to-one decomposition needs Gamma_1 > kappa^N1 = %d, got %g"
                            % (kappa ** n1, g[0]))
    gamma, counts = _counts(g, n1)
    sr = strategy_rate(gamma, Strategy.DECODE, kappa)
    plan = SubChannelPlan(gamma=gamma, topology=Topology.MANY_TO_ONE, counts=counts,
                          powers=level_powers(gamma, n1),
                          uplink_access={i + 1: (1, c) for i, c in enumerate(counts)},
                          rate=sr.rate)
    return plan, sr


def decompose_one_to_many(gammas: Sequence[float], N1: int) -> Tuple[SubChannelPlan, StrategyRate]:
    """
    Decompose a broadcast channel; user i decodes levels N1-N_i+1..N1.

    For every weaker user i the smallest level it can decode after treating
    the stronger levels as noise is q_i = ceil(log(sigma_i^2 - 1)/log(gamma) + 1)
    with sigma_i^2 = Gamma_1/Gamma_i; N1 + 1 - q_i >= N_i is checked.

    Parameters
    ----------
    gammas : sequence of float
        Descending receiver SNRs.
    N1 : int
        Levels of the strongest receiver.

    Returns
    -------
    (SubChannelPlan, StrategyRate)
        Per-level rate C^(gamma / (1 + mu)), mu = 0 for a single receiver.

    """
    n1 = _check_levels(N1, "N1")
    g = _check_gammas(gammas)
    mu = 0 if len(g) == 1 else 1
    if g[0] <= (1 + mu) ** n1:
        raise ValidityError("one-to-many decomposition needs Gamma_1 > %d^N1, got %g" % (1 + mu, g[0]))
    gamma, counts = _counts(g, n1)
    q = dict()
    for i, (x, n_i) in enumerate(zip(g[1:], counts[1:]), start=2):
        sigma2 = g[0] / x
        if sigma2 - 1 <= 0:
            q_i = 1
        else:
            q_i = max(1, math.ceil(math.log(sigma2 - 1) / math.log(gamma) + 1 - FLOOR_GUARD))
        if n1 + 1 - q_i < n_i:
            raise ValidityError("user %d reaches %d levels but needs %d" % (i, n1 + 1 - q_i, n_i))
        q[i] = q_i
    sr = strategy_rate(gamma, Strategy.DECODE, 1, mu=mu)
    plan = SubChannelPlan(gamma=gamma, topology=Topology.ONE_TO_MANY, counts=counts,
                          powers=level_powers(gamma, n1),
                          downlink_access={i + 1: (n1 - c + 1, n1) for i, c in enumerate(counts)},
                          rate=sr.rate, q=q)
    logger.debug("one-to-many plan gamma=%.6g counts=%s q=%s", gamma, counts, q)
    return plan, sr


def strategy_rate(gamma: float, strategy: Strategy, kappa: int,
                  kappa_prime: Optional[int] = None, mu: int = 0) -> StrategyRate:
    """
    Rate of one level used with the given strategy.

    Parameters
    ----------
    gamma : float
        SNR of the level.
    strategy : Strategy
        DECODE: C^(gamma/(kappa+mu)); COMPUTE: C^(1/kappa' + gamma/(kappa+mu));
        NEUTRALIZE: C^(1/2 + gamma/(kappa+mu)).
    kappa : int
        Users transmitting on the level.
    kappa_prime : int, optional
        Users entering the computed sum, at most kappa. Defaults to kappa.
    mu : int, optional
        1 if the level is decoded by more than one receiver. The default is 0.

    Returns
    -------
    StrategyRate

    """
    if not isinstance(strategy, Strategy):
        strategy = Strategy(strategy)
    kappa = _check_levels(kappa, "kappa")
    kappa_prime = kappa if kappa_prime is None else _check_levels(kappa_prime, "kappa_prime")
    if kappa_prime > kappa:
        raise DomainError("kappa_prime=%d exceeds kappa=%d" % (kappa_prime, kappa))
    if mu not in (0, 1):
        raise DomainError("mu must be 0 or 1, got %r" % (mu,))
    if gamma <= 0:
        raise DomainError("gamma must be positive, got %r" % (gamma,))
    base = gamma / (kappa + mu)
    if strategy == Strategy.DECODE:
        rate = cap_hat(base)
    elif strategy == Strategy.COMPUTE:
        rate = cap_hat(1.0 / kappa_prime + base)
    else:
        rate = cap_hat(0.5 + base)
    return StrategyRate(strategy, kappa, kappa_prime, mu, rate)
