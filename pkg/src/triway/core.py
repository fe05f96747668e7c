# -*- coding: utf-8 -*-
"""
Scalar capacity functions, message indexing and validated channel parameters.

Conventions
-----------

Three users exchange six private messages. A directed message from user `i`
to user `j` is indexed by the pair (dst, src) and its rate is written `R_ji`,
so that `R21` is the rate of the message sent by user 1 to user 2.
The six directions are kept in the fixed canonical order

    R21, R31, R12, R32, R13, R23

and every vector of rates or coefficients in `triway` uses this order.
Iterating over `Direction` yields the directions in that order.

Channel strengths are given as linear SNR values. Two ordering conventions
are used throughout the package:

* `Convention.THREE_WAY`: the 3-way channel, `g3 >= g2 >= g1`, where `g_k` is
  the SNR of the link between the two users other than `k`.
* `Convention.YSTAR`: the star (Y) channel obtained after the delta-star
  transformation, `g1 >= g2 >= g3`.

All rates are in bits per channel use (logarithms in base 2).

"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Mapping, Tuple

import numpy as np

logger = logging.getLogger(__name__)

ABS_TOL = 1e-9


class TriwayError(Exception):
    """Base class of every error raised by `triway`."""
    code = "triway"


class DomainError(TriwayError, ValueError):
    code = "domain"


class OrderingError(DomainError):
    code = "ordering"


class FeasibilityError(TriwayError):
    """
    An integer parameter lies outside its admissible window.
    The real-valued window and the admissible integers are attached.
    """
    code = "feasibility"

    def __init__(self, message: str, window: Tuple[float, float] = None,
                 admissible: Iterable[int] = ()):
        super().__init__(message)
        self.window = window
        self.admissible = list(admissible)


class ValidityError(TriwayError):
    code = "validity"


class UnboundedRegionError(TriwayError):
    code = "unbounded"


class InfeasibleError(TriwayError):
    code = "infeasible"


class PlacementError(TriwayError):
    """
    The counting system holds but no index assignment honors the placement
    rules. `cases` lists the usage cases that could not be placed.
    """
    code = "placement"

    def __init__(self, message: str, cases: Iterable[str] = ()):
        super().__init__(message)
        self.cases = list(cases)


class UnknownScenarioError(TriwayError, KeyError):
    code = "unknown-scenario"

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class ConfigError(TriwayError):
    code = "config"


def cap(x: float) -> float:
    """
    Gaussian point-to-point capacity C(x) = 1/2 log2(1+x).

    Parameters
    ----------
    x : float
        Linear SNR, must be nonnegative.

    Returns
    -------
    float
        The capacity in bits.

    """
    if x < 0:
        raise DomainError("cap() requires a nonnegative argument, got %r" % x)
    return 0.5 * math.log2(1.0 + x)


def cap_hat(x: float) -> float:
    """
    The high-SNR capacity C^(x) = max{0, 1/2 log2(x)}, i.e. max{0, C(x-1)}.

    Parameters
    ----------
    x : float
        Linear SNR, must be nonnegative.

    Returns
    -------
    float
        The rate in bits, 0 for x <= 1.

    """
    if x < 0:
        raise DomainError("cap_hat() requires a nonnegative argument, got %r" % x)
    if x <= 1:
        return 0.0
    return 0.5 * math.log2(x)


class Direction(Enum):
    """
    One of the six directed messages, valued by its (dst, src) pair.
    """
    R21 = (2, 1)
    R31 = (3, 1)
    R12 = (1, 2)
    R32 = (3, 2)
    R13 = (1, 3)
    R23 = (2, 3)

    @property
    def dst(self) -> int:
        return self.value[0]

    @property
    def src(self) -> int:
        return self.value[1]

    @property
    def index(self) -> int:
        return _DIRECTION_INDEX[self]

    @classmethod
    def of(cls, src: int, dst: int) -> "Direction":
        """
        The direction carrying a message from `src` to `dst`.
        """
        try:
            return cls((dst, src))
        except ValueError:
            raise DomainError("no direction from user %r to user %r" % (src, dst)) from None

    @classmethod
    def parse(cls, name: str) -> "Direction":
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise DomainError("unknown direction %r" % name) from None

    def __str__(self):
        return self.name


DIRECTIONS: Tuple[Direction, ...] = tuple(Direction)
_DIRECTION_INDEX = {d: i for i, d in enumerate(DIRECTIONS)}


def rate_label(coeffs: Iterable[int]) -> str:
    """
    Text form of a 0/1 coefficient vector, e.g. (0,1,0,1,0,0) -> 'R31+R32'.
    """
    return "+".join(d.name for d, c in zip(DIRECTIONS, coeffs) if c)


class Convention(Enum):
    THREE_WAY = "ThreeWay"
    YSTAR = "Ystar"


@dataclass(frozen=True)
class SnrTriple:
    """
    Validated link SNRs (g1, g2, g3) with their ordering convention.
    Construction fails with `OrderingError` when the ordering of the
    convention does not hold.
    """
    g1: float
    g2: float
    g3: float
    convention: Convention = Convention.THREE_WAY

    def __post_init__(self):
        for name in ("g1", "g2", "g3"):
            val = getattr(self, name)
            if not (isinstance(val, (int, float, np.floating, np.integer)) and math.isfinite(val)) or val <= 0:
                raise DomainError("SNR %s must be a positive finite number, got %r" % (name, val))
        if self.convention == Convention.THREE_WAY:
            if not (self.g3 >= self.g2 >= self.g1):
                raise OrderingError("ThreeWay convention requires g3 >= g2 >= g1, got (%g, %g, %g)"
                                    % (self.g1, self.g2, self.g3))
        elif self.convention == Convention.YSTAR:
            if not (self.g1 >= self.g2 >= self.g3):
                raise OrderingError("Ystar convention requires g1 >= g2 >= g3, got (%g, %g, %g)"
                                    % (self.g1, self.g2, self.g3))
        else:
            raise DomainError("unknown convention %r" % (self.convention,))

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.g1, self.g2, self.g3)

    def scaled(self, factor: float) -> "SnrTriple":
        return SnrTriple(self.g1 * factor, self.g2 * factor, self.g3 * factor, self.convention)

    def to_dict(self) -> dict:
        return {"g1": float(self.g1), "g2": float(self.g2), "g3": float(self.g3),
                "tag": self.convention.value}

    @classmethod
    def from_dict(cls, d: Mapping) -> "SnrTriple":
        try:
            return validate_snr(d["g1"], d["g2"], d["g3"], d.get("tag", Convention.THREE_WAY.value))
        except KeyError as err:
            raise DomainError("SNR record is missing field %s" % err) from None


def validate_snr(g1: float, g2: float, g3: float, tag="ThreeWay") -> SnrTriple:
    """
    Builds a validated `SnrTriple`.

    Parameters
    ----------
    g1, g2, g3 : float
        Positive linear SNRs.
    tag : str or Convention, optional
        'ThreeWay' (g3 >= g2 >= g1) or 'Ystar' (g1 >= g2 >= g3).
        The default is 'ThreeWay'.

    Returns
    -------
    SnrTriple

    """
    if not isinstance(tag, Convention):
        try:
            tag = Convention(tag)
        except ValueError:
            raise DomainError("unknown SNR convention %r" % (tag,)) from None
    return SnrTriple(g1, g2, g3, tag)


def parse_snr(text: str, tag="ThreeWay") -> SnrTriple:
    """Parses 'g1,g2,g3' into a validated triple."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != 3:
        raise DomainError("expected three comma separated SNR values, got %r" % text)
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise DomainError("malformed SNR values %r" % text) from None
    return validate_snr(*vals, tag=tag)


class RateTuple:
    """
    Six nonnegative directed rates in canonical `Direction` order.
    Instances are immutable; index them with a `Direction` or its name.
    """
    __slots__ = ("_r",)

    def __init__(self, values: Iterable[float] = (0, 0, 0, 0, 0, 0)):
        r = tuple(float(v) for v in values)
        if len(r) != 6:
            raise DomainError("a rate tuple has 6 entries, got %d" % len(r))
        if any(not math.isfinite(v) or v < 0 for v in r):
            raise DomainError("rates must be finite and nonnegative, got %r" % (r,))
        self._r = r

    @classmethod
    def from_mapping(cls, rates: Mapping) -> "RateTuple":
        vals = [0.0] * 6
        for key, val in rates.items():
            d = key if isinstance(key, Direction) else Direction.parse(str(key))
            vals[d.index] = val
        return cls(vals)

    @classmethod
    def zeros(cls) -> "RateTuple":
        return cls()

    def __getitem__(self, key) -> float:
        d = key if isinstance(key, Direction) else Direction.parse(str(key))
        return self._r[d.index]

    def __iter__(self):
        return iter(self._r)

    def __len__(self):
        return 6

    def __eq__(self, other):
        return isinstance(other, RateTuple) and self._r == other._r

    def __hash__(self):
        return hash(self._r)

    def __repr__(self):
        return "RateTuple(%s)" % ", ".join("%s=%g" % (d.name, v) for d, v in zip(DIRECTIONS, self._r))

    def as_array(self) -> np.ndarray:
        return np.array(self._r, dtype=float)

    def total(self) -> float:
        return sum(self._r)

    def to_dict(self) -> Dict[str, float]:
        return {d.name: v for d, v in zip(DIRECTIONS, self._r)}
