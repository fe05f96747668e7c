# -*- coding: utf-8 -*-
"""
Parametrized two-user scenarios embedded in the 3-way channel.

The `Scenario` class is an interface to describe cooperative multiple-access
and broadcast channels whose achievable region is a union of simple
polytopes over a set of power-splitting parameters.

Creating scenarios
------------------

A scenario is created by deriving the `Scenario` class and re-implementing
a few methods:

    class MyScenario(Scenario):
        def initialize(self):
            self.set_name("MY_SCENARIO")
            self.set_description("A short description.")

        def parameters(self):
            self.addparameter("beta", 0.5, "Power share", float, (0, 1))

        def sweep(self, resolution):
            # Yield dictionaries of numpy arrays sampling the parameter space
            yield {"beta": np.linspace(0, 1, resolution)}

        def evaluate(self, s, beta):
            # Return an (M, 2) array of corner points (R1, R2)
            ...

The `initialize` method sets the registered name. `parameters` declares the
fixed parameters of the scenario via `Scenario.addparameter`; they are read
back with `Scenario.get_params`, which casts and clips them into range.
The `sweep` generator describes how the union over the power-splitting
parameters is sampled and `evaluate` returns the corner points of the
per-parameter polytopes, vectorized over the sampled arrays.

The two rates of every scenario are identified with `R31` (user 1 to user 3)
and `R32` (user 2 to user 3) of the 3-way channel.

Registering scenarios
---------------------

Scenarios are registered by calling `registerScenariosInModule(__name__)` at
the end of the module that defines them. A registered scenario is built via

    sc = Scenario.build_registered("MAC_CONF")
    frontier = sc.frontier(s)

See `triway.baselib.scenarios` for the scenarios shipped with `triway`.

"""

import inspect
import logging
import sys
from typing import Dict, Iterator

import numpy as np

from triway.core import ConfigError, DomainError, SnrTriple, UnknownScenarioError

logger = logging.getLogger(__name__)

_ScenarioList = dict()  # registered name -> Scenario subclass


def cap_array(x):
    """Vectorized 1/2 log2(1+x)."""
    return 0.5 * np.log2(1.0 + np.asarray(x, dtype=float))


def pareto_front(points: np.ndarray) -> np.ndarray:
    """
    Nondominated subset of a set of (R1, R2) points.

    Parameters
    ----------
    points : np.ndarray
        Array of shape (M, 2).

    Returns
    -------
    np.ndarray
        The nondominated points sorted by decreasing R1.

    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        return pts
    order = np.lexsort((-pts[:, 1], -pts[:, 0]))
    pts = pts[order]
    best = np.maximum.accumulate(pts[:, 1])
    keep = np.ones(len(pts), dtype=bool)
    keep[1:] = pts[1:, 1] > best[:-1] + 1e-12
    return pts[keep]


def mac_corners(a, b, c) -> np.ndarray:
    """
    Corner points of {R1 <= a, R2 <= b, R1+R2 <= c} (vectorized).

    Returns
    -------
    np.ndarray
        Array of shape (2*M, 2).

    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    c = np.asarray(c, dtype=float).ravel()
    r1 = np.minimum(a, c)
    p1 = np.stack([r1, np.clip(np.minimum(b, c - r1), 0, None)], axis=1)
    r2 = np.minimum(b, c)
    p2 = np.stack([np.clip(np.minimum(a, c - r2), 0, None), r2], axis=1)
    return np.concatenate([p1, p2])


def simplex_grid(resolution: int):
    """
    Grid points (x, y) on {x, y >= 0, x + y <= 1} with spacing 1/(resolution-1).
    The third share of a 3-way power split is 1 - x - y.
    """
    n = resolution - 1
    i, j = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    mask = (i + j) <= n
    return i[mask] / n, j[mask] / n


class Scenario:
    def __init__(self):
        """
        Initializes a Scenario. Use `Scenario.build` instead.
        """
        self._p = dict()
        self._pdescr = dict()
        self._ptype = dict()
        self._prange = dict()
        self._name = ""
        self._description = "No description yet"

    def addparameter(self, param_name: str, default_value, param_description: str,
                     param_type=float, param_range=(0, np.inf)):
        """
        Call this from the parameters() method to add a parameter to the scenario.

        Parameters
        ----------
        param_name : str
            The name of the parameter.
        default_value : TYPE
            The default value.
        param_description : str
            A text describing the parameter.
        param_type : TYPE, optional
            The type of the parameter. The default is float.
        param_range : tuple, optional
            Min and max value of the parameter. The default is (0, np.inf).

        Returns
        -------
        None.

        """
        if param_name.find(":") != -1:
            raise ConfigError("Cannot define parameter names containing ':' (%s)" % param_name)
        self._p[param_name] = default_value
        self._pdescr[param_name] = param_description
        self._ptype[param_name] = param_type
        self._prange[param_name] = param_range

    def set_param(self, param_name: str, value):
        """
        Change a parameter. To be called after build().

        Parameters
        ----------
        param_name : str
            The parameter to be changed.
        value : TYPE
            The new value of the parameter.

        Returns
        -------
        None.

        """
        if param_name not in self._p:
            raise ConfigError("Could not set parameter named %s as it was not defined by scenario %s"
                              % (param_name, self._name))
        self._p[param_name] = value

    def get_params(self, cast_types: bool = True, clip_in_range: bool = True) -> dict:
        """
        Returns the dictionary with all parameters.

        Parameters
        ----------
        cast_types : bool, optional
            Attempts to do a type-cast on the parameter. The default is True.
        clip_in_range : bool, optional
            Clips the value in the range specified. The default is True.

        Returns
        -------
        dict
            A dictionary with the parameter value map.

        """
        if cast_types:
            for p, val in self._p.items():
                try:
                    self._p[p] = self._ptype[p](val)
                except (TypeError, ValueError):
                    raise ConfigError("Parameter %s of %s cannot be cast from %r"
                                      % (p, self._name, val)) from None
        if clip_in_range:
            for p, val in self._p.items():
                lo, hi = self._prange[p]
                if val < lo:
                    logger.debug("Clipping %s=%r to %r in %s", p, val, lo, self._name)
                    val = lo
                if val > hi:
                    logger.debug("Clipping %s=%r to %r in %s", p, val, hi, self._name)
                    val = hi
                self._p[p] = val
        return self._p

    def describe_params(self) -> Dict[str, str]:
        return dict(self._pdescr)

    def set_name(self, name: str):
        self._name = name

    def set_description(self, descr: str):
        self._description = descr

    @property
    def name(self) -> str:
        return self._name

    @property
    def description(self) -> str:
        return self._description

    def initialize(self):
        """
        Re-implement this function to set the scenario name and description.
        """
        pass

    def parameters(self):
        """
        Re-implement this function to define the fixed parameters.
        """
        pass

    def sweep(self, resolution: int) -> Iterator[Dict[str, np.ndarray]]:
        """
        Re-implement this generator to sample the union parameters.
        Each yielded dictionary maps keyword names of `evaluate` to equally
        sized arrays.
        """
        return iter(())

    def evaluate(self, s: SnrTriple, **params) -> np.ndarray:
        """
        Re-implement this function to return the (M, 2) corner points of the
        per-parameter polytopes.
        """
        raise NotImplementedError

    def frontier(self, s: SnrTriple, grid_resolution: int = 64) -> np.ndarray:
        """
        Samples the union region and returns its Pareto frontier.

        Parameters
        ----------
        s : SnrTriple
            A ThreeWay triple.
        grid_resolution : int, optional
            Points per parameter dimension. The default is 64.

        Returns
        -------
        np.ndarray
            Nondominated (R1, R2) points, shape (K, 2).

        """
        if int(grid_resolution) != grid_resolution or grid_resolution < 2:
            raise DomainError("grid_resolution must be an integer >= 2, got %r" % (grid_resolution,))
        front = np.zeros((0, 2))
        for batch in self.sweep(int(grid_resolution)):
            pts = self.evaluate(s, **batch)
            front = pareto_front(np.concatenate([front, pts]))
        logger.debug("%s frontier at %s has %d points", self._name, s.as_tuple(), len(front))
        return front

    @staticmethod
    def build_registered(name: str) -> "Scenario":
        """
        Builds a scenario from the pool of registered scenario names.

        Parameters
        ----------
        name : str
            The registered scenario name.

        Returns
        -------
        Scenario
            The scenario, ready to be evaluated.

        """
        if name in _ScenarioList:
            return _ScenarioList[name].build()
        raise UnknownScenarioError("No scenario named %s found (known: %s)"
                                   % (name, ", ".join(sorted(_ScenarioList))))

    @classmethod
    def build(cls) -> "Scenario":
        scenario = cls()
        scenario.initialize()
        scenario.parameters()
        return scenario


def registered_scenarios() -> Dict[str, str]:
    """Registered scenario names and descriptions."""
    out = dict()
    for name, cls in sorted(_ScenarioList.items()):
        out[name] = cls.build().description
    return out


def registerScenariosInModule(module_name: str):
    """
    To be called at the end of a python module containing classes that
    inherit the `Scenario` class. It will register the scenario names in a
    global database.

    Parameters
    ----------
    module_name : str
        The python module name, if used in the same file, just use `__name__`.

    Returns
    -------
    None.

    """
    for name, obj in inspect.getmembers(sys.modules[module_name]):
        if inspect.isclass(obj) and issubclass(obj, Scenario) and obj is not Scenario:
            oj = obj()
            oj.initialize()
            _ScenarioList[oj._name] = obj
            logger.debug("Loaded %s : %s", oj._name, oj._description)
