# -*- coding: utf-8 -*-
"""
Base scenario library.

This is a collection of the cooperative two-user channels that are special
cases of the 3-way channel with g3 >= g2 >= g1. Users 1 and 2 are the
transmitters (MAC) or receivers (BC), g3 is the SNR of the cooperation link
between them, g2 and g1 are the SNRs of their links to user 3.

Note that individual scenario methods are not documented but should be
readable and self-explanatory.

The library provides the following scenarios:

* MAC_CONF: MAC with conferencing encoders.
* MAC_INBAND: MAC with in-band cooperation (generalized feedback).
* BC_COOP: broadcast channel with in-band cooperation between receivers.

"""

import numpy as np

from triway.core import cap
from triway.scenarios import (Scenario, cap_array, mac_corners, registerScenariosInModule,
                              simplex_grid)

_CHUNK = 64


class MacConferencing(Scenario):
    def initialize(self):
        self.set_name("MAC_CONF")
        self.set_description("Two-user MAC with conferencing encoders.")

    def parameters(self):
        self.addparameter("C12", -1, "Conferencing capacity from user 2 to user 1, negative for C(g3)",
                          float, (-1, np.inf))
        self.addparameter("C21", -1, "Conferencing capacity from user 1 to user 2, negative for C(g3)",
                          float, (-1, np.inf))
        self.addparameter("beta1", 1, "Power share of user 1 for fresh information", float, (0, 1))
        self.addparameter("beta2", 1, "Power share of user 2 for fresh information", float, (0, 1))

    def conferencing(self, s):
        p = self.get_params()
        c12 = p["C12"] if p["C12"] >= 0 else cap(s.g3)
        c21 = p["C21"] if p["C21"] >= 0 else cap(s.g3)
        return c12, c21

    def sweep(self, resolution):
        b1, b2 = np.meshgrid(np.linspace(0, 1, resolution), np.linspace(0, 1, resolution), indexing="ij")
        yield {"beta1": b1.ravel(), "beta2": b2.ravel()}

    def evaluate(self, s, beta1, beta2):
        c12, c21 = self.conferencing(s)
        g1, g2 = s.g1, s.g2
        beta1 = np.asarray(beta1, dtype=float)
        beta2 = np.asarray(beta2, dtype=float)
        a = cap_array(beta1 * g2) + c21
        b = cap_array(beta2 * g1) + c12
        coherent = g1 + g2 + 2 * np.sqrt((1 - beta1) * (1 - beta2) * g1 * g2)
        c = np.minimum(cap_array(beta1 * g2 + beta2 * g1) + c21 + c12, cap_array(coherent))
        return mac_corners(a, b, c)

    def corners(self, s):
        p = self.get_params()
        return self.evaluate(s, np.array([p["beta1"]]), np.array([p["beta2"]]))


class MacInband(Scenario):
    def initialize(self):
        self.set_name("MAC_INBAND")
        self.set_description("Two-user MAC with in-band cooperation.")

    def parameters(self):
        for i in (1, 2):
            self.addparameter("beta%d1" % i, 0, "Share of user %d for cooperation traffic" % i, float, (0, 1))
            self.addparameter("beta%d2" % i, 0, "Share of user %d for fresh information" % i, float, (0, 1))

    def sweep(self, resolution):
        x, y = simplex_grid(resolution)
        for start in range(0, len(x), _CHUNK):
            stop = min(start + _CHUNK, len(x))
            # user 1 chunk against every user 2 split
            b11 = np.repeat(x[start:stop], len(x))
            b12 = np.repeat(y[start:stop], len(x))
            b21 = np.tile(x, stop - start)
            b22 = np.tile(y, stop - start)
            yield {"beta11": b11, "beta12": b12, "beta21": b21, "beta22": b22}

    def evaluate(self, s, beta11, beta12, beta21, beta22):
        g1, g2, g3 = s.g1, s.g2, s.g3
        beta11, beta12, beta21, beta22 = (np.asarray(v, dtype=float) for v in (beta11, beta12, beta21, beta22))
        beta13 = np.clip(1 - beta11 - beta12, 0, None)
        beta23 = np.clip(1 - beta21 - beta22, 0, None)
        coop1 = cap_array(beta11 * g3 / (1 + beta12 * g3))
        coop2 = cap_array(beta21 * g3 / (1 + beta22 * g3))
        a = coop1 + cap_array(beta12 * g2)
        b = coop2 + cap_array(beta22 * g1)
        c = np.minimum(cap_array(g2 + g1 + 2 * np.sqrt(beta13 * beta23 * g1 * g2)),
                       cap_array(beta12 * g2 + beta22 * g1) + coop1 + coop2)
        return mac_corners(a, b, c)

    def corners(self, s):
        p = self.get_params()
        return self.evaluate(s, *(np.array([p[k]]) for k in ("beta11", "beta12", "beta21", "beta22")))


class BcCoop(Scenario):
    def initialize(self):
        self.set_name("BC_COOP")
        self.set_description("Two-user broadcast channel with in-band cooperation between the receivers.")

    def parameters(self):
        self.addparameter("beta2", 0, "Relaying share of the cooperating receiver", float, (0, 1))
        self.addparameter("beta31", 1, "Transmitter share for the first receiver", float, (0, 1))
        self.addparameter("beta32", 0, "Transmitter share coherent with the relayed signal", float, (0, 1))

    def sweep(self, resolution):
        x, y = simplex_grid(resolution)
        for b2 in np.linspace(0, 1, resolution):
            yield {"beta2": np.full(len(x), b2), "beta31": x, "beta32": y}

    def evaluate(self, s, beta2, beta31, beta32):
        g1, g2, g3 = s.g1, s.g2, s.g3
        beta2, beta31, beta32 = (np.asarray(v, dtype=float) for v in (beta2, beta31, beta32))
        beta33 = np.clip(1 - beta31 - beta32, 0, None)
        r1 = cap_array(beta31 * g2 + beta31 * beta2 * g1 * g3 / (1 + beta2 * g3 + beta31 * (g1 + g2)))
        r2 = np.minimum(cap_array(((beta33 + beta32) * g1 + g3 + 2 * np.sqrt(beta32 * g1 * g3)) / (1 + beta31 * g1)),
                        cap_array(beta33 * g2 / (1 + beta31 * g2 + beta2 * g3)))
        return np.stack([r1.ravel(), r2.ravel()], axis=1)

    def corners(self, s):
        p = self.get_params()
        return self.evaluate(s, np.array([p["beta2"]]), np.array([p["beta31"]]), np.array([p["beta32"]]))


registerScenariosInModule(__name__)
