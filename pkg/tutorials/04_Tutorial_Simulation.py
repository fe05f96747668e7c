# -*- coding: utf-8 -*-
"""
04_Tutorial_Simulation
"""

# The simulator runs the block-Markov protocol symbolically with arithmetic
# modulo q (Z_q, not a field unless q is prime) and checks that every user
# decodes what was sent to it.

import logging

from triway.alloc import DemandTuple
from triway.sim import SimConfig, negative_run, run

# Decoding steps are recorded in trace.log; the logger only reports a
# one-line run summary at INFO and residual interference as a warning
logging.basicConfig(level=logging.INFO)

cfg = SimConfig.build(DemandTuple((0, 3, 4, 0, 0, 0)), (7, 5, 3), q=16, B=3, seed=7)
trace = run(cfg)
print("success:", trace.success)
for line in trace.log[:10]:
    print(line)

# Neutralized levels are reported one by one
for n in trace.neutralizations:
    print(n.block, n.index, n.victim, n.ok)

# One record per block, sub-channel and node; handy for plotting
print(trace.records()[:3])

# negative_run returns the first residual interference, or None
print(negative_run(cfg))

# Configs can be stored and reloaded, messages included
again = SimConfig.from_dict(cfg.to_dict())
print(run(again).decoded == trace.decoded)
