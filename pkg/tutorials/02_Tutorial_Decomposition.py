# -*- coding: utf-8 -*-
"""
02_Tutorial_Decomposition
"""

# Successive channel decomposition splits a Gaussian channel into levels of
# equal rate. The weakest user sees only the top levels.

from triway.scd import Strategy, decompose_many_to_one, decompose_one_to_many, decompose_p2p, strategy_rate

# Point-to-point: a channel of SNR 1000 into 4 levels
plan = decompose_p2p(1000.0, 4)
print(plan.levels, plan.rate, plan.total_snr)

# Three users transmitting to the relay, users decoded two at a time
gammas = [2 ** 12, 2 ** 9, 2 ** 6]
plan, rate = decompose_many_to_one(gammas, 4, 2)
print(plan.counts, plan.uplink_access, rate.rate, rate.loss)

# The relay broadcasting back to three users
plan, rate = decompose_one_to_many(gammas, 4)
print(plan.counts, plan.downlink_access, plan.q)

# Rates of the per-level strategies at level SNR 64
for st in Strategy:
    print(st.value, strategy_rate(64.0, st, 2).rate)
