# -*- coding: utf-8 -*-
"""
03_Tutorial_Allocation
"""

# The sub-channels (Ñ1, Ñ2, Ñ3) of the extended Y-channel are shared among
# the six directions. A demand says how many sub-channels each direction wants.

from triway.alloc import DemandTuple, allocate, check_allocation, feasible, group, max_weighted_demand
from triway.core import PlacementError

n_tilde = (7, 5, 3)

# A two-way exchange between users 1 and 2
d = DemandTuple((1, 0, 1, 0, 0, 0))
a = allocate(d, n_tilde)
for sig in a.signals:
    print(sig.case.value, sig.uplink, sig.downlink)

# This one needs a level of user 3 to be neutralized
d = DemandTuple.parse("0,3,4,0,0,0")
print(feasible(d, n_tilde))
a = allocate(d, n_tilde)
print(check_allocation(a))  # empty: nothing violated
print(a.to_dict())

# Some demands fit the counting bounds but cannot be placed
try:
    allocate(DemandTuple((1, 1, 0, 0, 1, 0)), (2, 2, 1))
except PlacementError as err:
    print(err, err.cases)

# Grouping runs of the same usage case at level SNR 8
g = group(a, 8.0)
print(g.total_rate, g.ungrouped_rate)

# Largest weighted demand that still fits
best = max_weighted_demand({"R31": 2.0, "R12": 1.0}, n_tilde)
print(best.demand, best.value, best.optimal)
