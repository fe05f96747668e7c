# -*- coding: utf-8 -*-
"""
00_Tutorial_Regions
"""

# In this tutorial we build the rate regions of the 3-way channel.
# A region is a set of linear bounds A r <= b on the six directed rates
# (R21, R31, R12, R32, R13, R23), always in this order.

from triway.core import Direction, validate_snr
from triway.regions import (admissible_n3, cutset_region, lemma1_outer, prop2_3wc_region, sum_capacity,
                            theorem1_region)

# Channel gains are given as SNRs and must be ordered g1 <= g2 <= g3.
# g1 is the weakest link (users 2-3), g3 the strongest (users 1-2).
s = validate_snr(10, 100, 1000)

# The capacity region within a constant gap
approx = theorem1_region(s)
for b in approx.bounds:
    print(b.label, b.rhs)

# The outer bound adds 1.5, 1 or 2 bits to the same patterns
outer = lemma1_outer(s)
print([b.rhs - a.rhs for b, a in zip(outer.bounds, approx.bounds)])

# Cut-set bounds for comparison
print(len(cutset_region(s).bounds), "cut-set bounds")

# The achievable region of the decomposition scheme needs a number of
# levels N3 taken from an open window; let's see which ones work
print("admissible N3:", admissible_n3(s))
inner = prop2_3wc_region(s, 5)
print(inner.meta)

# Grouping adjacent levels lowers the loss at high SNR. Bounds that would
# go negative are clamped at zero and listed in meta['clamped']
grouped = prop2_3wc_region(s, 5, grouped=True)
print(grouped.meta.get("clamped"))

# Restrict a region to a few rates, setting the others to zero
two_user = approx.restrict([Direction.R31, "R32"])
print(two_user.meta)

# Sum-capacity is attained by the two-way exchange between users 1 and 2
total, corner = sum_capacity(s)
print(total, corner.to_dict())
