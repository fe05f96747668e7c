# -*- coding: utf-8 -*-
"""
05_Tutorial_Sweep
"""

# Sweeping the SNR along g1 = g3^(1/3), g2 = g3^(2/3) shows that the grouped
# scheme keeps a constant gap to the outer bound.

from triway.core import validate_snr
from triway.regions import special_case_region
from triway.scenarios import registered_scenarios
from triway.sweep import N3Policy, flatness, grouped_bound, sweep

grid = [validate_snr(10 ** (k / 3), 10 ** (2 * k / 3), 10.0 ** k) for k in range(3, 9)]
# Set TRIWAY_THREADS to change the default worker count
points = sweep(grid, N3Policy.MIN, threads=2)
for p in points:
    print(p.s.g3, p.n3, p.gap_ungrouped.exact_gap, p.gap_grouped.exact_gap, p.clamped)

# Points with clamped bounds are left out of the flatness measure
print(flatness(points), grouped_bound())

# The cooperative MAC and BC special cases
print(registered_scenarios())
res = special_case_region("MacConferencing", validate_snr(10, 100, 1000), 32, C12=1.0, C21=1.0)
print(res.max_sum_rate, res.sum_rate_gap)
