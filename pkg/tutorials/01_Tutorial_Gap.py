# -*- coding: utf-8 -*-
"""
01_Tutorial_Gap
"""

# Here we measure how far an achievable region is from the outer bound.
# The gap is the smallest per-dimension shift that makes every vertex of the
# outer region reachable from the inner one.

from triway.core import validate_snr
from triway.polytope import contains, per_dimension_gap, vertices
from triway.regions import lemma1_outer, prop2_3wc_region

s = validate_snr(10, 100, 1000)
outer = lemma1_outer(s)

# Vertex enumeration of the outer polytope (sorted, deterministic)
verts = vertices(outer)
print(len(verts), "vertices, first", verts[0].point.to_dict())
print(all(contains(outer, v.point) for v in verts))

# The gap report carries three numbers:
#  exact_gap: uniform shift of the rates
#  clamped_gap: shift with the rates clamped at zero
#  sufficient_gap: worst per-pattern difference of the bounds
for n3 in (4, 5, 6):
    rep = per_dimension_gap(outer, prop2_3wc_region(s, n3))
    print(n3, rep.exact_gap, rep.sufficient_gap)

# The vertex that needs the largest shift is kept as a certificate
rep = per_dimension_gap(outer, prop2_3wc_region(s, 4, grouped=True))
print(rep.certificate.point.to_dict(), rep.certificate.active_labels)
