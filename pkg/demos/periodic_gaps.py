"""Periodic coefficients: band edges from the discriminant, then a mass in a gap.

For beta = (0.5, -0.5) the discriminant touches +-2 at theta = 0 without
opening a gap there, and the only open gap is (2 pi/3, 4 pi/3).  A mass at
its midpoint gives a Delta_n that settles along each residue class mod 2.
"""
from __future__ import annotations

import math

from opuc import PointMassSpec, asymptotics, compute_bands, periodic

beta = (0.5, -0.5)
geo = compute_bands(beta)
for lo, hi in geo.arcs:
    print(f"gap ({lo:.12f}, {hi:.12f}), expected ({2 * math.pi / 3:.12f}, {4 * math.pi / 3:.12f})")
print(f"gap at theta=0? {geo.contains(0.0)}")

mid = geo.midpoints()[0]
d = asymptotics.delta_sequence(periodic(beta), PointMassSpec(mid, 0.5), 4000)
print(f"even tail: {d[3998]:.12f} {d[4000]:.12f}")
print(f"odd tail:  {d[3997]:.12f} {d[3999]:.12f}")
