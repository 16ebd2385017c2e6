"""Sieved coefficients built from scaled Jacobi parameters.

With c = (y/2)^2 and a_n -> 1 the recursion alpha_n = c a_{n+1}^2 / (1 - alpha_{n-1}) - 1
stays in (-1, 0) and converges to the fixed point of the free case.  For
y = 1 that fixed point is -sqrt(3)/2; the approach is as slow as a_n - 1.
"""
from __future__ import annotations

import math

from opuc import jacobi_bridge as jb
from opuc.jacobi_bridge import JacobiSpec

target = -math.sqrt(3) / 2
for label, spec in [("geometric a_n = 1 - 0.5^n", JacobiSpec.geometric(0.5, 1.0)),
                    ("power a_n = 1-(n+1)^-0.6", JacobiSpec.power(0.6, 1.0))]:
    for n in (10**2, 10**3, 10**4):
        al = jb.sieved_alphas(spec, n)
        print(f"{label:26s} n={n:6d} alpha_n={al[-1]:+.10f}  distance {abs(al[-1] - target):.2e}")
print(f"gap endpoint check (y = 1): {jb.gap_endpoint_check(JacobiSpec.free(1.0)):.1e}")
