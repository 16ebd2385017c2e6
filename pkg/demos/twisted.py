"""Rotating constant coefficients: alpha_n = L conj(zeta)^n with the mass at zeta.

The twisted sequence turns the point zeta into the image of z = 1 for the
constant sequence, so zeta^n Delta_n(zeta) tends to -2L for every gamma.
"""
from __future__ import annotations

import cmath

from opuc import asymptotics

L = 0.3
for zeta in (-1.0, cmath.exp(1j * 0.7), 1j):
    for gamma in (0.1, 0.9):
        rep = asymptotics.twisted_limit_check(L, zeta, gamma, 10000)
        print(f"zeta={complex(zeta):.3f} gamma={gamma}  zeta^n Delta_n -> {rep.extras['direct']:.10f}"
              f"  (expected {rep.extras['expected']:.1f})")
