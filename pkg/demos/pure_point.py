"""A second mass at the same gap point decays geometrically.

After nu_1 = (1 - g1) mu + g1 delta_zeta the point zeta is an eigenvalue of
nu_1, so the orthonormal polynomials of nu_1 decay at zeta.  A second mass at
zeta then moves the coefficients by Delta_n with log|Delta_n| linear in n and
slope -2 log|lambda_1|, lambda_1 the dominant transfer eigenvalue.
"""
from __future__ import annotations

import numpy as np

from opuc import PointMassSpec, asymptotics, constant, spectral

L, theta = -0.5, 0.3
first = PointMassSpec(theta, 0.3)
two = asymptotics.pure_point_delta_sequence(constant(L), first, 1000, gamma2=0.4)

n = np.arange(100, 1001)
slope, _, r2 = asymptotics.log_linear_fit(n, two.log_abs[100:1001])
lam = spectral.eigen_pair(spectral.limit_matrix(L, first.zeta)).lambda1
print(f"fit of log|Delta_n| on [100, 1000]: slope {slope:.6f}, R^2 {r2:.8f}")
print(f"-2 log|lambda_1| = {-2 * np.log(abs(lam)):.6f}")
print(f"|Delta_1000| = exp({two.log_abs[1000]:.1f}), far below the double range")
