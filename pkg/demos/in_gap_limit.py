"""A mass placed in a spectral gap leaves a nonzero trace in the coefficients.

For constant coefficients alpha_n = L the arc |theta| < 2 arcsin|L| is a gap.
Adding gamma delta_zeta there shifts every alpha_n by Delta_n(zeta), and
Delta_n converges to a closed-form limit of modulus-preserving type:
|L + Delta_inf| = |L|.  Outside the gap the shift dies out.
"""
from __future__ import annotations

import cmath

from opuc import PointMassSpec, asymptotics, constant, delta_infinity, spectral

L = -0.5
seq = constant(L)
print(f"alpha_n = {L}, gap half-width {spectral.gap_half_width(L):.6f}")

for theta, gamma in [(0.0, 0.5), (0.4, 0.2), (0.9, 0.8)]:
    rep = asymptotics.delta_limit(seq, PointMassSpec(theta, gamma), 5000)
    exact = delta_infinity(L, theta)
    print(f"theta={theta:4.1f} gamma={gamma:.1f}  Delta_5000={rep.extras['direct']:.12f}"
          f"  closed form={exact:.12f}  |L+Delta|={abs(L + exact):.12f}")

theta = 2.0  # inside the band
rep = asymptotics.delta_limit(seq, PointMassSpec(theta, 0.5), 5000)
print(f"theta={theta} is in the band: |Delta_5000| = {abs(rep.extras['direct']):.2e}")
print(f"phase of the limit at theta=0.4: L e^(i omega), omega = {cmath.phase((L + delta_infinity(L, 0.4)) / L):.6f}")
