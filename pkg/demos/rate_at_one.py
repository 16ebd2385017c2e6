"""How fast Delta_n(1) approaches -2L when alpha_n = L + c_n is real.

For slowly varying c_n the error Delta_n(1) + 2L is -2 c_n to first order.
For geometric c_n = A t^n every earlier c_j still contributes through the
kernel sum, and the first-order limit depends on t.
"""
from __future__ import annotations

from opuc import DecaySpec, asymptotics

L = -0.5
cases = [
    ("harmonic 0.1/n", DecaySpec.harmonic(0.1), 10**4),
    ("power 0.1 n^-0.5", DecaySpec.power(0.5, 0.1), 10**4),
    ("geometric 0.1 * 0.8^n", DecaySpec.geometric(0.8, 0.1), 120),
    ("geometric 0.1 * 0.5^n", DecaySpec.geometric(0.5, 0.1), 60),
]
for label, decay, n_max in cases:
    rep = asymptotics.corollary1_rate(L, decay, 0.5, n_max)
    print(f"{label:24s} ratio at n={n_max}: {rep.estimate.real:+.6f}"
          f"  first-order limit {rep.extras['expected']:+.6f}")
