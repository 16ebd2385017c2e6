"""Adding a point mass: dnu = (1 - gamma) dmu + gamma delta_omega.

Three algebraically equivalent routes to alpha_n(dnu) live here, plus a
moment-based (Levinson) oracle that shares no code with them.  All three
formula routes work with the scaled trajectories of :mod:`opuc.szego`, so
exponentially large kernels and polynomials never get exponentiated.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .coeffs import CoefficientSequence, as_alphas
from .errors import NumericalBreakdown
from .szego import Trajectory, running_cd_kernel, scaled_sum, trajectory

METHODS = ("geronimus", "simon", "delta", "moment")


@dataclass(frozen=True)
class PointMassSpec:
    """Location omega (angle) and weight gamma of the added mass."""

    omega: float
    gamma: float

    def __post_init__(self):
        if not 0.0 < self.gamma < 1.0:
            raise ValueError(f"gamma must lie in (0, 1), got {self.gamma}")
        object.__setattr__(self, "omega", float(self.omega) % (2.0 * math.pi))

    @property
    def zeta(self) -> complex:
        return cmath.exp(1j * self.omega)

    @property
    def offset(self) -> float:
        """(1 - gamma) / gamma, the constant term of every denominator."""
        return (1.0 - self.gamma) / self.gamma


@dataclass(frozen=True)
class PerturbationResult:
    n: int
    alpha_nu: complex
    delta_n: complex
    method: str


# -- Delta_n ---------------------------------------------------------------

def deltas_from_trajectory(traj: Trajectory, spec: PointMassSpec) -> np.ndarray:
    """Delta_0 .. Delta_{n-1} from a trajectory holding states 0..n at zeta.

    The common e^{2s} of numerator and denominator is cancelled in the log
    domain before anything is exponentiated.
    """
    rho = traj.rho
    log_den = np.logaddexp(math.log(spec.offset), traj.log_kernel[:-1])
    expo = traj.s[1:] + traj.s[:-1] - log_den
    return rho * np.conj(traj.u[1:]) * traj.v[:-1] * np.exp(expo)


def log_abs_deltas_from_trajectory(traj: Trajectory, spec: PointMassSpec) -> np.ndarray:
    """log |Delta_n|, usable after |Delta_n| has underflowed."""
    log_den = np.logaddexp(math.log(spec.offset), traj.log_kernel[:-1])
    with np.errstate(divide="ignore"):
        return (
            np.log(traj.rho) + np.log(np.abs(traj.u[1:])) + np.log(np.abs(traj.v[:-1]))
            + traj.s[1:] + traj.s[:-1] - log_den
        )


def delta_n(seq: CoefficientSequence | np.ndarray, spec: PointMassSpec, n: int) -> complex:
    """Delta_n(zeta) = rho_n conj(phi_{n+1}(zeta)) phi_n^*(zeta) / ((1-gamma)/gamma + K_n(zeta, zeta))."""
    traj = trajectory(seq, spec.zeta, n + 1)
    return complex(deltas_from_trajectory(traj, spec)[n])


# -- Geronimus ------------------------------------------------------------

def geronimus_sequence(seq: CoefficientSequence | np.ndarray, spec: PointMassSpec, count: int) -> np.ndarray:
    """alpha_0(dnu) .. alpha_{count-1}(dnu) from the monic Geronimus formula at z = 0.

    Phi_n(z, dnu) = Phi_n(z) - Phi_n(zeta) K_{n-1}(z, zeta) / ((1-gamma)/gamma + K_{n-1}(zeta, zeta))
    and alpha_{n-1}(dnu) = -conj(Phi_n(0, dnu)), Phi_n(0) = -conj(alpha_{n-1}).
    """
    tw = trajectory(seq, spec.zeta, count)
    t0 = trajectory(tw.alphas, 0.0, count)
    k_mant, k_scale = running_cd_kernel(t0, tw)  # K_k(0, zeta), k = 0..count
    m = np.arange(1, count + 1)  # monic index n; kernels use n - 1
    log_den = np.logaddexp(math.log(spec.offset), tw.log_kernel[m - 1])
    corr = tw.u[m] * k_mant[m - 1] * np.exp(tw.lognorm[m] + tw.s[m] + k_scale[m - 1] - log_den)
    return tw.alphas + np.conj(corr)


def geronimus_alpha(seq: CoefficientSequence | np.ndarray, spec: PointMassSpec, n: int) -> complex:
    """alpha_{n-1}(dnu) via Geronimus; requires n >= 1."""
    if n < 1:
        raise ValueError("the Geronimus route needs n >= 1 (it returns alpha_{n-1}(dnu))")
    return complex(geronimus_sequence(seq, spec, n)[n - 1])


# -- Simon ----------------------------------------------------------------

def simon_alpha(seq: CoefficientSequence | np.ndarray, spec: PointMassSpec, n: int) -> complex:
    """alpha_n(dnu) = alpha_n - gamma/q_n conj(phi_{n+1}(zeta)) sum_j alpha_{j-1} ||Phi_{n+1}||/||Phi_j|| phi_j(zeta).

    q_n = (1 - gamma) + gamma K_n(zeta, zeta) and alpha_{-1} = -1.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    tw = trajectory(seq, spec.zeta, n + 1)
    a_prev = np.concatenate(([-1.0 + 0j], tw.alphas[:n]))  # alpha_{j-1}, j = 0..n
    expo = tw.lognorm[n + 1] - tw.lognorm[: n + 1] + tw.s[: n + 1]
    total = scaled_sum(a_prev * tw.u[: n + 1], expo)
    g = spec.gamma
    log_q = np.logaddexp(math.log1p(-g), math.log(g) + tw.log_kernel[n])
    factor = math.exp(tw.s[n + 1] + total.log_scale + math.log(g) - log_q)
    return complex(tw.alphas[n] - np.conj(tw.u[n + 1]) * total.mantissa * factor)


# -- moment oracle ----------------------------------------------------------

def free_moments(spec: PointMassSpec, count: int) -> np.ndarray:
    """c_k = int e^{-ik theta} dnu for dnu = (1-gamma) dtheta/2pi + gamma delta_omega, k = 0..count-1."""
    k = np.arange(count)
    c = spec.gamma * np.exp(-1j * k * spec.omega)
    c[0] += 1.0 - spec.gamma
    return c


def levinson_verblunsky(moments: np.ndarray, count: int, guard: float = 1e-12) -> np.ndarray:
    """Verblunsky coefficients alpha_0..alpha_{count-1} from trigonometric moments.

    Runs the monic recursion on coefficient vectors: conj(alpha_m) is
    <z Phi_m, 1> / ||Phi_m||^2, with <z^k, 1> = conj(c_k).  O(count^2).
    """
    c = np.asarray(moments, dtype=complex)
    if len(c) < count + 1:
        raise ValueError(f"need {count + 1} moments, got {len(c)}")
    if not c[0].real > 0:
        raise NumericalBreakdown("zeroth moment must be positive")
    poly = np.array([1.0 + 0j])  # Phi_m coefficients, ascending powers
    energy = c[0].real
    out = np.empty(count, dtype=complex)
    for m in range(count):
        abar = np.dot(poly, np.conj(c[1 : m + 2])) / energy
        alpha = np.conj(abar)
        if abs(alpha) >= 1.0 - guard:
            raise NumericalBreakdown(f"|alpha_{m}| = {abs(alpha)} reached the breakdown guard")
        out[m] = alpha
        shifted = np.concatenate(([0j], poly))
        reversed_ = np.concatenate((np.conj(poly[::-1]), [0j]))
        poly = shifted - abar * reversed_
        energy *= 1.0 - abs(alpha) ** 2
    return out


def moment_oracle_alpha(base: str, spec: PointMassSpec, n: int) -> np.ndarray:
    """alpha_0(dnu) .. alpha_n(dnu) from the Toeplitz moments of dnu.

    Only ``base="free"`` (dmu = dtheta / 2pi, all alpha = 0) is supported:
    it is the one base whose moments are known in closed form.
    """
    if base != "free":
        raise ValueError("the moment oracle is only available for the free base measure")
    return levinson_verblunsky(free_moments(spec, n + 2), n + 1)


# -- convenience ------------------------------------------------------------

def perturb(seq: CoefficientSequence | np.ndarray, spec: PointMassSpec, n: int, method: str = "delta") -> PerturbationResult:
    """alpha_n(dnu) by the chosen route, wrapped with Delta_n = alpha_n(dnu) - alpha_n."""
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    a = complex(as_alphas(seq, n + 1)[n])
    if method == "delta":
        d = delta_n(seq, spec, n)
        return PerturbationResult(n, a + d, d, method)
    if method == "geronimus":
        nu = geronimus_alpha(seq, spec, n + 1)
    elif method == "simon":
        nu = simon_alpha(seq, spec, n)
    else:
        if not np.allclose(as_alphas(seq, n + 1), 0.0):
            raise ValueError("the moment oracle needs the free base (alpha = 0)")
        nu = complex(moment_oracle_alpha("free", spec, n)[n])
    return PerturbationResult(n, nu, nu - a, method)


def perturbed_coefficients(seq: CoefficientSequence | np.ndarray, spec: PointMassSpec, count: int) -> np.ndarray:
    """alpha_0(dnu) .. alpha_{count-1}(dnu) = alpha_n + Delta_n in one pass."""
    traj = trajectory(seq, spec.zeta, count)
    return traj.alphas + deltas_from_trajectory(traj, spec)


__all__ = [
    "METHODS",
    "PerturbationResult",
    "PointMassSpec",
    "delta_n",
    "deltas_from_trajectory",
    "free_moments",
    "geronimus_alpha",
    "geronimus_sequence",
    "levinson_verblunsky",
    "log_abs_deltas_from_trajectory",
    "moment_oracle_alpha",
    "perturb",
    "perturbed_coefficients",
    "simon_alpha",
]
