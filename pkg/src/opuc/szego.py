"""Overflow-safe Szego recursion.

phi_n(z) and phi_n^*(z) are carried as mantissas ``u``, ``v`` sharing one
exponent ``s`` (phi_n = u e^s, phi_n^* = v e^s).  The mantissas are pulled back
to max(|u|, |v|) = 1 whenever they leave [1/2, 2].  The diagonal kernel
K_n(z, z) = sum_{j<=n} |phi_j(z)|^2 is kept as its logarithm so that it stays
finite both when phi_n grows (gaps) and when it decays (mass points).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .coeffs import CoefficientSequence, as_alphas
from .errors import AdmissibilityError

WINDOW_LO = 0.5
WINDOW_HI = 2.0


class ScaledComplex(NamedTuple):
    """A complex number stored as ``mantissa * exp(log_scale)``."""

    mantissa: complex
    log_scale: float

    @property
    def value(self) -> complex:
        return self.mantissa * math.exp(self.log_scale)

    @property
    def log_abs(self) -> float:
        m = abs(self.mantissa)
        return -math.inf if m == 0 else math.log(m) + self.log_scale


@dataclass(frozen=True)
class ScaledPolyState:
    """(phi_n(z), phi_n^*(z)) plus running kernel and monic norm at one point."""

    u: complex
    v: complex
    s: float
    n: int
    z: complex
    log_kernel: float  # log K_n(z, z)
    lognorm: float  # log ||Phi_n|| = sum_{j<n} log rho_j

    @property
    def k_acc(self) -> float:
        """Kernel mantissa: K_n(z, z) = k_acc * exp(2 s)."""
        return math.exp(self.log_kernel - 2.0 * self.s)

    @property
    def phi(self) -> complex:
        return self.u * math.exp(self.s)

    @property
    def phi_star(self) -> complex:
        return self.v * math.exp(self.s)

    @property
    def kernel(self) -> float:
        return math.exp(self.log_kernel)

    @property
    def log_abs_phi(self) -> float:
        """log |phi_n(z)| (exponent plus log of the mantissa)."""
        return self.s + math.log(abs(self.u)) if self.u != 0 else -math.inf

    @property
    def monic(self) -> complex:
        """Phi_n(z) = ||Phi_n|| phi_n(z)."""
        return self.u * math.exp(self.s + self.lognorm)


def initial_state(z: complex) -> ScaledPolyState:
    return ScaledPolyState(1.0 + 0j, 1.0 + 0j, 0.0, 0, complex(z), 0.0, 0.0)


def _rho(alpha: complex) -> float:
    r2 = 1.0 - (alpha.real * alpha.real + alpha.imag * alpha.imag)
    if not r2 > 0.0:
        raise AdmissibilityError(f"|alpha| = {abs(alpha)} >= 1")
    return math.sqrt(r2)


def _log_add(a: float, b: float) -> float:
    if a < b:
        a, b = b, a
    if b == -math.inf:
        return a
    return a + math.log1p(math.exp(b - a))


def szego_step(state: ScaledPolyState, alpha_n: complex) -> ScaledPolyState:
    """Advance one step of the normalized Szego recursion and rescale."""
    alpha_n = complex(alpha_n)
    rho = _rho(alpha_n)
    z, u, v = state.z, state.u, state.v
    u1 = (z * u - alpha_n.conjugate() * v) / rho
    v1 = (v - alpha_n * z * u) / rho
    s = state.s
    m = max(abs(u1), abs(v1))
    if m > WINDOW_HI or m < WINDOW_LO:
        u1 /= m
        v1 /= m
        s += math.log(m)
    au = abs(u1)
    term = 2.0 * (s + math.log(au)) if au > 0 else -math.inf
    return ScaledPolyState(
        u1, v1, s, state.n + 1, z, _log_add(state.log_kernel, term), state.lognorm + math.log(rho)
    )


@dataclass(frozen=True)
class Trajectory:
    """All states 0..n of the recursion at a single point, as arrays."""

    z: complex
    alphas: np.ndarray  # alpha_0 .. alpha_{n-1}
    u: np.ndarray
    v: np.ndarray
    s: np.ndarray
    log_kernel: np.ndarray
    lognorm: np.ndarray

    @property
    def n(self) -> int:
        return len(self.u) - 1

    def state(self, k: int) -> ScaledPolyState:
        return ScaledPolyState(
            complex(self.u[k]), complex(self.v[k]), float(self.s[k]), k, self.z,
            float(self.log_kernel[k]), float(self.lognorm[k]),
        )

    @property
    def log_abs_phi(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return self.s + np.log(np.abs(self.u))

    @property
    def rho(self) -> np.ndarray:
        return np.sqrt(1.0 - np.abs(self.alphas) ** 2)


def trajectory(seq: CoefficientSequence | np.ndarray, z: complex, n: int) -> Trajectory:
    """Run the recursion from phi_0 = phi_0^* = 1 for ``n`` steps, keeping every state."""
    if n < 0:
        raise ValueError("n must be non-negative")
    alphas = as_alphas(seq, n)
    z = complex(z)
    u = np.empty(n + 1, dtype=complex)
    v = np.empty(n + 1, dtype=complex)
    s = np.empty(n + 1)
    lk = np.empty(n + 1)
    ln = np.empty(n + 1)
    cu, cv, cs, ck, cn = 1.0 + 0j, 1.0 + 0j, 0.0, 0.0, 0.0
    u[0], v[0], s[0], lk[0], ln[0] = cu, cv, cs, ck, cn
    log, sqrt, log1p, exp = math.log, math.sqrt, math.log1p, math.exp
    for j in range(n):
        a = complex(alphas[j])
        r2 = 1.0 - (a.real * a.real + a.imag * a.imag)
        if not r2 > 0.0:
            raise AdmissibilityError(f"|alpha_{j}| = {abs(a)} >= 1")
        rho = sqrt(r2)
        zu = z * cu
        cu, cv = (zu - a.conjugate() * cv) / rho, (cv - a * zu) / rho
        m = max(abs(cu), abs(cv))
        if m > WINDOW_HI or m < WINDOW_LO:
            cu /= m
            cv /= m
            cs += log(m)
        au = abs(cu)
        if au > 0:
            t = 2.0 * (cs + log(au))
            ck = ck + log1p(exp(t - ck)) if ck >= t else t + log1p(exp(ck - t))
        cn += log(rho)
        u[j + 1], v[j + 1], s[j + 1], lk[j + 1], ln[j + 1] = cu, cv, cs, ck, cn
    return Trajectory(z, alphas, u, v, s, lk, ln)


def evaluate(seq: CoefficientSequence | np.ndarray, z: complex, n: int) -> ScaledPolyState:
    """State after ``n`` steps from phi_0 = phi_0^* = 1."""
    return trajectory(seq, z, n).state(n)


def scaled_sum(mantissas: np.ndarray, log_scales: np.ndarray) -> ScaledComplex:
    """sum_j m_j exp(e_j), accumulated in the scale of the largest exponent."""
    mantissas = np.asarray(mantissas, dtype=complex)
    log_scales = np.asarray(log_scales, dtype=float)
    if mantissas.size == 0:
        return ScaledComplex(0j, 0.0)
    top = float(np.max(log_scales))
    total = complex(np.sum(mantissas * np.exp(log_scales - top)))
    return ScaledComplex(total, top)


def cd_kernel(seq: CoefficientSequence | np.ndarray, z: complex, zeta: complex, n: int) -> ScaledComplex:
    """K_n(z, zeta) = sum_{j<=n} conj(phi_j(zeta)) phi_j(z) as mantissa and log-scale."""
    tz = trajectory(seq, z, n)
    tw = tz if complex(zeta) == complex(z) else trajectory(seq, zeta, n)
    return scaled_sum(np.conj(tw.u) * tz.u, tw.s + tz.s)


def running_cd_kernel(tz: Trajectory, tw: Trajectory) -> tuple[np.ndarray, np.ndarray]:
    """K_k(z, zeta) for k = 0..n in a single pass, as (mantissa, log-scale) arrays."""
    n = min(tz.n, tw.n)
    mant = np.empty(n + 1, dtype=complex)
    scale = np.empty(n + 1)
    acc, top = 0j, -math.inf
    exp = math.exp
    for j in range(n + 1):
        m = complex(tw.u[j]).conjugate() * complex(tz.u[j])
        e = float(tw.s[j] + tz.s[j])
        if e > top:
            acc = acc * exp(top - e) + m if top > -math.inf else m
            top = e
        else:
            acc += m * exp(e - top)
        mag = abs(acc)
        if mag > 1e100 or (0 < mag < 1e-100):
            top += math.log(mag)
            acc /= mag
        mant[j], scale[j] = acc, top
    return mant, scale


# -- transfer matrices -----------------------------------------------------

@dataclass(frozen=True)
class TransferMatrix2:
    """Row-major 2x2 complex matrix [[a, b], [c, d]]."""

    a: complex
    b: complex
    c: complex
    d: complex

    @property
    def trace(self) -> complex:
        return self.a + self.d

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def to_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @classmethod
    def from_array(cls, m) -> "TransferMatrix2":
        m = np.asarray(m, dtype=complex)
        return cls(complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1]))

    @classmethod
    def identity(cls) -> "TransferMatrix2":
        return cls(1 + 0j, 0j, 0j, 1 + 0j)

    def __matmul__(self, other):
        if isinstance(other, TransferMatrix2):
            return TransferMatrix2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        x, y = other
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def __sub__(self, other: "TransferMatrix2") -> "TransferMatrix2":
        return TransferMatrix2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def scaled(self, k: complex) -> "TransferMatrix2":
        return TransferMatrix2(k * self.a, k * self.b, k * self.c, k * self.d)

    def inverse(self) -> "TransferMatrix2":
        det = self.det
        return TransferMatrix2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def norm(self) -> float:
        """Frobenius norm."""
        return math.sqrt(abs(self.a) ** 2 + abs(self.b) ** 2 + abs(self.c) ** 2 + abs(self.d) ** 2)


def transfer_matrix(alpha: complex, z: complex) -> TransferMatrix2:
    """A(alpha, z) = rho^{-1} [[z, -conj(alpha)], [-z alpha, 1]]."""
    alpha, z = complex(alpha), complex(z)
    rho = _rho(alpha)
    return TransferMatrix2(z / rho, -alpha.conjugate() / rho, -z * alpha / rho, 1.0 / rho)


def transfer_product(alphas, z: complex) -> TransferMatrix2:
    """T_n(z) = A_{n-1}(z) ... A_0(z) (unscaled; use for moderate n only)."""
    out = TransferMatrix2.identity()
    for a in alphas:
        out = transfer_matrix(a, z) @ out
    return out


def unit(theta: float) -> complex:
    return cmath.exp(1j * theta)


__all__ = [
    "ScaledComplex",
    "ScaledPolyState",
    "Trajectory",
    "TransferMatrix2",
    "cd_kernel",
    "evaluate",
    "initial_state",
    "running_cd_kernel",
    "scaled_sum",
    "szego_step",
    "trajectory",
    "transfer_matrix",
    "transfer_product",
    "unit",
]
