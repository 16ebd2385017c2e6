"""Limit extraction and proof diagnostics for Delta_n(zeta).

Contents: eigenvector tracking of the transfer matrices (w, P_n, f_1, f_2),
the Cesaro-Stolz estimator fed with log-scaled sequences, bounded-variation
reports, and drivers for the twisted, O(c_n) and periodic regimes.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import mpmath
import numpy as np

from .coeffs import CoefficientSequence, DecaySpec, as_alphas, twisted
from .errors import DegenerateError, HyperbolicityError, MonotonicityError, OutOfGapError
from .pointmass import PointMassSpec, deltas_from_trajectory
from .spectral import (
    TRACE_EDGE_TOL,
    EigenPair,
    delta_infinity,
    eigen_pair,
    period_matrix,
    period_traces,
)
from .szego import ScaledComplex, Trajectory, TransferMatrix2, trajectory, transfer_matrix

TAIL_VALUE = "TailValue"
CESARO_STOLZ = "CesaroStolz"
DIVERGENCE_WARNING = "divergence_warning"
BAND_INTERIOR = "band_interior"
STALLED = "stalled_denominator"
N_START_RUN = 10
N_START_MARGIN = 1e-6


@dataclass(frozen=True)
class LimitReport:
    estimate: complex
    method: str
    err_indicator: float
    bv_partial: float
    n_used: int
    flags: tuple[str, ...] = ()
    extras: dict = field(default_factory=dict, compare=False)

    @property
    def diverging(self) -> bool:
        return DIVERGENCE_WARNING in self.flags


# -- Cesaro-Stolz ---------------------------------------------------------

def cesaro_stolz_quotients(numer, denom, log_scale=None) -> tuple[np.ndarray, np.ndarray]:
    """(Gamma_n - Gamma_{n-1}) / (Theta_n - Theta_{n-1}) for n >= 1, plus the denominator steps.

    With ``log_scale`` given, Gamma_n = numer[n] e^{log_scale[n]} and
    Theta_n = denom[n] e^{log_scale[n]}; both differences are formed relative
    to e^{log_scale[n]} so that nothing is exponentiated at full size.
    """
    x = np.asarray(numer, dtype=complex)
    y = np.asarray(denom, dtype=float)
    if len(x) != len(y) or len(x) < 2:
        raise ValueError("numer and denom need equal length >= 2")
    if log_scale is None:
        dx = x[1:] - x[:-1]
        dy = y[1:] - y[:-1]
    else:
        ls = np.asarray(log_scale, dtype=float)
        back = ls[:-1] - ls[1:]
        shrink = np.exp(back)
        dx = x[1:] - x[:-1] * shrink
        # y[n] - y[n-1] e^{back}, exact for the common case y == 1
        dy = np.where(y[1:] == y[:-1], -y[:-1] * np.expm1(back), y[1:] - y[:-1] * shrink)
    with np.errstate(divide="ignore", invalid="ignore"):
        q = dx / dy
    return q, dy


def cesaro_stolz_limit(numer, denom, horizon: int | None = None, log_scale=None, window: float = 0.1) -> LimitReport:
    """Estimate lim Gamma_n / Theta_n from the tail of the difference quotients.

    The quotient is averaged over the last ``window`` fraction of the horizon;
    ``err_indicator`` is the largest deviation from that mean inside the window.
    """
    n = len(numer) if horizon is None else int(horizon)
    if n < 2:
        raise ValueError("horizon must be at least 2")
    numer = np.asarray(numer)[:n]
    denom = np.asarray(denom)[:n]
    ls = None if log_scale is None else np.asarray(log_scale, dtype=float)[:n]
    q, dy = cesaro_stolz_quotients(numer, denom, ls)
    if np.any(dy < 0):
        k = int(np.nonzero(dy < 0)[0][0]) + 1
        raise MonotonicityError(f"denominator decreases at n = {k}")
    flags = []
    ok = dy > 0
    if not np.all(ok):
        flags.append(STALLED)
    first = math.log(abs(denom[0])) + (0.0 if ls is None else ls[0]) if denom[0] != 0 else -math.inf
    last = math.log(abs(denom[-1])) + (0.0 if ls is None else ls[-1])
    if not last - first > math.log(1e6):
        flags.append(DIVERGENCE_WARNING)
    width = max(1, int(round(window * n)))
    tail = q[-width:][ok[-width:]]
    if tail.size == 0:
        return LimitReport(complex("nan"), CESARO_STOLZ, math.inf, math.nan, n, tuple(flags))
    est = complex(np.mean(tail))
    spread = float(np.max(np.abs(tail - est)))
    bv = bv_partial(numer / denom)  # the common scale cancels in the ratio
    return LimitReport(est, CESARO_STOLZ, spread, bv, n, tuple(flags), {"final_quotient": complex(q[-1])})


# -- bounded variation --------------------------------------------------------

def bv_partial(x, stride: int = 1) -> float:
    x = np.asarray(x)
    return float(np.sum(np.abs(x[stride:] - x[:-stride])))


def bv_report(x, stride: int = 1) -> LimitReport:
    """Stride-p variation sum_n |x_{n+p} - x_n| with the last element as the estimate."""
    x = np.asarray(x, dtype=complex)
    if stride < 1 or len(x) < 2 * stride:
        raise ValueError("need stride >= 1 and at least 2 * stride samples")
    return LimitReport(
        complex(x[-1]), TAIL_VALUE, float(abs(x[-1] - x[-1 - stride])), bv_partial(x, stride), len(x)
    )


def bv_partial_sums(x, stride: int = 1) -> np.ndarray:
    """Running sums S_N = sum_{n < N} |x_{n+p} - x_n|."""
    x = np.asarray(x)
    return np.cumsum(np.abs(x[stride:] - x[:-stride]))


# -- Gamma_n, Theta_n and Delta_n --------------------------------------------

def gamma_theta(traj: Trajectory, spec: PointMassSpec):
    """Gamma_n = conj(phi_{n+1}) phi_n^* and log Theta_n = log((1-gamma)/gamma + K_n), n < traj.n.

    Returns (mantissa, log-scale) of Gamma and log Theta as arrays.
    """
    mant = np.conj(traj.u[1:]) * traj.v[:-1]
    scale = traj.s[1:] + traj.s[:-1]
    log_theta = np.logaddexp(math.log(spec.offset), traj.log_kernel[:-1])
    return mant, scale, log_theta


def delta_sequence(seq, spec: PointMassSpec, n_max: int) -> np.ndarray:
    """[Delta_0, ..., Delta_{n_max}] from one recursion pass."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    return deltas_from_trajectory(trajectory(seq, spec.zeta, n_max + 1), spec)


def kernel_bounded(log_kernel: np.ndarray, rel: float = 1e-8) -> bool:
    """K_{2m} / K_m < 1 + rel at the horizon (m = floor(horizon / 2))."""
    n = len(log_kernel) - 1
    m = n // 2
    return bool(log_kernel[2 * m] - log_kernel[m] < math.log1p(rel))


def delta_limit(seq, spec: PointMassSpec, n_max: int) -> LimitReport:
    """lim Delta_n(zeta) by Cesaro-Stolz on rho_n Gamma_n / Theta_n, with the direct tail alongside."""
    traj = trajectory(seq, spec.zeta, n_max + 1)
    mant, scale, log_theta = gamma_theta(traj, spec)
    ratio = traj.rho * mant * np.exp(scale - log_theta)  # Delta_n
    rep = cesaro_stolz_limit(ratio, np.ones(len(ratio)), log_scale=log_theta)
    flags = list(rep.flags)
    if kernel_bounded(traj.log_kernel):
        flags.append("bounded_kernel")
    extras = dict(rep.extras)
    extras["direct"] = complex(ratio[-1])
    extras["log_scale"] = float(traj.s[-1])
    return LimitReport(rep.estimate, rep.method, rep.err_indicator, bv_partial(ratio), rep.n_used, tuple(flags), extras)


# -- pure-point regime ----------------------------------------------------------

@dataclass(frozen=True)
class TwoStageDeltas:
    """Delta_n for the second mass added at the same point as the first."""

    delta: np.ndarray
    log_abs: np.ndarray
    alphas_stage1: np.ndarray


def pure_point_delta_sequence(seq, first: PointMassSpec, n_max: int, gamma2: float | None = None) -> TwoStageDeltas:
    """Delta_n(zeta) for nu_1 = (1-g1) mu + g1 delta_zeta, perturbed again at zeta.

    Running the recursion on alpha(nu_1) at zeta loses the recessive solution
    after a few dozen steps, so phi_n(zeta; nu_1) is taken from the closed form
    Phi_n(zeta; nu_1) = Phi_n(zeta) c / (c + K_{n-1}(zeta, zeta)), c = (1-g1)/g1,
    and ||Phi_n(nu_1)|| from alpha(nu_1).  Everything is kept in log form, so
    |Delta_n| far below the double range is still reported through log_abs.
    """
    second = PointMassSpec(first.omega, first.gamma if gamma2 is None else gamma2)
    tw = trajectory(seq, first.zeta, n_max + 2)
    alpha1 = tw.alphas + deltas_from_trajectory(tw, first)  # alpha_0..alpha_{n_max+1} of nu_1
    log_rho1 = 0.5 * np.log1p(-np.abs(alpha1) ** 2)
    lognorm1 = np.concatenate(([0.0], np.cumsum(log_rho1)))  # n = 0..n_max+2
    log_c1 = math.log(first.offset)
    log_k_prev = np.concatenate(([-math.inf], tw.log_kernel[:-1]))  # K_{n-1}
    with np.errstate(divide="ignore"):
        log_phi1 = (
            tw.s + np.log(np.abs(tw.u)) + tw.lognorm
            + log_c1 - np.logaddexp(log_c1, log_k_prev) - lognorm1
        )
    arg_phi1 = np.angle(tw.u)
    log_k1 = np.logaddexp.accumulate(2.0 * log_phi1)
    n = np.arange(n_max + 1)
    log_abs = (
        log_rho1[: n_max + 1] + log_phi1[1 : n_max + 2] + log_phi1[: n_max + 1]
        - np.logaddexp(math.log(second.offset), log_k1[: n_max + 1])
    )
    # phi^*_n = zeta^n conj(phi_n) on the circle
    phase = -arg_phi1[1 : n_max + 2] + n * first.omega - arg_phi1[: n_max + 1]
    delta = np.exp(log_abs) * np.exp(1j * phase)
    return TwoStageDeltas(delta, log_abs, alpha1[: n_max + 1])


def log_linear_fit(n, y) -> tuple[float, float, float]:
    """Least-squares y ~ slope n + intercept; returns (slope, intercept, R^2)."""
    n = np.asarray(n, dtype=float)
    y = np.asarray(y, dtype=float)
    slope, intercept = np.polyfit(n, y, 1)
    resid = y - (slope * n + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), r2


# -- eigenvector tracking --------------------------------------------------------

def step_traces(seq, zeta: complex, n: int, period: int = 1) -> np.ndarray:
    """|Tr| of A_k(zeta) (period 1) or of the blocks B_k(zeta), k < n."""
    alphas = as_alphas(seq, n * period)
    if period == 1:
        rho = np.sqrt(1.0 - np.abs(alphas) ** 2)
        return np.abs(zeta + 1.0) / rho
    return np.array(
        [abs(period_matrix(alphas[k * period : (k + 1) * period], zeta).trace) for k in range(n)]
    )


def find_n_start(seq, zeta: complex, n_max: int, run: int = N_START_RUN, margin: float = N_START_MARGIN, period: int = 1) -> int:
    """First k such that the ``run`` matrices from k on all satisfy |Tr| > 2 + margin."""
    ok = step_traces(seq, zeta, n_max + run, period) > 2.0 + margin
    streak = 0
    for k, good in enumerate(ok):
        streak = streak + 1 if good else 0
        if streak == run:
            return k - run + 1
    raise HyperbolicityError(f"no run of {run} hyperbolic steps before n = {n_max}")


def _overlap(a, b) -> float:
    na = math.hypot(abs(a[0]), abs(a[1]))
    nb = math.hypot(abs(b[0]), abs(b[1]))
    return abs(a[0].conjugate() * b[0] + a[1].conjugate() * b[1]) / (na * nb)


def _matched(ep: EigenPair, prev: EigenPair | None) -> EigenPair:
    if prev is None:
        return ep
    keep = _overlap(ep.eigvec1, prev.eigvec1) + _overlap(ep.eigvec2, prev.eigvec2)
    swap = _overlap(ep.eigvec2, prev.eigvec1) + _overlap(ep.eigvec1, prev.eigvec2)
    if swap > keep:
        return EigenPair(ep.lambda2, ep.lambda1, ep.eigvec2, ep.eigvec1)
    return ep


@dataclass(frozen=True)
class KoomanTrack:
    """State of the diagonalized transfer-matrix product at index n.

    (phi_{n+1}, phi_{n+1}^*) = G_n P_n (f1 w_1, f2 w_2) with P_n = prod_{N<k<=n} lambda_{1,k};
    w is stored as a mantissa with the log-scale ``w_log_scale``.
    """

    n: int
    n_start: int
    G_n: TransferMatrix2
    D_n: tuple[complex, complex]
    logP: float
    phaseP: complex
    f1: complex
    f2: complex
    w: tuple[complex, complex]
    w_log_scale: float
    diag_residual: float
    history: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def r(self) -> complex:
        return self.f2 / self.f1

    def reconstruct(self, k: int | None = None) -> tuple[ScaledComplex, ScaledComplex]:
        """(phi_{k+1}(zeta), phi_{k+1}^*(zeta)) rebuilt from the tracked quantities."""
        h = self.history
        i = (self.n if k is None else k) - self.n_start
        if not 0 <= i < len(h["n"]):
            raise IndexError(f"index {k} not on the track")
        g = TransferMatrix2(*h["G"][i])
        x = (h["f1"][i] * self.w[0], h["f2"][i] * self.w[1])
        top, bot = g @ x
        ph = h["phase"][i]
        scale = float(h["logP"][i]) + self.w_log_scale
        return ScaledComplex(complex(top * ph), scale), ScaledComplex(complex(bot * ph), scale)


def kooman_track(seq, zeta: complex, N_start: int, n: int) -> KoomanTrack:
    """Diagonalize A_k(zeta) = G_k D_k G_k^{-1} for N_start <= k <= n and follow f_1, f_2.

    Columns of G_k are matched to those of G_{k-1} by overlap, so the labels
    follow the eigenvector branches rather than a per-step modulus sort.
    """
    if n < N_start:
        raise ValueError("need n >= N_start")
    zeta = complex(zeta)
    alphas = as_alphas(seq, n + 1)
    traj = trajectory(alphas, zeta, N_start)
    count = n - N_start + 1
    hist = {
        "n": np.arange(N_start, n + 1),
        "f1": np.empty(count, dtype=complex),
        "f2": np.empty(count, dtype=complex),
        "lambda1": np.empty(count, dtype=complex),
        "lambda2": np.empty(count, dtype=complex),
        "logP": np.empty(count),
        "phase": np.empty(count, dtype=complex),
        "G": np.empty((count, 4), dtype=complex),
    }
    prev = None
    x = None
    w = None
    log_p, phase = 0.0, 1.0 + 0j
    worst = 0.0
    for i, k in enumerate(range(N_start, n + 1)):
        a = transfer_matrix(alphas[k], zeta)
        try:
            ep = _matched(eigen_pair(a), prev)
        except DegenerateError as exc:
            raise HyperbolicityError(f"A_{k}(zeta) is not hyperbolic: {exc}") from exc
        g = ep.G
        ginv = g.inverse()
        recon = g @ TransferMatrix2(ep.lambda1, 0j, 0j, ep.lambda2) @ ginv
        worst = max(worst, (recon - a).norm() / a.norm())
        if prev is None:
            y = (complex(traj.u[-1]), complex(traj.v[-1]))
            w = (ep.lambda1 * ginv.a * y[0] + ep.lambda1 * ginv.b * y[1],
                 ep.lambda2 * ginv.c * y[0] + ep.lambda2 * ginv.d * y[1])
            x = w
        else:
            t = ginv @ prev.G
            x1, x2 = t @ x
            x = (x1, x2 * ep.lambda2 / ep.lambda1)
            log_p += math.log(abs(ep.lambda1))
            phase *= ep.lambda1 / abs(ep.lambda1)
        hist["f1"][i] = x[0] / w[0]
        hist["f2"][i] = x[1] / w[1]
        hist["lambda1"][i], hist["lambda2"][i] = ep.lambda1, ep.lambda2
        hist["logP"][i], hist["phase"][i] = log_p, phase
        hist["G"][i] = (g.a, g.b, g.c, g.d)
        prev = ep
    return KoomanTrack(
        n, N_start, prev.G, (prev.lambda1, prev.lambda2), log_p, phase,
        complex(hist["f1"][-1]), complex(hist["f2"][-1]), w, float(traj.s[-1]), worst, hist,
    )


def growth_rates(seq, zeta: complex, n: int) -> dict:
    """log|phi_n(zeta)| / n and the slope of log|phi| between n/2 and n."""
    traj = trajectory(seq, zeta, n)
    lp = traj.log_abs_phi
    m = n // 2
    return {
        "exponent_per_n": float(traj.s[-1] / n),
        "log_abs_per_n": float(lp[-1] / n),
        "slope": float((lp[-1] - lp[m]) / (n - m)),
    }


# -- twisted coefficients ------------------------------------------------------------

def twisted_identity_residuals(seq, zeta: complex, n_max: int) -> np.ndarray:
    """Relative residuals of
    zeta^{n-1} (rho_n phi^*_{n+1} - rho_{n-1} phi^*_{n-1}) / phi_n = -(zeta^n alpha_n + zeta^{n-1} alpha_{n-1})
    for n = 1..n_max."""
    zeta = complex(zeta)
    traj = trajectory(seq, zeta, n_max + 1)
    a, rho, u, v, s = traj.alphas, traj.rho, traj.u, traj.v, traj.s
    n = np.arange(1, n_max + 1)
    zp = np.power(zeta, n - 1)
    lhs = zp * (rho[n] * v[n + 1] * np.exp(s[n + 1] - s[n]) - rho[n - 1] * v[n - 1] * np.exp(s[n - 1] - s[n])) / u[n]
    rhs = -(zp * zeta * a[n] + zp * a[n - 1])
    return np.abs(lhs - rhs) / np.maximum(np.abs(rhs), 1.0)


def twisted_limit_check(L: complex, zeta: complex, spec: PointMassSpec | float, n_max: int) -> LimitReport:
    """lim zeta^n Delta_n(zeta) for alpha_n = L conj(zeta)^n (expected -2L)."""
    seq = twisted(L, zeta)
    zeta = seq.zeta
    gamma = spec.gamma if isinstance(spec, PointMassSpec) else float(spec)
    pm = PointMassSpec(cmath.phase(zeta), gamma)
    traj = trajectory(seq, zeta, n_max + 1)
    mant, scale, log_theta = gamma_theta(traj, pm)
    n = np.arange(n_max + 1)
    twist = np.power(zeta, n)
    ratio = twist * traj.rho * mant * np.exp(scale - log_theta)  # zeta^n Delta_n
    rep = cesaro_stolz_limit(ratio, np.ones(len(ratio)), log_scale=log_theta)
    extras = dict(rep.extras)
    extras["direct"] = complex(ratio[-1])
    extras["expected"] = complex(-2.0 * complex(L))
    extras["identity_max_residual"] = float(np.max(twisted_identity_residuals(seq, zeta, min(100, n_max))))
    return LimitReport(rep.estimate, rep.method, rep.err_indicator, bv_partial(ratio), rep.n_used, rep.flags, extras)


# -- O(c_n) rate at z = 1 -----------------------------------------------------------------

def _mp_decay(decay: DecaySpec, n: int):
    amp = mpmath.mpf(complex(decay.amplitude).real)
    if decay.form == "geometric":
        return amp * mpmath.mpf(decay.parameter) ** n
    if n == 0:
        return mpmath.mpf(0)
    q = 1 if decay.form == "harmonic" else mpmath.mpf(decay.parameter)
    return amp * mpmath.power(n, -q)


def corollary1_expected(L: float, decay: DecaySpec) -> float | None:
    """lim (Delta_n(1) + 2L) / c_n to first order in c_n.

    It is -2 whenever c_{n-1} / c_n -> 1 (power and harmonic decay).  For
    c_n = A t^n the kernel sum retains a t-dependent share of every c_j and
    the limit becomes a function of t; it is finite for 1/R < t < 1 with
    R = (1 - L)/(1 + L), the growth factor of phi_n(1)^2, and None otherwise.
    """
    if decay.form != "geometric":
        return -2.0
    t = float(decay.parameter)
    R = (1.0 - L) / (1.0 + L)
    if not 1.0 / R < t < 1.0:
        return None
    q = 1.0 / t
    s0 = R / (R - 1.0)
    sigma = (2.0 / (1.0 - L * L)) * q / (q - 1.0) * ((q / R) / (1.0 - q / R) - (1.0 / R) / (1.0 - 1.0 / R))
    return -2.0 * L * (-1.0 / (1.0 - L) - sigma / s0)


def corollary1_rate(L: float, decay: DecaySpec, spec: PointMassSpec | float, n_max: int,
                    checkpoints: Sequence[int] | None = None, dps: int = 40) -> LimitReport:
    """(Delta_n(1) + 2L) / c_n for real alpha_n = L + c_n (limit -2 for slowly varying c_n).

    With real coefficients phi_n(1) = prod_j sqrt((1 - alpha_j)/(1 + alpha_j)) and
    Delta_n(1) = (1 - alpha_n) phi_n(1)^2 / ((1-gamma)/gamma + K_n(1, 1)).  The
    numerator Delta_n + 2L cancels to O(c_n), so the run uses at least ``dps``
    digits and more when c_n is small.
    The auxiliary ratio K_{n-1}(1,1) / phi_n(1)^2, whose limit is -(1+L)/(2L),
    is reported in ``extras``.
    """
    if isinstance(spec, PointMassSpec):
        if abs(math.remainder(spec.omega, 2 * math.pi)) > 1e-15:
            raise ValueError("the rate driver is for the point z = 1 (omega = 0)")
        gamma = spec.gamma
    else:
        gamma = float(spec)
    if not (isinstance(L, (int, float)) and L < 0):
        raise ValueError("L must be a negative real number")
    if complex(decay.amplitude).imag != 0:
        raise ValueError("c_n must be real")
    checkpoints = sorted(set(checkpoints or [])) or [n_max]
    ratios = np.empty(n_max + 1)
    aux = np.empty(n_max + 1)
    ratios[0] = aux[0] = math.nan
    with mpmath.workdps(30):
        tiny = min(abs(_mp_decay(decay, k)) for k in {1, n_max // 2 or 1, n_max})
    if tiny == 0:
        raise ValueError("c_n vanishes on the horizon")
    # Delta_n + 2L is O(c_n): carry enough digits to resolve it
    dps = max(dps, int(-mpmath.log10(tiny)) + 25)
    with mpmath.workdps(dps):
        Lm = mpmath.mpf(L)
        g = mpmath.mpf(gamma)
        off = (1 - g) / g
        phi2 = mpmath.mpf(1)  # phi_n(1)^2
        kern = mpmath.mpf(1)  # K_n(1, 1)
        k_prev = mpmath.mpf(0)
        for n in range(n_max + 1):
            c = _mp_decay(decay, n)
            a = Lm + c
            if not -1 < a < 1:
                raise ValueError(f"alpha_{n} = {a} is not in (-1, 1)")
            if n >= 1:
                delta = (1 - a) * phi2 / (off + kern)
                ratios[n] = float((delta + 2 * Lm) / c) if c != 0 else math.nan
                aux[n] = float(k_prev / phi2)
            k_prev = kern
            phi2 = phi2 * (1 - a) / (1 + a)
            kern = kern + phi2
    est = float(ratios[n_max])
    err = abs(ratios[n_max] - ratios[n_max - 1]) if n_max >= 2 else math.inf
    extras = {
        "checkpoints": {int(k): float(ratios[k]) for k in checkpoints if 1 <= k <= n_max},
        "aux_checkpoints": {int(k): float(aux[k]) for k in checkpoints if 1 <= k <= n_max},
        "aux_ratio": float(aux[n_max]),
        "aux_limit": -(1.0 + L) / (2.0 * L),
        "expected": corollary1_expected(L, decay),
    }
    return LimitReport(complex(est), TAIL_VALUE, float(err), bv_partial(ratios[1:]), n_max, (), extras)


# -- periodic blocks ----------------------------------------------------------------------

def periodic_block(seq, p: int, k: int, zeta: complex) -> TransferMatrix2:
    """B_k(zeta) = A(alpha_{(k+1)p-1}, zeta) ... A(alpha_{kp}, zeta)."""
    if p < 1 or k < 0:
        raise ValueError("need p >= 1 and k >= 0")
    alphas = as_alphas(seq, (k + 1) * p)
    return period_matrix(alphas[k * p :], zeta)


def block_variation(seq, p: int, k_max: int, zeta: complex) -> np.ndarray:
    """Running sums of ||B_{k+1}(zeta) - B_k(zeta)|| for k < k_max."""
    blocks = [periodic_block(seq, p, k, zeta) for k in range(k_max + 1)]
    return np.cumsum([(blocks[k + 1] - blocks[k]).norm() for k in range(k_max)])


def periodic_residue_limits(seq: CoefficientSequence, p: int, spec: PointMassSpec, k_max: int) -> list[LimitReport]:
    """For each residue j < p, the tail of Delta_{kp+j}(zeta) over k < k_max.

    Inside the bands the limits are zero; the reports then carry the
    ``band_interior`` flag, estimate 0, and the observed tail size in ``extras``.
    """
    beta = seq.periodic_part
    if beta is None or len(beta) != p:
        raise ValueError(f"sequence is not asymptotically {p}-periodic")
    tr = abs(period_traces(beta, np.array([spec.omega]))[0])
    if abs(tr - 2.0) <= TRACE_EDGE_TOL:
        raise OutOfGapError(f"zeta sits on a band edge (|Tr| = {tr})")
    interior = tr < 2.0
    deltas = delta_sequence(seq, spec, k_max * p - 1)
    out = []
    for j in range(p):
        x = deltas[j::p][:k_max]
        half = x[: max(1, k_max // 2)]
        extras = {
            "half_horizon_estimate": complex(half[-1]),
            "tail_abs_max": float(np.max(np.abs(x[-max(1, k_max // 10):]))),
            "trace": tr,
        }
        if interior:
            out.append(LimitReport(0j, TAIL_VALUE, float(abs(x[-1])), bv_partial(x), k_max, (BAND_INTERIOR,), extras))
        else:
            rep = bv_report(x, 1)
            out.append(LimitReport(rep.estimate, rep.method, rep.err_indicator, rep.bv_partial, k_max, (), extras))
    return out


def theorem1_expected(seq: CoefficientSequence, spec: PointMassSpec) -> complex | None:
    """Delta_infinity for sequences with a constant limit L != 0 and zeta in its gap, else None."""
    part = seq.periodic_part if isinstance(seq, CoefficientSequence) else None
    if part is None or len(part) != 1 or part[0] == 0:
        return None
    try:
        return delta_infinity(part[0], spec.omega)
    except OutOfGapError:
        return None


__all__ = [
    "BAND_INTERIOR",
    "CESARO_STOLZ",
    "DIVERGENCE_WARNING",
    "KoomanTrack",
    "LimitReport",
    "TAIL_VALUE",
    "TwoStageDeltas",
    "block_variation",
    "bv_partial",
    "bv_partial_sums",
    "bv_report",
    "cesaro_stolz_limit",
    "cesaro_stolz_quotients",
    "corollary1_expected",
    "corollary1_rate",
    "delta_limit",
    "delta_sequence",
    "find_n_start",
    "gamma_theta",
    "growth_rates",
    "kernel_bounded",
    "kooman_track",
    "log_linear_fit",
    "periodic_block",
    "periodic_residue_limits",
    "pure_point_delta_sequence",
    "step_traces",
    "theorem1_expected",
    "twisted_identity_residuals",
    "twisted_limit_check",
]
