"""Gap and band geometry, 2x2 eigensystems and the closed-form in-gap limits."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .coeffs import CoefficientSequence
from .errors import DegenerateError, OutOfGapError, ResolutionError
from .szego import TransferMatrix2, transfer_matrix

TRACE_EDGE_TOL = 1e-12
DEGENERACY_TOL = 1e-10
EIGVEC_SLOT_TOL = 1e-8
TWO_PI = 2.0 * math.pi


def canonical_angle(theta: float) -> float:
    """theta reduced to (-pi, pi]."""
    t = math.remainder(float(theta), TWO_PI)
    return math.pi if t == -math.pi else t


def _betas(L_or_periodic) -> tuple[complex, ...]:
    if isinstance(L_or_periodic, CoefficientSequence):
        part = L_or_periodic.periodic_part
        if part is None:
            raise ValueError(f"a {L_or_periodic.kind} sequence has no periodic limit")
        return part
    if np.ndim(L_or_periodic) == 0:
        return (complex(L_or_periodic),)
    out = tuple(complex(b) for b in L_or_periodic)
    if not out:
        raise ValueError("period must be at least 1")
    return out


# -- traces ---------------------------------------------------------------

def period_matrix(beta: Sequence[complex], z: complex) -> TransferMatrix2:
    """T_p(z) = A(beta_{p-1}, z) ... A(beta_0, z)."""
    out = TransferMatrix2.identity()
    for b in beta:
        out = transfer_matrix(b, z) @ out
    return out


def period_traces(beta: Sequence[complex], thetas: np.ndarray) -> np.ndarray:
    """Tr T_p(e^{i theta}) for an array of angles."""
    z = np.exp(1j * np.asarray(thetas, dtype=float))
    a = np.ones_like(z)
    b = np.zeros_like(z)
    c = np.zeros_like(z)
    d = np.ones_like(z)
    for beta in beta:
        beta = complex(beta)
        rho = math.sqrt(1.0 - abs(beta) ** 2)
        # A = [[z, -conj(beta)], [-beta z, 1]] / rho applied on the left
        a, b, c, d = (
            (z * a - beta.conjugate() * c) / rho,
            (z * b - beta.conjugate() * d) / rho,
            (-beta * z * a + c) / rho,
            (-beta * z * b + d) / rho,
        )
    return a + d


def in_gap(L_or_periodic, theta: float) -> bool:
    """True iff |Tr T_p(e^{i theta})| > 2; band edges count as inside the bands."""
    beta = _betas(L_or_periodic)
    tr = period_traces(beta, np.array([canonical_angle(theta)]))[0]
    return bool(abs(tr) > 2.0 + TRACE_EDGE_TOL)


def gap_half_width(L: complex) -> float:
    """theta_{|L|} = 2 arcsin |L|; the constant-L gap is (-theta_{|L|}, theta_{|L|})."""
    return 2.0 * math.asin(min(abs(complex(L)), 1.0))


# -- bands ----------------------------------------------------------------

@dataclass(frozen=True)
class GapGeometry:
    """Open gap arcs (theta_lo, theta_hi) with theta_lo in [-pi, pi) and theta_hi > theta_lo.

    An arc that straddles theta = pi has theta_hi > pi.  Membership is tested
    modulo 2 pi by :meth:`contains`.
    """

    arcs: list[tuple[float, float]]
    band_count: int
    period: int
    edges_residual: list[float] = field(default_factory=list)

    def contains(self, theta: float) -> bool:
        for lo, hi in self.arcs:
            t = lo + (float(theta) - lo) % TWO_PI
            if lo < t < hi:
                return True
        return False

    @property
    def gap_count(self) -> int:
        return len(self.arcs)

    def midpoints(self) -> list[float]:
        return [canonical_angle(0.5 * (lo + hi)) for lo, hi in self.arcs]


def _gap_indicator(beta, thetas):
    return np.abs(period_traces(beta, thetas)) - 2.0 - TRACE_EDGE_TOL


def _crossings(beta, grid: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    thetas = -math.pi + TWO_PI * np.arange(grid) / grid
    pos = _gap_indicator(beta, thetas) > 0
    change = np.nonzero(pos != np.roll(pos, -1))[0]  # cell [k, k+1 mod grid]
    return thetas, pos, change


def _bisect(beta, lo: float, hi: float, lo_pos: bool, tol: float) -> float:
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (abs(period_traces(beta, np.array([mid]))[0]) > 2.0) == lo_pos:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def compute_bands(beta, grid: int | None = None, tol: float = 1e-12) -> GapGeometry:
    """Locate the gaps of the periodic coefficients ``beta`` by a scan plus bisection.

    |Tr T_p(e^{i theta})| - 2 is sampled on ``grid`` points of [-pi, pi)
    (theta = 0 is always a sample) and every sign change is bisected to
    ``tol``.  A second scan at twice the resolution must see the same number
    of crossings, otherwise the grid is too coarse and ResolutionError is
    raised.
    """
    beta = _betas(beta)
    p = len(beta)
    grid = 256 * p if grid is None else int(grid)
    if grid < 16 * p:
        raise ResolutionError(f"grid {grid} is below 16 * period = {16 * p}")
    thetas, pos, change = _crossings(beta, grid)
    _, _, change2 = _crossings(beta, 2 * grid)
    if len(change2) != len(change):
        raise ResolutionError(
            f"{len(change)} crossings at grid {grid} but {len(change2)} at grid {2 * grid}"
        )
    if len(change) == 0:
        if pos[0]:
            raise ResolutionError("no band found on the scan grid")
        return GapGeometry([], 1, p, [])
    step = TWO_PI / grid
    edges = []  # (angle, entering_gap)
    for k in change:
        lo = thetas[k]
        edges.append((_bisect(beta, lo, lo + step, bool(pos[k]), tol), not pos[k]))
    arcs = []
    n = len(edges)
    first_open = next(i for i, (_, entering) in enumerate(edges) if entering)
    for j in range(first_open, first_open + n, 2):
        start, _ = edges[j % n]
        end, _ = edges[(j + 1) % n]
        if end <= start:
            end += TWO_PI
        if start >= math.pi:
            start -= TWO_PI
            end -= TWO_PI
        arcs.append((start, end))
    arcs.sort()
    resid = list(np.abs(np.abs(period_traces(beta, np.array([e for e, _ in edges]))) - 2.0))
    return GapGeometry(arcs, len(arcs), p, resid)


# -- eigensystems -----------------------------------------------------------

@dataclass(frozen=True)
class EigenPair:
    """Eigenvalues ordered by modulus (lambda1 dominant) and eigenvectors."""

    lambda1: complex
    lambda2: complex
    eigvec1: tuple[complex, complex]
    eigvec2: tuple[complex, complex]

    @property
    def G(self) -> TransferMatrix2:
        """Matrix with the eigenvectors as columns."""
        (g11, g21), (g12, g22) = self.eigvec1, self.eigvec2
        return TransferMatrix2(g11, g12, g21, g22)

    @property
    def ratio(self) -> complex:
        """lambda2 / lambda1."""
        return self.lambda2 / self.lambda1


def _eigvec(m: TransferMatrix2, lam: complex) -> tuple[complex, complex]:
    if abs(m.b) > EIGVEC_SLOT_TOL:
        return (1.0 + 0j, (lam - m.a) / m.b)
    if abs(m.c) > EIGVEC_SLOT_TOL:
        return ((lam - m.d) / m.c, 1.0 + 0j)
    return (1.0 + 0j, 0j) if abs(lam - m.a) <= abs(lam - m.d) else (0j, 1.0 + 0j)


def eigen_roots(m: TransferMatrix2) -> tuple[complex, complex]:
    """Roots of lambda^2 - Tr lambda + det, dominant first, without cancellation."""
    t, det = m.trace, m.det
    sq = cmath.sqrt(t * t - 4.0 * det)
    if (t.conjugate() * sq).real < 0:
        sq = -sq
    lam1 = 0.5 * (t + sq)
    lam2 = det / lam1 if lam1 != 0 else 0.5 * (t - sq)
    return lam1, lam2


def eigen_pair(m: TransferMatrix2) -> EigenPair:
    """Eigen-decomposition of a hyperbolic 2x2 matrix, eigenvectors from the first row."""
    lam1, lam2 = eigen_roots(m)
    if abs(lam1) - abs(lam2) < DEGENERACY_TOL:
        raise DegenerateError(
            f"|lambda1| - |lambda2| = {abs(lam1) - abs(lam2):.3e}; matrix is not hyperbolic"
        )
    return EigenPair(lam1, lam2, _eigvec(m, lam1), _eigvec(m, lam2))


def limit_matrix(L: complex, zeta: complex) -> TransferMatrix2:
    """A_infinity(zeta) = A(L, zeta)."""
    return transfer_matrix(L, zeta)


def y_pm(L: complex, zeta: complex) -> tuple[complex, complex]:
    """Eigenvalues tau_1, tau_2 of rho A_infinity(zeta), dominant first."""
    rho = math.sqrt(1.0 - abs(complex(L)) ** 2)
    lam1, lam2 = eigen_roots(limit_matrix(L, zeta))
    return rho * lam1, rho * lam2


# -- closed-form limits -------------------------------------------------------

def _gap_radicand(L: complex, theta: float) -> tuple[float, float]:
    t = canonical_angle(theta)
    s = math.sin(0.5 * t)
    rad = abs(complex(L)) ** 2 - s * s
    if complex(L) == 0 or not rad > 0.0 or not in_gap(L, t):
        raise OutOfGapError(f"theta = {theta} is not strictly inside the gap of |L| = {abs(complex(L))}")
    return t, rad


def h_sqrt(L: complex, theta: float) -> complex:
    """h(zeta)^{1/2} = 2 e^{i theta/2} sqrt(|L|^2 - sin^2(theta/2)), positive at theta = 0."""
    t, rad = _gap_radicand(L, theta)
    return 2.0 * cmath.exp(0.5j * t) * math.sqrt(rad)


def delta_infinity(L: complex, theta: float) -> complex:
    """lim Delta_n(e^{i theta}) for alpha_n -> L with e^{i theta} in the gap."""
    L = complex(L)
    hs = h_sqrt(L, theta)
    zeta = cmath.exp(1j * canonical_angle(theta))
    return hs.conjugate() * ((zeta - 1.0) - hs) / (2.0 * L.conjugate())


def limit_phase(L: complex, theta: float) -> complex:
    """L e^{i omega}, the limit of alpha_n(dnu), with omega from its cosine and sine."""
    L = complex(L)
    t, rad = _gap_radicand(L, theta)
    s = math.sin(0.5 * t)
    m2 = abs(L) ** 2
    cos_w = (2.0 * s * s - m2) / m2
    sin_w = 2.0 * s * math.sqrt(rad) / m2
    if abs(cos_w * cos_w + sin_w * sin_w - 1.0) > 1e-12:
        raise ArithmeticError("phase identity cos^2 + sin^2 = 1 violated")
    return L * cmath.exp(1j * math.atan2(sin_w, cos_w))


__all__ = [
    "EigenPair",
    "GapGeometry",
    "canonical_angle",
    "compute_bands",
    "delta_infinity",
    "eigen_pair",
    "eigen_roots",
    "gap_half_width",
    "h_sqrt",
    "in_gap",
    "limit_matrix",
    "limit_phase",
    "period_matrix",
    "period_traces",
    "y_pm",
]
