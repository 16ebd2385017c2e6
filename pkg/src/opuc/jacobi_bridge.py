"""Sieved Verblunsky coefficients from scaled Jacobi parameters.

A symmetric measure on [-2, 2] with b_n = 0 and a_n increasing to 1 is
scaled to [-y, y] and pulled back to the circle by the inverse Szego map.  The
resulting coefficients are 0, alpha_0, 0, alpha_1, ... where the alpha_n obey

    (y/2)^2 a_{n+1}^2 / (1 - alpha_{n-1}) - 1 = alpha_n,   alpha_{-1} = -1,

and converge to -a_y = -sqrt(1 - (y/2)^2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .asymptotics import TAIL_VALUE, LimitReport, bv_partial
from .errors import AdmissibilityError
from .spectral import compute_bands


@dataclass(frozen=True)
class JacobiSpec:
    """Off-diagonal Jacobi parameters n -> a_n (n >= 1), zero diagonal, scaling y in (0, 2].

    y = 2 is the unscaled measure: a_y = 0 and there is no gap.
    """

    a: Callable[[np.ndarray], np.ndarray]
    y: float
    b: Callable[[np.ndarray], np.ndarray] | None = None
    label: str = field(default="custom", compare=False)

    def __post_init__(self):
        if not 0.0 < self.y <= 2.0:
            raise ValueError(f"y must lie in (0, 2], got {self.y}")

    @classmethod
    def power(cls, exponent: float, y: float) -> "JacobiSpec":
        """a_n = 1 - (n + 1)^{-exponent}."""
        return cls(lambda n: 1.0 - (np.asarray(n, dtype=float) + 1.0) ** (-exponent), y,
                   label=f"power({exponent})")

    @classmethod
    def geometric(cls, ratio: float, y: float) -> "JacobiSpec":
        """a_n = 1 - ratio^n."""
        return cls(lambda n: 1.0 - float(ratio) ** np.asarray(n, dtype=float), y, label=f"geometric({ratio})")

    @classmethod
    def free(cls, y: float) -> "JacobiSpec":
        """a_n = 1 (the limiting case; not strictly increasing)."""
        return cls(lambda n: np.ones(np.shape(n)), y, label="free")

    @property
    def c(self) -> float:
        """(y/2)^2."""
        return (0.5 * self.y) ** 2

    @property
    def a_y(self) -> float:
        """sqrt(1 - (y/2)^2) = sin(theta_y)."""
        return math.sqrt(1.0 - self.c)

    @property
    def theta_y(self) -> float:
        """arccos(y/2)."""
        return math.acos(0.5 * self.y)

    def a_values(self, count: int) -> np.ndarray:
        """a_1 .. a_count."""
        return np.asarray(self.a(np.arange(1, count + 1)), dtype=float)

    def validate(self, count: int, strict: bool = True) -> None:
        """Check b_n = 0, 0 < a_n <= 1 and (with ``strict``) a_n strictly increasing."""
        n = np.arange(1, count + 1)
        if self.b is not None and np.any(np.asarray(self.b(n)) != 0):
            raise ValueError("diagonal parameters b_n must vanish")
        a = self.a_values(count)
        if np.any(a <= 0) or np.any(a > 1):
            raise ValueError("a_n must lie in (0, 1]")
        if strict and np.any(np.diff(a) <= 0):
            raise ValueError("a_n must be strictly increasing")


def sieved_alphas(spec: JacobiSpec, n_max: int) -> np.ndarray:
    """alpha_0 .. alpha_{n_max} of the sieved measure nu_y (real, in (-1, 0))."""
    a2 = spec.a_values(n_max + 1) ** 2  # a_{n+1}^2 at position n
    c = spec.c
    out = np.empty(n_max + 1)
    prev = -1.0
    for n in range(n_max + 1):
        cur = c * a2[n] / (1.0 - prev) - 1.0
        if not -1.0 < cur < 1.0:
            raise AdmissibilityError(f"alpha_{n} = {cur} left (-1, 1); the a_n table is inadmissible")
        out[n] = cur
        prev = cur
    return out


def interleave_opuc(alphas: Sequence[float]) -> np.ndarray:
    """[0, alpha_0, 0, alpha_1, ...], the coefficients of the doubled-angle measure."""
    alphas = np.asarray(alphas)
    out = np.zeros(2 * len(alphas), dtype=alphas.dtype)
    out[1::2] = alphas
    return out


def interleave_residuals(spec: JacobiSpec, interleaved: np.ndarray) -> np.ndarray:
    """(y/2)^2 a_{n+1}^2 - (1 - A_{2n-1})(1 + A_{2n+1}) with A_{-1} = -1."""
    odd = np.concatenate(([-1.0], np.asarray(interleaved)[1::2]))
    m = len(odd) - 1
    return spec.c * spec.a_values(m) ** 2 - (1.0 - odd[:-1]) * (1.0 + odd[1:])


def increment_residuals(spec: JacobiSpec, alphas: np.ndarray) -> np.ndarray:
    """Residual of the increment identity for n >= 1:

    alpha_n - alpha_{n-1} = c (a_{n+1}^2 - a_n^2) / (1 - alpha_{n-1})
                            + c a_n^2 (alpha_{n-1} - alpha_{n-2}) / ((1 - alpha_{n-1})(1 - alpha_{n-2})).
    """
    al = np.concatenate(([-1.0], np.asarray(alphas, dtype=float)))  # al[k] = alpha_{k-1}
    n = np.arange(1, len(alphas))
    a2 = np.concatenate(([0.0], spec.a_values(len(alphas)) ** 2))  # a2[k] = a_k^2
    c = spec.c
    cur, prev, prev2 = al[n + 1], al[n], al[n - 1]
    rhs = c * (a2[n + 1] - a2[n]) / (1.0 - prev) + c * a2[n] * (prev - prev2) / ((1.0 - prev) * (1.0 - prev2))
    return (cur - prev) - rhs


def bv_propagation_check(spec: JacobiSpec, n_max: int) -> LimitReport:
    """Variation and limit of the sieved coefficients, with both algebraic residuals."""
    alphas = sieved_alphas(spec, n_max)
    r100 = interleave_residuals(spec, interleave_opuc(alphas))
    r104 = increment_residuals(spec, alphas)
    extras = {
        "limit": -spec.a_y,
        "distance_to_limit": float(abs(alphas[-1] + spec.a_y)),
        "interleave_max_residual": float(np.max(np.abs(r100))),
        "increment_max_residual": float(np.max(np.abs(r104))) if r104.size else 0.0,
        "max_alpha": float(np.max(alphas)),
        "min_alpha": float(np.min(alphas)),
    }
    err = float(abs(alphas[-1] - alphas[-2])) if n_max >= 1 else math.inf
    return LimitReport(complex(alphas[-1]), TAIL_VALUE, err, bv_partial(alphas), n_max + 1, (), extras)


def gap_endpoint_check(spec: JacobiSpec, tol: float = 1e-12) -> float:
    """|edge of the Constant(-a_y) gap - 2 theta_y|: the arc proxy for the support of nu_y."""
    geo = compute_bands([-spec.a_y], tol=tol)
    if geo.gap_count != 1:
        raise ValueError("expected exactly one gap")
    return abs(geo.arcs[0][1] - 2.0 * spec.theta_y)


def killip_simon_partial_sums(a: Callable[[np.ndarray], np.ndarray], checkpoints: Sequence[int],
                              chunk: int = 1_000_000) -> dict[int, float]:
    """sum_{n=1}^{N} (a_n - 1)^2 at each checkpoint N, summed directly in chunks."""
    checkpoints = sorted(int(k) for k in checkpoints)
    out = {}
    total = 0.0
    start = 1
    for stop in checkpoints:
        while start <= stop:
            end = min(stop, start + chunk - 1)
            n = np.arange(start, end + 1)
            total += float(np.sum((np.asarray(a(n), dtype=float) - 1.0) ** 2))
            start = end + 1
        out[stop] = total
    return out


def log_checkpoints(n_max: int, per_decade: int = 1) -> list[int]:
    """10, 100, ... up to n_max (plus n_max itself), ``per_decade`` points per decade."""
    top = math.log10(n_max)
    pts = {int(round(10 ** (k / per_decade))) for k in range(per_decade, int(top * per_decade) + 1)}
    pts.add(int(n_max))
    return sorted(pts)


__all__ = [
    "JacobiSpec",
    "bv_propagation_check",
    "gap_endpoint_check",
    "increment_residuals",
    "interleave_opuc",
    "interleave_residuals",
    "killip_simon_partial_sums",
    "log_checkpoints",
    "sieved_alphas",
]
