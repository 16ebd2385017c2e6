"""Point-mass perturbation of measures on the unit circle, computed through Verblunsky coefficients.

Modules
-------
coeffs         coefficient sequences and their descriptors
szego          overflow-safe Szego recursion, kernels, transfer matrices
pointmass      alpha_n(dnu) for dnu = (1 - gamma) dmu + gamma delta_omega
spectral       gaps, bands, eigensystems, closed-form in-gap limits
asymptotics    limit extraction and proof diagnostics
jacobi_bridge  sieved coefficients from scaled Jacobi parameters
cli            the ``opuc`` experiment runner
"""
from __future__ import annotations

from . import asymptotics, coeffs, jacobi_bridge, pointmass, spectral, szego
from .coeffs import (
    CoefficientSequence,
    DecaySpec,
    constant,
    constant_plus_decay,
    custom,
    make_sequence,
    periodic,
    periodic_plus_decay,
    twisted,
)
from .errors import (
    AdmissibilityError,
    ConfigError,
    DegenerateError,
    HyperbolicityError,
    MonotonicityError,
    NumericalBreakdown,
    OpucError,
    OutOfGapError,
    ResolutionError,
    SequenceRangeError,
)
from .pointmass import PointMassSpec, delta_n, geronimus_alpha, moment_oracle_alpha, simon_alpha
from .spectral import compute_bands, delta_infinity, eigen_pair, in_gap, limit_phase
from .szego import evaluate, trajectory

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "CoefficientSequence",
    "ConfigError",
    "DecaySpec",
    "DegenerateError",
    "HyperbolicityError",
    "MonotonicityError",
    "NumericalBreakdown",
    "OpucError",
    "OutOfGapError",
    "PointMassSpec",
    "ResolutionError",
    "SequenceRangeError",
    "asymptotics",
    "coeffs",
    "compute_bands",
    "constant",
    "constant_plus_decay",
    "custom",
    "delta_infinity",
    "delta_n",
    "eigen_pair",
    "evaluate",
    "geronimus_alpha",
    "in_gap",
    "jacobi_bridge",
    "limit_phase",
    "make_sequence",
    "moment_oracle_alpha",
    "periodic",
    "periodic_plus_decay",
    "pointmass",
    "simon_alpha",
    "spectral",
    "szego",
    "trajectory",
    "twisted",
]
