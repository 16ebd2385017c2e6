"""Verblunsky coefficient sequences.

A sequence is a pure function ``n -> alpha_n`` in the open unit disk together
with a tag describing its asymptotic class.  Everything downstream only ever
asks for ``seq(n)`` or the vectorised ``seq.values(n_max)``.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from .errors import AdmissibilityError, ConfigError, SequenceRangeError

KINDS = ("constant", "constant_plus_decay", "periodic", "periodic_plus_decay", "twisted", "custom")
DECAY_FORMS = ("geometric", "power", "harmonic")


@dataclass(frozen=True)
class DecaySpec:
    """A real decaying profile ``c_n`` scaled by a complex amplitude.

    ``geometric``: c_n = ratio**n (c_0 = 1).
    ``power``:     c_n = n**(-exponent), c_0 = 0.
    ``harmonic``:  c_n = 1/n, c_0 = 0.
    """

    form: str
    parameter: float = 1.0
    amplitude: complex = 1.0

    def __post_init__(self):
        if self.form not in DECAY_FORMS:
            raise AdmissibilityError(f"unknown decay form {self.form!r}")
        if self.form == "geometric" and not 0.0 < self.parameter < 1.0:
            raise AdmissibilityError("geometric ratio must lie in (0, 1)")
        if self.form == "power" and not self.parameter > 0.0:
            raise AdmissibilityError("power-law exponent must be positive")
        object.__setattr__(self, "amplitude", complex(self.amplitude))

    @classmethod
    def geometric(cls, ratio: float, amplitude: complex = 1.0) -> "DecaySpec":
        return cls("geometric", ratio, amplitude)

    @classmethod
    def power(cls, exponent: float, amplitude: complex = 1.0) -> "DecaySpec":
        return cls("power", exponent, amplitude)

    @classmethod
    def harmonic(cls, amplitude: complex = 1.0) -> "DecaySpec":
        return cls("harmonic", 1.0, amplitude)

    @property
    def is_bv(self) -> bool:
        # every supported profile is monotone and tends to zero
        return True

    @property
    def peak(self) -> float:
        """sup_n c_n."""
        return 1.0

    def profile(self, n: np.ndarray) -> np.ndarray:
        """Real profile c_n for an integer array ``n``."""
        n = np.asarray(n)
        if self.form == "geometric":
            return self.parameter ** n.astype(float)
        q = 1.0 if self.form == "harmonic" else self.parameter
        out = np.zeros(n.shape, dtype=float)
        pos = n > 0
        out[pos] = n[pos].astype(float) ** (-q)
        return out

    def __call__(self, n: np.ndarray) -> np.ndarray:
        return self.amplitude * self.profile(n)


def _check_disk(value: complex, what: str) -> complex:
    value = complex(value)
    if not abs(value) < 1.0:
        raise AdmissibilityError(f"{what} = {value} is not in the open unit disk")
    return value


def _unit_power(zeta: complex, n: np.ndarray) -> np.ndarray:
    """conj(zeta)**n with exact values for the fourth roots of unity."""
    exact = {1 + 0j: 0, 1j: 1, -1 + 0j: 2, -1j: 3}
    if zeta in exact:
        quarter = exact[zeta]
        table = np.array([1, -1j, -1, 1j], dtype=complex)  # powers of conj(i)
        return table[(quarter * n) % 4]
    phi = cmath.phase(zeta)
    return np.exp(-1j * phi * n.astype(float))


@dataclass(frozen=True)
class CoefficientSequence:
    """Lazily evaluable Verblunsky coefficients with a declared asymptotic class.

    Use the module-level constructors (:func:`constant`, :func:`periodic`, ...)
    rather than instantiating directly.
    """

    kind: str
    limit: Any = None  # L (constant/twisted) or tuple of betas (periodic)
    decay: DecaySpec | None = None
    zeta: complex | None = None
    table: np.ndarray | None = field(default=None, repr=False, compare=False)
    func: Callable[[int], complex] | None = field(default=None, repr=False, compare=False)

    # -- evaluation -------------------------------------------------------
    def values(self, count: int) -> np.ndarray:
        """Array ``[alpha_0, ..., alpha_{count-1}]``."""
        if count < 0:
            raise ValueError("count must be non-negative")
        n = np.arange(count)
        if self.kind == "constant":
            out = np.full(count, self.limit, dtype=complex)
        elif self.kind == "constant_plus_decay":
            out = self.limit + self.decay(n)
        elif self.kind == "periodic":
            beta = np.asarray(self.limit, dtype=complex)
            out = beta[n % len(beta)]
        elif self.kind == "periodic_plus_decay":
            beta = np.asarray(self.limit, dtype=complex)
            out = beta[n % len(beta)] + self.decay(n)
        elif self.kind == "twisted":
            out = self.limit * _unit_power(self.zeta, n)
        elif self.table is not None:
            if count > len(self.table):
                raise SequenceRangeError(
                    f"table holds {len(self.table)} coefficients, {count} requested"
                )
            out = self.table[:count].copy()
        else:
            out = np.array([complex(self.func(int(k))) for k in n], dtype=complex)
            bad = np.nonzero(np.abs(out) >= 1.0)[0]
            if bad.size:
                raise AdmissibilityError(f"alpha_{bad[0]} = {out[bad[0]]} is not in the unit disk")
        return out.astype(complex, copy=False)

    def __call__(self, n: int) -> complex:
        if n < 0:
            raise ValueError("index must be non-negative")
        if self.table is not None and n >= len(self.table):
            raise SequenceRangeError(f"table holds {len(self.table)} coefficients, index {n} requested")
        if self.kind == "custom" and self.func is not None:
            return _check_disk(self.func(n), f"alpha_{n}")
        return complex(self.values(n + 1)[n])

    # -- classification ---------------------------------------------------
    @property
    def period(self) -> int | None:
        if self.kind in ("constant", "constant_plus_decay"):
            return 1
        if self.kind in ("periodic", "periodic_plus_decay"):
            return len(self.limit)
        return None

    @property
    def periodic_part(self) -> tuple[complex, ...] | None:
        """The periodic sequence this one is asymptotic to, when declared."""
        if self.kind in ("constant", "constant_plus_decay"):
            return (complex(self.limit),)
        if self.kind in ("periodic", "periodic_plus_decay"):
            return tuple(complex(b) for b in self.limit)
        return None

    @property
    def is_bv(self) -> bool | None:
        """Whether sum |alpha_{n+p} - alpha_n| < inf for the natural stride p."""
        if self.kind in ("constant", "periodic"):
            return True
        if self.kind in ("constant_plus_decay", "periodic_plus_decay"):
            return self.decay.is_bv
        if self.kind == "twisted":
            return self.limit == 0 or self.zeta == 1
        return None

    @property
    def length(self) -> int | None:
        return None if self.table is None else len(self.table)


# -- constructors ---------------------------------------------------------

def constant(L: complex) -> CoefficientSequence:
    return CoefficientSequence("constant", _check_disk(L, "L"))


def constant_plus_decay(L: complex, decay: DecaySpec) -> CoefficientSequence:
    L = _check_disk(L, "L")
    # |L + a c| is convex in c, so checking c = 0 and c = peak covers every n
    _check_disk(L + decay.amplitude * decay.peak, "L + amplitude * max c_n")
    return CoefficientSequence("constant_plus_decay", L, decay=decay)


def periodic(beta: Sequence[complex]) -> CoefficientSequence:
    beta = tuple(_check_disk(b, f"beta_{j}") for j, b in enumerate(beta))
    if not beta:
        raise AdmissibilityError("period must be at least 1")
    return CoefficientSequence("periodic", beta)


def periodic_plus_decay(beta: Sequence[complex], decay: DecaySpec) -> CoefficientSequence:
    seq = periodic(beta)
    for j, b in enumerate(seq.limit):
        _check_disk(b + decay.amplitude * decay.peak, f"beta_{j} + amplitude * max c_n")
    return CoefficientSequence("periodic_plus_decay", seq.limit, decay=decay)


def twisted(L: complex, zeta: complex) -> CoefficientSequence:
    """alpha_n = L * conj(zeta)**n, so that zeta**n alpha_n = L."""
    L = _check_disk(L, "L")
    zeta = complex(zeta)
    if abs(abs(zeta) - 1.0) > 1e-12:
        raise AdmissibilityError("twist must lie on the unit circle")
    zeta = zeta / abs(zeta)
    return CoefficientSequence("twisted", L, zeta=zeta)


def custom(source: Sequence[complex] | np.ndarray | Callable[[int], complex]) -> CoefficientSequence:
    """Wrap a finite table or a callable ``n -> alpha_n``."""
    if callable(source):
        return CoefficientSequence("custom", func=source)
    table = np.asarray(source, dtype=complex).copy()
    bad = np.nonzero(np.abs(table) >= 1.0)[0]
    if bad.size:
        raise AdmissibilityError(f"alpha_{bad[0]} = {table[bad[0]]} is not in the unit disk")
    table.setflags(write=False)
    return CoefficientSequence("custom", table=table)


def as_alphas(seq: CoefficientSequence | Sequence[complex] | np.ndarray, count: int) -> np.ndarray:
    """First ``count`` coefficients of either a sequence object or a raw array."""
    if isinstance(seq, CoefficientSequence):
        return seq.values(count)
    arr = np.asarray(seq, dtype=complex)
    if len(arr) < count:
        raise SequenceRangeError(f"{len(arr)} coefficients supplied, {count} required")
    return arr[:count]


def bv_partial_sum(seq: CoefficientSequence, stride: int, N: int) -> float:
    """sum_{n=0}^{N} |alpha_{n+stride} - alpha_n|."""
    if stride < 1 or N < 0:
        raise ValueError("need stride >= 1 and N >= 0")
    a = as_alphas(seq, N + stride + 1)
    return float(np.sum(np.abs(a[stride:] - a[: N + 1])))


# -- descriptors (used by the CLI config) ----------------------------------

def parse_complex(value: Any) -> complex:
    """Accept a number, a ``[re, im]`` pair or a ``{"re":, "im":}`` / polar mapping."""
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, dict):
        if "abs" in value:
            return cmath.rect(float(value["abs"]), float(value.get("arg", 0.0)))
        if "angle" in value:
            return cmath.exp(1j * float(value["angle"]))
        return complex(float(value.get("re", 0.0)), float(value.get("im", 0.0)))
    if isinstance(value, str):
        return complex(value.replace(" ", ""))
    raise ConfigError(f"cannot read {value!r} as a complex number")


def _decay_from(desc: dict) -> DecaySpec:
    form = desc.get("form")
    amp = parse_complex(desc.get("amplitude", 1.0))
    if form == "geometric":
        return DecaySpec.geometric(float(desc["ratio"]), amp)
    if form == "power":
        return DecaySpec.power(float(desc["exponent"]), amp)
    if form == "harmonic":
        return DecaySpec.harmonic(amp)
    raise ConfigError(f"unknown decay form {form!r}")


def make_sequence(desc: dict) -> CoefficientSequence:
    """Build a sequence from a JSON-style descriptor.

    >>> make_sequence({"kind": "constant", "L": -0.5})(7)
    (-0.5+0j)
    """
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ConfigError("sequence descriptor needs a 'kind'")
    kind = desc["kind"]
    try:
        if kind == "constant":
            return constant(parse_complex(desc["L"]))
        if kind == "constant_plus_decay":
            return constant_plus_decay(parse_complex(desc["L"]), _decay_from(desc["decay"]))
        if kind == "periodic":
            return periodic([parse_complex(b) for b in desc["beta"]])
        if kind == "periodic_plus_decay":
            return periodic_plus_decay([parse_complex(b) for b in desc["beta"]], _decay_from(desc["decay"]))
        if kind == "twisted":
            zeta = parse_complex(desc["zeta"]) if "zeta" in desc else cmath.exp(1j * float(desc["angle"]))
            return twisted(parse_complex(desc["L"]), zeta)
        if kind == "custom":
            return custom([parse_complex(a) for a in desc["table"]])
    except KeyError as exc:
        raise ConfigError(f"sequence descriptor of kind {kind!r} is missing {exc}") from None
    raise ConfigError(f"unknown sequence kind {kind!r}")


def describe(seq: CoefficientSequence) -> dict:
    """Inverse of :func:`make_sequence` (complex values as [re, im])."""
    def c(z):
        z = complex(z)
        return [z.real, z.imag]

    def d(dec: DecaySpec):
        out = {"form": dec.form, "amplitude": c(dec.amplitude)}
        if dec.form == "geometric":
            out["ratio"] = dec.parameter
        elif dec.form == "power":
            out["exponent"] = dec.parameter
        return out

    if seq.kind == "constant":
        return {"kind": "constant", "L": c(seq.limit)}
    if seq.kind == "constant_plus_decay":
        return {"kind": seq.kind, "L": c(seq.limit), "decay": d(seq.decay)}
    if seq.kind == "periodic":
        return {"kind": seq.kind, "beta": [c(b) for b in seq.limit]}
    if seq.kind == "periodic_plus_decay":
        return {"kind": seq.kind, "beta": [c(b) for b in seq.limit], "decay": d(seq.decay)}
    if seq.kind == "twisted":
        return {"kind": seq.kind, "L": c(seq.limit), "zeta": c(seq.zeta)}
    if seq.table is not None:
        return {"kind": "custom", "table": [c(a) for a in seq.table]}
    return {"kind": "custom", "table": None}


__all__ = [
    "CoefficientSequence",
    "DecaySpec",
    "KINDS",
    "as_alphas",
    "bv_partial_sum",
    "constant",
    "constant_plus_decay",
    "custom",
    "describe",
    "make_sequence",
    "parse_complex",
    "periodic",
    "periodic_plus_decay",
    "twisted",
]
