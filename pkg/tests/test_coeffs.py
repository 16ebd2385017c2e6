from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opuc import coeffs
from opuc.coeffs import DecaySpec
from opuc.errors import AdmissibilityError, ConfigError, SequenceRangeError


def test_constant_value():
    assert coeffs.make_sequence({"kind": "constant", "L": -0.5})(7) == -0.5


def test_constant_plus_harmonic():
    seq = coeffs.make_sequence({"kind": "constant_plus_decay", "L": -0.5, "decay": {"form": "harmonic"}})
    assert seq(4) == pytest.approx(-0.25)
    assert seq(0) == -0.5  # c_0 = 0


def test_twisted_value_and_invariant():
    seq = coeffs.make_sequence({"kind": "twisted", "L": 0.3, "zeta": -1})
    assert seq(3) == pytest.approx(-0.3)
    zeta = cmath.exp(0.7j)
    tw = coeffs.twisted(0.3 + 0.1j, zeta)
    n = np.arange(200)
    assert np.max(np.abs(zeta**n * tw.values(200) - (0.3 + 0.1j))) < 1e-12


def test_twisted_fourth_roots_exact():
    tw = coeffs.twisted(0.3, 1j)
    vals = tw.values(8)
    assert vals[2] == -0.3 and vals[1] == pytest.approx(-0.3j, abs=0) and vals[4] == 0.3


def test_periodic_exact():
    seq = coeffs.periodic([0.5, -0.5j, 0.1])
    a = seq.values(300)
    assert np.array_equal(a[3:], a[:-3])
    assert coeffs.bv_partial_sum(seq, 3, 200) == 0.0


def test_bv_constant_zero():
    assert coeffs.bv_partial_sum(coeffs.constant(-0.5), 1, 100) == 0.0


def test_bv_geometric_bounded():
    seq = coeffs.constant_plus_decay(-0.5, DecaySpec.geometric(0.5))
    # closed form: sum_{n<=N} (1/2)^{n+1} = 1 - 2^{-(N+1)}
    s = coeffs.bv_partial_sum(seq, 1, 200)
    assert s <= 1 + 1e-12
    assert s == pytest.approx(1.0 - 0.5**201, abs=1e-15)


def test_bv_geometric_cauchy():
    seq = coeffs.constant_plus_decay(-0.5, DecaySpec.geometric(0.9, 0.2 + 0.1j))
    assert coeffs.bv_partial_sum(seq, 1, 10**4) - coeffs.bv_partial_sum(seq, 1, 10**3) < 1e-6


def test_twisted_not_bv_grows_linearly():
    seq = coeffs.twisted(0.3, cmath.exp(1j * math.pi / 4))
    s10 = coeffs.bv_partial_sum(seq, 1, 10)
    s1000 = coeffs.bv_partial_sum(seq, 1, 1000)
    # every increment has the same size, so the ratio is exactly (1000 + 1) / (10 + 1)
    assert s1000 / s10 == pytest.approx(1001 / 11, rel=1e-12)
    assert not seq.is_bv


def test_is_bv_classification():
    assert DecaySpec.geometric(0.5).is_bv
    assert DecaySpec.power(2.0).is_bv
    assert DecaySpec.power(0.5).is_bv  # monotone and tending to zero
    assert DecaySpec.harmonic().is_bv
    assert coeffs.constant_plus_decay(-0.5, DecaySpec.harmonic()).is_bv


def test_decay_validation():
    with pytest.raises(ValueError):
        DecaySpec.geometric(1.0)
    with pytest.raises(ValueError):
        DecaySpec.power(0.0)


def test_admissibility():
    with pytest.raises(AdmissibilityError):
        coeffs.constant(1.0)
    with pytest.raises(AdmissibilityError):
        coeffs.constant_plus_decay(-0.5, DecaySpec.geometric(0.5, amplitude=-0.6))
    with pytest.raises(AdmissibilityError):
        coeffs.periodic([0.2, 1.2])
    with pytest.raises(AdmissibilityError):
        coeffs.custom([0.1, 1.0])
    with pytest.raises(AdmissibilityError):
        coeffs.custom(lambda n: 2.0)(3)


def test_custom_table_range():
    seq = coeffs.custom([0.1, 0.2, 0.3])
    assert seq(2) == pytest.approx(0.3)
    with pytest.raises(SequenceRangeError):
        seq(3)
    with pytest.raises(SequenceRangeError):
        seq.values(4)


def test_make_sequence_errors():
    with pytest.raises(ConfigError):
        coeffs.make_sequence({"kind": "weird"})
    with pytest.raises(ConfigError):
        coeffs.make_sequence({"kind": "constant"})
    with pytest.raises(ConfigError):
        coeffs.make_sequence({"L": 0.1})


def test_parse_complex_forms():
    assert coeffs.parse_complex([0.2, 0.1]) == 0.2 + 0.1j
    assert coeffs.parse_complex({"re": 0.2, "im": -0.1}) == 0.2 - 0.1j
    assert coeffs.parse_complex("0.3+0.2j") == 0.3 + 0.2j
    assert coeffs.parse_complex({"abs": 1.0, "arg": math.pi}) == pytest.approx(-1.0)


@pytest.mark.parametrize("desc", [
    {"kind": "constant", "L": [-0.5, 0.1]},
    {"kind": "constant_plus_decay", "L": -0.5, "decay": {"form": "geometric", "ratio": 0.9, "amplitude": [0.2, 0.1]}},
    {"kind": "periodic_plus_decay", "beta": [0.5, -0.5], "decay": {"form": "power", "exponent": 1.5, "amplitude": 0.1}},
    {"kind": "twisted", "L": 0.3, "zeta": [0.0, 1.0]},
    {"kind": "custom", "table": [0.1, [0.0, 0.2]]},
])
def test_describe_round_trip(desc):
    seq = coeffs.make_sequence(desc)
    again = coeffs.make_sequence(coeffs.describe(seq))
    assert np.array_equal(seq.values(50 if seq.length is None else seq.length),
                          again.values(50 if again.length is None else again.length))


@settings(max_examples=60, deadline=None)
@given(
    r=st.floats(0.05, 0.95),
    th=st.floats(-math.pi, math.pi),
    ratio=st.floats(0.1, 0.99),
    frac=st.floats(0.0, 0.99),
)
def test_disk_invariant_property(r, th, ratio, frac):
    L = r * cmath.exp(1j * th)
    amp = frac * (1 - r)
    for seq in (
        coeffs.constant_plus_decay(L, DecaySpec.geometric(ratio, amp)),
        coeffs.constant_plus_decay(L, DecaySpec.harmonic(-amp)),
        coeffs.twisted(L, cmath.exp(1j * ratio)),
    ):
        assert np.all(np.abs(seq.values(10**5)) < 1.0)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-0.9, 0.9), min_size=1, max_size=5), st.integers(1, 300))
def test_bv_nondecreasing_in_N(beta, N):
    seq = coeffs.periodic_plus_decay(beta, DecaySpec.geometric(0.7, 0.05))
    assert coeffs.bv_partial_sum(seq, 1, N + 1) >= coeffs.bv_partial_sum(seq, 1, N)


def test_values_deterministic():
    seq = coeffs.constant_plus_decay(-0.5, DecaySpec.power(1.3, 0.2))
    assert np.array_equal(seq.values(1000), seq.values(1000))
    assert seq(999) == seq.values(1000)[999]
