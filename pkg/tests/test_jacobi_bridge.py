from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opuc import jacobi_bridge as jb
from opuc.errors import AdmissibilityError
from opuc.jacobi_bridge import JacobiSpec


def _mp_sieved(a_of_n, y, n_max):
    """The defining recursion at 200 bits."""
    with mpmath.workprec(200):
        c = (mpmath.mpf(y) / 2) ** 2
        prev = mpmath.mpf(-1)
        out = []
        for n in range(n_max + 1):
            cur = c * mpmath.mpf(a_of_n(n + 1)) ** 2 / (1 - prev) - 1
            out.append(cur)
            prev = cur
        return out


def test_free_y2_tends_to_zero_from_below():
    al = jb.sieved_alphas(JacobiSpec.free(2.0), 10**4)
    assert al[0] == -0.5
    assert np.all(al < 0)
    assert np.all(np.diff(al) > 0)
    # x -> x / (1 - x) has a neutral fixed point at 0: alpha_n = -1/(n + 2) exactly
    assert al[-1] == pytest.approx(-1 / (10**4 + 2), rel=1e-10)


def test_free_y1_fixed_point():
    al = jb.sieved_alphas(JacobiSpec.free(1.0), 200)
    assert abs(al[-1] + math.sqrt(3) / 2) < 1e-8


def test_power_family_against_big_float():
    spec = JacobiSpec.power(0.6, 1.0)
    al = jb.sieved_alphas(spec, 500)
    ref = _mp_sieved(lambda n: 1 - mpmath.mpf(n + 1) ** mpmath.mpf(-0.6), 1.0, 500)
    assert np.max(np.abs(al - np.array([float(x) for x in ref]))) < 1e-13


def test_power_family_signs_and_bv():
    spec = JacobiSpec.power(0.6, 1.0)
    r3 = jb.bv_propagation_check(spec, 10**3)
    r4 = jb.bv_propagation_check(spec, 10**4)
    assert r4.extras["max_alpha"] < 0 and r4.extras["min_alpha"] > -1
    assert r4.bv_partial - r3.bv_partial < 0.05
    assert r4.extras["distance_to_limit"] < r3.extras["distance_to_limit"]


def test_geometric_limit_and_bv():
    spec = JacobiSpec.geometric(0.5, 1.0)
    r100 = jb.bv_propagation_check(spec, 100)
    r200 = jb.bv_propagation_check(spec, 200)
    assert abs(r200.bv_partial - r100.bv_partial) < 1e-8
    r = jb.bv_propagation_check(spec, 10**4)
    assert r.extras["distance_to_limit"] < 1e-6


def test_residuals_are_algebraic():
    for spec in (JacobiSpec.power(0.6, 1.0), JacobiSpec.geometric(0.7, 1.5), JacobiSpec.power(2.0, 0.3)):
        al = jb.sieved_alphas(spec, 1000)
        assert np.max(np.abs(jb.interleave_residuals(spec, jb.interleave_opuc(al)))) < 1e-12
        assert np.max(np.abs(jb.increment_residuals(spec, al))) < 1e-12


def test_interleave():
    assert jb.interleave_opuc([0.3]).tolist() == [0, 0.3]
    out = jb.interleave_opuc(np.array([-0.1, -0.2, -0.3]))
    assert out.tolist() == [0, -0.1, 0, -0.2, 0, -0.3]


@pytest.mark.parametrize("y", [0.5, 1.0, 1.7])
def test_gap_endpoint(y):
    assert jb.gap_endpoint_check(JacobiSpec.free(y)) < 1e-10


def test_gap_endpoint_requires_gap():
    with pytest.raises(ValueError):
        jb.gap_endpoint_check(JacobiSpec.free(2.0))


def test_limit_monotone_in_y():
    limits = [jb.bv_propagation_check(JacobiSpec.geometric(0.5, y), 2000).estimate.real for y in (0.5, 1.0, 1.5, 1.9)]
    assert all(a < b for a, b in zip(limits, limits[1:]))
    assert limits[-1] < 0


def test_validation():
    with pytest.raises(ValueError):
        JacobiSpec.free(0.0)
    with pytest.raises(ValueError):
        JacobiSpec.free(2.5)
    with pytest.raises(ValueError):
        JacobiSpec.free(1.0).validate(10)  # not strictly increasing
    JacobiSpec.free(1.0).validate(10, strict=False)
    JacobiSpec.power(0.6, 1.0).validate(1000)
    with pytest.raises(ValueError):
        JacobiSpec(lambda n: 1.0 - 0.5 / n, 1.0, b=lambda n: np.ones(np.shape(n))).validate(5)
    with pytest.raises(AdmissibilityError):
        jb.sieved_alphas(JacobiSpec(lambda n: np.full(np.shape(n), 1.5), 2.0), 10)


def test_killip_simon_sums():
    cps = jb.log_checkpoints(10**7)
    assert cps == [10, 100, 10**3, 10**4, 10**5, 10**6, 10**7]
    slow = jb.killip_simon_partial_sums(JacobiSpec.power(0.25, 1.0).a, cps)
    assert slow[10**7] > 1e3
    assert all(slow[a] < slow[b] for a, b in zip(cps, cps[1:]))
    # exponent 0.6 gives sum (n+1)^{-1.2}, which converges (to zeta(1.2) - 1 minus a tail)
    fast = jb.killip_simon_partial_sums(JacobiSpec.power(0.6, 1.0).a, cps)
    assert fast[10**7] < float(mpmath.zeta(1.2)) - 1
    assert fast[10**7] - fast[10**6] < 0.5


def test_killip_simon_chunking():
    a = JacobiSpec.power(0.4, 1.0).a
    one = jb.killip_simon_partial_sums(a, [5000])
    many = jb.killip_simon_partial_sums(a, [5000], chunk=333)
    assert one[5000] == pytest.approx(many[5000], rel=1e-13)
    n = np.arange(1, 5001)
    assert one[5000] == pytest.approx(float(np.sum((a(n) - 1) ** 2)), rel=1e-13)


@settings(max_examples=40, deadline=None)
@given(y=st.floats(0.05, 1.99), expo=st.floats(0.2, 3.0))
def test_values_in_open_interval(y, expo):
    al = jb.sieved_alphas(JacobiSpec.power(expo, y), 2000)
    assert np.all(al < 0) and np.all(al > -1)
