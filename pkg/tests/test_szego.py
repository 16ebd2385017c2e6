from __future__ import annotations

import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opuc import coeffs, spectral, szego
from opuc.errors import AdmissibilityError

from oracles import PREC, mp_kernel, mp_szego


def _random_table(rng, n, rmax=0.8):
    r = rmax * rng.random(n)
    return r * np.exp(2j * np.pi * rng.random(n))


def test_free_case():
    z = cmath.exp(0.7j)
    st_ = szego.evaluate(coeffs.constant(0.0), z, 9)
    assert st_.phi == pytest.approx(z**9, abs=1e-14)
    assert st_.phi_star == pytest.approx(1.0, abs=1e-14)
    assert st_.kernel == pytest.approx(10.0, rel=1e-14)


def test_constant_minus_half_at_one():
    for n in (1, 5, 10, 40):
        st_ = szego.evaluate(coeffs.constant(-0.5), 1.0, n)
        assert st_.log_abs_phi == pytest.approx(0.5 * n * math.log(3.0), rel=1e-14)
    assert szego.evaluate(coeffs.constant(-0.5), 1.0, 10).log_abs_phi == pytest.approx(5 * math.log(3.0), rel=1e-14)


def test_single_step_against_big_float():
    a = 0.3 + 0.4j
    st_ = szego.szego_step(szego.initial_state(1j), a)
    phi, star = mp_szego([a], 1j, 1)
    assert abs(st_.phi - complex(phi[1])) < 1e-15
    assert abs(st_.phi_star - complex(star[1])) < 1e-15


def test_evaluate_constant_zero_at_one():
    st_ = szego.evaluate(coeffs.constant(0.0), 1.0, 5)
    assert (st_.phi, st_.phi_star) == (1.0, 1.0)
    assert st_.kernel == pytest.approx(6.0, rel=1e-15)


def test_gap_slope_matches_eigenvalue():
    z = cmath.exp(1j * math.pi / 6)
    lam1 = spectral.eigen_pair(spectral.limit_matrix(-0.5, z)).lambda1
    traj = szego.trajectory(coeffs.constant(-0.5), z, 200)
    la = traj.log_abs_phi
    slope = (la[200] - la[100]) / 100
    assert slope == pytest.approx(math.log(abs(lam1)), abs=1e-6)


def test_admissibility():
    with pytest.raises(AdmissibilityError):
        szego.szego_step(szego.initial_state(1.0), 1.0)
    with pytest.raises(AdmissibilityError):
        szego.transfer_matrix(1.0 + 0.1j, 1.0)


def test_window_and_circle_modulus():
    rng = np.random.default_rng(3)
    table = _random_table(rng, 400, 0.95)
    traj = szego.trajectory(table, cmath.exp(0.4j), 400)
    m = np.maximum(np.abs(traj.u), np.abs(traj.v))
    assert np.all((m >= 0.5) & (m <= 2.0))
    assert np.max(np.abs(np.abs(traj.u) / np.abs(traj.v) - 1)) < 1e-10
    assert np.all(np.diff(traj.log_kernel) > 0)


def test_circle_modulus_long_run():
    z = cmath.exp(1j * math.pi / 6)
    seq = coeffs.constant_plus_decay(-0.5, coeffs.DecaySpec.harmonic(0.2))
    traj = szego.trajectory(seq, z, 10**4)
    assert np.max(np.abs(np.abs(traj.u) / np.abs(traj.v) - 1)) < 1e-9


def test_overflow_safety():
    z = cmath.exp(1j * math.pi / 6)
    n = 10**4
    traj = szego.trajectory(coeffs.constant(-0.5), z, n)
    for arr in (traj.u, traj.v, traj.s, traj.log_kernel, traj.lognorm):
        assert np.all(np.isfinite(arr))
    lam1 = spectral.eigen_pair(spectral.limit_matrix(-0.5, z)).lambda1
    assert traj.log_abs_phi[n] == pytest.approx(n * math.log(abs(lam1)), rel=1e-3)


def test_against_big_float_recursion():
    rng = np.random.default_rng(11)
    table = _random_table(rng, 60)
    for z in (cmath.exp(1.1j), 0.5 + 0.2j, 1.3 - 0.4j):
        phi, star = mp_szego(table, z, 60)
        traj = szego.trajectory(table, z, 60)
        for k in (0, 7, 30, 60):
            st_ = traj.state(k)
            assert abs(st_.phi / complex(phi[k]) - 1) < 1e-12
            if abs(complex(star[k])) > 1e-200:
                assert abs(st_.phi_star / complex(star[k]) - 1) < 1e-12


def test_monic_consistency():
    rng = np.random.default_rng(5)
    table = _random_table(rng, 30)
    z = cmath.exp(2.0j)
    with mpmath.workprec(PREC):
        zz = mpmath.mpc(z.real, z.imag)
        P, S = mpmath.mpc(1), mpmath.mpc(1)
        for a in table:
            a = mpmath.mpc(a.real, a.imag)
            P, S = zz * P - mpmath.conj(a) * S, S - a * zz * P
        ref = complex(P)
    got = szego.evaluate(table, z, 30).monic
    assert abs(got / ref - 1) < 1e-10


def test_cd_kernel_free_geometric_sum():
    z, w = 0.4 + 0.3j, cmath.exp(0.9j)
    n = 12
    expect = sum((w.conjugate() * z) ** j for j in range(n + 1))
    assert szego.cd_kernel(coeffs.constant(0.0), z, w, n).value == pytest.approx(expect, abs=1e-13)


def test_cd_kernel_diagonal_real():
    z = cmath.exp(1j * math.pi / 6)
    k = szego.cd_kernel(coeffs.constant(-0.5), z, z, 80)
    st_ = szego.evaluate(coeffs.constant(-0.5), z, 80)
    assert abs(k.mantissa.imag) <= 1e-14 * abs(k.mantissa)
    assert k.log_abs == pytest.approx(math.log(st_.k_acc) + 2 * st_.s, rel=1e-13)


def test_cd_kernel_closed_form():
    rng = np.random.default_rng(8)
    table = _random_table(rng, 9)
    z, w = 0.3 - 0.5j, cmath.exp(2.2j)
    n = 8
    got = szego.cd_kernel(table, z, w, n).value
    phi_z, star_z = mp_szego(table, z, n + 1)
    phi_w, star_w = mp_szego(table, w, n + 1)
    with mpmath.workprec(PREC):
        zz, ww = mpmath.mpc(z.real, z.imag), mpmath.mpc(w.real, w.imag)
        cf = (mpmath.conj(star_w[n + 1]) * star_z[n + 1] - mpmath.conj(phi_w[n + 1]) * phi_z[n + 1]) / (
            1 - mpmath.conj(ww) * zz)
        direct = mp_kernel(table, z, w, n)
    assert abs(complex(cf) - complex(direct)) < 1e-40 * max(1.0, abs(complex(direct))) + 1e-45
    assert abs(got - complex(cf)) < 1e-12 * abs(complex(cf))


def test_running_cd_kernel_matches_single():
    rng = np.random.default_rng(4)
    table = _random_table(rng, 50)
    z, w = 0.2 + 0.1j, cmath.exp(0.3j)
    mant, scale = szego.running_cd_kernel(szego.trajectory(table, z, 50), szego.trajectory(table, w, 50))
    for k in (0, 10, 50):
        one = szego.cd_kernel(table, z, w, k).value
        assert mant[k] * math.exp(scale[k]) == pytest.approx(one, rel=1e-12)


def test_transfer_matrix_examples():
    m = szego.transfer_matrix(0.0, 1j)
    assert m.to_array().tolist() == [[1j, 0], [0, 1]]
    m = szego.transfer_matrix(-0.5, 1.0)
    k = 1 / math.sqrt(0.75)
    assert np.allclose(m.to_array(), k * np.array([[1, 0.5], [0.5, 1]]), atol=1e-15)
    assert m.trace.real == pytest.approx(2 / math.sqrt(0.75), rel=1e-15)
    assert abs(m.trace) > 2


@settings(max_examples=80, deadline=None)
@given(r=st.floats(0, 0.99), t=st.floats(-math.pi, math.pi), zr=st.floats(0.1, 1.5), zt=st.floats(-math.pi, math.pi),
       pr=st.floats(-2, 2), pi_=st.floats(-2, 2), qr=st.floats(-2, 2), qi=st.floats(-2, 2))
def test_transfer_matrix_reproduces_step(r, t, zr, zt, pr, pi_, qr, qi):
    a = r * cmath.exp(1j * t)
    z = zr * cmath.exp(1j * zt)
    m = szego.transfer_matrix(a, z)
    assert abs(m.det - z) <= 1e-12 * abs(z)
    u, v = complex(pr, pi_), complex(qr, qi)
    if max(abs(u), abs(v)) < 1e-3:
        return
    state = szego.ScaledPolyState(u, v, 0.0, 0, z, 0.0, 0.0)
    nxt = szego.szego_step(state, a)
    x, y = m @ (u, v)
    scale = max(abs(x), abs(y), 1.0)
    assert abs(nxt.phi - x) < 1e-12 * scale
    assert abs(nxt.phi_star - y) < 1e-12 * scale


def test_det_of_product():
    rng = np.random.default_rng(2)
    table = _random_table(rng, 100)
    for z in (cmath.exp(0.3j), cmath.exp(2.5j)):
        for n in (1, 10, 100):
            T = szego.transfer_product(table[:n], z)
            assert abs(T.det / z**n - 1) < 1e-8
    # off the circle the product entries outgrow z^n, so only short products are meaningful
    T = szego.transfer_product(table[:8], 0.8 + 0.1j)
    assert abs(T.det / (0.8 + 0.1j) ** 8 - 1) < 1e-8
    T = szego.transfer_product(table[:40], cmath.exp(1.0j))
    assert abs(abs(T.det) - 1) < 1e-10


def test_product_reproduces_phi():
    rng = np.random.default_rng(9)
    table = _random_table(rng, 25)
    z = cmath.exp(0.6j)
    T = szego.transfer_product(table, z)
    st_ = szego.evaluate(table, z, 25)
    x, y = T @ (1.0, 1.0)
    assert x == pytest.approx(st_.phi, rel=1e-12)
    assert y == pytest.approx(st_.phi_star, rel=1e-12)


def test_evaluate_deterministic():
    seq = coeffs.constant_plus_decay(-0.5, coeffs.DecaySpec.geometric(0.8, 0.1))
    a = szego.evaluate(seq, cmath.exp(0.2j), 500)
    b = szego.evaluate(seq, cmath.exp(0.2j), 500)
    assert a == b
