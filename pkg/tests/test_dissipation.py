import numpy as np
import pytest

from conftest import fd_flux_jacobian, random_prim, single
from esrhd.dissipation import (
    FlowState,
    apply_dissipation,
    dissipation_matrix,
    eigenvalues,
    from_prim,
    interface_average,
    max_signal_speed,
    scaled_eigenvectors,
)
from esrhd.errors import DomainError, InvariantError
from esrhd.eos import make_eos
from esrhd.means import logmean
from esrhd.state import Prim, dU_dW, entropy_vars


def test_eigenvalues_at_rest(eos):
    V = Prim(rho=np.float64(1.0), v=(np.float64(0.0),), p=np.float64(0.7))
    fs = from_prim(eos, V)
    cs = float(np.sqrt(fs.cs2))
    lam = eigenvalues(fs, 0)
    assert np.allclose(lam, [-cs, 0.0, cs], rtol=1e-14)
    V2 = Prim(rho=np.float64(1.0), v=(np.float64(0.0), np.float64(0.0)), p=np.float64(0.7))
    fs2 = from_prim(eos, V2)
    for ax in (0, 1):
        assert np.allclose(eigenvalues(fs2, ax), [-cs, 0.0, 0.0, cs], rtol=1e-14)


def test_eigenvalues_subluminal(eos):
    rng = np.random.default_rng(40)
    for d in (1, 2):
        V = random_prim(rng, 3000, d=d)
        fs = from_prim(eos, V)
        for ax in range(d):
            assert np.all(np.abs(eigenvalues(fs, ax)) < 1.0)


def test_scaled_eigenvectors_factorize_dU_dW(eos):
    rng = np.random.default_rng(41)
    for d in (1, 2):
        V = random_prim(rng, 500, d=d)
        fs = from_prim(eos, V)
        A = dU_dW(eos, V)
        norm = np.linalg.norm(A, axis=(-2, -1))
        for ax in range(d):
            R, _ = scaled_eigenvectors(fs, ax)
            rrt = np.einsum("...ik,...jk->...ij", R, R)
            err = np.linalg.norm(rrt - A, axis=(-2, -1)) / norm
            assert err.max() < 1e-10


def test_eigen_decomposition_against_fd_jacobian(eos):
    rng = np.random.default_rng(42)
    for d in (1, 2):
        V = random_prim(rng, 12, d=d, theta_lo=1e-2, theta_hi=1e2, v_max=0.9)
        for i in range(12):
            Vi = single(V, i)
            fs = from_prim(eos, Vi)
            for ax in range(d):
                R, lam = scaled_eigenvectors(fs, ax)
                jac = fd_flux_jacobian(eos, Vi, ax)
                lhs = jac @ R
                rhs = R * np.asarray(lam)[None, :]
                assert np.max(np.abs(lhs - rhs)) <= 1e-6 * max(1.0, np.max(np.abs(rhs)))


def test_rest_state_scaling_coefficients(eos):
    V = Prim(rho=np.float64(1.7), v=(np.float64(0.0),), p=np.float64(0.9))
    fs = from_prim(eos, V)
    R, _ = scaled_eigenvectors(fs, 0)
    ep = float(fs.eprime)
    want = 1.7 * ep / (2.0 * (1.0 + ep))
    # first row of the unscaled eigenvector matrix is all ones, so the
    # squared first-row entries recover the scaling coefficients
    assert float(R[0, 0] ** 2) == pytest.approx(want, rel=1e-13)
    assert float(R[0, 2] ** 2) == pytest.approx(want, rel=1e-13)


def test_interface_average_collapses_at_equal_states(eos):
    V = Prim(rho=np.float64(1.3), v=(np.float64(0.4),), p=np.float64(2.0))
    avg = interface_average(eos, V, V)
    theta = 2.0 / 1.3
    assert float(avg.rho) == pytest.approx(1.3, rel=1e-14)
    assert float(avg.theta) == pytest.approx(theta, rel=1e-13)
    assert float(avg.v[0]) == pytest.approx(0.4, rel=1e-15)
    assert float(avg.h) == pytest.approx(float(eos.enthalpy(theta)), rel=1e-12)


def test_interface_enthalpy_ideal_closed_form():
    gamma = 5.0 / 3.0
    eos = make_eos("id", gamma)
    V_l = Prim(rho=np.float64(1.0), v=(np.float64(0.1),), p=np.float64(1.0))
    V_r = Prim(rho=np.float64(2.0), v=(np.float64(-0.2),), p=np.float64(0.5))
    avg = interface_average(eos, V_l, V_r)
    zln = float(logmean(1.0, 4.0))
    assert float(avg.h) == pytest.approx(1.0 + gamma / ((gamma - 1.0) * zln), rel=1e-13)


def test_stationary_contact_dissipation_vanishes(eos):
    V_l = Prim(rho=np.float64(1.0), v=(np.float64(0.0),), p=np.float64(0.7))
    V_r = Prim(rho=np.float64(3.7), v=(np.float64(0.0),), p=np.float64(0.7))
    avg = interface_average(eos, V_l, V_r)
    R, lam = scaled_eigenvectors(avg, 0)
    D = dissipation_matrix(R, lam, "roe")
    dW = np.asarray(entropy_vars(eos, V_r) - entropy_vars(eos, V_l), dtype=float)
    assert np.max(np.abs(D @ dW)) < 1e-13 * max(1.0, np.max(np.abs(D)))


def test_stationary_contact_full_flux(eos):
    from esrhd.flux_ec import ec_flux_1d

    p = 0.7
    V_l = Prim(rho=np.float64(1.0), v=(np.float64(0.0),), p=np.float64(p))
    V_r = Prim(rho=np.float64(3.7), v=(np.float64(0.0),), p=np.float64(p))
    avg = interface_average(eos, V_l, V_r)
    R, lam = scaled_eigenvectors(avg, 0)
    D = dissipation_matrix(R, lam, "roe")
    dW = np.asarray(entropy_vars(eos, V_r) - entropy_vars(eos, V_l), dtype=float)
    f = np.asarray(ec_flux_1d(eos, V_l, V_r), dtype=float) - 0.5 * (D @ dW)
    assert abs(f[0]) < 1e-13
    assert abs(f[2]) < 1e-13
    assert f[1] == pytest.approx(p, rel=1e-13)


def test_dissipation_matrix_modes(eos):
    rng = np.random.default_rng(43)
    V = random_prim(rng, 200, d=2)
    fs = from_prim(eos, V)
    for ax in (0, 1):
        R, lam = scaled_eigenvectors(fs, ax)
        D_rus = dissipation_matrix(R, lam, "rusanov")
        rrt = np.einsum("...ik,...jk->...ij", R, R)
        amax = np.max(np.abs(lam), axis=-1)[..., None, None]
        assert np.allclose(D_rus, amax * rrt, rtol=1e-12)
        for mode in ("roe", "rusanov"):
            D = dissipation_matrix(R, lam, mode)
            assert np.max(np.abs(D - np.swapaxes(D, -1, -2))) < 1e-14 * np.max(np.abs(D))
            w = np.linalg.eigvalsh(D)
            assert w.min() > -1e-12 * np.max(np.abs(D))
    with pytest.raises(DomainError):
        dissipation_matrix(R, lam, "hybrid")


def test_apply_dissipation_equals_matrix_product(eos):
    rng = np.random.default_rng(44)
    V_l = random_prim(rng, 50)
    V_r = random_prim(rng, 50)
    avg = interface_average(eos, V_l, V_r)
    R, lam = scaled_eigenvectors(avg, 0)
    dW = np.moveaxis(np.asarray(entropy_vars(eos, V_r) - entropy_vars(eos, V_l)), 0, -1)
    jump = np.einsum("...km,...k->...m", R, dW)
    for mode in ("roe", "rusanov"):
        direct = apply_dissipation(R, lam, mode, jump)
        D = dissipation_matrix(R, lam, mode)
        want = np.einsum("...ij,...j->...i", D, dW)
        assert np.allclose(direct, want, rtol=1e-11, atol=1e-13 * np.max(np.abs(want)))


def test_negative_scaling_coefficient_raises():
    # nonphysical hand-built state: enthalpy far below causal bound
    fs = FlowState(
        rho=np.float64(1.0), v=(np.float64(0.9),), theta=np.float64(3.0),
        h=np.float64(1.01), eprime=np.float64(1.0),
        cs2=np.float64(3.0 * 2.0 / 1.01), gamma=np.float64(1.0 / np.sqrt(1 - 0.81)),
    )
    with pytest.raises(InvariantError):
        scaled_eigenvectors(fs, 0)


def test_max_signal_speed_bounds(eos):
    rng = np.random.default_rng(45)
    V = random_prim(rng, 500, d=2)
    fs = from_prim(eos, V)
    for ax in (0, 1):
        s = max_signal_speed(fs, ax)
        assert np.all(s < 1.0)
        assert np.all(s >= np.abs(V.v[ax]) - 1e-14)
