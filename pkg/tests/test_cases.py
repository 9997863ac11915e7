import numpy as np
import pytest

from esrhd import cases as cm
from esrhd.errors import DomainError
from esrhd.eos import IdealEos
from esrhd.state import cons_to_array, prim_to_cons

ALL_IDS = [
    "smooth1d", "isentropic", "density_pert", "blast",
    "rp1", "rp2", "rp3", "rp4",
    "smooth2d", "rp2d_1", "rp2d_2", "rp2d_3",
    "shock_bubble_light", "shock_bubble_heavy",
]


def test_catalog_complete():
    cat = cm.catalog()
    assert sorted(cat) == sorted(ALL_IDS)
    with pytest.raises(DomainError):
        cm.get_case("rp9")


def test_printed_case_parameters():
    cat = cm.catalog()
    rp1 = cat["rp1"]
    v = rp1.sampler(np.array([0.1, 0.9]))
    assert v.rho[0] == 10.0 and v.p[0] == pytest.approx(40.0 / 3.0)
    assert v.rho[1] == 1.0 and v.p[1] == 1e-6
    assert rp1.cfl == 0.1 and rp1.eos_name == "rc"

    rp2 = cat["rp2"]
    v = rp2.sampler(np.array([0.1]))
    assert v.p[0] == 1e3 and rp2.eos_name == "tm"

    rp3 = cat["rp3"]
    v = rp3.sampler(np.array([0.1]))
    assert v.v[0][0] == 0.9 and rp3.eos_name == "rc"

    rp4 = cat["rp4"]
    v = rp4.sampler(np.array([0.1, 0.9]))
    assert v.v[0][0] == -0.7 and v.v[0][1] == 0.7 and np.all(v.p == 20.0)
    assert rp4.eos_name == "ip"

    pert = cat["density_pert"]
    assert pert.t_final == 0.376 and pert.nx == 400
    blast = cat["blast"]
    assert blast.t_final == 0.43 and blast.nx == 4000 and blast.eos_name == "tm"


def test_rp2d_3_corner_values():
    case = cm.get_case("rp2d_3")
    v = case.sampler(np.array([0.75]), np.array([0.75]))
    assert float(v.rho[0]) == 0.035145216124503
    assert float(v.p[0]) == 0.162931056509027
    v2 = case.sampler(np.array([0.25]), np.array([0.25]))
    assert float(v2.rho[0]) == 0.5


def test_shock_bubble_setup():
    case = cm.get_case("shock_bubble_light")
    assert case.xlim == (0.0, 325.0) and case.ylim == (0.0, 90.0)
    x = np.array([264.0, 266.0, 215.0, 240.0])
    y = np.array([45.0, 45.0, 45.0, 45.0])
    v = case.sampler(x, y)
    assert v.p[1] == 0.15
    assert v.rho[1] == 1.941272902134272
    assert v.v[0][1] == -0.200661045980881
    assert v.rho[2] == 0.1358  # bubble interior
    assert v.rho[3] == 0.1358  # radius-25 boundary is inclusive
    heavy = cm.get_case("shock_bubble_heavy").sampler(np.array([215.0]), np.array([45.0]))
    assert heavy.rho[0] == 3.1538
    bc = case.make_bc(case.make_eos())
    assert bc.sides == {"left": "outflow", "right": "inflow", "bottom": "reflective", "top": "reflective"}


def test_two_state_tie_break_uses_right_state():
    case = cm.get_case("rp1")
    v = case.sampler(np.array([0.5]))
    assert v.rho[0] == 1.0  # x >= x_c takes the right state


def test_all_samplers_admissible():
    rng = np.random.default_rng(70)
    for cid, case in cm.catalog().items():
        if case.d == 1:
            x = np.linspace(case.xlim[0], case.xlim[1], 2001)
            V = case.sampler(x)
        else:
            x = np.linspace(case.xlim[0], case.xlim[1], 101)
            y = np.linspace(case.ylim[0], case.ylim[1], 97)
            X, Y = np.meshgrid(x, y, indexing="ij")
            V = case.sampler(X, Y)
        V.validate()
        prim_to_cons(case.make_eos(), V)  # also exercises the EOS at the sampled states


def test_isentropic_velocity_properties():
    case = cm.get_case("isentropic")
    x = np.linspace(-0.4, 2.0, 1201)
    V = case.sampler(x)
    outside = np.abs(x) >= cm.ISENTROPIC_L
    assert np.all(V.v[0][outside] == 0.0)
    center = case.sampler(np.array([0.0]))
    assert 0.0 < float(center.v[0][0]) < 1.0


def test_isentropic_riemann_invariant_constant():
    gamma, K = cm.ISENTROPIC_GAMMA, cm.ISENTROPIC_K
    eos = IdealEos(gamma)
    x = np.linspace(-0.29, 0.29, 301)
    V = cm.get_case("isentropic").sampler(x)
    cs = np.sqrt(eos.sound_speed_sq(V.p / V.rho))
    sq = np.sqrt(gamma - 1.0)
    j_minus = np.arctanh(V.v[0]) - np.log((sq + cs) / (sq - cs)) / sq
    cs0 = np.sqrt(float(eos.sound_speed_sq(K)))
    j0 = -np.log((sq + cs0) / (sq - cs0)) / sq
    assert np.max(np.abs(j_minus - j0)) < 1e-10


def test_isentropic_velocity_validation():
    with pytest.raises(DomainError):
        cm.isentropic_velocity(2.5, np.array([1.0]), 100.0)
    with pytest.raises(DomainError):
        cm.isentropic_velocity(5.0 / 3.0, np.array([1.0]), -1.0)


@pytest.mark.parametrize("cid", ["smooth1d", "smooth2d"])
def test_smooth_cases_translate_exactly(cid):
    case = cm.get_case(cid)
    t = 0.37
    if case.d == 1:
        x = np.linspace(*case.xlim, 97)
        now = case.exact(x, t)
        shifted = case.sampler(x - 0.2 * t)
        assert np.allclose(now.rho, shifted.rho, rtol=1e-14)
    else:
        x = np.linspace(*case.xlim, 33)
        X, Y = np.meshgrid(x, x, indexing="ij")
        now = case.exact(X, Y, t)
        assert np.allclose(now.rho, 1 + 0.2 * np.sin(X + Y - 0.4 * t), rtol=1e-14)


def test_smooth1d_satisfies_the_equations():
    # direct substitution: the semi-discrete residual of the exact solution
    # must shrink at the scheme's order, so the sampler solves the PDE
    from esrhd.grid_solver import BoundarySpec, Field, Grid, rhs

    case = cm.get_case("smooth1d")
    eos = case.make_eos()
    resids = []
    for n in (32, 64):
        grid = Grid(nx=n, xlim=case.xlim, ng=3)
        x = grid.x_centers()
        f = Field.from_primitives(grid, eos, BoundarySpec.periodic(1), case.sampler(x))
        dU = f.interior(rhs(f, "ec6"))
        dt = 1e-5
        u_p = cons_to_array(prim_to_cons(eos, case.exact(x, dt)))
        u_m = cons_to_array(prim_to_cons(eos, case.exact(x, -dt)))
        dU_exact = (u_p - u_m) / (2 * dt)
        resids.append(np.max(np.abs(dU - dU_exact)))
    assert resids[1] < resids[0] / 30.0  # ~6th order decay


def test_non_es_flux_coefficients_and_reduction():
    assert cm.NON_ES_VARIANTS["rf"] == (0.6, 50.0, 0.0)
    assert cm.NON_ES_VARIANTS["rp3"] == (1.2, 7.6, 0.1)
    rng = np.random.default_rng(71)
    f_ec = rng.standard_normal(3)
    D = rng.standard_normal((3, 3))
    w = rng.standard_normal(3)
    # sin vanishes at t = 0 for the rf variant: pure EC flux
    out = cm.non_es_flux("rf", 0.0, f_ec, D, w)
    assert np.array_equal(out, f_ec)
    t = 0.3
    want = f_ec - 1.2 * np.sin(7.6 * t + 0.1) * (D @ w)
    assert np.allclose(cm.non_es_flux("rp3", t, f_ec, D, w), want, rtol=1e-14)
    with pytest.raises(DomainError):
        cm.non_es_flux("xx", 0.0, f_ec, D, w)
