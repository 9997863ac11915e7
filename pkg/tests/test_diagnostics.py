import numpy as np
import pytest

from esrhd.diagnostics import (
    EntropyTrace,
    convergence_rates,
    error_norms,
    total_entropy,
    total_entropy_prim,
)
from esrhd.eos import make_eos
from esrhd.grid_solver import BoundarySpec, Field, Grid
from esrhd.state import Prim


def test_error_norms_exact_match():
    assert error_norms(np.ones(10), np.ones(10), 0.1) == (0.0, 0.0)


def test_error_norms_constant_error_unit_domain():
    n = 50
    vol = 1.0 / n
    l1, l2 = error_norms(np.full(n, 1.25), np.ones(n), vol)
    assert l1 == pytest.approx(0.25, rel=1e-14)
    assert l2 == pytest.approx(0.25, rel=1e-14)


def test_convergence_rates_examples():
    assert convergence_rates([1.0, 1.0 / 64.0]) == [pytest.approx(6.0)]
    rates = convergence_rates([1.0, 0.0])
    assert np.isnan(rates[0])


def test_total_entropy_uniform_gamma2_is_zero():
    eos = make_eos("id", 2.0)
    grid = Grid(nx=16, xlim=(0.0, 1.0), ng=3)
    V = Prim(rho=np.ones(16), v=(np.zeros(16),), p=np.ones(16))
    f = Field.from_primitives(grid, eos, BoundarySpec.periodic(1), V)
    assert total_entropy(f) == pytest.approx(0.0, abs=1e-13)


def test_total_entropy_scales_with_cell_volume():
    eos = make_eos("tm")
    V = Prim(rho=np.full(8, 1.5), v=(np.full(8, 0.1),), p=np.full(8, 2.0))
    one = total_entropy_prim(eos, V, 0.125)
    two = total_entropy_prim(eos, V, 0.25)
    assert two == pytest.approx(2.0 * one, rel=1e-14)


def test_total_entropy_second_route_agrees():
    eos = make_eos("rc")
    grid = Grid(nx=24, xlim=(0.0, 2.0), ng=3)
    x = grid.x_centers()
    V = Prim(rho=1 + 0.3 * np.sin(x), v=(0.2 * np.cos(x),), p=1 + 0.1 * np.sin(2 * x))
    f = Field.from_primitives(grid, eos, BoundarySpec.periodic(1), V)
    from esrhd.state import entropy_eta

    brute = sum(float(entropy_eta(eos, Prim(rho=np.float64(V.rho[i]), v=(np.float64(V.v[0][i]),), p=np.float64(V.p[i])))) for i in range(24)) * grid.dx
    assert total_entropy(f) == pytest.approx(brute, rel=1e-13)


def test_entropy_trace_monotone_in_time(tmp_path):
    tr = EntropyTrace(with_gamma=True)
    tr.append(0.0, -1.0)
    tr.append(0.1, -1.1, 1.0001)
    with pytest.raises(ValueError):
        tr.append(0.05, -1.2)
    path = tmp_path / "trace.csv"
    tr.write_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "t,total_entropy,gamma_n"
    assert len(lines) == 3

    tr2 = EntropyTrace()
    tr2.append(0.0, -1.0)
    p2 = tmp_path / "t2.csv"
    tr2.write_csv(p2)
    assert p2.read_text().splitlines()[0] == "t,total_entropy"
