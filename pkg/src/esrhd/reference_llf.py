"""First-order local Lax-Friedrichs reference solver.

Used to manufacture reference profiles for the discontinuous benchmarks;
monotone, very dissipative, and cheap enough to run at resolutions an order
of magnitude above the schemes under test.  Forward Euler in time suffices
for a first-order scheme.

The 1D driver has a fused numba kernel (recovery, fluxes and update in one
pass over the grid) because reference runs use 10-100x the cells of the
production schemes; the pure-numpy path remains as a fallback and oracle.
"""

from dataclasses import dataclass

import numpy as np

from . import dissipation as dsp
from .errors import DomainError, RecoveryError
from .grid_solver import Field, Grid, apply_bc, cfl_dt, rhs
from .outputs import write_solution_1d
from .state import Prim, cons_to_array, flux, prim_to_cons

try:
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

_EOS_CODES = {"id": 0, "rc": 1, "ip": 2, "tm": 3}


@dataclass(frozen=True)
class LlfConfig:
    """Reference-run parameters; resolution must be >= 10x the case's."""

    resolution: int
    cfl: float = 0.4


def llf_flux(eos, V_l, V_r, axis=0):
    """Local Lax-Friedrichs two-point flux."""
    f_l = flux(eos, V_l, axis)
    f_r = flux(eos, V_r, axis)
    alpha = np.maximum(
        dsp.max_signal_speed(dsp.from_prim(eos, V_l), axis),
        dsp.max_signal_speed(dsp.from_prim(eos, V_r), axis),
    )
    u_l = cons_to_array(prim_to_cons(eos, V_l))
    u_r = cons_to_array(prim_to_cons(eos, V_r))
    return 0.5 * (f_l + f_r) - 0.5 * alpha * (u_r - u_l)


if _HAVE_NUMBA:

    @numba.njit(cache=True, inline="always")
    def _e_of(code, gamma, t):
        if code == 0:
            return t / (gamma - 1.0)
        if code == 1:
            return 3.0 * t * (3.0 * t + 1.0) / (3.0 * t + 2.0)
        if code == 2:
            return t - 1.0 + np.sqrt(1.0 + 4.0 * t * t)
        return 1.5 * t - 1.0 + np.sqrt(1.0 + 2.25 * t * t)

    @numba.njit(cache=True, inline="always")
    def _ep_of(code, gamma, t):
        if code == 0:
            return 1.0 / (gamma - 1.0)
        if code == 1:
            return 3.0 * (9.0 * t * t + 12.0 * t + 2.0) / (3.0 * t + 2.0) ** 2
        if code == 2:
            return 1.0 + 4.0 * t / np.sqrt(1.0 + 4.0 * t * t)
        return 1.5 + 2.25 * t / np.sqrt(1.0 + 2.25 * t * t)

    @numba.njit(cache=True, inline="always")
    def _residual_of(code, gamma, dd, ee, mn, pp):
        ept = ee + pp
        g = ept / np.sqrt((ept - mn) * (ept + mn))
        th = pp * g / dd
        return 1.0 + _e_of(code, gamma, th) + th - ept / (dd * g)

    @numba.njit(cache=True)
    def _prep_cells(code, gamma, D, m1, E, p, rho, v1, f0, f1, f2, speed):
        """Per-cell recovery, flux and signal speed; returns #failed cells."""
        n = D.shape[0]
        failed = 0
        for i in numba.prange(n):
            dd = D[i]
            ee = E[i]
            mn = abs(m1[i])
            if not (dd > 0.0) or not (ee > mn):
                failed += 1
                continue
            pp = p[i]
            if not (pp > 0.0) or not np.isfinite(pp):
                pp = 0.25 * (ee - mn)
            ok = False
            for _ in range(60):
                ept = ee + pp
                vv = mn / ept
                g = ept / np.sqrt((ept - mn) * (ept + mn))
                th = pp * g / dd
                res = 1.0 + _e_of(code, gamma, th) + th - ept / (dd * g)
                dth = g / dd - pp * g * g * g * vv * vv / (dd * ept)
                dres = (1.0 + _ep_of(code, gamma, th)) * dth - g / dd
                pn = pp - res / dres
                if pn <= 0.0 or not np.isfinite(pn):
                    pn = 0.5 * pp
                if abs(pn - pp) <= 1.0e-13 * pn:
                    pp = pn
                    ok = True
                    break
                pp = pn
            if not ok:
                # bracketed bisection rescue, as in the vectorized solver
                lo = 1.0e-300
                hi = max(4.0 * pp, 1.0e-12 * (ee + mn))
                for _ in range(200):
                    if _residual_of(code, gamma, dd, ee, mn, hi) >= 0.0:
                        break
                    hi *= 4.0
                else:
                    failed += 1
                    continue
                for _ in range(300):
                    mid = np.sqrt(lo * hi)
                    if _residual_of(code, gamma, dd, ee, mn, mid) < 0.0:
                        lo = mid
                    else:
                        hi = mid
                    if hi - lo <= 1.0e-14 * hi:
                        ok = True
                        pp = 0.5 * (lo + hi)
                        break
                if not ok:
                    failed += 1
                    continue
                # polish with two Newton steps
                for _ in range(2):
                    ept = ee + pp
                    vv = mn / ept
                    g = ept / np.sqrt((ept - mn) * (ept + mn))
                    th = pp * g / dd
                    res = 1.0 + _e_of(code, gamma, th) + th - ept / (dd * g)
                    dth = g / dd - pp * g * g * g * vv * vv / (dd * ept)
                    dres = (1.0 + _ep_of(code, gamma, th)) * dth - g / dd
                    pn = pp - res / dres
                    if pn > 0.0 and np.isfinite(pn):
                        pp = pn
            ept = ee + pp
            g = ept / np.sqrt((ept - mn) * (ept + mn))
            vv = m1[i] / ept
            rr = dd / g
            th = pp * g / dd
            ep_v = _ep_of(code, gamma, th)
            h = 1.0 + _e_of(code, gamma, th) + th
            cs = np.sqrt(th * (1.0 + ep_v) / (h * ep_v))
            lm = abs((vv - cs) / (1.0 - vv * cs))
            lp = abs((vv + cs) / (1.0 + vv * cs))
            sp = lm if lm > lp else lp
            av = abs(vv)
            if av > sp:
                sp = av
            p[i] = pp
            rho[i] = rr
            v1[i] = vv
            speed[i] = sp
            f0[i] = dd * vv
            f1[i] = m1[i] * vv + pp
            f2[i] = m1[i]
        return failed

    @numba.njit(cache=True)
    def _llf_update(D, m1, E, f0, f1, f2, speed, dtdx):
        n = D.shape[0]
        out_D = np.empty(n - 2)
        out_m = np.empty(n - 2)
        out_E = np.empty(n - 2)
        for i in numba.prange(1, n - 1):
            a_l = max(speed[i - 1], speed[i])
            a_r = max(speed[i], speed[i + 1])
            fl0 = 0.5 * (f0[i - 1] + f0[i]) - 0.5 * a_l * (D[i] - D[i - 1])
            fr0 = 0.5 * (f0[i] + f0[i + 1]) - 0.5 * a_r * (D[i + 1] - D[i])
            fl1 = 0.5 * (f1[i - 1] + f1[i]) - 0.5 * a_l * (m1[i] - m1[i - 1])
            fr1 = 0.5 * (f1[i] + f1[i + 1]) - 0.5 * a_r * (m1[i + 1] - m1[i])
            fl2 = 0.5 * (f2[i - 1] + f2[i]) - 0.5 * a_l * (E[i] - E[i - 1])
            fr2 = 0.5 * (f2[i] + f2[i + 1]) - 0.5 * a_r * (E[i + 1] - E[i])
            out_D[i - 1] = D[i] - dtdx * (fr0 - fl0)
            out_m[i - 1] = m1[i] - dtdx * (fr1 - fl1)
            out_E[i - 1] = E[i] - dtdx * (fr2 - fl2)
        return out_D, out_m, out_E


def _llf_solve_fast(case, config, t_end):
    grid = Grid(nx=config.resolution, xlim=case.xlim, ng=1)
    eos = case.make_eos()
    field = Field.from_primitives(grid, eos, case.make_bc(eos), case.sampler(grid.x_centers()))
    code = _EOS_CODES[eos.kind]
    gamma = getattr(eos, "gamma", 0.0)
    n_t = grid.nx + 2
    rho = np.empty(n_t)
    v1 = np.empty(n_t)
    f0 = np.empty(n_t)
    f1 = np.empty(n_t)
    f2 = np.empty(n_t)
    speed = np.empty(n_t)
    t = 0.0
    while t < t_end * (1.0 - 1.0e-12):
        apply_bc(field)
        D, m1, E = field.U[0], field.U[1], field.U[2]
        failed = _prep_cells(code, gamma, D, m1, E, field.p_cache, rho, v1, f0, f1, f2, speed)
        if failed:
            raise RecoveryError(f"reference recovery failed in {failed} cell(s) at t={t}")
        dt = min(config.cfl * grid.dx / float(speed[1:-1].max()), t_end - t)
        new_D, new_m, new_E = _llf_update(D, m1, E, f0, f1, f2, speed, dt / grid.dx)
        field.U[0, 1:-1] = new_D
        field.U[1, 1:-1] = new_m
        field.U[2, 1:-1] = new_E
        t += dt
    V = field.interior_prim()
    return grid, V


def _llf_solve_numpy(case, config, t_end):
    grid = Grid(nx=config.resolution, xlim=case.xlim, ng=1)
    eos = case.make_eos()
    field = Field.from_primitives(grid, eos, case.make_bc(eos), case.sampler(grid.x_centers()))
    t = 0.0
    while t < t_end * (1.0 - 1.0e-12):
        V = field.recover()
        dt = min(cfl_dt(field, config.cfl, V=V), t_end - t)
        field.U = field.U + dt * rhs(field, "llf", V=V)
        t += dt
    return grid, field.interior_prim()


def llf_solve(case, config, output_path=None, t_final=None, backend="auto"):
    """March the case with first-order LLF + forward Euler to its final time.

    Returns (grid, Prim interior state); optionally writes the reference CSV
    in the standard 1D solution schema.
    """
    if case.d != 1:
        raise DomainError("the LLF reference driver covers 1D cases")
    if config.resolution < 10 * case.nx:
        raise DomainError("reference resolution must be at least 10x the case resolution")
    t_end = case.t_final if t_final is None else t_final
    if backend == "auto":
        backend = "numba" if _HAVE_NUMBA else "numpy"
    if backend == "numba":
        grid, V = _llf_solve_fast(case, config, t_end)
    elif backend == "numpy":
        grid, V = _llf_solve_numpy(case, config, t_end)
    else:
        raise DomainError(f"unknown backend {backend!r}; valid: ['auto', 'numba', 'numpy']")
    if output_path is not None:
        write_solution_1d(output_path, grid, case.make_eos(), V)
    return grid, V


def sample_reference(ref_grid, ref_V, x):
    """Nearest-cell sampling of a reference profile at coarse centers x."""
    idx = np.clip(
        np.floor((np.asarray(x) - ref_grid.xlim[0]) / ref_grid.dx).astype(int),
        0,
        ref_grid.nx - 1,
    )
    return Prim(rho=ref_V.rho[idx], v=tuple(c[idx] for c in ref_V.v), p=ref_V.p[idx])
