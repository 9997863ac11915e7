"""Uniform grids with ghost layers, boundary conditions, and RHS assembly.

The semi-discrete update for interior cell i is
-(F_{i+1/2} - F_{i-1/2}) / dx, evaluated dimension by dimension in 2D.
Conserved fields are stored as (d+2, nx+2g[, ny+2g]) arrays; ghost layers are
refreshed before every RHS evaluation.  The RHS is a pure function of the
interior state; ghosts and the pressure warm-start cache are derived data.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import dissipation as dsp
from . import flux_ec, reconstruct
from .errors import DomainError
from .state import (
    Cons,
    Prim,
    cons_to_prim,
    entropy_eta,
    entropy_vars,
    flux,
    prim_to_cons,
)

#: ghost layers required by each scheme (max stencil half-width)
SCHEME_GHOSTS = {"ec2": 1, "ec4": 2, "ec6": 3, "es4": 4, "es5": 3, "llf": 1}
#: two-point combination level k of the EC part
SCHEME_K = {"ec2": 1, "ec4": 2, "ec6": 3, "es4": 2, "es5": 3}
#: reconstruction of the dissipation jump: (kind, order)
SCHEME_RECON = {"es4": ("eno", 4), "es5": ("weno", 5)}

VALID_SCHEMES = tuple(sorted(SCHEME_GHOSTS))
VALID_BC = ("periodic", "outflow", "reflective", "inflow")


@dataclass(frozen=True)
class Grid:
    """Uniform cell-centered grid; 1D when ny is None."""

    nx: int
    xlim: tuple
    ny: int = None
    ylim: tuple = None
    ng: int = 3

    @property
    def d(self):
        return 1 if self.ny is None else 2

    @property
    def dx(self):
        return (self.xlim[1] - self.xlim[0]) / self.nx

    @property
    def dy(self):
        return (self.ylim[1] - self.ylim[0]) / self.ny

    @property
    def cell_volume(self):
        return self.dx if self.d == 1 else self.dx * self.dy

    def x_centers(self):
        return self.xlim[0] + (np.arange(self.nx) + 0.5) * self.dx

    def y_centers(self):
        return self.ylim[0] + (np.arange(self.ny) + 0.5) * self.dy


class BoundarySpec:
    """Per-side boundary conditions.

    Sides are "left"/"right" (x) and, in 2D, "bottom"/"top" (y).  Values are
    one of VALID_BC; inflow sides also carry a frozen exterior primitive
    state (rho, (v1, ...), p).
    """

    def __init__(self, left, right, bottom=None, top=None, inflow_states=None):
        self.sides = {"left": left, "right": right, "bottom": bottom, "top": top}
        self.inflow_states = inflow_states or {}
        for name, kind in self.sides.items():
            if kind is None:
                continue
            if kind not in VALID_BC:
                raise DomainError(f"unknown boundary condition {kind!r}; valid: {VALID_BC}")
            if kind == "inflow" and name not in self.inflow_states:
                raise DomainError(f"inflow side {name!r} needs an exterior state")
        for a, b in (("left", "right"), ("bottom", "top")):
            if (self.sides[a] == "periodic") != (self.sides[b] == "periodic"):
                raise DomainError(f"periodic sides must be paired ({a}/{b})")

    @classmethod
    def periodic(cls, d=1):
        if d == 1:
            return cls("periodic", "periodic")
        return cls("periodic", "periodic", "periodic", "periodic")

    @classmethod
    def outflow(cls, d=1):
        if d == 1:
            return cls("outflow", "outflow")
        return cls("outflow", "outflow", "outflow", "outflow")


def _interior(grid):
    g = grid.ng
    if grid.d == 1:
        return (slice(g, g + grid.nx),)
    return (slice(g, g + grid.nx), slice(g, g + grid.ny))


class Field:
    """Conserved state on a grid, with its EOS, BCs and pressure cache."""

    def __init__(self, grid, eos, bc, U, p_cache=None):
        self.grid = grid
        self.eos = eos
        self.bc = bc
        self.U = U
        self.p_cache = p_cache

    @classmethod
    def from_primitives(cls, grid, eos, bc, V_interior):
        """Build a field from interior primitive arrays (sampler output)."""
        d = grid.d
        shape = (grid.nx + 2 * grid.ng,) if d == 1 else (grid.nx + 2 * grid.ng, grid.ny + 2 * grid.ng)
        U = np.zeros((d + 2,) + shape)
        p = np.zeros(shape)
        inner = _interior(grid)
        Vc = Prim(
            rho=np.broadcast_to(np.asarray(V_interior.rho, dtype=float), U[0][inner].shape),
            v=tuple(np.broadcast_to(np.asarray(c, dtype=float), U[0][inner].shape) for c in V_interior.v),
            p=np.broadcast_to(np.asarray(V_interior.p, dtype=float), U[0][inner].shape),
        ).validate()
        Uc = prim_to_cons(eos, Vc)
        U[(0,) + inner] = Uc.D
        for i in range(d):
            U[(1 + i,) + inner] = Uc.m[i]
        U[(1 + d,) + inner] = Uc.E
        p[inner] = Vc.p
        return cls(grid, eos, bc, U, p)

    def interior(self, arr=None):
        a = self.U if arr is None else arr
        return a[(slice(None),) + _interior(self.grid)]

    def interior_prim(self, V=None):
        if V is None:
            V = self.recover()
        inner = _interior(self.grid)
        return Prim(rho=V.rho[inner], v=tuple(c[inner] for c in V.v), p=V.p[inner])

    def cons_view(self):
        d = self.grid.d
        return Cons(D=self.U[0], m=tuple(self.U[1 + i] for i in range(d)), E=self.U[1 + d])

    def recover(self):
        """Primitive state on the full (ghost-padded) grid; updates the cache."""
        apply_bc(self)
        V = cons_to_prim(self.eos, self.cons_view(), p_guess=self.p_cache)
        self.p_cache = np.asarray(V.p, dtype=float)
        return V


def _axslice(ndim, sl, axis):
    idx = [slice(None)] * ndim
    idx[axis] = sl
    return tuple(idx)


def apply_bc(field):
    """Fill ghost layers of U (and the pressure cache) from the BC spec."""
    _apply_axis_bc(field, axis=0, lo_name="left", hi_name="right")
    if field.grid.d == 2:
        _apply_axis_bc(field, axis=1, lo_name="bottom", hi_name="top")


def _apply_axis_bc(field, axis, lo_name, hi_name):
    grid = field.grid
    g = grid.ng
    n = grid.nx if axis == 0 else grid.ny
    U, p = field.U, field.p_cache
    nd = U.ndim - 1  # spatial dims
    sides = (
        (lo_name, slice(0, g), slice(n, n + g), slice(g, g + 1), slice(2 * g - 1, g - 1, -1)),
        (hi_name, slice(n + g, n + 2 * g), slice(g, 2 * g), slice(n + g - 1, n + g),
         slice(n + g - 1, n - 1, -1) if n > 1 else slice(n + g - 1, None, -1)),
    )
    for name, ghost, src_per, src_out, src_ref in sides:
        kind = field.bc.sides[name]
        gh = _axslice(nd, ghost, axis)
        if kind == "periodic":
            src = _axslice(nd, src_per, axis)
        elif kind == "outflow":
            src = _axslice(nd, src_out, axis)
        elif kind == "reflective":
            src = _axslice(nd, src_ref, axis)
        elif kind == "inflow":
            rho_e, v_e, p_e = field.bc.inflow_states[name]
            Ve = Prim(rho=np.float64(rho_e), v=tuple(np.float64(c) for c in v_e), p=np.float64(p_e))
            Ue = prim_to_cons(field.eos, Ve)
            col = np.array([float(Ue.D), *(float(c) for c in Ue.m), float(Ue.E)])
            U[(slice(None),) + gh] = col.reshape((-1,) + (1,) * nd)
            if p is not None:
                p[gh] = float(p_e)
            continue
        U[(slice(None),) + gh] = U[(slice(None),) + src]
        if kind == "reflective":
            U[(1 + axis,) + gh] *= -1.0
        if p is not None:
            p[gh] = p[src]


def _prim_slice(V, sl, axis):
    idx = _axslice(V.rho.ndim, sl, axis)
    return Prim(rho=V.rho[idx], v=tuple(c[idx] for c in V.v), p=V.p[idx])


def rhs(field, scheme, diss="rusanov", t=0.0, non_es=None, V=None):
    """Semi-discrete tendency dU/dt; ghost entries of the result are zero.

    ``non_es`` optionally replaces the entropy-dissipation term by a
    time-periodic multiple of D [[W]] (the non-entropy-stable comparison
    flux): a tuple (amplitude, frequency, phase).  ``V`` may pass in the
    already-recovered primitive state of the current U.
    """
    if scheme not in SCHEME_GHOSTS:
        raise DomainError(f"unknown scheme {scheme!r}; valid: {list(VALID_SCHEMES)}")
    grid = field.grid
    if grid.ng < SCHEME_GHOSTS[scheme]:
        raise DomainError(f"scheme {scheme} needs {SCHEME_GHOSTS[scheme]} ghost layers, grid has {grid.ng}")
    if V is None:
        V = field.recover()
    dU = np.zeros_like(field.U)
    for axis in range(grid.d):
        _accumulate_axis(dU, field, V, axis, scheme, diss, t, non_es)
    return dU


def _accumulate_axis(dU, field, V, axis, scheme, diss, t, non_es):
    grid, eos = field.grid, field.eos
    g = grid.ng
    n = grid.nx if axis == 0 else grid.ny
    h = grid.dx if axis == 0 else grid.dy
    lo = g - 1
    n_ifc = n + 1
    nd = V.rho.ndim

    if scheme == "llf":
        f_hat = _llf_interface_flux(eos, field.U, V, axis, lo, n_ifc)
    else:
        z = flux_ec.z_variables(V)
        f_hat = flux_ec.highorder_flux(eos, z, SCHEME_K[scheme], axis, lo, n_ifc)
        recon = SCHEME_RECON.get(scheme)
        if recon is not None or non_es is not None:
            V_l = _prim_slice(V, slice(lo, lo + n_ifc), axis)
            V_r = _prim_slice(V, slice(lo + 1, lo + 1 + n_ifc), axis)
            avg = dsp.interface_average(eos, V_l, V_r)
            R, lam = dsp.scaled_eigenvectors(avg, axis)
            W = entropy_vars(eos, V)
            if non_es is not None:
                amp, freq, phase = non_es
                w_l = np.moveaxis(W[(slice(None),) + _axslice(nd, slice(lo, lo + n_ifc), axis)], 0, -1)
                w_r = np.moveaxis(W[(slice(None),) + _axslice(nd, slice(lo + 1, lo + 1 + n_ifc), axis)], 0, -1)
                w_jump = reconstruct.first_order_jump(R, w_l, w_r)
                term = dsp.apply_dissipation(R, lam, diss, w_jump)
                f_hat = f_hat - (amp * math.sin(freq * t + phase)) * np.moveaxis(term, -1, 0)
            else:
                kind, order = recon
                width = 2 * order if kind == "eno" else 6
                first = lo - (width // 2 - 1)
                w_sten = np.stack(
                    [W[(slice(None),) + _axslice(nd, slice(first + o, first + o + n_ifc), axis)] for o in range(width)],
                    axis=-1,
                )
                omega = reconstruct.scale_entropy_vars(R, np.moveaxis(w_sten, 0, -2))
                c_idx = width // 2 - 1
                cell_jump = omega[..., c_idx + 1] - omega[..., c_idx]
                if kind == "weno":
                    w_m, w_p = reconstruct.weno_reconstruct(omega)
                    limited = reconstruct.sign_switch(w_m, w_p, cell_jump)
                else:
                    w_m, w_p = reconstruct.eno_reconstruct(omega, order)
                    limited = w_p - w_m
                term = dsp.apply_dissipation(R, lam, diss, limited)
                f_hat = f_hat - 0.5 * np.moveaxis(term, -1, 0)

    dflux = np.diff(f_hat, axis=1 + axis) / h
    target = dU[(slice(None),) + _interior(grid)]
    if grid.d == 1:
        target -= dflux
    elif axis == 0:
        target -= dflux[:, :, g : g + grid.ny]
    else:
        target -= dflux[:, g : g + grid.nx, :]


def _llf_interface_flux(eos, U, V, axis, lo, n_ifc):
    nd = V.rho.ndim
    V_l = _prim_slice(V, slice(lo, lo + n_ifc), axis)
    V_r = _prim_slice(V, slice(lo + 1, lo + 1 + n_ifc), axis)
    f_l = flux(eos, V_l, axis)
    f_r = flux(eos, V_r, axis)
    a_l = dsp.max_signal_speed(dsp.from_prim(eos, V_l), axis)
    a_r = dsp.max_signal_speed(dsp.from_prim(eos, V_r), axis)
    alpha = np.maximum(a_l, a_r)
    u_l = U[(slice(None),) + _axslice(nd, slice(lo, lo + n_ifc), axis)]
    u_r = U[(slice(None),) + _axslice(nd, slice(lo + 1, lo + 1 + n_ifc), axis)]
    return 0.5 * (f_l + f_r) - 0.5 * alpha * (u_r - u_l)


def cfl_dt(field, cfl, V=None):
    """CFL time step from the fastest interior signal speed per axis."""
    Vi = field.interior_prim(V)
    fs = dsp.from_prim(field.eos, Vi)
    if field.grid.d == 1:
        return cfl * field.grid.dx / float(np.max(dsp.max_signal_speed(fs, 0)))
    sx = float(np.max(dsp.max_signal_speed(fs, 0)))
    sy = float(np.max(dsp.max_signal_speed(fs, 1)))
    return cfl / (sx / field.grid.dx + sy / field.grid.dy)


def total_interior_entropy(field):
    """Discrete total entropy sum_i eta(U_i) * cell volume over the interior."""
    Vi = field.interior_prim()
    return float(np.sum(entropy_eta(field.eos, Vi))) * field.grid.cell_volume


def entropy_inner_product(field, dU):
    """sum_i W(U_i)^T dU_i * cell volume over interior cells."""
    Vi = field.interior_prim()
    W = entropy_vars(field.eos, Vi)
    return float(np.sum(W * dU[(slice(None),) + _interior(field.grid)])) * field.grid.cell_volume
