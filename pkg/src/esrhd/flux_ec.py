"""Entropy-conservative two-point fluxes and their high-order combinations.

The two-point flux is built from interface means of the parameter variables

    z1 = rho,  z2 = rho / p,  z3 = gamma v1,  (z4 = gamma v2 in 2D),

never from averaged primitives: the algebraic cancellations that make the
flux entropy conservative live in exactly these variables.  The flux
satisfies  [[W]]^T F = [[psi]]  for the entropy variables and potential of
the flow system, and is consistent with the analytic flux at coincident
states.

High-order fluxes are telescoping linear combinations of two-point fluxes
with rational coefficients alpha_{k,r}; k = 1, 2, 3 gives orders 2, 4, 6.
"""

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .means import amean, logmean
from .state import entropy_vars, lorentz, potential_psi

__all__ = [
    "z_variables",
    "pair_flux",
    "ec_flux_1d",
    "ec_flux_2d",
    "combo_coeffs",
    "highorder_flux",
    "highorder_ec_flux",
    "pair_entropy_flux",
    "ec_entropy_flux",
    "highorder_entropy_flux",
]


def z_variables(V):
    """Parameter variables (z1, z2, z3[, z4], gamma) of a primitive state."""
    g = lorentz(V.v)
    zs = [np.asarray(V.rho, dtype=float), np.asarray(V.rho / V.p, dtype=float)]
    zs += [g * np.asarray(c, dtype=float) for c in V.v]
    zs.append(np.asarray(g, dtype=float) if np.ndim(g) else np.asarray(g, dtype=float))
    return tuple(np.broadcast_arrays(*zs))


def pair_flux(eos, z_l, z_r, axis):
    """Two-point entropy-conservative flux between two z-variable tuples."""
    d = len(z_l) - 3
    z1m = amean(z_l[0], z_r[0])
    z1ln = logmean(z_l[0], z_r[0])
    z2m = amean(z_l[1], z_r[1])
    gm = amean(z_l[-1], z_r[-1])
    zvm = [amean(z_l[2 + i], z_r[2 + i]) for i in range(d)]
    coeff = eos.ec_coefficient(z_l[1], z_r[1])
    pressure_term = z1m / z2m
    denom = gm * gm - sum(c * c for c in zvm)
    if np.any(denom <= 0.0):
        raise DomainError("degenerate interface: {{gamma}}^2 - sum {{gamma v}}^2 <= 0")
    rho_h = (pressure_term + z1ln * coeff) / denom
    za = zvm[axis]
    rows = [z1ln * za]
    for i in range(d):
        rows.append(rho_h * za * zvm[i] + (pressure_term if i == axis else 0.0))
    rows.append(rho_h * gm * za)
    return np.stack(np.broadcast_arrays(*rows))


def ec_flux_1d(eos, V_l, V_r):
    """Two-point EC flux for a pair of 1D primitive states."""
    return pair_flux(eos, z_variables(V_l), z_variables(V_r), axis=0)


def ec_flux_2d(eos, V_l, V_r, axis):
    """Two-point EC flux for a pair of 2D primitive states, axis in {0, 1}."""
    if axis not in (0, 1):
        raise DomainError("axis must be 0 or 1")
    return pair_flux(eos, z_variables(V_l), z_variables(V_r), axis=axis)


def _solve_fraction_system(a, b):
    n = len(b)
    m = [row[:] + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = Fraction(1) / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


@lru_cache(maxsize=None)
def combo_coeffs(k):
    """Exact rational coefficients alpha_{k,r} of the 2k-th order combination.

    They satisfy sum_r r alpha_{k,r} = 1 and sum_r r^(2s-1) alpha_{k,r} = 0
    for s = 2..k.  k=2 gives (4/3, -1/6); k=3 gives (3/2, -3/10, 1/30).
    """
    if k < 1:
        raise DomainError("combination order k must be >= 1")
    rows = [[Fraction(r) for r in range(1, k + 1)]]
    rhs = [Fraction(1)]
    for s in range(2, k + 1):
        rows.append([Fraction(r) ** (2 * s - 1) for r in range(1, k + 1)])
        rhs.append(Fraction(0))
    return tuple(_solve_fraction_system(rows, rhs))


def _take(arr, lo, n, axis):
    sl = [slice(None)] * arr.ndim
    sl[axis] = slice(lo, lo + n)
    return arr[tuple(sl)]


def highorder_flux(eos, z, k, axis, lo, n_ifc):
    """2k-th order EC flux at n_ifc consecutive interfaces.

    ``z`` holds per-cell parameter-variable arrays; the first interface sits
    between cells lo and lo+1 along ``axis``.  Cells lo-k+1 .. lo+n_ifc-1+k
    must exist.
    """
    shape_ok = z[0].shape[axis] >= lo + n_ifc + k and lo - (k - 1) >= 0
    if not shape_ok:
        raise DomainError("insufficient stencil for the requested flux order")
    total = None
    for r, alpha in enumerate(combo_coeffs(k), start=1):
        a = float(alpha)
        for s in range(r):
            zl = tuple(_take(c, lo - s, n_ifc, axis) for c in z)
            zr = tuple(_take(c, lo - s + r, n_ifc, axis) for c in z)
            f = pair_flux(eos, zl, zr, axis)
            total = a * f if total is None else total + a * f
    return total


def highorder_ec_flux(eos, stencil, k):
    """2k-th order EC flux at the center of a 2k-cell stencil of states."""
    if len(stencil) < 2 * k:
        raise DomainError(f"need at least {2 * k} states for order 2k={2 * k}")
    z_cells = [z_variables(V) for V in stencil]
    z = tuple(np.stack([zc[i] for zc in z_cells]) for i in range(len(z_cells[0])))
    center = len(stencil) // 2 - 1
    f = highorder_flux(eos, z, k, axis=0, lo=center, n_ifc=1)
    return f[:, 0] if f.ndim > 1 else f


def pair_entropy_flux(eos, V_l, V_r, axis, f=None):
    """Numerical entropy flux q = {{W}}^T F - {{psi}} of a two-point EC flux."""
    if f is None:
        f = pair_flux(eos, z_variables(V_l), z_variables(V_r), axis)
    wl, wr = entropy_vars(eos, V_l), entropy_vars(eos, V_r)
    wm = amean(wl, wr)
    psim = amean(potential_psi(V_l, axis), potential_psi(V_r, axis))
    return np.sum(wm * f, axis=0) - psim


def ec_entropy_flux(eos, V_l, V_r, axis=0):
    """Two-point numerical entropy flux between two primitive states."""
    return pair_entropy_flux(eos, V_l, V_r, axis)


def highorder_entropy_flux(eos, z, W, psi, k, axis, lo, n_ifc):
    """2k-th order numerical entropy flux, combined with the same alphas."""
    total = None
    for r, alpha in enumerate(combo_coeffs(k), start=1):
        a = float(alpha)
        for s in range(r):
            zl = tuple(_take(c, lo - s, n_ifc, axis) for c in z)
            zr = tuple(_take(c, lo - s + r, n_ifc, axis) for c in z)
            f = pair_flux(eos, zl, zr, axis)
            wm = amean(_take(W, lo - s, n_ifc, axis + 1), _take(W, lo - s + r, n_ifc, axis + 1))
            pm = amean(_take(psi, lo - s, n_ifc, axis), _take(psi, lo - s + r, n_ifc, axis))
            q = np.sum(wm * f, axis=0) - pm
            total = a * q if total is None else total + a * q
    return total
