"""ENO / WENO reconstruction of scaled entropy variables.

High-order entropy-stable fluxes replace the raw interface jump of the
entropy variables with a reconstructed jump of the scaled variables
omega = R^T W, where R is the interface scaled-eigenvector matrix.  ENO
keeps the sign property by stencil selection; fifth-order WENO needs an
explicit switch that zeroes any component whose reconstructed jump
disagrees in sign with the cell jump.

Reconstructions act componentwise on point values along the last axis,
using the standard cell-average-form coefficient tables.
"""

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError

WENO_EPS = 1.0e-6
WENO_POWER = 2

_WENO_GAMMAS = (0.1, 0.6, 0.3)
_WENO_STENCILS = (
    (2.0 / 6.0, -7.0 / 6.0, 11.0 / 6.0),
    (-1.0 / 6.0, 5.0 / 6.0, 2.0 / 6.0),
    (2.0 / 6.0, 5.0 / 6.0, -1.0 / 6.0),
)


def scale_entropy_vars(r, w_stencil):
    """omega_j = R^T W_j for every stencil cell j.

    ``r`` has shape (..., m, m); ``w_stencil`` has shape (..., m, s) with the
    component axis second-to-last.  Returns (..., m, s).
    """
    return np.einsum("...km,...ks->...ms", r, w_stencil)


def first_order_jump(r, w_l, w_r):
    """[[omega]] = R^T (W_R - W_L) for component-last W arrays (..., m)."""
    return np.einsum("...km,...k->...m", r, w_r - w_l)


@lru_cache(maxsize=None)
def _edge_coeffs(order, shift, edge=1):
    """Weights for the cell-edge value of a reconstruction from cell values.

    The stencil holds cells at offsets -shift .. order-1-shift relative to
    the cell whose edge is evaluated; ``edge`` +1/-1 selects the right/left
    edge.  Weights are exact rationals solved from the primitive-function
    conditions.
    """
    n = order
    a = [[Fraction(0)] * n for _ in range(n)]
    b = []
    for q in range(n):
        for j in range(n):
            o = j - shift
            a[q][j] = (Fraction(2 * o + 1, 2) ** (q + 1) - Fraction(2 * o - 1, 2) ** (q + 1)) / (q + 1)
        b.append(Fraction(edge, 2) ** q)
    # Gaussian elimination over Fractions
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
    return tuple(float(m[r][n]) for r in range(n))


@lru_cache(maxsize=None)
def _edge_coeff_table(order, edge):
    return np.array([_edge_coeffs(order, r, edge) for r in range(order)])


def _eno_edge_value(window, order, edge):
    """Adaptive-stencil ENO value at an edge of the window's center cell.

    ``window`` holds 2*order-1 consecutive cell values along the last axis,
    centered on the cell of interest.  Stencils grow toward the side with
    the smaller undivided difference; both interface traces must run this
    selection in the same orientation or exact ties break the sign property.
    """
    w = np.asarray(window, dtype=float)
    if w.shape[-1] != 2 * order - 1:
        raise DomainError(f"ENO window must hold {2 * order - 1} cells")
    left = np.full(w.shape[:-1], order - 1, dtype=np.int64)
    diff = w
    for _ in range(order - 1):
        diff = diff[..., 1:] - diff[..., :-1]
        d_lo = np.take_along_axis(diff, (left - 1)[..., None], axis=-1)[..., 0]
        d_hi = np.take_along_axis(diff, left[..., None], axis=-1)[..., 0]
        left = np.where(np.abs(d_lo) < np.abs(d_hi), left - 1, left)
    shift = (order - 1) - left
    idx = left[..., None] + np.arange(order)
    cells = np.take_along_axis(w, idx, axis=-1)
    coeffs = _edge_coeff_table(order, edge)[shift]
    return np.sum(coeffs * cells, axis=-1)


def eno_reconstruct(stencil, order):
    """Left/right-biased ENO point values at the central interface.

    ``stencil`` holds 2*order consecutive cell values along the last axis;
    the interface sits between entries order-1 and order.
    """
    s = np.asarray(stencil, dtype=float)
    if s.shape[-1] < 2 * order:
        raise DomainError(f"ENO order {order} needs a stencil of {2 * order} cells")
    w_minus = _eno_edge_value(s[..., : 2 * order - 1], order, edge=1)
    w_plus = _eno_edge_value(s[..., 1:], order, edge=-1)
    return w_minus, w_plus


def _weno5_edge_value(cells):
    """Classic fifth-order WENO value at the right edge of the middle cell."""
    f0, f1, f2, f3, f4 = (cells[..., i] for i in range(5))
    beta0 = 13.0 / 12.0 * (f0 - 2 * f1 + f2) ** 2 + 0.25 * (f0 - 4 * f1 + 3 * f2) ** 2
    beta1 = 13.0 / 12.0 * (f1 - 2 * f2 + f3) ** 2 + 0.25 * (f1 - f3) ** 2
    beta2 = 13.0 / 12.0 * (f2 - 2 * f3 + f4) ** 2 + 0.25 * (3 * f2 - 4 * f3 + f4) ** 2
    alphas = [g / (WENO_EPS + b) ** WENO_POWER for g, b in zip(_WENO_GAMMAS, (beta0, beta1, beta2))]
    total = alphas[0] + alphas[1] + alphas[2]
    c0, c1, c2 = _WENO_STENCILS
    p0 = c0[0] * f0 + c0[1] * f1 + c0[2] * f2
    p1 = c1[0] * f1 + c1[1] * f2 + c1[2] * f3
    p2 = c2[0] * f2 + c2[1] * f3 + c2[2] * f4
    return (alphas[0] * p0 + alphas[1] * p1 + alphas[2] * p2) / total


def weno_reconstruct(stencil):
    """Fifth-order WENO interface values from 6 consecutive cell values.

    The interface sits between entries 2 and 3 of the last axis.
    """
    s = np.asarray(stencil, dtype=float)
    if s.shape[-1] < 6:
        raise DomainError("WENO5 needs a stencil of 6 cells")
    w_minus = _weno5_edge_value(s[..., 0:5])
    w_plus = _weno5_edge_value(s[..., 5:0:-1])
    return w_minus, w_plus


def sign_switch(w_minus, w_plus, cell_jump):
    """Zero any component whose reconstructed jump fights the cell jump."""
    d = w_plus - w_minus
    return np.where(d * cell_jump > 0.0, d, 0.0)
