"""Wave speeds, scaled eigenvectors, interface averaging, dissipation matrices.

The scaled right-eigenvector matrix R of the flux Jacobian satisfies both
dF/dU = R Lambda R^{-1} and dU/dW = R R^T, which makes D = R |Lambda| R^T a
positive semi-definite dissipation operator in entropy-variable space.

At cell interfaces the matrices are evaluated at an averaged state whose
enthalpy is tied to the entropy-conservative flux coefficient,

    h_hat = ec_coefficient(z2_L, z2_R) + 1 / logmean(z2_L, z2_R),

which makes Roe-type dissipation vanish identically on stationary contact
discontinuities.  All derived quantities (gamma, e', c_s) are computed from
the averaged (rho_hat, v_hat, theta_hat, h_hat); in particular c_s^2 uses
h_hat rather than the EOS enthalpy at theta_hat, so the algebraic identities
above hold exactly at the averaged state as well.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvariantError
from .means import amean, logmean

__all__ = [
    "FlowState",
    "from_prim",
    "interface_average",
    "eigenvalues",
    "scaled_eigenvectors",
    "dissipation_matrix",
    "apply_dissipation",
    "max_signal_speed",
]


@dataclass(frozen=True)
class FlowState:
    """A (possibly averaged) flow state carrying everything the matrices need."""

    rho: np.ndarray
    v: tuple
    theta: np.ndarray
    h: np.ndarray
    eprime: np.ndarray
    cs2: np.ndarray
    gamma: np.ndarray

    @property
    def ndim(self):
        return len(self.v)


def _flow(rho, v, theta, h, eprime):
    cs2 = theta * (1.0 + eprime) / (h * eprime)
    v2 = sum(c * c for c in v)
    g = 1.0 / np.sqrt(1.0 - v2)
    arrs = np.broadcast_arrays(rho, *v, theta, h, eprime, cs2, g)
    d = len(v)
    return FlowState(
        rho=arrs[0], v=tuple(arrs[1 : 1 + d]), theta=arrs[1 + d],
        h=arrs[2 + d], eprime=arrs[3 + d], cs2=arrs[4 + d], gamma=arrs[5 + d],
    )


def from_prim(eos, V):
    """FlowState of a genuine primitive state."""
    theta = np.asarray(V.p, dtype=float) / np.asarray(V.rho, dtype=float)
    return _flow(
        np.asarray(V.rho, dtype=float),
        tuple(np.asarray(c, dtype=float) for c in V.v),
        theta,
        eos.enthalpy(theta),
        eos.e_prime(theta),
    )


def interface_average(eos, V_l, V_r):
    """Averaged state at an interface: log-mean rho and theta-from-z2,
    arithmetic-mean velocity, and the contact-preserving enthalpy."""
    rho = logmean(V_l.rho, V_r.rho)
    z2_l = np.asarray(V_l.rho / V_l.p, dtype=float)
    z2_r = np.asarray(V_r.rho / V_r.p, dtype=float)
    theta = 1.0 / logmean(z2_l, z2_r)
    h = eos.ec_coefficient(z2_l, z2_r) + theta
    v = tuple(amean(cl, cr) for cl, cr in zip(V_l.v, V_r.v))
    return _flow(rho, v, theta, h, eos.e_prime(theta))


def eigenvalues(fs, axis):
    """Closed-form eigenvalues of the flux Jacobian along ``axis``, stacked."""
    cs = np.sqrt(fs.cs2)
    if fs.ndim == 1:
        v = fs.v[0]
        lam = [(v - cs) / (1.0 - v * cs), v, (v + cs) / (1.0 + v * cs)]
        return np.stack(np.broadcast_arrays(*lam), axis=-1)
    vn = fs.v[axis]
    vt = fs.v[1 - axis]
    vv = vn * vn + vt * vt
    disc = cs * np.sqrt((1.0 - vv) * (1.0 - vn * vn - vt * vt * fs.cs2))
    den = 1.0 - vv * fs.cs2
    lam_m = (vn * (1.0 - fs.cs2) - disc) / den
    lam_p = (vn * (1.0 - fs.cs2) + disc) / den
    return np.stack(np.broadcast_arrays(lam_m, vn, vn, lam_p), axis=-1)


def _check_scaling(name, d, scale):
    # genuine negatives violate the factorization; magnitudes at rounding
    # level below zero are indistinguishable from zero and are floored
    tiny = 1.0e-13 * scale
    if np.any(d < -tiny):
        worst = float(np.min(d / np.maximum(scale, 1e-300)))
        raise InvariantError(f"negative scaling coefficient {name} (min {worst:.3e} x scale)")
    return np.maximum(d, 0.0)


def scaled_eigenvectors(fs, axis=0):
    """(R, eigenvalues) with R R^T = dU/dW at the state, batched (..., m, m)."""
    cs = np.sqrt(fs.cs2)
    rho, th, h, ep, g = fs.rho, fs.theta, fs.h, fs.eprime, fs.gamma
    dtheta = h - th * (1.0 + ep)
    lam = eigenvalues(fs, axis)
    scale = rho * g
    if fs.ndim == 1:
        v = fs.v[0]
        d1 = _check_scaling("d1", (rho * ep / (2.0 * (1.0 + ep)) - rho * th * v / (2.0 * cs * h)) * g, scale)
        d2 = rho * g / (1.0 + ep)
        d3 = _check_scaling("d3", (rho * ep / (2.0 * (1.0 + ep)) + rho * th * v / (2.0 * cs * h)) * g, scale)
        one = np.ones(np.broadcast(rho, v).shape)
        r = np.empty(one.shape + (3, 3))
        r[..., 0, 0] = one
        r[..., 0, 1] = one
        r[..., 0, 2] = one
        r[..., 1, 0] = (v - cs) * h * g
        r[..., 1, 1] = dtheta * g * v
        r[..., 1, 2] = (v + cs) * h * g
        r[..., 2, 0] = (1.0 - v * cs) * h * g
        r[..., 2, 1] = dtheta * g
        r[..., 2, 2] = (1.0 + v * cs) * h * g
        r *= np.sqrt(np.stack(np.broadcast_arrays(d1, d2, d3), axis=-1))[..., None, :]
        return r, lam

    vn = fs.v[axis]
    vt = fs.v[1 - axis]
    lam_m = lam[..., 0]
    lam_p = lam[..., 3]
    dl_m = (1.0 - vn * vn) / (1.0 - vn * lam_m)
    dl_p = (1.0 - vn * vn) / (1.0 - vn * lam_p)
    m_coef = rho * g * (ep / (1.0 + ep) - th * vt * vt / (h * (1.0 - vn * vn)))
    n_coef = rho * th * vn * np.sqrt(1.0 - vn * vn - vt * vt * fs.cs2) / (h * cs * (1.0 - vn * vn))
    d_ac_m = _check_scaling("d_minus", 0.5 * (m_coef - n_coef), scale)
    d_ac_p = _check_scaling("d_plus", 0.5 * (m_coef + n_coef), scale)
    d_ent = rho * g**3 / (1.0 + ep)
    d_shear = rho * th / (h * (1.0 - vn * vn) * g)
    one = np.ones(np.broadcast(rho, vn, vt).shape)
    r = np.empty(one.shape + (4, 4))
    # rows below are written in the x-direction frame (normal, transverse);
    # the y-direction matrix follows by permuting the two momentum rows
    row_n = 1 + axis
    row_t = 2 - axis
    r[..., 0, 0] = one
    r[..., 0, 1] = 1.0 / g
    r[..., 0, 2] = g * vt
    r[..., 0, 3] = one
    r[..., row_n, 0] = h * g * dl_m * lam_m
    r[..., row_n, 1] = dtheta * vn
    r[..., row_n, 2] = 2.0 * h * g * g * vn * vt
    r[..., row_n, 3] = h * g * dl_p * lam_p
    r[..., row_t, 0] = h * g * vt
    r[..., row_t, 1] = dtheta * vt
    r[..., row_t, 2] = h * (1.0 + 2.0 * g * g * vt * vt)
    r[..., row_t, 3] = h * g * vt
    r[..., 3, 0] = h * g * dl_m
    r[..., 3, 1] = dtheta
    r[..., 3, 2] = 2.0 * h * g * g * vt
    r[..., 3, 3] = h * g * dl_p
    r *= np.sqrt(np.stack(np.broadcast_arrays(d_ac_m, d_ent, d_shear, d_ac_p), axis=-1))[..., None, :]
    return r, lam


def _abs_lambda(lam, mode):
    if mode == "roe":
        return np.abs(lam)
    if mode == "rusanov":
        return np.broadcast_to(np.max(np.abs(lam), axis=-1, keepdims=True), lam.shape)
    raise DomainError(f"unknown dissipation mode {mode!r}; valid: ['roe', 'rusanov']")


def dissipation_matrix(r, lam, mode="rusanov"):
    """Positive semi-definite D = R |Lambda| R^T for the selected mode."""
    a = _abs_lambda(lam, mode)
    return np.einsum("...ik,...k,...jk->...ij", r, a, r)


def apply_dissipation(r, lam, mode, omega_jump):
    """R |Lambda| <<omega>> for a jump expressed in scaled entropy variables."""
    a = _abs_lambda(lam, mode)
    return np.einsum("...ik,...k->...i", r, a * omega_jump)


def max_signal_speed(fs, axis):
    """Largest |eigenvalue| along an axis; always below 1."""
    return np.max(np.abs(eigenvalues(fs, axis)), axis=-1)
