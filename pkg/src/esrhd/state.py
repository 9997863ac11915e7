"""Fluid state types, analytic fluxes, entropy machinery, and con2prim.

States are stored as structures of numpy arrays so every operation
broadcasts over whole grids.  Velocities are normalized to the speed of
light; the admissible set is rho > 0, p > 0, |v| < 1.

The conservative variables are D = rho gamma, m = rho h gamma^2 v and
E = rho h gamma^2 - p.  They cannot be inverted in closed form, so
``cons_to_prim`` runs a safeguarded Newton iteration on the pressure.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RecoveryError

# States closer to luminal than this are rejected at ingestion; the interface
# eigenstructure degenerates numerically as |v| -> 1.
V_MAX = 1.0 - 1.0e-10


def lorentz(v):
    """Lorentz factor 1/sqrt(1 - |v|^2) for a velocity tuple."""
    v2 = sum(np.asarray(c, dtype=float) ** 2 for c in v)
    return 1.0 / np.sqrt(1.0 - v2)


@dataclass(frozen=True)
class Prim:
    """Primitive state (rho, v, p); v is a tuple of d component arrays."""

    rho: np.ndarray
    v: tuple
    p: np.ndarray

    @property
    def ndim(self):
        return len(self.v)

    @property
    def theta(self):
        return self.p / self.rho

    def validate(self):
        v2 = sum(np.asarray(c, dtype=float) ** 2 for c in self.v)
        ok = (
            np.all(np.isfinite(self.rho)) and np.all(self.rho > 0.0)
            and np.all(np.isfinite(self.p)) and np.all(self.p > 0.0)
            and np.all(np.isfinite(v2)) and np.all(v2 <= V_MAX * V_MAX)
        )
        if not ok:
            raise DomainError("inadmissible primitive state (need rho>0, p>0, |v|<1)")
        return self


@dataclass(frozen=True)
class Cons:
    """Conservative state (D, m, E); m is a tuple of d component arrays."""

    D: np.ndarray
    m: tuple
    E: np.ndarray

    @property
    def ndim(self):
        return len(self.m)


def prim_to_cons(eos, V):
    """Map an admissible primitive state to conservative variables."""
    g = lorentz(V.v)
    h = eos.enthalpy(V.p / V.rho)
    w = V.rho * h * g * g
    return Cons(D=V.rho * g, m=tuple(w * c for c in V.v), E=w - V.p)


def cons_to_array(U):
    return np.stack([U.D, *U.m, U.E])


def cons_from_array(a, d):
    return Cons(D=a[0], m=tuple(a[1 + i] for i in range(d)), E=a[1 + d])


def prim_to_array(V):
    return np.stack([V.rho, *V.v, V.p])


def prim_from_array(a, d):
    return Prim(rho=a[0], v=tuple(a[1 + i] for i in range(d)), p=a[1 + d])


def _recovery_residual(eos, D, E, mnorm, p):
    """Residual h(theta(p)) - (E+p)/(D gamma(p)) and its dp derivative."""
    ep_tot = E + p
    v = mnorm / ep_tot
    g = ep_tot / np.sqrt((ep_tot - mnorm) * (ep_tot + mnorm))
    theta = p * g / D
    hval = 1.0 + eos._e(theta) + theta
    target = ep_tot / (D * g)
    res = hval - target
    dtheta_dp = g / D - p * g**3 * v * v / (D * ep_tot)
    dres = (1.0 + eos._ep(theta)) * dtheta_dp - g / D
    return res, dres


def cons_to_prim(eos, U, p_guess=None, tol=1.0e-13, max_iter=200):
    """Recover the unique admissible primitive state from U.

    ``p_guess`` (e.g. the previous time level's pressure) warm-starts the
    Newton iteration.  Raises RecoveryError, naming the offending cells, if
    no admissible preimage can be found.
    """
    D = np.asarray(U.D, dtype=float)
    E = np.asarray(U.E, dtype=float)
    m2 = sum(np.asarray(c, dtype=float) ** 2 for c in U.m)
    mnorm = np.sqrt(m2)

    bad = ~np.isfinite(D) | ~np.isfinite(E) | ~np.isfinite(mnorm) | (D <= 0.0) | (E <= mnorm)
    if np.any(bad):
        idx = np.flatnonzero(np.atleast_1d(bad))
        raise RecoveryError(
            f"conservative state admits no admissible preimage in {idx.size} cell(s), "
            f"first indices {idx[:5].tolist()}",
            indices=idx,
        )

    # E > |m| holds for every causal Synge-type EOS, so p > 0 brackets from below.
    p_floor = 1.0e-300
    if p_guess is not None:
        p = np.broadcast_to(np.asarray(p_guess, dtype=float), D.shape).copy()
        p = np.where(np.isfinite(p) & (p > 0.0), p, 0.25 * (E - mnorm))
    else:
        p = 0.25 * (E - mnorm)
    p = np.maximum(p, p_floor)

    converged = np.zeros(D.shape, dtype=bool)
    for _ in range(60):
        res, dres = _recovery_residual(eos, D, E, mnorm, p)
        step = res / dres
        p_new = p - step
        # keep iterates positive; Newton is reliable once inside the basin
        p_new = np.where((p_new <= 0.0) | ~np.isfinite(p_new), 0.5 * p, p_new)
        moved = np.abs(p_new - p)
        p = np.where(converged, p, p_new)
        newly = moved <= tol * np.abs(p)
        converged |= newly
        if np.all(converged):
            break

    if not np.all(converged):
        p = _bisection_rescue(eos, D, E, mnorm, p, ~converged, max_iter)

    # one polishing Newton step squeezes the residual to rounding level
    res, dres = _recovery_residual(eos, D, E, mnorm, p)
    p_ref = p - res / dres
    p = np.where(np.isfinite(p_ref) & (p_ref > 0.0), p_ref, p)

    ep_tot = E + p
    v = tuple(np.asarray(c, dtype=float) / ep_tot for c in U.m)
    root = np.sqrt((ep_tot - mnorm) * (ep_tot + mnorm))
    rho = D * root / ep_tot
    return Prim(rho=rho, v=v, p=p)


def _bisection_rescue(eos, D, E, mnorm, p, active, max_iter):
    """Bracketed bisection/Newton fallback for cells Newton did not close."""
    lo = np.full(p.shape, 1.0e-300)
    hi = np.maximum(4.0 * p, 1.0e-12 * (E + mnorm))
    for _ in range(200):
        res_hi, _ = _recovery_residual(eos, D, E, mnorm, hi)
        grow = active & (res_hi < 0.0)
        if not np.any(grow):
            break
        hi = np.where(grow, hi * 4.0, hi)
    else:
        idx = np.flatnonzero(np.atleast_1d(active))
        raise RecoveryError(
            f"pressure bracket not found in {idx.size} cell(s), first {idx[:5].tolist()}",
            indices=idx,
        )
    for _ in range(max_iter):
        mid = np.sqrt(lo * hi)
        res, dres = _recovery_residual(eos, D, E, mnorm, mid)
        newton = mid - res / dres
        inside = (newton > lo) & (newton < hi) & np.isfinite(newton)
        cand = np.where(inside, newton, mid)
        lo = np.where(active & (res < 0.0), mid, lo)
        hi = np.where(active & (res >= 0.0), mid, hi)
        p = np.where(active, cand, p)
        done = active & (np.abs(hi - lo) <= 1.0e-14 * np.abs(hi))
        active = active & ~done
        if not np.any(active):
            return p
    idx = np.flatnonzero(np.atleast_1d(active))
    raise RecoveryError(
        f"pressure iteration stalled in {idx.size} cell(s), first {idx[:5].tolist()}",
        indices=idx,
    )


def flux(eos, V, axis):
    """Analytic flux vector along the given axis, stacked (d+2, ...)."""
    U = prim_to_cons(eos, V)
    va = V.v[axis]
    rows = [U.D * va]
    for i in range(V.ndim):
        rows.append(va * U.m[i] + (V.p if i == axis else 0.0))
    rows.append(U.m[axis])
    return np.stack(np.broadcast_arrays(*rows))


def entropy_eta(eos, V):
    """Entropy function eta = -D S."""
    g = lorentz(V.v)
    return -V.rho * g * eos.entropy(V.rho, V.p / V.rho)


def entropy_flux_q(eos, V, axis):
    """Entropy flux q_axis = -D S v_axis."""
    return entropy_eta(eos, V) * V.v[axis]


def entropy_vars(eos, V):
    """Entropy variables W = (1/theta) (h - theta S, gamma v, -gamma), stacked."""
    theta = V.p / V.rho
    g = lorentz(V.v)
    S = eos.entropy(V.rho, theta)
    h = eos.enthalpy(theta)
    rows = [(h - theta * S) / theta]
    rows += [g * c / theta for c in V.v]
    rows.append(-g / theta)
    return np.stack(np.broadcast_arrays(*rows))


def potential_psi(V, axis):
    """Entropy potential flux psi_axis = rho gamma v_axis."""
    return V.rho * lorentz(V.v) * V.v[axis]


def dU_dW(eos, V):
    """Analytic Jacobian of conservative w.r.t. entropy variables.

    Symmetric positive definite; shape (..., d+2, d+2).  Serves as the
    oracle for the scaled-eigenvector factorization R R^T.
    """
    theta = np.asarray(V.p / V.rho, dtype=float)
    rho = np.asarray(V.rho, dtype=float)
    g = lorentz(V.v)
    h = eos.enthalpy(theta)
    ep = eos.e_prime(theta)
    if V.ndim == 1:
        v1 = np.asarray(V.v[0], dtype=float)
        a = np.empty(np.broadcast(rho, v1, theta).shape + (3, 3))
        a[..., 0, 0] = rho * g
        a[..., 0, 1] = rho * h * g * g * v1
        a[..., 0, 2] = rho * (-theta + h * g * g)
        a[..., 1, 1] = rho * g**3 * (theta**2 * v1**2 * (1 + ep) + theta * h + h * h * v1**2)
        a[..., 1, 2] = rho * g**3 * v1 * (theta**2 * (1 + ep) + h * h + theta * h * v1**2)
        a[..., 2, 2] = rho * g**3 * (theta**2 * (1 + ep) + h * h - 2 * theta * h + 3 * theta * h * v1**2)
        a[..., 1, 0] = a[..., 0, 1]
        a[..., 2, 0] = a[..., 0, 2]
        a[..., 2, 1] = a[..., 1, 2]
        return a
    v1 = np.asarray(V.v[0], dtype=float)
    v2 = np.asarray(V.v[1], dtype=float)
    vv = v1 * v1 + v2 * v2
    s1 = theta**2 * v1**2 * (1 + ep) + theta * h + h * h * v1**2 - theta * h * v2**2
    s2 = theta**2 * (1 + ep) + theta * h + h * h
    s3 = theta**2 * v2**2 * (1 + ep) + theta * h + h * h * v2**2 - theta * h * v1**2
    s4 = theta**2 * (1 + ep) + h * h + theta * h * vv
    a = np.empty(np.broadcast(rho, v1, v2, theta).shape + (4, 4))
    a[..., 0, 0] = rho * g
    a[..., 0, 1] = rho * h * g * g * v1
    a[..., 0, 2] = rho * h * g * g * v2
    a[..., 0, 3] = rho * (-theta + h * g * g)
    a[..., 1, 1] = rho * g**3 * s1
    a[..., 1, 2] = rho * g**3 * v1 * v2 * s2
    a[..., 1, 3] = rho * g**3 * v1 * s4
    a[..., 2, 2] = rho * g**3 * s3
    a[..., 2, 3] = rho * g**3 * v2 * s4
    a[..., 3, 3] = rho * g**3 * (s4 - 2 * theta * h * (1.0 - vv))
    for i in range(4):
        for j in range(i):
            a[..., i, j] = a[..., j, i]
    return a
