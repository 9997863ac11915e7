"""Time integrators: SSP-RK3 and its entropy-relaxation variant RRK3.

Both act on plain conserved arrays through a user-supplied tendency
function.  The relaxation step rescales the RK update by gamma_n, chosen so
the discrete total entropy changes exactly by the entropy production the
stages predict; with an entropy-conservative tendency this pins the total
entropy to rounding level, and with an entropy-stable one it guarantees a
monotone decrease in the fully discrete scheme.  The physical time then
advances by gamma_n * dt.
"""

import numpy as np

from .errors import RelaxationError

VALID_INTEGRATORS = ("ssprk3", "rrk3")


def ssp_rk3_step(u, rhs_fn, dt):
    """One step of the classic three-stage third-order SSP Runge-Kutta."""
    u1 = u + dt * rhs_fn(u)
    u2 = 0.75 * u + 0.25 * (u1 + dt * rhs_fn(u1))
    return u / 3.0 + (2.0 / 3.0) * (u2 + dt * rhs_fn(u2))


def solve_relaxation(r, tol=1.0e-12):
    """Root of the scalar relaxation equation r(gamma) = 0 near gamma = 1.

    Secant (regula falsi) iteration with the Illinois anti-stagnation
    weighting and a forced bisection whenever the bracket stops halving;
    plain false position stalls against convex residuals.  The bracket is
    sought in [0.9, 1.1] first and widened to [0.5, 1.5] if needed.
    """
    r1 = r(1.0)
    if r1 == 0.0:
        return 1.0
    lo = hi = None
    for a, b in ((0.9, 1.1), (0.5, 1.5)):
        ra, rb = r(a), r(b)
        if ra == 0.0:
            return a
        if rb == 0.0:
            return b
        if np.sign(ra) != np.sign(rb):
            lo, hi, rlo, rhi = a, b, ra, rb
            break
    if lo is None:
        raise RelaxationError(
            "relaxation residual has no sign change in [0.5, 1.5]; reduce the time step"
        )
    # pull the nearer endpoint to gamma = 1, where the root lives
    if np.sign(r1) == np.sign(rlo):
        lo, rlo = 1.0, r1
    else:
        hi, rhi = 1.0, r1
    best_g, best_r = 1.0, abs(r1)
    side = 0
    width_check = hi - lo
    for it in range(200):
        if hi - lo <= tol:
            break
        if it % 3 == 2 and (hi - lo) > 0.5 * width_check:
            gam = 0.5 * (lo + hi)  # bracket is not halving: bisect
        else:
            gam = (lo * rhi - hi * rlo) / (rhi - rlo)
            if not (lo < gam < hi) or not np.isfinite(gam):
                gam = 0.5 * (lo + hi)
        if it % 3 == 2:
            width_check = hi - lo
        rg = r(gam)
        if abs(rg) < best_r:
            best_g, best_r = gam, abs(rg)
        if rg == 0.0:
            return gam
        if np.sign(rg) == np.sign(rlo):
            lo, rlo = gam, rg
            if side == -1:
                rhi *= 0.5
            side = -1
        else:
            hi, rhi = gam, rg
            if side == +1:
                rlo *= 0.5
            side = +1
    mid = 0.5 * (lo + hi)
    return best_g if best_r <= abs(r(mid)) else mid


def rrk3_step(u, rhs_fn, dt, total_entropy_fn, entropy_inner_fn, tol_scale=None):
    """One relaxation-RK3 step; returns (u_next, gamma_n).

    ``total_entropy_fn(u)`` evaluates the discrete total entropy and
    ``entropy_inner_fn(u, du)`` the entropy-variable inner product
    sum_i W(u_i)^T du_i * volume, both over interior cells.
    """
    l0 = rhs_fn(u)
    u1 = u + dt * l0
    l1 = rhs_fn(u1)
    u2 = 0.75 * u + 0.25 * (u1 + dt * l1)
    l2 = rhs_fn(u2)
    d_n = (dt / 6.0) * (l0 + l1 + 4.0 * l2)
    if not np.any(d_n):
        return u.copy(), 1.0
    eps = (dt / 6.0) * (
        entropy_inner_fn(u, l0) + entropy_inner_fn(u1, l1) + 4.0 * entropy_inner_fn(u2, l2)
    )
    e0 = total_entropy_fn(u)
    scale = 1.0 + abs(e0) if tol_scale is None else tol_scale

    def residual(gam):
        return total_entropy_fn(u + gam * d_n) - e0 - gam * eps

    # fast path: the entropy equation may already balance to rounding at 1
    if abs(residual(1.0)) <= 1.0e-14 * scale:
        return u + d_n, 1.0
    gam = solve_relaxation(residual)
    if not (0.5 <= gam <= 1.5):
        raise RelaxationError(f"relaxation parameter {gam} outside [0.5, 1.5]")
    return u + gam * d_n, gam
