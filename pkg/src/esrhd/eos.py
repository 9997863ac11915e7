"""Synge-type equations of state for relativistic hydrodynamics.

Every EOS here closes the system through a specific enthalpy that depends
only on the temperature-like variable theta = p / rho,

    h(theta) = 1 + e(theta) + theta,

together with the causality condition  h e'(theta) > theta (1 + e'(theta)),
e'(theta) > 0, which keeps the sound speed below the speed of light.

Four concrete models are provided:

  * ``id`` -- constant-adiabatic-index ideal gas (Gamma in (1, 2]),
  * ``rc`` -- the rational approximation of Ryu, Chattopadhyay and Choi,
  * ``ip`` -- the approximation of Sokolov, Zhang and Sakai,
  * ``tm`` -- the Taub--Mathews approximation.

Each model supplies the thermodynamic entropy S(rho, theta), needed for the
entropy pair of the flow equations, and the interface coefficient used by the
entropy-conservative two-point fluxes,

    ec_coefficient(z2_L, z2_R) = 1 + integral_0^1 e(1/(z2_L + s (z2_R - z2_L))) ds,

with z2 = rho / p.  The closed forms are exact; a composite Gauss-Legendre
fallback is provided for cross-checking and for future EOSs that lack closed
forms (it conserves entropy only to quadrature accuracy).

All methods broadcast over numpy arrays, and instances are immutable, so a
single EosModel can be shared freely across threads.
"""

import numpy as np

from .errors import DomainError, InvariantError
from .means import amean, logmean

_GL16_NODES, _GL16_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _check_theta(theta, allow_zero=True):
    t = np.asarray(theta, dtype=float)
    if np.any(~np.isfinite(t)):
        raise DomainError("theta must be finite")
    if allow_zero:
        if np.any(t < 0.0):
            raise DomainError("theta must be nonnegative")
    else:
        if np.any(t <= 0.0):
            raise DomainError("theta must be positive")
    return t


def _check_z2(z):
    z = np.asarray(z, dtype=float)
    if np.any(~np.isfinite(z)) or np.any(z <= 0.0):
        raise DomainError("z2 = rho/p must be positive and finite")
    return z


class EosModel:
    """Base class: a Synge-type EOS defined by e(theta) and its derivative.

    ``_e``/``_ep`` are the unchecked kernels used inside iterative solvers;
    the public methods validate their arguments once.
    """

    kind = "?"

    def _e(self, theta):
        raise NotImplementedError

    def _ep(self, theta):
        raise NotImplementedError

    def internal_energy(self, theta):
        """Specific internal energy e(theta)."""
        return self._e(_check_theta(theta))

    def e_prime(self, theta):
        """Derivative e'(theta); positive for every causal EOS."""
        return self._ep(_check_theta(theta))

    def _entropy_theta(self, theta):
        """Antiderivative of e'(x)/x, with the model's fixed constant."""
        raise NotImplementedError

    def enthalpy(self, theta):
        """Specific enthalpy h(theta) = 1 + e(theta) + theta."""
        t = _check_theta(theta)
        return 1.0 + self._e(t) + t

    def sound_speed_sq(self, theta):
        """Squared sound speed theta (1 + e') / (h e'), in (0, 1)."""
        t = _check_theta(theta)
        ep = self._ep(t)
        h = 1.0 + self._e(t) + t
        cs2 = t * (1.0 + ep) / (h * ep)
        if np.any(cs2 >= 1.0) or np.any(cs2 < 0.0):
            raise InvariantError(f"{self.kind}-EOS: causality violated, cs^2 outside [0,1)")
        return cs2

    def entropy(self, rho, theta):
        """Thermodynamic entropy S(rho, theta) = -ln(rho) + integral e'(x)/x dx."""
        r = np.asarray(rho, dtype=float)
        t = _check_theta(theta, allow_zero=False)
        if np.any(~np.isfinite(r)) or np.any(r <= 0.0):
            raise DomainError("rho must be positive and finite")
        return self._entropy_theta(t) - np.log(r)

    def ec_coefficient(self, z2_l, z2_r):
        raise NotImplementedError

    def ec_coefficient_quadrature(self, z2_l, z2_r, nodes_per_panel=16):
        """Composite Gauss-Legendre evaluation of the interface coefficient.

        Panels are graded geometrically in z2 so wide interfaces stay
        resolved.  Exact entropy conservation holds only for the closed
        forms; this path trades that for EOS generality.
        """
        zl = _check_z2(z2_l)
        zr = _check_z2(z2_r)
        zl, zr = np.broadcast_arrays(zl, zr)
        out = np.empty(zl.shape, dtype=float)
        it = np.nditer(out, flags=["multi_index"])
        for _ in it:
            idx = it.multi_index
            out[idx] = self._ec_quad_scalar(float(zl[idx]), float(zr[idx]), nodes_per_panel)
        if out.ndim == 0:
            return float(out)
        return out

    def _ec_quad_scalar(self, zl, zr, n_nodes):
        if zl == zr:
            return 1.0 + float(self._e(1.0 / zl))
        lo, hi = min(zl, zr), max(zl, zr)
        n_panels = max(1, int(np.ceil(np.log(hi / lo) / np.log(1.25))))
        edges = np.geomspace(lo, hi, n_panels + 1)
        # integrate e(1/z2) ds with s the chord parameter; dz2 = (zr - zl) ds
        total = 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            z = 0.5 * (b - a) * _GL16_NODES[:n_nodes] + 0.5 * (a + b)
            total += 0.5 * (b - a) * np.sum(_GL16_WEIGHTS[:n_nodes] * self._e(1.0 / z))
        return 1.0 + total / (hi - lo)

    def check_causality(self, theta):
        """Raise unless e' > 0 and h e' - theta (1 + e') > 0 at every theta."""
        t = _check_theta(theta, allow_zero=False)
        ep = self._ep(t)
        margin = (1.0 + self._e(t) + t) * ep - t * (1.0 + ep)
        if np.any(ep <= 0.0) or np.any(margin <= 0.0):
            raise InvariantError(f"{self.kind}-EOS: causality condition violated")

    def __repr__(self):
        return f"{type(self).__name__}()"


class IdealEos(EosModel):
    """Constant-Gamma ideal gas, h = 1 + Gamma/(Gamma-1) theta."""

    kind = "id"

    def __init__(self, gamma=5.0 / 3.0):
        if not np.isfinite(gamma) or not (1.0 < gamma <= 2.0):
            # Gamma > 2 would allow superluminal signal speeds.
            raise DomainError(f"ideal-gas adiabatic index must lie in (1, 2], got {gamma}")
        self.gamma = float(gamma)

    def _e(self, theta):
        return theta / (self.gamma - 1.0)

    def _ep(self, theta):
        t = np.asarray(theta)
        out = 1.0 / (self.gamma - 1.0)
        return np.full(t.shape, out) if t.ndim else out

    def _entropy_theta(self, theta):
        return np.log(theta) / (self.gamma - 1.0)

    def ec_coefficient(self, z2_l, z2_r):
        return 1.0 + 1.0 / ((self.gamma - 1.0) * logmean(z2_l, z2_r))

    def __repr__(self):
        return f"IdealEos(gamma={self.gamma})"


class RyuEos(EosModel):
    """Ryu-Chattopadhyay-Choi EOS, h = 2 (6 theta^2 + 4 theta + 1) / (3 theta + 2)."""

    kind = "rc"

    def _e(self, theta):
        return 3.0 * theta * (3.0 * theta + 1.0) / (3.0 * theta + 2.0)

    def _ep(self, theta):
        return 3.0 * (9.0 * theta * theta + 12.0 * theta + 2.0) / (3.0 * theta + 2.0) ** 2

    def _entropy_theta(self, theta):
        return 1.5 * np.log(theta) + 1.5 * np.log(3.0 * theta + 2.0) - 3.0 / (3.0 * theta + 2.0)

    def ec_coefficient(self, z2_l, z2_r):
        zl = np.asarray(z2_l, dtype=float)
        zr = np.asarray(z2_r, dtype=float)
        return 1.0 + 3.0 / logmean(zl, zr) - 3.0 / logmean(2.0 * zl + 3.0, 2.0 * zr + 3.0)


class SokolovEos(EosModel):
    """Sokolov-Zhang-Sakai EOS, h = 2 theta + sqrt(1 + 4 theta^2)."""

    kind = "ip"

    def _e(self, theta):
        return theta - 1.0 + np.sqrt(1.0 + 4.0 * theta * theta)

    def _ep(self, theta):
        return 1.0 + 4.0 * theta / np.sqrt(1.0 + 4.0 * theta * theta)

    def _entropy_theta(self, theta):
        return np.log(theta) + 2.0 * np.log(2.0 * theta + np.sqrt(1.0 + 4.0 * theta * theta))

    def ec_coefficient(self, z2_l, z2_r):
        return _sqrt_family_ec_coefficient(z2_l, z2_r, slope=2.0, lead=1.0)


class TaubMathewsEos(EosModel):
    """Taub-Mathews EOS, h = 5/2 theta + sqrt(1 + 9/4 theta^2)."""

    kind = "tm"

    def _e(self, theta):
        return 1.5 * theta - 1.0 + np.sqrt(1.0 + 2.25 * theta * theta)

    def _ep(self, theta):
        return 1.5 + 2.25 * theta / np.sqrt(1.0 + 2.25 * theta * theta)

    def _entropy_theta(self, theta):
        return 1.5 * np.log(theta) + 1.5 * np.log(1.5 * theta + np.sqrt(1.0 + 2.25 * theta * theta))

    def ec_coefficient(self, z2_l, z2_r):
        return _sqrt_family_ec_coefficient(z2_l, z2_r, slope=1.5, lead=1.5)


def _sqrt_family_ec_coefficient(z2_l, z2_r, slope, lead):
    """Interface coefficient for EOSs with e = slope*theta - 1 + sqrt(1 + (slope*theta)^2).

    Written with u = slope/z2 and s = sqrt(1 + u^2) exclusively as a sum of
    positive terms: the difference A(s) - A(u) is evaluated through the
    identity s - u = 1/(s + u), which removes the catastrophic cancellation
    the raw closed form suffers for widely separated z2.
    """
    zl = np.asarray(z2_l, dtype=float)
    zr = np.asarray(z2_r, dtype=float)
    z_ln = logmean(zl, zr)  # validates both arguments
    ul, ur = slope / zl, slope / zr
    sl, sr = np.sqrt(1.0 + ul * ul), np.sqrt(1.0 + ur * ur)
    za, ua, sa = amean(zl, zr), amean(ul, ur), amean(sl, sr)
    su_sum = sa + ua
    su_diff = amean(1.0 / (sl + ul), 1.0 / (sr + ur))
    lus = logmean(ul + sl, ur + sr)
    return lead / z_ln + su_diff * su_sum / sa + slope * ua * su_sum / (za * sa * lus)


_EOS_BY_NAME = {
    "id": IdealEos,
    "rc": RyuEos,
    "ip": SokolovEos,
    "tm": TaubMathewsEos,
}


def make_eos(name, gamma=None):
    """Construct an EOS from its short name {"id", "rc", "ip", "tm"}.

    ``gamma`` applies only to the ideal gas and defaults to 5/3 there.
    """
    key = str(name).lower()
    if key not in _EOS_BY_NAME:
        raise DomainError(f"unknown EOS {name!r}; valid choices: {sorted(_EOS_BY_NAME)}")
    if key == "id":
        return IdealEos(5.0 / 3.0 if gamma is None else gamma)
    if gamma is not None:
        raise DomainError(f"EOS {key!r} takes no adiabatic index")
    return _EOS_BY_NAME[key]()
