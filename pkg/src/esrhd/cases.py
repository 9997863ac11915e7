"""Catalog of benchmark problems: initial data, boundaries, EOS, final times.

Discontinuous data are sampled pointwise at cell centers; at a jump located
at x_c the left state applies for x < x_c and the right state for x >= x_c.
Every sampler returns admissible states everywhere on its domain.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .eos import IdealEos, make_eos
from .grid_solver import BoundarySpec
from .state import Prim

#: time-periodic coefficients (amplitude, frequency, phase) of the
#: non-entropy-stable comparison fluxes
NON_ES_VARIANTS = {"rf": (3.0 / 5.0, 50.0, 0.0), "rp3": (6.0 / 5.0, 7.6, 0.1)}


@dataclass(frozen=True)
class CaseSpec:
    """Declarative description of one benchmark problem."""

    id: str
    d: int
    xlim: tuple
    nx: int
    sampler: callable  # (x[, y]) -> Prim
    bc_factory: callable  # (eos) -> BoundarySpec
    eos_name: str
    t_final: float
    ylim: tuple = None
    ny: int = None
    gamma: float = None
    cfl: float = 0.4
    exact: callable = None  # (x[, y], t) -> Prim, when known
    reference: str = "none"  # one of {"exact", "llf", "none"}

    def make_eos(self):
        return make_eos(self.eos_name, self.gamma)

    def make_bc(self, eos):
        return self.bc_factory(eos)


def _const(x, value):
    return np.full_like(np.asarray(x, dtype=float), value)


# --- 1D smooth translation wave -------------------------------------------

def _smooth1d(x, t=0.0):
    rho = 1.0 + 0.2 * np.sin(x - 0.2 * t)
    return Prim(rho=rho, v=(_const(x, 0.2),), p=_const(x, 1.0))


# --- isentropic pulse -------------------------------------------------------

ISENTROPIC_GAMMA = 5.0 / 3.0
ISENTROPIC_K = 100.0
ISENTROPIC_L = 0.3


def isentropic_velocity(gamma, rho, K):
    """Velocity that keeps the left Riemann invariant constant.

    The invariant J- = atanh(v) - B(c_s), with
    B(c) = ln((sqrt(gamma-1)+c)/(sqrt(gamma-1)-c)) / sqrt(gamma-1),
    is pinned to its value at the background state rho = 1; solving for v
    gives v = tanh(B(c_s) - B(c_s0)) exactly.
    """
    if not (1.0 < gamma <= 2.0) or K <= 0.0:
        raise DomainError("need 1 < gamma <= 2 and K > 0")
    eos = IdealEos(gamma)
    rho = np.asarray(rho, dtype=float)
    sq = math.sqrt(gamma - 1.0)

    def b_of_cs(theta):
        cs = np.sqrt(eos.sound_speed_sq(theta))
        return np.log((sq + cs) / (sq - cs)) / sq

    theta = K * rho ** (gamma - 1.0)
    v = np.tanh(b_of_cs(theta) - b_of_cs(K))
    if np.any(np.abs(v) >= 1.0):
        raise DomainError("isentropic velocity reached the speed of light")
    return v


def _isentropic(x):
    x = np.asarray(x, dtype=float)
    inside = np.abs(x) < ISENTROPIC_L
    shape = np.zeros_like(x)
    xi = x[inside] / ISENTROPIC_L
    shape[inside] = np.exp(-1.0 / (1.0 - xi * xi))
    rho = 1.0 + shape
    p = ISENTROPIC_K * rho**ISENTROPIC_GAMMA
    v = isentropic_velocity(ISENTROPIC_GAMMA, rho, ISENTROPIC_K)
    return Prim(rho=rho, v=(v,), p=p)


# --- discontinuous 1D cases -------------------------------------------------

def _two_state(x, x_c, left, right):
    x = np.asarray(x, dtype=float)
    sel = x < x_c
    rho = np.where(sel, left[0], right[0])
    v1 = np.where(sel, left[1], right[1])
    p = np.where(sel, left[2], right[2])
    return Prim(rho=rho, v=(v1,), p=p)


def _density_pert(x):
    x = np.asarray(x, dtype=float)
    sel = x < 0.5
    rho = np.where(sel, 5.0, 2.0 + 0.3 * np.sin(50.0 * x))
    p = np.where(sel, 50.0, 5.0)
    return Prim(rho=rho, v=(np.zeros_like(x),), p=p)


def _blast(x):
    x = np.asarray(x, dtype=float)
    p = np.where(x < 0.1, 1.0e3, np.where(x < 0.9, 1.0e-2, 1.0e2))
    return Prim(rho=np.ones_like(x), v=(np.zeros_like(x),), p=p)


# --- 2D cases ---------------------------------------------------------------

def _smooth2d(x, y, t=0.0):
    rho = 1.0 + 0.2 * np.sin(x + y - 0.4 * t)
    z = np.zeros_like(rho)
    return Prim(rho=rho, v=(z + 0.2, z + 0.2), p=z + 1.0)


def _quadrants(x, y, q1, q2, q3, q4):
    """States by quadrant around (0.5, 0.5): q1 top-right, q2 top-left,
    q3 bottom-left, q4 bottom-right."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = []
    for i in range(4):
        tr, tl, bl, br = q1[i], q2[i], q3[i], q4[i]
        val = np.where(
            x >= 0.5, np.where(y >= 0.5, tr, br), np.where(y >= 0.5, tl, bl)
        )
        out.append(val)
    return Prim(rho=out[0], v=(out[1], out[2]), p=out[3])


def _rp2d_1(x, y):
    return _quadrants(
        x, y,
        (0.5, 0.5, -0.5, 5.0),
        (1.0, 0.5, 0.5, 5.0),
        (3.0, -0.5, 0.5, 5.0),
        (1.5, -0.5, -0.5, 5.0),
    )


def _rp2d_2(x, y):
    return _quadrants(
        x, y,
        (1.0, 0.0, 0.0, 1.0),
        (0.5771, -0.3529, 0.0, 0.4),
        (1.0, -0.3529, -0.3529, 1.0),
        (0.5771, 0.0, -0.3529, 0.4),
    )


def _rp2d_3(x, y):
    return _quadrants(
        x, y,
        (0.035145216124503, 0.0, 0.0, 0.162931056509027),
        (0.1, 0.7, 0.0, 1.0),
        (0.5, 0.0, 0.0, 1.0),
        (0.1, 0.0, 0.7, 1.0),
    )


SHOCK_BUBBLE_RIGHT = (1.941272902134272, (-0.200661045980881, 0.0), 0.15)


def _shock_bubble(x, y, rho_bubble):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    rho = np.where(x < 265.0, 1.0, SHOCK_BUBBLE_RIGHT[0])
    v1 = np.where(x < 265.0, 0.0, SHOCK_BUBBLE_RIGHT[1][0])
    v2 = np.zeros_like(rho)
    p = np.where(x < 265.0, 0.05, SHOCK_BUBBLE_RIGHT[2])
    in_bubble = np.sqrt((x - 215.0) ** 2 + (y - 45.0) ** 2) <= 25.0
    rho = np.where(in_bubble, rho_bubble, rho)
    v1 = np.where(in_bubble, 0.0, v1)
    p = np.where(in_bubble, 0.05, p)
    return Prim(rho=rho, v=(v1, v2), p=p)


def _shock_bubble_bc(eos):
    return BoundarySpec(
        left="outflow",
        right="inflow",
        bottom="reflective",
        top="reflective",
        inflow_states={"right": SHOCK_BUBBLE_RIGHT},
    )


def non_es_flux(variant, t, ec_flux, diss_matrix, w_jump):
    """Comparison flux F - c(t) D [[W]] with a time-periodic coefficient.

    variant "rf" uses (3/5) sin(50 t); variant "rp3" uses (6/5) sin(7.6 t + 0.1).
    """
    if variant not in NON_ES_VARIANTS:
        raise DomainError(f"unknown non-ES variant {variant!r}; valid: {sorted(NON_ES_VARIANTS)}")
    amp, freq, phase = NON_ES_VARIANTS[variant]
    coef = amp * math.sin(freq * t + phase)
    return ec_flux - coef * np.einsum("...ij,...j->...i", diss_matrix, w_jump)


def catalog():
    """All benchmark cases keyed by id."""
    cases = [
        CaseSpec(
            id="smooth1d", d=1, xlim=(0.0, 2.0 * math.pi), nx=100,
            sampler=_smooth1d, exact=_smooth1d,
            bc_factory=lambda eos: BoundarySpec.periodic(1),
            eos_name="tm", t_final=1.5, reference="exact",
        ),
        CaseSpec(
            id="isentropic", d=1, xlim=(-0.4, 2.0), nx=200,
            sampler=_isentropic,
            bc_factory=lambda eos: BoundarySpec.periodic(1),
            eos_name="id", gamma=ISENTROPIC_GAMMA, t_final=0.8, cfl=0.2,
        ),
        CaseSpec(
            id="density_pert", d=1, xlim=(0.0, 1.0), nx=400,
            sampler=_density_pert,
            bc_factory=lambda eos: BoundarySpec.outflow(1),
            eos_name="rc", t_final=0.376, reference="llf",
        ),
        CaseSpec(
            id="blast", d=1, xlim=(0.0, 1.0), nx=4000,
            sampler=_blast,
            bc_factory=lambda eos: BoundarySpec.outflow(1),
            eos_name="tm", t_final=0.43, reference="llf",
        ),
        CaseSpec(
            id="rp1", d=1, xlim=(0.0, 1.0), nx=400,
            sampler=lambda x: _two_state(x, 0.5, (10.0, 0.0, 40.0 / 3.0), (1.0, 0.0, 1.0e-6)),
            bc_factory=lambda eos: BoundarySpec.outflow(1),
            eos_name="rc", t_final=0.4, cfl=0.1, reference="llf",
        ),
        CaseSpec(
            id="rp2", d=1, xlim=(0.0, 1.0), nx=400,
            sampler=lambda x: _two_state(x, 0.5, (1.0, 0.0, 1.0e3), (1.0, 0.0, 1.0e-2)),
            bc_factory=lambda eos: BoundarySpec.outflow(1),
            eos_name="tm", t_final=0.4, reference="llf",
        ),
        CaseSpec(
            id="rp3", d=1, xlim=(0.0, 1.0), nx=400,
            sampler=lambda x: _two_state(x, 0.5, (1.0, 0.9, 1.0), (1.0, 0.0, 10.0)),
            bc_factory=lambda eos: BoundarySpec.outflow(1),
            eos_name="rc", t_final=0.4, reference="llf",
        ),
        CaseSpec(
            id="rp4", d=1, xlim=(0.0, 1.0), nx=400,
            sampler=lambda x: _two_state(x, 0.5, (1.0, -0.7, 20.0), (1.0, 0.7, 20.0)),
            bc_factory=lambda eos: BoundarySpec.outflow(1),
            eos_name="ip", t_final=0.4, reference="llf",
        ),
        CaseSpec(
            id="smooth2d", d=2, xlim=(0.0, 2.0 * math.pi), ylim=(0.0, 2.0 * math.pi),
            nx=40, ny=40,
            sampler=_smooth2d, exact=_smooth2d,
            bc_factory=lambda eos: BoundarySpec.periodic(2),
            eos_name="rc", t_final=0.1, reference="exact",
        ),
        CaseSpec(
            id="rp2d_1", d=2, xlim=(0.0, 1.0), ylim=(0.0, 1.0), nx=400, ny=400,
            sampler=_rp2d_1,
            bc_factory=lambda eos: BoundarySpec.outflow(2),
            eos_name="ip", t_final=0.4,
        ),
        CaseSpec(
            id="rp2d_2", d=2, xlim=(0.0, 1.0), ylim=(0.0, 1.0), nx=400, ny=400,
            sampler=_rp2d_2,
            bc_factory=lambda eos: BoundarySpec.outflow(2),
            eos_name="tm", t_final=0.4,
        ),
        CaseSpec(
            id="rp2d_3", d=2, xlim=(0.0, 1.0), ylim=(0.0, 1.0), nx=400, ny=400,
            sampler=_rp2d_3,
            bc_factory=lambda eos: BoundarySpec.outflow(2),
            eos_name="rc", t_final=0.4,
        ),
        CaseSpec(
            id="shock_bubble_light", d=2, xlim=(0.0, 325.0), ylim=(0.0, 90.0),
            nx=650, ny=180,
            sampler=lambda x, y: _shock_bubble(x, y, 0.1358),
            bc_factory=_shock_bubble_bc,
            eos_name="rc", t_final=450.0,
        ),
        CaseSpec(
            id="shock_bubble_heavy", d=2, xlim=(0.0, 325.0), ylim=(0.0, 90.0),
            nx=650, ny=180,
            sampler=lambda x, y: _shock_bubble(x, y, 3.1538),
            bc_factory=_shock_bubble_bc,
            eos_name="rc", t_final=450.0,
        ),
    ]
    return {c.id: c for c in cases}


def get_case(case_id):
    cases = catalog()
    if case_id not in cases:
        raise DomainError(f"unknown case {case_id!r}; valid: {sorted(cases)}")
    return cases[case_id]
