"""Entropy accounting, error norms, and convergence rates."""

import numpy as np

from .grid_solver import total_interior_entropy
from .state import entropy_eta


class EntropyTrace:
    """Time series of (t, total entropy[, gamma_n]) appended step by step."""

    def __init__(self, with_gamma=False):
        self.t = []
        self.total = []
        self.gamma = [] if with_gamma else None

    def append(self, t, total, gamma=None):
        if self.t and t < self.t[-1]:
            raise ValueError("entropy trace must be appended monotonically in t")
        self.t.append(float(t))
        self.total.append(float(total))
        if self.gamma is not None:
            self.gamma.append(1.0 if gamma is None else float(gamma))

    def write_csv(self, path):
        with open(path, "w") as f:
            if self.gamma is None:
                f.write("t,total_entropy\n")
                for t, s in zip(self.t, self.total):
                    f.write(f"{t:.17g},{s:.17g}\n")
            else:
                f.write("t,total_entropy,gamma_n\n")
                for t, s, g in zip(self.t, self.total, self.gamma):
                    f.write(f"{t:.17g},{s:.17g},{g:.17g}\n")


def total_entropy(field):
    """Discrete total entropy of a field's interior cells."""
    return total_interior_entropy(field)


def total_entropy_prim(eos, V, cell_volume):
    """Same reduction from explicit primitive arrays; second route for tests."""
    return float(np.sum(entropy_eta(eos, V))) * cell_volume


def error_norms(numeric, exact, cell_volume):
    """Grid-weighted l1 and l2 error norms of a cell-sampled quantity."""
    e = np.abs(np.asarray(numeric, dtype=float) - np.asarray(exact, dtype=float))
    l1 = float(np.sum(e) * cell_volume)
    l2 = float(np.sqrt(np.sum(e * e) * cell_volume))
    return l1, l2


def convergence_rates(errors):
    """log2(e_N / e_2N) for successive halvings; NaN where undefined."""
    e = np.asarray(errors, dtype=float)
    out = []
    for a, b in zip(e[:-1], e[1:]):
        if a > 0.0 and b > 0.0:
            out.append(float(np.log2(a / b)))
        else:
            out.append(float("nan"))
    return out
