"""CSV writers with the fixed output schemas of the batch driver.

Headers and column order are stable; values carry 17 significant digits so
runs are reproducible bit for bit.
"""

import numpy as np

from .state import prim_to_cons


def write_solution_1d(path, grid, eos, V):
    """1D snapshot: x,rho,v1,p,D,m1,E over interior cells."""
    U = prim_to_cons(eos, V)
    x = grid.x_centers()
    cols = [x, V.rho, V.v[0], V.p, U.D, U.m[0], U.E]
    with open(path, "w") as f:
        f.write("x,rho,v1,p,D,m1,E\n")
        for row in zip(*cols):
            f.write(",".join(f"{float(c):.17g}" for c in row) + "\n")


def write_solution_2d(path, grid, V):
    """2D snapshot: x,y,rho,v1,v2,p, row-major over (j, i)."""
    x = grid.x_centers()
    y = grid.y_centers()
    with open(path, "w") as f:
        f.write("x,y,rho,v1,v2,p\n")
        for j in range(grid.ny):
            for i in range(grid.nx):
                vals = (x[i], y[j], V.rho[i, j], V.v[0][i, j], V.v[1][i, j], V.p[i, j])
                f.write(",".join(f"{float(c):.17g}" for c in vals) + "\n")


def write_errors_table(path, ns, l1, l2):
    """Accuracy study table: N,l1,l1_order,l2,l2_order."""
    with open(path, "w") as f:
        f.write("N,l1,l1_order,l2,l2_order\n")
        for i, n in enumerate(ns):
            o1 = "" if i == 0 else f"{np.log2(l1[i - 1] / l1[i]):.4f}"
            o2 = "" if i == 0 else f"{np.log2(l2[i - 1] / l2[i]):.4f}"
            f.write(f"{n},{l1[i]:.17g},{o1},{l2[i]:.17g},{o2}\n")
