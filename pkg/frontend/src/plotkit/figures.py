"""Renderers for the solver's CSV outputs.

Four figure kinds cover the standard result plots:

  * profile   -- 1D solution overlays: reference as a solid line, scheme
                 outputs as markers;
  * entropy   -- total-entropy traces over time;
  * contour   -- 30 equally spaced contour lines of ln(field) on a 2D grid;
  * schlieren -- exponentially mapped normalized density-gradient images.

These scripts are read-only consumers of solver outputs: they never modify
their inputs.
"""

import csv

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

CONTOUR_LEVEL_COUNT = 30
SCHLIEREN_SHARPNESS = 15.0

REQUIRED_COLUMNS = {
    "profile": ("x",),
    "entropy": ("t", "total_entropy"),
    "contour": ("x", "y"),
    "schlieren": ("x", "y", "rho"),
}


class SchemaError(ValueError):
    """An input file does not carry the columns its figure kind needs."""


def load_csv(path):
    """Read a solver CSV into a dict of named float columns."""
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        rows = [row for row in reader if row]
    cols = {name: np.array([float(r[i]) for r in rows]) for i, name in enumerate(header)}
    return cols


def require_columns(cols, names, path):
    for name in names:
        if name not in cols:
            raise SchemaError(f"{path}: missing required column {name!r}")


def _to_grid(cols, field):
    """Reshape flat 2D output (row-major over y) onto an (nx, ny) grid."""
    x = np.unique(cols["x"])
    y = np.unique(cols["y"])
    nx, ny = x.size, y.size
    if nx * ny != cols[field].size:
        raise SchemaError(f"2D input is not a full tensor grid ({nx} x {ny} vs {cols[field].size} rows)")
    grid = cols[field].reshape(ny, nx).T  # rows iterate y, x fastest
    return x, y, grid


def contour_levels(values, count=CONTOUR_LEVEL_COUNT):
    """Equally spaced levels between the data minimum and maximum."""
    lo = float(np.min(values))
    hi = float(np.max(values))
    if lo == hi:
        hi = lo + 1.0
    return np.linspace(lo, hi, count)


def schlieren_image(density, dx=1.0, dy=1.0, sharpness=SCHLIEREN_SHARPNESS):
    """exp(-k |grad rho| / max |grad rho|): bright where the flow is smooth."""
    gx, gy = np.gradient(density, dx, dy)
    mag = np.hypot(gx, gy)
    peak = float(mag.max())
    if peak == 0.0:
        return np.ones_like(mag)
    return np.exp(-sharpness * mag / peak)


def render_profile(inputs, output, field="rho", reference=None, title=None):
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    if reference is not None:
        cols = load_csv(reference)
        require_columns(cols, ("x", field), reference)
        ax.plot(cols["x"], cols[field], "-", color="black", lw=1.0, label="reference")
    markers = ["o", "s", "^", "d", "v"]
    for i, path in enumerate(inputs):
        cols = load_csv(path)
        require_columns(cols, ("x", field), path)
        ax.plot(
            cols["x"], cols[field], markers[i % len(markers)],
            ms=3.0, mfc="none", label=str(path),
        )
    ax.set_xlabel("x")
    ax.set_ylabel(field)
    if title:
        ax.set_title(title)
    ax.legend(fontsize=7)
    fig.savefig(output, dpi=150)
    plt.close(fig)
    return output


def render_entropy(inputs, output, title=None):
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    for path in inputs:
        cols = load_csv(path)
        require_columns(cols, REQUIRED_COLUMNS["entropy"], path)
        ax.plot(cols["t"], cols["total_entropy"], lw=1.2, label=str(path))
    ax.set_xlabel("t")
    ax.set_ylabel("total entropy")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=7)
    fig.savefig(output, dpi=150)
    plt.close(fig)
    return output


def render_contour(inputs, output, field="rho", title=None):
    fig, axes = plt.subplots(1, len(inputs), figsize=(5.5 * len(inputs), 4.8), squeeze=False)
    for ax, path in zip(axes[0], inputs):
        cols = load_csv(path)
        require_columns(cols, ("x", "y", field), path)
        x, y, grid = _to_grid(cols, field)
        data = np.log(grid)
        ax.contour(x, y, data.T, levels=contour_levels(data), linewidths=0.5, colors="black")
        ax.set_aspect("equal")
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        ax.set_title(f"ln {field}: {path}", fontsize=8)
    if title:
        fig.suptitle(title)
    fig.savefig(output, dpi=150)
    plt.close(fig)
    return output


def render_schlieren(inputs, output, title=None):
    fig, axes = plt.subplots(len(inputs), 1, figsize=(7.5, 2.4 * len(inputs)), squeeze=False)
    for ax, path in zip(axes[:, 0], inputs):
        cols = load_csv(path)
        require_columns(cols, REQUIRED_COLUMNS["schlieren"], path)
        x, y, rho = _to_grid(cols, "rho")
        dx = x[1] - x[0] if x.size > 1 else 1.0
        dy = y[1] - y[0] if y.size > 1 else 1.0
        img = schlieren_image(rho, dx, dy)
        ax.imshow(
            img.T, origin="lower", cmap="gray",
            extent=(x[0], x[-1], y[0], y[-1]), aspect="equal",
            vmin=0.0, vmax=1.0,
        )
        ax.set_title(str(path), fontsize=8)
    if title:
        fig.suptitle(title)
    fig.savefig(output, dpi=150)
    plt.close(fig)
    return output


RENDERERS = {
    "profile": render_profile,
    "entropy": render_entropy,
    "contour": render_contour,
    "schlieren": render_schlieren,
}
