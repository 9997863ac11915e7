"""Batch driver: parse a run configuration, solve, and write artifacts.

Configurations are flat ``key=value`` text files; command-line tokens of the
same form override file entries.  A comma-separated ``nx`` list turns a run
into a grid-refinement study that also writes an errors/orders table.

Exit codes: 0 success, 2 configuration error, 3 recovery failure,
4 relaxation-solve failure.
"""

import argparse
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import cases as case_mod
from .diagnostics import EntropyTrace, error_norms, total_entropy_prim
from .errors import ConfigError, EsrhdError, RecoveryError, RelaxationError  # noqa: F401 (re-exported)
from .grid_solver import (
    SCHEME_GHOSTS,
    VALID_SCHEMES,
    Field,
    Grid,
    cfl_dt,
    entropy_inner_product,
    rhs,
    total_interior_entropy,
)
from .outputs import write_errors_table, write_solution_1d, write_solution_2d
from .reference_llf import LlfConfig, llf_solve
from .timeint import VALID_INTEGRATORS, rrk3_step, ssp_rk3_step

VALID_DISSIPATION = ("roe", "rusanov")
VALID_NON_ES = ("off",) + tuple(sorted(case_mod.NON_ES_VARIANTS))
_KEYS = (
    "case", "eos", "gamma", "scheme", "dissipation", "time_integrator", "cfl",
    "nx", "ny", "t_final", "dt_rule", "output_dir", "output_every",
    "reference", "non_es",
)


@dataclass
class RunConfig:
    """Validated description of one simulation run."""

    case: str
    eos: str = None
    gamma: float = None
    scheme: str = "es5"
    dissipation: str = "rusanov"
    time_integrator: str = "ssprk3"
    cfl: float = None
    nx_list: tuple = None
    ny: int = None
    t_final: float = None
    dt_rule: str = "cfl"
    dt_power: float = None
    output_dir: str = "out"
    output_every: int = 0
    reference: str = "off"
    non_es: str = "off"

    @property
    def sweep(self):
        return self.nx_list is not None and len(self.nx_list) > 1


def _parse_tokens(tokens):
    kv = {}
    for lineno, tok in tokens:
        if "=" not in tok:
            raise ConfigError(f"{lineno}: expected key=value, got {tok!r}")
        key, _, value = tok.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _KEYS:
            raise ConfigError(f"{lineno}: unknown config key {key!r}; valid keys: {', '.join(_KEYS)}")
        kv[key] = (lineno, value)
    return kv


def parse_config(path=None, overrides=()):
    """Build a RunConfig from an optional file plus key=value overrides."""
    tokens = []
    if path is not None:
        with open(path) as f:
            for i, line in enumerate(f, start=1):
                line = line.split("#", 1)[0].strip()
                if line:
                    tokens.append((f"{path}:{i}", line))
    tokens += [("<arg>", t) for t in overrides]
    kv = _parse_tokens(tokens)

    def pop(key, default=None):
        return kv.pop(key, (None, default))[1]

    def fail(key, where, msg):
        raise ConfigError(f"{where or key}: {msg}")

    case_id = pop("case")
    if case_id is None:
        raise ConfigError("missing required key 'case'")
    try:
        case = case_mod.get_case(case_id)
    except EsrhdError as exc:
        raise ConfigError(str(exc)) from exc

    cfg = RunConfig(case=case_id)
    cfg.eos = pop("eos", case.eos_name)
    gamma = pop("gamma")
    cfg.gamma = float(gamma) if gamma is not None else (case.gamma if cfg.eos == case.eos_name else None)
    cfg.scheme = pop("scheme", "es5")
    if cfg.scheme not in VALID_SCHEMES:
        raise ConfigError(f"invalid scheme {cfg.scheme!r}; valid: {list(VALID_SCHEMES)}")
    cfg.dissipation = pop("dissipation", "rusanov")
    if cfg.dissipation not in VALID_DISSIPATION:
        raise ConfigError(f"invalid dissipation {cfg.dissipation!r}; valid: {list(VALID_DISSIPATION)}")
    cfg.time_integrator = pop("time_integrator", "ssprk3")
    if cfg.time_integrator not in VALID_INTEGRATORS:
        raise ConfigError(f"invalid time_integrator {cfg.time_integrator!r}; valid: {list(VALID_INTEGRATORS)}")
    cfg.cfl = float(pop("cfl", case.cfl))
    if cfg.cfl <= 0:
        raise ConfigError("cfl must be positive")
    nx_raw = pop("nx")
    if nx_raw is not None:
        try:
            cfg.nx_list = tuple(int(s) for s in str(nx_raw).split(","))
        except ValueError as exc:
            raise ConfigError(f"invalid nx {nx_raw!r}") from exc
        if any(n <= 0 for n in cfg.nx_list):
            raise ConfigError("nx entries must be positive")
    else:
        cfg.nx_list = (case.nx,)
    ny_raw = pop("ny")
    # ny defaults to the case aspect ratio scaled to the chosen nx
    cfg.ny = int(ny_raw) if ny_raw is not None else None
    t_raw = pop("t_final")
    cfg.t_final = float(t_raw) if t_raw is not None else case.t_final
    rule = pop("dt_rule", "cfl")
    if rule == "cfl":
        cfg.dt_rule = "cfl"
    elif rule.startswith("power:"):
        cfg.dt_rule = "power"
        try:
            cfg.dt_power = float(rule.split(":", 1)[1])
        except ValueError as exc:
            raise ConfigError(f"invalid dt_rule {rule!r}") from exc
    else:
        raise ConfigError(f"invalid dt_rule {rule!r}; valid: 'cfl' or 'power:<s>'")
    cfg.output_dir = pop("output_dir", "out")
    cfg.output_every = int(pop("output_every", 0))
    cfg.reference = pop("reference", "off")
    if cfg.reference not in ("on", "off"):
        raise ConfigError(f"invalid reference {cfg.reference!r}; valid: ['on', 'off']")
    cfg.non_es = pop("non_es", "off")
    if cfg.non_es not in VALID_NON_ES:
        raise ConfigError(f"invalid non_es {cfg.non_es!r}; valid: {list(VALID_NON_ES)}")
    if cfg.non_es != "off" and cfg.scheme not in ("es4", "es5"):
        raise ConfigError("non_es variants modify an entropy-stable scheme; set scheme=es4 or es5")
    return cfg


class SimResult:
    def __init__(self, grid, field, V, trace, t_end, steps):
        self.grid = grid
        self.field = field
        self.V = V
        self.trace = trace
        self.t_end = t_end
        self.steps = steps


def simulate(cfg, nx=None, collect_trace=True, on_step=None):
    """March one configuration to its final time; returns a SimResult.

    ``on_step(field, t, step)`` is invoked after every accepted step (used
    by the driver for snapshot cadence).
    """
    case = case_mod.get_case(cfg.case)
    nx = nx if nx is not None else cfg.nx_list[0]
    ng = SCHEME_GHOSTS[cfg.scheme]
    if case.d == 1:
        grid = Grid(nx=nx, xlim=case.xlim, ng=ng)
    else:
        ny = cfg.ny if cfg.ny is not None else int(round(nx * case.ny / case.nx))
        grid = Grid(nx=nx, xlim=case.xlim, ny=ny, ylim=case.ylim, ng=ng)
    from .eos import make_eos

    eos = make_eos(cfg.eos, cfg.gamma)
    bc = case.make_bc(eos)
    if case.d == 1:
        V0 = case.sampler(grid.x_centers())
    else:
        X, Y = np.meshgrid(grid.x_centers(), grid.y_centers(), indexing="ij")
        V0 = case.sampler(X, Y)
    field = Field.from_primitives(grid, eos, bc, V0)

    non_es = case_mod.NON_ES_VARIANTS.get(cfg.non_es) if cfg.non_es != "off" else None
    use_rrk = cfg.time_integrator == "rrk3"
    trace = EntropyTrace(with_gamma=use_rrk) if collect_trace else None
    t = 0.0
    steps = 0

    t_final = cfg.t_final
    while True:
        V_now = field.recover()
        if trace is not None:
            trace.append(t, total_entropy_prim(field.eos, field.interior_prim(V_now), grid.cell_volume),
                         gamma_n if steps else None)
        if t >= t_final * (1.0 - 1.0e-12) or t_final == 0.0:
            break
        if cfg.dt_rule == "power":
            dt = cfg.cfl * grid.dx**cfg.dt_power
        else:
            dt = cfl_dt(field, cfg.cfl, V=V_now)
        dt = min(dt, t_final - t)

        time_now = t
        u_start = field.U

        def tendency(u):
            saved = field.U
            field.U = u
            try:
                V = V_now if u is u_start else None
                return rhs(field, cfg.scheme, cfg.dissipation, t=time_now, non_es=non_es, V=V)
            finally:
                field.U = saved

        if use_rrk:
            def entropy_of(u):
                saved = field.U
                field.U = u
                try:
                    return total_interior_entropy(field)
                finally:
                    field.U = saved

            def inner_of(u, du):
                saved = field.U
                field.U = u
                try:
                    return entropy_inner_product(field, du)
                finally:
                    field.U = saved

            # the relaxation root can leave [0.5, 1.5] on strongly shocked
            # steps; the solver's own advice applies: retry with smaller dt
            attempt = dt
            for _ in range(12):
                try:
                    field.U, gamma_n = rrk3_step(field.U, tendency, attempt, entropy_of, inner_of)
                    break
                except RelaxationError:
                    attempt *= 0.5
            else:
                raise RelaxationError(
                    f"no admissible relaxation parameter at t={t:.6g} even after dt reduction"
                )
            t += gamma_n * attempt
        else:
            gamma_n = None
            field.U = ssp_rk3_step(field.U, tendency, dt)
            t += dt
        steps += 1
        if on_step is not None:
            on_step(field, t, steps)

    V = field.interior_prim()
    return SimResult(grid, field, V, trace, t, steps)


def _case_eos(cfg):
    from .eos import make_eos

    return make_eos(cfg.eos, cfg.gamma)


def run(cfg):
    """Execute a configuration and write its artifacts; returns output paths."""
    case = case_mod.get_case(cfg.case)
    os.makedirs(cfg.output_dir, exist_ok=True)
    written = {}

    if cfg.sweep:
        if case.exact is None:
            raise ConfigError(f"case {case.id!r} has no exact solution for an accuracy sweep")
        l1s, l2s = [], []
        for n in cfg.nx_list:
            res = simulate(cfg, nx=n, collect_trace=False)
            if case.d == 1:
                exact = case.exact(res.grid.x_centers(), res.t_end)
            else:
                X, Y = np.meshgrid(res.grid.x_centers(), res.grid.y_centers(), indexing="ij")
                exact = case.exact(X, Y, res.t_end)
            l1, l2 = error_norms(res.V.rho, exact.rho, res.grid.cell_volume)
            l1s.append(l1)
            l2s.append(l2)
            path = os.path.join(cfg.output_dir, f"solution_N{n}.csv")
            _write_solution(path, res, case, cfg)
            written[f"solution_N{n}"] = path
        path = os.path.join(cfg.output_dir, "errors.csv")
        write_errors_table(path, cfg.nx_list, l1s, l2s)
        written["errors"] = path
        return written

    on_step = None
    if cfg.output_every > 0:
        def on_step(field, t, step):
            if step % cfg.output_every == 0:
                path = os.path.join(cfg.output_dir, f"solution_step{step:06d}.csv")
                Vi = field.interior_prim()
                if case.d == 1:
                    write_solution_1d(path, field.grid, field.eos, Vi)
                else:
                    write_solution_2d(path, field.grid, Vi)
                written[f"solution_step{step:06d}"] = path

    res = simulate(cfg, on_step=on_step)
    sol_path = os.path.join(cfg.output_dir, "solution.csv")
    _write_solution(sol_path, res, case, cfg)
    written["solution"] = sol_path
    trace_path = os.path.join(cfg.output_dir, "entropy.csv")
    res.trace.write_csv(trace_path)
    written["entropy"] = trace_path
    if cfg.reference == "on":
        if case.reference != "llf":
            raise ConfigError(f"case {case.id!r} has no LLF reference policy")
        ref_path = os.path.join(cfg.output_dir, "reference.csv")
        llf_solve(case, LlfConfig(resolution=10 * case.nx), output_path=ref_path, t_final=cfg.t_final)
        written["reference"] = ref_path
    return written


def _write_solution(path, res, case, cfg):
    if case.d == 1:
        write_solution_1d(path, res.grid, _case_eos(cfg), res.V)
    else:
        write_solution_2d(path, res.grid, res.V)


def compare(config_paths, overrides=(), output_dir=None):
    """Run several configurations side by side under one output directory."""
    labels = []
    for i, path in enumerate(config_paths):
        cfg = parse_config(path, overrides)
        base = output_dir or cfg.output_dir
        label = f"{i:02d}_{cfg.scheme}" + ("" if cfg.non_es == "off" else f"_non_es_{cfg.non_es}")
        cfg.output_dir = os.path.join(base, label)
        written = run(cfg)
        labels.append((label, cfg, written))
    base = output_dir or labels[0][1].output_dir.rsplit(os.sep, 1)[0]
    manifest = os.path.join(base, "compare.csv")
    with open(manifest, "w") as f:
        f.write("label,case,scheme,non_es,outputs\n")
        for label, cfg, written in labels:
            f.write(f"{label},{cfg.case},{cfg.scheme},{cfg.non_es},{';'.join(sorted(written.values()))}\n")
    return manifest


def main(argv=None):
    parser = argparse.ArgumentParser(prog="esrhd", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run one configuration")
    p_run.add_argument("config", nargs="?", help="key=value config file")
    p_run.add_argument("overrides", nargs="*", help="key=value overrides")
    p_cmp = sub.add_parser("compare", help="run several configurations side by side")
    p_cmp.add_argument("configs", nargs="+", help="config files")
    p_cmp.add_argument("--output-dir", default=None)
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            cfg = parse_config(args.config or None, tuple(args.overrides))
            written = run(cfg)
            for name, path in sorted(written.items()):
                print(f"{name}: {path}")
        else:
            manifest = compare(tuple(args.configs), output_dir=args.output_dir)
            print(f"manifest: {manifest}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except RecoveryError as exc:
        print(f"recovery failure: {exc}", file=sys.stderr)
        return 3
    except RelaxationError as exc:
        print(f"relaxation failure: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
