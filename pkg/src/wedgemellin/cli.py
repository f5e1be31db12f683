"""Command-line entry point.

Subcommands: norms, solve, spectrum, mellin-selftest, convergence.
Configuration may come from a flat JSON file (--config); explicit flags
override file keys.  Exit codes: 0 success, 2 configuration error,
3 inadmissible Poisson parameters, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

# honor the thread-count env var before numpy spins up its pools
_THREADS = os.environ.get("WEDGEMELLIN_THREADS")
if _THREADS:
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(var, _THREADS)

import numpy as np

from .errors import (AdmissibilityError, ConfigError, SchemaError,
                     WedgeMellinError)
from .fields import GridField, builtin_test_family, make_grid, sample, SeparableField, gaussian_bump, sine_mode, plateau_window, FieldSum
from .geometry import ResolutionOfUnity, WedgeParams
from .mellin import mellin_forward, mellin_inverse, multiplier_check, parseval_check
from .norms import SpaceParams, equivalence_report, write_equivalence_csv
from .wedge_poisson import (PoissonParams, admissible, dirichlet_spectrum,
                            solve_poisson)

_DEFAULTS = {
    "kappa": math.pi,
    "gamma": 1,
    "p": 2.0,
    "Theta": 2.5,
    "theta": 2.0,
    "s_min": -12.0,
    "s_max": 12.0,
    "n_s": 512,
    "n_phi": 48,
    "n_modes": 24,
    "field": "builtin",
    "f_csv": None,
    "output_dir": ".",
    "seed": 0,
    "levels": 3,
}

_NUMERIC_KEYS = {"kappa", "gamma", "p", "Theta", "theta", "s_min", "s_max",
                 "n_s", "n_phi", "n_modes", "seed", "levels"}
_INT_KEYS = {"gamma", "n_s", "n_phi", "n_modes", "seed", "levels"}


@dataclass
class RunConfig:
    """Validated flat configuration for one CLI invocation."""

    values: dict = field(default_factory=dict)

    def __getattr__(self, key):
        try:
            return self.values[key]
        except KeyError as exc:
            raise AttributeError(key) from exc

    @classmethod
    def build(cls, args: argparse.Namespace) -> "RunConfig":
        merged = dict(_DEFAULTS)
        if args.config:
            try:
                text = Path(args.config).read_text()
            except OSError as exc:
                raise ConfigError(f"config: cannot read {args.config}: {exc}") from exc
            try:
                loaded = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config: invalid JSON in {args.config}: {exc}") from exc
            if not isinstance(loaded, dict):
                raise ConfigError("config: top level must be a JSON object")
            for key, val in loaded.items():
                if key not in _DEFAULTS:
                    raise ConfigError(f"config: unknown key {key!r}")
                merged[key] = val
        for key in _DEFAULTS:
            flag = getattr(args, key, None)
            if flag is not None:
                merged[key] = flag
        cfg = cls(merged)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        v = self.values
        for key in _NUMERIC_KEYS:
            if key in ("seed", "levels") and v[key] is None:
                continue
            try:
                v[key] = int(v[key]) if key in _INT_KEYS else float(v[key])
            except (TypeError, ValueError):
                raise ConfigError(f"{key}: expected a number, got {v[key]!r}")
        if not (0.0 < v["kappa"] < 2.0 * math.pi):
            raise ConfigError(f"kappa: must lie in (0, 2*pi), got {v['kappa']}")
        if v["gamma"] not in (0, 1, 2):
            raise ConfigError(f"gamma: must be 0, 1 or 2, got {v['gamma']}")
        if v["p"] <= 1.0:
            raise ConfigError(f"p: must exceed 1, got {v['p']}")
        if v["s_min"] >= v["s_max"]:
            raise ConfigError("s_min: must be below s_max")
        if v["n_s"] < 8 or v["n_s"] & (v["n_s"] - 1):
            raise ConfigError(f"n_s: must be a power of two >= 8, got {v['n_s']}")
        if v["n_phi"] < 2:
            raise ConfigError(f"n_phi: must be at least 2, got {v['n_phi']}")
        if v["n_modes"] < 1:
            raise ConfigError(f"n_modes: must be positive, got {v['n_modes']}")
        if v["levels"] < 1:
            raise ConfigError(f"levels: must be positive, got {v['levels']}")
        if v["field"] not in ("builtin", "sep1", "sep2", "sep3", "corner",
                              "offaxis", "manufactured"):
            raise ConfigError(f"field: unknown selection {v['field']!r}")

    def wedge(self) -> WedgeParams:
        return WedgeParams(self.kappa)

    def grid(self, n_s=None, n_phi=None):
        return make_grid(self.s_min, self.s_max, n_s or self.n_s,
                         n_phi or self.n_phi, self.wedge())

    def out_path(self, name: str) -> Path:
        out = Path(self.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        return out / name


def _manufactured_pair(wedge: WedgeParams):
    """Band-limited exact solution eta(s) sin(pi phi/kappa) and its Laplacian."""
    radial = gaussian_bump(0.0, 1.0)
    freq2 = (math.pi / wedge.kappa) ** 2
    u_star = SeparableField("u_star", radial, sine_mode(1, wedge))
    rad = lambda s, o=0: np.exp(-2.0 * np.asarray(s, float)) * (
        radial(s, 2) - freq2 * radial(s, 0))
    f = SeparableField("laplacian_u_star", rad, sine_mode(1, wedge), max_order=0)
    return u_star, f


def _convergence_pair(wedge: WedgeParams):
    """Exact solution with an angular plateau bump, so each refinement level
    leaves genuine unresolved sine content and the error visibly shrinks."""
    radial = gaussian_bump(0.0, 0.9)
    k = wedge.kappa
    angular = plateau_window(0.3 * k, 0.55 * k, 0.2 * k)
    u_star = SeparableField("u_star", radial, angular)
    rad2 = lambda s, o=0: np.exp(-2.0 * np.asarray(s, float)) * radial(s, 2)
    rad0 = lambda s, o=0: np.exp(-2.0 * np.asarray(s, float)) * radial(s, 0)
    ang2 = lambda phi, o=0: angular(phi, 2)
    f = FieldSum([(1.0, SeparableField("fr", rad2, angular, max_order=0)),
                  (1.0, SeparableField("fa", rad0, ang2, max_order=0))],
                 name="laplacian_u_star")
    return u_star, f


def _select_fields(cfg: RunConfig, wedge: WedgeParams):
    family = builtin_test_family(wedge)
    if cfg.field == "builtin":
        return family
    chosen = [f for f in family if f.name == cfg.field]
    if not chosen:
        raise ConfigError(f"field: {cfg.field!r} not in the builtin family")
    return chosen


def cmd_norms(cfg: RunConfig) -> int:
    wedge = cfg.wedge()
    family = _select_fields(cfg, wedge)
    sp = SpaceParams(cfg.gamma, cfg.p, cfg.Theta, cfg.theta)
    grid = cfg.grid()
    reports, summary = equivalence_report(family, sp, grid)
    path = cfg.out_path("norms_equivalence.csv")
    write_equivalence_csv(path, reports, seed=cfg.seed)
    print(f"wrote {path}")
    for key, spread in summary.items():
        print(f"  {key}: [{spread['min']:.6g}, {spread['max']:.6g}]")
    return 0


def cmd_solve(cfg: RunConfig) -> int:
    wedge = cfg.wedge()
    grid = cfg.grid()
    pp = PoissonParams(wedge, cfg.Theta, cfg.theta, grid, gamma=cfg.gamma,
                       n_modes=cfg.n_modes)
    verdict = admissible(pp)
    if not verdict.ok:
        raise AdmissibilityError(verdict.reason)
    if cfg.f_csv:
        f = GridField.load_csv(cfg.f_csv)
        if (f.grid.n_s, f.grid.n_phi) != (grid.n_s, grid.n_phi):
            raise ConfigError("f_csv: grid does not match the configured grid")
        f = GridField(grid, f.values)
    elif cfg.field == "manufactured":
        _, f = _manufactured_pair(wedge)
    else:
        f = _select_fields(cfg, wedge)[0]
    u, report = solve_poisson(f, pp)
    sol_path = cfg.out_path("solution.csv")
    u.save_csv(sol_path)
    rep_path = cfg.out_path("solve_report.json")
    rep_path.write_text(report.to_json() + "\n")
    print(f"wrote {sol_path} and {rep_path}")
    print(f"  residual={report.residual:.3e} apriori={report.apriori_ratio:.4f}")
    return 0


def cmd_spectrum(cfg: RunConfig) -> int:
    wedge = cfg.wedge()
    eigs = dirichlet_spectrum(wedge, cfg.n_modes)
    path = cfg.out_path("spectrum.csv")
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n", "eigenvalue"])
        for n, ev in enumerate(eigs, start=1):
            writer.writerow([n, repr(float(ev))])
    print(f"wrote {path}")
    return 0


def cmd_mellin_selftest(cfg: RunConfig) -> int:
    wedge = cfg.wedge()
    grid = cfg.grid()
    bump = gaussian_bump(0.0, 1.0)
    vals = np.broadcast_to(bump(grid.s_nodes)[:, None],
                           (grid.n_s, grid.n_phi)).astype(complex).copy()
    gf = GridField(grid, vals)
    mf = mellin_forward(gf, -0.5)
    back = mellin_inverse(mf)
    roundtrip = float(np.linalg.norm(back.values - vals) / np.linalg.norm(vals))
    _, _, gap = parseval_check(lambda r: bump(np.log(r)), lambda r: bump(np.log(r)),
                               0.25, grid)
    dev = multiplier_check(lambda r: bump(np.log(r)), 0.0, grid,
                           du=lambda r: bump(np.log(r), 1))
    payload = {"roundtrip": roundtrip, "parseval": gap, "multiplier": dev,
               "seed": cfg.seed}
    path = cfg.out_path("mellin_selftest.json")
    path.write_text(json.dumps(payload, indent=2) + "\n")
    print(f"wrote {path}: {payload}")
    return 0


def cmd_convergence(cfg: RunConfig) -> int:
    wedge = cfg.wedge()
    u_star, f = _convergence_pair(wedge)
    rows = []
    n_s, n_phi = cfg.n_s, cfg.n_phi
    for _ in range(cfg.levels):
        grid = cfg.grid(n_s=n_s, n_phi=n_phi)
        pp = PoissonParams(wedge, cfg.Theta, cfg.theta, grid,
                           n_modes=max(4, n_phi // 2))
        u, report = solve_poisson(f, pp, probe_corner=False)
        exact = sample(u_star, grid)
        err = float(np.linalg.norm(u.values - exact.values)
                    / np.linalg.norm(exact.values))
        rows.append((n_s, n_phi, err, report.apriori_ratio))
        n_s *= 2
        n_phi *= 2
    path = cfg.out_path("convergence.csv")
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n_s", "n_phi", "error", "apriori_ratio"])
        for row in rows:
            writer.writerow([row[0], row[1], repr(row[2]), repr(row[3])])
    print(f"wrote {path}")
    for row in rows:
        print(f"  n_s={row[0]} n_phi={row[1]} error={row[2]:.3e} ratio={row[3]:.4f}")
    return 0


_COMMANDS = {
    "norms": cmd_norms,
    "solve": cmd_solve,
    "spectrum": cmd_spectrum,
    "mellin-selftest": cmd_mellin_selftest,
    "convergence": cmd_convergence,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wedgemellin",
        description="Weighted Sobolev norms and the Mellin Poisson solver on wedges.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON config file (flat schema)")
        for key, default in _DEFAULTS.items():
            if key in ("f_csv", "output_dir", "field"):
                p.add_argument(f"--{key.replace('_', '-')}", dest=key, default=None)
            elif key in _INT_KEYS:
                p.add_argument(f"--{key.replace('_', '-')}", dest=key, type=int, default=None)
            else:
                p.add_argument(f"--{key.replace('_', '-')}", dest=key, type=float, default=None)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.build(args)
        return _COMMANDS[args.command](cfg)
    except (ConfigError, SchemaError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except AdmissibilityError as exc:
        print(f"inadmissible parameters: {exc}", file=sys.stderr)
        return 3
    except WedgeMellinError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
