"""Scenario runner writing CSV data and JSON reports.

Subcommands: ``table1``, ``populations``, ``region``, ``invariant``, ``iterate``.
Settings come from an optional JSON config file (``--config``) overridden by
flags.  The output directory defaults to ``$SUPERADIABATIC_OUTPUT_DIR`` or
``./out``.

Exit codes: 0 success, 2 invalid configuration, 3 numerical-quality failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
import warnings
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from .engine import iterate
from .propagator import NORM_TOLERANCE, populations, propagate
from .protocols import (
    DEFAULT_RATIO_THRESHOLD,
    InvariantAnsatz,
    LZParams,
    adiabaticity_margin,
    edge_commutators,
    feasibility_curves,
    feasibility_onset,
    invariance_residual,
    invariant_to_controls,
    landau_zener,
    lz_feasibility,
    shortcut_bc_check,
)

log = logging.getLogger("superadiabatic")

OUTPUT_ENV = "SUPERADIABATIC_OUTPUT_DIR"
EXIT_OK, EXIT_CONFIG, EXIT_NUMERICS = 0, 2, 3
INVARIANCE_TOLERANCE = 1e-6


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    protocol: str = "landau_zener"
    alpha: float = -20.0
    omega0: float = 0.2
    tf: float = 0.2
    j_max: int = 4
    n_samples: int = 20001
    ratio_threshold: float = DEFAULT_RATIO_THRESHOLD
    nu: float = 1.0
    output_dir: str = ""
    tf_list: tuple = (2.0, 0.2)
    omega_max: float = 1000.0
    omega_points: int = 10001

    def validate(self) -> "ScenarioConfig":
        if self.protocol not in ("landau_zener", "invariant"):
            raise ConfigError(f"unknown protocol kind {self.protocol!r}")
        if not self.tf > 0:
            raise ConfigError("tf must be > 0")
        if self.n_samples < 1001 or self.n_samples % 2 == 0:
            raise ConfigError("n_samples must be odd and >= 1001")
        if not 0 <= self.j_max <= 8:
            raise ConfigError("j_max must be in [0, 8]")
        if not self.omega0 > 0:
            raise ConfigError("omega0 must be > 0")
        if not self.ratio_threshold > 0:
            raise ConfigError("ratio_threshold must be > 0")
        if not self.nu > 0:
            raise ConfigError("nu must be > 0")
        if not self.tf_list or any(not v > 0 for v in self.tf_list):
            raise ConfigError("tf_list entries must be > 0")
        if not self.omega_max > 0 or self.omega_points < 2:
            raise ConfigError("omega grid needs omega_max > 0 and >= 2 points")
        return self

    @property
    def lz(self) -> LZParams:
        return LZParams(self.alpha, self.omega0, self.tf)

    def out_path(self) -> Path:
        return Path(self.output_dir or os.environ.get(OUTPUT_ENV) or "out")


def load_config(path: str | None, overrides: dict) -> ScenarioConfig:
    data = {}
    if path:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
    known = {f.name: f for f in fields(ScenarioConfig)}
    unknown = set(data) - set(known)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    data.update({k: v for k, v in overrides.items() if v is not None})
    try:
        cfg = ScenarioConfig(**data)
        cfg = replace(
            cfg,
            alpha=float(cfg.alpha),
            omega0=float(cfg.omega0),
            tf=float(cfg.tf),
            j_max=int(cfg.j_max),
            n_samples=int(cfg.n_samples),
            ratio_threshold=float(cfg.ratio_threshold),
            nu=float(cfg.nu),
            tf_list=tuple(float(v) for v in cfg.tf_list),
            omega_max=float(cfg.omega_max),
            omega_points=int(cfg.omega_points),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    return cfg.validate()


# --------------------------------------------------------------------------
# output helpers


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    return repr(float(v))


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path: Path, header: list[str], columns: list) -> None:
    cols = [np.asarray(c) if not isinstance(c, list) else c for c in columns]
    n = len(cols[0])
    lines = [",".join(header)]
    for i in range(n):
        lines.append(",".join(_fmt(c[i]) for c in cols))
    _atomic_write(path, "\n".join(lines) + "\n")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if np.isfinite(v) else repr(v)
    return obj


def write_report(path: Path, report: dict) -> None:
    _atomic_write(path, json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n")


def _propagate_quiet(h, psi0, tf):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return propagate(h, psi0, tf)


# --------------------------------------------------------------------------
# commands


def _lz_stack(cfg: ScenarioConfig, j_max: int):
    return iterate(landau_zener(cfg.lz, cfg.n_samples), j_max)


def cmd_table1(cfg: ScenarioConfig) -> int:
    """Maxima of |X| and |Y| for H0 and H0^(j), j = 1..j_max+1."""
    stack = _lz_stack(cfg, cfg.j_max)
    names, xs, ys = [], [], []
    for j in range(stack.j_max + 2):
        x, y, _ = stack.max_components(j)
        names.append("H0" if j == 0 else f"H0^{j}")
        xs.append(x)
        ys.append(y)
    out = cfg.out_path()
    write_csv(out / "table1.csv", ["hamiltonian", "j", "x_max", "y_max"],
              [names, list(range(len(names))), xs, ys])
    report = {
        "config": asdict(cfg),
        "rows": [{"hamiltonian": n, "x_max": x, "y_max": y} for n, x, y in zip(names, xs, ys)],
        "boundary_checks": [
            shortcut_bc_check(stack, j, cfg.ratio_threshold).to_dict()
            for j in range(1, stack.j_max + 2)
        ],
    }
    write_report(out / "table1.json", report)
    for n, x, y in zip(names, xs, ys):
        print(f"{n:7s} |X|max={x:10.4f}  |Y|max={y:10.4f}")
    return EXIT_OK


def cmd_populations(cfg: ScenarioConfig) -> int:
    """P1(t) under H0 and H0^(1..j_max), starting in the bare state |1>."""
    stack = _lz_stack(cfg, max(cfg.j_max - 1, 0))
    header, cols, finals, drifts = ["t"], [stack.t], {}, {}
    for j in range(cfg.j_max + 1):
        name = "P1_H0" if j == 0 else f"P1_H0^{j}"
        traj = _propagate_quiet(stack.modified[j], [1.0, 0.0], stack.tf)
        p1 = populations(traj).p1
        header.append(name)
        cols.append(p1)
        finals[name] = p1[-1]
        drifts[name] = traj.norm_drift()
    out = cfg.out_path()
    write_csv(out / "populations.csv", header, cols)
    worst = max(drifts.values())
    report = {
        "config": asdict(cfg),
        "final_p1": finals,
        "norm_drift": drifts,
        "boundary_checks": [
            shortcut_bc_check(stack, j, cfg.ratio_threshold).to_dict()
            for j in range(1, cfg.j_max + 1)
        ],
        "quality_ok": worst <= NORM_TOLERANCE,
    }
    write_report(out / "populations.json", report)
    for name, v in finals.items():
        print(f"{name:10s} P1(tf) = {v:.6e}")
    if worst > NORM_TOLERANCE:
        log.error("norm drift %.3g exceeds %.1g", worst, NORM_TOLERANCE)
        return EXIT_NUMERICS
    return EXIT_OK


def cmd_region(cfg: ScenarioConfig) -> int:
    """Curves bounding the feasible |alpha| window versus omega0."""
    omega = np.linspace(0.0, cfg.omega_max, cfg.omega_points)
    header, cols = ["omega0", "upper"], [omega, feasibility_curves(omega, 1.0)[1]]
    onsets = {}
    for tf in cfg.tf_list:
        lower, _ = feasibility_curves(omega, tf)
        header.append(f"lower_tf={tf!r}")
        cols.append(lower)
        onsets[repr(tf)] = {"grid_onset": feasibility_onset(omega[1:], tf), "exact_onset": 100.0 / tf}
    out = cfg.out_path()
    write_csv(out / "region.csv", header, cols)
    write_report(out / "region.json", {"config": asdict(cfg), "onsets": onsets,
                                       "grid_step": omega[1] - omega[0]})
    for tf, o in onsets.items():
        print(f"tf={tf}: feasible window opens at omega0 = {o['grid_onset']} (exact {o['exact_onset']})")
    return EXIT_OK


def cmd_invariant(cfg: ScenarioConfig) -> int:
    """Invariant-engineered controls, P1(t), and residual checks."""
    ansatz = InvariantAnsatz.from_boundary_conditions(cfg.tf, cfg.nu)
    try:
        protocol = invariant_to_controls(ansatz, cfg.n_samples)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    traj = _propagate_quiet(protocol.cartesian(), [1.0, 0.0], cfg.tf)
    p1 = populations(traj).p1
    t = protocol.t
    out = cfg.out_path()
    write_csv(out / "invariant.csv", ["t", "gamma", "beta", "omega_r", "delta", "P1"],
              [t, ansatz.gamma(t), ansatz.beta(t), protocol.omega_r, protocol.delta, p1])
    residual = float(np.max(invariance_residual(ansatz, protocol)))
    c0, c1 = edge_commutators(ansatz, protocol)
    ok = residual < INVARIANCE_TOLERANCE and traj.norm_drift() <= NORM_TOLERANCE
    report = {
        "config": asdict(cfg),
        "gamma_coeffs": list(ansatz.gamma_coeffs),
        "beta_coeffs": list(ansatz.beta_coeffs),
        "final_p1": p1[-1],
        "invariance_residual": residual,
        "edge_commutator": [c0, c1],
        "omega_r_edges": [protocol.omega_r[0], protocol.omega_r[-1]],
        "norm_drift": traj.norm_drift(),
        "quality_ok": ok,
    }
    write_report(out / "invariant.json", report)
    print(f"P1(tf) = {p1[-1]:.3e}, invariance residual = {residual:.3e}")
    return EXIT_OK if ok else EXIT_NUMERICS


def cmd_iterate(cfg: ScenarioConfig) -> int:
    """Components of every H0^(j) plus boundary and adiabaticity analyses."""
    if cfg.protocol == "invariant":
        protocol = invariant_to_controls(
            InvariantAnsatz.from_boundary_conditions(cfg.tf, cfg.nu), cfg.n_samples
        )
    else:
        protocol = landau_zener(cfg.lz, cfg.n_samples)
    stack = iterate(protocol, cfg.j_max)
    header, cols = ["t"], [stack.t]
    for j, h in enumerate(stack.modified):
        for axis, comp in zip("XYZ", h):
            header.append(f"{axis}_H0^{j}")
            cols.append(comp)
    out = cfg.out_path()
    write_csv(out / "iterate.csv", header, cols)
    report = {
        "config": asdict(cfg),
        "max_components": [stack.max_components(j) for j in range(stack.j_max + 2)],
        "boundary_checks": [
            shortcut_bc_check(stack, j, cfg.ratio_threshold).to_dict()
            for j in range(1, stack.j_max + 2)
        ],
        "adiabaticity_margin": adiabaticity_margin(protocol)
        if np.all(np.hypot(protocol.omega_r, protocol.delta) > 0) else None,
        "gauge_degenerate_samples": [int(f.degenerate.sum()) for f in stack.frames],
    }
    if cfg.protocol == "landau_zener":
        feas = lz_feasibility(cfg.lz)
        report["lz_feasibility"] = {
            "lower": feas.lower, "upper": feas.upper, "boundary_ok": feas.boundary_ok,
            "adiabatic_ok": feas.adiabatic_ok, "feasible": feas.feasible,
        }
    write_report(out / "iterate.json", report)
    print(f"wrote {len(stack.modified)} Hamiltonians to {out / 'iterate.csv'}")
    return EXIT_OK


COMMANDS = {
    "table1": cmd_table1,
    "populations": cmd_populations,
    "region": cmd_region,
    "invariant": cmd_invariant,
    "iterate": cmd_iterate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superadiabatic",
        description="Superadiabatic shortcuts for two-level systems: regenerate tables and figure data.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        p = sub.add_parser(name, help=fn.__doc__.splitlines()[0])
        p.add_argument("--config", help="JSON file with scenario settings")
        p.add_argument("--protocol", choices=["landau_zener", "invariant"])
        p.add_argument("--alpha", type=float)
        p.add_argument("--omega0", type=float)
        p.add_argument("--tf", type=float)
        p.add_argument("--jmax", dest="j_max", type=int)
        p.add_argument("--samples", dest="n_samples", type=int)
        p.add_argument("--threshold", dest="ratio_threshold", type=float)
        p.add_argument("--nu", type=float)
        p.add_argument("--out", dest="output_dir")
        if name == "region":
            p.add_argument("--tf-list", type=lambda s: tuple(float(v) for v in s.split(",")))
            p.add_argument("--omega-max", type=float)
            p.add_argument("--omega-points", type=int)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    overrides = {k: v for k, v in vars(args).items() if k not in ("command", "config", "verbose")}
    try:
        cfg = load_config(args.config, overrides)
        return COMMANDS[args.command](cfg)
    except ConfigError as exc:
        log.error("configuration error: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
