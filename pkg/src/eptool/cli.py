"""Command-line front end.

    eptool simulate --family pt_qubit --param epsilon=1 --param a=0.6 --measure hss --t-end 12 --out hss.csv
    eptool scan-ep --family anti_pt_qubit --bracket 0.5 1.5
    eptool contractivity --family pt_qubit --param a=0.2 --phi 1.0471975511965976
    eptool contractivity --family pt_qudit --param J=2.2 --param gamma=1 --random 200 --seed 7
    eptool figures fig2 --out fig2/

Exit status: 0 on success, 1 on a computation error, 2 on a configuration
or precondition error. ``EPTOOL_LOG`` (error, info, debug) sets the
diagnostic level on standard error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import analysis, figures
from .hamiltonians import HamiltonianModel, model_from_dict, model_to_dict
from .serialization import dumps_json, series_to_csv
from .states import state_from_dict, td_pair

log = logging.getLogger("eptool")

EXIT_OK, EXIT_COMPUTE, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    model: HamiltonianModel
    grid: analysis.TimeGrid
    measures: list[str] = field(default_factory=lambda: ["hss"])
    state: dict | None = None
    pair: dict | None = None
    phi: float = analysis.DEFAULT_PHI
    theta: float | None = None
    seed: int = 0
    count: int | None = None
    bracket: tuple[float, float] | None = None
    tolerances: dict = field(default_factory=dict)
    out: str | None = None


def _parse_param(text: str) -> tuple[str, float]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise ConfigError(f"--param expects KEY=VALUE, got {text!r}")
    try:
        return key.strip(), float(value)
    except ValueError:
        raise ConfigError(f"--param {key}: {value!r} is not a number") from None


def _load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    return data


def build_config(args: argparse.Namespace) -> RunConfig:
    """Merge the JSON config (if any) with command-line flags; flags win."""
    raw = _load_config_file(getattr(args, "config", None))

    model_data = dict(raw.get("model", {}))
    if args.family:
        if model_data.get("family") not in (None, args.family):
            model_data = {}
        model_data["family"] = args.family
    params = dict(model_data.get("params", {}))
    params.update(_parse_param(p) for p in args.param or [])
    model_data["params"] = params
    if "family" not in model_data:
        raise ConfigError("no model given: use --family or a config with 'model'")
    try:
        model = model_from_dict(model_data)
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from None

    grid_data = dict(raw.get("grid", {}))
    if getattr(args, "t_start", None) is not None:
        grid_data["t_start"] = args.t_start
    if getattr(args, "t_end", None) is not None:
        grid_data["t_end"] = args.t_end
    if getattr(args, "points", None) is not None:
        grid_data["num_points"] = args.points
    try:
        grid = analysis.TimeGrid(float(grid_data.get("t_start", 0.0)), float(grid_data.get("t_end", 10.0)),
                                 int(grid_data.get("num_points", 1001)))
    except ValueError as exc:
        raise ConfigError(f"bad grid: {exc}") from None

    measures = getattr(args, "measure", None) or raw.get("measures") or ["hss"]
    for m in measures:
        if m not in analysis.MEASURES:
            raise ConfigError(f"unknown measure {m!r}")

    phi = args.phi if getattr(args, "phi", None) is not None else raw.get("phi", analysis.DEFAULT_PHI)
    theta = args.theta if getattr(args, "theta", None) is not None else raw.get("theta")
    seed = args.seed if getattr(args, "seed", None) is not None else raw.get("seed", 0)
    count = getattr(args, "random", None)
    if count is None:
        count = raw.get("count")
    bracket = getattr(args, "bracket", None) or raw.get("bracket")
    if bracket is not None:
        if len(bracket) != 2:
            raise ConfigError("bracket needs two values")
        bracket = (float(bracket[0]), float(bracket[1]))
    if not isinstance(seed, int) or not 0 <= seed < 2 ** 64:
        raise ConfigError("seed must be an unsigned 64-bit integer")
    if count is not None and int(count) < 1:
        raise ConfigError("random pair count must be >= 1")

    return RunConfig(
        model=model, grid=grid, measures=list(measures), state=raw.get("state"), pair=raw.get("pair"),
        phi=float(phi), theta=None if theta is None else float(theta), seed=seed,
        count=None if count is None else int(count), bracket=bracket,
        tolerances=dict(raw.get("tolerances", {})), out=getattr(args, "out", None) or raw.get("out"),
    )


def _resolve_phi(cfg: RunConfig) -> float:
    if cfg.state is None:
        return cfg.phi
    if cfg.state.get("kind") != "phase_superposition":
        raise ConfigError("hss/qfi need a phase_superposition state")
    state_from_dict(cfg.state, cfg.model.dimension)
    return float(cfg.state["phi"])


def _resolve_pair(cfg: RunConfig):
    try:
        if cfg.pair is not None:
            pair = state_from_dict(cfg.pair, cfg.model.dimension, cfg.model.family)
            if not isinstance(pair, tuple):
                raise ConfigError("'pair' must describe two states")
            return pair
        return td_pair(cfg.model.family, cfg.phi, cfg.theta)
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"bad pair: {exc}") from None


def _write(text: str, path: str | os.PathLike | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(text.encode("utf-8"))


def _measure_path(out: str | None, measure: str, several: bool) -> str | None:
    if out is None or not several:
        return out
    p = Path(out)
    return str(p.with_name(f"{p.stem}_{measure}{p.suffix or '.csv'}"))


def cmd_simulate(args) -> int:
    cfg = build_config(args)
    if len(cfg.measures) > 1 and cfg.out is None:
        raise ConfigError("several measures need --out")
    for measure in cfg.measures:
        if measure == "td":
            series = analysis.sample_series(cfg.model, "td", cfg.grid, pair=_resolve_pair(cfg))
        else:
            cutoff = float(cfg.tolerances.get("qfi_cutoff", 1e-10))
            series = analysis.sample_series(cfg.model, measure, cfg.grid, phi=_resolve_phi(cfg), cutoff=cutoff)
        path = _measure_path(cfg.out, measure, len(cfg.measures) > 1)
        _write(series_to_csv(series), path)
        log.info("wrote %s series (%d points) to %s", measure, cfg.grid.num_points, path or "stdout")
    return EXIT_OK


def cmd_scan_ep(args) -> int:
    cfg = build_config(args)
    if cfg.bracket is None:
        raise ConfigError("scan-ep needs --bracket LO HI")
    fixed = model_to_dict(cfg.model)["params"]
    tol = float(args.tol if args.tol is not None else cfg.tolerances.get("ep_tol", 0.01))
    rel_tol = float(cfg.tolerances.get("rel_tol", analysis.REL_TOL))
    try:
        report = analysis.locate_ep(cfg.model.family, fixed, cfg.bracket, tol, phi=cfg.phi, rel_tol=rel_tol)
    except analysis.BracketError as exc:
        print(f"eptool: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    _write(dumps_json(report.to_dict()), cfg.out)
    return EXIT_OK


def cmd_contractivity(args) -> int:
    cfg = build_config(args)
    abs_tol = float(cfg.tolerances.get("abs_tol", analysis.TD_ABS_TOL))
    if cfg.count is not None:
        scan = analysis.random_pair_scan(cfg.model, cfg.count, cfg.grid, cfg.seed, abs_tol)
        payload = scan.to_dict()
    else:
        payload = analysis.contractivity_audit(cfg.model, _resolve_pair(cfg), cfg.grid, abs_tol).to_dict()
    _write(dumps_json(payload), cfg.out)
    return EXIT_OK


def cmd_figures(args) -> int:
    if args.figure_id not in figures.FIGURES:
        raise ConfigError(f"unknown figure {args.figure_id!r}; choose from {', '.join(sorted(figures.FIGURES))}")
    figure, rendered = figures.render(args.figure_id)
    out = Path(args.out or args.figure_id)
    out.mkdir(parents=True, exist_ok=True)
    curves = []
    for curve, series in rendered:
        name = f"{args.figure_id}_{curve.name}.csv"
        _write(series_to_csv(series), out / name)
        entry = {"file": name, "measure": curve.measure, "model": model_to_dict(curve.model), "phi": curve.phi}
        if curve.theta is not None:
            entry["theta"] = curve.theta
        curves.append(entry)
    manifest = {
        "figure": args.figure_id,
        "description": figure.description,
        "choices": list(figure.choices),
        "grid": figure.grid.to_dict(),
        "curves": curves,
    }
    _write(dumps_json(manifest), out / "manifest.json")
    return EXIT_OK


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="PATH", help="JSON run configuration")
    p.add_argument("--family", choices=["pt_qubit", "anti_pt_qubit", "pt_qudit", "custom"])
    p.add_argument("--param", action="append", metavar="KEY=VALUE", help="model parameter (repeatable)")
    p.add_argument("--phi", type=float)
    p.add_argument("--theta", type=float, help="second phase of the qudit pair")
    p.add_argument("--t-start", type=float, dest="t_start")
    p.add_argument("--t-end", type=float, dest="t_end")
    p.add_argument("--points", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", metavar="PATH")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eptool", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="write HSS/TD/QFI time series as CSV")
    _add_model_flags(p)
    p.add_argument("--measure", action="append", choices=list(analysis.MEASURES))
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("scan-ep", help="locate the exceptional point by bisection")
    _add_model_flags(p)
    p.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_scan_ep)

    p = sub.add_parser("contractivity", help="audit trace-distance growth for a pair or random pairs")
    _add_model_flags(p)
    p.add_argument("--random", type=int, metavar="COUNT", help="scan COUNT random pairs instead")
    p.set_defaults(func=cmd_contractivity)

    p = sub.add_parser("figures", help="write the curves of one figure plus a manifest")
    p.add_argument("figure_id")
    p.add_argument("--out", metavar="DIR")
    p.set_defaults(func=cmd_figures)
    return parser


def _setup_logging() -> None:
    level = os.environ.get("EPTOOL_LOG", "error").lower()
    logging.basicConfig(
        level={"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}.get(level, logging.ERROR),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"eptool: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ArithmeticError, np.linalg.LinAlgError, analysis.InconclusiveError, analysis.EPSearchError,
            ValueError) as exc:
        print(f"eptool: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
