"""fastodt-bench: generate Friedman streams and run prequential benchmarks.

Exit codes: 0 success, 1 configuration error, 2 data error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

import yaml

from ..datagen import FriedmanConfig, write_csv
from .config import ConfigError, DataError, RunConfig, load_grid, load_yaml
from .harness import run_prequential
from .report import FORMATS, emit_report

log = logging.getLogger("fastodt.bench")

EXIT_OK, EXIT_CONFIG, EXIT_DATA = 0, 1, 2


def _param(text: str):
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    return key, yaml.safe_load(value)


def _lags(text: str) -> List[int]:
    try:
        if "-" in text and "," not in text:
            lo, hi = text.split("-")
            return list(range(int(lo), int(hi) + 1))
        return [int(v) for v in text.split(",") if v]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad lag list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fastodt-bench", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a Friedman #1 stream as CSV (x1..xp,y)")
    g.add_argument("--n", type=int, default=10_000)
    g.add_argument("--sigma", type=float, default=1.0)
    g.add_argument("--p", type=int, default=10)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--drift-at", type=int, default=None)
    g.add_argument("--out", default="-", help="output path, '-' for stdout")

    r = sub.add_parser("run", help="prequential evaluation of one model on one dataset")
    r.add_argument("--config", help="YAML run config; flags below override its keys")
    r.add_argument("--model")
    r.add_argument("--dataset", help="CSV path, or 'friedman' for the built-in generator")
    r.add_argument("--target-column")
    r.add_argument("--timestamp-column")
    r.add_argument("--resample", choices=("none", "hourly_mean", "hourly_sum"))
    r.add_argument("--lags", type=_lags, help="e.g. 1-24 or 1,2,24")
    r.add_argument("--calendar-features", action="store_true", default=None)
    r.add_argument("--target-mode", choices=("residual", "direct"))
    r.add_argument("--seed", type=int)
    r.add_argument("--warmup", type=int)
    r.add_argument("--param", type=_param, action="append", default=[],
                   help="model hyperparameter key=value (repeatable)")
    r.add_argument("--leaf-updates-after-growth", action="store_true",
                   help="let leaf means of tree models keep learning after full growth")
    r.add_argument("--report", default="-", help="output path, '-' for stdout")
    r.add_argument("--format", choices=FORMATS, default="json")

    gr = sub.add_parser("grid", help="run every model x dataset cell of a grid config")
    gr.add_argument("--config", required=True)
    gr.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    gr.add_argument("--report", default="-")
    gr.add_argument("--format", choices=FORMATS, default="table")
    return p


def _run_config_from_args(args) -> RunConfig:
    data = {}
    if args.config:
        data = load_yaml(args.config)
    ds = dict(data.get("dataset") or {})
    if args.dataset:
        if args.dataset == "friedman":
            ds = {"name": "friedman", "generator": {"kind": "friedman", "seed": args.seed or 0}}
        else:
            ds = {k: v for k, v in ds.items() if k != "generator"}
            ds["path"] = args.dataset
    for key in ("target_column", "timestamp_column", "resample", "lags", "calendar_features"):
        value = getattr(args, key)
        if value is not None:
            ds[key] = value
    data["dataset"] = ds
    for key in ("model", "target_mode", "seed", "warmup"):
        value = getattr(args, key)
        if value is not None:
            data[key] = value
    params = dict(data.get("params") or {})
    params.update(dict(args.param))
    if args.leaf_updates_after_growth:
        _set_leaf_updates(data.get("model"), params)
    data["params"] = params
    if "model" not in data:
        raise ConfigError("no model given (use --model or a config file)")
    if not ds:
        raise ConfigError("no dataset given (use --dataset or a config file)")
    return RunConfig.from_mapping(data)


def _set_leaf_updates(model, params):
    if model in ("fastodt", "vfdt"):
        params["leaf_updates_after_growth"] = True
    elif model in ("incubation_boost", "arf_fastodt"):
        tree = dict(params.get("tree") or {})
        tree["leaf_updates_after_growth"] = True
        params["tree"] = tree
    else:
        raise ConfigError(f"--leaf-updates-after-growth does not apply to {model!r}")


def _write(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_generate(args) -> int:
    try:
        cfg = FriedmanConfig(n=args.n, sigma=args.sigma, p=args.p, seed=args.seed, drift_time=args.drift_at)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if args.out == "-":
        write_csv(cfg, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(cfg, fh)
    return EXIT_OK


def _cmd_run(args) -> int:
    cfg = _run_config_from_args(args)
    report = run_prequential(cfg)
    log.info("%s on %s: RMSE %.4f MAPE %.3f%%", cfg.label, cfg.dataset.name, report.rmse, report.mape_percent)
    _write(emit_report(report, args.format), args.report)
    return EXIT_OK


def _cmd_grid(args) -> int:
    runs = load_grid(args.config)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(run_prequential, runs))
    else:
        reports = [run_prequential(cfg) for cfg in runs]
    _write(emit_report(reports, args.format), args.report)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = {"generate": _cmd_generate, "run": _cmd_run, "grid": _cmd_grid}[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
