"""Prequential comparison of every model on a Friedman #1 stream."""

import argparse

from fastodt.bench.config import MODELS
from fastodt.bench.harness import prequential
from fastodt.bench.models import build_model
from fastodt.bench.report import emit_report
from fastodt.datagen import FriedmanConfig, friedman_stream


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=10_000)
    ap.add_argument("--sigma", type=float, default=1.0)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--models", nargs="+", default=[m for m in MODELS if m != "persistence"])
    ap.add_argument("--format", choices=("table", "csv", "json"), default="table")
    args = ap.parse_args()

    reports = []
    for seed in args.seeds:
        samples = list(friedman_stream(FriedmanConfig(n=args.n, sigma=args.sigma, seed=seed)))
        for name in args.models:
            model = build_model(name, {}, len(samples[0].features), seed)
            reports.append(
                prequential(model, samples, target_mode="direct", model_name=name, dataset_name=f"friedman-s{seed}")
            )
    print(emit_report(reports, args.format))


if __name__ == "__main__":
    main()
