"""Windowed RMSE around an abrupt swap of Friedman feature roles.

Prints one row per 500-sample window so the curves can be plotted elsewhere,
followed by the plateau/final ratios for each model.
"""

import argparse
import math

from fastodt.arf import ArfEnsemble
from fastodt.bench.harness import prequential
from fastodt.datagen import FriedmanConfig, friedman_stream
from fastodt.incubation import IncubationBoost
from fastodt.tree import FastODT


def pooled(windows):
    return math.sqrt(sum(w * w for w in windows) / len(windows))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=15_000)
    ap.add_argument("--drift-at", type=int, default=7_500)
    ap.add_argument("--window", type=int, default=500)
    ap.add_argument("--span", type=int, default=2_000, help="samples in the plateau and final spans")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    cfg = FriedmanConfig(n=args.n, seed=args.seed, drift_time=args.drift_at)
    samples = list(friedman_stream(cfg))
    p = cfg.p
    models = {
        "fastodt": FastODT(p),
        "incubation_boost": IncubationBoost(p),
        "arf_fastodt": ArfEnsemble(p, seed=args.seed),
    }
    series = {}
    for name, model in models.items():
        series[name] = prequential(model, samples, target_mode="direct", window=args.window).window_rmse

    print("window_end," + ",".join(series))
    for k in range(len(next(iter(series.values())))):
        print(f"{(k + 1) * args.window}," + ",".join(f"{series[m][k]:.4f}" for m in series))

    per_span = args.span // args.window
    drift_w = args.drift_at // args.window
    print()
    for name, w in series.items():
        plateau = pooled(w[drift_w - per_span : drift_w])
        final = pooled(w[-per_span:])
        print(f"{name:18s} plateau {plateau:.3f}  final {final:.3f}  ratio {final / plateau:.2f}")


if __name__ == "__main__":
    main()
