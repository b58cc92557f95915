"""Predict latency of FastODT against tree depth and training-set size."""

import argparse
import timeit

from fastodt.datagen import FriedmanConfig, friedman_stream
from fastodt.tree import FastODT


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depths", type=int, nargs="+", default=[2, 4, 6, 8, 10, 12])
    ap.add_argument("--train", type=int, nargs="+", default=[1_000, 10_000, 100_000])
    ap.add_argument("--probes", type=int, default=2_000)
    args = ap.parse_args()

    data = list(friedman_stream(FriedmanConfig(n=max(args.train), seed=5)))
    probes = [s.features for s in friedman_stream(FriedmanConfig(n=args.probes, seed=99))]

    print("depth,train,reached_depth,ns_per_predict")
    for depth in args.depths:
        for n in args.train:
            # permissive gate so the tree is complete early
            tree = FastODT(10, max_depth=depth, delta=0.1, n_grace=20, tie_tau=0.2)
            for s in data[:n]:
                tree.update(s.features, s.target)
            best = min(timeit.repeat(lambda: [tree.predict(x) for x in probes], number=3, repeat=7))
            print(f"{depth},{n},{tree.depth},{1e9 * best / (3 * len(probes)):.0f}")


if __name__ == "__main__":
    main()
