#!/usr/bin/env python3
"""Largest reachable set in the implication digraph as n grows.

At a subcritical density alpha = c/Q with c < 1, reachable sets should grow
like log n; this script measures the per-instance maximum over a range of n
and prints the least-squares slope against ln n.

Example:
    python scripts/reachable_scaling_study.py --rule uniform --k 3 --l 1 \
        --fraction 0.8 --trials 20 --seed 11
"""

import argparse

import numpy as np

from achsat.analytics import threshold_alpha
from achsat.harness import ExperimentConfig, run_trial
from achsat.rules import RuleKind, RuleSpec


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rule", default="uniform",
                        choices=[k.value for k in RuleKind])
    parser.add_argument("--k", type=int, default=3)
    parser.add_argument("--l", type=int, default=1, dest="ell")
    parser.add_argument("--fraction", type=float, default=0.8,
                        help="alpha as a fraction of the certified threshold")
    parser.add_argument("--sizes", type=int, nargs="+",
                        default=[500, 1000, 2000, 4000])
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--seed", type=int, default=11)
    args = parser.parse_args()

    rule = RuleSpec(RuleKind.from_cli_name(args.rule), args.ell)
    alpha = args.fraction * threshold_alpha(rule, args.k).alpha
    print(f"# rule={args.rule} k={args.k} l={args.ell} alpha={alpha:.6g} "
          f"(fraction {args.fraction} of certified)")
    print("n,ln_n,mean_max_reachable,min,max")
    means = {}
    for n in args.sizes:
        cfg = ExperimentConfig(k=args.k, n=n, rule=rule, alpha=alpha, trials=1,
                               seed=args.seed, measure_reachable=True)
        sizes = [run_trial(cfg, j).max_reachable for j in range(args.trials)]
        means[n] = float(np.mean(sizes))
        print(f"{n},{np.log(n):.4f},{means[n]:.2f},{min(sizes)},{max(sizes)}")

    ns = np.array(sorted(means))
    ys = np.array([means[n] for n in ns])
    design = np.vstack([np.log(ns), np.ones(ns.size)]).T
    slope, intercept = np.linalg.lstsq(design, ys, rcond=None)[0]
    print(f"# least-squares fit: size ~ {slope:.2f} * ln n + {intercept:.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
