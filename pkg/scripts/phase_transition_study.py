#!/usr/bin/env python3
"""Sweep the certified-SAT fraction across clause densities for one rule.

Runs the same alpha grid at several n and writes one CSV block per n, so the
sharpening of the transition (and its offset from the certified threshold
alpha = 1/Q, marked in the output) is visible in a single file.

Example:
    python scripts/phase_transition_study.py --rule uniform --k 3 --l 1 \
        --n 300 --n 600 --n 1200 --trials 40 --seed 7 --out transition.csv
"""

import argparse
import sys

from achsat.analytics import threshold_alpha
from achsat.harness import ExperimentConfig, sweep_alpha
from achsat.rules import RuleKind, RuleSpec


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rule", default="uniform",
                        choices=[k.value for k in RuleKind])
    parser.add_argument("--k", type=int, default=3)
    parser.add_argument("--l", type=int, default=1, dest="ell")
    parser.add_argument("--n", type=int, action="append", default=None)
    parser.add_argument("--trials", type=int, default=40)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--steps", type=int, default=9)
    parser.add_argument("--lo", type=float, default=0.5, help="grid start, units of 1/Q")
    parser.add_argument("--hi", type=float, default=1.5, help="grid end, units of 1/Q")
    parser.add_argument("--out", default=None)
    args = parser.parse_args()

    rule = RuleSpec(RuleKind.from_cli_name(args.rule), args.ell)
    certified = threshold_alpha(rule, args.k).alpha
    sizes = args.n or [300, 600, 1200]

    lines = [f"# rule={args.rule} k={args.k} l={args.ell} certified_alpha={certified:.6g}",
             "n,alpha,alpha_over_certified,sat_fraction,ci_lo,ci_hi,trials"]
    for n in sizes:
        cfg = ExperimentConfig(k=args.k, n=n, rule=rule, alpha=certified,
                               trials=args.trials, seed=args.seed)
        result = sweep_alpha(cfg, args.lo * certified, args.hi * certified, args.steps)
        for p in result.points:
            lines.append(
                f"{n},{p.alpha:.6g},{p.alpha / certified:.4f},"
                f"{p.sat_fraction:.6g},{p.ci_lo:.6g},{p.ci_hi:.6g},{p.trials}"
            )
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as sink:
            sink.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
