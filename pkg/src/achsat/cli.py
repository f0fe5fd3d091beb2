"""Command-line front end.

Every command is a pure function of its flags (plus ``--seed`` where
randomness is involved): repeated invocations emit byte-identical output.
Exit codes: 0 success, 1 validation failure, 2 invalid parameters.

Numbers are serialized with 6 significant digits, except threshold columns
which round to 3 decimals for comparability; ``--precision full`` lifts the
rounding on the ``thresholds`` command.
"""

from __future__ import annotations

import json
import math
import sys
from typing import Optional

import click
import numpy as np

from . import __version__
from .analytics import comparison_table, threshold_alpha
from .branching import GwConfig, symmetric_mean_matrix, tail_curve
from .harness import (
    ExperimentConfig,
    bisection_iterations,
    empirical_threshold,
    export_dimacs,
    generate_trial_formula,
    run_trial,
    sweep_alpha,
    wilson_interval,
)
from .rules import RuleKind, RuleSpec
from .validation import run_suites


def _sig6(x: float) -> float:
    if x is None or isinstance(x, str):
        return x
    if math.isnan(x):
        return x
    return float(f"{x:.6g}")


def _alpha3(x: Optional[float]) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "NA"
    if math.isinf(x):
        return "inf"
    return f"{x:.3f}"


def _rule_spec(rule: str, ell: int) -> RuleSpec:
    try:
        return RuleSpec(RuleKind.from_cli_name(rule), ell)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _experiment_config(rule, k, l, alpha, n, trials, seed, measure_reachable=False):
    try:
        return ExperimentConfig(
            k=k, n=n, rule=_rule_spec(rule, l), alpha=alpha, trials=trials,
            seed=seed, measure_reachable=measure_reachable,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w") as sink:
            sink.write(text)


def _csv(header: list[str], rows: list[list[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


_RULE_CHOICES = [kind.value for kind in RuleKind]


@click.group()
@click.version_option(__version__, prog_name="achsat")
def main():
    """Clause-choice processes on random k-SAT with 2-SAT certificates."""


@main.command()
@click.option("--rule", required=True, type=click.Choice(_RULE_CHOICES))
@click.option("--k", required=True, type=int)
@click.option("--l", "ell", required=True, type=int)
@click.option("--precision", type=click.Choice(["table", "full"]), default="table")
def thresholds(rule, k, ell, precision):
    """Closed-form certified threshold for one rule at (k, l) as JSON."""
    spec = _rule_spec(rule, ell)
    try:
        report = threshold_alpha(spec, k)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    p0, p1, p2 = report.freqs.as_floats()
    if report.degenerate:
        alpha = None  # unbounded; flagged below, kept strict-JSON parseable
    else:
        alpha = report.alpha if precision == "full" else float(f"{report.alpha:.3f}")
    payload = {
        "rule": rule,
        "k": k,
        "l": ell,
        "p0": _sig6(p0),
        "p1": _sig6(p1),
        "p2": _sig6(p2),
        "q": _sig6(report.q_value),
        "alpha": alpha,
        "first_moment": _sig6(report.first_moment),
        "beats_bound": report.beats_bound,
        "degenerate": report.degenerate,
    }
    click.echo(json.dumps(payload, indent=2))


@main.command()
@click.option("--k-min", required=True, type=int)
@click.option("--k-max", required=True, type=int)
@click.option("--l-min", required=True, type=int)
@click.option("--l-max", required=True, type=int)
@click.option("--out", type=click.Path(), default=None)
def table(k_min, k_max, l_min, l_max, out):
    """Threshold comparison table as CSV (k ascending, l ascending within k).

    The unbiased-hybrid column carries both the closed-form value and the
    reference value, with a note column flagging rows where they disagree.
    """
    if k_min < 2 or k_min > k_max or l_min < 2 or l_min > l_max:
        raise click.UsageError("need 2 <= k-min <= k-max and 2 <= l-min <= l-max")
    rows = comparison_table(range(k_min, k_max + 1), range(l_min, l_max + 1))
    header = [
        "k", "l", "first_moment", "alpha_perkins", "alpha_sym",
        "alpha_hyb_unbiased_formula", "alpha_hyb_unbiased_reference",
        "hybrid_note", "alpha_maxpos",
    ]
    body = [
        [
            str(r.k),
            str(r.ell),
            _alpha3(r.first_moment),
            _alpha3(r.alpha_perkins),
            _alpha3(r.alpha_sym),
            _alpha3(r.alpha_hybrid_formula),
            _alpha3(r.alpha_hybrid_reference),
            r.hybrid_note,
            _alpha3(r.alpha_maxpos),
        ]
        for r in rows
    ]
    _emit(_csv(header, body), out)


@main.command()
@click.option("--rule", required=True, type=click.Choice(_RULE_CHOICES))
@click.option("--k", required=True, type=int)
@click.option("--l", "ell", required=True, type=int)
@click.option("--alpha", required=True, type=float)
@click.option("--n", required=True, type=int)
@click.option("--trials", required=True, type=int)
@click.option("--seed", required=True, type=int)
@click.option("--measure-reachable", is_flag=True, default=False)
@click.option("--out", type=click.Path(), default=None)
def simulate(rule, k, ell, alpha, n, trials, seed, measure_reachable, out):
    """Run full process trials; JSON with per-trial verdicts and a summary."""
    cfg = _experiment_config(rule, k, ell, alpha, n, trials, seed, measure_reachable)
    outcomes = [run_trial(cfg, j) for j in range(trials)]
    successes = sum(o.certified_sat for o in outcomes)
    fraction = successes / trials
    ci_lo, ci_hi = wilson_interval(successes, trials)
    payload = {
        "config": {
            "rule": rule, "k": k, "l": ell, "alpha": _sig6(alpha), "n": n,
            "trials": trials, "seed": seed, "steps": cfg.num_steps,
        },
        "trials": [
            {
                "trial": j,
                "certified_sat": o.certified_sat,
                "type_tally": list(o.type_tally),
                "max_reachable": o.max_reachable,
                "witness_checked": o.witness_checked,
            }
            for j, o in enumerate(outcomes)
        ],
        "summary": {
            "sat_fraction": _sig6(fraction),
            "ci_lo": _sig6(ci_lo),
            "ci_hi": _sig6(ci_hi),
        },
    }
    text = json.dumps(payload, indent=2) + "\n"
    _emit(text, out)


@main.command()
@click.option("--rule", required=True, type=click.Choice(_RULE_CHOICES))
@click.option("--k", required=True, type=int)
@click.option("--l", "ell", required=True, type=int)
@click.option("--n", required=True, type=int)
@click.option("--trials", required=True, type=int)
@click.option("--seed", required=True, type=int)
@click.option("--alpha-from", required=True, type=float)
@click.option("--alpha-to", required=True, type=float)
@click.option("--steps", required=True, type=int)
@click.option("--out", type=click.Path(), default=None)
def sweep(rule, k, ell, n, trials, seed, alpha_from, alpha_to, steps, out):
    """Certified-SAT fraction over a uniform alpha grid as CSV."""
    cfg = _experiment_config(rule, k, ell, alpha_from, n, trials, seed)
    try:
        result = sweep_alpha(cfg, alpha_from, alpha_to, steps)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    header = ["alpha", "sat_fraction", "ci_lo", "ci_hi", "trials"]
    body = [
        [f"{p.alpha:.6g}", f"{p.sat_fraction:.6g}", f"{p.ci_lo:.6g}",
         f"{p.ci_hi:.6g}", str(p.trials)]
        for p in result.points
    ]
    _emit(_csv(header, body), out)


@main.command("find-threshold")
@click.option("--rule", required=True, type=click.Choice(_RULE_CHOICES))
@click.option("--k", required=True, type=int)
@click.option("--l", "ell", required=True, type=int)
@click.option("--n", required=True, type=int)
@click.option("--trials", default=30, type=int, show_default=True)
@click.option("--seed", required=True, type=int)
@click.option("--alpha-lo", required=True, type=float)
@click.option("--alpha-hi", required=True, type=float)
@click.option("--tol", required=True, type=float)
def find_threshold(rule, k, ell, n, trials, seed, alpha_lo, alpha_hi, tol):
    """Bisection estimate of the empirical 0.5-crossing density as JSON."""
    cfg = _experiment_config(rule, k, ell, alpha_lo, n, trials, seed)
    try:
        crossing = empirical_threshold(cfg, alpha_lo, alpha_hi, tol)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    payload = {
        "rule": rule, "k": k, "l": ell, "n": n, "trials": trials, "seed": seed,
        "alpha_lo": _sig6(alpha_lo), "alpha_hi": _sig6(alpha_hi),
        "tol": _sig6(tol),
        "iterations": bisection_iterations(alpha_lo, alpha_hi, tol),
        "threshold": _sig6(crossing),
    }
    click.echo(json.dumps(payload, indent=2))


@main.command("gw-tail")
@click.option("--rho", required=True, type=float)
@click.option("--runs", required=True, type=int)
@click.option("--l-max", required=True, type=int)
@click.option("--seed", required=True, type=int)
@click.option("--start", type=click.Choice(["positive", "negative"]), default="positive")
@click.option("--cap", default=1_000_000, type=int, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def gw_tail(rho, runs, l_max, seed, start, cap, out):
    """Empirical branching-process tail against the certificate bound, CSV."""
    if not (0 <= rho < 1):
        raise click.UsageError("rho must lie in [0, 1)")
    try:
        cfg = GwConfig(mean_matrix=symmetric_mean_matrix(rho), start_type=start,
                       runs=runs, cap=cap, seed=seed)
        points = tail_curve(cfg, l_max)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    header = ["L", "empirical_sf", "bound", "stderr"]
    body = [
        [str(p.length), f"{p.empirical_sf:.6g}", f"{p.bound:.6g}", f"{p.stderr:.6g}"]
        for p in points
    ]
    _emit(_csv(header, body), out)


@main.command()
@click.option("--suite", type=click.Choice(["oracle", "symmetry", "spectral", "all"]),
              default="all", show_default=True)
def validate(suite):
    """Run the self-check suites; exit 0 iff every check passes."""
    results = run_suites(suite)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        detail = f" ({r.detail})" if r.detail else ""
        click.echo(f"{status} {r.suite}/{r.name}{detail}")
        failed += not r.passed
    if failed:
        click.echo(f"{failed} check(s) failed", err=True)
        sys.exit(1)


@main.command("export-dimacs")
@click.option("--rule", required=True, type=click.Choice(_RULE_CHOICES))
@click.option("--k", required=True, type=int)
@click.option("--l", "ell", required=True, type=int)
@click.option("--alpha", required=True, type=float)
@click.option("--n", required=True, type=int)
@click.option("--seed", required=True, type=int)
@click.option("--out", required=True, type=click.Path())
@click.option("--projected", is_flag=True, default=False,
              help="export the projected 2-CNF instead of the k-CNF")
def export_dimacs_cmd(rule, k, ell, alpha, n, seed, out, projected):
    """Generate one trial's formula and write it as DIMACS CNF."""
    cfg = _experiment_config(rule, k, ell, alpha, n, 1, seed)
    sel_vars, sel_signs, lit_a, lit_b, _ = generate_trial_formula(cfg, 0)
    if projected:
        rows = [(int(a), int(b)) for a, b in zip(lit_a, lit_b)]
    else:
        signed = np.where(sel_signs, sel_vars, -sel_vars) if sel_vars.size else sel_vars
        rows = [tuple(int(x) for x in row) for row in signed]
    with open(out, "w") as sink:
        export_dimacs(rows, n, sink)


if __name__ == "__main__":
    main()
