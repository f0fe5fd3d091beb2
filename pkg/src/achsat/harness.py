"""Full clause-choice process runs with the 2-SAT certificate verdict.

A trial plays the whole process: m = floor(alpha n) steps, ell fresh uniform
candidates per step, one clause selected per the rule, projected to a
2-clause, and finally a single SCC pass over the implication digraph of all
m projected clauses.  A satisfiable projection certifies the k-CNF; the
extracted witness is verified against every original k-clause before the
trial may report certified_sat.  An unsatisfiable projection is reported as
"certificate failed", never as UNSAT of the k-CNF: the projection argument
is one-sided.

The min-positives rule is certified through the mirrored projection (keep
negative literals); see :mod:`achsat.analytics` for why that is the coherent
reading of its frequency formulas.

Reproducibility: the random stream of trial j is seeded from the pair
(master seed, j), so trials are independent of execution order and safe to
run concurrently; sweep grid points and bisection probes salt the master
seed with tagged counters the same way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import IO, Iterable, Optional, Sequence, Union

import numpy as np

from .clauses import Clause, sample_clause_block
from .digraph import (
    build_digraph_from_arrays,
    extract_assignment,
    is_satisfiable,
    max_reachable_set_size,
    satisfies_two_clauses,
    strongly_connected_components,
)
from .projection import TwoClause, project_block
from .rules import RuleKind, RuleSpec, init_run_state, select_indices

_SWEEP_TAG = 101
_PROBE_TAG = 202

WILSON_Z = 1.959963984540054  # two-sided 95%


@dataclass(frozen=True)
class ExperimentConfig:
    k: int
    n: int
    rule: RuleSpec
    alpha: float
    trials: int
    seed: int
    measure_reachable: bool = False

    def __post_init__(self):
        if not (2 <= self.k <= self.n):
            raise ValueError(f"need 2 <= k <= n, got k={self.k}, n={self.n}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.alpha < 0:
            raise ValueError("alpha must be nonnegative")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")

    @property
    def ell(self) -> int:
        return self.rule.ell

    @property
    def num_steps(self) -> int:
        return math.floor(self.alpha * self.n)


@dataclass(frozen=True)
class TrialOutcome:
    certified_sat: bool
    type_tally: tuple[int, int, int]  # counts of --, +-, ++ selections
    max_reachable: Optional[int]
    witness_checked: bool


@dataclass(frozen=True)
class SweepPoint:
    alpha: float
    sat_fraction: float
    ci_lo: float
    ci_hi: float
    trials: int


@dataclass(frozen=True)
class SweepResult:
    points: list[SweepPoint]


def trial_rng(seed: int, *path: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, *path]))


def generate_trial_formula(
    cfg: ExperimentConfig, trial_index: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Selected k-clauses and their projections for one trial.

    Returns (vars, signs, lit_a, lit_b, types): the m selected clauses as
    (m, k) arrays plus the projected 2-clause literal arrays and type codes.
    """
    rng = trial_rng(cfg.seed, trial_index)
    state = init_run_state(cfg.rule, rng)
    m = cfg.num_steps
    k, ell = cfg.k, cfg.ell
    vars_flat, signs_flat = sample_clause_block(k, cfg.n, m * ell, rng)
    cand_vars = vars_flat.reshape(m, ell, k)
    cand_signs = signs_flat.reshape(m, ell, k)
    profiles = cand_signs.sum(axis=2)
    chosen = select_indices(cfg.rule, state, profiles, k)
    rows = np.arange(m)
    sel_vars = cand_vars[rows, chosen]
    sel_signs = cand_signs[rows, chosen]
    mirror = cfg.rule.kind is RuleKind.MIN_POSITIVES
    lit_a, lit_b, types = project_block(sel_vars, sel_signs, mirror=mirror)
    return sel_vars, sel_signs, lit_a, lit_b, types


def run_trial(cfg: ExperimentConfig, trial_index: int) -> TrialOutcome:
    """One full process run ending in the SCC certificate."""
    sel_vars, sel_signs, lit_a, lit_b, types = generate_trial_formula(cfg, trial_index)
    tally = np.bincount(types, minlength=3)
    graph = build_digraph_from_arrays(lit_a, lit_b, cfg.n)
    partition = strongly_connected_components(graph)
    certified = is_satisfiable(graph, partition)
    witness_checked = False
    if certified:
        assignment = extract_assignment(graph, partition)
        ok_projection = satisfies_two_clauses(assignment, lit_a, lit_b)
        ok_original = bool(
            (assignment[sel_vars - 1] == sel_signs).any(axis=1).all()
        ) if sel_vars.size else True
        witness_checked = ok_projection and ok_original
    reach = max_reachable_set_size(graph) if cfg.measure_reachable else None
    return TrialOutcome(
        certified_sat=certified and witness_checked,
        type_tally=(int(tally[0]), int(tally[1]), int(tally[2])),
        max_reachable=reach,
        witness_checked=witness_checked,
    )


def wilson_interval(successes: int, trials: int, z: float = WILSON_Z) -> tuple[float, float]:
    """Wilson 95% score interval; always contains the point estimate."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    p_hat = successes / trials
    denom = 1.0 + z * z / trials
    center = (p_hat + z * z / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(p_hat * (1 - p_hat) / trials + z * z / (4 * trials * trials))
    # the interval's endpoints are exactly 0 resp. 1 at the boundary counts
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return (lo, hi)


def estimate_sat_probability(cfg: ExperimentConfig) -> tuple[float, tuple[float, float]]:
    """Certified-SAT fraction over cfg.trials trials with its Wilson interval."""
    successes = sum(run_trial(cfg, j).certified_sat for j in range(cfg.trials))
    return successes / cfg.trials, wilson_interval(successes, cfg.trials)


def _salted(cfg: ExperimentConfig, tag: int, counter: int, alpha: float) -> ExperimentConfig:
    salt = int(np.random.SeedSequence([cfg.seed, tag, counter]).generate_state(1)[0])
    return replace(cfg, seed=salt, alpha=alpha)


def sweep_alpha(
    cfg: ExperimentConfig, alpha_from: float, alpha_to: float, steps: int
) -> SweepResult:
    """Certified-SAT estimates over a uniform alpha grid (endpoints included)."""
    if not (alpha_from < alpha_to):
        raise ValueError("need alpha_from < alpha_to")
    if steps < 2:
        raise ValueError("need at least 2 grid points")
    points = []
    for i, alpha in enumerate(np.linspace(alpha_from, alpha_to, steps)):
        sub = _salted(cfg, _SWEEP_TAG, i, float(alpha))
        frac, (lo, hi) = estimate_sat_probability(sub)
        points.append(
            SweepPoint(alpha=float(alpha), sat_fraction=frac, ci_lo=lo, ci_hi=hi,
                       trials=cfg.trials)
        )
    return SweepResult(points=points)


def bisection_iterations(alpha_lo: float, alpha_hi: float, tol: float) -> int:
    return max(0, math.ceil(math.log2((alpha_hi - alpha_lo) / tol)))


def empirical_threshold(
    cfg: ExperimentConfig, alpha_lo: float, alpha_hi: float, tol: float
) -> float:
    """Bisection on the 0.5-crossing of the certified-SAT fraction.

    Requires a valid bracket: fraction >= 0.5 at alpha_lo and <= 0.5 at
    alpha_hi.  The returned midpoint is within tol of the final bracket.
    """
    if not (alpha_lo < alpha_hi) or tol <= 0:
        raise ValueError("need alpha_lo < alpha_hi and tol > 0")
    frac_lo, _ = estimate_sat_probability(_salted(cfg, _PROBE_TAG, 0, alpha_lo))
    if frac_lo < 0.5:
        raise ValueError(f"invalid bracket: fraction {frac_lo} < 0.5 at alpha_lo")
    frac_hi, _ = estimate_sat_probability(_salted(cfg, _PROBE_TAG, 1, alpha_hi))
    if frac_hi > 0.5:
        raise ValueError(f"invalid bracket: fraction {frac_hi} > 0.5 at alpha_hi")
    lo, hi = alpha_lo, alpha_hi
    for iteration in range(bisection_iterations(alpha_lo, alpha_hi, tol)):
        mid = (lo + hi) / 2.0
        frac, _ = estimate_sat_probability(_salted(cfg, _PROBE_TAG, 2 + iteration, mid))
        if frac >= 0.5:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


FormulaLike = Union[Clause, TwoClause, Sequence[int]]


def export_dimacs(formula: Iterable[FormulaLike], n: int, sink: IO[str]) -> None:
    """Write standard DIMACS CNF: header then one zero-terminated clause per line."""
    rows = [
        item.literals() if isinstance(item, (Clause, TwoClause)) else tuple(item)
        for item in formula
    ]
    sink.write(f"p cnf {n} {len(rows)}\n")
    for lits in rows:
        sink.write(" ".join(str(l) for l in lits) + " 0\n")


def parse_dimacs(lines: Iterable[str]) -> tuple[int, list[list[int]]]:
    """Read DIMACS CNF text back into (n, clause literal lists)."""
    n = 0
    clauses: list[list[int]] = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"malformed problem line: {line!r}")
            n = int(parts[2])
            continue
        lits = [int(tok) for tok in line.split()]
        if not lits or lits[-1] != 0:
            raise ValueError(f"clause line must end with 0: {line!r}")
        clauses.append(lits[:-1])
    return n, clauses
