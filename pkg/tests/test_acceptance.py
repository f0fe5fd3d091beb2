"""Acceptance suite: one test (or tight test group) per acceptance criterion.

Each criterion's tolerances are pinned here, not tuned elsewhere.  Criterion
numbering follows the package requirements; every test prints a PASS line on
success so `pytest -v -s tests/test_acceptance.py` reads as a checklist.

Known red: test_criterion_02_hybrid_minimal_choice_k4_as_stated asserts the
stated minimal choice count of 4 at k = 4 for the hybrid rule.  The strongest
certificate the closed forms support (conditioning on the run coin, giving
the max-positives threshold) already clears the first-moment bound at
ell = 3 (alpha = 16.382 > 11.090), so the computed minimal count is 3 and
the assertion fails.  The coin-averaged closed form cannot reproduce the
stated value either (its alpha(4, 4) is 2.767 < 11.090).  See the README's
"Known failing acceptance check" section.
"""

import math
from fractions import Fraction

import numpy as np
import pytest
from click.testing import CliRunner

from achsat.analytics import (
    TABLE_REFERENCE,
    TypeFrequencies,
    certified_alpha,
    comparison_table,
    first_moment_bound,
    frequencies,
    mean_matrix,
    minimal_choices,
    spectral_data,
    tail_constants,
    threshold_alpha,
)
from achsat.branching import GwConfig, expected_total_progeny, run_ensemble, symmetric_mean_matrix, tail_curve
from achsat.cli import main as cli_main
from achsat.digraph import build_digraph, extract_assignment, is_satisfiable, strongly_connected_components
from achsat.harness import ExperimentConfig, run_trial
from achsat.oracle import brute_force_2sat, satisfies_clause
from achsat.rules import RuleKind, RuleSpec, RunState, select_indices

from helpers import random_two_cnf

TABLE_TOL = 0.005


def _threshold(kind, ell, k):
    return threshold_alpha(RuleSpec(kind, ell), k).alpha


# --------------------------------------------------------------------------
# criterion 1: threshold table reproduction


def test_criterion_01_table_reproduction():
    spot_anchors = {
        ("sym", 4, 5): 18.086, ("sym", 5, 4): 65.032, ("sym", 6, 3): 76.861,
        ("maxpos", 3, 2): 2.218, ("maxpos", 4, 5): 202.861,
        ("perkins", 3, 2): 1.612, ("perkins", 4, 3): 5.610, ("perkins", 7, 2): 21.041,
    }
    for (col, k, ell), want in spot_anchors.items():
        kind = {"sym": RuleKind.MIDDLE_HEAVY, "maxpos": RuleKind.MAX_POSITIVES,
                "perkins": RuleKind.PERKINS}[col]
        assert abs(_threshold(kind, ell, k) - want) <= TABLE_TOL, (col, k, ell)

    for (k, ell), ref in TABLE_REFERENCE.items():
        assert abs(first_moment_bound(k) - ref["first_moment"]) <= TABLE_TOL
        assert abs(_threshold(RuleKind.PERKINS, ell, k) - ref["perkins"]) <= TABLE_TOL
        assert abs(_threshold(RuleKind.MAX_POSITIVES, ell, k) - ref["maxpos"]) <= TABLE_TOL
        rows = comparison_table([k], [ell])
        assert len(rows) == 1
        row = rows[0]
        if ref["sym"] is None:
            assert row.alpha_sym is None  # NA respected for k = 3
        else:
            assert abs(row.alpha_sym - ref["sym"]) <= TABLE_TOL

    # The unbiased-hybrid column is NOT asserted equal to the reference: the
    # engine's coin-averaged evaluation is asserted instead, and every
    # reference row must carry the documented-discrepancy note.
    assert abs(_threshold(RuleKind.HYBRID, 4, 4) - 2.767) <= TABLE_TOL
    for (k, ell), ref in TABLE_REFERENCE.items():
        row = comparison_table([k], [ell])[0]
        assert abs(row.alpha_hybrid_formula - ref["hyb_unbiased"]) > TABLE_TOL
        assert row.hybrid_note, f"missing discrepancy note at {(k, ell)}"
    print("ACCEPTANCE criterion-01: PASS (threshold table within +/-0.005)")


# --------------------------------------------------------------------------
# criterion 2: minimal choice counts


def test_criterion_02_middle_heavy_minimal_choices():
    expected = {4: 5, 5: 4, **{k: 3 for k in range(6, 21)}}
    for k, ell in expected.items():
        assert minimal_choices(RuleKind.MIDDLE_HEAVY, k, 8) == ell, k
        assert _threshold(RuleKind.MIDDLE_HEAVY, ell, k) > first_moment_bound(k)
    print("ACCEPTANCE criterion-02a: PASS (middle-heavy minimal choices)")


def test_criterion_02_hybrid_minimal_choices_k5_to_20():
    for k in range(5, 21):
        assert minimal_choices(RuleKind.HYBRID, k, 8) == 3, k
        assert certified_alpha(RuleKind.HYBRID, 3, k) > first_moment_bound(k)
    print("ACCEPTANCE criterion-02b: PASS (hybrid minimal choices, k = 5..20)")


def test_criterion_02_hybrid_stated_choices_are_sufficient():
    # the stated (k, ell) pairs all clear the bound strictly
    assert certified_alpha(RuleKind.HYBRID, 4, 4) > first_moment_bound(4)
    for k in range(5, 21):
        assert certified_alpha(RuleKind.HYBRID, 3, k) > first_moment_bound(k)
    print("ACCEPTANCE criterion-02c: PASS (hybrid stated choices sufficient)")


def test_criterion_02_hybrid_minimal_choice_k4_as_stated():
    # Stated value: 4.  See the module docstring: the computed minimal choice
    # count is 3 under the per-branch certificate (alpha(4,3) = 16.382 beats
    # 11.090) and no closed form in the package yields 4; this assertion is
    # expected to fail and is kept as stated rather than weakened.
    assert minimal_choices(RuleKind.HYBRID, 4, 8) == 4
    print("ACCEPTANCE criterion-02d: PASS (hybrid minimal choice at k = 4)")


# --------------------------------------------------------------------------
# criterion 3: oracle equivalence


def test_criterion_03_certificate_agrees_with_exhaustive_search():
    rng = np.random.default_rng(30303)
    disagreements = 0
    for _ in range(1000):
        n = int(rng.integers(2, 11))
        m = int(rng.integers(0, 41))
        formula = random_two_cnf(rng, n, m)
        graph = build_digraph(formula, n)
        partition = strongly_connected_components(graph)
        verdict = is_satisfiable(graph, partition)
        brute = brute_force_2sat(formula, n)
        if verdict != (brute is not None):
            disagreements += 1
        if verdict:
            witness = extract_assignment(graph, partition)
            assert all(satisfies_clause(witness, tc.literals()) for tc in formula)
    assert disagreements == 0
    print("ACCEPTANCE criterion-03: PASS (1000 instances, 0 disagreements)")


# --------------------------------------------------------------------------
# criterion 4: projection soundness in full trials


def test_criterion_04_certified_witnesses_satisfy_the_k_cnf():
    cfg = ExperimentConfig(k=4, n=200, rule=RuleSpec(RuleKind.MIDDLE_HEAVY, 5),
                           alpha=10.0, trials=1, seed=40404)
    violations = 0
    certified = 0
    for j in range(500):
        out = run_trial(cfg, j)
        if out.certified_sat:
            certified += 1
            if not out.witness_checked:
                violations += 1
    assert violations == 0
    assert certified > 0
    print(f"ACCEPTANCE criterion-04: PASS ({certified}/500 certified, 0 violations)")


# --------------------------------------------------------------------------
# criterion 5: empirical selected-type frequencies


def _empirical_type_counts(kind: RuleKind, k: int, ell: int, steps: int,
                           rng: np.random.Generator) -> np.ndarray:
    spec = RuleSpec(kind, ell)
    mirror = kind is RuleKind.MIN_POSITIVES
    counts = np.zeros(3, dtype=np.int64)
    if kind is RuleKind.HYBRID:
        # pool over many short runs so the per-run coin averages out
        runs, per_run = steps // 10, 10
        coins = rng.integers(0, 2, size=runs)
        profiles = rng.binomial(k, 0.5, size=(runs * per_run, ell))
        blocks = profiles.reshape(runs, per_run, ell)
        for coin in (0, 1):
            block = blocks[coins == coin].reshape(-1, ell)
            chosen = select_indices(spec, RunState(coin_b=coin), block, k)
            x_sel = block[np.arange(block.shape[0]), chosen]
            for t in range(3):
                counts[t] += int((np.minimum(x_sel, 2) == t).sum())
        return counts
    profiles = rng.binomial(k, 0.5, size=(steps, ell))
    chosen = select_indices(spec, RunState(), profiles, k)
    x_sel = profiles[np.arange(steps), chosen]
    types = 2 - np.minimum(k - x_sel, 2) if mirror else np.minimum(x_sel, 2)
    return np.bincount(types, minlength=3)


def test_criterion_05_selected_type_frequencies_match_analytics():
    rng = np.random.default_rng(54545)
    steps = 100_000
    for kind in RuleKind:
        for k, ell in ((4, 5), (5, 4), (6, 3)):
            spec = RuleSpec(kind, 1 if kind is RuleKind.UNIFORM else ell)
            counts = _empirical_type_counts(kind, k, spec.ell, steps, rng)
            assert counts.sum() == steps
            expected = frequencies(spec, k).as_floats()
            for t, p in enumerate(expected):
                sigma = math.sqrt(p * (1 - p) / steps)
                assert abs(counts[t] / steps - p) <= 3 * sigma + 1e-12, (kind, k, ell, t)
    print("ACCEPTANCE criterion-05: PASS (6 rules x 3 settings within 3 sigma)")


# --------------------------------------------------------------------------
# criterion 6: satisfiability below the certified threshold


def test_criterion_06_subthreshold_trials_are_certified_sat():
    cfg = ExperimentConfig(k=4, n=10_000, rule=RuleSpec(RuleKind.MIDDLE_HEAVY, 5),
                           alpha=14.0, trials=1, seed=60606)
    sat = sum(run_trial(cfg, j).certified_sat for j in range(50))
    assert sat / 50 >= 0.95
    print(f"ACCEPTANCE criterion-06: PASS ({sat}/50 certified SAT at alpha = 14)")


# --------------------------------------------------------------------------
# criterion 7: spectral identities


def test_criterion_07_spectral_identities():
    rng = np.random.default_rng(70707)
    for _ in range(100):
        raw = rng.random(3) + 0.01
        p0, p1, _ = (Fraction(float(v)).limit_denominator(10**9) for v in raw / raw.sum())
        p2 = 1 - p0 - p1
        freqs = TypeFrequencies(rule=RuleSpec(RuleKind.UNIFORM, 1), k=4,
                                p0=p0, p1=p1, p2=p2)
        alpha = float(rng.uniform(0.1, 2.0))
        mm = mean_matrix(alpha, freqs)
        sd = spectral_data(mm)
        assert np.abs(mm.matrix @ sd.v1 - sd.rho1 * sd.v1).max() <= 1e-10
        power = np.eye(2)
        ones = np.ones(2)
        for t in range(0, 41):
            direct = float(ones @ power @ ones)
            closed = sd.ones_form(t)
            assert abs(closed - direct) <= 1e-10 * max(1.0, abs(direct)), t
            assert direct <= sd.c_m * sd.rho1**t * (1 + 1e-10)
            power = power @ mm.matrix
    print("ACCEPTANCE criterion-07: PASS (eigen + closed form within 1e-10, t <= 40)")


# --------------------------------------------------------------------------
# criterion 8: branching tail certificate


@pytest.mark.parametrize("rho", [0.5, 0.8])
def test_criterion_08_branching_tail_certificate(rho):
    runs = 100_000
    cfg = GwConfig(mean_matrix=symmetric_mean_matrix(rho), runs=runs, seed=80808)
    points = tail_curve(cfg, 50)
    for p in points:
        assert p.empirical_sf <= p.bound + 2 * p.stderr, p.length
    totals = run_ensemble(cfg).totals
    want = expected_total_progeny(cfg.mean_matrix)
    se = totals.std(ddof=1) / math.sqrt(runs)
    assert abs(totals.mean() - want) <= 3 * se
    constants = tail_constants(rho)
    assert constants.delta > 0 and constants.zeta >= 2
    print(f"ACCEPTANCE criterion-08 (rho={rho}): PASS (tail bound holds to L = 50)")


# --------------------------------------------------------------------------
# criterion 9: reachable-set growth


def test_criterion_09_reachable_sets_grow_logarithmically():
    """Max reachable set size vs n at alpha = 0.8/Q.

    Run on the uniform baseline at k = 3, whose balanced type mix keeps the
    tail constants moderate: the expected slope against ln n is about
    1/(rho - 1 - ln rho) ~= 43 at rho = 0.8, so the slope bound is pinned at
    3x that scale and the growth-ratio bound far below the factor-8 a
    linear-in-n trend would produce.
    """
    rule = RuleSpec(RuleKind.UNIFORM, 1)
    alpha = 0.8 * threshold_alpha(rule, 3).alpha
    sizes = {}
    for n in (500, 1000, 2000, 4000):
        cfg = ExperimentConfig(k=3, n=n, rule=rule, alpha=alpha, trials=1,
                               seed=90909, measure_reachable=True)
        sizes[n] = float(np.mean([run_trial(cfg, j).max_reachable for j in range(20)]))
    ns = np.array(sorted(sizes))
    ys = np.array([sizes[n] for n in ns])
    design = np.vstack([np.log(ns), np.ones(ns.size)]).T
    slope, _ = np.linalg.lstsq(design, ys, rcond=None)[0]
    ratio = sizes[4000] / sizes[500]
    assert (ys > 0).all()
    assert 5.0 <= slope <= 130.0, f"slope {slope:.1f} outside the log-growth band"
    assert ratio <= 4.5, f"growth ratio {ratio:.2f} suggests super-logarithmic trend"
    print(f"ACCEPTANCE criterion-09: PASS (slope {slope:.1f}, ratio {ratio:.2f})")


# --------------------------------------------------------------------------
# criterion 10: byte-identical replays


@pytest.mark.parametrize("args", [
    ["thresholds", "--rule", "middle-heavy", "--k", "4", "--l", "5"],
    ["table", "--k-min", "3", "--k-max", "7", "--l-min", "2", "--l-max", "5"],
    ["simulate", "--rule", "hybrid", "--k", "4", "--l", "4", "--alpha", "2.0",
     "--n", "200", "--trials", "3", "--seed", "77"],
    ["sweep", "--rule", "uniform", "--k", "3", "--l", "1", "--n", "100",
     "--trials", "4", "--seed", "5", "--alpha-from", "0.5", "--alpha-to", "1.5",
     "--steps", "3"],
    ["find-threshold", "--rule", "uniform", "--k", "3", "--l", "1", "--n", "150",
     "--trials", "6", "--seed", "8", "--alpha-lo", "0.4", "--alpha-hi", "2.0",
     "--tol", "0.4"],
    ["gw-tail", "--rho", "0.8", "--runs", "2000", "--l-max", "12", "--seed", "3"],
    ["validate", "--suite", "spectral"],
])
def test_criterion_10_commands_replay_byte_identically(args):
    runner = CliRunner()
    first = runner.invoke(cli_main, args, catch_exceptions=False)
    second = runner.invoke(cli_main, args, catch_exceptions=False)
    assert first.exit_code == 0
    assert first.output == second.output
    assert first.output  # something was actually emitted


def test_criterion_10_export_dimacs_replays_byte_identically(tmp_path):
    runner = CliRunner()
    paths = []
    for name in ("a.cnf", "b.cnf"):
        out = tmp_path / name
        args = ["export-dimacs", "--rule", "perkins", "--k", "3", "--l", "2",
                "--alpha", "2.0", "--n", "60", "--seed", "13", "--out", str(out)]
        assert runner.invoke(cli_main, args, catch_exceptions=False).exit_code == 0
        paths.append(out.read_bytes())
    assert paths[0] == paths[1]
    print("ACCEPTANCE criterion-10: PASS (byte-identical replays)")
