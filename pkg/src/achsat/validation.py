"""Self-check suites behind the ``validate`` CLI command.

Three suites, each a list of named checks with fixed internal seeds so the
output is byte-identical across invocations:

    oracle    SCC certificate vs exhaustive search on random small instances,
              witness soundness, projection soundness
    symmetry  class-mass identities, sign-flip invariances, frequency sums,
              Q symmetry in (p0, p2)
    spectral  eigen identities, the closed form of 1^T M^t 1 against direct
              matrix powers, the c_m rho1^t domination, tail constants
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import analytics, clauses, digraph, oracle, projection, rules

SUITES = ("oracle", "symmetry", "spectral")


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def _random_two_cnf(rng: np.random.Generator, n: int, m: int) -> list[projection.TwoClause]:
    out = []
    for _ in range(m):
        a, b = rng.choice(n, size=2, replace=False) + 1
        sa, sb = rng.integers(0, 2, size=2)
        out.append(projection.TwoClause(int(a) * (1 if sa else -1), int(b) * (1 if sb else -1)))
    return out


def oracle_suite(instances: int = 400) -> list[CheckResult]:
    rng = np.random.default_rng(20240801)
    disagreements = 0
    witness_failures = 0
    for _ in range(instances):
        n = int(rng.integers(2, 11))
        m = int(rng.integers(0, 41))
        formula = _random_two_cnf(rng, n, m)
        graph = digraph.build_digraph(formula, n)
        part = digraph.strongly_connected_components(graph)
        scc_sat = digraph.is_satisfiable(graph, part)
        brute = oracle.brute_force_2sat(formula, n)
        if scc_sat != (brute is not None):
            disagreements += 1
        if scc_sat:
            witness = digraph.extract_assignment(graph, part)
            if not all(oracle.satisfies_clause(witness, tc.literals()) for tc in formula):
                witness_failures += 1

    soundness_failures = 0
    pairs = 200
    for _ in range(pairs):
        n = int(rng.integers(4, 13))
        k = int(rng.integers(2, min(n, 6) + 1))
        kf = []
        tf = []
        for _ in range(int(rng.integers(1, 25))):
            vs = np.sort(rng.choice(n, size=k, replace=False) + 1)
            ss = rng.integers(0, 2, size=k).astype(bool)
            clause = clauses.Clause(tuple(int(v) for v in vs), tuple(bool(s) for s in ss))
            kf.append(clause)
            tf.append(projection.project(clause))
        assignment = rng.integers(0, 2, size=n).astype(bool)
        if not oracle.verify_projection_soundness(kf, tf, assignment):
            soundness_failures += 1

    return [
        CheckResult("oracle", "scc-vs-exhaustive", disagreements == 0,
                    f"{instances} instances, {disagreements} disagreements"),
        CheckResult("oracle", "witness-satisfies-all-clauses", witness_failures == 0,
                    f"{witness_failures} failures"),
        CheckResult("oracle", "projection-soundness", soundness_failures == 0,
                    f"{pairs} random (formula, assignment) pairs"),
    ]


def symmetry_suite() -> list[CheckResult]:
    rng = np.random.default_rng(20240802)
    results = []

    masses_ok = True
    for k in range(2, 17):
        m = clauses.class_masses(k)
        if m.s_as + m.s_edge + m.s_mid != 1 or min(m.s_as, m.s_edge, m.s_mid) < 0:
            masses_ok = False
        if (m.s_mid == 0) != (k <= 3):
            masses_ok = False
    results.append(CheckResult("symmetry", "class-masses-sum-to-one", masses_ok, "k = 2..16"))

    classify_ok = all(
        clauses.classify(x, k) == clauses.classify(k - x, k)
        for k in range(2, 17)
        for x in range(k + 1)
    )
    results.append(CheckResult("symmetry", "classify-sign-flip-invariant", classify_ok, ""))

    flip_ok = True
    spec = rules.RuleSpec(rules.RuleKind.MIDDLE_HEAVY, 4)
    state = rules.RunState()
    for _ in range(300):
        k = int(rng.integers(4, 8))
        cands = []
        for _ in range(spec.ell):
            vs = np.sort(rng.choice(40, size=k, replace=False) + 1)
            ss = rng.integers(0, 2, size=k).astype(bool)
            cands.append(clauses.Clause(tuple(int(v) for v in vs), tuple(bool(s) for s in ss)))
        direct = rules.select(spec, state, cands).index
        flipped = rules.select(spec, state, rules.flip_all_signs(cands)).index
        if direct != flipped:
            flip_ok = False
    results.append(CheckResult("symmetry", "middle-heavy-flip-invariant", flip_ok,
                               "300 random candidate tuples"))

    freq_ok = True
    for kind in rules.RuleKind:
        for k in range(2, 17):
            for ell in range(2, 9):
                try:
                    f = analytics.frequencies(rules.RuleSpec(kind, ell), k)
                except ValueError:
                    continue
                if f.p0 + f.p1 + f.p2 != 1:
                    freq_ok = False
    results.append(CheckResult("symmetry", "frequency-triples-sum-to-one", freq_ok,
                               "all rules, k <= 16, ell <= 8"))

    identity_ok = True
    for k in range(4, 17):
        for ell in range(2, 9):
            f = analytics.frequencies(rules.RuleSpec(rules.RuleKind.MIDDLE_HEAVY, ell), k)
            beta = clauses.class_masses(k).beta
            if f.p0 + f.p1 != beta**ell / 2 or f.p2 != 1 - beta**ell / 2:
                identity_ok = False
    results.append(CheckResult("symmetry", "middle-heavy-mass-identity", identity_ok,
                               "p0 + p1 = beta^ell / 2"))

    q_sym_ok = True
    for _ in range(100):
        raw = rng.random(3) + 0.01
        p0, p1, p2 = (Fraction(x).limit_denominator(10**6) for x in raw / raw.sum())
        p2 = 1 - p0 - p1
        spec_u = rules.RuleSpec(rules.RuleKind.UNIFORM, 1)
        fwd = analytics.q_parameter(analytics.TypeFrequencies(spec_u, 4, p0, p1, p2))
        rev = analytics.q_parameter(analytics.TypeFrequencies(spec_u, 4, p2, p1, p0))
        if abs(fwd - rev) > 1e-12:
            q_sym_ok = False
    results.append(CheckResult("symmetry", "q-symmetric-in-p0-p2", q_sym_ok,
                               "100 random triples"))
    return results


def spectral_suite() -> list[CheckResult]:
    rng = np.random.default_rng(20240803)
    eig_ok = True
    closed_ok = True
    dominated_ok = True
    for _ in range(100):
        raw = rng.random(3) + 0.01
        p0, p1, p2 = (Fraction(x).limit_denominator(10**9) for x in raw / raw.sum())
        p2 = 1 - p0 - p1
        alpha = float(rng.uniform(0.1, 2.0))
        freqs = analytics.TypeFrequencies(rules.RuleSpec(rules.RuleKind.UNIFORM, 1), 4, p0, p1, p2)
        mm = analytics.mean_matrix(alpha, freqs)
        sd = analytics.spectral_data(mm)
        resid = np.abs(mm.matrix @ sd.v1 - sd.rho1 * sd.v1).max()
        if resid > 1e-10:
            eig_ok = False
        power = np.eye(2)
        ones = np.ones(2)
        for t in range(0, 41):
            direct = float(ones @ power @ ones)
            closed = sd.ones_form(t)
            if abs(direct - closed) > 1e-10 * max(1.0, abs(direct)):
                closed_ok = False
            if direct > sd.c_m * sd.rho1**t * (1 + 1e-12) + 1e-12:
                dominated_ok = False
            power = power @ mm.matrix
    tails_ok = True
    last_delta, last_zeta = None, None
    for rho in np.linspace(0.0, 0.99, 34):
        tc = analytics.tail_constants(float(rho))
        if tc.delta <= 0 or tc.zeta < 2:
            tails_ok = False
        if last_delta is not None and (tc.delta >= last_delta or tc.zeta <= last_zeta):
            tails_ok = False
        last_delta, last_zeta = tc.delta, tc.zeta
    return [
        CheckResult("spectral", "eigenpair-residual", eig_ok, "max residual <= 1e-10"),
        CheckResult("spectral", "closed-form-matches-matrix-powers", closed_ok,
                    "t <= 40, 100 random triples"),
        CheckResult("spectral", "quadratic-form-dominated", dominated_ok,
                    "1^T M^t 1 <= c_m rho1^t"),
        CheckResult("spectral", "tail-constants-monotone", tails_ok,
                    "delta decreasing, zeta increasing in rho"),
    ]


def run_suites(which: str = "all") -> list[CheckResult]:
    if which not in SUITES + ("all",):
        raise ValueError(f"unknown suite {which!r}")
    results: list[CheckResult] = []
    if which in ("oracle", "all"):
        results.extend(oracle_suite())
    if which in ("symmetry", "all"):
        results.extend(symmetry_suite())
    if which in ("spectral", "all"):
        results.extend(spectral_suite())
    return results
