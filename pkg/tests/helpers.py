"""Shared test utilities: random instances and independent reference oracles."""

from fractions import Fraction
from itertools import product
from math import comb

import numpy as np

from achsat.clauses import Clause
from achsat.projection import TwoClause
from achsat.rules import RuleKind, RuleSpec


def random_two_cnf(rng: np.random.Generator, n: int, m: int) -> list[TwoClause]:
    out = []
    for _ in range(m):
        a, b = rng.choice(n, size=2, replace=False) + 1
        sa, sb = rng.integers(0, 2, size=2)
        out.append(TwoClause(int(a) * (1 if sa else -1), int(b) * (1 if sb else -1)))
    return out


def random_clause(rng: np.random.Generator, k: int, n: int) -> Clause:
    vs = np.sort(rng.choice(n, size=k, replace=False) + 1)
    ss = rng.integers(0, 2, size=k).astype(bool)
    return Clause(tuple(int(v) for v in vs), tuple(bool(s) for s in ss))


def reference_selected_index(rule: RuleSpec, coin_b, xs: tuple[int, ...], k: int) -> int:
    """Straight-line restatement of each rule, independent of achsat.rules."""
    kind = rule.kind
    if kind is RuleKind.UNIFORM:
        return 0
    if kind is RuleKind.MAX_POSITIVES:
        return xs.index(max(xs))
    if kind is RuleKind.MIN_POSITIVES:
        return xs.index(min(xs))
    if kind is RuleKind.PERKINS:
        for i in range(len(xs) - 1):
            if xs[i] >= 2:
                return i
        return len(xs) - 1
    mids = [i for i, x in enumerate(xs) if 2 <= x <= k - 2]
    if kind is RuleKind.MIDDLE_HEAVY:
        if mids:
            return mids[0]
        edges = [i for i, x in enumerate(xs) if x in (1, k - 1)]
        if edges:
            return edges[0]
        return 0  # all candidates are AS; lowest index wins
    if kind is RuleKind.HYBRID:
        if mids:
            return mids[0]
        target = max(xs) if coin_b == 0 else min(xs)
        return xs.index(target)
    raise AssertionError(kind)


def projected_type(x: int, k: int, mirror: bool) -> int:
    """0 for --, 1 for +-, 2 for ++ under the (possibly mirrored) projection."""
    if mirror:
        return 2 - min(k - x, 2)
    return min(x, 2)


def enumerate_type_frequencies(
    rule: RuleSpec, k: int, coin=None
) -> tuple[Fraction, Fraction, Fraction]:
    """Exact (p0, p1, p2) by exhausting all sign-profile tuples.

    Sign profiles of the ell candidates are i.i.d. Binomial(k, 1/2); the sum
    runs over all (k+1)^ell profile tuples, weighting each by its exact
    probability, selecting with the reference rule restatement, and tallying
    the projected type of the selected clause (mirrored for min-positives,
    coin-averaged for the hybrid rule unless ``coin`` pins one branch).
    """
    ell = rule.ell
    weights = [Fraction(comb(k, x), 2**k) for x in range(k + 1)]
    mirror = rule.kind is RuleKind.MIN_POSITIVES
    if rule.kind is RuleKind.HYBRID:
        coins = (0, 1) if coin is None else (coin,)
    else:
        coins = (None,)
    totals = [Fraction(0), Fraction(0), Fraction(0)]
    for profile in product(range(k + 1), repeat=ell):
        weight = Fraction(1)
        for x in profile:
            weight *= weights[x]
        for coin in coins:
            idx = reference_selected_index(rule, coin, profile, k)
            t = projected_type(profile[idx], k, mirror)
            totals[t] += weight / len(coins)
    return tuple(totals)
