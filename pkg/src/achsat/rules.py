"""Per-step selection of one clause out of ell presented candidates.

All rules are online, non-adaptive and topology-oblivious: the choice depends
only on the sign profiles X of the current candidate tuple (and, for the
hybrid rule, on a single fair coin fixed before the first step).  Ties inside
a priority class always break toward the lowest presentation index, which
makes every rule a deterministic function of (state, candidates).

Supported rules:

    MIDDLE_HEAVY   first MID candidate, else first EDGE, else first AS
    HYBRID         first MID candidate; otherwise max X (coin b = 0) or
                   min X (coin b = 1), the coin drawn once per run
    MAX_POSITIVES  candidate with the largest X
    MIN_POSITIVES  candidate with the smallest X
    PERKINS        first of candidates 1..ell-1 with X >= 2, else the last
    UNIFORM        the first candidate (one uniform draw in law)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .clauses import Clause, SignClass, classify, positive_count


class RuleKind(enum.Enum):
    MIDDLE_HEAVY = "middle-heavy"
    HYBRID = "hybrid"
    MAX_POSITIVES = "max-pos"
    MIN_POSITIVES = "min-pos"
    PERKINS = "perkins"
    UNIFORM = "uniform"

    @classmethod
    def from_cli_name(cls, name: str) -> "RuleKind":
        for kind in cls:
            if kind.value == name:
                return kind
        raise ValueError(f"unknown rule {name!r}; expected one of "
                         f"{[k.value for k in cls]}")


@dataclass(frozen=True)
class RuleSpec:
    """A rule kind plus its number of choices per step."""

    kind: RuleKind
    ell: int

    def __post_init__(self):
        minimum = 1 if self.kind is RuleKind.UNIFORM else 2
        if self.ell < minimum:
            raise ValueError(
                f"rule {self.kind.value} requires ell >= {minimum}, got {self.ell}"
            )


@dataclass(frozen=True)
class RunState:
    """Per-run selection state; only the hybrid rule carries a coin."""

    coin_b: Optional[int] = None


@dataclass(frozen=True)
class Selection:
    index: int  # position of the chosen candidate, 1-based
    clause: Clause


def init_run_state(rule: RuleSpec, rng: np.random.Generator) -> RunState:
    """Draw the fixed-for-the-run hybrid coin; other rules are stateless."""
    if rule.kind is RuleKind.HYBRID:
        return RunState(coin_b=int(rng.integers(0, 2)))
    return RunState(coin_b=None)


def select(rule: RuleSpec, state: RunState, candidates: Sequence[Clause]) -> Selection:
    """Apply the rule to one candidate tuple and return the chosen clause."""
    if len(candidates) != rule.ell:
        raise ValueError(
            f"expected {rule.ell} candidates, got {len(candidates)}"
        )
    xs = [positive_count(c) for c in candidates]
    k = candidates[0].k
    idx = _select_index(rule, state, xs, k)
    return Selection(index=idx + 1, clause=candidates[idx])


def _select_index(rule: RuleSpec, state: RunState, xs: Sequence[int], k: int) -> int:
    kind = rule.kind
    if kind is RuleKind.UNIFORM:
        return 0
    if kind is RuleKind.MIDDLE_HEAVY:
        priority = {SignClass.MID: 0, SignClass.EDGE: 1, SignClass.AS: 2}
        ranks = [priority[classify(x, k)] for x in xs]
        return ranks.index(min(ranks))
    if kind is RuleKind.HYBRID:
        if state.coin_b is None:
            raise ValueError("hybrid rule requires a run state with a coin")
        for i, x in enumerate(xs):
            if classify(x, k) is SignClass.MID:
                return i
        target = max(xs) if state.coin_b == 0 else min(xs)
        return xs.index(target)
    if kind is RuleKind.MAX_POSITIVES:
        return xs.index(max(xs))
    if kind is RuleKind.MIN_POSITIVES:
        return xs.index(min(xs))
    if kind is RuleKind.PERKINS:
        for i, x in enumerate(xs[:-1]):
            if x >= 2:
                return i
        return len(xs) - 1
    raise ValueError(f"unhandled rule kind {kind}")


def select_indices(rule: RuleSpec, state: RunState, x_profiles: np.ndarray, k: int) -> np.ndarray:
    """Vectorised selection over many steps.

    ``x_profiles`` has shape (steps, ell); the result holds the 0-based chosen
    index per step.  Agrees with :func:`select` row by row (np.argmax/argmin
    return the first extremum, matching the lowest-index tie break).
    """
    steps, ell = x_profiles.shape
    if ell != rule.ell:
        raise ValueError(f"expected {rule.ell} candidates per step, got {ell}")
    kind = rule.kind
    if kind is RuleKind.UNIFORM:
        return np.zeros(steps, dtype=np.int64)
    if kind is RuleKind.MAX_POSITIVES:
        return np.argmax(x_profiles, axis=1)
    if kind is RuleKind.MIN_POSITIVES:
        return np.argmin(x_profiles, axis=1)
    if kind is RuleKind.PERKINS:
        fit = x_profiles[:, : ell - 1] >= 2
        first_fit = np.argmax(fit, axis=1)
        return np.where(fit.any(axis=1), first_fit, ell - 1)
    is_mid = (x_profiles >= 2) & (x_profiles <= k - 2)
    has_mid = is_mid.any(axis=1)
    first_mid = np.argmax(is_mid, axis=1)
    if kind is RuleKind.MIDDLE_HEAVY:
        is_edge = (x_profiles == 1) | (x_profiles == k - 1)
        has_edge = is_edge.any(axis=1)
        first_edge = np.argmax(is_edge, axis=1)
        first_as = np.argmax(~(is_mid | is_edge), axis=1)
        out = np.where(has_edge, first_edge, first_as)
        return np.where(has_mid, first_mid, out)
    if kind is RuleKind.HYBRID:
        if state.coin_b is None:
            raise ValueError("hybrid rule requires a run state with a coin")
        if state.coin_b == 0:
            fallback = np.argmax(x_profiles, axis=1)
        else:
            fallback = np.argmin(x_profiles, axis=1)
        return np.where(has_mid, first_mid, fallback)
    raise ValueError(f"unhandled rule kind {kind}")


def flip_all_signs(candidates: Sequence[Clause]) -> list[Clause]:
    """Negate every literal in every candidate; an involution on tuples."""
    return [Clause(c.vars, tuple(not s for s in c.signs)) for c in candidates]
