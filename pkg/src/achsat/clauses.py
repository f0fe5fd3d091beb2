"""k-clauses over n boolean variables: sampling, sign profiles, and sign classes.

A clause is stored in canonical form (strictly ascending distinct variable
indices in 1..n, one sign per variable, True meaning the positive literal).
The sign profile of a clause is the number X of positive literals; clauses are
partitioned by X into three classes:

    AS    X in {0, k}        (all literals share one sign)
    EDGE  X in {1, k-1}      (one literal differs)
    MID   2 <= X <= k-2      (at least two positives and two negatives)

Class masses under the uniform clause distribution are exact dyadic rationals
and are kept as :class:`fractions.Fraction` so downstream threshold formulas
accumulate no rounding error.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class SignClass(enum.Enum):
    AS = "AS"
    EDGE = "EDGE"
    MID = "MID"


@dataclass(frozen=True)
class Clause:
    """A k-clause: ascending distinct variable indices plus aligned signs."""

    vars: tuple[int, ...]
    signs: tuple[bool, ...]

    def __post_init__(self):
        if len(self.vars) != len(self.signs):
            raise ValueError("vars and signs must have equal length")
        if len(self.vars) < 1:
            raise ValueError("clause must contain at least one literal")
        if any(v < 1 for v in self.vars):
            raise ValueError("variable indices are 1-based")
        if any(a >= b for a, b in zip(self.vars, self.vars[1:])):
            raise ValueError("variable indices must be strictly ascending")

    @property
    def k(self) -> int:
        return len(self.vars)

    def literals(self) -> tuple[int, ...]:
        """Signed DIMACS-style literals: +v for positive, -v for negative."""
        return tuple(v if s else -v for v, s in zip(self.vars, self.signs))


@dataclass(frozen=True)
class ClassMasses:
    """Exact probabilities of the AS/EDGE/MID classes for a uniform k-clause."""

    k: int
    s_as: Fraction
    s_edge: Fraction
    s_mid: Fraction

    @property
    def beta(self) -> Fraction:
        """Probability that a uniform clause is not MID, s_as + s_edge."""
        return self.s_as + self.s_edge

    def mid_hit_probability(self, ell: int) -> Fraction:
        """Probability that at least one of ell i.i.d. clauses is MID: 1 - beta**ell."""
        return 1 - self.beta**ell


def sample_clause(k: int, n: int, rng: np.random.Generator) -> Clause:
    """Draw a clause uniformly from the 2^k * C(n, k) canonical k-clauses.

    Variable sets are uniform k-subsets of [n]; signs are independent fair
    bits. Repeated calls sample with replacement.
    """
    if k < 2 or k > n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    vars_ = np.sort(rng.choice(n, size=k, replace=False) + 1)
    signs = rng.integers(0, 2, size=k).astype(bool)
    return Clause(tuple(int(v) for v in vars_), tuple(bool(s) for s in signs))


def sample_clause_block(
    k: int, n: int, count: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised uniform sampling of ``count`` clauses.

    Returns ``(vars, signs)`` with shapes (count, k): each row of ``vars`` is
    a sorted k-subset of 1..n, each row of ``signs`` holds fair sign bits.
    Uses rejection on the rare rows with a repeated variable, which is cheap
    whenever n is large relative to k^2; small n falls back to per-row draws.
    """
    if k < 2 or k > n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    if count < 0:
        raise ValueError("count must be nonnegative")
    if n < 4 * k * k:
        vars_ = np.empty((count, k), dtype=np.int64)
        for i in range(count):
            vars_[i] = np.sort(rng.choice(n, size=k, replace=False) + 1)
    else:
        vars_ = np.sort(rng.integers(1, n + 1, size=(count, k)), axis=1)
        bad = (np.diff(vars_, axis=1) == 0).any(axis=1)
        while bad.any():
            redraw = np.sort(rng.integers(1, n + 1, size=(int(bad.sum()), k)), axis=1)
            vars_[bad] = redraw
            bad = (np.diff(vars_, axis=1) == 0).any(axis=1)
    signs = rng.integers(0, 2, size=(count, k), dtype=np.int8).astype(bool)
    return vars_, signs


def positive_count(clause: Clause) -> int:
    """The sign profile X: how many literals of the clause are positive."""
    return sum(clause.signs)


def classify(x: int, k: int) -> SignClass:
    """Map a sign profile X to its class; total for 0 <= x <= k."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if x < 0 or x > k:
        raise ValueError(f"sign profile {x} out of range 0..{k}")
    if x == 0 or x == k:
        return SignClass.AS
    if x == 1 or x == k - 1:
        return SignClass.EDGE
    return SignClass.MID


def class_masses(k: int) -> ClassMasses:
    """Exact AS/EDGE/MID masses for a uniform k-clause.

    X is Binomial(k, 1/2), so s_as = 2^(1-k) and, for k >= 3,
    s_edge = k * 2^(1-k).  k = 2 is the degenerate case where X = 1 and
    X = k-1 coincide (s_edge = 1/2, not 1); the masses are therefore computed
    from the binomial pmf rather than by blindly applying the k >= 3 closed
    forms, which keeps s_as + s_edge + s_mid == 1 exact for every k >= 2.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    s_as = Fraction(2, 2**k)
    edge_profiles = {1, k - 1}
    s_edge = Fraction(sum(math.comb(k, x) for x in edge_profiles), 2**k)
    s_mid = 1 - s_as - s_edge
    return ClassMasses(k=k, s_as=s_as, s_edge=s_edge, s_mid=s_mid)
