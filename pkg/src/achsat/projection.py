"""Projection of selected k-clauses to 2-clauses.

Each selected clause is reduced to two of its own literals according to its
sign profile X:

    X = 0    keep two negative literals          (type --)
    X = 1    keep the positive and one negative  (type +-)
    X >= 2   keep two positive literals          (type ++)

Because the kept pair is a sub-clause, any assignment satisfying the
projected 2-CNF satisfies the original k-CNF; the projection is the one-sided
satisfiability certificate used throughout the package.

When several literals qualify, the pair with the smallest variable indices is
kept.  Exchangeability of variable labels makes the projected pair uniform
over the qualifying pairs, so the deterministic choice does not change the
law of the projected formula while keeping replays reproducible.  The ``rng``
argument of :func:`project` is accepted (and unused) so a randomised policy
could be swapped in without changing call sites.

``project_mirror`` is the sign-flipped twin (keep negatives when plentiful).
It is the natural certificate for the min-positives rule, which is analysed
as the mirror image of max-positives; see :mod:`achsat.analytics`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .clauses import Clause, positive_count


class PairType(enum.IntEnum):
    MINUS_MINUS = 0
    PLUS_MINUS = 1
    PLUS_PLUS = 2


@dataclass(frozen=True)
class TwoClause:
    """A 2-clause over two distinct variables, literals as signed integers."""

    lit_a: int
    lit_b: int

    def __post_init__(self):
        if self.lit_a == 0 or self.lit_b == 0:
            raise ValueError("literals are nonzero signed variable indices")
        if abs(self.lit_a) == abs(self.lit_b):
            raise ValueError("a 2-clause must mention two distinct variables")

    @property
    def pair_type(self) -> PairType:
        positives = (self.lit_a > 0) + (self.lit_b > 0)
        return PairType(positives)

    def literals(self) -> tuple[int, int]:
        return (self.lit_a, self.lit_b)


def two_clause_type(tc: TwoClause) -> PairType:
    """The sign pattern of a 2-clause; +- covers both literal orders."""
    return tc.pair_type


def project(clause: Clause, rng: Optional[np.random.Generator] = None) -> TwoClause:
    """Project one clause under the positive-biased policy described above."""
    x = positive_count(clause)
    lits = clause.literals()
    if x == 0:
        kept = lits[:2]
    elif x == 1:
        pos = next(l for l in lits if l > 0)
        neg = next(l for l in lits if l < 0)
        kept = (pos, neg) if pos < -neg else (neg, pos)
    else:
        kept = tuple(l for l in lits if l > 0)[:2]
    return TwoClause(*kept)


def project_mirror(clause: Clause, rng: Optional[np.random.Generator] = None) -> TwoClause:
    """Sign-flipped projection: keep negatives unless positives are scarce."""
    flipped = Clause(clause.vars, tuple(not s for s in clause.signs))
    tc = project(flipped, rng)
    return TwoClause(-tc.lit_a, -tc.lit_b)


def project_block(
    vars_: np.ndarray, signs: np.ndarray, mirror: bool = False
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised projection of many clauses.

    ``vars_`` and ``signs`` have shape (m, k) with ascending variable rows.
    Returns ``(lit_a, lit_b, types)``: two signed literal arrays and the
    :class:`PairType` value per row.  Row semantics match :func:`project`
    (or :func:`project_mirror` when ``mirror`` is set).
    """
    if mirror:
        lit_a, lit_b, types = project_block(vars_, ~signs, mirror=False)
        return -lit_a, -lit_b, 2 - types

    m, k = signs.shape
    x = signs.sum(axis=1)
    types = np.minimum(x, 2).astype(np.int64)

    sign_int = signs.astype(np.int8)

    # first and second positive positions (valid where x >= 1 resp. x >= 2)
    first_pos = np.argmax(sign_int, axis=1)
    masked = sign_int.copy()
    masked[np.arange(m), first_pos] = 0
    second_pos = np.argmax(masked, axis=1)
    # first negative position (valid where x <= k-1)
    first_neg = np.argmax(1 - sign_int, axis=1)

    a_col = np.where(x == 0, 0, first_pos)
    b_col = np.where(x == 0, 1, np.where(x == 1, first_neg, second_pos))

    rows = np.arange(m)
    var_a = vars_[rows, a_col]
    var_b = vars_[rows, b_col]
    lit_a = np.where(x == 0, -var_a, var_a)
    lit_b = np.where(x >= 2, var_b, -var_b)

    # smallest-variable-first inside the pair, mirroring project()
    swap = np.abs(lit_a) > np.abs(lit_b)
    lit_a2 = np.where(swap, lit_b, lit_a)
    lit_b2 = np.where(swap, lit_a, lit_b)
    return lit_a2, lit_b2, types
