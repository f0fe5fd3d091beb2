"""Exhaustive desk-scale ground truth for satisfiability.

Assignments are enumerated as integer bitmasks in ascending order (bit i-1
holds variable i); the first satisfying mask wins, which keeps oracle outputs
reproducible.  A hard cap of n <= 24 bounds the 2^n enumeration.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .clauses import Clause
from .digraph import ResourceLimitError
from .projection import TwoClause

_MAX_VARS = 24
_CHUNK = 1 << 18


def _mask_to_assignment(mask: int, n: int) -> np.ndarray:
    return np.array([(mask >> i) & 1 == 1 for i in range(n)], dtype=bool)


def _first_satisfying_mask(literal_rows: Sequence[Sequence[int]], n: int) -> Optional[int]:
    if n > _MAX_VARS:
        raise ResourceLimitError(f"exhaustive search limited to n <= {_MAX_VARS}")
    total = 1 << n
    for start in range(0, total, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, total), dtype=np.uint32)
        ok = np.ones(masks.shape, dtype=bool)
        for lits in literal_rows:
            sat = np.zeros(masks.shape, dtype=bool)
            for lit in lits:
                bit = (masks >> (abs(lit) - 1)) & 1
                sat |= (bit == 1) if lit > 0 else (bit == 0)
            ok &= sat
            if not ok.any():
                break
        if ok.any():
            return int(masks[np.argmax(ok)])
    return None


def brute_force_ksat(formula: Sequence[Clause], n: int) -> Optional[np.ndarray]:
    """First satisfying assignment of a k-CNF, or None if unsatisfiable."""
    mask = _first_satisfying_mask([c.literals() for c in formula], n)
    return None if mask is None else _mask_to_assignment(mask, n)


def brute_force_2sat(formula: Sequence[TwoClause], n: int) -> Optional[np.ndarray]:
    """First satisfying assignment of a 2-CNF, or None if unsatisfiable."""
    mask = _first_satisfying_mask([tc.literals() for tc in formula], n)
    return None if mask is None else _mask_to_assignment(mask, n)


def satisfies_clause(assignment: np.ndarray, literals: Sequence[int]) -> bool:
    return any(assignment[abs(lit) - 1] == (lit > 0) for lit in literals)


def verify_projection_soundness(
    k_formula: Sequence[Clause],
    two_formula: Sequence[TwoClause],
    assignment: np.ndarray,
) -> bool:
    """Check the implication: satisfies the projection => satisfies the k-CNF.

    The i-th 2-clause must be the projection of the i-th k-clause, hence the
    length check.  The implication is evaluated literally clause by clause,
    so an assignment that already falsifies the projection passes vacuously.
    """
    if len(k_formula) != len(two_formula):
        raise ValueError("projected formula must pair up with the k-CNF")
    sat_projection = all(satisfies_clause(assignment, tc.literals()) for tc in two_formula)
    if not sat_projection:
        return True
    return all(satisfies_clause(assignment, c.literals()) for c in k_formula)
