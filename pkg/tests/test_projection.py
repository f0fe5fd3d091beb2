import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from achsat.clauses import Clause, sample_clause_block
from achsat.projection import (
    PairType,
    TwoClause,
    project,
    project_block,
    project_mirror,
    two_clause_type,
)

from helpers import random_clause


def test_two_clause_validation():
    with pytest.raises(ValueError):
        TwoClause(1, 1)
    with pytest.raises(ValueError):
        TwoClause(1, -1)
    with pytest.raises(ValueError):
        TwoClause(0, 2)


def test_pair_type_examples():
    assert two_clause_type(TwoClause(-1, -2)) is PairType.MINUS_MINUS
    assert two_clause_type(TwoClause(1, -2)) is PairType.PLUS_MINUS
    assert two_clause_type(TwoClause(-1, 2)) is PairType.PLUS_MINUS
    assert two_clause_type(TwoClause(1, 2)) is PairType.PLUS_PLUS


def test_project_all_negative_keeps_two_smallest():
    c = Clause((2, 5, 7, 9), (False, False, False, False))
    tc = project(c)
    assert tc.pair_type is PairType.MINUS_MINUS
    assert set(tc.literals()) == {-2, -5}


def test_project_single_positive_pairs_with_smallest_negative():
    c = Clause((2, 5, 7, 9), (False, False, True, False))
    tc = project(c)
    assert tc.pair_type is PairType.PLUS_MINUS
    assert set(tc.literals()) == {7, -2}


def test_project_many_positives_is_plus_plus():
    c = Clause((1, 2, 3, 4, 5), (True, False, True, True, False))
    tc = project(c)
    assert tc.pair_type is PairType.PLUS_PLUS
    assert set(tc.literals()) == {1, 3}


def test_projected_pair_is_a_subclause():
    rng = np.random.default_rng(5)
    for _ in range(300):
        c = random_clause(rng, int(rng.integers(2, 7)), 15)
        for fn in (project, project_mirror):
            tc = fn(c)
            assert set(tc.literals()) <= set(c.literals())


def test_project_mirror_flips_roles():
    c = Clause((2, 5, 7, 9), (True, True, True, True))
    tc = project_mirror(c)
    assert tc.pair_type is PairType.PLUS_PLUS  # no negatives available
    assert set(tc.literals()) == {2, 5}
    c2 = Clause((2, 5, 7, 9), (True, False, True, True))
    tc2 = project_mirror(c2)
    assert tc2.pair_type is PairType.PLUS_MINUS
    assert set(tc2.literals()) == {-5, 2}
    c3 = Clause((2, 5, 7, 9), (True, False, True, False))
    assert project_mirror(c3).pair_type is PairType.MINUS_MINUS


@given(st.integers(0, 2**32 - 1), st.booleans())
def test_block_projection_matches_scalar(seed, mirror):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(2, 8))
    vars_, signs = sample_clause_block(k, 40, 50, rng)
    lit_a, lit_b, types = project_block(vars_, signs, mirror=mirror)
    fn = project_mirror if mirror else project
    for i in range(vars_.shape[0]):
        c = Clause(tuple(int(v) for v in vars_[i]), tuple(bool(s) for s in signs[i]))
        want = fn(c)
        assert (int(lit_a[i]), int(lit_b[i])) == want.literals()
        assert PairType(int(types[i])) is want.pair_type
