from collections import Counter
from itertools import product

import pytest

from bosonic_rb.gt_patterns import (
    enumerate_patterns,
    fock_to_gt,
    is_valid_pattern,
    occupation,
    pattern_index,
    weight,
    zero_weight_states,
)
from bosonic_rb.partitions import dim, pieri_decompose, symmetric_label

TEST_GRID = [
    mu
    for n, m in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3)]
    for mu in pieri_decompose(symmetric_label(n, m), m)
]


def test_counts_match_dimension():
    assert len(enumerate_patterns((1, 0), 2)) == 2
    assert len(enumerate_patterns((2, 1, 0), 3)) == 8
    assert enumerate_patterns((0, 0, 0), 3) == (((0, 0, 0), (0, 0), (0,)),)
    for mu in TEST_GRID:
        m = len(mu)
        assert len(enumerate_patterns(mu, m)) == dim(mu, m)


def test_all_enumerated_patterns_are_valid():
    for mu in TEST_GRID:
        for pattern in enumerate_patterns(mu, len(mu)):
            assert is_valid_pattern(pattern)
            assert pattern[0] == mu


def test_canonical_order_is_descending_lex():
    for mu in TEST_GRID:
        flat = [sum(p, ()) for p in enumerate_patterns(mu, len(mu))]
        assert flat == sorted(flat, reverse=True)


def test_occupation_examples():
    assert occupation(((1, 0), (1,))) == (1, 0)
    assert occupation(((0, 0), (0,))) == (0, 0)
    assert occupation(((2, 1, 0), (1, 1), (1,))) == (1, 1, 1)


def test_weight_examples():
    assert weight(((2, 1, 0), (1, 1), (1,))) == (0, 0)
    assert weight(((1, 0), (1,))) == (1,)
    assert weight(((1, 0), (0,))) == (-1,)


def test_zero_weight_states_examples():
    zw = zero_weight_states((2, 1, 0), 3)
    assert set(zw) == {
        ((2, 1, 0), (1, 1), (1,)),
        ((2, 1, 0), (2, 0), (1,)),
    }
    assert zero_weight_states((1, 0), 2) == ()
    assert zero_weight_states((2, 0), 2) == (((2, 0), (1,)),)
    assert len(zero_weight_states((4, 2, 0), 3)) == 3


def test_zero_weight_empty_when_size_not_divisible():
    assert zero_weight_states((2, 1, 0, 0), 4) == ()


def test_fock_to_gt_examples():
    assert fock_to_gt((1, 0), 2) == ((1, 0), (1,))
    assert fock_to_gt((0, 0), 2) == ((0, 0), (0,))
    with pytest.raises(ValueError):
        fock_to_gt((1, -1), 2)


def test_fock_round_trip():
    for m in (2, 3):
        for occ in product(range(4), repeat=m):
            if sum(occ) > 3:
                continue
            pattern = fock_to_gt(occ, m)
            assert is_valid_pattern(pattern)
            assert occupation(pattern) == occ


def test_weight_multiset_symmetric_under_negation():
    for mu in TEST_GRID:
        m = len(mu)
        weights = Counter(weight(p) for p in enumerate_patterns(mu, m))
        negated = Counter({tuple(-w for w in wt): c for wt, c in weights.items()})
        assert weights == negated


def test_weight_components_sum_to_zero():
    for mu in TEST_GRID:
        m = len(mu)
        totals = [0] * (m - 1)
        for p in enumerate_patterns(mu, m):
            for i, w in enumerate(weight(p)):
                totals[i] += w
        assert all(t == 0 for t in totals)


def test_pattern_index_is_consistent():
    idx = pattern_index((2, 1, 0), 3)
    patterns = enumerate_patterns((2, 1, 0), 3)
    assert all(idx[p] == i for i, p in enumerate(patterns))
