import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bosonic_rb.gt_patterns import enumerate_patterns
from bosonic_rb.partitions import (
    as_partition,
    cost_counts,
    dim,
    dual_irrep,
    pieri_decompose,
    reduce_label,
    symmetric_label,
)


def test_symmetric_label_examples():
    assert symmetric_label(2, 3) == (2, 0, 0)
    assert symmetric_label(1, 2) == (1, 0)
    assert symmetric_label(0, 2) == (0, 0)


def test_symmetric_label_rejects_bad_input():
    with pytest.raises(ValueError):
        symmetric_label(-1, 2)
    with pytest.raises(ValueError):
        symmetric_label(1, 0)


def test_as_partition_validates():
    assert as_partition((2, 1), 3) == (2, 1, 0)
    with pytest.raises(ValueError):
        as_partition((1, 2), 3)
    with pytest.raises(ValueError):
        as_partition((1, 1, 1, 1), 3)


def test_dual_irrep_examples():
    assert dual_irrep((2, 0, 0), 3) == (2, 2, 0)
    assert dual_irrep((1, 0), 2) == (1, 0)
    assert dual_irrep((0, 0, 0), 3) == (0, 0, 0)


@given(n=st.integers(0, 4), m=st.integers(1, 4))
@settings(max_examples=30, deadline=None)
def test_dual_is_involution_on_symmetric_labels(n, m):
    lam = symmetric_label(n, m)
    twice = dual_irrep(dual_irrep(lam, m), m)
    assert reduce_label(twice, m) == reduce_label(lam, m)


def test_pieri_known_examples():
    assert pieri_decompose((1, 0), 2).irreps == ((1, 1), (2, 0))
    assert pieri_decompose((2, 0, 0), 3).irreps == ((2, 2, 2), (3, 2, 1), (4, 2, 0))


def test_pieri_closed_form():
    for n, m in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (3, 3), (2, 4)]:
        got = pieri_decompose(symmetric_label(n, m), m).irreps
        expected = tuple(
            sorted((n + k,) + (n,) * (m - 2) + (n - k,) for k in range(n + 1))
        )
        assert got == expected


def test_pieri_rejects_non_symmetric():
    with pytest.raises(ValueError):
        pieri_decompose((2, 1, 0), 3)


def test_pieri_contains_trivial_and_is_multiplicity_free():
    for n, m in [(1, 2), (2, 3), (3, 2)]:
        decomp = pieri_decompose(symmetric_label(n, m), m)
        assert len(set(decomp.irreps)) == len(decomp.irreps)
        assert any(reduce_label(mu, m) == (0,) * m for mu in decomp)


def test_dimension_sum_rule():
    for n, m in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]:
        lam = symmetric_label(n, m)
        total = sum(dim(mu, m) for mu in pieri_decompose(lam, m))
        assert total == dim(lam, m) ** 2


def test_dim_examples():
    assert dim((1, 0), 2) == 2
    assert dim((2, 1, 0), 3) == 8
    assert dim((4, 2, 0), 3) == 27


def test_dim_matches_pattern_count():
    for n, m in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3)]:
        for mu in pieri_decompose(symmetric_label(n, m), m):
            assert dim(mu, m) == len(enumerate_patterns(mu, m))


def test_reduce_label_examples():
    assert reduce_label((2, 2, 2), 3) == (0, 0, 0)
    assert reduce_label((3, 2, 1), 3) == (2, 1, 0)
    assert reduce_label((4, 2, 0), 3) == (4, 2, 0)


def test_cost_counts_examples():
    assert cost_counts((1, 0), 2) == (1, 3)
    assert cost_counts((2, 0, 0), 3) == (2, 8)
    assert cost_counts((0, 0), 2) == (0, 1)
