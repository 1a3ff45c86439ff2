import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bosonic_rb import _kernels_py, kernels
from bosonic_rb.errors import SizeCapError
from bosonic_rb.immanants import determinant, immanant, permanent, sequence_immanant


def naive_permanent(a):
    d = a.shape[0]
    return sum(
        np.prod([a[i, p[i]] for i in range(d)])
        for p in itertools.permutations(range(d))
    )


def random_complex(rng, d):
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


def test_two_by_two_expansions():
    rng = np.random.default_rng(0)
    for _ in range(20):
        a = random_complex(rng, 2)
        per = a[0, 0] * a[1, 1] + a[0, 1] * a[1, 0]
        det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
        assert abs(immanant((2, 0), a) - per) < 1e-12 * (1 + abs(per))
        assert abs(immanant((1, 1), a) - det) < 1e-12 * (1 + abs(det))


def test_three_by_three_mixed_immanant():
    rng = np.random.default_rng(1)
    assert immanant((2, 1, 0), np.eye(3)) == 2
    for _ in range(20):
        a = random_complex(rng, 3)
        explicit = (
            2 * a[0, 0] * a[1, 1] * a[2, 2]
            - a[0, 1] * a[1, 2] * a[2, 0]
            - a[0, 2] * a[1, 0] * a[2, 1]
        )
        assert abs(immanant((2, 1, 0), a) - explicit) < 1e-12 * (1 + abs(explicit))


def test_permanent_examples():
    assert permanent(np.eye(4)) == 1
    assert permanent(np.ones((2, 2))) == 2
    rng = np.random.default_rng(2)
    a = random_complex(rng, 4)
    expected = naive_permanent(a)
    assert abs(permanent(a) - expected) < 1e-12 * (1 + abs(expected))


def test_determinant_examples():
    assert determinant(np.eye(3)) == 1
    rng = np.random.default_rng(3)
    a = random_complex(rng, 3)
    naive = sum(
        np.prod([a[i, p[i]] for i in range(3)])
        * (1 if p in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] else -1)
        for p in itertools.permutations(range(3))
    )
    assert abs(determinant(a) - naive) < 1e-12 * (1 + abs(naive))


def test_immanant_rejects_bad_shapes():
    with pytest.raises(ValueError):
        immanant((2, 1), np.eye(2))
    with pytest.raises(ValueError):
        immanant((1, 2), np.eye(3))
    with pytest.raises(ValueError):
        immanant((2, 0), np.ones((2, 3)))


def test_size_caps():
    with pytest.raises(SizeCapError):
        permanent(np.eye(21))
    with pytest.raises(SizeCapError):
        immanant((8, 1), np.eye(9))


def test_permutation_conjugation_invariance():
    # The character is a class function, so imm(P^T A P) = imm(A).
    rng = np.random.default_rng(4)
    for _ in range(20):
        a = random_complex(rng, 3)
        perm = rng.permutation(3)
        p = np.eye(3)[:, perm]
        for kappa in [(3, 0, 0), (2, 1, 0), (1, 1, 1)]:
            v1 = immanant(kappa, a)
            v2 = immanant(kappa, p.T @ a @ p)
            assert abs(v1 - v2) < 1e-11 * (1 + abs(v1))


def test_row_multilinearity():
    rng = np.random.default_rng(5)
    a = random_complex(rng, 3)
    b = a.copy()
    row = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    scale = 0.7 - 0.2j
    for kappa in [(3, 0, 0), (2, 1, 0), (1, 1, 1)]:
        b[1] = scale * a[1] + row
        c = a.copy()
        c[1] = row
        lhs = immanant(kappa, b)
        rhs = scale * immanant(kappa, a) + immanant(kappa, c)
        assert abs(lhs - rhs) < 1e-11 * (1 + abs(rhs))


def test_sequence_immanant():
    rng = np.random.default_rng(6)
    u = random_complex(rng, 2)
    assert sequence_immanant((2, 0), [u]) == immanant((2, 0), u)
    # product of a matrix and its inverse is the identity
    seq = [u, np.linalg.inv(u)]
    assert abs(sequence_immanant((1, 1), seq) - 1) < 1e-10
    mats = [random_complex(rng, 2) for _ in range(3)]
    product = mats[2] @ mats[1] @ mats[0]
    expected = permanent(product)
    got = sequence_immanant((2, 0), mats)
    assert abs(got - expected) < 1e-11 * (1 + abs(expected))
    with pytest.raises(ValueError):
        sequence_immanant((2, 0), [])
    with pytest.raises(ValueError):
        sequence_immanant((2, 0), [np.eye(2), np.eye(3)])


@given(d=st.integers(2, 5), key=st.integers(0, 2**31 - 1))
@settings(max_examples=25, deadline=None)
def test_permanent_matches_naive_sum(d, key):
    rng = np.random.default_rng(key)
    a = random_complex(rng, d)
    expected = naive_permanent(a)
    assert abs(permanent(a) - expected) < 1e-10 * (1 + abs(expected))


def test_naive_sum_matches_specialized_routines():
    # Dual route: the character-weighted permutation sum for the single-row
    # and single-column shapes against Ryser's permanent and the LU
    # determinant, which immanant() would otherwise dispatch to.
    from bosonic_rb.immanants import _char_vector, _perm_table

    rng = np.random.default_rng(8)
    for d in range(2, 5):
        a = random_complex(rng, d)
        perms, _ = _perm_table(d)
        per_naive = kernels.immanant_sum(a, perms, _char_vector((d,), d))
        det_naive = kernels.immanant_sum(a, perms, _char_vector((1,) * d, d))
        assert abs(per_naive - permanent(a)) < 1e-12 * (1 + abs(per_naive))
        assert abs(det_naive - determinant(a)) < 1e-12 * (1 + abs(det_naive))


def test_backends_agree():
    rng = np.random.default_rng(7)
    a = random_complex(rng, 6)
    assert abs(kernels.permanent_ryser(a) - _kernels_py.permanent_ryser(a)) < 1e-10
    perms = np.array(list(itertools.permutations(range(3))), dtype=np.int32)
    chars = np.array([1, -1, -1, 1, 1, -1], dtype=np.int64)  # sign characters
    b = random_complex(rng, 3)
    assert (
        abs(kernels.immanant_sum(b, perms, chars) - _kernels_py.immanant_sum(b, perms, chars))
        < 1e-10
    )


def test_empty_matrix_conventions():
    assert permanent(np.zeros((0, 0))) == 1
    assert determinant(np.zeros((0, 0))) == 1
    assert immanant((), np.zeros((0, 0))) == 1
