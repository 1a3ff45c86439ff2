"""Pure-numpy fallback for the compiled kernels in `_kernels.pyx`."""

from __future__ import annotations

import numpy as np


def permanent_ryser(a: np.ndarray) -> complex:
    """Permanent via Ryser's inclusion-exclusion with Gray-code subset order."""
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1.0 + 0.0j
    row_sums = np.zeros(n, dtype=np.complex128)
    total = 0.0 + 0.0j
    prev_gray = 0
    popcount = 0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        j = (gray ^ prev_gray).bit_length() - 1
        if (gray >> j) & 1:
            popcount += 1
            row_sums += a[:, j]
        else:
            popcount -= 1
            row_sums -= a[:, j]
        prev_gray = gray
        sign = 1 if (n - popcount) % 2 == 0 else -1
        total += sign * row_sums.prod()
    return complex(total)


def immanant_sum(a: np.ndarray, perms: np.ndarray, chars: np.ndarray) -> complex:
    """Character-weighted permutation sum sum_p chars[p] * prod_i a[i, perms[p, i]]."""
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if perms.shape[1] != n:
        raise ValueError("permutation table width does not match matrix size")
    if perms.shape[0] != chars.shape[0]:
        raise ValueError("one character value is required per permutation")
    products = a[np.arange(n), perms].prod(axis=1)
    return complex(np.dot(chars.astype(np.complex128), products))
