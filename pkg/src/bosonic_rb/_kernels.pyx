# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: Ryser permanent and the immanant permutation sum.

Same call signatures as the numpy fallback in `_kernels_py`; the dispatcher
in `kernels` picks whichever is importable.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def permanent_ryser(const cnp.complex128_t[:, :] a):
    """Permanent via Ryser's inclusion-exclusion with Gray-code subset order."""
    cdef Py_ssize_t n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError("matrix must be square")
    if n == 0:
        return 1.0 + 0.0j
    cdef cnp.complex128_t[:] row_sums = np.zeros(n, dtype=np.complex128)
    cdef double complex total = 0.0
    cdef double complex product
    cdef unsigned long long k, gray, prev_gray = 0, mask = (1ULL << n) - 1
    cdef unsigned long long diff
    cdef Py_ssize_t i, j, popcount = 0
    for k in range(1, (1ULL << n)):
        gray = k ^ (k >> 1)
        diff = gray ^ prev_gray
        j = 0
        while not (diff >> j) & 1:
            j += 1
        if (gray >> j) & 1:
            popcount += 1
            for i in range(n):
                row_sums[i] = row_sums[i] + a[i, j]
        else:
            popcount -= 1
            for i in range(n):
                row_sums[i] = row_sums[i] - a[i, j]
        prev_gray = gray
        product = 1.0
        for i in range(n):
            product *= row_sums[i]
        if (n - popcount) % 2 == 0:
            total += product
        else:
            total -= product
    return complex(total)


def immanant_sum(const cnp.complex128_t[:, :] a,
                 const cnp.int32_t[:, :] perms,
                 const cnp.int64_t[:] chars):
    """Character-weighted permutation sum sum_p chars[p] * prod_i a[i, perms[p, i]]."""
    cdef Py_ssize_t n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError("matrix must be square")
    if perms.shape[1] != n:
        raise ValueError("permutation table width does not match matrix size")
    if perms.shape[0] != chars.shape[0]:
        raise ValueError("one character value is required per permutation")
    cdef double complex total = 0.0
    cdef double complex product
    cdef Py_ssize_t p, i
    cdef cnp.int64_t chi
    for p in range(perms.shape[0]):
        chi = chars[p]
        if chi == 0:
            continue
        product = 1.0
        for i in range(n):
            product *= a[i, perms[p, i]]
        total += chi * product
    return complex(total)
