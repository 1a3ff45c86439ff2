"""Immanants, permanents, and determinants of complex matrices.

The general immanant is the naive character-weighted sum over S_d (d <= 8);
single-row and single-column shapes dispatch to Ryser's permanent and an
LU-based determinant.  The permutation sum and Ryser loop run in the
compiled kernel when it is installed (see `kernels.BACKEND`).
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import SizeCapError
from .symmetric_group import ENUMERATION_CAP, character, enumerate_group

__all__ = ["immanant", "permanent", "determinant", "sequence_immanant"]

PERMANENT_CAP = 20


def _square(a) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(np.float64))):
        raise ValueError("matrix entries must be finite")
    return a


@lru_cache(maxsize=None)
def _perm_table(d: int) -> tuple[np.ndarray, tuple[tuple[int, ...], ...]]:
    """All permutations of S_d as an int32 array plus their cycle types."""
    perms = np.empty((math.factorial(d), d), dtype=np.int32)
    types = []
    for row, (perm, ctype) in enumerate(enumerate_group(d)):
        perms[row] = perm
        types.append(ctype)
    perms.flags.writeable = False
    return perms, tuple(types)


@lru_cache(maxsize=None)
def _char_vector(kappa: tuple[int, ...], d: int) -> np.ndarray:
    _, types = _perm_table(d)
    chars = np.fromiter(
        (character(kappa, ctype) for ctype in types), dtype=np.int64, count=len(types)
    )
    chars.flags.writeable = False
    return chars


def permanent(a) -> complex:
    """Permanent via Ryser's algorithm (Gray-code order), d <= 20."""
    a = _square(a)
    d = a.shape[0]
    if d > PERMANENT_CAP:
        raise SizeCapError(f"permanent cap is d <= {PERMANENT_CAP}, got {d}")
    return kernels.permanent_ryser(a)


def determinant(a) -> complex:
    """Determinant (LAPACK LU with partial pivoting)."""
    a = _square(a)
    if a.shape[0] == 0:
        return 1.0 + 0.0j
    return complex(np.linalg.det(a))


def immanant(kappa, a) -> complex:
    """imm_kappa(A) = sum over S_d of chi_kappa(sigma) * prod_i A[i, sigma(i)].

    `kappa` must be a partition of d = A.shape[0] (trailing zeros allowed).
    The single-row and single-column cases reduce to the permanent and
    determinant and are dispatched to those routines.
    """
    a = _square(a)
    d = a.shape[0]
    kappa = tuple(int(p) for p in kappa if p != 0)
    if any(kappa[i] < kappa[i + 1] for i in range(len(kappa) - 1)):
        raise ValueError(f"not a partition: {kappa}")
    if sum(kappa) != d:
        raise ValueError(f"|{kappa}| = {sum(kappa)} does not match matrix size {d}")
    if d == 0:
        return 1.0 + 0.0j
    if kappa == (d,):
        return permanent(a)
    if kappa == (1,) * d:
        return determinant(a)
    if d > ENUMERATION_CAP:
        raise SizeCapError(
            f"general immanant cap is d <= {ENUMERATION_CAP}, got {d}"
        )
    perms, _ = _perm_table(d)
    chars = _char_vector(kappa, d)
    return kernels.immanant_sum(a, perms, chars)


def sequence_immanant(kappa, matrices) -> complex:
    """Immanant of an ordered gate sequence: imm_kappa of the product.

    `matrices` lists the gates in application order; the product is taken
    with the last-applied gate leftmost.
    """
    mats = [_square(u) for u in matrices]
    if not mats:
        raise ValueError("empty gate sequence")
    d = mats[0].shape[0]
    if any(u.shape[0] != d for u in mats):
        raise ValueError("all gates in a sequence must have equal dimension")
    product = np.eye(d, dtype=np.complex128)
    for u in mats:
        product = u @ product
    return immanant(kappa, product)
