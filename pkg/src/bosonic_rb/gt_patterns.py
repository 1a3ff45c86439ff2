"""Gelfand-Tsetlin patterns: enumeration, occupations, weights, Fock map.

A pattern is a tuple of row tuples, top row first.  Row 0 equals the irrep
label (m entries); row i has m - i entries; consecutive rows satisfy the
betweenness condition M[i][j] >= M[i+1][j] >= M[i][j+1] >= 0.

The canonical basis order used throughout the package is descending
lexicographic on the flattened rows, which puts the highest-weight pattern
first and makes the single-photon symmetric matrix coincide with U itself.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .partitions import as_partition

__all__ = [
    "is_valid_pattern",
    "enumerate_patterns",
    "occupation",
    "weight",
    "zero_weight_states",
    "fock_to_gt",
    "pattern_index",
]


def is_valid_pattern(rows) -> bool:
    rows = tuple(tuple(r) for r in rows)
    m = len(rows[0])
    if len(rows) != m or any(len(rows[i]) != m - i for i in range(m)):
        return False
    if any(x < 0 for r in rows for x in r):
        return False
    for i in range(m - 1):
        upper, lower = rows[i], rows[i + 1]
        for j, x in enumerate(lower):
            if not (upper[j] >= x and (j + 1 >= len(upper) or x >= upper[j + 1])):
                return False
    return True


@lru_cache(maxsize=None)
def enumerate_patterns(mu, m: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All GT patterns with top row `mu`, in canonical (descending lex) order."""
    mu = as_partition(mu, m)

    def extend(partial):
        upper = partial[-1]
        if len(upper) == 1:
            yield partial
            return
        ranges = [
            range(upper[j], upper[j + 1] - 1, -1) for j in range(len(upper) - 1)
        ]
        for lower in itertools.product(*ranges):
            yield from extend(partial + (lower,))

    found = list(extend((mu,)))
    found.sort(key=lambda rows: tuple(itertools.chain.from_iterable(rows)), reverse=True)
    return tuple(found)


def occupation(pattern) -> tuple[int, ...]:
    """Occupation numbers (n_1, ..., n_m): consecutive row-sum differences.

    Indexed so the bottom row gives n_1, matching the Fock assignment of
    `fock_to_gt`.
    """
    rows = tuple(tuple(r) for r in pattern)
    sums = [sum(r) for r in rows]  # sums[i] = row with m - i entries
    sums.append(0)
    m = len(rows[0])
    return tuple(sums[m - 1 - k] - sums[m - k] for k in range(m))


def weight(pattern) -> tuple[int, ...]:
    """SU(m) weight: consecutive differences of the occupation numbers."""
    occ = occupation(pattern)
    return tuple(occ[i] - occ[i + 1] for i in range(len(occ) - 1))


@lru_cache(maxsize=None)
def zero_weight_states(mu, m: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Patterns of irrep `mu` whose weight vanishes, in canonical order.

    Empty unless |mu| is divisible by m (all occupations must equal |mu|/m).
    """
    mu = as_partition(mu, m)
    if sum(mu) % m != 0:
        return ()
    return tuple(
        p for p in enumerate_patterns(mu, m) if all(w == 0 for w in weight(p))
    )


def fock_to_gt(occupations, m: int) -> tuple[tuple[int, ...], ...]:
    """GT pattern of the Fock state |n_1, ..., n_m> in the symmetric irrep.

    Row with k entries is (n_1 + ... + n_k, 0, ..., 0); the bottom entry is
    n_1.  Inverse of `occupation` on symmetric-irrep patterns.
    """
    occ = tuple(int(x) for x in occupations)
    if len(occ) != m or any(x < 0 for x in occ):
        raise ValueError(f"need {m} non-negative occupation numbers, got {occ}")
    rows = []
    for i in range(m):  # row i has m - i entries
        rows.append((sum(occ[: m - i]),) + (0,) * (m - i - 1))
    return tuple(rows)


def pattern_index(mu, m: int) -> dict:
    """Map pattern -> position in the canonical basis order."""
    return {p: i for i, p in enumerate(enumerate_patterns(mu, m))}
