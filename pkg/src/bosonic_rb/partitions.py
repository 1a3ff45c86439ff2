"""Integer partitions, Young-diagram arithmetic, and SU(m) irrep bookkeeping.

Partitions are plain tuples of non-negative, weakly decreasing integers,
always padded with zeros to length ``m`` when they label SU(m) irreps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "as_partition",
    "is_partition",
    "symmetric_label",
    "dual_irrep",
    "pieri_decompose",
    "dim",
    "reduce_label",
    "cost_counts",
    "Decomposition",
]


def is_partition(parts) -> bool:
    """True if `parts` is weakly decreasing with non-negative entries."""
    parts = tuple(parts)
    return all(isinstance(p, int) and p >= 0 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


def as_partition(parts, m: int) -> tuple[int, ...]:
    """Validate and zero-pad a partition to exactly `m` rows."""
    parts = tuple(int(p) for p in parts)
    if not is_partition(parts):
        raise ValueError(f"not a partition: {parts}")
    if len(parts) > m:
        raise ValueError(f"partition {parts} has more than {m} rows")
    return parts + (0,) * (m - len(parts))


@dataclass(frozen=True)
class Decomposition:
    """Multiplicity-free list of irrep labels appearing in λ ⊗ λ*."""

    lam: tuple[int, ...]
    m: int
    irreps: tuple[tuple[int, ...], ...]

    def __iter__(self):
        return iter(self.irreps)

    def __len__(self):
        return len(self.irreps)


def symmetric_label(n: int, m: int) -> tuple[int, ...]:
    """Label (n, 0, ..., 0) of the n-photon symmetric irrep of SU(m)."""
    if n < 0 or m < 1:
        raise ValueError("need n >= 0 and m >= 1")
    return (n,) + (0,) * (m - 1)


def dual_irrep(lam, m: int) -> tuple[int, ...]:
    """Dual label via the complement in the m x lam_1 rectangle."""
    lam = as_partition(lam, m)
    width = lam[0]
    return tuple(width - lam[m - 1 - i] for i in range(m))


def _horizontal_strips(base: tuple[int, ...], n: int, m: int):
    """All partitions obtained from `base` by adding n boxes, no two in a column.

    The interleaving condition mu_i >= base_i >= mu_{i+1} characterises the
    horizontal strips of the Pieri row rule.
    """

    def extend(row: int, remaining: int, prefix: tuple[int, ...]):
        if row == m:
            if remaining == 0:
                yield prefix
            return
        low = base[row]
        high = base[row - 1] if row > 0 else base[0] + remaining
        high = min(high, base[row] + remaining)
        for value in range(high, low - 1, -1):
            yield from extend(row + 1, remaining - (value - low), prefix + (value,))

    yield from extend(0, n, ())


def pieri_decompose(lam, m: int) -> Decomposition:
    """Decompose λ ⊗ λ* for a symmetric label λ = (n, 0, ..., 0).

    Adds n boxes to the dual label in distinct columns; the result is the
    multiplicity-free list {(n+k, n, ..., n, n-k) : k = 0..n}.
    """
    lam = as_partition(lam, m)
    n = lam[0]
    if any(p != 0 for p in lam[1:]):
        raise ValueError(f"pieri_decompose requires a symmetric label, got {lam}")
    dual = dual_irrep(lam, m)
    irreps = sorted(_horizontal_strips(dual, n, m))
    return Decomposition(lam=lam, m=m, irreps=tuple(irreps))


def dim(mu, m: int) -> int:
    """Irrep dimension from the Weyl formula, as an exact integer."""
    mu = as_partition(mu, m)
    value = Fraction(1)
    for i in range(m):
        for j in range(i + 1, m):
            value *= Fraction(mu[i] - mu[j] + j - i, j - i)
    if value.denominator != 1:
        raise AssertionError(f"Weyl formula gave non-integer for {mu}")
    return int(value)


def reduce_label(mu, m: int) -> tuple[int, ...]:
    """Strip full columns: subtract the last part from every part."""
    mu = as_partition(mu, m)
    return tuple(p - mu[-1] for p in mu)


def cost_counts(lam, m: int) -> tuple[int, int]:
    """(immanants needed by the filter, permanent lower bound of the original).

    With s the number of irreps in the decomposition and d the dimension of
    λ, the filter needs s - 1 immanants while the original scheme needs at
    least s - 1 + d permanents.
    """
    lam = as_partition(lam, m)
    decomp = pieri_decompose(lam, m)
    s = len(decomp)
    return s - 1, s - 1 + dim(lam, m)
