"""Permutations of S_d, cycle types, and irreducible characters.

Characters are computed exactly (integer arithmetic) with the
Murnaghan-Nakayama rule in its beta-number form, memoized per (shape, cycle
type).  The printed tables for d = 2 and d = 3 are pinned against the known
values in the test suite.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import SizeCapError

__all__ = [
    "cycle_type",
    "character",
    "enumerate_group",
    "partitions_of",
    "irrep_dimension",
    "conjugacy_class_size",
    "CharacterTable",
    "character_table",
    "ENUMERATION_CAP",
]

# 8! = 40320 permutations; beyond this the naive permutation sums that
# consume enumerate_group stop being desk-scale.
ENUMERATION_CAP = 8


def cycle_type(perm) -> tuple[int, ...]:
    """Weakly decreasing cycle lengths of a permutation given as a tuple of images.

    `perm[i]` is the (0-based) image of point i.
    """
    perm = tuple(perm)
    d = len(perm)
    if sorted(perm) != list(range(d)):
        raise ValueError(f"not a permutation of 0..{d - 1}: {perm}")
    seen = [False] * d
    lengths = []
    for start in range(d):
        if seen[start]:
            continue
        length = 0
        point = start
        while not seen[point]:
            seen[point] = True
            point = perm[point]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


@lru_cache(maxsize=None)
def partitions_of(d: int) -> tuple[tuple[int, ...], ...]:
    """All partitions of d in descending lexicographic order."""
    if d == 0:
        return ((),)

    def gen(remaining: int, cap: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return tuple(gen(d, d))


@lru_cache(maxsize=None)
def _mn_character(shape: tuple[int, ...], cycles: tuple[int, ...]) -> int:
    """Murnaghan-Nakayama recursion on the beta-set of `shape`."""
    if not cycles:
        return 1
    rows = len(shape)
    betas = frozenset(shape[i] + (rows - 1 - i) for i in range(rows))
    t = cycles[0]
    rest = cycles[1:]
    total = 0
    for b in betas:
        if b < t or (b - t) in betas:
            continue
        # Height of the removed strip = number of occupied betas crossed.
        crossings = sum(1 for c in betas if b - t < c < b)
        new_betas = sorted((betas - {b}) | {b - t}, reverse=True)
        new_shape = tuple(nb - (rows - 1 - i) for i, nb in enumerate(new_betas))
        while new_shape and new_shape[-1] == 0:
            new_shape = new_shape[:-1]
        total += (-1) ** crossings * _mn_character(new_shape, rest)
    return total


def character(kappa, cycles) -> int:
    """Character of the S_d irrep `kappa` on the class with cycle type `cycles`.

    Trailing zeros in either argument are ignored; the stripped sizes must
    match.
    """
    kappa = tuple(p for p in kappa if p != 0)
    cycles = tuple(c for c in cycles if c != 0)
    if any(kappa[i] < kappa[i + 1] for i in range(len(kappa) - 1)):
        raise ValueError(f"not a partition: {kappa}")
    if sum(kappa) != sum(cycles):
        raise ValueError(
            f"size mismatch: |{kappa}| = {sum(kappa)} but |{cycles}| = {sum(cycles)}"
        )
    return _mn_character(kappa, tuple(sorted(cycles, reverse=True)))


def irrep_dimension(kappa) -> int:
    """Dimension of the S_d irrep via the hook length formula (independent of MN)."""
    kappa = tuple(p for p in kappa if p != 0)
    d = sum(kappa)
    hooks = 1
    for i, row in enumerate(kappa):
        for j in range(row):
            arm = row - j - 1
            leg = sum(1 for r in kappa[i + 1 :] if r > j)
            hooks *= arm + leg + 1
    return math.factorial(d) // hooks


def conjugacy_class_size(cycles) -> int:
    """Number of permutations with the given cycle type."""
    cycles = tuple(c for c in cycles if c != 0)
    d = sum(cycles)
    denom = 1
    for length in set(cycles):
        count = cycles.count(length)
        denom *= length**count * math.factorial(count)
    return math.factorial(d) // denom


def enumerate_group(d: int):
    """Yield (permutation, cycle_type) for every element of S_d.

    Permutations are image tuples on 0..d-1, in lexicographic order.
    """
    if d > ENUMERATION_CAP:
        raise SizeCapError(
            f"S_{d} has {math.factorial(d)} elements; cap is d <= {ENUMERATION_CAP}"
        )
    for perm in itertools.permutations(range(d)):
        yield perm, cycle_type(perm)


@dataclass(frozen=True)
class CharacterTable:
    """Full character table of S_d: rows[kappa][cycle_type] -> integer."""

    d: int
    shapes: tuple[tuple[int, ...], ...]
    classes: tuple[tuple[int, ...], ...]
    rows: dict

    def value(self, kappa, cycles) -> int:
        return self.rows[tuple(kappa)][tuple(cycles)]

    def class_size(self, cycles) -> int:
        return conjugacy_class_size(cycles)


@lru_cache(maxsize=None)
def character_table(d: int) -> CharacterTable:
    shapes = partitions_of(d)
    classes = partitions_of(d)
    rows = {
        shape: {cls: character(shape, cls) for cls in classes} for shape in shapes
    }
    return CharacterTable(d=d, shapes=shapes, classes=classes, rows=rows)
