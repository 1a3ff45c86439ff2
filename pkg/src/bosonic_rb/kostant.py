"""Numerical checks of the zero-weight-trace / immanant identity.

The identity under test: for a partition kappa of m, the sum of the
diagonal entries of the irrep matrix over the zero-weight basis states
equals imm_kappa of the fundamental m x m matrix.
"""

from __future__ import annotations

import numpy as np

from .errors import BosonicRBError
from .gt_patterns import enumerate_patterns, zero_weight_states
from .immanants import immanant
from .irrep_matrices import lift
from .partitions import as_partition, reduce_label

__all__ = ["zero_weight_trace", "verify_kostant", "su3_detailed_check"]


def _zero_weight_indices(mu, m: int) -> list[int]:
    patterns = enumerate_patterns(mu, m)
    zw = set(zero_weight_states(mu, m))
    return [i for i, p in enumerate(patterns) if p in zw]


def zero_weight_trace(mu, m: int, algebra=None, *, irrep_matrix=None) -> complex:
    """Sum of zero-weight diagonal entries of Gamma_mu(U) in the GT basis.

    The group element is given either through `algebra` (one hermitian
    traceless matrix A with U = exp(iA), or a sequence of them applied in
    order, last-applied leftmost) or through a precomputed `irrep_matrix`.
    """
    mu = as_partition(mu, m)
    indices = _zero_weight_indices(mu, m)
    if not indices:
        raise BosonicRBError(f"irrep {mu} of SU({m}) has no zero-weight space")
    if irrep_matrix is None:
        if algebra is None:
            raise ValueError("provide either algebra data or an irrep matrix")
        if isinstance(algebra, np.ndarray) and algebra.ndim == 2:
            algebra = [algebra]
        irrep_matrix = None
        for a in algebra:
            factor = lift(mu, a)
            irrep_matrix = factor if irrep_matrix is None else factor @ irrep_matrix
    return complex(sum(irrep_matrix[i, i] for i in indices))


def verify_kostant(mu, m: int, trials: int = 100, seed: int = 0, tol: float = 1e-9) -> dict:
    """Max residual of |zero-weight trace - immanant| over Haar-random elements."""
    from .simulator import haar_su

    mu = as_partition(mu, m)
    if sum(mu) == m:
        kappa = mu
    elif sum(reduce_label(mu, m)) == m:
        kappa = reduce_label(mu, m)
    else:
        raise BosonicRBError(
            f"neither {mu} nor its reduced label is a partition of {m}: "
            "no immanant counterpart"
        )
    rng = np.random.default_rng(np.random.SeedSequence([seed, 97]))
    max_residual = 0.0
    for _ in range(trials):
        u, a = haar_su(m, rng)
        lhs = zero_weight_trace(mu, m, a)
        rhs = immanant(kappa, u)
        max_residual = max(max_residual, abs(lhs - rhs))
    return {
        "mu": mu,
        "m": m,
        "trials": trials,
        "seed": seed,
        "tol": tol,
        "max_residual": max_residual,
        "pass": bool(max_residual < tol),
    }


def su3_detailed_check(trials: int = 100, seed: int = 0, tol: float = 1e-9) -> dict:
    """The SU(3) worked example: mu = (2,1,0), two zero-weight states.

    Checks that the two zero-weight diagonal entries of Gamma_mu(U) sum to
    imm_(2,1,0)(U) for sampled U, that each entry alone does not (the sum,
    not the terms, is the invariant), and that the identity element gives
    diagonal entries (1, 1).
    """
    from .simulator import haar_su

    mu = (2, 1, 0)
    m = 3
    indices = _zero_weight_indices(mu, m)
    identity_diag = tuple(
        float(np.real(lift(mu, np.zeros((m, m)))[i, i])) for i in indices
    )

    rng = np.random.default_rng(np.random.SeedSequence([seed, 98]))
    max_residual = 0.0
    single_entry_matches = 0
    for _ in range(trials):
        u, a = haar_su(m, rng)
        gamma = lift(mu, a)
        entries = [complex(gamma[i, i]) for i in indices]
        rhs = immanant(mu, u)
        max_residual = max(max_residual, abs(sum(entries) - rhs))
        if any(abs(e - rhs) < tol for e in entries):
            single_entry_matches += 1
    return {
        "mu": mu,
        "m": m,
        "trials": trials,
        "identity_diagonal": identity_diag,
        "identity_sum": sum(identity_diag),
        "max_residual": max_residual,
        "single_entry_matches": single_entry_matches,
        "pass": bool(
            max_residual < tol
            and np.allclose(identity_diag, (1.0, 1.0), atol=tol)
        ),
    }
