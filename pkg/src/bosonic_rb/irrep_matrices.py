"""Matrix realizations of SU(m) irreps and the tensor representation.

Three independent constructions are kept side by side on purpose:

* `symmetric_matrix` builds the n-photon (Fock) matrix of an interferometer
  from permanents of row/column-repeated submatrices;
* `generators`/`lift` build any irrep in the Gelfand-Tsetlin basis from the
  classic ladder-operator matrix elements and exponentiate;
* `casimir_projectors` splits the tensor representation U ⊗ conj(U) into
  isotypic blocks from the quadratic Casimir alone, with no Clebsch-Gordan
  input.

They cross-check each other in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NumericalConsistencyError
from .gt_patterns import (
    enumerate_patterns,
    is_valid_pattern,
    occupation,
    pattern_index,
    weight,
)
from .immanants import permanent
from .partitions import as_partition, dim, pieri_decompose, symmetric_label

__all__ = [
    "vec",
    "unvec",
    "fock_basis",
    "symmetric_matrix",
    "IrrepMatrixSet",
    "generators",
    "lift",
    "gamma_rep",
    "casimir_projectors",
    "casimir_eigenvalue",
    "fock_hops",
    "algebra_rep",
]

UNITARITY_TOL = 1e-10


def vec(rho: np.ndarray) -> np.ndarray:
    """Row-stacking vectorization, compatible with Gamma(U) = phi(U) (x) conj(phi(U))."""
    return np.asarray(rho, dtype=np.complex128).reshape(-1)


def unvec(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v)
    d = int(round(math.isqrt(v.size)))
    return v.reshape(d, d)


@lru_cache(maxsize=None)
def fock_basis(n: int, m: int) -> tuple[tuple[int, ...], ...]:
    """Occupation vectors of the n-photon sector in canonical GT order."""
    lam = symmetric_label(n, m)
    return tuple(occupation(p) for p in enumerate_patterns(lam, m))


def _check_unitary(u: np.ndarray, tol: float = UNITARITY_TOL) -> np.ndarray:
    u = np.ascontiguousarray(u, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"expected a square matrix, got {u.shape}")
    defect = np.abs(u.conj().T @ u - np.eye(u.shape[0])).max()
    if defect > tol:
        raise NumericalConsistencyError(f"input is not unitary: defect {defect:.3e}")
    return u


def symmetric_matrix(n: int, m: int, u) -> np.ndarray:
    """n-photon matrix of the interferometer U on the canonical Fock basis.

    <out| phi(U) |in> = per(U[out|in]) / sqrt(prod out_i! prod in_j!), where
    U[out|in] repeats row i out_i times and column j in_j times.
    """
    u = _check_unitary(u)
    if u.shape[0] != m:
        raise ValueError(f"expected an {m}x{m} matrix, got {u.shape}")
    if n == 0:
        return np.eye(1, dtype=np.complex128)
    if n == 1:
        # Single photon: the canonical basis is |1 in mode i> in mode order.
        return u.copy()
    basis = fock_basis(n, m)
    result = np.empty((len(basis), len(basis)), dtype=np.complex128)
    col_idx = {occ: np.repeat(np.arange(m), occ) for occ in basis}
    norms = {
        occ: math.sqrt(math.prod(math.factorial(k) for k in occ)) for occ in basis
    }
    for a, out in enumerate(basis):
        rows = col_idx[out]
        for b, inn in enumerate(basis):
            sub = u[np.ix_(rows, col_idx[inn])]
            result[a, b] = permanent(sub) / (norms[out] * norms[inn])
    return result


@dataclass(frozen=True)
class IrrepMatrixSet:
    """Ladder and Cartan matrices of one irrep over its canonical GT basis.

    `raising[i]`, `lowering[i]`, `cartan[i]` (i = 0..m-2) satisfy the su(2)
    relations [E, F] = H and [H, E] = 2E per simple root.  `gl[i][j]` holds
    the full gl(m) generator set used by `lift`.
    """

    mu: tuple[int, ...]
    m: int
    basis: tuple
    raising: tuple
    lowering: tuple
    cartan: tuple
    gl: tuple


def _raising_coefficient(rows, k: int, l: int) -> float:
    """GT matrix element for raising entry k (1-based) of the row with l entries."""
    m = len(rows[0])

    def entry(kk: int, ll: int) -> int:
        return rows[m - ll][kk - 1]

    target = entry(k, l)
    num = 1
    for kk in range(1, l + 2):
        num *= entry(kk, l + 1) - target + k - kk
    for kk in range(1, l):
        num *= entry(kk, l - 1) - target + k - kk - 1
    den = 1
    for kk in range(1, l + 1):
        if kk == k:
            continue
        diff = entry(kk, l) - target
        den *= (diff + k - kk) * (diff + k - kk - 1)
    return math.sqrt(abs(num) / abs(den))


def _bump(pattern, k: int, l: int):
    """Pattern with entry k (1-based) of the row with l entries increased by 1."""
    m = len(pattern[0])
    rows = [list(r) for r in pattern]
    rows[m - l][k - 1] += 1
    return tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def generators(mu, m: int) -> IrrepMatrixSet:
    """Ladder, Cartan, and gl(m) generator matrices of irrep `mu`."""
    mu = as_partition(mu, m)
    basis = enumerate_patterns(mu, m)
    index = pattern_index(mu, m)
    d = len(basis)

    raising = []
    for l in range(1, m):
        e = np.zeros((d, d))
        for col, pat in enumerate(basis):
            for k in range(1, l + 1):
                bumped = _bump(pat, k, l)
                if is_valid_pattern(bumped):
                    e[index[bumped], col] = _raising_coefficient(pat, k, l)
        raising.append(e)
    lowering = [e.T.copy() for e in raising]
    cartan = [
        np.diag([float(weight(p)[l]) for p in basis]) for l in range(m - 1)
    ]

    # gl(m) generators: occupations on the diagonal, simple raisings as
    # computed, the rest by commutators and transposition.
    gl = [[None] * m for _ in range(m)]
    for i in range(m):
        gl[i][i] = np.diag([float(occupation(p)[i]) for p in basis])
    for i in range(m - 1):
        gl[i][i + 1] = raising[i]
    for span in range(2, m):
        for i in range(m - span):
            j = i + span
            gl[i][j] = gl[i][j - 1] @ gl[j - 1][j] - gl[j - 1][j] @ gl[i][j - 1]
    for i in range(m):
        for j in range(i + 1, m):
            gl[j][i] = gl[i][j].T.copy()

    return IrrepMatrixSet(
        mu=mu,
        m=m,
        basis=basis,
        raising=tuple(_frozen(x) for x in raising),
        lowering=tuple(_frozen(x) for x in lowering),
        cartan=tuple(_frozen(x) for x in cartan),
        gl=tuple(tuple(_frozen(x) for x in row) for row in gl),
    )


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def algebra_rep(mu, m: int, a: np.ndarray) -> np.ndarray:
    """dGamma_mu(A) = sum_ij A_ij E_ij over the gl generator matrices."""
    a = np.asarray(a, dtype=np.complex128)
    gl = generators(mu, m).gl
    d = gl[0][0].shape[0]
    out = np.zeros((d, d), dtype=np.complex128)
    for i in range(m):
        for j in range(m):
            if a[i, j] != 0:
                out += a[i, j] * gl[i][j]
    return out


def lift(mu, a) -> np.ndarray:
    """Irrep matrix Gamma_mu(exp(iA)) for traceless hermitian A.

    Exponentiation goes through the eigendecomposition of the (hermitian)
    lifted generator, so the result is unitary to machine precision.
    """
    a = np.asarray(a, dtype=np.complex128)
    m = a.shape[0]
    if a.shape != (m, m):
        raise ValueError(f"expected a square matrix, got {a.shape}")
    scale = max(np.abs(a).max(), 1.0)
    if np.abs(a - a.conj().T).max() > 1e-10 * scale:
        raise ValueError("algebra element must be hermitian")
    if abs(np.trace(a)) > 1e-8 * scale:
        raise ValueError("algebra element must be traceless")
    mu = as_partition(mu, m)
    dg = algebra_rep(mu, m, a)
    evals, vecs = np.linalg.eigh(dg)
    return (vecs * np.exp(1j * evals)) @ vecs.conj().T


def gamma_rep(lam, x, m: int | None = None) -> np.ndarray:
    """Superoperator of the tensor representation phi (x) conj(phi).

    For a unitary m x m input, returns kron(phi(U), conj(phi(U))) with phi
    the symmetric (Fock) matrix of the sector labeled by `lam`.  For a
    channel-like object (anything with `.matrix` and `.structure`), returns
    its superoperator after checking the dimension.
    """
    if hasattr(x, "matrix") and hasattr(x, "structure"):
        lam = tuple(lam)
        d = dim(lam, len(lam))
        if x.matrix.shape != (d * d, d * d):
            raise ValueError(
                f"channel dimension {x.matrix.shape} does not match irrep {lam}"
            )
        return x.matrix
    u = np.asarray(x, dtype=np.complex128)
    m = m if m is not None else u.shape[0]
    lam = as_partition(lam, m)
    if any(p != 0 for p in lam[1:]):
        raise ValueError("gamma_rep expects a symmetric sector label")
    phi = symmetric_matrix(lam[0], m, u)
    return np.kron(phi, phi.conj())


def _gell_mann_basis(m: int) -> list[np.ndarray]:
    """Orthonormal hermitian traceless basis with tr(T_a T_b) = delta/2."""
    basis = []
    for i in range(m):
        for j in range(i + 1, m):
            x = np.zeros((m, m), dtype=np.complex128)
            x[i, j] = x[j, i] = 0.5
            basis.append(x)
            y = np.zeros((m, m), dtype=np.complex128)
            y[i, j] = -0.5j
            y[j, i] = 0.5j
            basis.append(y)
    for k in range(1, m):
        z = np.zeros((m, m), dtype=np.complex128)
        z[np.arange(k), np.arange(k)] = 1.0
        z[k, k] = -k
        basis.append(z / math.sqrt(2 * k * (k + 1)))
    return basis


@lru_cache(maxsize=None)
def fock_hops(n: int, m: int) -> tuple:
    """Hopping matrices a_i^dag a_j of the n-photon sector, indexed [i][j]."""
    basis = fock_basis(n, m)
    index = {occ: pos for pos, occ in enumerate(basis)}
    hops = [[np.zeros((len(basis), len(basis))) for _ in range(m)] for _ in range(m)]
    for col, occ in enumerate(basis):
        for i in range(m):
            hops[i][i][col, col] = occ[i]
            for j in range(m):
                if i == j or occ[j] == 0:
                    continue
                target = list(occ)
                target[j] -= 1
                target[i] += 1
                row = index[tuple(target)]
                hops[i][j][row, col] = math.sqrt((occ[i] + 1) * occ[j])
    return tuple(tuple(_frozen(h) for h in row) for row in hops)


def _sector_algebra(n: int, m: int, a: np.ndarray) -> np.ndarray:
    hops = fock_hops(n, m)
    d = hops[0][0].shape[0]
    out = np.zeros((d, d), dtype=np.complex128)
    for i in range(m):
        for j in range(m):
            if a[i, j] != 0:
                out += a[i, j] * hops[i][j]
    return out


def casimir_eigenvalue(k: int, m: int) -> int:
    """Quadratic Casimir of the block mu_k = (n+k, n, ..., n, n-k)."""
    return k * (k + m - 1)


@lru_cache(maxsize=None)
def casimir_projectors(lam, m: int) -> dict:
    """Isotypic projectors {mu: P_mu} of the tensor representation.

    Built from the eigenspaces of the quadratic Casimir of the tensor
    representation; blocks are identified by their (strictly increasing)
    eigenvalues k(k + m - 1) and double-checked against the Weyl dimensions.
    """
    lam = as_partition(lam, m)
    if any(p != 0 for p in lam[1:]):
        raise ValueError("casimir_projectors expects a symmetric sector label")
    n = lam[0]
    decomposition = pieri_decompose(lam, m)
    d = dim(lam, m)

    eye = np.eye(d)
    casimir = np.zeros((d * d, d * d), dtype=np.complex128)
    for t in _gell_mann_basis(m):
        rep = _sector_algebra(n, m, t)
        dg = np.kron(rep, eye) - np.kron(eye, rep.T)
        casimir += dg @ dg
    evals, vecs = np.linalg.eigh(casimir)

    expected = {mu: casimir_eigenvalue(mu[0] - n, m) for mu in decomposition}
    if len(set(expected.values())) != len(expected):
        raise NumericalConsistencyError("degenerate Casimir spectrum across blocks")

    projectors = {}
    for mu, value in expected.items():
        cols = np.abs(evals - value) < 0.25
        if cols.sum() != dim(mu, m):
            raise NumericalConsistencyError(
                f"Casimir eigenspace for {mu} has dimension {cols.sum()}, "
                f"expected {dim(mu, m)}"
            )
        v = vecs[:, cols]
        projectors[mu] = _frozen(v @ v.conj().T)
    return projectors
