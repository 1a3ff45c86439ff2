"""Haar-random gates, CPTP noise channels, gate sequences, synthetic data.

The Hilbert space is a direct sum of fixed-photon-number sectors of an
m-mode interferometer; the standard benchmarking run uses a single sector,
the weak-coherent-state scenario uses sectors 0..truncation.  Channels are
stored as one dense superoperator over the whole direct sum (row-stacking
vectorization) plus a sector descriptor for block access; CPTP is verified
at construction.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import NumericalConsistencyError
from .irrep_matrices import fock_basis, symmetric_matrix, vec
from .partitions import dim as irrep_dim
from .partitions import symmetric_label

__all__ = [
    "SectorStructure",
    "fock_structure",
    "extended_structure",
    "Channel",
    "make_channel",
    "haar_su",
    "ExperimentConfig",
    "SequenceCell",
    "SequenceTable",
    "build_sequences",
    "DataMatrix",
    "run_experiment",
    "map_cells",
    "Scenario",
    "scenario_setup",
    "coherent_scenario",
    "gate_superoperator",
    "occupation_projector",
]

TP_TOL = 1e-10
CP_TOL = 1e-10


# ---------------------------------------------------------------------------
# Sector structure


@dataclass(frozen=True)
class SectorStructure:
    """Direct sum of photon-number sectors of an m-mode space."""

    modes: int
    sectors: tuple[int, ...]

    def __post_init__(self):
        if not self.sectors or any(n < 0 for n in self.sectors):
            raise ValueError("sectors must be non-negative photon numbers")
        if tuple(sorted(set(self.sectors))) != self.sectors:
            raise ValueError("sectors must be strictly increasing")

    @property
    def sector_dims(self) -> tuple[int, ...]:
        return tuple(
            irrep_dim(symmetric_label(n, self.modes), self.modes)
            for n in self.sectors
        )

    @property
    def total_dim(self) -> int:
        return sum(self.sector_dims)

    def offset(self, n: int) -> int:
        i = self.sectors.index(n)
        return sum(self.sector_dims[:i])

    def sector_slice(self, n: int) -> slice:
        i = self.sectors.index(n)
        start = sum(self.sector_dims[:i])
        return slice(start, start + self.sector_dims[i])

    def basis(self) -> tuple[tuple[int, tuple[int, ...]], ...]:
        """Concatenated (sector, occupation) labels in canonical order."""
        out = []
        for n in self.sectors:
            out.extend((n, occ) for occ in fock_basis(n, self.modes))
        return tuple(out)


def fock_structure(n: int, m: int) -> SectorStructure:
    return SectorStructure(modes=m, sectors=(n,))


def extended_structure(m: int, truncation: int) -> SectorStructure:
    return SectorStructure(modes=m, sectors=tuple(range(truncation + 1)))


# ---------------------------------------------------------------------------
# Channels


def _check_cptp(matrix: np.ndarray, d: int, label: str) -> None:
    ident = vec(np.eye(d))
    tp_defect = np.abs(matrix.conj().T @ ident - ident).max()
    if tp_defect > TP_TOL:
        raise NumericalConsistencyError(
            f"channel '{label}' is not trace preserving: defect {tp_defect:.3e}"
        )
    choi = matrix.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d)
    min_eig = float(np.linalg.eigvalsh(choi).min())
    if min_eig < -CP_TOL:
        raise NumericalConsistencyError(
            f"channel '{label}' is not completely positive: min Choi eig {min_eig:.3e}"
        )


@dataclass(frozen=True)
class Channel:
    """CPTP map stored as a dense superoperator over the direct-sum space."""

    structure: SectorStructure
    matrix: np.ndarray
    label: str

    def __post_init__(self):
        d = self.structure.total_dim
        if self.matrix.shape != (d * d, d * d):
            raise ValueError(
                f"superoperator shape {self.matrix.shape} does not match "
                f"dimension {d}"
            )
        _check_cptp(self.matrix, d, self.label)
        self.matrix.flags.writeable = False

    def block(self, out_pair: tuple[int, int], in_pair: tuple[int, int]) -> np.ndarray:
        """Superoperator block mapping operator block `in_pair` to `out_pair`.

        Pairs are (row sector, column sector) of the density-operator block.
        """
        d = self.structure.total_dim

        def flat_indices(pair):
            r, c = pair
            rows = range(self.structure.sector_slice(r).start,
                         self.structure.sector_slice(r).stop)
            cols = range(self.structure.sector_slice(c).start,
                         self.structure.sector_slice(c).stop)
            return [a * d + b for a in rows for b in cols]

        return self.matrix[np.ix_(flat_indices(out_pair), flat_indices(in_pair))]


def _kraus_superoperator(kraus: list[np.ndarray]) -> np.ndarray:
    d = kraus[0].shape[0]
    s = np.zeros((d * d, d * d), dtype=np.complex128)
    for k in kraus:
        s += np.kron(k, k.conj())
    return s


def gate_superoperator(structure: SectorStructure, u: np.ndarray) -> np.ndarray:
    """Superoperator of the (sector-block-diagonal) interferometer gate U."""
    blocks = [symmetric_matrix(n, structure.modes, u) for n in structure.sectors]
    w = scipy.linalg.block_diag(*blocks)
    return np.kron(w, w.conj())


def _unit_range(value: float, name: str) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return value


def _depolarizing_matrix(structure: SectorStructure) -> np.ndarray:
    """Sector-pinching map that maximally mixes within each sector."""
    d = structure.total_dim
    kraus = []
    for n in structure.sectors:
        sl = structure.sector_slice(n)
        dn = sl.stop - sl.start
        for i in range(sl.start, sl.stop):
            for j in range(sl.start, sl.stop):
                k = np.zeros((d, d))
                k[i, j] = 1.0 / math.sqrt(dn)
                kraus.append(k)
    return _kraus_superoperator(kraus)


def _loss_kraus(structure: SectorStructure, eta: float) -> list[np.ndarray]:
    m = structure.modes
    max_n = max(structure.sectors)
    if eta > 0 and structure.sectors != tuple(range(max_n + 1)):
        raise ValueError(
            "loss requires the extended sector structure 0..n_max"
        )
    basis = structure.basis()
    index = {occ: structure.offset(n) + i
             for n in structure.sectors
             for i, occ in enumerate(fock_basis(n, m))}
    d = structure.total_dim
    kraus = []
    for k_vec in itertools.product(range(max_n + 1), repeat=m):
        lost = sum(k_vec)
        if lost > max_n:
            continue
        k = np.zeros((d, d))
        nonzero = False
        for n, occ in basis:
            if any(occ[i] < k_vec[i] for i in range(m)):
                continue
            target = tuple(occ[i] - k_vec[i] for i in range(m))
            amp = 1.0
            for i in range(m):
                amp *= (
                    math.comb(occ[i], k_vec[i])
                    * (1.0 - eta) ** (occ[i] - k_vec[i])
                    * eta ** k_vec[i]
                )
            if amp == 0.0:
                continue
            k[index[target], index[occ]] = math.sqrt(amp)
            nonzero = True
        if nonzero:
            kraus.append(k)
    return kraus


def _gain_kraus(structure: SectorStructure, eps: float) -> list[np.ndarray]:
    m = structure.modes
    max_n = max(structure.sectors)
    if eps > 0 and structure.sectors != tuple(range(max_n + 1)):
        raise ValueError("gain requires the extended sector structure 0..n_max")
    basis = structure.basis()
    index = {occ: structure.offset(n) + i
             for n in structure.sectors
             for i, occ in enumerate(fock_basis(n, m))}
    d = structure.total_dim
    top = structure.sector_slice(max_n)
    p_top = np.zeros((d, d))
    p_top[top, top] = np.eye(top.stop - top.start)
    # Injection is blocked on the top sector so the map stays trace
    # preserving on the truncated space.
    k0 = math.sqrt(1.0 - eps) * (np.eye(d) - p_top) + p_top
    kraus = [k0]
    for mode in range(m):
        k = np.zeros((d, d))
        for n, occ in basis:
            if n == max_n:
                continue
            target = list(occ)
            target[mode] += 1
            k[index[tuple(target)], index[occ]] = math.sqrt(eps / m)
        kraus.append(k)
    return kraus


def make_channel(kind: str, params: dict | None, structure: SectorStructure) -> Channel:
    """Construct a CPTP noise channel on `structure`.

    Families: `ideal`; `mixing` (identity with probability 1-q, conjugation
    by a fixed unitary with probability q); `depolarizing` (identity with
    probability 1-q, sector pinch plus maximal mixing within each sector
    with probability q); `loss` (per-photon loss probability eta); `gain`
    (single-photon injection into a uniformly chosen mode with probability
    eps, blocked at the truncation boundary).
    """
    params = dict(params or {})
    d = structure.total_dim
    eye = np.eye(d * d, dtype=np.complex128)
    if kind == "ideal":
        matrix = eye
    elif kind == "mixing":
        q = _unit_range(params["q"], "q")
        if "v" in params:
            v = np.asarray(params["v"], dtype=np.complex128)
        else:
            rng = np.random.default_rng(
                np.random.SeedSequence([int(params.get("seed", 0)), 11])
            )
            v, _ = haar_su(structure.modes, rng)
        matrix = (1.0 - q) * eye + q * gate_superoperator(structure, v)
    elif kind == "depolarizing":
        q = _unit_range(params["q"], "q")
        matrix = (1.0 - q) * eye + q * _depolarizing_matrix(structure)
    elif kind == "loss":
        eta = _unit_range(params["eta"], "eta")
        matrix = _kraus_superoperator(_loss_kraus(structure, eta))
    elif kind == "gain":
        eps = _unit_range(params["eps"], "eps")
        matrix = _kraus_superoperator(_gain_kraus(structure, eps))
    else:
        raise ValueError(f"unknown channel kind '{kind}'")
    return Channel(structure=structure, matrix=matrix, label=kind)


# ---------------------------------------------------------------------------
# Haar sampling


def haar_su(m: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Haar-random SU(m) element U together with traceless hermitian A, U = exp(iA).

    Ginibre + QR with the R-diagonal phase fix gives Haar on U(m); a global
    phase sets det = 1.  A is the principal logarithm projected onto the
    traceless subspace; the projection multiplies U by an m-th root of
    unity, which no tensor-representation quantity can see, so the returned
    pair is exactly consistent (U = exp(iA)) and Haar for every observable
    of the protocol.
    """
    if m < 2:
        raise ValueError("need at least two modes")
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    q = q * phases
    det = np.linalg.det(q)
    q = q * np.exp(-1j * np.angle(det) / m)

    t, w = scipy.linalg.schur(q, output="complex")
    theta = np.angle(np.diag(t))
    a = (w * theta) @ w.conj().T
    a = (a + a.conj().T) / 2.0
    a -= (np.trace(a) / m) * np.eye(m)
    evals, vecs = np.linalg.eigh(a)
    u = (vecs * np.exp(1j * evals)) @ vecs.conj().T
    return u, a


# ---------------------------------------------------------------------------
# Experiment configuration and sequences


@dataclass(frozen=True)
class ExperimentConfig:
    photons: int
    modes: int
    depths: tuple[int, ...]
    sequences: int
    shots: int = 0
    seed: int = 0
    scenario: str = "fock"
    input_occupation: tuple[int, ...] | None = None
    output_occupation: tuple[int, ...] | None = None
    alpha: float = 0.1
    truncation: int = 1
    intensity_mode: int = 0
    noise_kind: str = "ideal"
    noise_params: dict = field(default_factory=dict)
    spam_state: tuple | None = None  # (kind, params)
    spam_meas: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "depths", tuple(int(g) for g in self.depths))
        if self.sequences < 1:
            raise ValueError("need at least one sequence per depth")
        if len(self.depths) < 2:
            raise ValueError("need at least two circuit depths")
        if len(set(self.depths)) != len(self.depths) or min(self.depths) < 1:
            raise ValueError("depths must be distinct positive integers")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.scenario not in ("fock", "coherent"):
            raise ValueError(f"unknown scenario '{self.scenario}'")
        if self.scenario == "coherent" and abs(self.alpha) > 0.3:
            raise ValueError("coherent scenario is restricted to |alpha| <= 0.3")


@dataclass(frozen=True)
class SequenceCell:
    depth: int
    index: int
    gates: tuple[np.ndarray, ...]
    algebra: tuple[np.ndarray, ...]
    product: np.ndarray


@dataclass(frozen=True)
class SequenceTable:
    modes: int
    depths: tuple[int, ...]
    sequences: int
    seed: int
    cells: dict

    def cell(self, g: int, s: int) -> SequenceCell:
        return self.cells[(g, s)]


def build_sequences(config: ExperimentConfig) -> SequenceTable:
    """Sample i.i.d. Haar gates for every (depth, sequence) cell.

    Each cell owns the RNG stream seeded by (seed, g, s), so any cell can be
    reproduced in isolation and the full table is deterministic.
    """
    cells = {}
    for g in config.depths:
        for s in range(config.sequences):
            rng = np.random.default_rng(np.random.SeedSequence([config.seed, g, s]))
            gates = []
            algebra = []
            for _ in range(g):
                u, a = haar_su(config.modes, rng)
                u.flags.writeable = False
                a.flags.writeable = False
                gates.append(u)
                algebra.append(a)
            product = np.eye(config.modes, dtype=np.complex128)
            for u in gates:
                product = u @ product
            product.flags.writeable = False
            cells[(g, s)] = SequenceCell(
                depth=g,
                index=s,
                gates=tuple(gates),
                algebra=tuple(algebra),
                product=product,
            )
    return SequenceTable(
        modes=config.modes,
        depths=config.depths,
        sequences=config.sequences,
        seed=config.seed,
        cells=cells,
    )


# ---------------------------------------------------------------------------
# States, measurements, scenarios


def occupation_projector(structure: SectorStructure, occ) -> np.ndarray:
    """Projector |n><n| onto one occupation basis state, as a matrix on H."""
    occ = tuple(int(x) for x in occ)
    n = sum(occ)
    basis = fock_basis(n, structure.modes)
    pos = structure.offset(n) + basis.index(occ)
    d = structure.total_dim
    p = np.zeros((d, d), dtype=np.complex128)
    p[pos, pos] = 1.0
    return p


def coherent_scenario(
    alpha: float, truncation: int, m: int, mode: int = 0
) -> tuple[np.ndarray, np.ndarray, SectorStructure]:
    """Weak-coherent-state input and intensity measurement on one output mode.

    The state is the coherent state in mode 0 truncated at `truncation`
    photons and renormalized; the measurement is the photon-number operator
    of `mode`, rescaled by the truncation so its spectrum lies in [0, 1].
    """
    if abs(alpha) > 0.3:
        raise ValueError("weak-coherent regime requires |alpha| <= 0.3")
    if truncation < 1:
        raise ValueError("need at least the one-photon sector")
    structure = extended_structure(m, truncation)
    d = structure.total_dim
    psi = np.zeros(d, dtype=np.complex128)
    for n in structure.sectors:
        occ = (n,) + (0,) * (m - 1)
        pos = structure.offset(n) + fock_basis(n, m).index(occ)
        psi[pos] = alpha**n / math.sqrt(math.factorial(n))
    psi /= np.linalg.norm(psi)
    rho = np.outer(psi, psi.conj())

    meas = np.zeros((d, d), dtype=np.complex128)
    for n, occ in structure.basis():
        pos = structure.offset(n) + fock_basis(n, m).index(occ)
        meas[pos, pos] = occ[mode] / truncation
    return rho, meas, structure


@dataclass(frozen=True)
class Scenario:
    """Resolved simulation objects for one experiment configuration."""

    structure: SectorStructure
    rho: np.ndarray
    meas: np.ndarray
    rho_eff: np.ndarray
    meas_eff: np.ndarray
    channel: Channel
    metadata: dict


def scenario_setup(config: ExperimentConfig) -> Scenario:
    m = config.modes
    if config.scenario == "fock":
        structure = fock_structure(config.photons, m)
        occ_in = tuple(config.input_occupation or symmetric_label(config.photons, m))
        occ_out = tuple(config.output_occupation or occ_in)
        if sum(occ_in) != config.photons or sum(occ_out) != config.photons:
            raise ValueError("occupations must match the photon number")
        rho = occupation_projector(structure, occ_in)
        meas = occupation_projector(structure, occ_out)
        metadata = {"scenario": "fock", "input": occ_in, "output": occ_out}
    else:
        rho, meas, structure = coherent_scenario(
            config.alpha, config.truncation, m, config.intensity_mode
        )
        metadata = {
            "scenario": "coherent",
            "alpha": config.alpha,
            "truncation": config.truncation,
            "intensity_mode": config.intensity_mode,
            "intensity_rescale": config.truncation,
        }

    channel = make_channel(config.noise_kind, config.noise_params, structure)

    rho_eff = rho
    if config.spam_state is not None:
        kind, params = config.spam_state
        spam = make_channel(kind, params, structure)
        rho_eff = (spam.matrix @ vec(rho)).reshape(rho.shape)
    meas_eff = meas
    if config.spam_meas is not None:
        kind, params = config.spam_meas
        spam = make_channel(kind, params, structure)
        meas_eff = (spam.matrix.conj().T @ vec(meas)).reshape(meas.shape)
    return Scenario(
        structure=structure,
        rho=rho,
        meas=meas,
        rho_eff=rho_eff,
        meas_eff=meas_eff,
        channel=channel,
        metadata=metadata,
    )


# ---------------------------------------------------------------------------
# Synthetic data


@dataclass(frozen=True)
class DataMatrix:
    depths: tuple[int, ...]
    values: np.ndarray  # shape (len(depths), K)
    shots: int

    def row(self, g: int) -> np.ndarray:
        return self.values[self.depths.index(g)]


def map_cells(fn, keys, threads: int = 1):
    """Apply `fn` to every (g, s) key, optionally on a thread pool.

    Cells are independent; the gather is a deterministic dict keyed by the
    input order, so the result does not depend on `threads`.
    """
    if threads <= 1:
        return {key: fn(key) for key in keys}
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=threads) as pool:
        return dict(zip(keys, pool.map(fn, keys)))


def run_experiment(
    config: ExperimentConfig, table: SequenceTable, threads: int = 1
) -> DataMatrix:
    """Survival data d(g, s) = <E_eff| Gamma(noisy gates, in order) |rho_eff>.

    With shots = 0 the entries are exact expectation values; with shots > 0
    each entry is binomially sampled from the exact value.
    """
    scenario = scenario_setup(config)
    noise = scenario.channel.matrix
    e_vec = vec(scenario.meas_eff).conj()

    def simulate_cell(key):
        g, s = key
        cell = table.cell(g, s)
        v = vec(scenario.rho_eff)
        for u in cell.gates:
            v = noise @ (gate_superoperator(scenario.structure, u) @ v)
        value = complex(e_vec @ v)
        if abs(value.imag) > 1e-9:
            raise NumericalConsistencyError(
                f"non-real survival value {value} at cell ({g}, {s})"
            )
        p = value.real
        if not -1e-10 <= p <= 1.0 + 1e-10:
            raise NumericalConsistencyError(
                f"survival value {p} outside [0, 1] at cell ({g}, {s})"
            )
        if config.shots > 0:
            shot_rng = np.random.default_rng(
                np.random.SeedSequence([config.seed, g, s, 1])
            )
            p = shot_rng.binomial(config.shots, min(max(p, 0.0), 1.0)) / config.shots
        return p

    keys = [(g, s) for g in config.depths for s in range(config.sequences)]
    results = map_cells(simulate_cell, keys, threads)
    values = np.empty((len(config.depths), config.sequences))
    for gi, g in enumerate(config.depths):
        for s in range(config.sequences):
            values[gi, s] = results[(g, s)]
    return DataMatrix(depths=config.depths, values=values, shots=config.shots)
