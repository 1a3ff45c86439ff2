"""Filter matrices, Hadamard correlation, decay fitting, and oracles.

Per irrep the filter kernel is the immanant of the reduced label when that
label partitions m, and the zero-weight trace of the lifted irrep matrix
otherwise; the two agree wherever both are defined, and the benchmarking
pipeline re-checks that agreement on every run.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .errors import FitDiagnosticError, NumericalConsistencyError
from .immanants import immanant
from .irrep_matrices import casimir_projectors, fock_basis, vec
from .kostant import zero_weight_trace
from .partitions import dim, pieri_decompose, reduce_label, symmetric_label
from .simulator import (
    DataMatrix,
    ExperimentConfig,
    SequenceTable,
    gate_superoperator,
    haar_su,
    map_cells,
    scenario_setup,
)

__all__ = [
    "FilterMatrix",
    "kernel_for",
    "filter_matrix",
    "correlate",
    "DecayEstimate",
    "fit_decay",
    "bootstrap_stderr",
    "ground_truth_p",
    "FigureOfMerit",
    "figure_of_merit",
    "exact_filtered_decay",
    "original_filter_baseline",
    "kernel_equivalence",
]

IMAG_RATIO_THRESHOLD = 0.05


@dataclass(frozen=True)
class FilterMatrix:
    mu: tuple[int, ...]
    kernel: str
    depths: tuple[int, ...]
    values: np.ndarray  # shape (len(depths), K), complex


def kernel_for(mu, m: int) -> str:
    """'immanant' when the reduced label partitions m, else 'zero-weight-trace'."""
    return "immanant" if sum(reduce_label(mu, m)) == m else "zero-weight-trace"


def filter_matrix(
    mu, table: SequenceTable, kernel: str | None = None, threads: int = 1
) -> FilterMatrix:
    """Per-cell filter values: complex conjugate of the kernel on the cell product.

    The immanant kernel evaluates imm of the reduced label on the m x m
    product matrix; the zero-weight-trace kernel multiplies the per-gate
    lifted irrep matrices (which needs the stored algebra data).  Both are
    conjugated, matching the dagger in the decay derivation.
    """
    m = table.modes
    reduced = reduce_label(mu, m)
    if kernel is None:
        kernel = kernel_for(mu, m)
    if kernel == "immanant" and sum(reduced) != m:
        raise ValueError(
            f"immanant kernel undefined for {mu}: reduced label {reduced} "
            f"is not a partition of {m}"
        )
    if kernel not in ("immanant", "zero-weight-trace"):
        raise ValueError(f"unknown kernel '{kernel}'")

    def evaluate(key):
        cell = table.cell(*key)
        if kernel == "immanant":
            raw = immanant(reduced, cell.product)
        else:
            raw = zero_weight_trace(reduced, m, cell.algebra)
        return np.conj(raw)

    keys = [(g, s) for g in table.depths for s in range(table.sequences)]
    results = map_cells(evaluate, keys, threads)
    values = np.empty((len(table.depths), table.sequences), dtype=np.complex128)
    for gi, g in enumerate(table.depths):
        for s in range(table.sequences):
            values[gi, s] = results[(g, s)]
    return FilterMatrix(mu=tuple(mu), kernel=kernel, depths=table.depths, values=values)


def correlate(fm: FilterMatrix, dm: DataMatrix) -> list[tuple[int, complex]]:
    """Phi_g = mean over sequences of the entrywise filter-data product."""
    if fm.values.shape != dm.values.shape or fm.depths != dm.depths:
        raise ValueError("filter and data grids do not match")
    phi = (fm.values * dm.values).mean(axis=1)
    return [(g, complex(phi[i])) for i, g in enumerate(fm.depths)]


@dataclass(frozen=True)
class DecayEstimate:
    mu: tuple[int, ...] | None
    kernel: str | None
    p_hat: float
    kappa_hat: complex
    residual: float
    depths: tuple[int, ...]
    phi: tuple[complex, ...]
    stderr: float | None = None
    diagnostics: dict | None = None


def fit_decay(
    points,
    mu=None,
    kernel: str | None = None,
    fit_window: tuple[int, int] | None = None,
) -> DecayEstimate:
    """Least-squares fit of kappa * p**(g-1) to the real parts of Phi_g.

    Aborts when the imaginary parts are not statistically small; warns (but
    still reports) on sign-alternating or non-decaying data.
    """
    points = sorted(points)
    if fit_window is not None:
        lo, hi = fit_window
        points = [(g, v) for g, v in points if lo <= g <= hi]
    if len(points) < 3:
        raise ValueError("need at least three depths to fit a decay")
    gs = np.array([g for g, _ in points], dtype=float)
    phi = np.array([v for _, v in points], dtype=np.complex128)
    if not np.all(np.isfinite(phi)):
        raise ValueError("non-finite filtered values")

    scale = np.abs(phi).mean()
    imag_ratio = np.abs(phi.imag).mean() / max(scale, 1e-300)
    if imag_ratio > IMAG_RATIO_THRESHOLD:
        raise FitDiagnosticError(
            f"imaginary part ratio {imag_ratio:.3f} exceeds "
            f"{IMAG_RATIO_THRESHOLD}; refusing to fit real decay"
        )
    y = phi.real

    diagnostics = {"imag_ratio": float(imag_ratio)}
    p0 = _initial_rate(gs, y)
    kappa0 = y[0] / p0 ** (gs[0] - 1.0) if p0 != 0 else y[0]

    def model(g, kappa, p):
        # depths are integers, so p**(g-1) is well defined for p < 0 too
        return kappa * p ** (g - 1.0)

    (kappa_fit, p_fit), _ = scipy.optimize.curve_fit(
        model, gs, y, p0=[kappa0, p0], maxfev=20000
    )
    fitted = model(gs, kappa_fit, p_fit)
    residual = float(np.linalg.norm(y - fitted))

    sign_changes = int(np.sum(np.sign(y[1:]) != np.sign(y[:-1])))
    if sign_changes > len(y) // 3:
        warnings.warn(f"sign-alternating decay data ({sign_changes} flips)")
        diagnostics["sign_alternating"] = True
    if p_fit > 1.02:
        warnings.warn(f"non-decaying data: fitted rate {p_fit:.4f} > 1")
        diagnostics["non_decaying"] = True

    # Imaginary part of kappa from a linear fit at the fitted rate.
    weights = p_fit ** (gs - 1.0)
    denom = float(np.dot(weights, weights))
    kappa_imag = float(np.dot(phi.imag, weights) / denom) if denom > 0 else 0.0

    return DecayEstimate(
        mu=tuple(mu) if mu is not None else None,
        kernel=kernel,
        p_hat=float(p_fit),
        kappa_hat=complex(kappa_fit, kappa_imag),
        residual=residual,
        depths=tuple(int(g) for g in gs),
        phi=tuple(complex(v) for v in phi),
        diagnostics=diagnostics,
    )


def _initial_rate(gs: np.ndarray, y: np.ndarray) -> float:
    # Signed consecutive ratios where depths differ by one (the common case);
    # fall back to magnitude-only roots for wider spacings.
    signed = [
        y[i + 1] / y[i]
        for i in range(len(gs) - 1)
        if gs[i + 1] - gs[i] == 1 and y[i] != 0
    ]
    if signed:
        med = float(np.median(signed))
        return float(np.sign(med) or 1.0) * float(np.clip(abs(med), 1e-3, 1.5))
    roots = [
        abs(y[i + 1] / y[i]) ** (1.0 / (gs[i + 1] - gs[i]))
        for i in range(len(gs) - 1)
        if y[i] != 0
    ]
    if not roots:
        return 0.9
    return float(np.clip(np.median(roots), 1e-3, 1.5))


def bootstrap_stderr(
    fm: FilterMatrix,
    dm: DataMatrix,
    resamples: int = 200,
    seed: int = 0,
    fit_window: tuple[int, int] | None = None,
) -> float:
    """Bootstrap-over-sequences standard error of the fitted rate."""
    k = fm.values.shape[1]
    rng = np.random.default_rng(np.random.SeedSequence([seed, 313131]))
    estimates = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # refit chatter is not user-facing
        for _ in range(resamples):
            cols = rng.integers(0, k, size=k)
            phi = (fm.values[:, cols] * dm.values[:, cols]).mean(axis=1)
            points = list(zip(fm.depths, phi))
            try:
                estimates.append(fit_decay(points, fit_window=fit_window).p_hat)
            except (FitDiagnosticError, RuntimeError):
                continue
    if len(estimates) < resamples // 2:
        raise NumericalConsistencyError("bootstrap refits failed too often")
    return float(np.std(estimates, ddof=1))


def ground_truth_p(mu, channel) -> float:
    """Exact decay parameter tr(P_mu Gamma(E)) / d_mu for a fixed-sector channel."""
    structure = channel.structure
    if len(structure.sectors) != 1:
        raise ValueError("ground_truth_p requires a single-sector channel")
    n = structure.sectors[0]
    m = structure.modes
    lam = symmetric_label(n, m)
    mu = tuple(mu)
    proj = casimir_projectors(lam, m)[mu]
    value = complex(np.trace(proj @ channel.matrix)) / dim(mu, m)
    if abs(value.imag) > 1e-10:
        raise NumericalConsistencyError(
            f"ground-truth decay for {mu} has imaginary part {value.imag:.3e}"
        )
    return float(value.real)


@dataclass(frozen=True)
class FigureOfMerit:
    value: float
    contributions: dict
    d_lambda: int


def figure_of_merit(p_map: dict, lam, m: int) -> FigureOfMerit:
    """F = d_lambda^-2 sum_mu d_mu p_mu over the full decomposition."""
    lam = tuple(lam)
    decomposition = pieri_decompose(lam, m)
    missing = [mu for mu in decomposition if mu not in p_map]
    if missing:
        raise ValueError(f"missing decay parameters for {missing}")
    d_lam = dim(lam, m)
    contributions = {mu: dim(mu, m) * float(p_map[mu]) for mu in decomposition}
    return FigureOfMerit(
        value=sum(contributions.values()) / d_lam**2,
        contributions=contributions,
        d_lambda=d_lam,
    )


def _weight_zero_projector(n: int, m: int) -> np.ndarray:
    """Projector onto the zero-weight subspace of the tensor representation."""
    basis = fock_basis(n, m)
    d = len(basis)
    diag = np.zeros(d * d)
    for a, occ_a in enumerate(basis):
        for b, occ_b in enumerate(basis):
            if occ_a == occ_b:
                diag[a * d + b] = 1.0
    return np.diag(diag)


def exact_filtered_decay(config: ExperimentConfig, mu) -> list[tuple[int, complex]]:
    """Infinite-K limit of the filtered signal, from the exact twirl.

    Phi_g = <E_tilde| P_Z T[E]^(g-1) |rho_eff> / d_mu with P_Z the projector
    onto the zero-weight subspace of the mu block.  Fitting these points
    checks the single-exponential claim with no Monte Carlo noise.
    """
    if config.scenario != "fock":
        raise ValueError("exact filtered decay is defined for the fock scenario")
    scenario = scenario_setup(config)
    n, m = config.photons, config.modes
    lam = symmetric_label(n, m)
    projs = casimir_projectors(lam, m)
    mu = tuple(mu)
    p_mu = projs[mu]
    pz = p_mu @ _weight_zero_projector(n, m) @ p_mu

    twirl = np.zeros_like(scenario.channel.matrix)
    for nu, proj in projs.items():
        p_nu = np.trace(proj @ scenario.channel.matrix) / dim(nu, m)
        twirl += p_nu * proj

    e_tilde = scenario.channel.matrix.conj().T @ vec(scenario.meas_eff)
    state = vec(scenario.rho_eff)
    points = []
    for g in sorted(config.depths):
        propagated = np.linalg.matrix_power(twirl, g - 1) @ state
        value = complex(e_tilde.conj() @ (pz @ propagated)) / dim(mu, m)
        points.append((g, value))
    return points


def kernel_equivalence(table: SequenceTable, mus, m: int) -> dict:
    """Max entrywise deviation between the two filter kernels, per irrep.

    Only irreps whose reduced label partitions m admit both kernels; this is
    the zero-weight-trace identity exercised on real benchmarking sequences.
    """
    deviations = {}
    for mu in mus:
        if kernel_for(mu, m) != "immanant":
            continue
        imm_fm = filter_matrix(mu, table, kernel="immanant")
        zwt_fm = filter_matrix(mu, table, kernel="zero-weight-trace")
        deviations[tuple(mu)] = float(np.abs(imm_fm.values - zwt_fm.values).max())
    return deviations


def original_filter_baseline(
    config: ExperimentConfig,
    table: SequenceTable,
    dm: DataMatrix,
    mus=None,
    samples: int = 5000,
    cutoff: float = 1e-6,
    fit_window: tuple[int, int] | None = None,
) -> dict:
    """Cross-method check: the projector/pseudoinverse filter of the older scheme.

    S is estimated as a Monte Carlo Haar average of Gamma(U)^dag |E><E_tilde|
    Gamma(U) and pseudo-inverted with a relative singular-value cutoff; the
    per-cell filter is <rho| P_mu S^+ Gamma(product)^dag |E>.  Returns one
    DecayEstimate per irrep with the constant <rho|P_mu|rho_eff> attached to
    the diagnostics.
    """
    if config.scenario != "fock":
        raise ValueError("the original-filter baseline runs on the fock scenario")
    scenario = scenario_setup(config)
    n, m = config.photons, config.modes
    lam = symmetric_label(n, m)
    projs = casimir_projectors(lam, m)
    if mus is None:
        mus = list(projs)

    e_vec = vec(scenario.meas)
    e_tilde = scenario.channel.matrix.conj().T @ vec(scenario.meas_eff)
    rho_vec = vec(scenario.rho)

    rng = np.random.default_rng(np.random.SeedSequence([config.seed, 424242]))
    d2 = e_vec.size
    s_matrix = np.zeros((d2, d2), dtype=np.complex128)
    outer = np.outer(e_vec, e_tilde.conj())
    for _ in range(samples):
        u, _ = haar_su(m, rng)
        g_u = gate_superoperator(scenario.structure, u)
        s_matrix += g_u.conj().T @ outer @ g_u
    s_matrix /= samples
    s_pinv = np.linalg.pinv(s_matrix, rcond=cutoff)

    estimates = {}
    for mu in mus:
        mu = tuple(mu)
        row = rho_vec.conj() @ projs[mu] @ s_pinv
        # Guard against the cutoff having swallowed the mu block entirely.
        block_gain = float(np.linalg.norm(row @ projs[mu]))
        if block_gain < 1e-12:
            raise NumericalConsistencyError(
                f"pseudo-inverse cutoff removed the {mu} block of S"
            )
        values = np.empty((len(table.depths), table.sequences), dtype=np.complex128)
        for gi, g in enumerate(table.depths):
            for s in range(table.sequences):
                g_w = gate_superoperator(scenario.structure, table.cell(g, s).product)
                values[gi, s] = row @ (g_w.conj().T @ e_vec)
        phi = (values * dm.values).mean(axis=1)
        points = list(zip(table.depths, phi))
        estimate = fit_decay(points, mu=mu, kernel="original", fit_window=fit_window)
        c_mu = complex(rho_vec.conj() @ projs[mu] @ vec(scenario.rho_eff))
        diag = dict(estimate.diagnostics or {})
        diag["c_mu"] = c_mu
        fm = FilterMatrix(mu=mu, kernel="original", depths=table.depths, values=values)
        stderr = bootstrap_stderr(fm, dm, seed=config.seed, fit_window=fit_window)
        estimates[mu] = DecayEstimate(
            mu=mu,
            kernel="original",
            p_hat=estimate.p_hat,
            kappa_hat=estimate.kappa_hat,
            residual=estimate.residual,
            depths=estimate.depths,
            phi=estimate.phi,
            stderr=stderr,
            diagnostics=diag,
        )
    return estimates
