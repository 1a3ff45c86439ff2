import numpy as np
import pytest

from bosonic_rb.analysis import (
    bootstrap_stderr,
    correlate,
    exact_filtered_decay,
    figure_of_merit,
    filter_matrix,
    fit_decay,
    ground_truth_p,
    kernel_equivalence,
    kernel_for,
    original_filter_baseline,
)
from bosonic_rb.errors import FitDiagnosticError
from bosonic_rb.simulator import (
    DataMatrix,
    ExperimentConfig,
    SequenceCell,
    SequenceTable,
    build_sequences,
    fock_structure,
    haar_su,
    make_channel,
    run_experiment,
)

DEPTHS = (1, 2, 3, 4, 5)


def config_with(**overrides):
    base = dict(
        photons=1,
        modes=2,
        depths=DEPTHS,
        sequences=30,
        shots=0,
        seed=9,
        noise_kind="depolarizing",
        noise_params={"q": 0.1},
    )
    base.update(overrides)
    return ExperimentConfig(**base)


def identity_table(m=2, depths=DEPTHS, sequences=2):
    cells = {}
    for g in depths:
        for s in range(sequences):
            gates = tuple(np.eye(m, dtype=complex) for _ in range(g))
            algebra = tuple(np.zeros((m, m)) for _ in range(g))
            cells[(g, s)] = SequenceCell(
                depth=g, index=s, gates=gates, algebra=algebra,
                product=np.eye(m, dtype=complex),
            )
    return SequenceTable(modes=m, depths=depths, sequences=sequences, seed=0, cells=cells)


def test_kernel_selection():
    assert kernel_for((2, 0), 2) == "immanant"
    assert kernel_for((1, 1), 2) == "zero-weight-trace"  # reduced trivial
    assert kernel_for((3, 2, 1), 3) == "immanant"
    assert kernel_for((4, 2, 0), 3) == "zero-weight-trace"


def test_filter_on_identity_table_counts_zero_weight_states():
    table = identity_table()
    fm = filter_matrix((2, 0), table)
    assert fm.kernel == "immanant"
    assert np.abs(fm.values - 1.0).max() < 1e-12  # |Z| of the reduced (2,0)
    table3 = identity_table(m=3)
    fm3 = filter_matrix((3, 2, 1), table3)
    assert np.abs(fm3.values - 2.0).max() < 1e-12


def test_filter_kernels_agree_on_random_table():
    config = config_with(sequences=4, depths=(1, 2, 3))
    table = build_sequences(config)
    imm = filter_matrix((2, 0), table, kernel="immanant")
    zwt = filter_matrix((2, 0), table, kernel="zero-weight-trace")
    assert np.abs(imm.values - zwt.values).max() < 1e-9
    devs = kernel_equivalence(table, [(1, 1), (2, 0)], 2)
    assert set(devs) == {(2, 0)}
    assert devs[(2, 0)] < 1e-9


def test_filter_rejects_undefined_immanant_kernel():
    table = identity_table(m=3, depths=(1, 2, 3))
    with pytest.raises(ValueError, match="immanant kernel undefined"):
        filter_matrix((4, 2, 0), table, kernel="immanant")


def test_depth_one_immanant_filter_is_conjugated_permanent():
    from bosonic_rb.immanants import permanent

    config = config_with(sequences=5, depths=(1, 2))
    table = build_sequences(config)
    fm = filter_matrix((2, 0), table, kernel="immanant")
    for s in range(5):
        u = table.cell(1, s).gates[0]
        assert abs(fm.values[0, s] - np.conj(permanent(u))) < 1e-12


def test_shot_sampled_fit_consistent_with_exact():
    exact_cfg = config_with(sequences=60, depths=tuple(range(1, 11)), seed=29)
    table = build_sequences(exact_cfg)
    dm_exact = run_experiment(exact_cfg, table)
    shot_cfg = config_with(
        sequences=60, depths=tuple(range(1, 11)), seed=29, shots=2000
    )
    dm_shots = run_experiment(shot_cfg, table)
    fm = filter_matrix((2, 0), table)
    p_exact = fit_decay(correlate(fm, dm_exact), mu=(2, 0)).p_hat
    p_shots = fit_decay(correlate(fm, dm_shots), mu=(2, 0)).p_hat
    se_exact = bootstrap_stderr(fm, dm_exact, resamples=100, seed=29)
    se_shots = bootstrap_stderr(fm, dm_shots, resamples=100, seed=29)
    assert abs(p_exact - p_shots) < 3 * np.hypot(se_exact, se_shots)


def test_correlate_mean_convention():
    table = identity_table(sequences=5)
    fm = filter_matrix((2, 0), table)
    dm = DataMatrix(depths=DEPTHS, values=np.ones((len(DEPTHS), 5)), shots=0)
    points = correlate(fm, dm)
    assert all(abs(v - 1.0) < 1e-12 for _, v in points)


def test_fit_decay_recovers_exact_parameters():
    gs = np.arange(1, 11)
    phi = [(g, 0.5 * 0.9 ** (g - 1)) for g in gs]
    est = fit_decay(phi)
    assert abs(est.p_hat - 0.9) < 1e-9
    assert abs(est.kappa_hat.real - 0.5) < 1e-9
    assert est.residual < 1e-12


def test_fit_decay_flat_data():
    phi = [(g, 0.25) for g in range(1, 8)]
    est = fit_decay(phi)
    assert abs(est.p_hat - 1.0) < 1e-6


def test_fit_decay_aborts_on_large_imaginary_part():
    phi = [(g, 0.5 * 0.9**g * (1 + 0.4j)) for g in range(1, 8)]
    with pytest.raises(FitDiagnosticError):
        fit_decay(phi)


def test_fit_decay_warns_on_alternating_signs_but_still_fits():
    phi = [(g, 0.5 * (-0.9) ** (g - 1)) for g in range(1, 9)]
    with pytest.warns(UserWarning, match="sign-alternating"):
        est = fit_decay(phi)
    assert abs(est.p_hat - (-0.9)) < 1e-6


def test_fit_window_restricts_depths():
    phi = [(g, 0.5 * 0.9 ** (g - 1)) for g in range(1, 11)]
    phi[0] = (1, 123.0)  # corrupt a point outside the window
    est = fit_decay(phi, fit_window=(2, 10))
    assert abs(est.p_hat - 0.9) < 1e-9
    assert est.depths == tuple(range(2, 11))


def test_ground_truth_examples():
    structure = fock_structure(1, 2)
    ideal = make_channel("ideal", {}, structure)
    assert ground_truth_p((2, 0), ideal) == pytest.approx(1.0)
    assert ground_truth_p((1, 1), ideal) == pytest.approx(1.0)
    depol = make_channel("depolarizing", {"q": 0.25}, structure)
    assert ground_truth_p((2, 0), depol) == pytest.approx(0.75)
    rng = np.random.default_rng(0)
    v, _ = haar_su(2, rng)
    mixing = make_channel("mixing", {"q": 0.3, "v": v}, structure)
    gamma_v = np.kron(v, v.conj())
    from bosonic_rb.irrep_matrices import casimir_projectors

    p_v = np.trace(casimir_projectors((1, 0), 2)[(2, 0)] @ gamma_v).real / 3
    assert ground_truth_p((2, 0), mixing) == pytest.approx(0.7 + 0.3 * p_v)


def test_figure_of_merit_arithmetic():
    fom = figure_of_merit({(1, 1): 1.0, (2, 0): 1.0}, (1, 0), 2)
    assert fom.value == 1.0
    fom2 = figure_of_merit({(1, 1): 1.0, (2, 0): 0.95}, (1, 0), 2)
    assert fom2.value == pytest.approx((1 + 3 * 0.95) / 4)
    with pytest.raises(ValueError, match="missing"):
        figure_of_merit({(2, 0): 1.0}, (1, 0), 2)


def test_exact_decay_is_single_exponential():
    config = config_with(depths=tuple(range(1, 11)))
    points = exact_filtered_decay(config, (2, 0))
    est = fit_decay(points)
    assert abs(est.p_hat - 0.9) < 1e-9
    assert est.residual < 1e-12 * max(abs(v) for _, v in points) + 1e-15
    # consecutive ratio is 1/(1-q)
    values = [v.real for _, v in points]
    ratios = [values[i] / values[i + 1] for i in range(len(values) - 1)]
    assert np.allclose(ratios, 1 / 0.9)


def test_exact_decay_ideal_noise_is_flat():
    config = config_with(noise_kind="ideal", noise_params={})
    points = exact_filtered_decay(config, (2, 0))
    values = [v.real for _, v in points]
    assert np.allclose(values, values[0])


def test_mc_filter_converges_to_oracle():
    config = config_with(sequences=150, depths=tuple(range(1, 13)), seed=21)
    table = build_sequences(config)
    dm = run_experiment(config, table)
    fm = filter_matrix((2, 0), table)
    est = fit_decay(correlate(fm, dm), mu=(2, 0))
    channel = make_channel("depolarizing", {"q": 0.1}, fock_structure(1, 2))
    assert abs(est.p_hat - ground_truth_p((2, 0), channel)) < 0.03


def test_residual_decreases_with_more_sequences():
    residuals = []
    for k in (50, 200, 800):
        config = config_with(sequences=k, seed=33, depths=tuple(range(1, 9)))
        table = build_sequences(config)
        dm = run_experiment(config, table)
        fm = filter_matrix((2, 0), table)
        est = fit_decay(correlate(fm, dm), mu=(2, 0))
        residuals.append(est.residual)
    assert residuals[2] < residuals[0]


def test_bootstrap_stderr_scale():
    config = config_with(sequences=80, seed=13)
    table = build_sequences(config)
    dm = run_experiment(config, table)
    fm = filter_matrix((2, 0), table)
    se = bootstrap_stderr(fm, dm, resamples=100, seed=13)
    assert 0.0 < se < 0.2


def test_original_filter_ideal_noise():
    config = config_with(
        noise_kind="ideal", noise_params={}, sequences=60, depths=tuple(range(1, 9))
    )
    table = build_sequences(config)
    dm = run_experiment(config, table)
    estimates = original_filter_baseline(config, table, dm, mus=[(2, 0)], samples=2000)
    est = estimates[(2, 0)]
    assert abs(est.p_hat - 1.0) < 3 * est.stderr + 0.02
    # depth-independent prefactor: <rho|P_mu|rho_eff> = 1/2 here
    assert est.diagnostics["c_mu"] == pytest.approx(0.5, abs=1e-10)
    assert abs(est.kappa_hat.real - 0.5) < 0.15


def test_original_filter_agrees_with_immanant_filter():
    config = config_with(sequences=100, depths=tuple(range(1, 11)), seed=17)
    table = build_sequences(config)
    dm = run_experiment(config, table)
    fm = filter_matrix((2, 0), table)
    est_imm = fit_decay(correlate(fm, dm), mu=(2, 0))
    se_imm = bootstrap_stderr(fm, dm, resamples=100, seed=17)
    estimates = original_filter_baseline(config, table, dm, mus=[(2, 0)], samples=3000)
    est_orig = estimates[(2, 0)]
    combined = np.hypot(se_imm, est_orig.stderr)
    assert abs(est_imm.p_hat - est_orig.p_hat) < 3 * combined


def test_original_filter_requires_fock_scenario():
    config = config_with(scenario="coherent", alpha=0.1, truncation=1)
    table = build_sequences(config)
    dm = run_experiment(config, table)
    with pytest.raises(ValueError, match="fock"):
        original_filter_baseline(config, table, dm, mus=[(2, 0)], samples=10)
