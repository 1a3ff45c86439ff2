"""Command-line pipelines: decompose, simulate, filter, verify, self-check.

Configuration files are JSON; the schema is documented in the README.  All
randomness in a run derives from the single seed in the configuration, and
every output file embeds the tool version and a hash of the resolved
configuration, so identical seeds give byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__, analysis, kostant, simulator
from .errors import BosonicRBError
from .gt_patterns import enumerate_patterns, occupation, weight, zero_weight_states
from .immanants import immanant
from .irrep_matrices import casimir_projectors, generators
from .partitions import (
    as_partition,
    cost_counts,
    dim,
    dual_irrep,
    pieri_decompose,
    reduce_label,
    symmetric_label,
)
from .symmetric_group import character_table, conjugacy_class_size

CSV_FLOAT = "%.17g"


def _parse_partition(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def _hash_config(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _matrix_json(a: np.ndarray) -> dict:
    a = np.asarray(a, dtype=np.complex128)
    return {"re": a.real.tolist(), "im": a.imag.tolist()}


def _matrix_from_json(obj: dict) -> np.ndarray:
    return np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)


# ---------------------------------------------------------------------------
# Configuration


DEFAULT_ANALYSIS = {
    "kernel": "auto",
    "fit_window": None,
    "baseline": False,
    "baseline_samples": 5000,
    "bootstrap": 200,
}


def resolve_config(raw: dict, seed_override: int | None = None) -> dict:
    """Fill defaults and normalize a pipeline configuration dictionary."""
    config = dict(raw)
    depths = config.get("depths", {"max": 10})
    if isinstance(depths, dict):
        depths = list(range(1, int(depths["max"]) + 1))
    config["depths"] = [int(g) for g in depths]
    config.setdefault("photons", 1)
    config.setdefault("modes", 2)
    config.setdefault("sequences", 100)
    config.setdefault("shots", 0)
    config.setdefault("seed", 0)
    if seed_override is not None:
        config["seed"] = seed_override
    config.setdefault("scenario", "fock")
    config.setdefault("noise", {"kind": "ideal"})
    config.setdefault("spam", None)
    if config["scenario"] == "coherent":
        config.setdefault("alpha", 0.1)
        config.setdefault("truncation", 1)
        config.setdefault("intensity_mode", 0)
    analysis_block = dict(DEFAULT_ANALYSIS)
    analysis_block.update(config.get("analysis") or {})
    config["analysis"] = analysis_block
    return config


def _channel_spec(block: dict | None) -> tuple | None:
    if block is None:
        return None
    params = {k: v for k, v in block.items() if k != "kind"}
    return block["kind"], params


def experiment_config(config: dict) -> simulator.ExperimentConfig:
    noise_kind, noise_params = _channel_spec(config["noise"])
    spam = config.get("spam") or {}
    kwargs = dict(
        photons=int(config["photons"]),
        modes=int(config["modes"]),
        depths=tuple(config["depths"]),
        sequences=int(config["sequences"]),
        shots=int(config["shots"]),
        seed=int(config["seed"]),
        scenario=config["scenario"],
        noise_kind=noise_kind,
        noise_params=noise_params,
        spam_state=_channel_spec(spam.get("state")),
        spam_meas=_channel_spec(spam.get("meas")),
    )
    if config.get("input_occupation") is not None:
        kwargs["input_occupation"] = tuple(config["input_occupation"])
    if config.get("output_occupation") is not None:
        kwargs["output_occupation"] = tuple(config["output_occupation"])
    if config["scenario"] == "coherent":
        kwargs.update(
            alpha=float(config["alpha"]),
            truncation=int(config["truncation"]),
            intensity_mode=int(config["intensity_mode"]),
        )
    return simulator.ExperimentConfig(**kwargs)


# ---------------------------------------------------------------------------
# Artifact serialization


def write_sequences(path: Path, config: dict, table: simulator.SequenceTable) -> None:
    cells = []
    for (g, s), cell in sorted(table.cells.items()):
        cells.append(
            {
                "depth": g,
                "index": s,
                "gates": [
                    {"u": _matrix_json(u), "a": _matrix_json(a)}
                    for u, a in zip(cell.gates, cell.algebra)
                ],
                "product": _matrix_json(cell.product),
            }
        )
    payload = {
        "version": __version__,
        "config": config,
        "config_hash": _hash_config(config),
        "cells": cells,
    }
    path.write_text(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def read_sequences(path: Path) -> tuple[dict, simulator.SequenceTable]:
    payload = json.loads(Path(path).read_text())
    config = payload["config"]
    cells = {}
    for entry in payload["cells"]:
        gates = tuple(_matrix_from_json(g["u"]) for g in entry["gates"])
        algebra = tuple(_matrix_from_json(g["a"]) for g in entry["gates"])
        cells[(entry["depth"], entry["index"])] = simulator.SequenceCell(
            depth=entry["depth"],
            index=entry["index"],
            gates=gates,
            algebra=algebra,
            product=_matrix_from_json(entry["product"]),
        )
    table = simulator.SequenceTable(
        modes=int(config["modes"]),
        depths=tuple(config["depths"]),
        sequences=int(config["sequences"]),
        seed=int(config["seed"]),
        cells=cells,
    )
    return config, table


def write_data(path: Path, config: dict, dm: simulator.DataMatrix) -> None:
    header = "\n".join(
        [
            f"version={__version__}",
            f"config_hash={_hash_config(config)}",
            "depths=" + ",".join(str(g) for g in dm.depths),
            f"shots={dm.shots}",
        ]
    )
    np.savetxt(path, dm.values, fmt=CSV_FLOAT, delimiter=",", header=header)


def read_data(path: Path) -> tuple[dict, simulator.DataMatrix]:
    meta = {}
    with open(path) as handle:
        for line in handle:
            if not line.startswith("#"):
                break
            key, _, value = line[1:].strip().partition("=")
            meta[key] = value
    values = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    depths = tuple(int(g) for g in meta["depths"].split(","))
    dm = simulator.DataMatrix(
        depths=depths, values=values, shots=int(meta.get("shots", 0))
    )
    return meta, dm


# ---------------------------------------------------------------------------
# Analysis pipeline


def _estimate_json(est: analysis.DecayEstimate) -> dict:
    out = {
        "kernel": est.kernel,
        "p_hat": est.p_hat,
        "kappa": [est.kappa_hat.real, est.kappa_hat.imag],
        "residual": est.residual,
        "depths": list(est.depths),
        "phi": [[v.real, v.imag] for v in est.phi],
    }
    if est.stderr is not None:
        out["stderr"] = est.stderr
    if est.diagnostics:
        out["diagnostics"] = {
            k: (str(v) if isinstance(v, complex) else v)
            for k, v in est.diagnostics.items()
        }
    return out


def _label(mu) -> str:
    return ",".join(str(p) for p in mu)


def analyze(
    config: dict,
    table: simulator.SequenceTable,
    dm: simulator.DataMatrix,
    mus=None,
    baseline: bool = False,
    threads: int = 1,
) -> dict:
    """Filter, fit, and assemble the per-irrep report for one data set."""
    cfg = experiment_config(config)
    options = config["analysis"]
    fit_window = options.get("fit_window")
    if fit_window is not None:
        fit_window = tuple(fit_window)
    n, m = cfg.photons, cfg.modes
    lam = symmetric_label(n, m)
    decomposition = pieri_decompose(lam, m)
    if mus is None:
        mus = list(decomposition)
    oracle_channel = None
    if cfg.scenario == "fock":
        oracle_channel = simulator.make_channel(
            cfg.noise_kind, cfg.noise_params, simulator.fock_structure(n, m)
        )

    report_irreps = {}
    fitted_p = {}
    equivalence = {}
    for mu in mus:
        kernel = options["kernel"]
        fm = analysis.filter_matrix(
            mu, table, kernel=None if kernel == "auto" else kernel, threads=threads
        )
        est = analysis.fit_decay(
            analysis.correlate(fm, dm), mu=mu, kernel=fm.kernel, fit_window=fit_window
        )
        stderr = analysis.bootstrap_stderr(
            fm,
            dm,
            resamples=options["bootstrap"],
            seed=cfg.seed,
            fit_window=fit_window,
        )
        est_json = _estimate_json(est)
        est_json["stderr"] = stderr
        fitted_p[mu] = est.p_hat

        if analysis.kernel_for(mu, m) == "immanant":
            other = analysis.filter_matrix(
                mu, table, kernel="zero-weight-trace", threads=threads
            )
            equivalence[_label(mu)] = float(np.abs(fm.values - other.values).max())

        if oracle_channel is not None:
            est_json["ground_truth_p"] = analysis.ground_truth_p(mu, oracle_channel)
            exact = analysis.exact_filtered_decay(cfg, mu)
            exact_fit = analysis.fit_decay(exact, mu=mu)
            est_json["exact_fit"] = {
                "p_hat": exact_fit.p_hat,
                "residual": exact_fit.residual,
                "phi_1": abs(exact_fit.phi[0]),
            }
        report_irreps[_label(mu)] = est_json

    report = {
        "version": __version__,
        "config": config,
        "config_hash": _hash_config(config),
        "decomposition": {
            "lambda": list(lam),
            "dual": list(dual_irrep(lam, m)),
            "d_lambda": dim(lam, m),
            "irreps": [
                {
                    "mu": list(mu),
                    "reduced": list(reduce_label(mu, m)),
                    "dim": dim(mu, m),
                }
                for mu in decomposition
            ],
            "cost": dict(
                zip(("immanants", "permanents_original"), cost_counts(lam, m))
            ),
        },
        "irreps": report_irreps,
        "kernel_equivalence": equivalence,
    }

    if set(mus) == set(decomposition):
        fom_fitted = analysis.figure_of_merit(fitted_p, lam, m)
        report["figure_of_merit"] = {"fitted": fom_fitted.value}
        if oracle_channel is not None:
            oracle_p = {
                mu: analysis.ground_truth_p(mu, oracle_channel)
                for mu in decomposition
            }
            report["figure_of_merit"]["oracle"] = analysis.figure_of_merit(
                oracle_p, lam, m
            ).value

    if baseline:
        if cfg.scenario != "fock":
            raise BosonicRBError("the original-filter baseline needs the fock scenario")
        estimates = analysis.original_filter_baseline(
            cfg,
            table,
            dm,
            mus=mus,
            samples=options["baseline_samples"],
            fit_window=fit_window,
        )
        report["baseline"] = {
            _label(mu): _estimate_json(est) for mu, est in estimates.items()
        }
    return report


def plot_decays(path: Path, report: dict) -> None:
    """Log-scale decay plot with fitted curves (needs matplotlib)."""
    try:
        import matplotlib
    except ImportError as exc:
        raise BosonicRBError(
            "plotting needs matplotlib; install the 'plot' extra"
        ) from exc
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for label, entry in sorted(report["irreps"].items()):
        depths = np.asarray(entry["depths"], dtype=float)
        phi = np.asarray([v[0] for v in entry["phi"]])
        kappa, p = entry["kappa"][0], entry["p_hat"]
        ax.plot(depths, np.abs(phi), "o", ms=4, label=f"mu=({label})")
        ax.plot(depths, np.abs(kappa * p ** (depths - 1.0)), "-", lw=1)
    ax.set_yscale("log")
    ax.set_xlabel("sequence depth g")
    ax.set_ylabel("|filtered signal|")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(
        path,
        format="svg",
        metadata={
            "Description": f"version={report['version']} "
            f"config_hash={report['config_hash']}"
        },
    )
    plt.close(fig)


def run_pipeline(
    config: dict,
    outdir: Path,
    plot: bool = False,
    baseline: bool = False,
    threads: int = 1,
) -> dict:
    """decompose -> sequences -> simulate -> filter -> fit -> figure of merit."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    cfg = experiment_config(config)
    table = simulator.build_sequences(cfg)
    dm = simulator.run_experiment(cfg, table, threads=threads)
    write_sequences(outdir / "sequences.json", config, table)
    write_data(outdir / "data.csv", config, dm)
    baseline = baseline or bool(config["analysis"].get("baseline"))
    report = analyze(config, table, dm, baseline=baseline, threads=threads)
    (outdir / "report.json").write_text(json.dumps(report, sort_keys=True, indent=1))
    if plot:
        plot_decays(outdir / "decay.svg", report)
    return report


# ---------------------------------------------------------------------------
# Self-check suite


def selfcheck() -> list[dict]:
    """Embedded identity suite; returns one {name, pass, detail} per item."""
    results = []

    def record(name, ok, detail):
        results.append({"name": name, "pass": bool(ok), "detail": detail})

    table2 = character_table(2)
    table3 = character_table(3)
    pinned2 = {((2,), (1, 1)): 1, ((2,), (2,)): 1, ((1, 1), (1, 1)): 1, ((1, 1), (2,)): -1}
    pinned3 = {
        ((3,), (1, 1, 1)): 1, ((3,), (2, 1)): 1, ((3,), (3,)): 1,
        ((2, 1), (1, 1, 1)): 2, ((2, 1), (2, 1)): 0, ((2, 1), (3,)): -1,
        ((1, 1, 1), (1, 1, 1)): 1, ((1, 1, 1), (2, 1)): -1, ((1, 1, 1), (3,)): 1,
    }
    ok = all(table2.value(k, c) == v for (k, c), v in pinned2.items()) and all(
        table3.value(k, c) == v for (k, c), v in pinned3.items()
    )
    record("character tables S2, S3", ok, "entry-for-entry against pinned values")

    rng = np.random.default_rng(2024)
    ok = True
    worst = 0.0
    for _ in range(20):
        a2 = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        a3 = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        checks = [
            immanant((2, 0), a2) - (a2[0, 0] * a2[1, 1] + a2[0, 1] * a2[1, 0]),
            immanant((1, 1), a2) - (a2[0, 0] * a2[1, 1] - a2[0, 1] * a2[1, 0]),
            immanant((2, 1, 0), a3)
            - (
                2 * a3[0, 0] * a3[1, 1] * a3[2, 2]
                - a3[0, 1] * a3[1, 2] * a3[2, 0]
                - a3[0, 2] * a3[1, 0] * a3[2, 1]
            ),
        ]
        worst = max(worst, max(abs(c) for c in checks))
    ok = worst < 1e-12
    record("immanant expansions (2x2, 3x3)", ok, f"max deviation {worst:.2e}")

    rep = kostant.verify_kostant((2, 1, 0), 3, trials=25, seed=3)
    app = kostant.su3_detailed_check(trials=25, seed=3)
    record(
        "zero-weight trace vs immanant, SU(3)",
        rep["pass"] and app["pass"],
        f"max residual {max(rep['max_residual'], app['max_residual']):.2e}",
    )

    ok = pieri_decompose((1, 0), 2).irreps == ((1, 1), (2, 0)) and pieri_decompose(
        (2, 0, 0), 3
    ).irreps == ((2, 2, 2), (3, 2, 1), (4, 2, 0))
    sums_ok = all(
        sum(dim(mu, m) for mu in pieri_decompose(symmetric_label(n, m), m))
        == dim(symmetric_label(n, m), m) ** 2
        for n, m in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3)]
    )
    record("tensor-product decomposition", ok and sums_ok, "labels and dimension sums")

    worst = 0.0
    for lam, m in [((1, 0), 2), ((2, 0, 0), 3)]:
        projs = casimir_projectors(lam, m)
        total = sum(projs.values())
        worst = max(worst, float(np.abs(total - np.eye(total.shape[0])).max()))
        for mu, p in projs.items():
            worst = max(worst, float(np.abs(p @ p - p).max()))
            worst = max(worst, abs(float(np.trace(p).real) - dim(mu, m)))
    record("isotypic projector completeness", worst < 1e-9, f"max defect {worst:.2e}")
    return results


# ---------------------------------------------------------------------------
# Subcommand handlers


def _emit(payload, args, text: str | None = None) -> None:
    if getattr(args, "json", False) or text is None:
        print(json.dumps(payload, sort_keys=True, indent=1))
    else:
        print(text)


def cmd_decompose(args) -> int:
    m = args.modes
    lam = symmetric_label(args.photons, m)
    decomposition = pieri_decompose(lam, m)
    payload = {
        "photons": args.photons,
        "modes": m,
        "lambda": list(lam),
        "dual": list(dual_irrep(lam, m)),
        "d_lambda": dim(lam, m),
        "irreps": [
            {"mu": list(mu), "reduced": list(reduce_label(mu, m)), "dim": dim(mu, m)}
            for mu in decomposition
        ],
        "sum_dims": sum(dim(mu, m) for mu in decomposition),
        "cost": dict(zip(("immanants", "permanents_original"), cost_counts(lam, m))),
    }
    print(json.dumps(payload, sort_keys=True, indent=1))
    return 0


def cmd_characters(args) -> int:
    table = character_table(args.degree)
    classes = tuple(reversed(table.classes))  # identity class first
    payload = {
        "degree": args.degree,
        "classes": [list(c) for c in classes],
        "class_sizes": [conjugacy_class_size(c) for c in classes],
        "rows": {
            _label(shape): [table.value(shape, c) for c in classes]
            for shape in table.shapes
        },
    }
    width = max(len(_label(s)) for s in table.shapes) + 2
    lines = [
        " " * width + "  ".join(f"{_label(c):>8}" for c in classes)
    ]
    for shape in table.shapes:
        row = "  ".join(f"{table.value(shape, c):>8d}" for c in classes)
        lines.append(f"{_label(shape):<{width}}" + row)
    _emit(payload, args, "\n".join(lines))
    return 0


def cmd_immanant(args) -> int:
    rows = []
    for line in Path(args.matrix).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append([complex(x.strip().replace(" ", "")) for x in line.split(",")])
    value = immanant(_parse_partition(args.partition), np.asarray(rows))
    _emit(
        {"partition": list(_parse_partition(args.partition)),
         "value": [value.real, value.imag]},
        args,
        f"{value.real:+.17g}{value.imag:+.17g}j",
    )
    return 0


def cmd_gt(args) -> int:
    mu = _parse_partition(args.irrep)
    m = args.modes
    patterns = (
        zero_weight_states(mu, m) if args.zero_weight else enumerate_patterns(mu, m)
    )
    payload = {
        "irrep": list(as_partition(mu, m)),
        "modes": m,
        "zero_weight_only": bool(args.zero_weight),
        "count": len(patterns),
        "patterns": [
            {
                "rows": [list(r) for r in p],
                "occupation": list(occupation(p)),
                "weight": list(weight(p)),
            }
            for p in patterns
        ],
    }
    print(json.dumps(payload, sort_keys=True, indent=1))
    if args.dump:
        outdir = Path(args.dump)
        outdir.mkdir(parents=True, exist_ok=True)
        gens = generators(mu, m)
        for i in range(m - 1):
            for name, mat in (
                (f"E{i + 1}", gens.raising[i]),
                (f"F{i + 1}", gens.lowering[i]),
                (f"H{i + 1}", gens.cartan[i]),
            ):
                np.savetxt(
                    outdir / f"{name}.csv", mat, fmt=CSV_FLOAT, delimiter=","
                )
    return 0


def cmd_kostant_verify(args) -> int:
    report = kostant.verify_kostant(
        _parse_partition(args.irrep), args.modes,
        trials=args.trials, seed=args.seed or 0, tol=args.tol,
    )
    report["mu"] = list(report["mu"])
    print(json.dumps(report, sort_keys=True, indent=1))
    return 0 if report["pass"] else 1


def cmd_simulate(args) -> int:
    config = resolve_config(json.loads(Path(args.config).read_text()), args.seed)
    cfg = experiment_config(config)
    outdir = Path(args.out or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    table = simulator.build_sequences(cfg)
    dm = simulator.run_experiment(cfg, table, threads=args.threads)
    write_sequences(outdir / "sequences.json", config, table)
    write_data(outdir / "data.csv", config, dm)
    print(f"wrote {outdir / 'sequences.json'} and {outdir / 'data.csv'}")
    return 0


def cmd_filter(args) -> int:
    config, table = read_sequences(Path(args.sequences))
    config = resolve_config(config)
    meta, dm = read_data(Path(args.data))
    if meta.get("config_hash") not in (None, _hash_config(config)):
        raise BosonicRBError(
            "data.csv and sequences.json come from different configurations"
        )
    mus = None
    if args.irrep != "all":
        mus = [as_partition(_parse_partition(args.irrep), config["modes"])]
    report = analyze(
        config,
        table,
        dm,
        mus=mus,
        baseline=args.baseline == "original",
        threads=args.threads,
    )
    out = Path(args.out or "report.json")
    out.write_text(json.dumps(report, sort_keys=True, indent=1))
    print(f"wrote {out}")
    if args.plot:
        plot_decays(Path(args.plot), report)
        print(f"wrote {args.plot}")
    return 0


def cmd_run(args) -> int:
    config = resolve_config(json.loads(Path(args.config).read_text()), args.seed)
    outdir = Path(args.out or "run-output")
    report = run_pipeline(
        config,
        outdir,
        plot=args.plot,
        baseline=args.baseline == "original",
        threads=args.threads,
    )
    summary = {
        label: {"p_hat": entry["p_hat"], "stderr": entry.get("stderr")}
        for label, entry in report["irreps"].items()
    }
    print(json.dumps({
        "out": str(outdir),
        "irreps": summary,
        "figure_of_merit": report.get("figure_of_merit"),
    }, sort_keys=True, indent=1))
    return 0


def cmd_selfcheck(args) -> int:
    results = selfcheck()
    if args.json:
        print(json.dumps(results, indent=1))
    else:
        for item in results:
            status = "PASS" if item["pass"] else "FAIL"
            print(f"[{status}] {item['name']}: {item['detail']}")
    return 0 if all(item["pass"] for item in results) else 1


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="override the config seed")
    common.add_argument("--out", default=None, help="output directory or file")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=1, help="worker threads")

    parser = argparse.ArgumentParser(
        prog="bosonic-rb",
        description="Immanant-filtered randomized benchmarking for passive "
        "linear-optical circuits",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common],
                       help="irrep content of the tensor representation")
    p.add_argument("--photons", type=int, required=True)
    p.add_argument("--modes", type=int, required=True)
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("characters", parents=[common],
                       help="character table of the symmetric group")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(handler=cmd_characters)

    p = sub.add_parser("immanant", parents=[common],
                       help="immanant of a complex matrix from a CSV file")
    p.add_argument("--partition", required=True, help="e.g. 2,1,0")
    p.add_argument("--matrix", required=True,
                   help="CSV of complex entries like 0.1+0.2j")
    p.set_defaults(handler=cmd_immanant)

    p = sub.add_parser("gt", parents=[common],
                       help="Gelfand-Tsetlin patterns of an irrep")
    p.add_argument("--irrep", required=True)
    p.add_argument("--modes", type=int, required=True)
    p.add_argument("--zero-weight", action="store_true")
    p.add_argument("--dump", default=None,
                   help="directory for generator matrices as CSV")
    p.set_defaults(handler=cmd_gt)

    p = sub.add_parser("kostant-verify", parents=[common],
                       help="zero-weight trace vs immanant over random elements")
    p.add_argument("--irrep", required=True)
    p.add_argument("--modes", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(handler=cmd_kostant_verify)

    p = sub.add_parser("simulate", parents=[common],
                       help="sample sequences and synthetic survival data")
    p.add_argument("--config", required=True)
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("filter", parents=[common],
                       help="filter recorded data and fit the decays")
    p.add_argument("--data", required=True)
    p.add_argument("--sequences", required=True)
    p.add_argument("--irrep", default="all")
    p.add_argument("--plot", default=None, help="write a decay plot (SVG)")
    p.add_argument("--baseline", choices=["original"], default=None)
    p.set_defaults(handler=cmd_filter)

    p = sub.add_parser("run", parents=[common], help="full pipeline")
    p.add_argument("--config", required=True)
    p.add_argument("--plot", action="store_true")
    p.add_argument("--baseline", choices=["original"], default=None)
    p.set_defaults(handler=cmd_run)

    p = sub.add_parser("selfcheck", parents=[common],
                       help="run the embedded identity suite")
    p.set_defaults(handler=cmd_selfcheck)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return args.handler(args)
    except (BosonicRBError, ValueError, OSError) as exc:
        print(
            f"error[{type(exc).__module__}.{type(exc).__name__}]: {exc}",
            file=sys.stderr,
        )
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
