"""Command-line surface: reproducible experiments with file outputs.

Subcommands: classify, kraus, walk, egg-scan, egg-rus, measure.  Global
flags --seed, --out-dir and --format control randomness and serialization.
Every file-writing run drops a manifest JSON beside its outputs recording
the subcommand, parameters, seed, package version and output paths;
re-running the same manifest reproduces the files byte for byte.

Exit codes: 0 success, 2 argument error, 3 numeric failure (for example no
balanced operating point in the requested range), 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .egg import (
    EggError,
    find_balanced_beta,
    outcome_probabilities,
    phi_scan,
    run_rus,
    success_probability,
)
from .interaction import classify, delta_gate, normalize_params
from .kraus import hh_crz_interaction, kraus_for
from .measure import (
    MeasureConfig,
    interaction_cost,
    measurement_ensemble,
    weak_interaction,
)
from .qmath import bloch_to_state, computational_basis, hadamard, rx, tensor, x_basis
from .seeding import derive_rng
from .sqwalk import (
    WalkConfig,
    fit_exponential,
    histogram,
    log_linear_r2,
    one_parameter_config,
    run_ensemble,
    two_parameter_config,
)
from .svgplot import histogram_svg

EXIT_OK = 0
EXIT_ARGS = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

CLI_CLASS_TOL = 1e-6


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _complex_matrix(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    _write_text(path, "\n".join(lines) + "\n")


class _Outputs:
    """Collects written files and serializes the run manifest."""

    def __init__(self, args: argparse.Namespace, name: str):
        self.name = name
        self.out_dir = Path(args.out_dir)
        self.seed = args.seed
        self.params = {
            k: v
            for k, v in sorted(vars(args).items())
            if k not in ("func",) and not k.startswith("_")
        }
        self.files: list[str] = []

    def path(self, suffix: str) -> Path:
        return self.out_dir / f"{self.name}.{suffix}"

    def record(self, path: Path) -> None:
        self.files.append(path.name)

    def write_manifest(self) -> None:
        manifest = {
            "subcommand": self.name,
            "parameters": self.params,
            "seed": self.seed,
            "version": __version__,
            "outputs": sorted(self.files),
        }
        path = self.out_dir / f"{self.name}_manifest.json"
        _write_text(path, _json_text(manifest))


# ---------------------------------------------------------------------------
# subcommands


def _cmd_classify(args: argparse.Namespace) -> int:
    canon, moves = normalize_params(args.ax, args.ay, args.az)
    cls = classify(args.ax, args.ay, args.az, tol=args.tol)
    payload = {
        "input": [args.ax, args.ay, args.az],
        "normalized": [canon.ax, canon.ay, canon.az],
        "moves": moves,
        "class": cls.kind.value,
        "is_cz_class": cls.is_cz_class,
        "is_cz_swap_class": cls.is_cz_swap_class,
    }
    text = _json_text(payload)
    sys.stdout.write(text)
    if args.out_dir != ".":
        out = _Outputs(args, "classify")
        p = out.path("json")
        _write_text(p, text)
        out.record(p)
        out.write_manifest()
    return EXIT_OK


def _kraus_inputs(args: argparse.Namespace):
    basis = {"computational": computational_basis(), "x": x_basis()}[args.basis]
    ancilla = bloch_to_state(args.ancilla[0], args.ancilla[1])
    if args.preset == "one-param":
        e = tensor(hadamard(), hadamard()) @ delta_gate(0, 0, np.pi / 16)
        ancilla = bloch_to_state(np.pi / 2, 0.0)
        basis = x_basis()
    elif args.preset == "two-param":
        e = delta_gate(np.pi / 16, 0, np.pi / 16)
        ancilla = bloch_to_state(np.pi / 2, 0.0)
        basis = computational_basis()
    elif args.preset == "deterministic":
        e = hh_crz_interaction(np.pi / 4)
    elif args.preset == "weak":
        e = weak_interaction(args.theta)
        ancilla = bloch_to_state(np.pi / 2, 0.0)
        basis = computational_basis()
    else:
        e = delta_gate(*args.params)
    return e, ancilla, basis


def _cmd_kraus(args: argparse.Namespace) -> int:
    e, ancilla, basis = _kraus_inputs(args)
    outcomes = kraus_for(e, ancilla, basis)
    payload = {
        "interaction": _complex_matrix(e),
        "ancilla": _complex_matrix(ancilla.reshape(1, -1)),
        "outcomes": [
            {
                "outcome": i,
                "operator": _complex_matrix(o.operator),
                "probability": o.probability,
                "proportional_unitary": o.proportional_unitary,
                "is_zero": o.is_zero,
            }
            for i, o in enumerate(outcomes)
        ],
    }
    text = _json_text(payload)
    sys.stdout.write(text)
    if args.out_dir != ".":
        out = _Outputs(args, "kraus")
        p = out.path("json")
        _write_text(p, text)
        out.record(p)
        out.write_manifest()
    return EXIT_OK


def _cmd_walk(args: argparse.Namespace) -> int:
    make = {"one-param": one_parameter_config, "two-param": two_parameter_config}[
        args.preset
    ]
    cfg = make(epsilon=args.epsilon, seed=args.seed, max_steps=args.max_steps)
    if args.target_rx != np.pi / 2:
        cfg = WalkConfig(
            u0=cfg.u0,
            u1=cfg.u1,
            target=rx(args.target_rx),
            p0=cfg.p0,
            epsilon=args.epsilon,
            max_steps=args.max_steps,
            seed=args.seed,
        )
    results = run_ensemble(cfg, args.trials)
    steps = [r.steps for r in results if r.hit]

    out = _Outputs(args, "walk")
    if args.format in ("csv", "both"):
        p = out.path("csv")
        _write_csv(
            p,
            ["trial", "steps", "hit", "final_distance"],
            [[t, r.steps, r.hit, r.final_distance] for t, r in enumerate(results)],
        )
        out.record(p)

    summary: dict = {
        "preset": args.preset,
        "epsilon": args.epsilon,
        "trials": args.trials,
        "hits": len(steps),
    }
    hist = None
    if steps:
        hist = histogram(steps, args.bins)
        rate = fit_exponential(steps)
        summary.update(
            {
                "mean_steps": float(np.mean(steps)),
                "lambda": rate,
                "histogram": {
                    "bin_edges": [float(e) for e in hist.bin_edges],
                    "counts": [int(c) for c in hist.counts],
                },
            }
        )
        try:
            summary["log_linear_r2"] = log_linear_r2(hist)
        except ValueError:
            summary["log_linear_r2"] = None
    if args.format in ("json", "both"):
        p = out.path("json")
        _write_text(p, _json_text(summary))
        out.record(p)
    if args.svg and hist is not None:
        p = out.path("svg")
        _write_text(
            p,
            histogram_svg(hist, summary.get("lambda"), title=f"walk {args.preset}"),
        )
        out.record(p)
    out.write_manifest()
    sys.stdout.write(
        f"walk: {len(steps)}/{args.trials} hits, mean steps "
        f"{summary.get('mean_steps', float('nan')):.1f}\n"
    )
    return EXIT_OK


def _cmd_egg_scan(args: argparse.Namespace) -> int:
    beta_max = args.beta_max if args.beta_max is not None else args.alpha
    rows = phi_scan(args.alpha, (args.beta_min, beta_max), args.samples)
    beta_star = find_balanced_beta(args.alpha, beta_max=beta_max)

    out = _Outputs(args, "egg-scan")
    if args.format in ("csv", "both"):
        p = out.path("csv")
        _write_csv(
            p,
            [
                "beta",
                "phi_plus",
                "phi_minus",
                "delta_phi",
                "p_plus",
                "p_minus",
                "success_prob",
            ],
            [
                [
                    r.beta,
                    r.phi_plus,
                    r.phi_minus,
                    r.delta_phi,
                    r.p_plus,
                    r.p_minus,
                    r.success_prob,
                ]
                for r in rows
            ],
        )
        out.record(p)
    summary = {
        "alpha": args.alpha,
        "beta_star": beta_star,
        "delta_phi_at_beta_star": np.pi,
        "success_prob_at_beta_star": success_probability(args.alpha, beta_star),
    }
    if args.format in ("json", "both"):
        p = out.path("json")
        _write_text(p, _json_text(summary))
        out.record(p)
    out.write_manifest()
    sys.stdout.write(
        f"egg-scan: beta* = {beta_star:.6f}, success prob "
        f"{summary['success_prob_at_beta_star']:.6f}\n"
    )
    return EXIT_OK


def _cmd_egg_rus(args: argparse.Namespace) -> int:
    beta = args.beta if args.beta is not None else find_balanced_beta(args.alpha)
    trials = []
    for t in range(args.trials):
        res = run_rus(args.alpha, beta, derive_rng(args.seed, t), args.max_attempts)
        trials.append(res)
    p_plus, p_minus = outcome_probabilities(args.alpha, beta)
    payload = {
        "alpha": args.alpha,
        "beta": beta,
        "analytic_success_prob": 2 * p_plus * p_minus,
        "mean_attempts": float(np.mean([r.attempts for r in trials])),
        "all_succeeded": all(r.success for r in trials),
        "trials": [
            {
                "trial": t,
                "attempts": r.attempts,
                "success": r.success,
                "log": [
                    {
                        "attempt": rec.index,
                        "outcome_first": rec.outcome_first,
                        "outcome_second": rec.outcome_second,
                        "success": rec.success,
                        "combined_phase": rec.combined_phase,
                    }
                    for rec in r.log
                ],
            }
            for t, r in enumerate(trials)
        ],
    }
    out = _Outputs(args, "egg-rus")
    p = out.path("json")
    _write_text(p, _json_text(payload))
    out.record(p)
    out.write_manifest()
    sys.stdout.write(
        f"egg-rus: mean attempts {payload['mean_attempts']:.2f} "
        f"(analytic {1 / payload['analytic_success_prob']:.2f})\n"
    )
    return EXIT_OK


def _cmd_measure(args: argparse.Namespace) -> int:
    cfg = MeasureConfig(theta=args.theta, epsilon=args.epsilon, seed=args.seed)
    state = bloch_to_state(args.state[0], args.state[1])
    results = measurement_ensemble(state, cfg, args.trials)
    n = cfg.n_steps

    out = _Outputs(args, "measure")
    if args.format in ("csv", "both"):
        p = out.path("csv")
        _write_csv(
            p,
            ["trial", "label", "steps", "residual_bound"],
            [[t, r.label, r.steps_used, r.residual_bound] for t, r in enumerate(results)],
        )
        out.record(p)
    labels = np.array([r.label for r in results])
    summary = {
        "theta": args.theta,
        "epsilon": args.epsilon,
        "required_steps": n,
        "interaction_cost": interaction_cost(n),
        "trials": args.trials,
        "label_frequencies": {
            "0": float(np.mean(labels == 0)),
            "1": float(np.mean(labels == 1)),
        },
        "mislabel_bound_for_one_input": float(np.cos(args.theta / 2) ** (2 * n)),
    }
    if args.format in ("json", "both"):
        p = out.path("json")
        _write_text(p, _json_text(summary))
        out.record(p)
    out.write_manifest()
    sys.stdout.write(
        f"measure: n = {n}, label frequencies 0: "
        f"{summary['label_frequencies']['0']:.4f}, 1: "
        f"{summary['label_frequencies']['1']:.4f}\n"
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adqcsim",
        description="Simulator for ancilla-driven quantum computation "
        "with arbitrary-strength entangling interactions.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=0, help="base RNG seed")
        p.add_argument("--out-dir", default=".", help="directory for output files")
        p.add_argument(
            "--format",
            choices=("csv", "json", "both"),
            default="both",
            help="which tabular outputs to write",
        )

    p = sub.add_parser("classify", help="canonicalize and classify interaction parameters")
    p.add_argument("ax", type=float)
    p.add_argument("ay", type=float)
    p.add_argument("az", type=float)
    p.add_argument(
        "--tol",
        type=float,
        default=CLI_CLASS_TOL,
        help="tolerance for zero/special-class tests on typed-in decimals",
    )
    common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("kraus", help="measurement-induced register operators")
    p.add_argument(
        "--preset",
        choices=("one-param", "two-param", "deterministic", "weak", "none"),
        default="none",
    )
    p.add_argument("--params", type=float, nargs=3, default=[0.0, 0.0, np.pi / 16],
                   metavar=("AX", "AY", "AZ"))
    p.add_argument("--ancilla", type=float, nargs=2, default=[np.pi / 2, 0.0],
                   metavar=("THETA", "PHI"), help="ancilla Bloch angles")
    p.add_argument("--basis", choices=("computational", "x"), default="computational")
    p.add_argument("--theta", type=float, default=np.pi / 4,
                   help="C-Rz angle for the weak preset")
    common(p)
    p.set_defaults(func=_cmd_kraus)

    p = sub.add_parser("walk", help="stochastic gate-product walks to a target")
    p.add_argument("--preset", choices=("one-param", "two-param"), default="one-param")
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--bins", type=int, default=20)
    p.add_argument("--target-rx", type=float, default=np.pi / 2,
                   help="target is rx of this angle")
    p.add_argument("--max-steps", type=int, default=1_000_000)
    p.add_argument("--svg", action="store_true", help="also write an SVG histogram")
    common(p)
    p.set_defaults(func=_cmd_walk)

    p = sub.add_parser("egg-scan", help="outcome phases over the preparation split")
    p.add_argument("--alpha", type=float, default=np.pi / 16)
    p.add_argument("--beta-min", type=float, default=0.0)
    p.add_argument("--beta-max", type=float, default=None)
    p.add_argument("--samples", type=int, default=101)
    common(p)
    p.set_defaults(func=_cmd_egg_scan)

    p = sub.add_parser("egg-rus", help="repeat-until-success CZ generation")
    p.add_argument("--alpha", type=float, default=np.pi / 16)
    p.add_argument("--beta", type=float, default=None,
                   help="operating split; defaults to the balanced point")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--max-attempts", type=int, default=1000)
    common(p)
    p.set_defaults(func=_cmd_egg_rus)

    p = sub.add_parser("measure", help="iterative weak z-measurement chains")
    p.add_argument("--theta", type=float, default=np.pi / 4)
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--state", type=float, nargs=2, default=[np.pi / 2, 0.0],
                   metavar=("THETA", "PHI"), help="input register Bloch angles")
    p.add_argument("--trials", type=int, default=1000)
    common(p)
    p.set_defaults(func=_cmd_measure)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EggError as exc:
        sys.stderr.write(
            _json_text({"error": type(exc).__name__, "message": str(exc)})
        )
        return EXIT_NUMERIC
    except ValueError as exc:
        sys.stderr.write(_json_text({"error": "ArgumentError", "message": str(exc)}))
        return EXIT_ARGS
    except OSError as exc:
        sys.stderr.write(_json_text({"error": "IOError", "message": str(exc)}))
        return EXIT_IO


def entry() -> None:
    sys.exit(main())
