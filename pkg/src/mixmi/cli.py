"""Command-line interface: reports, sigma sweeps, and Pe translations.

Exit codes: 0 on success, 1 on usage errors (unknown flags are hard
errors), 2 on computation or input failures (bad files, schema or
invariant violations).  All CSV output is deterministic for a given seed;
timings appear only in the human-readable report, never in CSV.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .mixture import class_marginal, load_mixture
from .pe import fano_lower_pe, hu_upper_pe, inverse_binary_entropy
from .report import SWEEP_COLUMNS, compute_report, format_value, reports_to_csv
from .scenarios import Scenario, ScenarioSpec, default_sigma_grid, sigma_sweep, spec_from_json

_LN2 = math.log(2.0)

_USAGE_EXIT = 1
_COMPUTE_EXIT = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; this CLI reserves 2 for
    # computation failures, so remap.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(_USAGE_EXIT)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=0.5,
                   help="Chernoff exponent for divergences (default 0.5)")
    p.add_argument("--ub-mode", choices=["full", "matched", "auto"], default="auto",
                   help="variational batch construction (default auto)")
    p.add_argument("--oracle", choices=["mc", "quadrature", "none"], default=None,
                   help="reference value to compute alongside the bounds")
    p.add_argument("--samples", type=int, default=100_000,
                   help="Monte Carlo sample budget (default 100000)")
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--tol", type=float, default=1e-9,
                   help="optimizer stopping tolerance (default 1e-9)")
    p.add_argument("--max-iter", type=int, default=500,
                   help="optimizer sweep cap (default 500)")
    p.add_argument("--out", default=None, metavar="FILE|-",
                   help="write CSV to FILE, or '-' for stdout")


def _build_parser() -> _Parser:
    parser = _Parser(prog="mixmi",
                     description="Mutual information bounds for labeled Gaussian mixtures.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_report = sub.add_parser("report", help="evaluate one mixture JSON file")
    p_report.add_argument("model", help="mixture JSON file")
    _add_common(p_report)
    p_report.set_defaults(func=cmd_report)

    p_sweep = sub.add_parser("sweep", help="run a scenario sigma sweep")
    p_sweep.add_argument("--scenario", type=int, choices=[1, 2, 3], default=1,
                         help="1 uniform boundary, 2 one group, 3 multiple groups")
    p_sweep.add_argument("--nc", type=int, default=20, help="components per class (default 20)")
    p_sweep.add_argument("--spec", metavar="FILE", default=None,
                         help="scenario JSON config; overrides --scenario/--nc")
    p_sweep.add_argument("--sigmas", type=int, default=30,
                         help="number of log-spaced sigma points (default 30)")
    p_sweep.add_argument("--sigma-min", type=float, default=0.01)
    p_sweep.add_argument("--sigma-max", type=float, default=10.0)
    _add_common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_pe = sub.add_parser("pe", help="error-probability bounds from a model file or sweep CSV")
    p_pe.add_argument("input", help="mixture JSON file or sweep CSV")
    p_pe.add_argument("--with-fano", action="store_true",
                      help="add Fano lower-bound columns next to the Hu columns")
    _add_common(p_pe)
    p_pe.set_defaults(func=cmd_pe)
    return parser


def _write_out(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _print_report(rep) -> None:
    rows = [
        ("H(C)", rep.h_c),
        ("I_lb_Calpha", rep.i_lb_calpha),
        ("I_ub_KL", rep.i_ub_kl),
        ("I_hat_KL", rep.i_hat_kl),
        ("I_hat_Calpha", rep.i_hat_calpha),
        ("I_hat_D", rep.i_hat_d),
        ("I_lb_2H", rep.i_lb_2h),
        ("I_ub_2H", rep.i_ub_2h),
    ]
    print("mutual information (nats)")
    for name, value in rows:
        print(f"  {name:<14s} {format_value(value)}")
    if not math.isnan(rep.i_mc):
        se = "" if math.isnan(rep.i_mc_se) else f" +/- {format_value(rep.i_mc_se)}"
        print(f"  {'I_' + rep.oracle:<14s} {format_value(rep.i_mc)}{se}")
    if not math.isnan(rep.pe_hu):
        print("error probability (from the oracle value)")
        print(f"  {'Pe_fano':<14s} {format_value(rep.pe_fano)}")
        print(f"  {'Pe_hu':<14s} {format_value(rep.pe_hu)}")
    print(f"config: alpha={rep.alpha} ub_mode={rep.ub_mode} "
          f"lb_alphas={[round(a, 6) for a in rep.lb_alphas]} oracle={rep.oracle} "
          f"seed={rep.seed} tol={rep.tol} max_iter={rep.max_iter} "
          f"ub_iterations={rep.ub_iterations} converged={rep.ub_converged}")
    stages = " ".join(f"{k}={v:.3f}s" for k, v in rep.timings.items())
    print(f"timing: {stages}")


def cmd_report(args) -> int:
    text = Path(args.model).read_text()
    mixture = load_mixture(text)
    rep = compute_report(
        mixture,
        alpha=args.alpha,
        ub_mode=args.ub_mode,
        oracle=args.oracle or "none",
        n_samples=args.samples,
        seed=args.seed,
        tol=args.tol,
        max_iter=args.max_iter,
    )
    if args.out is not None:
        _write_out(reports_to_csv([rep]), args.out)
    else:
        _print_report(rep)
    return 0


def cmd_sweep(args) -> int:
    if args.spec is not None:
        spec = spec_from_json(Path(args.spec).read_text())
    else:
        spec = ScenarioSpec(
            scenario=Scenario(args.scenario),
            components_per_class=args.nc,
            seed=args.seed,
        )
    sigmas = default_sigma_grid(args.sigmas, args.sigma_min, args.sigma_max)
    reports = sigma_sweep(
        spec,
        sigmas,
        alpha=args.alpha,
        ub_mode=args.ub_mode,
        oracle=args.oracle or "mc",
        n_samples=args.samples,
        seed=args.seed,
        tol=args.tol,
        max_iter=args.max_iter,
    )
    _write_out(reports_to_csv(reports), args.out)
    return 0


_PE_SOURCE_COLUMNS = [
    "I_lb_Calpha", "I_ub_KL", "I_hat_KL", "I_hat_Calpha", "I_hat_D",
    "I_lb_2H", "I_ub_2H", "I_mc",
]


def _pe_from_csv(text: str, with_fano: bool) -> str:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = lines[0].split(",")
    if "H_C" not in header:
        raise ValueError("sweep CSV must carry an H_C column")
    col = {name: header.index(name) for name in header}
    sources = [name for name in _PE_SOURCE_COLUMNS if name in col]
    out_cols = ["sigma"] if "sigma" in col else []
    for name in sources:
        out_cols.append(f"Pe_hu_{name}")
        if with_fano:
            out_cols.append(f"Pe_fano_{name}")
    out_lines = [",".join(out_cols)]
    for ln in lines[1:]:
        cells = ln.split(",")
        h_c = float(cells[col["H_C"]])
        # Binary marginal recovered from its entropy: P_min = h_b^{-1}(H in bits)
        p_min = inverse_binary_entropy(min(1.0, max(0.0, h_c / _LN2)))
        probs = np.array([p_min, 1.0 - p_min])
        row = []
        if "sigma" in col:
            row.append(cells[col["sigma"]])
        for name in sources:
            mi = float(cells[col[name]])
            row.append(format_value(hu_upper_pe(mi, probs)))
            if with_fano:
                row.append(format_value(fano_lower_pe(mi, probs)))
        out_lines.append(",".join(row))
    return "\n".join(out_lines) + "\n"


def cmd_pe(args) -> int:
    text = Path(args.input).read_text()
    if text.lstrip().startswith("{"):
        mixture = load_mixture(text)
        if mixture.num_classes != 2:
            raise ValueError("error-probability bounds need a binary mixture")
        rep = compute_report(
            mixture,
            alpha=args.alpha,
            ub_mode=args.ub_mode,
            oracle=args.oracle or "quadrature",
            n_samples=args.samples,
            seed=args.seed,
            tol=args.tol,
            max_iter=args.max_iter,
        )
        text = reports_to_csv([rep])
    out = _pe_from_csv(text, args.with_fano)
    _write_out(out, args.out)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help exits 0, usage errors exit 1
        return exc.code if isinstance(exc.code, int) else _USAGE_EXIT
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"mixmi: error: {exc}", file=sys.stderr)
        return _COMPUTE_EXIT


if __name__ == "__main__":
    sys.exit(main())
