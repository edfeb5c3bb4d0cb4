"""Command-line front end.

Subcommands: ``sweep`` (quantities over a parameter grid), ``optimal-mu``
(best twisting phase), ``compare`` (local vs nonlocal strategies),
``figure`` (reference figure data), ``gradient`` (two-mode gradient
sensing example), ``certify`` (closed forms vs exact simulation) and
``dump-state`` (exact state in a diffable text format).

Exit codes: 0 success, 1 usage error, 2 certification failure. All output
is deterministic given the flags (and seed, where one applies).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .errors import SplitSpinError
from .experiments import (
    DEFAULT_SWEEP_OUTPUTS,
    SweepSpec,
    figure_data,
    gradient_example,
    optimal_mu,
    oracle_certify,
    run_sweep,
    strategy_comparison,
)
from .matrices import LinearCombination
from .oracle import oat_state, split_dicke_state, split_state
from .states import DickeParams

USAGE_ERROR = 1
CERTIFICATION_FAILURE = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; this tool reserves 2 for
    # certification failures.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _float_list(text: str) -> tuple:
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats, got {text!r}")


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated ints, got {text!r}")


def _grid(text: str) -> tuple:
    """lo:hi:steps, inclusive of both endpoints."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be lo:hi:steps")
    lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    if steps < 1 or hi <= lo:
        raise argparse.ArgumentTypeError("grid needs hi > lo and steps >= 1")
    return tuple(np.linspace(lo, hi, steps))


def _emit(table: dict, fmt: str, out: str | None) -> None:
    if fmt == "json":
        text = json.dumps(table, indent=2)
    else:
        names = list(table["series"])
        lines = [",".join(["grid"] + names)]
        for i, g in enumerate(table["grid"]):
            row = [f"{g:.17g}"] + [f"{table['series'][n][i]:.17g}" for n in names]
            lines.append(",".join(row))
        text = "\n".join(lines)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _emit_json(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="splitspin",
                     description="Multiparameter metrology of split spin ensembles")
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="evaluate quantities over a parameter grid")
    sw.add_argument("--state", required=True, choices=["sss_pn", "sss_npn", "dicke_pn"])
    sw.add_argument("--n", type=int, required=True, help="total particle number")
    sw.add_argument("--modes", type=int, default=2)
    sw.add_argument("--p", type=_float_list, default=None,
                    help="splitting probabilities a,b,...")
    sw.add_argument("--nk", type=_int_list, default=None,
                    help="deterministic per-mode counts a,b,...")
    sw.add_argument("--mu-grid", type=_grid, default=None, help="lo:hi:steps")
    sw.add_argument("--p-grid", type=_grid, default=None,
                    help="first-mode probability grid for dicke_pn sweeps")
    sw.add_argument("--m", type=float, default=None, help="Dicke magnetization")
    sw.add_argument("--eta", type=int, default=1, help="measurement repetitions")
    sw.add_argument("--outputs", type=lambda s: tuple(s.split(",")),
                    default=DEFAULT_SWEEP_OUTPUTS)
    sw.add_argument("--format", choices=["csv", "json"], default="csv")
    sw.add_argument("--out", default=None)

    om = sub.add_parser("optimal-mu", help="minimize an eigenvalue over the twisting phase")
    om.add_argument("--objective", choices=["xi2", "xi2-ms"], default="xi2")
    om.add_argument("--n", type=float, required=True)
    om.add_argument("--modes", type=int, default=2)
    om.add_argument("--state", choices=["sss_pn", "sss_npn"], default="sss_pn")
    om.add_argument("--out", default=None)

    cp = sub.add_parser("compare", help="local vs nonlocal strategy gains")
    cp.add_argument("--n", type=float, required=True)
    cp.add_argument("--modes", type=int, required=True)
    cp.add_argument("--weights", type=_float_list, default=None,
                    help="combination coefficients (default: equal weights)")
    cp.add_argument("--out", default=None)

    fg = sub.add_parser("figure", help="regenerate reference figure data")
    fg.add_argument("--which", required=True,
                    choices=["fig2a", "fig2b", "fig3", "fig5", "fig6"])
    fg.add_argument("--n", type=int, default=None, help="override the particle number")
    fg.add_argument("--format", choices=["csv", "json"], default="csv")
    fg.add_argument("--out", default=None)

    gr = sub.add_parser("gradient", help="two-mode gradient-sensing example")
    gr.add_argument("--n", type=int, default=1000)
    gr.add_argument("--target-db", type=float, default=-10.0)
    gr.add_argument("--eta", type=int, default=1)
    gr.add_argument("--out", default=None)

    ce = sub.add_parser("certify", help="closed forms vs exact simulation")
    ce.add_argument("--max-n", type=int, default=8)
    ce.add_argument("--seed", type=int, default=1)
    ce.add_argument("--draws", type=int, default=20)
    ce.add_argument("--out", default=None)

    du = sub.add_parser("dump-state", help="write an exact state, one configuration per line")
    du.add_argument("--state", required=True, choices=["sss_pn", "dicke_pn"])
    du.add_argument("--n", type=int, required=True)
    du.add_argument("--p", type=_float_list, required=True)
    du.add_argument("--mu", type=float, default=None)
    du.add_argument("--m", type=float, default=None)
    du.add_argument("--out", default=None)
    return parser


def _cmd_sweep(args) -> int:
    if args.state == "dicke_pn":
        if args.p_grid is None or args.m is None:
            raise SplitSpinError("dicke_pn sweeps need --p-grid and --m")
        grid = args.p_grid
    else:
        if args.mu_grid is None:
            raise SplitSpinError("squeezed-state sweeps need --mu-grid")
        grid = args.mu_grid
    spec = SweepSpec(
        state_kind=args.state,
        n_total=args.n,
        modes=args.modes,
        grid=grid,
        split=args.nk if args.state == "sss_npn" else args.p,
        m_value=args.m,
        outputs=tuple(args.outputs),
        repetitions=args.eta,
    )
    _emit(run_sweep(spec), args.format, args.out)
    return 0


def _cmd_optimal_mu(args) -> int:
    objective = "lambda_min_xi2" if args.objective == "xi2" else "lambda_min_xi2_ms"
    mu, value = optimal_mu(objective, args.n, args.modes,
                           partition_noise=(args.state == "sss_pn"))
    _emit_json({"objective": objective, "n": args.n, "modes": args.modes,
                "partition_noise": args.state == "sss_pn",
                "mu_star": mu, "value": value,
                "value_db": 10.0 * math.log10(value)}, args.out)
    return 0


def _cmd_compare(args) -> int:
    weights = LinearCombination(np.asarray(args.weights)) if args.weights else None
    _emit_json(strategy_comparison(args.n, args.modes, weights).to_dict(), args.out)
    return 0


def _cmd_figure(args) -> int:
    overrides = {}
    if args.n is not None:
        overrides["n"] = args.n
    _emit(figure_data(args.which, **overrides), args.format, args.out)
    return 0


def _cmd_gradient(args) -> int:
    _emit_json(gradient_example(args.n, args.target_db, args.eta), args.out)
    return 0


def _cmd_certify(args) -> int:
    report = oracle_certify(max_n=args.max_n, seed=args.seed, draws=args.draws)
    _emit_json(report.to_dict(), args.out)
    return 0 if report.passed else CERTIFICATION_FAILURE


def _cmd_dump_state(args) -> int:
    if args.state == "sss_pn":
        if args.mu is None:
            raise SplitSpinError("sss_pn needs --mu")
        state = split_state(oat_state(args.n, args.mu), args.p)
    else:
        if args.m is None:
            raise SplitSpinError("dicke_pn needs --m")
        state = split_dicke_state(DickeParams.from_jm(args.n / 2.0, args.m), args.p)
    if args.out:
        with open(args.out, "w") as fh:
            state.dump(fh)
    else:
        state.dump(sys.stdout)
    return 0


_COMMANDS = {
    "sweep": _cmd_sweep,
    "optimal-mu": _cmd_optimal_mu,
    "compare": _cmd_compare,
    "figure": _cmd_figure,
    "gradient": _cmd_gradient,
    "certify": _cmd_certify,
    "dump-state": _cmd_dump_state,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SplitSpinError as exc:
        print(f"splitspin: error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
