"""Command-line front end.

    diamond-bounds eval  --a 0.9 --b 0.9 --p1 10 --p2 10 --c1 2 --c2 2
    diamond-bounds sweep --a 0.9 --b 0.9 --p1 10 --p2 10 --c-min 1 --c-max 3 --step 0.05 --out sym.csv
    diamond-bounds plot  --csv sym.csv --out sym.gp

Exit codes: 0 success, 1 usage or input error, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import configparser
import sys
from dataclasses import astuple

from diamond_bounds import oracle
from diamond_bounds.bounds import bound_terms
from diamond_bounds.closed_forms import interval_a_x
from diamond_bounds.core_model import FULL_INTERVAL, ChannelConfig, InvalidInput, OptimizerOptions
from diamond_bounds.mimo_bc import sum_capacity_bits
from diamond_bounds.sweep import (
    CSV_COLUMNS,
    InvariantViolation,
    SweepRow,
    SweepSpec,
    check_rows,
    emit_plot_script,
    eval_point,
    format_csv,
    run_sweep,
    write_csv,
)

EXIT_USAGE = 1
EXIT_INVARIANT = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_config(path: str) -> dict[str, str]:
    cp = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_string("[params]\n" + fh.read())
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    return {k.replace("-", "_"): v for k, v in cp["params"].items()}


def _merge_config(args: argparse.Namespace, keys: tuple[str, ...]) -> None:
    """Fill flags that were not given on the command line from ``--config``."""
    values = _read_config(args.config) if getattr(args, "config", None) else {}
    unknown = set(values) - set(keys)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key in keys:
        if getattr(args, key, None) is None and key in values:
            raw = values[key]
            try:
                setattr(args, key, raw if key == "out" else float(raw))
            except ValueError as exc:
                raise UsageError(f"config value for {key} is not a number: {raw!r}") from exc
    missing = [k for k in keys if getattr(args, k, None) is None and k not in ("tol", "config")]
    if missing:
        raise UsageError("missing required parameters: " + ", ".join("--" + k.replace("_", "-") for k in missing))


def _options(args) -> OptimizerOptions:
    return OptimizerOptions(tolerance=args.tol) if args.tol is not None else OptimizerOptions()


def _channel_flags(p: argparse.ArgumentParser, backhaul: bool) -> None:
    for name in ("a", "b", "p1", "p2") + (("c1", "c2") if backhaul else ()):
        p.add_argument(f"--{name}", type=float)
    p.add_argument("--tol", type=float, help="sum-capacity accuracy target in bits (default 1e-4)")
    p.add_argument("--config", metavar="PATH", help="key = value file; flags override its values")


def cmd_eval(args) -> int:
    _merge_config(args, ("a", "b", "p1", "p2", "c1", "c2", "tol"))
    cfg = ChannelConfig(args.a, args.b, args.p1, args.p2, args.c1, args.c2)
    report = eval_point(cfg, _options(args))
    row = SweepRow.from_report(cfg.c1, report)
    width = max(len(k) for k in CSV_COLUMNS)
    print(f"{'config':<{width}}  a={cfg.a} b={cfg.b} P1={cfg.p1} P2={cfg.p2} C1={cfg.c1} C2={cfg.c2}")
    for key, value in zip(CSV_COLUMNS[1:], astuple(row)[1:]):
        print(f"{key:<{width}}  {value:.6f}")
    check_rows([row])
    if args.csv:
        sys.stdout.write(format_csv([row]))
    return 0


def cmd_sweep(args) -> int:
    _merge_config(args, ("a", "b", "p1", "p2", "c_min", "c_max", "step", "out", "tol"))
    spec = SweepSpec(ChannelConfig(args.a, args.b, args.p1, args.p2, 0.0, 0.0), args.c_min, args.c_max, args.step)
    rows = run_sweep(spec, _options(args), jobs=args.jobs)
    try:
        write_csv(rows, args.out)
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from exc
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_plot(args) -> int:
    try:
        emit_plot_script(args.csv, args.out)
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    print(f"wrote gnuplot script to {args.out}")
    return 0


def cmd_oracle(args) -> int:
    cfg = ChannelConfig(args.a, args.b, args.p1, args.p2, args.c1, args.c2)
    opts = OptimizerOptions()
    if args.kind == "sumcap":
        print(f"{oracle.grid_sum_capacity(args.rho, cfg, (args.n_theta, args.n_q)):.9f}")
    elif args.kind == "n3":
        print(f"{oracle.n3_identity_residual(args.rho, cfg):.3e}")
    else:
        if args.kind == "maxmin-mimo":
            fns, domain = [lambda r: sum_capacity_bits(r, cfg, opts)], FULL_INTERVAL
        elif args.kind == "maxmin-102":
            fns, domain = bound_terms(cfg, opts, averaged=False), FULL_INTERVAL
        else:
            x = cfg.a if args.kind == "maxmin-101a" else cfg.b
            fns, domain = bound_terms(cfg, opts, averaged=True), interval_a_x(x, cfg)
        value, arg = oracle.grid_max_min(fns, domain, args.n)
        print(f"{value:.9f} at rho={arg:.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="diamond-bounds", description="Sum-capacity upper bounds for the Gaussian MAC diamond channel.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="{eval,sweep,plot}", parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate all bounds at one configuration")
    _channel_flags(p, backhaul=True)
    p.add_argument("--csv", action="store_true", help="also print the result as a CSV row")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="sweep C1 = C2 = C and write CSV")
    _channel_flags(p, backhaul=False)
    p.add_argument("--c-min", dest="c_min", type=float)
    p.add_argument("--c-max", dest="c_max", type=float)
    p.add_argument("--step", type=float)
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("plot", help="write a gnuplot script for a sweep CSV")
    p.add_argument("--csv", required=True, metavar="PATH")
    p.add_argument("--out", required=True, metavar="PATH")
    p.set_defaults(func=cmd_plot)

    # not listed in --help; reproduces the brute-force reference values
    p = sub.add_parser("oracle")
    p.add_argument("kind", choices=("sumcap", "n3", "maxmin-mimo", "maxmin-102", "maxmin-101a", "maxmin-101b"))
    for name in ("a", "b", "p1", "p2"):
        p.add_argument(f"--{name}", type=float, required=True)
    p.add_argument("--c1", type=float, default=0.0)
    p.add_argument("--c2", type=float, default=0.0)
    p.add_argument("--rho", type=float, default=0.0)
    p.add_argument("--n-theta", dest="n_theta", type=int, default=101)
    p.add_argument("--n-q", dest="n_q", type=int, default=51)
    p.add_argument("--n", type=int, default=20001)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidInput) as exc:
        print(f"diamond-bounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"diamond-bounds: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
