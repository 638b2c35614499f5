"""Command line front end.

All configuration problems, including argparse-level ones, exit with
status 1; partial results (some track points not found) exit 2.
"""

from __future__ import annotations

import argparse
import math
import sys

from .errors import ConfigError
from .runs import FORMAT_VERSION, RunConfig, run, run_figure


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; config errors are exit 1 here
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def parse_eps_grid(text: str) -> tuple[float, ...]:
    """Grid forms: comma list, quad:N:delta, or neg:kmin:kmax:delta."""
    try:
        if text.startswith("quad:"):
            _, n_s, delta_s = text.split(":")
            n, delta = int(n_s), float(delta_s)
            return tuple(
                math.copysign(k * k * delta, k) for k in range(-n, n + 1) if k != 0
            )
        if text.startswith("neg:"):
            _, kmin_s, kmax_s, delta_s = text.split(":")
            kmin, kmax, delta = int(kmin_s), int(kmax_s), float(delta_s)
            return tuple(-k * delta for k in range(kmin, kmax + 1))
        return tuple(float(tok) for tok in text.split(","))
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"cannot parse eps grid {text!r}: {exc}") from exc


def parse_eps_offsets(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"cannot parse eps offsets {text!r}: {exc}") from exc


def build_parser() -> _Parser:
    parser = _Parser(prog="resonance-lab")
    parser.add_argument("--output", default=".", help="directory for CSV output")
    parser.add_argument(
        "--format-version",
        default=FORMAT_VERSION,
        choices=[FORMAT_VERSION],
        help="CSV format version tag",
    )
    parser.add_argument(
        "--figure", type=int, default=None, help="run a numbered figure preset (1..6)"
    )
    parser.add_argument(
        "--panel", default=None, help="restrict a figure preset to one panel"
    )

    # re-declared on each subcommand (SUPPRESS keeps the global defaults)
    # so `resonance-lab track ... --output dir` works in either position
    common = _Parser(add_help=False)
    common.add_argument("--output", default=argparse.SUPPRESS)
    common.add_argument(
        "--format-version", choices=[FORMAT_VERSION], default=argparse.SUPPRESS
    )
    common.add_argument("--name", default=None)

    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)

    p_track = sub.add_parser(
        "track", parents=[common], help="follow a resonance along a depth family"
    )
    p_track.add_argument("--l", type=int, required=True, help="angular mode")
    p_track.add_argument(
        "--a0sq-from-zero",
        type=int,
        required=True,
        metavar="L0",
        help="base depth a0 = j_{L0,1}/rho (first zero of J_L0)",
    )
    p_track.add_argument("--rho", type=float, default=1.0)
    p_track.add_argument("--eps-grid", required=True)
    p_track.add_argument("--branch", type=int, default=None)

    p_phase = sub.add_parser("phase", parents=[common], help="total scattering phase derivative table")
    p_phase.add_argument("--a0sq-from-zero", type=int, required=True, metavar="L0")
    p_phase.add_argument("--rho", type=float, default=1.0)
    p_phase.add_argument("--eps", required=True, help="offset e or list 0,e,-e")
    p_phase.add_argument("--lambda-min", type=float, default=None)
    p_phase.add_argument("--lambda-max", type=float, required=True)
    p_phase.add_argument("--steps", type=int, required=True)
    p_phase.add_argument("--per-mode", action="store_true")

    p_cls = sub.add_parser("classify", parents=[common], help="zero-energy behaviour per mode")
    p_cls.add_argument("--a", type=float, required=True)
    p_cls.add_argument("--rho", type=float, default=1.0)
    p_cls.add_argument("--lmax", type=int, required=True)

    p_delta = sub.add_parser("delta1d", parents=[common], help="1d delta-well benchmark")
    p_delta.add_argument("--a", type=float, required=True)
    p_delta.add_argument("--k-max", type=int, required=True)
    p_delta.add_argument("--lambda-min", type=float, default=None)
    p_delta.add_argument("--lambda-max", type=float, required=True)
    p_delta.add_argument("--steps", type=int, required=True)

    p_bessel = sub.add_parser("bessel-eval", parents=[common], help="evaluate one cylinder function")
    p_bessel.add_argument("kind", choices=["j", "y", "h1", "h2"])
    p_bessel.add_argument("ell", type=int)
    p_bessel.add_argument("abs_z", type=float)
    p_bessel.add_argument("arg_z", type=float)

    p_lambert = sub.add_parser("lambert-eval", parents=[common], help="evaluate one Lambert W branch")
    p_lambert.add_argument("n", type=int)
    p_lambert.add_argument("re", type=float)
    p_lambert.add_argument("im", type=float)

    return parser


def _config_from(args: argparse.Namespace) -> RunConfig:
    common = dict(
        subcommand=args.subcommand,
        output_dir=args.output,
        format_version=args.format_version,
        output_name=getattr(args, "name", None),
    )
    if args.subcommand == "track":
        return RunConfig(
            **common,
            ell=args.l,
            a0_zero_order=args.a0sq_from_zero,
            rho=args.rho,
            eps_grid=parse_eps_grid(args.eps_grid),
            branch=args.branch,
        )
    if args.subcommand == "phase":
        return RunConfig(
            **common,
            a0_zero_order=args.a0sq_from_zero,
            rho=args.rho,
            eps_offsets=parse_eps_offsets(args.eps),
            lambda_min=args.lambda_min,
            lambda_max=args.lambda_max,
            steps=args.steps,
            per_mode=args.per_mode,
        )
    if args.subcommand == "classify":
        return RunConfig(**common, a=args.a, rho=args.rho, l_max=args.lmax)
    if args.subcommand == "delta1d":
        return RunConfig(
            **common,
            a=args.a,
            k_max=args.k_max,
            lambda_min=args.lambda_min,
            lambda_max=args.lambda_max,
            steps=args.steps,
        )
    if args.subcommand == "bessel-eval":
        return RunConfig(
            **common,
            kind=args.kind,
            order=args.ell,
            abs_z=args.abs_z,
            arg_z=args.arg_z,
        )
    if args.subcommand == "lambert-eval":
        return RunConfig(**common, branch_n=args.n, x_re=args.re, x_im=args.im)
    raise ConfigError("one of the subcommands or --figure is required")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.figure is not None:
            if args.subcommand is not None:
                raise ConfigError("--figure and a subcommand are mutually exclusive")
            result = run_figure(
                args.figure,
                panel=args.panel,
                output_dir=args.output,
                format_version=args.format_version,
            )
        else:
            if args.panel is not None:
                raise ConfigError("--panel only applies to --figure runs")
            result = run(_config_from(args))
    except ConfigError as exc:
        print(f"resonance-lab: error: {exc}", file=sys.stderr)
        return 1
    for path in result.paths:
        print(path)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
