"""Command-line driver: signal generation, WDOL fields and verification batteries.

Exit codes: 0 success, 1 a check failed, 2 usage or parse error,
3 singular parameters (``b = 0``), 4 grid mismatch between inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .batteries import BATTERIES, BatteryConfig, run_battery
from .errors import GridMismatchError, SignalFormatError, SingularParameterError
from .signal import (
    SIGNAL_FAMILIES,
    Grid1D,
    Grid3D,
    SampledSignal1D,
    SampledSignal3D,
    SignalSpec,
    make_signal_1d,
    make_signal_3d,
    read_signal,
    signal_to_csv,
)
from .transforms import UnimodularParams
from .wigner import field_to_csv, wdol_1d, wdol_3d

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_SINGULAR, EXIT_GRID = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def parse_lambda(text: str) -> UnimodularParams:
    """``a,b,d`` (``c`` derived from unit determinant) or ``a,b,c,d`` (validated)."""
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad parameter list {text!r}: {exc}") from exc
    if len(vals) == 3:
        return UnimodularParams.from_abd(*vals)
    if len(vals) == 4:
        if vals[1] == 0:
            raise SingularParameterError("singular parameter b=0 unsupported")
        try:
            return UnimodularParams(*vals)
        except SingularParameterError:
            raise
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    raise UsageError(f"expected a,b,d or a,b,c,d, got {text!r}")


def _amplitude(text: str) -> tuple[float, ...]:
    vals = [float(v) for v in text.split(",")]
    if len(vals) > 8:
        raise argparse.ArgumentTypeError("at most eight amplitude coefficients")
    return tuple(vals + [0.0] * (8 - len(vals)))


def _wgrid_1d(args) -> Grid1D | None:
    if args.wn is None and args.wstep is None:
        return None
    if args.wn is None or args.wstep is None:
        raise UsageError("--wn and --wstep go together")
    return Grid1D(args.wn, args.wstep)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    spec = SignalSpec(args.family, args.width, args.alpha, args.beta, args.amplitude, args.seed)
    if args.dim == 1:
        sig = make_signal_1d(spec, Grid1D(args.n, args.step))
    else:
        sig = make_signal_3d(spec, Grid3D.cube(args.n, args.step))
    _emit(signal_to_csv(sig), args.out)
    return EXIT_OK


def _read_pair(args, kind):
    f, g = read_signal(args.f), read_signal(args.g)
    if not isinstance(f, kind) or not isinstance(g, kind):
        raise UsageError(f"both inputs must be {'1-D' if kind is SampledSignal1D else '3-D'} signals")
    if f.grid != g.grid:
        raise GridMismatchError("f and g are sampled on different grids")
    return f, g


def cmd_wd1d(args) -> int:
    params = parse_lambda(args.lambda1)
    wgrid = _wgrid_1d(args)
    f, g = _read_pair(args, SampledSignal1D)
    W = wdol_1d(f, g, params, wgrid)
    _emit(field_to_csv(W, args.magnitude_only), args.out)
    return EXIT_OK


def cmd_wd3d(args) -> int:
    params = tuple(parse_lambda(t) for t in (args.lambda1, args.lambda2, args.lambda3))
    w1 = _wgrid_1d(args)
    f, g = _read_pair(args, SampledSignal3D)
    wgrid = Grid3D((w1, w1, w1)) if w1 else None
    W = wdol_3d(f, g, params, wgrid)
    _emit(field_to_csv(W, args.magnitude_only), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if not args.unit_b and args.log_b is None and args.battery in ("uncertainty", "all"):
        raise UsageError("--log-b is required unless --unit-b is given")
    if args.q is not None and args.p is None:
        raise UsageError("--q needs --p")
    cfg = BatteryConfig(
        seed=args.seed,
        n3=args.n3,
        unit_b=args.unit_b,
        log_b=args.log_b,
        holder_p=args.p,
        holder_q=args.q,
    )
    try:
        reports = run_battery(args.battery, cfg)
    except ValueError as exc:
        if isinstance(exc, (SingularParameterError, GridMismatchError)):
            raise
        raise UsageError(str(exc)) from exc
    payload = json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=2) + "\n"
    _emit(payload, args.out)
    failed = [r.name for r in reports if not r.passed]
    summary = f"{args.battery}: {len(reports) - len(failed)}/{len(reports)} passed"
    if failed:
        summary += "; failed: " + ", ".join(failed)
    print(summary, file=sys.stderr)
    return EXIT_CHECK if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="octowdol", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a sampled test signal as CSV")
    gen.add_argument("--family", choices=SIGNAL_FAMILIES, default="gaussian")
    gen.add_argument("--width", type=float, default=SignalSpec().width)
    gen.add_argument("--alpha", type=float, default=0.0, help="chirp rate")
    gen.add_argument("--beta", type=float, default=0.0, help="center frequency")
    gen.add_argument("--amplitude", type=_amplitude, default=SignalSpec().amplitude, help="comma-separated s0..s7")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--dim", type=int, choices=(1, 3), default=1)
    gen.add_argument("--n", type=int, default=257)
    gen.add_argument("--step", type=float, default=0.05)
    gen.add_argument("--out")
    gen.set_defaults(func=cmd_gen)

    for name, func, dims in (("wd1d", cmd_wd1d, 1), ("wd3d", cmd_wd3d, 3)):
        p = sub.add_parser(name, help=f"{dims}-D WDOL field of two signal files")
        p.add_argument("f")
        p.add_argument("g")
        for k in range(1, dims + 1):
            p.add_argument(f"--lambda{k}", default="0,1,0", help="a,b,d or a,b,c,d")
        p.add_argument("--wn", type=int)
        p.add_argument("--wstep", type=float)
        p.add_argument("--magnitude-only", action="store_true")
        p.add_argument("--out")
        p.set_defaults(func=func)

    ver = sub.add_parser("verify", help="run a verification battery, JSON report")
    ver.add_argument("battery", choices=BATTERIES)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--n3", type=int, default=5, help="points per axis for 3-D identity checks")
    ver.add_argument("--unit-b", action="store_true", help="use |b_k| = 1 parameters (log_b = 0)")
    ver.add_argument("--log-b", type=float, help="value standing in for ln|b| in the logarithmic bound")
    ver.add_argument("--p", type=float, help="Hölder exponent for the transform bound")
    ver.add_argument("--q", type=float, help="conjugate exponent (checked against --p)")
    ver.add_argument("--out")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SingularParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except GridMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GRID
    except (UsageError, SignalFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
