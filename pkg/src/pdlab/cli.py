"""Command-line interface.

Subcommands
-----------
media list            catalog of built-in media
broadening            broadening ratio for one mode over one or more distances
symbol-rate           three-sigma symbol rate, analytic or numeric
keyrate               BB84 link metrics over distance
qubit                 time-bin PDF traces before/after propagation
propagate             dump the dispersed complex field of a mode
sweep                 run a JSON sweep config or a bundled figN preset

All values carry their unit in the flag name (ps, km, fs2-per-m, ...); the
conversion to SI happens exactly once, here.  Output is CSV on stdout unless
--out is given.  Exit codes: 0 success, 1 usage error, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

import numpy as np

from .dispersion import (
    FS2_PER_M,
    PS2_PER_KM,
    Medium,
    PropagationSpec,
    media_catalog,
    medium_by_label,
    propagate_spectral,
)
from .errors import AccuracyError, ConfigError, ParameterDomainError, PdlabError, ResolutionError
from .runner import (
    KINDS,
    SweepConfig,
    SweepResult,
    preset_names,
    resolve_config,
    run_sweep,
    write_csv,
)
from .sampling import plan_grid, sample

PS = 1e-12
KM = 1e3


class UsageError(PdlabError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); the spec wants 1
        raise UsageError(f"{self.prog}: {message}")


def _parse_range(text: str, unit: float) -> list[float]:
    """'200' | '0,50,200' | '0:500:200[:log]' -> list of SI values."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise UsageError(f"range must be MIN:MAX:POINTS[:log], got {text!r}")
        lo, hi, points = float(parts[0]), float(parts[1]), int(parts[2])
        if points < 2:
            raise UsageError("range needs at least 2 points")
        if len(parts) == 4 and parts[3] == "log":
            if lo <= 0:
                raise UsageError("log range needs MIN > 0")
            return [float(v) * unit for v in np.geomspace(lo, hi, points)]
        return [float(v) * unit for v in np.linspace(lo, hi, points)]
    return [float(v) * unit for v in text.split(",")]


def _add_mode_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", default="gaussian",
                   choices=["gaussian", "ggd", "sech", "timebin"])
    p.add_argument("--sigma-ps", type=float, default=4.25)
    p.add_argument("--chirp", type=float, default=0.0)
    p.add_argument("--q", type=float, default=2.0, help="shape exponent (ggd)")
    p.add_argument("--sep-ps", type=float, default=5.0, help="time-bin separation")
    p.add_argument("--packet-sigma-ps", type=float, default=0.25)
    p.add_argument("--theta", type=float, default=math.pi / 2)
    p.add_argument("--phi", type=float, default=0.0)


def _add_medium_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--medium", help="catalog medium label")
    p.add_argument("--beta-fs2-per-m", type=float, help="explicit GVD in fs^2/m")
    p.add_argument("--beta-ps2-per-km", type=float, help="explicit GVD in ps^2/km")
    p.add_argument("--atten-db-per-km", type=float, default=0.0,
                   help="attenuation for an explicit-beta medium")


def _medium_from(args) -> Medium:
    given = [x is not None for x in (args.medium, args.beta_fs2_per_m, args.beta_ps2_per_km)]
    if sum(given) != 1:
        raise UsageError("give exactly one of --medium, --beta-fs2-per-m, --beta-ps2-per-km")
    if args.medium is not None:
        return medium_by_label(args.medium)
    if args.beta_fs2_per_m is not None:
        return Medium("custom", args.beta_fs2_per_m * FS2_PER_M, args.atten_db_per_km)
    return Medium("custom", args.beta_ps2_per_km * PS2_PER_KM, args.atten_db_per_km)


def _mode_block(args) -> dict:
    block = {"family": args.mode, "chirp_c": args.chirp}
    if args.mode == "timebin":
        block.update(sep_t_ps=args.sep_ps, packet_sigma_ps=args.packet_sigma_ps,
                     theta_rad=args.theta, phi_rad=args.phi)
    else:
        block["sigma_ps"] = args.sigma_ps
        if args.mode == "ggd":
            block["shape_q"] = args.q
    return block


def _mini_config(args, kind: str, lengths_m: list[float], qkd: Optional[dict] = None,
                 experiment: str = "cli") -> SweepConfig:
    medium = _medium_from(args)
    return SweepConfig(experiment=experiment, kind=kind, mode=_mode_block(args),
                       media=(medium,), lengths_m=tuple(lengths_m), qkd=qkd,
                       trace_points=getattr(args, "trace_points", 1200),
                       max_n=getattr(args, "max_n", None))


def _emit(result: SweepResult, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            write_csv(result, fh)
    else:
        write_csv(result, sys.stdout)


def build_parser() -> _Parser:
    parser = _Parser(prog="pdlab", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_media = sub.add_parser("media", help="media catalog")
    p_media.add_argument("action", choices=["list"])
    p_media.add_argument("--out")

    for name in ("broadening", "symbol-rate"):
        p = sub.add_parser(name)
        _add_mode_flags(p)
        _add_medium_flags(p)
        p.add_argument("--l-km", required=True,
                       help="distance(s): X | X,Y,Z | MIN:MAX:POINTS[:log] (km)")
        p.add_argument("--numeric", action="store_true",
                       help="force the spectral pipeline even for gaussian modes")
        p.add_argument("--max-n", type=int, dest="max_n")
        p.add_argument("--out")

    p_key = sub.add_parser("keyrate")
    p_key.add_argument("--sigma-ps", type=float, default=4.25)
    p_key.add_argument("--chirp", type=float, default=0.0)
    _add_medium_flags(p_key)
    p_key.add_argument("--jitter-ps", type=float, default=5.0)
    p_key.add_argument("--window-ps", default="50",
                       help="detection window(s) in ps: X | X,Y,Z")
    p_key.add_argument("--sep-ps", type=float, default=100.0)
    p_key.add_argument("--attenuation-convention", default="db",
                       choices=["db", "literal"])
    p_key.add_argument("--l-km", required=True)
    p_key.add_argument("--out")

    p_qubit = sub.add_parser("qubit")
    p_qubit.add_argument("--sep-ps", type=float, default=5.0)
    p_qubit.add_argument("--packet-sigma-ps", type=float, default=0.25)
    p_qubit.add_argument("--chirp", type=float, default=0.0)
    p_qubit.add_argument("--theta", type=float, default=math.pi / 2)
    p_qubit.add_argument("--phi", type=float, default=0.0)
    _add_medium_flags(p_qubit)
    p_qubit.add_argument("--l-m", required=True, help="distance(s) in metres")
    p_qubit.add_argument("--trace-points", type=int, default=1200)
    p_qubit.add_argument("--max-n", type=int, dest="max_n")
    p_qubit.add_argument("--out")

    p_prop = sub.add_parser("propagate")
    _add_mode_flags(p_prop)
    _add_medium_flags(p_prop)
    p_prop.add_argument("--l-km", required=True, type=float)
    p_prop.add_argument("--max-points", type=int, default=4096,
                        help="downsample the dumped field to at most this many rows")
    p_prop.add_argument("--max-n", type=int, dest="max_n")
    p_prop.add_argument("--out")

    p_sweep = sub.add_parser("sweep")
    p_sweep.add_argument("--config", required=True,
                         help="JSON config path or bundled preset name (fig1..fig24)")
    p_sweep.add_argument("--points", type=int,
                         help="override the number of sweep distances")
    p_sweep.add_argument("--out")

    p_list = sub.add_parser("presets", help="list bundled sweep presets")
    p_list.add_argument("--out")
    return parser


def _cmd_media(args) -> None:
    result = SweepResult(experiment="media", kind="gamma_analytic",
                         columns=["label", "beta_s2_per_m", "atten_db_per_km"])
    for m in media_catalog():
        result.rows.append({"label": m.label, "beta_s2_per_m": m.beta,
                            "atten_db_per_km": m.atten_db_per_km})
    _emit(result, args.out)


def _cmd_broadening(args, kind_analytic: str, kind_numeric: str) -> None:
    lengths = _parse_range(args.l_km, KM)
    numeric = args.numeric or args.mode != "gaussian"
    kind = kind_numeric if numeric else kind_analytic
    cfg = _mini_config(args, kind, lengths)
    _emit(run_sweep(cfg), args.out)


def _cmd_keyrate(args) -> None:
    lengths = _parse_range(args.l_km, KM)
    qkd = {"jitter_ps": args.jitter_ps,
           "window_ps": [float(w) for w in str(args.window_ps).split(",")],
           "separation_ps": args.sep_ps,
           "attenuation_convention": args.attenuation_convention}
    medium = _medium_from(args)
    cfg = SweepConfig(experiment="cli", kind="keyrate",
                      mode={"family": "gaussian", "sigma_ps": args.sigma_ps,
                            "chirp_c": args.chirp},
                      media=(medium,), lengths_m=tuple(lengths), qkd=qkd)
    _emit(run_sweep(cfg), args.out)


def _cmd_qubit(args) -> None:
    lengths = _parse_range(args.l_m, 1.0)
    medium = _medium_from(args)
    cfg = SweepConfig(experiment="cli", kind="qubit_pdf",
                      mode={"family": "timebin", "chirp_c": args.chirp,
                            "sep_t_ps": args.sep_ps,
                            "packet_sigma_ps": args.packet_sigma_ps,
                            "theta_rad": args.theta, "phi_rad": args.phi},
                      media=(medium,), lengths_m=tuple(lengths),
                      trace_points=args.trace_points, max_n=args.max_n)
    _emit(run_sweep(cfg), args.out)


def _cmd_propagate(args) -> None:
    from .runner import build_mode  # shares the family -> mode mapping
    medium = _medium_from(args)
    length = args.l_km * KM
    mode = build_mode(_mode_block(args))
    grid = plan_grid(mode, medium.beta, length,
                     **({} if args.max_n is None else {"max_n": args.max_n}))
    swf = sample(mode, grid)
    if medium.beta != 0.0 and length > 0:
        swf = propagate_spectral(swf, PropagationSpec(medium=medium, length=length))
    t = grid.times()
    stride = max(1, grid.n // args.max_points)
    result = SweepResult(experiment="propagate", kind="gamma_analytic",
                         columns=["t_s", "re_amp", "im_amp"])
    for k in range(0, grid.n, stride):
        result.rows.append({"t_s": float(t[k]), "re_amp": float(swf.amps[k].real),
                            "im_amp": float(swf.amps[k].imag)})
    _emit(result, args.out)


def _cmd_sweep(args) -> None:
    cfg = resolve_config(args.config)
    if args.points and len(set(cfg.lengths_m)) > 1:
        lo, hi = min(cfg.lengths_m), max(cfg.lengths_m)
        axis_log = lo > 0 and len(cfg.lengths_m) > 2 and not math.isclose(
            cfg.lengths_m[1] - cfg.lengths_m[0],
            cfg.lengths_m[-1] - cfg.lengths_m[-2], rel_tol=1e-6)
        pts = (np.geomspace(lo, hi, args.points) if axis_log
               else np.linspace(lo, hi, args.points))
        cfg = SweepConfig(experiment=cfg.experiment, kind=cfg.kind, mode=cfg.mode,
                          media=cfg.media, lengths_m=tuple(float(v) for v in pts),
                          qkd=cfg.qkd, seed=cfg.seed, max_n=cfg.max_n,
                          trace_points=cfg.trace_points, out=cfg.out)
    _emit(run_sweep(cfg), args.out or cfg.out)


def _cmd_presets(args) -> None:
    result = SweepResult(experiment="presets", kind="gamma_analytic", columns=["name"])
    for name in preset_names():
        result.rows.append({"name": name})
    _emit(result, args.out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "media":
            _cmd_media(args)
        elif args.command == "broadening":
            _cmd_broadening(args, "gamma_analytic", "gamma_numeric")
        elif args.command == "symbol-rate":
            _cmd_broadening(args, "symbol_rate_analytic", "symbol_rate_numeric")
        elif args.command == "keyrate":
            _cmd_keyrate(args)
        elif args.command == "qubit":
            _cmd_qubit(args)
        elif args.command == "propagate":
            _cmd_propagate(args)
        elif args.command == "sweep":
            _cmd_sweep(args)
        elif args.command == "presets":
            _cmd_presets(args)
        return 0
    except (UsageError, ConfigError, ParameterDomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ResolutionError, AccuracyError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
