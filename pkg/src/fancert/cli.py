"""Command-line front end.

    fancert verify <config.toml>   run the full pipeline, write a certificate
    fancert plot   <config.toml>   render the s = 2 domain picture as SVG
    fancert salem4 --q1-min A --q1-max B   enumerate quartic Salem polynomials

Exit codes: 0 all mandatory checks passed, 1 check failure, 2 config error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .config import RunConfig, load_config
from .errors import ConfigError, FancertError, UnsupportedDimension
from .salem import enum_salem4


def _atomic_write(path: str, text: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _apply_overrides(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    if getattr(args, "window", None) is not None:
        cfg.window = args.window
    if getattr(args, "samples", None) is not None:
        cfg.samples = args.samples
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    if getattr(args, "tol", None) is not None:
        cfg.tol = args.tol
    return cfg


def _cmd_verify(args: argparse.Namespace) -> int:
    from .pipeline import run_pipeline
    cfg = _apply_overrides(load_config(args.config), args)
    out_path = args.out or cfg.certificate_out
    result = run_pipeline(cfg)
    _atomic_write(out_path, result.certificate.to_json())
    checks = result.certificate.payload.get("checks", {})
    failed = sorted(name for name, c in checks.items()
                    if c.get("mandatory", True) and not c.get("passed"))
    status = "passed" if result.exit_code == 0 else "FAILED"
    print(f"certificate written to {out_path} ({status})")
    for name in failed:
        print(f"  failed check: {name}", file=sys.stderr)
    return result.exit_code


def _cmd_plot(args: argparse.Namespace) -> int:
    from . import pipeline
    from .domain import make_domain_spec
    from .fans import build_fan_s2
    from .plotting import render_domain_svg

    cfg = _apply_overrides(load_config(args.config), args)
    if cfg.mode != "construction":
        raise UnsupportedDimension("plotting needs construction mode")
    reports = {"mode": cfg.mode, "checks": {}, "warnings": []}
    field, table = pipeline._field_stage(cfg, reports)
    if table.s != 2 or cfg.b != 1:
        raise UnsupportedDimension(
            f"plotting supports s = 2, b = 1 only (got s = {table.s}, "
            f"b = {cfg.b})")
    unit_elts = pipeline._unit_stage(cfg, field, table, reports)
    groups, selected = pipeline._subgroup_stage(cfg, field, table, unit_elts,
                                                reports)
    fan = build_fan_s2(groups[selected], table, cfg.window)
    spec = make_domain_spec(fan, cfg.window)
    out_path = args.out or cfg.plot_out
    _atomic_write(out_path, render_domain_svg(fan, spec))
    print(f"plot written to {out_path}")
    return 0


def _cmd_salem4(args: argparse.Namespace) -> int:
    if args.q1_min > args.q1_max:
        raise ConfigError("--q1-min must not exceed --q1-max")
    found = enum_salem4(args.q1_min, args.q1_max)
    for s in found:
        coeffs = ",".join(str(c) for c in s.coeffs)
        print(f"q1={s.q1} q2={s.q2} coeffs={coeffs} root={s.salem_root:.6f}")
    if args.out:
        payload = [{"q1": s.q1, "q2": s.q2, "coeffs": list(s.coeffs),
                    "root": s.salem_root} for s in found]
        _atomic_write(args.out,
                      json.dumps(payload, sort_keys=True, indent=2) + "\n")
    print(f"{len(found)} Salem quartic(s)", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fancert",
        description="certification pipeline for unit actions on fans over "
                    "number fields")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("config", help="path to a TOML run configuration")
        p.add_argument("--window", type=int, default=None)
        p.add_argument("--samples", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--out", default=None)

    pv = sub.add_parser("verify", help="run all checks and emit a certificate")
    common(pv)
    pv.set_defaults(func=_cmd_verify)

    pp = sub.add_parser("plot", help="render the s=2 fan/domain picture")
    common(pp)
    pp.set_defaults(func=_cmd_plot)

    ps = sub.add_parser("salem4", help="enumerate quartic Salem polynomials")
    ps.add_argument("--q1-min", type=int, required=True)
    ps.add_argument("--q1-max", type=int, required=True)
    ps.add_argument("--out", default=None)
    ps.set_defaults(func=_cmd_salem4)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, UnsupportedDimension) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except FancertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
