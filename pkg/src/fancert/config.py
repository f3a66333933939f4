"""Run configuration: TOML on disk, a plain dataclass in memory.

Unknown keys are rejected outright; a config that parses is structurally
sound, while semantic constraints that need field data (like the rank bound)
are enforced at the start of the pipeline.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, fields

from .errors import ConfigError

if sys.version_info >= (3, 11):
    import tomllib as _toml
else:
    import tomli as _toml

MODES = ("construction", "ot", "lvmb")


@dataclass
class RunConfig:
    min_poly: list[int]
    units: list[list[int]] = field(default_factory=list)
    basis: list[list] | None = None
    mode: str = "construction"
    b: int = 1
    window: int = 64
    c_window: int = 10
    samples: int = 1000
    seed: int = 42
    tol: float = 1e-9
    subgroups: list[list[list[int]]] | None = None
    sigma_rays: list | None = None
    certificate_out: str = "certificate.json"
    plot_out: str = "domain.svg"


def config_from_dict(data: dict) -> RunConfig:
    known = {f.name for f in fields(RunConfig)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    if "min_poly" not in data:
        raise ConfigError("min_poly is required")

    cfg = RunConfig(**data)

    if not (isinstance(cfg.min_poly, list) and len(cfg.min_poly) >= 3
            and all(isinstance(c, int) for c in cfg.min_poly)):
        raise ConfigError("min_poly must be a list of >= 3 integers "
                          "(constant term first)")
    if cfg.mode not in MODES:
        raise ConfigError(f"mode must be one of {MODES}")
    if not isinstance(cfg.b, int) or cfg.b < 0:
        raise ConfigError("b must be a nonnegative integer")
    if cfg.mode == "construction" and cfg.b < 1:
        raise ConfigError("construction mode needs b >= 1")
    for knob, lo in (("window", 0), ("c_window", 1), ("samples", 1)):
        v = getattr(cfg, knob)
        if not isinstance(v, int) or v < lo:
            raise ConfigError(f"{knob} must be an integer >= {lo}")
    if cfg.window > 512:
        raise ConfigError("window > 512 exceeds the float range of the "
                          "enumeration")
    if not isinstance(cfg.seed, int):
        raise ConfigError("seed must be an integer")
    if not (isinstance(cfg.tol, float) and 0.0 < cfg.tol <= 1e-3):
        raise ConfigError("tol must be a float in (0, 1e-3]")
    for i, u in enumerate(cfg.units):
        if not (isinstance(u, list) and all(isinstance(c, int) for c in u)):
            raise ConfigError(f"units[{i}] must be a list of integers")
    if cfg.subgroups is not None:
        for i, gens in enumerate(cfg.subgroups):
            if not isinstance(gens, list) or not gens:
                raise ConfigError(f"subgroups[{i}] must be a nonempty list "
                                  "of exponent words")
            for wrd in gens:
                if not (isinstance(wrd, list) and len(wrd) == len(cfg.units)
                        and all(isinstance(e, int) for e in wrd)):
                    raise ConfigError(
                        f"subgroups[{i}] words must have one integer exponent "
                        "per unit")
    return cfg


def load_config(path: str) -> RunConfig:
    try:
        with open(path, "rb") as fh:
            data = _toml.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except _toml.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML in {path}: {exc}") from exc
    return config_from_dict(data)
