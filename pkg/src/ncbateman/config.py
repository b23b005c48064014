"""
Flat ``key = value`` run configuration.

Grammar: one assignment per line, ``#`` starts a comment, values are decimal
floats, integers or bare strings.  Lists are comma separated.  Example::

    # P0 parameter set
    gamma = 0.4
    omega = 1
    epsilon = 2
    eta = 3
    theta = 0.05      # or: theta = theta_star
    variant = NC_EFFECTIVE
    t_max = 200
    n_samples = 4001
    initial_state = 1, 0, 0, 0
    theta_grid = 0, 0.25, 0.5
    gamma_range = 0, 2, 11

``<param>_grid`` lists explicit values; ``<param>_range = start, stop, num``
is an inclusive linear grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .params import SystemParams, theta_star, validate

PARAM_KEYS = ("gamma", "omega", "epsilon", "eta", "theta", "hbar")

DEFAULTS = {
    "gamma": 0.0,
    "omega": 1.0,
    "epsilon": 0.0,
    "eta": 0.0,
    "theta": 0.0,
    "hbar": 1.0,
}

SETTING_KEYS = {
    "variant": str,
    "t_max": float,
    "n_samples": int,
    "initial_state": "vector",
    "seed": int,
    "n_random": int,
    "tol": float,
    "deltas": "vector",
    "fault": str,
}

TOLERANCE_PREFIX = "tol_"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    params: SystemParams
    settings: dict = field(default_factory=dict)
    grids: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    seed: int = 0

    def get(self, key, default=None):
        return self.settings.get(key, default)


def _vector(text: str, where: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigError(f"{where}: expected comma-separated numbers, got {text!r}") from exc


def _assignments(text: str, source: str) -> list[tuple[int, str, str]]:
    """Split text into ``(line number, key, raw value)`` triples."""
    out, seen = [], {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, raw = body.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep or not key.isidentifier():
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line.strip()!r}")
        if not raw:
            raise ConfigError(f"{source}:{lineno}: field {key!r} has no value")
        if key in seen:
            raise ConfigError(f"{source}:{lineno}: field {key!r} already set on line {seen[key]}")
        seen[key] = lineno
        out.append((lineno, key, raw))
    return out


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    """Parse config text; errors name the offending line and field."""
    items = _assignments(text, source)
    values = dict(DEFAULTS)
    settings, grids, tols = {}, {}, {}
    resolve_theta_star = False
    for lineno, key, raw in items:
        where = f"{source}:{lineno}: field {key!r}"
        if key in PARAM_KEYS:
            if key == "theta" and raw == "theta_star":
                resolve_theta_star = True
                continue
            try:
                values[key] = float(raw)
            except ValueError as exc:
                raise ConfigError(f"{where}: expected a number, got {raw!r}") from exc
        elif key.endswith("_grid") and key[:-5] in PARAM_KEYS:
            grids[key[:-5]] = _vector(raw, where)
        elif key.endswith("_range") and key[:-6] in PARAM_KEYS:
            lims = _vector(raw, where)
            if len(lims) != 3 or lims[2] < 1 or int(lims[2]) != lims[2]:
                raise ConfigError(f"{where}: expected 'start, stop, num' with integer num >= 1")
            grids[key[:-6]] = [float(x) for x in np.linspace(lims[0], lims[1], int(lims[2]))]
        elif key.startswith(TOLERANCE_PREFIX):
            try:
                tols[key[len(TOLERANCE_PREFIX):]] = float(raw)
            except ValueError as exc:
                raise ConfigError(f"{where}: expected a number, got {raw!r}") from exc
        elif key in SETTING_KEYS:
            kind = SETTING_KEYS[key]
            try:
                if kind == "vector":
                    settings[key] = _vector(raw, where)
                else:
                    settings[key] = kind(raw)
            except ConfigError:
                raise
            except ValueError as exc:
                raise ConfigError(f"{where}: invalid value {raw!r}") from exc
        else:
            raise ConfigError(f"{where}: unknown key")

    if resolve_theta_star:
        ts = theta_star(SystemParams(**values))
        if ts is None:
            raise ConfigError(f"{source}: theta = theta_star requested but gamma^2/4 <= omega^2")
        values["theta"] = ts
    for name, tol in tols.items():
        if not tol > 0:
            raise ConfigError(f"{source}: tolerance tol_{name} must be positive")
    if "tol" in settings and not settings["tol"] > 0:
        raise ConfigError(f"{source}: tol must be positive")
    for name, grid in grids.items():
        if not grid:
            raise ConfigError(f"{source}: grid for {name} is empty")
    params = validate(SystemParams(**values))
    return RunConfig(params, settings, grids, tols, int(settings.get("seed", 0)))


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), source=str(path))
