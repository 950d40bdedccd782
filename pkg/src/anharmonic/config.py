"""Run configuration and its flat ``key = value`` file format."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path

from . import optimize
from .published import LAMBDA_GRID


class ConfigError(ValueError):
    pass


def parse_lambda(text: str | float | int | Fraction) -> Fraction:
    """Exact parse of ``"3/10"``, ``"0.25"``, ``"1000"``."""
    try:
        value = Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse lambda value {text!r}") from exc
    if value < 0:
        raise ConfigError(f"lambda must be >= 0, got {text!r}")
    return value


def format_lambda(lam: Fraction) -> str:
    return str(lam)


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


@dataclass
class RunConfig:
    lambda_grid: tuple[Fraction, ...] = LAMBDA_GRID
    g_squared: float = 1.0
    levels: int = 6
    oracle_tol: float = 1e-6
    restarts: int = optimize.RESTARTS
    rng_seed: int = optimize.DEFAULT_RNG_SEED
    even_odd_only: bool = False
    output_dir: str = "results"
    format: str = "csv"
    jobs: int = 1
    seeds: tuple[tuple[float, ...], ...] = field(default=())

    def __post_init__(self):
        self.lambda_grid = tuple(parse_lambda(x) for x in self.lambda_grid)
        if self.levels < 1:
            raise ConfigError(f"levels must be >= 1, got {self.levels}")
        if self.g_squared < 0:
            raise ConfigError(f"g_squared must be >= 0, got {self.g_squared}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["lambda_grid"] = [format_lambda(x) for x in self.lambda_grid]
        d["seeds"] = [list(s) for s in self.seeds]
        return d


def _parse_seeds(text: str) -> tuple[tuple[float, ...], ...]:
    # "0.96 0 0.4 0 0.06; 1.2 0 0.6 0 0.17"
    out = []
    for chunk in text.split(";"):
        if chunk.strip():
            vals = tuple(float(v) for v in chunk.replace(",", " ").split())
            if len(vals) != 5:
                raise ConfigError(f"a seed needs 5 numbers (alpha_prime a b c d), got {chunk!r}")
            out.append(vals)
    return tuple(out)


_PARSERS = {
    "lambda_grid": lambda s: tuple(parse_lambda(x) for x in s.replace(",", " ").split()),
    "g_squared": float,
    "levels": int,
    "oracle_tol": float,
    "restarts": int,
    "rng_seed": int,
    "even_odd_only": _parse_bool,
    "output_dir": str,
    "format": str,
    "jobs": int,
    "seeds": _parse_seeds,
}


def parse_value(key: str, text: str):
    if key not in _PARSERS:
        raise ConfigError(f"unknown config key {key!r}")
    try:
        return _PARSERS[key](text.strip())
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {text!r}") from exc


def read_config_file(path: str | Path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment. Unknown keys are errors."""
    values = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        try:
            values[key] = parse_value(key, value)
        except ConfigError as exc:
            raise ConfigError(f"{path}:{lineno}: {exc}") from None
    return values


def make_config(file_values: dict | None = None, overrides: dict | None = None) -> RunConfig:
    known = {f.name for f in fields(RunConfig)}
    merged = {}
    for source in (file_values or {}, overrides or {}):
        for k, v in source.items():
            if k not in known:
                raise ConfigError(f"unknown config key {k!r}")
            if v is not None:
                merged[k] = v
    return RunConfig(**merged)
