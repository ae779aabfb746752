"""Run configuration: command-line flags over a key=value file over the
environment (``SFGRAPHS_*``) over defaults."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Mapping

from .errors import CapabilityError, UsageError
from .generators import DEFAULT_MAX_LEVEL, Model
from .problems import Problem

ENV_PREFIX = "SFGRAPHS_"


@dataclass(frozen=True)
class RunConfig:
    model: Model = Model.FRACTAL
    problem: Problem = Problem.MATCHING
    n_lo: int = 1
    n_hi: int = 1
    budget_seconds: float = 600.0
    witness_cap: int = 1000
    oracle_max_vertices: int | None = None  # command-specific default
    max_bits: int = 2**20
    max_level: int = DEFAULT_MAX_LEVEL
    format: str | None = None
    out: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.n_lo < 0 or self.n_hi < self.n_lo:
            raise UsageError(f"bad level range {self.n_lo}..{self.n_hi}")
        if self.n_hi > self.max_level:
            raise CapabilityError(f"level {self.n_hi} exceeds the generator cap {self.max_level}")
        if self.budget_seconds <= 0 or self.witness_cap < 0 or (self.oracle_max_vertices or 1) <= 0:
            raise UsageError("budgets must be positive")
        if self.jobs < 1 or self.max_bits < 1:
            raise UsageError("jobs and max_bits must be at least 1")

    @property
    def levels(self) -> range:
        return range(self.n_lo, self.n_hi + 1)


def parse_range(text: str) -> tuple[int, int]:
    """``"3"``, ``"1..3"``, ``"1-3"`` or ``"1:3"`` (inclusive)."""
    text = str(text).strip()
    for sep in ("..", ":", "-"):
        if sep in text:
            lo, _, hi = text.partition(sep)
            break
    else:
        lo = hi = text
    try:
        return int(lo), int(hi)
    except ValueError:
        raise UsageError(f"bad level range {text!r}") from None


def read_config_file(path: str | Path) -> dict[str, str]:
    out = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc.strerror}") from exc
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        out[_norm(key)] = value.strip()
    return out


def _norm(key: str) -> str:
    return key.strip().lower().replace("-", "_")


def _env_values(environ: Mapping[str, str]) -> dict[str, str]:
    return {_norm(k[len(ENV_PREFIX):]): v for k, v in environ.items() if k.startswith(ENV_PREFIX)}


def resolve(
    flags: Mapping[str, object],
    config_file: str | Path | None = None,
    environ: Mapping[str, str] | None = None,
) -> RunConfig:
    """Merge the layers; ``None`` flag values fall through to the next layer."""
    environ = os.environ if environ is None else environ
    layers = [_env_values(environ)]
    if config_file:
        layers.append(read_config_file(config_file))
    layers.append({_norm(k): v for k, v in flags.items() if v is not None})
    merged: dict[str, object] = {}
    for layer in layers:
        merged.update(_levels(layer))

    kwargs = {}
    for f in fields(RunConfig):
        if f.name not in merged:
            continue
        raw = merged[f.name]
        try:
            kwargs[f.name] = _convert(f.name, raw)
        except ValueError:
            raise UsageError(f"bad value for {f.name}: {raw!r}") from None
    return RunConfig(**kwargs)


def _levels(layer: dict) -> dict:
    # "n" and "n_range" both set the level range; the range wins within a layer
    layer = dict(layer)
    text = layer.pop("n_range", None)
    n = layer.pop("n", None)
    text = text if text is not None else n
    if text is not None:
        layer["n_lo"], layer["n_hi"] = parse_range(text)
    return layer


def _convert(name: str, raw: object):
    if name == "model":
        return Model(str(raw))
    if name == "problem":
        return Problem(str(raw))
    if name in ("n_lo", "n_hi", "witness_cap", "oracle_max_vertices", "max_bits", "max_level", "jobs"):
        return int(raw)
    if name == "budget_seconds":
        return float(raw)
    return None if raw is None else str(raw)
