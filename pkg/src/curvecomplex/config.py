"""Experiment configuration: a JSON file, overridden field by field from the command line."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

CHECKS = (
    "distance",
    "project",
    "dz",
    "ball",
    "shell-check",
    "dead-ends",
    "lipschitz",
    "bgi",
    "cobounded",
    "marking-moves",
    "complete-marking",
    "extend",
    "bracelet",
    "slimness",
    "suite",
)

# checks that draw random samples (in sample mode) and therefore need a seed
SAMPLED = frozenset({"lipschitz", "bgi", "slimness", "marking-moves"})


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    check: str
    surface: str = "0,5"
    W: int | None = None
    W_outer: int | None = None
    W_sub: int | None = None
    r: int | None = None
    d: int | None = None
    N: int | None = None
    c: int | None = None
    seed: int | None = None
    trials: int | None = None
    a: str | None = None
    b: str | None = None
    z: str | None = None
    mode: str | None = None
    profile: str = "desk"
    output: str | None = None

    def to_json(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, d: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        extra = sorted(set(d) - known)
        if extra:
            raise ConfigError(f"unknown config keys: {', '.join(extra)}")
        if "check" not in d:
            raise ConfigError("config needs a 'check'")
        return cls(**d)

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentConfig":
        try:
            d = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config {path}: {e}") from e
        return cls.from_json(d)

    def override(self, **flags) -> "ExperimentConfig":
        """Flags that are not None replace the corresponding fields."""
        return replace(self, **{k: v for k, v in flags.items() if v is not None})

    @property
    def sample_mode(self) -> bool:
        if self.check in ("bgi", "marking-moves"):
            return self.a is None
        return self.check in SAMPLED

    def validate(self) -> "ExperimentConfig":
        if self.check not in CHECKS:
            raise ConfigError(f"unknown check {self.check!r}")
        for name in ("W", "W_outer", "W_sub", "trials", "N"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ConfigError(f"{name} must be positive")
        for name in ("r", "d", "c"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ConfigError(f"{name} must be non-negative")
        if self.sample_mode and self.seed is None:
            raise ConfigError(f"{self.check} samples at random and needs --seed")
        return self
