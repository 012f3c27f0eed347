# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""Validated input configuration.

Walk specs, shell quadrature settings and group specs are read from JSON or
YAML files. JSON is a subset of YAML, so both go through ``yaml.safe_load``.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Literal

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)
import yaml

from .exceptions import ConfigurationError
from .models import CoinOperator, FloatArray, WalkKind, WalkSpec
from .walk_engine import hadamard

logger = logging.getLogger(__name__)


class WalkSpecConfig(BaseModel):
    """Walk spec as written in a config file."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: WalkKind = WalkKind.SPLIT_STEP
    theta1: float = 0.0
    theta2: float = 0.0
    lattice_size: int = Field(ge=2)
    # None, "hadamard" or a 2x2 matrix of [re, im] pairs
    coin: Literal["hadamard"] | list[list[tuple[float, float]]] | None = (
        None
    )

    @field_validator("theta1", "theta2")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not np.isfinite(value):
            msg = f"angle must be finite, got {value}"
            raise ValueError(msg)
        return value

    @model_validator(mode="after")
    def _coin_shape(self) -> WalkSpecConfig:
        if isinstance(self.coin, list) and (
            len(self.coin) != 2 or any(len(row) != 2 for row in self.coin)
        ):
            raise ValueError("coin matrix must be 2x2")
        if self.coin is not None and self.kind == WalkKind.SPLIT_STEP:
            msg = "coin override applies to the standard walk only"
            raise ValueError(msg)
        return self

    def to_walk_spec(self) -> WalkSpec:
        """Convert to the ``WalkSpec`` value type."""
        override: CoinOperator | None = None
        if self.coin == "hadamard":
            override = hadamard()
        elif isinstance(self.coin, list):
            override = CoinOperator(
                np.array(
                    [[complex(re, im) for re, im in row] for row in self.coin]
                )
            )
        return WalkSpec(
            kind=self.kind,
            lattice_size=self.lattice_size,
            theta1=self.theta1,
            theta2=self.theta2,
            coin_override=override,
        )


class ShellQuadratureConfig(BaseModel):
    """Rapidity quadrature over the forward mass shell."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    m: float = Field(default=1.0, gt=0.0)
    u_min: float = -12.0
    u_max: float = 12.0
    n_points: int = Field(default=10_000, ge=3)

    @model_validator(mode="after")
    def _ordered(self) -> ShellQuadratureConfig:
        if not self.u_min < self.u_max:
            msg = f"u_min ({self.u_min}) must be below u_max ({self.u_max})"
            raise ValueError(msg)
        return self

    @property
    def rapidities(self) -> FloatArray:
        """Uniform rapidity nodes."""
        nodes: FloatArray = np.linspace(
            self.u_min, self.u_max, self.n_points
        )
        return nodes


class CayleyTableConfig(BaseModel):
    """Group given explicitly by its Cayley table."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    order: int = Field(ge=1)
    mult: list[list[int]]
    labels: list[str] | None = None

    @model_validator(mode="after")
    def _square(self) -> CayleyTableConfig:
        if len(self.mult) != self.order or any(
            len(row) != self.order for row in self.mult
        ):
            msg = f"mult must be {self.order}x{self.order}"
            raise ValueError(msg)
        return self


def read_mapping(path: Path) -> dict[str, Any]:
    """Read a JSON or YAML mapping from ``path``.

    Raises:
        ConfigurationError: If the file is missing, unreadable or not a mapping
    """
    if not path.is_file():
        msg = f"Config file not found: {path}"
        raise ConfigurationError(msg)
    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        msg = f"Cannot read config {path}: {e}"
        raise ConfigurationError(msg) from e
    # yaml.safe_load returns None for empty files
    if data is None:
        data = {}
    if not isinstance(data, dict):
        msg = f"Config {path} must contain a mapping"
        raise ConfigurationError(msg)
    logger.debug(f"Loaded config {path}: keys {sorted(data)}")
    return data


def _validate(
    model: type[BaseModel], data: dict[str, Any], source: str
) -> Any:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "<root>"
        msg = f"Invalid {source}: {where}: {first['msg']}"
        raise ConfigurationError(msg) from e


def load_walk_spec(path: Path) -> WalkSpec:
    """Load a walk spec file and convert it to a ``WalkSpec``."""
    config: WalkSpecConfig = _validate(
        WalkSpecConfig, read_mapping(path), f"walk spec {path}"
    )
    return config.to_walk_spec()


def walk_spec_from_dict(data: dict[str, Any]) -> WalkSpec:
    """Validate an in-memory walk spec mapping."""
    config: WalkSpecConfig = _validate(WalkSpecConfig, data, "walk spec")
    return config.to_walk_spec()


def load_shell_quadrature(path: Path | None) -> ShellQuadratureConfig:
    """Load shell quadrature settings; defaults when no file is given."""
    if path is None:
        return ShellQuadratureConfig()
    result: ShellQuadratureConfig = _validate(
        ShellQuadratureConfig, read_mapping(path), f"shell config {path}"
    )
    return result


def load_cayley_table(path: Path) -> CayleyTableConfig:
    """Load an explicit Cayley table."""
    result: CayleyTableConfig = _validate(
        CayleyTableConfig, read_mapping(path), f"group table {path}"
    )
    return result


def shell_quadrature_from_dict(data: dict[str, Any]) -> ShellQuadratureConfig:
    """Validate in-memory shell quadrature settings."""
    result: ShellQuadratureConfig = _validate(
        ShellQuadratureConfig, data, "shell config"
    )
    return result
