# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""Pytest configuration and shared fixtures.

Fixtures provide:

1. Reproducible randomness: a seeded ``numpy.random.Generator`` per test
2. Canonical inputs: small walk specs and named corpus graphs
3. Spec files on disk for CLI tests, written into ``tmp_path``
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from qwalk_si.corpus import corpus_graph
from qwalk_si.models import Graph, WalkKind, WalkSpec
from qwalk_si.walk_engine import hadamard


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so randomized tests are reproducible."""
    return np.random.default_rng(20240607)


@pytest.fixture
def hadamard_spec() -> WalkSpec:
    """Standard walk with the Hadamard coin on a ring of 16 sites."""
    return WalkSpec(
        kind=WalkKind.STANDARD, lattice_size=16, coin_override=hadamard()
    )


@pytest.fixture
def split_spec() -> WalkSpec:
    """Gapped split-step walk on 64 sites."""
    return WalkSpec(
        kind=WalkKind.SPLIT_STEP, lattice_size=64, theta1=0.4, theta2=1.1
    )


@pytest.fixture
def petersen() -> Graph:
    """The Petersen graph."""
    return corpus_graph("petersen")


@pytest.fixture
def cycle6() -> Graph:
    """The 6-cycle."""
    return corpus_graph("c6")


@pytest.fixture
def path3() -> Graph:
    """Path on 3 vertices 0 - 1 - 2."""
    return corpus_graph("p3")


@pytest.fixture
def hadamard_spec_file(tmp_path: Path) -> Path:
    """Walk spec file for the Hadamard walk."""
    path = tmp_path / "hadamard.json"
    path.write_text(
        json.dumps({"kind": "standard", "lattice_size": 16, "coin": "hadamard"})
    )
    return path


@pytest.fixture
def split_spec_file(tmp_path: Path) -> Path:
    """YAML walk spec file for a gapped split-step walk."""
    path = tmp_path / "split.yaml"
    path.write_text(
        "kind: split_step\ntheta1: 0.4\ntheta2: 1.1\nlattice_size: 64\n"
    )
    return path


def pytest_configure(config: pytest.Config) -> None:
    """Register custom pytest markers.

    Markers:
        slow: long-running acceptance checks
        integration: tests that drive the CLI end to end
        unit: fast tests of a single function
    """
    config.addinivalue_line(
        "markers",
        "slow: marks tests as slow (deselect with '-m \"not slow\"')",
    )
    config.addinivalue_line(
        "markers",
        "integration: marks tests as integration tests",
    )
    config.addinivalue_line("markers", "unit: marks tests as unit tests")
