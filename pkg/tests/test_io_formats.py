# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""Tests for io_formats module."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from qwalk_si.exceptions import ConfigurationError
from qwalk_si.io_formats import (
    dispersion_csv,
    distribution_csv,
    dumps_json,
    read_state_csv,
    state_csv,
    write_output,
)
from qwalk_si.models import Dispersion, SpinorField


class TestJson:
    """Tests for deterministic JSON output."""

    def test_numpy_values_converted(self) -> None:
        """numpy scalars, arrays and complex numbers become JSON types."""
        payload = {
            "b": np.float64(0.5),
            "a": np.arange(3),
            "flag": np.bool_(True),
            "z": complex(1.0, -2.0),
        }
        data = json.loads(dumps_json(payload))
        assert data == {
            "a": [0, 1, 2],
            "b": 0.5,
            "flag": True,
            "z": [1.0, -2.0],
        }

    def test_keys_sorted(self) -> None:
        """Identical payloads serialize identically regardless of order."""
        assert dumps_json({"b": 1, "a": 2}) == dumps_json({"a": 2, "b": 1})
        assert dumps_json({"b": 1, "a": 2}).index('"a"') < dumps_json(
            {"b": 1, "a": 2}
        ).index('"b"')


class TestCsv:
    """Tests for CSV writers and the state reader."""

    def test_distribution_sorted_by_coordinate(self) -> None:
        """Rows run from the most negative coordinate upwards."""
        text = distribution_csv(np.array([0.5, 0.25, 0.0, 0.25]))
        lines = text.splitlines()
        assert lines[0] == "x,p"
        assert [line.split(",")[0] for line in lines[1:]] == [
            "-2",
            "-1",
            "0",
            "1",
        ]
        assert lines[3] == "0,0.5"

    def test_state_round_trip(self, tmp_path: Path) -> None:
        """read_state_csv restores what state_csv wrote."""
        amplitudes = np.array(
            [[0.5, 0.5j], [0.0, -0.5], [0.25j, 0.0], [0.0, 0.1 + 0.2j]]
        )
        psi = SpinorField(amplitudes)
        path = tmp_path / "state.csv"
        path.write_text(state_csv(psi))
        back = read_state_csv(path)
        np.testing.assert_array_equal(back.amplitudes, psi.amplitudes)

    def test_state_embedded_in_larger_ring(self, tmp_path: Path) -> None:
        """Negative coordinates wrap onto the requested ring size."""
        path = tmp_path / "state.csv"
        path.write_text("x,re0,im0,re1,im1\n-1,1.0,0.0,0.0,0.0\n0,0,0,1,0\n")
        psi = read_state_csv(path, lattice_size=8)
        assert psi.lattice_size == 8
        assert psi.amplitudes[7, 0] == 1.0
        assert psi.amplitudes[0, 1] == 1.0

    def test_bad_header(self, tmp_path: Path) -> None:
        """The header must name the five state columns."""
        path = tmp_path / "state.csv"
        path.write_text("x,p\n0,1.0\n")
        with pytest.raises(ConfigurationError, match="must start with"):
            read_state_csv(path)

    def test_malformed_row(self, tmp_path: Path) -> None:
        """Row errors report the file and line."""
        path = tmp_path / "state.csv"
        path.write_text("x,re0,im0,re1,im1\n0,1,0,0\n1,0,0,0,0\n")
        with pytest.raises(ConfigurationError, match=":2:"):
            read_state_csv(path)

    @pytest.mark.parametrize(
        ("rows", "size"),
        [
            ("-1,1,0,0,0\n3,0,0,1,0\n", 4),
            ("2,1,0,0,0\n", 4),
            ("-3,1,0,0,0\n", 4),
            ("0,1,0,0,0\n1,0,0,0,0\n9,0,0,0,0\n", None),
        ],
    )
    def test_site_outside_ring(
        self, tmp_path: Path, rows: str, size: int | None
    ) -> None:
        """Sites outside the signed range are refused, never wrapped."""
        path = tmp_path / "state.csv"
        path.write_text("x,re0,im0,re1,im1\n" + rows)
        with pytest.raises(ConfigurationError, match="outside the"):
            read_state_csv(path, lattice_size=size)

    def test_duplicate_site(self, tmp_path: Path) -> None:
        """Two rows for the same site are refused."""
        path = tmp_path / "state.csv"
        path.write_text("x,re0,im0,re1,im1\n0,1,0,0,0\n0,0,0,1,0\n")
        with pytest.raises(ConfigurationError, match=":3: duplicate site"):
            read_state_csv(path)

    def test_missing_state_file(self, tmp_path: Path) -> None:
        """A missing file is a configuration error."""
        with pytest.raises(ConfigurationError):
            read_state_csv(tmp_path / "absent.csv")

    def test_dispersion_rows(self) -> None:
        """Branch flags are written as 0/1."""
        bands = Dispersion(
            momenta=np.array([-np.pi, 0.0]),
            e_plus=np.array([np.pi, 0.5]),
            e_minus=np.array([-np.pi, -0.5]),
            branch_flags=np.array([True, False]),
        )
        lines = dispersion_csv(bands).splitlines()
        assert lines[0] == "k,E_plus,E_minus,branch_flag"
        assert lines[1].endswith(",1")
        assert lines[2] == "0.0,0.5,-0.5,0"


def test_write_output_creates_parents(tmp_path: Path) -> None:
    """Nested output directories are created."""
    target = tmp_path / "out" / "nested" / "result.json"
    write_output("{}\n", target)
    assert target.read_text() == "{}\n"


def test_write_output_without_path(tmp_path: Path) -> None:
    """No path means nothing is written."""
    write_output("ignored", None)
    assert list(tmp_path.iterdir()) == []
