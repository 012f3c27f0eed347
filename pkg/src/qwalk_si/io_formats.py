# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""CSV and JSON readers and writers.

Output is deterministic: JSON keys are sorted, floats are written with
``repr`` so identical inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from pathlib import Path
from typing import Any

import numpy as np

from .exceptions import ConfigurationError
from .models import Dispersion, FloatArray, SpinorField
from .walk_engine import lattice_coordinates

logger = logging.getLogger(__name__)

STATE_COLUMNS = ("x", "re0", "im0", "re1", "im1")
DISTRIBUTION_COLUMNS = ("x", "p")
DISPERSION_COLUMNS = ("k", "E_plus", "E_minus", "branch_flag")


def _to_builtin(value: Any) -> Any:
    """Recursively convert numpy scalars and arrays to JSON types."""
    if isinstance(value, dict):
        return {str(k): _to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_builtin(v) for v in value]
    if isinstance(value, np.ndarray):
        return _to_builtin(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    return value


def dumps_json(payload: Any) -> str:
    """Serialize deterministically."""
    return json.dumps(_to_builtin(payload), sort_keys=True, indent=2) + "\n"


def _rows_to_csv(header: tuple[str, ...], rows: list[list[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [repr(v) if isinstance(v, float) else v for v in row]
        )
    return buffer.getvalue()


def state_csv(psi: SpinorField) -> str:
    """State as ``x, re0, im0, re1, im1`` rows, one per site."""
    coords = lattice_coordinates(psi.lattice_size)
    rows = [
        [
            coords[i],
            float(a0.real),
            float(a0.imag),
            float(a1.real),
            float(a1.imag),
        ]
        for i, (a0, a1) in enumerate(psi.amplitudes)
    ]
    rows.sort(key=lambda row: row[0])
    return _rows_to_csv(STATE_COLUMNS, rows)


def distribution_csv(distribution: FloatArray) -> str:
    """Position distribution as ``x, p`` rows."""
    coords = lattice_coordinates(len(distribution))
    rows = sorted(
        ([coords[i], float(p)] for i, p in enumerate(distribution)),
        key=lambda row: row[0],
    )
    return _rows_to_csv(DISTRIBUTION_COLUMNS, rows)


def dispersion_csv(bands: Dispersion) -> str:
    """Bands as ``k, E_plus, E_minus, branch_flag`` rows."""
    rows = [
        [float(k), float(ep), float(em), int(flag)]
        for k, ep, em, flag in zip(
            bands.momenta,
            bands.e_plus,
            bands.e_minus,
            bands.branch_flags,
            strict=True,
        )
    ]
    return _rows_to_csv(DISPERSION_COLUMNS, rows)


def read_state_csv(
    path: Path, lattice_size: int | None = None
) -> SpinorField:
    """Read a state written by ``state_csv``.

    Args:
        path: CSV file
        lattice_size: Ring size; defaults to the number of rows

    Raises:
        ConfigurationError: On a missing file, bad header, bad row, or a
            duplicate or out-of-ring site
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        msg = f"Cannot read state file {path}: {e}"
        raise ConfigurationError(msg) from e

    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != STATE_COLUMNS:
        msg = f"State file {path} must start with {','.join(STATE_COLUMNS)}"
        raise ConfigurationError(msg)

    entries: dict[int, tuple[complex, complex]] = {}
    for line_no, row in enumerate(reader, start=2):
        if not row:
            continue
        try:
            x_text, re0, im0, re1, im1 = row
            x = int(x_text)
            amplitude = (
                complex(float(re0), float(im0)),
                complex(float(re1), float(im1)),
            )
        except ValueError as e:
            msg = f"{path}:{line_no}: malformed state row {row}"
            raise ConfigurationError(msg) from e
        if x in entries:
            msg = f"{path}:{line_no}: duplicate site x={x}"
            raise ConfigurationError(msg)
        entries[x] = amplitude

    n = lattice_size if lattice_size is not None else len(entries)
    if n < 2:
        msg = f"State file {path} describes fewer than 2 sites"
        raise ConfigurationError(msg)
    outside = sorted(set(entries) - set(lattice_coordinates(n)))
    if outside:
        lo, hi = -(n // 2), (n - 1) // 2
        msg = (
            f"State file {path} has sites {outside} outside the {n}-site "
            f"ring (x must lie in {lo}..{hi})"
        )
        raise ConfigurationError(msg)
    amplitudes = np.zeros((n, 2), dtype=np.complex128)
    for x, (a0, a1) in entries.items():
        amplitudes[x % n] = (a0, a1)
    logger.debug(f"Read state with {len(entries)} rows on {n} sites")
    return SpinorField(amplitudes)


def write_output(text: str, path: Path | None) -> None:
    """Write ``text`` to ``path``; stdout output is the caller's job."""
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.debug(f"Wrote {len(text)} bytes to {path}")
