# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""Position-space standard and split-step quantum walks on a periodic lattice.

State layout is site-blocked: index ``2 * x + c`` for site ``x`` and coin
component ``c``. Dense operators are available up to ``DENSE_MAX_SITES``;
``evolve`` always uses the matrix-free path.
"""

from __future__ import annotations

import logging

import numpy as np

from .exceptions import ConfigurationError, DimensionMismatchError
from .models import (
    CoinOperator,
    ComplexArray,
    FloatArray,
    ShiftDirection,
    ShiftKind,
    SpinorField,
    WalkKind,
    WalkSpec,
)

logger = logging.getLogger(__name__)

DENSE_MAX_SITES = 4096

_PROJ0 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=np.complex128)
_PROJ1 = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=np.complex128)


def hadamard() -> CoinOperator:
    """Return the Hadamard coin (1/sqrt 2)[[1, 1], [1, -1]]."""
    return CoinOperator(
        np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128)
        / np.sqrt(2.0)
    )


def coin_rotation(theta: float) -> CoinOperator:
    """Return T(theta) = exp(-i theta sigma_y).

    Args:
        theta: Rotation angle in radians

    Returns:
        [[cos theta, -sin theta], [sin theta, cos theta]]
    """
    if not np.isfinite(theta):
        msg = f"Coin angle must be finite, got {theta}"
        raise ConfigurationError(msg)
    c, s = np.cos(theta), np.sin(theta)
    return CoinOperator(np.array([[c, -s], [s, c]], dtype=np.complex128))


def _translation(lattice_size: int, step: int) -> ComplexArray:
    """N x N permutation matrix sending delta_x to delta_{x+step mod N}."""
    sites = np.arange(lattice_size)
    matrix = np.zeros((lattice_size, lattice_size), dtype=np.complex128)
    matrix[(sites + step) % lattice_size, sites] = 1.0
    return matrix


def _check_lattice_size(lattice_size: int) -> None:
    if lattice_size < 2:
        msg = f"Lattice size must be >= 2, got {lattice_size}"
        raise ConfigurationError(msg)
    if lattice_size > DENSE_MAX_SITES:
        msg = (
            f"Dense operators are limited to {DENSE_MAX_SITES} sites, "
            f"got {lattice_size}; use apply_one_step/evolve instead"
        )
        raise ConfigurationError(msg)


def shift(
    direction: ShiftDirection | str,
    conditional: ShiftKind | str,
    lattice_size: int,
) -> ComplexArray:
    """Build a conditional shift on C^{2N}.

    Args:
        direction: FORWARD for the operator itself, BACKWARD for its inverse
        conditional: FULL (S), HALF_UP (S+) or HALF_DOWN (S-)
        lattice_size: Number of sites N

    Returns:
        2N x 2N permutation matrix
    """
    direction = ShiftDirection(direction)
    conditional = ShiftKind(conditional)
    _check_lattice_size(lattice_size)

    right = _translation(lattice_size, 1)
    left = _translation(lattice_size, -1)
    stay = np.eye(lattice_size, dtype=np.complex128)
    moves = {
        ShiftKind.FULL: (right, left),
        ShiftKind.HALF_UP: (right, stay),
        ShiftKind.HALF_DOWN: (stay, left),
    }[conditional]

    operator = np.kron(moves[0], _PROJ0) + np.kron(moves[1], _PROJ1)
    if direction == ShiftDirection.BACKWARD:
        operator = operator.T.copy()
    return operator


def _coin_layer(coin: CoinOperator, lattice_size: int) -> ComplexArray:
    """Coin acting identically on every site: I_N (x) T in site-blocked layout."""
    layer: ComplexArray = np.kron(
        np.eye(lattice_size, dtype=np.complex128), coin.entries
    )
    return layer


def standard_coin(spec: WalkSpec) -> CoinOperator:
    """Coin of the standard walk: the override if given, else T(theta1)."""
    if spec.coin_override is not None:
        return spec.coin_override
    return coin_rotation(spec.theta1)


def one_step_operator(spec: WalkSpec) -> ComplexArray:
    """Dense one-step evolution operator of a walk.

    standard: S (T (x) I_N); split_step: S- T(theta2) S+ T(theta1).
    """
    n = spec.lattice_size
    _check_lattice_size(n)
    logger.debug(f"Building dense {spec.kind.value} operator, N={n}")

    if spec.kind == WalkKind.STANDARD:
        return shift(ShiftDirection.FORWARD, ShiftKind.FULL, n) @ _coin_layer(
            standard_coin(spec), n
        )

    return (
        shift(ShiftDirection.FORWARD, ShiftKind.HALF_DOWN, n)
        @ _coin_layer(coin_rotation(spec.theta2), n)
        @ shift(ShiftDirection.FORWARD, ShiftKind.HALF_UP, n)
        @ _coin_layer(coin_rotation(spec.theta1), n)
    )


def _apply_coin(
    coin_t: ComplexArray, amplitudes: ComplexArray
) -> ComplexArray:
    result: ComplexArray = amplitudes @ coin_t
    return result


def _apply_shift(kind: ShiftKind, amplitudes: ComplexArray) -> ComplexArray:
    out = amplitudes.copy()
    if kind in (ShiftKind.FULL, ShiftKind.HALF_UP):
        # coin 0: x -> x + 1
        out[1:, 0] = amplitudes[:-1, 0]
        out[0, 0] = amplitudes[-1, 0]
    if kind in (ShiftKind.FULL, ShiftKind.HALF_DOWN):
        # coin 1: x -> x - 1
        out[:-1, 1] = amplitudes[1:, 1]
        out[-1, 1] = amplitudes[0, 1]
    return out


def _step_coins(spec: WalkSpec) -> tuple[ComplexArray, ComplexArray]:
    """Transposed coin matrices of one step, built once per walk.

    The second entry is unused by the standard walk.
    """
    if spec.kind == WalkKind.STANDARD:
        coin_t = standard_coin(spec).entries.T.copy()
        return coin_t, coin_t
    return (
        coin_rotation(spec.theta1).entries.T.copy(),
        coin_rotation(spec.theta2).entries.T.copy(),
    )


def _step(
    kind: WalkKind,
    coins: tuple[ComplexArray, ComplexArray],
    amplitudes: ComplexArray,
) -> ComplexArray:
    if kind == WalkKind.STANDARD:
        return _apply_shift(ShiftKind.FULL, _apply_coin(coins[0], amplitudes))
    psi = _apply_coin(coins[0], amplitudes)
    psi = _apply_shift(ShiftKind.HALF_UP, psi)
    psi = _apply_coin(coins[1], psi)
    return _apply_shift(ShiftKind.HALF_DOWN, psi)


def apply_one_step(spec: WalkSpec, amplitudes: ComplexArray) -> ComplexArray:
    """Matrix-free single step on an (N, 2) amplitude array."""
    return _step(spec.kind, _step_coins(spec), amplitudes)


def evolve(psi0: SpinorField, spec: WalkSpec, steps: int) -> SpinorField:
    """Return U^steps psi0.

    Raises:
        DimensionMismatchError: If the field and the walk disagree on N
        ConfigurationError: If steps is negative
    """
    if psi0.lattice_size != spec.lattice_size:
        msg = (
            f"State has {psi0.lattice_size} sites, walk has "
            f"{spec.lattice_size}"
        )
        raise DimensionMismatchError(msg)
    if steps < 0:
        msg = f"Number of steps must be non-negative, got {steps}"
        raise ConfigurationError(msg)

    amplitudes = np.array(psi0.amplitudes, dtype=np.complex128)
    coins = _step_coins(spec)
    for _ in range(steps):
        amplitudes = _step(spec.kind, coins, amplitudes)
    logger.debug(
        f"Evolved {steps} steps, norm^2 drift "
        f"{abs(np.sum(np.abs(amplitudes) ** 2) - psi0.norm_squared()):.2e}"
    )
    return SpinorField(amplitudes)


def position_distribution(psi: SpinorField) -> FloatArray:
    """p(x) = |psi_0(x)|^2 + |psi_1(x)|^2."""
    distribution: FloatArray = np.sum(np.abs(psi.amplitudes) ** 2, axis=1)
    return distribution


def lattice_coordinates(lattice_size: int) -> list[int]:
    """Signed coordinate of each site index: 0, 1, ..., -2, -1."""
    half = (lattice_size + 1) // 2
    return [i if i < half else i - lattice_size for i in range(lattice_size)]


def translation_operator(lattice_size: int) -> ComplexArray:
    """Cyclic one-site translation R = L+ (x) I_2."""
    _check_lattice_size(lattice_size)
    operator: ComplexArray = np.kron(
        _translation(lattice_size, 1), np.eye(2, dtype=np.complex128)
    )
    return operator


def unitarity_residual(operator: ComplexArray) -> float:
    """max |U^dagger U - I|."""
    identity = np.eye(operator.shape[0])
    return float(np.max(np.abs(operator.conj().T @ operator - identity)))


def translation_residual(spec: WalkSpec) -> float:
    """max |R U R^-1 - U| for the cyclic translation R."""
    operator = one_step_operator(spec)
    translation = translation_operator(spec.lattice_size)
    conjugated = translation @ operator @ translation.T
    return float(np.max(np.abs(conjugated - operator)))
