# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""Data models for qwalk-si.

Array-valued models are frozen dataclasses with ``eq=False``: their arrays are
copied on construction and marked read-only, so instances can be shared
freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
import logging
from pathlib import Path
from typing import Any

import networkx as nx
import numpy as np
from numpy.typing import NDArray

from .exceptions import (
    ConfigurationError,
    GroupAxiomError,
    InvalidGraphError,
)

ComplexArray = NDArray[np.complex128]
FloatArray = NDArray[np.float64]
IntArray = NDArray[np.int64]

UNITARY_TOL = 1e-12
ASSOCIATIVITY_CHECK_MAX_ORDER = 64

logger = logging.getLogger(__name__)


def _frozen(array: Any, dtype: Any) -> Any:
    """Return a read-only copy of ``array`` with the given dtype."""
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


class OutputFormat(str, Enum):
    """Output format options."""

    TEXT = "text"
    JSON = "json"


# --------------------------------------------------------------------------
# Walk engine
# --------------------------------------------------------------------------


class WalkKind(str, Enum):
    """Walk families."""

    STANDARD = "standard"
    SPLIT_STEP = "split_step"


class ShiftDirection(str, Enum):
    """Direction of a conditional shift; BACKWARD is the inverse operator."""

    FORWARD = "+"
    BACKWARD = "-"


class ShiftKind(str, Enum):
    """Which coin components are translated."""

    FULL = "full"  # S = P0 (x) L+ + P1 (x) L-
    HALF_UP = "half_up"  # S+ = P0 (x) L+ + P1 (x) I
    HALF_DOWN = "half_down"  # S- = P0 (x) I + P1 (x) L-


@dataclass(frozen=True, eq=False)
class CoinOperator:
    """A 2x2 unitary coin."""

    entries: ComplexArray

    def __post_init__(self) -> None:
        entries = _frozen(self.entries, np.complex128)
        if entries.shape != (2, 2):
            msg = f"Coin must be 2x2, got shape {entries.shape}"
            raise ConfigurationError(msg)
        deviation = np.max(np.abs(entries.conj().T @ entries - np.eye(2)))
        if deviation > UNITARY_TOL:
            msg = f"Coin is not unitary (max deviation {deviation:.3e})"
            raise ConfigurationError(msg)
        object.__setattr__(self, "entries", entries)


@dataclass(frozen=True, eq=False)
class SpinorField:
    """Walker (x) coin amplitudes on a ring, one complex 2-vector per site."""

    amplitudes: ComplexArray

    def __post_init__(self) -> None:
        amplitudes = _frozen(self.amplitudes, np.complex128)
        if amplitudes.ndim != 2 or amplitudes.shape[1] != 2:
            msg = f"Amplitudes must have shape (N, 2), got {amplitudes.shape}"
            raise ConfigurationError(msg)
        if not np.all(np.isfinite(amplitudes)):
            raise ConfigurationError("Amplitudes must be finite")
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def lattice_size(self) -> int:
        """Number of lattice sites N."""
        return int(self.amplitudes.shape[0])

    def norm_squared(self) -> float:
        """Total probability."""
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def as_vector(self) -> ComplexArray:
        """Flatten to C^{2N} in site-blocked layout (index 2x + c)."""
        vector: ComplexArray = self.amplitudes.reshape(-1)
        return vector

    @classmethod
    def from_vector(cls, vector: ComplexArray) -> SpinorField:
        """Build from a site-blocked C^{2N} vector."""
        return cls(np.asarray(vector).reshape(-1, 2))

    @classmethod
    def localized(
        cls, lattice_size: int, site: int = 0, coin: int = 0
    ) -> SpinorField:
        """Return delta_site (x) |coin>."""
        amplitudes = np.zeros((lattice_size, 2), dtype=np.complex128)
        amplitudes[site % lattice_size, coin] = 1.0
        return cls(amplitudes)


@dataclass(frozen=True, eq=False)
class WalkSpec:
    """Walk family, coin angles and lattice size."""

    kind: WalkKind
    lattice_size: int
    theta1: float = 0.0
    theta2: float = 0.0
    coin_override: CoinOperator | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", WalkKind(self.kind))
        if self.lattice_size < 2:
            msg = f"Lattice size must be >= 2, got {self.lattice_size}"
            raise ConfigurationError(msg)
        if not (np.isfinite(self.theta1) and np.isfinite(self.theta2)):
            raise ConfigurationError("Coin angles must be finite")
        if (
            self.kind == WalkKind.SPLIT_STEP
            and self.coin_override is not None
        ):
            msg = "coin_override applies to the standard walk only"
            raise ConfigurationError(msg)

    def with_lattice_size(self, lattice_size: int) -> WalkSpec:
        """Return the same walk on a ring of a different size."""
        return WalkSpec(
            kind=self.kind,
            lattice_size=lattice_size,
            theta1=self.theta1,
            theta2=self.theta2,
            coin_override=self.coin_override,
        )

    def to_dict(self) -> dict[str, Any]:
        """Convert to a JSON-compatible dictionary."""
        coin = None
        if self.coin_override is not None:
            coin = [
                [[float(z.real), float(z.imag)] for z in row]
                for row in self.coin_override.entries
            ]
        return {
            "kind": self.kind.value,
            "theta1": self.theta1,
            "theta2": self.theta2,
            "lattice_size": self.lattice_size,
            "coin": coin,
        }


# --------------------------------------------------------------------------
# Momentum space
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MomentumGrid:
    """Uniform grid k_j = 2 pi j / N - pi, j = 0..N-1."""

    size: int

    def __post_init__(self) -> None:
        if self.size < 2 or self.size % 2:
            msg = f"Momentum grid size must be even and >= 2, got {self.size}"
            raise ConfigurationError(msg)

    @property
    def points(self) -> FloatArray:
        """Grid momenta in [-pi, pi)."""
        j = np.arange(self.size)
        points: FloatArray = 2.0 * np.pi * j / self.size - np.pi
        return points

    def mirror_indices(self) -> IntArray:
        """Index of -k_j for each j; the k = -pi point maps to itself."""
        j = np.arange(self.size, dtype=np.int64)
        mirror: IntArray = (self.size - j) % self.size
        return mirror


@dataclass(frozen=True, eq=False)
class BlochFamily:
    """2x2 Bloch unitaries W(k_j) over a momentum grid."""

    grid: MomentumGrid
    blocks: ComplexArray

    def __post_init__(self) -> None:
        blocks = _frozen(self.blocks, np.complex128)
        if blocks.shape != (self.grid.size, 2, 2):
            msg = (
                f"Bloch blocks must have shape ({self.grid.size}, 2, 2), "
                f"got {blocks.shape}"
            )
            raise ConfigurationError(msg)
        object.__setattr__(self, "blocks", blocks)


@dataclass(frozen=True, eq=False)
class EffectiveHamiltonian:
    """H(k) = offset(k) I + energy(k) axis(k).sigma with exp(-iH) = W."""

    grid: MomentumGrid
    hamiltonians: ComplexArray
    offsets: FloatArray
    energies: FloatArray
    axes: FloatArray
    branch_flags: NDArray[np.bool_]

    def __post_init__(self) -> None:
        for name, dtype in (
            ("hamiltonians", np.complex128),
            ("offsets", np.float64),
            ("energies", np.float64),
            ("axes", np.float64),
            ("branch_flags", np.bool_),
        ):
            object.__setattr__(
                self, name, _frozen(getattr(self, name), dtype)
            )

    @property
    def gap(self) -> float:
        """min_k |E(k)|."""
        return float(np.min(np.abs(self.energies)))

    @property
    def flagged_momenta(self) -> list[float]:
        """Momenta where W(k) has an eigenvalue at -1."""
        return [float(k) for k in self.grid.points[self.branch_flags]]


@dataclass(frozen=True)
class ChiralAxis:
    """Result of the chiral axis search."""

    axis: tuple[float, float, float]
    residual: float
    singular_value: float
    degenerate: bool = False


@dataclass(frozen=True, eq=False)
class Dispersion:
    """Two quasi-energy bands connected by eigenvector continuity."""

    momenta: FloatArray
    e_plus: FloatArray
    e_minus: FloatArray
    branch_flags: NDArray[np.bool_]


@dataclass
class SymmetryReport:
    """Chiral, particle-hole and time-reversal residuals of a walk."""

    chiral_axis: tuple[float, float, float] | None
    residual_chiral: float | None
    residual_ph: float
    residual_tr: float | None
    gap: float
    singular_value: float | None = None
    diagnostics: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        """Convert report to dictionary."""
        return {
            "chiral_axis": list(self.chiral_axis)
            if self.chiral_axis is not None
            else None,
            "residual_chiral": self.residual_chiral,
            "residual_ph": self.residual_ph,
            "residual_tr": self.residual_tr,
            "gap": self.gap,
            "singular_value": self.singular_value,
            "diagnostics": list(self.diagnostics),
        }


# --------------------------------------------------------------------------
# Graphs
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset[tuple[int, int]]
    name: str = ""

    def __post_init__(self) -> None:
        if self.n < 1:
            msg = f"Graph needs at least one vertex, got {self.n}"
            raise InvalidGraphError(msg)
        normalized: set[tuple[int, int]] = set()
        for u, v in self.edges:
            if u == v:
                msg = f"Self-loop at vertex {u}"
                raise InvalidGraphError(msg)
            if not (0 <= u < self.n and 0 <= v < self.n):
                msg = f"Edge ({u}, {v}) out of range for n={self.n}"
                raise InvalidGraphError(msg)
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(normalized))

    def adjacency_matrix(self) -> IntArray:
        """Symmetric 0/1 adjacency matrix with zero diagonal."""
        matrix = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            matrix[u, v] = 1
            matrix[v, u] = 1
        return matrix

    def neighbors(self, x: int) -> list[int]:
        """Sorted neighbours of x."""
        return sorted(
            v if u == x else u for u, v in self.edges if x in (u, v)
        )

    def degree(self, x: int) -> int:
        """Number of neighbours of x."""
        return sum(1 for edge in self.edges if x in edge)

    def to_networkx(self) -> nx.Graph:
        """Equivalent networkx graph with nodes 0..n-1."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(sorted(self.edges))
        return graph

    @classmethod
    def from_networkx(cls, graph: nx.Graph, name: str = "") -> Graph:
        """Relabel nodes to 0..n-1 in sorted order and copy the edges."""
        try:
            nodes = sorted(graph.nodes())
        except TypeError:
            nodes = sorted(graph.nodes(), key=repr)
        index = {node: i for i, node in enumerate(nodes)}
        edges = frozenset(
            (index[u], index[v]) for u, v in graph.edges() if u != v
        )
        return cls(n=len(nodes), edges=edges, name=name)


@dataclass(frozen=True)
class Stratification:
    """Distance strata V_n of a rooted graph."""

    origin: int
    strata: tuple[tuple[int, ...], ...]
    distances: tuple[int, ...]  # -1 for vertices unreachable from origin

    @property
    def depth(self) -> int:
        """Largest n with V_n non-empty."""
        return len(self.strata) - 1

    @property
    def sizes(self) -> list[int]:
        """|V_n| for n = 0..depth."""
        return [len(stratum) for stratum in self.strata]

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "origin": self.origin,
            "strata": [list(stratum) for stratum in self.strata],
            "sizes": self.sizes,
        }


@dataclass(frozen=True, eq=False)
class QuantumDecomposition:
    """A = A+ + A- + A0 relative to a stratification."""

    a_plus: IntArray
    a_minus: IntArray
    a_zero: IntArray

    def __post_init__(self) -> None:
        for name in ("a_plus", "a_minus", "a_zero"):
            object.__setattr__(
                self, name, _frozen(getattr(self, name), np.int64)
            )

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "a_plus": self.a_plus.tolist(),
            "a_minus": self.a_minus.tolist(),
            "a_zero": self.a_zero.tolist(),
        }


@dataclass(frozen=True)
class DegreeDecomposition:
    """Neighbour counts in the same, next and previous stratum."""

    omega_zero: int
    omega_plus: int
    omega_minus: int

    @property
    def degree(self) -> int:
        """Total degree."""
        return self.omega_zero + self.omega_plus + self.omega_minus


@dataclass(frozen=True, eq=False)
class IntersectionNumbers:
    """Intersection numbers p[k][i][j] of a distance-regular graph."""

    diameter: int
    table: IntArray

    def __post_init__(self) -> None:
        table = _frozen(self.table, np.int64)
        size = self.diameter + 1
        if table.shape != (size, size, size):
            msg = f"Intersection table must be {size}^3, got {table.shape}"
            raise ConfigurationError(msg)
        object.__setattr__(self, "table", table)

    def p(self, k: int, i: int, j: int) -> int:
        """Return p^k_{ij}."""
        return int(self.table[k, i, j])

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {"diameter": self.diameter, "p": self.table.tolist()}


@dataclass(frozen=True)
class DistanceRegularity:
    """Outcome of a distance-regularity test."""

    is_distance_regular: bool
    intersection_numbers: IntersectionNumbers | None = None
    witness: dict[str, int] | None = None

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "distance_regular": self.is_distance_regular,
            "intersection_numbers": self.intersection_numbers.to_dict()
            if self.intersection_numbers is not None
            else None,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class JacobiSequence:
    """Interacting Fock space coefficients of a rooted graph."""

    omegas: tuple[Fraction, ...]  # omega_1..omega_D
    alphas: tuple[Fraction, ...]  # alpha_1..alpha_{D+1}

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary; integral values are emitted as ints."""

        def _num(value: Fraction) -> int | float:
            if value.denominator == 1:
                return int(value.numerator)
            return float(value)

        return {
            "omega": [_num(w) for w in self.omegas],
            "alpha": [_num(a) for a in self.alphas],
        }


# --------------------------------------------------------------------------
# Finite groups and systems of imprimitivity
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Finite group given by its Cayley table on element indices."""

    mult: IntArray
    labels: tuple[str, ...] = ()
    parent_elements: tuple[int, ...] = ()
    identity: int = field(init=False)
    inverse: IntArray = field(init=False)

    def __post_init__(self) -> None:
        mult = _frozen(self.mult, np.int64)
        if mult.ndim != 2 or mult.shape[0] != mult.shape[1] or not mult.size:
            msg = f"Cayley table must be square and non-empty, got {mult.shape}"
            raise GroupAxiomError(msg)
        order = mult.shape[0]
        if mult.min() < 0 or mult.max() >= order:
            raise GroupAxiomError("Cayley table entries out of range")
        expected = np.arange(order)
        if not (
            np.all(np.sort(mult, axis=1) == expected)
            and np.all(np.sort(mult, axis=0) == expected[:, None])
        ):
            raise GroupAxiomError("Cayley table is not a Latin square")
        identities = [
            e
            for e in range(order)
            if np.array_equal(mult[e], expected)
            and np.array_equal(mult[:, e], expected)
        ]
        if not identities:
            raise GroupAxiomError("Cayley table has no identity element")
        identity = identities[0]
        inverse = np.argmax(mult == identity, axis=1).astype(np.int64)
        if not np.all(mult[inverse, expected] == identity):
            raise GroupAxiomError("Left and right inverses differ")
        if order <= ASSOCIATIVITY_CHECK_MAX_ORDER:
            left = mult[mult[:, :, None], expected[None, None, :]]
            right = mult[expected[:, None, None], mult[None, :, :]]
            if not np.array_equal(left, right):
                raise GroupAxiomError("Cayley table is not associative")
        else:
            logger.debug(f"Associativity not re-checked for order {order}")
        if self.labels and len(self.labels) != order:
            msg = f"Expected {order} labels, got {len(self.labels)}"
            raise GroupAxiomError(msg)
        inverse.setflags(write=False)
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "identity", identity)
        object.__setattr__(self, "inverse", inverse)

    @property
    def order(self) -> int:
        """Number of elements."""
        return int(self.mult.shape[0])

    def label(self, g: int) -> str:
        """Human-readable name of element g."""
        return self.labels[g] if self.labels else str(g)


@dataclass(frozen=True, eq=False)
class GroupAction:
    """Left action g.x given as a |G| x |X| table."""

    group: FiniteGroup
    table: IntArray

    def __post_init__(self) -> None:
        table = _frozen(self.table, np.int64)
        if table.ndim != 2 or table.shape[0] != self.group.order:
            msg = (
                f"Action table must have {self.group.order} rows, "
                f"got shape {table.shape}"
            )
            raise GroupAxiomError(msg)
        points = np.arange(table.shape[1])
        if table.min() < 0 or table.max() >= table.shape[1]:
            raise GroupAxiomError("Action table entries out of range")
        if not np.array_equal(table[self.group.identity], points):
            raise GroupAxiomError("Identity does not act trivially")
        # (g1 g2).x == g1.(g2.x) for every pair
        composed = table[self.group.mult]  # [g1, g2, x] -> (g1 g2).x
        iterated = table[
            np.arange(table.shape[0])[:, None, None], table[None, :, :]
        ]
        if not np.array_equal(composed, iterated):
            raise GroupAxiomError("Action is not compatible with the product")
        object.__setattr__(self, "table", table)

    @property
    def set_size(self) -> int:
        """|X|."""
        return int(self.table.shape[1])


@dataclass(frozen=True, eq=False)
class UnitaryRep:
    """Matrix representation g -> U_g."""

    group: FiniteGroup
    matrices: NDArray[Any]

    def __post_init__(self) -> None:
        matrices = np.array(self.matrices, copy=True)
        if (
            matrices.ndim != 3
            or matrices.shape[0] != self.group.order
            or matrices.shape[1] != matrices.shape[2]
        ):
            msg = f"Representation matrices have bad shape {matrices.shape}"
            raise ConfigurationError(msg)
        matrices.setflags(write=False)
        object.__setattr__(self, "matrices", matrices)

    @property
    def dim(self) -> int:
        """Representation dimension."""
        return int(self.matrices.shape[1])


class PVMKind(str, Enum):
    """How the projections of a PVM were built."""

    SET = "set"  # diagonal indicator of a subset of points
    RANK_ONE = "rank_one"  # |Phi><Phi| / <Phi, Phi>


@dataclass(frozen=True, eq=False)
class PVM:
    """Finite projection valued measure indexed by base sets."""

    base: tuple[frozenset[int], ...]
    projections: FloatArray
    kind: PVMKind = PVMKind.SET

    def __post_init__(self) -> None:
        projections = _frozen(self.projections, np.float64)
        if projections.ndim != 3 or projections.shape[0] != len(self.base):
            msg = (
                f"Need one projection per base set, got {projections.shape}"
            )
            raise ConfigurationError(msg)
        object.__setattr__(self, "projections", projections)

    @property
    def dim(self) -> int:
        """Hilbert space dimension."""
        return int(self.projections.shape[1])


@dataclass
class SIReport:
    """Summary of a system-of-imprimitivity check."""

    residual: float
    transitive: bool
    orbit_sizes: list[int]
    stabilizer_orders: list[int]
    group_order: int
    rank_one_residual: float | None = None

    def to_dict(self) -> dict[str, Any]:
        """Convert report to dictionary."""
        return {
            "residual": self.residual,
            "rank_one_residual": self.rank_one_residual,
            "transitive": self.transitive,
            "orbit_sizes": list(self.orbit_sizes),
            "stabilizer_orders": list(self.stabilizer_orders),
            "group_order": self.group_order,
        }


# --------------------------------------------------------------------------
# Relativistic layer
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MomentumPoint:
    """Two-momentum (p0, p1), natural units."""

    p0: float
    p1: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.p0) and np.isfinite(self.p1)):
            raise ConfigurationError("Momentum components must be finite")

    @property
    def invariant(self) -> float:
        """p0^2 - p1^2."""
        return self.p0 * self.p0 - self.p1 * self.p1

    def as_array(self) -> FloatArray:
        """Return (p0, p1) as an array."""
        return np.array([self.p0, self.p1], dtype=np.float64)


class OrbitKind(str, Enum):
    """Lorentz orbits of the 1+1 momentum plane."""

    FORWARD_MASS = "forward_mass"
    BACKWARD_MASS = "backward_mass"
    ORIGIN = "origin"
    SPACELIKE = "spacelike"
    OFF_SHELL = "off_shell"


@dataclass(frozen=True)
class OrbitLabel:
    """Orbit of a momentum point; parameter is m (mass shells) or q (spacelike)."""

    kind: OrbitKind
    parameter: float | None = None

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {"orbit": self.kind.value, "parameter": self.parameter}


@dataclass(frozen=True)
class Boost:
    """Lorentz boost of rapidity phi."""

    rapidity: float

    @property
    def matrix(self) -> FloatArray:
        """[[cosh phi, sinh phi], [sinh phi, cosh phi]]."""
        c, s = np.cosh(self.rapidity), np.sinh(self.rapidity)
        return np.array([[c, s], [s, c]], dtype=np.float64)


@dataclass(frozen=True, eq=False)
class SpinorSolution:
    """Unit kernel vector of the trivializing operator at a shell point."""

    point: MomentumPoint
    mass: float
    spinor: ComplexArray
    residual: float

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "p": [self.point.p0, self.point.p1],
            "m": self.mass,
            "v": [[float(z.real), float(z.imag)] for z in self.spinor],
            "residual": self.residual,
        }


@dataclass(frozen=True, eq=False)
class SpinorRepresentation:
    """Fitted 2x2 boost action on trivialized spinors."""

    rapidity: float
    matrix: ComplexArray
    residual: float

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "phi": self.rapidity,
            "S": [
                [[float(z.real), float(z.imag)] for z in row]
                for row in self.matrix
            ],
            "residual": self.residual,
        }


@dataclass(frozen=True)
class MeasureCheck:
    """Shell integral of a test function before and after a boost."""

    integral: float
    boosted_integral: float
    residual: float
    error_bound: float

    @property
    def within_bound(self) -> bool:
        """Residual does not exceed the reported quadrature bound."""
        return self.residual <= self.error_bound

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "integral": self.integral,
            "boosted_integral": self.boosted_integral,
            "residual": self.residual,
            "error_bound": self.error_bound,
            "within_bound": self.within_bound,
        }


@dataclass(frozen=True, eq=False)
class ShellSection:
    """Spinor-valued samples of a section over the forward shell."""

    rapidities: FloatArray
    spinors: ComplexArray

    def __post_init__(self) -> None:
        rapidities = _frozen(self.rapidities, np.float64)
        spinors = _frozen(self.spinors, np.complex128)
        if spinors.shape != (rapidities.shape[0], 2):
            msg = f"Need one 2-spinor per sample, got {spinors.shape}"
            raise ConfigurationError(msg)
        object.__setattr__(self, "rapidities", rapidities)
        object.__setattr__(self, "spinors", spinors)


@dataclass(frozen=True, eq=False)
class DeSitterKernel:
    """First-order operator p2 + sigma_y p1 - m sigma_y sigma_z and its kernel."""

    operator: ComplexArray
    determinant: complex
    kernel_exists: bool
    kernel_vector: ComplexArray | None = None

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        vector = None
        if self.kernel_vector is not None:
            vector = [
                [float(z.real), float(z.imag)] for z in self.kernel_vector
            ]
        return {
            "determinant": float(self.determinant.real),
            "kernel_exists": self.kernel_exists,
            "kernel_vector": vector,
        }


@dataclass(frozen=True)
class Refinement:
    """One level of the continuum refinement study."""

    spacing: float
    theta: float
    lattice_size: int
    max_dev: float
    fitted_m: float

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "a": self.spacing,
            "theta": self.theta,
            "lattice_size": self.lattice_size,
            "max_dev": self.max_dev,
            "fitted_m": self.fitted_m,
        }


@dataclass
class ContinuumReport:
    """Convergence of walk dispersion to the Dirac dispersion."""

    mass: float
    refinements: list[Refinement]
    order_estimate: float | None
    monotone: bool

    def to_dict(self) -> dict[str, Any]:
        """Convert report to dictionary."""
        return {
            "m": self.mass,
            "refinements": [r.to_dict() for r in self.refinements],
            "order_estimate": self.order_estimate,
            "monotone": self.monotone,
        }


# --------------------------------------------------------------------------
# Command line
# --------------------------------------------------------------------------


@dataclass
class RunConfig:
    """Resolved options of one CLI invocation.

    ``tolerance`` is the residual threshold given by ``--tol``; None means
    residuals are reported without a verdict.
    """

    subcommand: str
    input_paths: list[Path] = field(default_factory=list)
    output_path: Path | None = None
    tolerance: float | None = None
    seed: int = 0

    def to_dict(self) -> dict[str, Any]:
        """Convert options to dictionary."""
        return {
            "subcommand": self.subcommand,
            "input_paths": [str(p) for p in self.input_paths],
            "output_path": str(self.output_path)
            if self.output_path
            else None,
            "tolerance": self.tolerance,
            "seed": self.seed,
        }


@dataclass
class CheckResult:
    """Outcome of one acceptance check.

    ``elapsed`` is wall-clock time and stays out of ``to_dict`` so that JSON
    output depends on the seed only.
    """

    name: str
    passed: bool
    detail: str
    budget: float
    elapsed: float = 0.0
    metrics: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        """Convert result to dictionary."""
        return {
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "budget_seconds": self.budget,
            "metrics": dict(self.metrics),
        }


@dataclass
class AcceptanceReport:
    """All acceptance checks of one ``verify-all`` run."""

    seed: int
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """True when every check passed."""
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict[str, Any]:
        """Convert report to dictionary."""
        return {
            "seed": self.seed,
            "passed": self.passed,
            "checks": [r.to_dict() for r in self.results],
        }
