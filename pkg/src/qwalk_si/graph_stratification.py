# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""Rooted-graph stratification and distance-regular structure.

Everything here is exact integer arithmetic. Distance-based operations
reject disconnected graphs instead of restricting to a component.
"""

from __future__ import annotations

from fractions import Fraction
import logging

import networkx as nx
import numpy as np

from .exceptions import (
    ConfigurationError,
    DisconnectedGraphError,
    InvalidGraphError,
    NotDistanceRegularError,
)
from .models import (
    DegreeDecomposition,
    DistanceRegularity,
    Graph,
    IntArray,
    IntersectionNumbers,
    JacobiSequence,
    QuantumDecomposition,
    Stratification,
)

logger = logging.getLogger(__name__)

INT64_SAFE_BOUND = 2**62
EXHAUSTIVE_MAX_STEPS = 6
EXHAUSTIVE_MAX_VERTICES = 20


def _check_vertex(graph: Graph, x: int, role: str = "vertex") -> None:
    if not 0 <= x < graph.n:
        msg = f"{role} {x} out of range for a graph on {graph.n} vertices"
        raise InvalidGraphError(msg)


def stratify(graph: Graph, origin: int) -> Stratification:
    """Partition the vertices reachable from ``origin`` by BFS distance.

    Vertices in other components get distance -1 and no stratum.
    """
    _check_vertex(graph, origin, "origin")
    lengths = nx.single_source_shortest_path_length(
        graph.to_networkx(), origin
    )
    depth = max(lengths.values())
    strata: list[list[int]] = [[] for _ in range(depth + 1)]
    distances = [-1] * graph.n
    for vertex, d in lengths.items():
        strata[d].append(vertex)
        distances[vertex] = d
    if len(lengths) < graph.n:
        logger.debug(
            f"{graph.n - len(lengths)} vertices unreachable from {origin}"
        )
    return Stratification(
        origin=origin,
        strata=tuple(tuple(sorted(s)) for s in strata),
        distances=tuple(distances),
    )


def quantum_decompose(
    graph: Graph, strat: Stratification
) -> QuantumDecomposition:
    """Split A into A+ (climbing), A- (descending) and A0 (within stratum).

    (A^eps)_{xy} = A_{xy} when y is in V_n and x in V_{n+eps}. Edges among
    vertices unreachable from the origin land in A0.
    """
    adjacency = graph.adjacency_matrix()
    d = np.array(strat.distances, dtype=np.int64)
    row, col = d[:, None], d[None, :]
    a_plus = adjacency * (row == col + 1)
    a_minus = adjacency * (row == col - 1)
    a_zero = adjacency - a_plus - a_minus
    return QuantumDecomposition(a_plus=a_plus, a_minus=a_minus, a_zero=a_zero)


def degree_decomposition(
    graph: Graph, strat: Stratification, x: int
) -> DegreeDecomposition:
    """Neighbours of x in its own, the next and the previous stratum."""
    _check_vertex(graph, x)
    level = strat.distances[x]
    if level < 0:
        msg = f"Vertex {x} is not reachable from origin {strat.origin}"
        raise InvalidGraphError(msg)
    counts = {-1: 0, 0: 0, 1: 0}
    for y in graph.neighbors(x):
        counts[strat.distances[y] - level] += 1
    return DegreeDecomposition(
        omega_zero=counts[0], omega_plus=counts[1], omega_minus=counts[-1]
    )


def _matrix_power(matrix: IntArray, m: int) -> np.ndarray:
    """Exact A^m; falls back to Python integers when int64 could overflow."""
    max_degree = int(matrix.sum(axis=1).max()) if matrix.size else 0
    if max_degree**m < INT64_SAFE_BOUND:
        return np.linalg.matrix_power(matrix.astype(np.int64), m)
    logger.debug(
        f"A^{m} may exceed int64 (max degree {max_degree}), using big ints"
    )
    return np.linalg.matrix_power(matrix.astype(object), m)


def walk_count(graph: Graph, x: int, y: int, m: int) -> int:
    """Number of m-step walks from x to y, the (x, y) entry of A^m."""
    _check_vertex(graph, x)
    _check_vertex(graph, y)
    if m < 0:
        msg = f"Walk length must be non-negative, got {m}"
        raise ConfigurationError(msg)
    return int(_matrix_power(graph.adjacency_matrix(), m)[x, y])


def count_walks_exhaustive(graph: Graph, x: int, y: int, m: int) -> int:
    """Enumerate every m-step walk from x one by one and count those ending at y.

    Independent oracle for ``walk_count``; limited to small graphs and
    short walks.
    """
    _check_vertex(graph, x)
    _check_vertex(graph, y)
    if not 0 <= m <= EXHAUSTIVE_MAX_STEPS or graph.n > EXHAUSTIVE_MAX_VERTICES:
        msg = (
            f"Exhaustive enumeration is limited to m <= {EXHAUSTIVE_MAX_STEPS}"
            f" and n <= {EXHAUSTIVE_MAX_VERTICES}"
        )
        raise ConfigurationError(msg)

    neighbours = [graph.neighbors(v) for v in range(graph.n)]
    count = 0
    stack = [(x, 0)]
    while stack:
        vertex, length = stack.pop()
        if length == m:
            count += vertex == y
            continue
        stack.extend((w, length + 1) for w in neighbours[vertex])
    return count


def vacuum_moment(graph: Graph, origin: int, m: int) -> int:
    """<delta_o, A^m delta_o>."""
    return walk_count(graph, origin, origin, m)


def distance_matrix(graph: Graph) -> IntArray:
    """All-pairs graph distances.

    Raises:
        DisconnectedGraphError: If the graph is not connected
    """
    nx_graph = graph.to_networkx()
    if not nx.is_connected(nx_graph):
        components = nx.number_connected_components(nx_graph)
        msg = (
            f"Graph {graph.name or ''} has {components} connected components;"
            " distances are undefined across components"
        )
        raise DisconnectedGraphError(msg)
    distances = np.zeros((graph.n, graph.n), dtype=np.int64)
    for x, row in nx.all_pairs_shortest_path_length(nx_graph):
        for y, d in row.items():
            distances[x, y] = d
    return distances


def distance_adjacency(graph: Graph, k: int) -> IntArray:
    """(A_k)_{xy} = 1 iff the distance from x to y is k."""
    if k < 0:
        msg = f"Distance must be non-negative, got {k}"
        raise ConfigurationError(msg)
    result: IntArray = (distance_matrix(graph) == k).astype(np.int64)
    return result


def _distance_indicators(distances: IntArray) -> IntArray:
    """H[x, z, i] = 1 iff d(x, z) = i."""
    diameter = int(distances.max())
    levels = np.arange(diameter + 1)
    indicators: IntArray = (distances[:, :, None] == levels).astype(np.int64)
    return indicators


def is_distance_regular(graph: Graph) -> DistanceRegularity:
    """Brute-force distance-regularity test.

    For every pair (x, y) at distance k the table
    c[i, j] = |{z : d(x, z) = i, d(y, z) = j}| must equal the one of the
    first pair found at that distance. On failure the first disagreeing
    (x, y, i, j) is returned as the witness.
    """
    distances = distance_matrix(graph)
    diameter = int(distances.max())
    indicators = _distance_indicators(distances)
    size = diameter + 1
    table = np.zeros((size, size, size), dtype=np.int64)
    reference: dict[int, tuple[int, int]] = {}

    for x in range(graph.n):
        # counts[y, i, j] for this x and every y
        counts = np.einsum("zi,yzj->yij", indicators[x], indicators)
        for y in range(graph.n):
            k = int(distances[x, y])
            if k not in reference:
                reference[k] = (x, y)
                table[k] = counts[y]
                continue
            diff = np.argwhere(counts[y] != table[k])
            if diff.size:
                i, j = (int(v) for v in diff[0])
                x0, y0 = reference[k]
                witness = {
                    "k": k,
                    "x": x,
                    "y": y,
                    "i": i,
                    "j": j,
                    "count": int(counts[y, i, j]),
                    "reference_x": x0,
                    "reference_y": y0,
                    "reference_count": int(table[k, i, j]),
                }
                logger.debug(f"Not distance-regular, witness {witness}")
                return DistanceRegularity(False, witness=witness)

    return DistanceRegularity(
        True,
        intersection_numbers=IntersectionNumbers(
            diameter=diameter, table=table
        ),
    )


def verify_bose_mesner(graph: Graph, numbers: IntersectionNumbers) -> int:
    """max over i, j of |A_i A_j - sum_k p^k_ij A_k|, exact integers."""
    distances = distance_matrix(graph)
    diameter = numbers.diameter
    if int(distances.max()) != diameter:
        msg = (
            f"Intersection numbers have diameter {diameter}, graph has "
            f"{int(distances.max())}"
        )
        raise InvalidGraphError(msg)
    powers = [(distances == k).astype(np.int64) for k in range(diameter + 1)]
    worst = 0
    for i in range(diameter + 1):
        for j in range(diameter + 1):
            expected = np.zeros_like(powers[0])
            for k in range(abs(i - j), min(i + j, diameter) + 1):
                expected += numbers.p(k, i, j) * powers[k]
            residual = int(np.max(np.abs(powers[i] @ powers[j] - expected)))
            worst = max(worst, residual)
    return worst


def jacobi_sequence(graph: Graph, origin: int) -> JacobiSequence:
    """Interacting Fock space coefficients seen from ``origin``.

    omega_n = |V_n| / |V_{n-1}| * omega_-(y)^2 for y in V_n, n = 1..D, and
    alpha_n = omega_0(y) for y in V_{n-1}, n = 1..D+1. Every representative
    is checked.

    Raises:
        NotDistanceRegularError: If two representatives of a stratum give
            different values
    """
    strat = stratify(graph, origin)
    sizes = strat.sizes

    def _common(values: dict[int, Fraction], name: str, n: int) -> Fraction:
        distinct = sorted(set(values.values()))
        if len(distinct) > 1:
            first = next(y for y, v in values.items() if v == distinct[0])
            other = next(y for y, v in values.items() if v == distinct[1])
            witness = {
                "coefficient": name,
                "n": n,
                "vertices": [first, other],
                "values": [str(distinct[0]), str(distinct[1])],
            }
            msg = (
                f"{name}_{n} depends on the representative: vertex {first} "
                f"gives {distinct[0]}, vertex {other} gives {distinct[1]}"
            )
            raise NotDistanceRegularError(msg, witness)
        return distinct[0]

    omegas: list[Fraction] = []
    for n in range(1, strat.depth + 1):
        ratio = Fraction(sizes[n], sizes[n - 1])
        values = {
            y: ratio * degree_decomposition(graph, strat, y).omega_minus ** 2
            for y in strat.strata[n]
        }
        omegas.append(_common(values, "omega", n))

    alphas: list[Fraction] = []
    for n in range(1, strat.depth + 2):
        values = {
            y: Fraction(degree_decomposition(graph, strat, y).omega_zero)
            for y in strat.strata[n - 1]
        }
        alphas.append(_common(values, "alpha", n))

    return JacobiSequence(omegas=tuple(omegas), alphas=tuple(alphas))


def strata_vectors(graph: Graph, strat: Stratification) -> list[IntArray]:
    """Indicator vectors Phi_n of the strata."""
    vectors = []
    for stratum in strat.strata:
        phi = np.zeros(graph.n, dtype=np.int64)
        phi[list(stratum)] = 1
        vectors.append(phi)
    return vectors


def strata_gram(graph: Graph, strat: Stratification) -> IntArray:
    """<Phi_i, A Phi_j>; tridiagonal whenever edges respect the strata."""
    phis = np.array(strata_vectors(graph, strat))
    gram: IntArray = phis @ graph.adjacency_matrix() @ phis.T
    return gram


def edge_locality_violations(
    graph: Graph, strat: Stratification
) -> list[tuple[int, int]]:
    """Edges joining reachable vertices whose strata differ by more than one."""
    d = strat.distances
    return sorted(
        (u, v)
        for u, v in graph.edges
        if d[u] >= 0 and d[v] >= 0 and abs(d[u] - d[v]) > 1
    )
