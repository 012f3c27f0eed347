# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""Graph automorphism groups.

Small graphs are searched exhaustively by backtracking over vertex maps that
preserve degree, distance profile and all distances to already-mapped
vertices. Larger graphs need explicit generators, whose closure is taken.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
import logging

import numpy as np

from .exceptions import AutomorphismSearchError, InvalidGraphError
from .graph_stratification import distance_matrix
from .models import FiniteGroup, Graph, GroupAction, IntArray

logger = logging.getLogger(__name__)

SEARCH_MAX_VERTICES = 16
TABLE_MAX_ORDER = 1000

Permutation = tuple[int, ...]


def is_automorphism(graph: Graph, perm: Sequence[int]) -> bool:
    """True iff ``perm`` is a bijection mapping edges onto edges."""
    if sorted(perm) != list(range(graph.n)):
        return False
    return all(
        (min(perm[u], perm[v]), max(perm[u], perm[v])) in graph.edges
        for u, v in graph.edges
    )


def _search_order(graph: Graph, distances: IntArray) -> list[int]:
    """Vertices in BFS order from 0 so each is constrained by its parent."""
    return sorted(range(graph.n), key=lambda v: (int(distances[0, v]), v))


def find_automorphisms(graph: Graph) -> list[Permutation]:
    """Every automorphism of a connected graph, identity first.

    Raises:
        AutomorphismSearchError: If the graph has more than
            ``SEARCH_MAX_VERTICES`` vertices
        DisconnectedGraphError: If the graph is not connected
    """
    if graph.n > SEARCH_MAX_VERTICES:
        msg = (
            f"Exhaustive automorphism search is limited to "
            f"{SEARCH_MAX_VERTICES} vertices (got {graph.n}); "
            "supply generators instead"
        )
        raise AutomorphismSearchError(msg)

    distances = distance_matrix(graph)
    diameter = int(distances.max())
    profiles = [
        tuple(np.bincount(distances[x], minlength=diameter + 1).tolist())
        for x in range(graph.n)
    ]
    order = _search_order(graph, distances)
    candidates = {
        x: [y for y in range(graph.n) if profiles[y] == profiles[x]]
        for x in order
    }

    found: list[Permutation] = []
    image = [-1] * graph.n
    used = [False] * graph.n

    def _extend(depth: int) -> None:
        if depth == graph.n:
            found.append(tuple(image))
            return
        x = order[depth]
        for y in candidates[x]:
            if used[y]:
                continue
            if any(
                distances[x, w] != distances[y, image[w]]
                for w in order[:depth]
            ):
                continue
            image[x], used[y] = y, True
            _extend(depth + 1)
            image[x], used[y] = -1, False

    _extend(0)
    found.sort()
    logger.debug(f"Found {len(found)} automorphisms of {graph.name or graph.n}")
    return found


def close_generators(
    graph: Graph, generators: Iterable[Sequence[int]]
) -> list[Permutation]:
    """Group generated by the given automorphisms, sorted, identity first.

    Raises:
        InvalidGraphError: If a generator is not an automorphism
    """
    gens = [tuple(int(v) for v in g) for g in generators]
    for g in gens:
        if len(g) != graph.n or not is_automorphism(graph, g):
            msg = f"Generator {g} is not an automorphism of the graph"
            raise InvalidGraphError(msg)

    identity = tuple(range(graph.n))
    elements = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[x]] for x in range(graph.n))
                if q not in elements:
                    elements.add(q)
                    nxt.append(q)
        frontier = nxt
    return sorted(elements)


def group_from_permutations(
    perms: Sequence[Permutation],
) -> GroupAction:
    """Permutation group and its natural action, (g1 g2)(x) = g1(g2(x)).

    Raises:
        AutomorphismSearchError: If there are more than ``TABLE_MAX_ORDER``
            permutations
        InvalidGraphError: If the permutations are not closed
    """
    if len(perms) > TABLE_MAX_ORDER:
        msg = (
            f"Group of order {len(perms)} exceeds {TABLE_MAX_ORDER} "
            "elements; pass generators of a subgroup instead"
        )
        raise AutomorphismSearchError(msg)
    index = {p: i for i, p in enumerate(perms)}
    table = np.array(perms, dtype=np.int64)
    # composed[i, j] = perms[i] o perms[j]
    composed = table[np.arange(len(perms))[:, None, None], table[None, :, :]]
    try:
        mult = np.array(
            [
                [index[tuple(row.tolist())] for row in block]
                for block in composed
            ],
            dtype=np.int64,
        )
    except KeyError as e:
        msg = "Permutations are not closed under composition"
        raise InvalidGraphError(msg) from e
    group = FiniteGroup(mult=mult)
    return GroupAction(group=group, table=table)


def automorphism_group(
    graph: Graph, generators: Iterable[Sequence[int]] | None = None
) -> GroupAction:
    """Automorphism group of ``graph`` acting on its vertices."""
    if generators is None:
        perms = find_automorphisms(graph)
    else:
        perms = close_generators(graph, generators)
    return group_from_permutations(perms)
