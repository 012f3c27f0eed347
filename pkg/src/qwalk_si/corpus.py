# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""Named graph corpus and the plain-text edge-list format."""

from __future__ import annotations

from collections.abc import Callable
import logging
from pathlib import Path
import re

import networkx as nx

from .exceptions import ConfigurationError, InvalidGraphError
from .models import Graph

logger = logging.getLogger(__name__)

_PATTERN = re.compile(r"^(c|k|p|q)(\d+)$")

# family letter -> (generator, smallest allowed, largest allowed)
_FAMILIES: dict[str, tuple[Callable[[int], nx.Graph], int, int]] = {
    "c": (nx.cycle_graph, 3, 12),
    "k": (nx.complete_graph, 2, 8),
    "p": (nx.path_graph, 2, 6),
    "q": (nx.hypercube_graph, 2, 4),
}


def _k33_minus_edge() -> nx.Graph:
    graph = nx.complete_bipartite_graph(3, 3)
    graph.remove_edge(0, 3)
    return graph


_SPECIAL: dict[str, Callable[[], nx.Graph]] = {
    "petersen": nx.petersen_graph,
    "k33": lambda: nx.complete_bipartite_graph(3, 3),
    "k33-minus-edge": _k33_minus_edge,
}


def corpus_names() -> list[str]:
    """Every name accepted by ``corpus_graph``."""
    names = [
        f"{letter}{size}"
        for letter, (_, low, high) in _FAMILIES.items()
        for size in range(low, high + 1)
    ]
    return names + sorted(_SPECIAL)


def corpus_graph(name: str) -> Graph:
    """Build a corpus graph by name (``c6``, ``k4``, ``petersen``, ...).

    Raises:
        InvalidGraphError: If the name is unknown
    """
    key = name.strip().lower()
    if key in _SPECIAL:
        return Graph.from_networkx(_SPECIAL[key](), name=key)
    match = _PATTERN.match(key)
    if match:
        generator, low, high = _FAMILIES[match.group(1)]
        size = int(match.group(2))
        if low <= size <= high:
            return Graph.from_networkx(generator(size), name=key)
    msg = f"Unknown corpus graph '{name}'; known: {', '.join(corpus_names())}"
    raise InvalidGraphError(msg)


def parse_edge_list(text: str, name: str = "") -> Graph:
    """Parse ``n m`` followed by m lines ``u v`` (0-indexed).

    Blank lines and ``#`` comments are ignored.

    Raises:
        InvalidGraphError: On a malformed header, a bad edge line or an
            edge count that disagrees with the header
    """
    lines = [
        stripped
        for line in text.splitlines()
        if (stripped := line.split("#", 1)[0].strip())
    ]
    if not lines:
        raise InvalidGraphError("Edge list is empty")

    try:
        n, m = (int(tok) for tok in lines[0].split())
    except ValueError as e:
        msg = f"Edge list header must be 'n m', got '{lines[0]}'"
        raise InvalidGraphError(msg) from e

    edges: set[tuple[int, int]] = set()
    for line in lines[1:]:
        try:
            u, v = (int(tok) for tok in line.split())
        except ValueError as e:
            msg = f"Edge line must be 'u v', got '{line}'"
            raise InvalidGraphError(msg) from e
        edges.add((min(u, v), max(u, v)))

    if len(lines) - 1 != m:
        msg = f"Header announces {m} edges, found {len(lines) - 1}"
        raise InvalidGraphError(msg)
    if len(edges) != m:
        logger.warning(f"Edge list {name} repeats {m - len(edges)} edges")
    return Graph(n=n, edges=frozenset(edges), name=name)


def load_graph(path: Path) -> Graph:
    """Read an edge-list file."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        msg = f"Cannot read graph file {path}: {e}"
        raise ConfigurationError(msg) from e
    return parse_edge_list(text, name=path.stem)
