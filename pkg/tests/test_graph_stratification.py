# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""Tests for graph_stratification module."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from qwalk_si.corpus import corpus_graph
from qwalk_si.exceptions import (
    ConfigurationError,
    DisconnectedGraphError,
    InvalidGraphError,
    NotDistanceRegularError,
)
from qwalk_si.graph_stratification import (
    count_walks_exhaustive,
    degree_decomposition,
    distance_adjacency,
    distance_matrix,
    edge_locality_violations,
    is_distance_regular,
    jacobi_sequence,
    quantum_decompose,
    strata_gram,
    stratify,
    vacuum_moment,
    verify_bose_mesner,
    walk_count,
)
from qwalk_si.models import Graph


@pytest.fixture
def two_edges() -> Graph:
    """Disconnected graph 0 - 1   2 - 3."""
    return Graph(n=4, edges=frozenset({(0, 1), (2, 3)}), name="two-edges")


class TestStratify:
    """Tests for stratify and the quantum decomposition."""

    def test_petersen_strata(self, petersen: Graph) -> None:
        """Petersen seen from any vertex has strata of sizes 1, 3, 6."""
        strat = stratify(petersen, 0)
        assert strat.sizes == [1, 3, 6]
        assert strat.depth == 2
        assert strat.strata[1] == tuple(petersen.neighbors(0))

    def test_cycle_strata(self, cycle6: Graph) -> None:
        """C6 from 0: {0}, {1, 5}, {2, 4}, {3}."""
        strat = stratify(cycle6, 0)
        assert strat.strata == ((0,), (1, 5), (2, 4), (3,))
        assert strat.to_dict()["sizes"] == [1, 2, 2, 1]

    def test_unreachable_vertices(self, two_edges: Graph) -> None:
        """Vertices outside the origin's component get distance -1."""
        strat = stratify(two_edges, 0)
        assert strat.strata == ((0,), (1,))
        assert strat.distances == (0, 1, -1, -1)

    def test_origin_out_of_range(self, cycle6: Graph) -> None:
        """The origin must be a vertex."""
        with pytest.raises(InvalidGraphError, match="origin"):
            stratify(cycle6, 6)

    def test_decomposition_sums_to_adjacency(self, petersen: Graph) -> None:
        """A = A+ + A- + A0 and A- is the transpose of A+."""
        parts = quantum_decompose(petersen, stratify(petersen, 0))
        np.testing.assert_array_equal(
            parts.a_plus + parts.a_minus + parts.a_zero,
            petersen.adjacency_matrix(),
        )
        np.testing.assert_array_equal(parts.a_plus.T, parts.a_minus)
        # six edges inside V_2
        assert int(parts.a_zero.sum()) == 12

    def test_edges_respect_strata(self, petersen: Graph) -> None:
        """No edge skips a stratum, so the strata Gram matrix is tridiagonal."""
        strat = stratify(petersen, 3)
        assert edge_locality_violations(petersen, strat) == []
        gram = strata_gram(petersen, strat)
        assert gram[0, 2] == 0
        assert gram[0, 1] == 3

    def test_degree_decomposition(self, petersen: Graph) -> None:
        """A vertex of V_2 has one neighbour below and two beside it."""
        strat = stratify(petersen, 0)
        parts = degree_decomposition(petersen, strat, strat.strata[2][0])
        assert (parts.omega_minus, parts.omega_zero, parts.omega_plus) == (
            1,
            2,
            0,
        )
        assert parts.degree == 3


class TestWalkCounts:
    """Tests for walk counting and vacuum moments."""

    def test_matches_exhaustive_enumeration(self, petersen: Graph) -> None:
        """A^m entries agree with brute-force enumeration."""
        for m in range(7):
            for y in (0, 1, 7):
                assert walk_count(petersen, 0, y, m) == count_walks_exhaustive(
                    petersen, 0, y, m
                )

    def test_petersen_moments(self, petersen: Graph) -> None:
        """Girth 5 means no closed walks of length 3."""
        assert [vacuum_moment(petersen, 0, m) for m in range(5)] == [
            1,
            0,
            3,
            0,
            15,
        ]

    def test_large_powers_stay_exact(self) -> None:
        """Closed walks on K8 of length 30 exceed int64 and stay exact."""
        k8 = corpus_graph("k8")
        expected = (7**30 + 7) // 8
        assert walk_count(k8, 0, 0, 30) == expected

    def test_negative_length(self, cycle6: Graph) -> None:
        """Walk lengths are non-negative."""
        with pytest.raises(ConfigurationError):
            walk_count(cycle6, 0, 0, -1)

    def test_exhaustive_limits(self, petersen: Graph) -> None:
        """Enumeration refuses long walks."""
        with pytest.raises(ConfigurationError, match="limited"):
            count_walks_exhaustive(petersen, 0, 0, 7)


class TestDistanceRegularity:
    """Tests for distance matrices and distance-regularity."""

    def test_distance_matrix(self, cycle6: Graph) -> None:
        """C6 distances wrap around the cycle."""
        distances = distance_matrix(cycle6)
        assert distances[0].tolist() == [0, 1, 2, 3, 2, 1]
        np.testing.assert_array_equal(
            distance_adjacency(cycle6, 3).sum(axis=1), np.ones(6)
        )

    def test_disconnected_rejected(self, two_edges: Graph) -> None:
        """Distance-based operations refuse disconnected graphs."""
        with pytest.raises(DisconnectedGraphError, match="2 connected"):
            distance_matrix(two_edges)
        with pytest.raises(DisconnectedGraphError):
            is_distance_regular(two_edges)

    @pytest.mark.parametrize("name", ["petersen", "c7", "k5", "q3", "k33"])
    def test_distance_regular(self, name: str) -> None:
        """Corpus DRGs pass and satisfy the Bose-Mesner relations."""
        graph = corpus_graph(name)
        result = is_distance_regular(graph)
        assert result.is_distance_regular
        assert result.witness is None
        assert result.intersection_numbers is not None
        assert verify_bose_mesner(graph, result.intersection_numbers) == 0

    def test_petersen_intersection_numbers(self, petersen: Graph) -> None:
        """Petersen is srg(10, 3, 0, 1)."""
        numbers = is_distance_regular(petersen).intersection_numbers
        assert numbers is not None
        assert numbers.diameter == 2
        assert numbers.p(0, 1, 1) == 3
        assert numbers.p(1, 1, 1) == 0
        assert numbers.p(2, 1, 1) == 1

    @pytest.mark.parametrize("name", ["p3", "k33-minus-edge"])
    def test_not_distance_regular(self, name: str) -> None:
        """Non-DRGs come back with a witness."""
        result = is_distance_regular(corpus_graph(name))
        assert not result.is_distance_regular
        assert result.intersection_numbers is None
        assert result.witness is not None
        assert result.witness["count"] != result.witness["reference_count"]
        assert result.to_dict()["distance_regular"] is False


class TestJacobiSequence:
    """Tests for interacting Fock space coefficients."""

    def test_petersen(self, petersen: Graph) -> None:
        """omega = (3, 2), alpha = (0, 0, 2)."""
        sequence = jacobi_sequence(petersen, 0)
        assert sequence.omegas == (Fraction(3), Fraction(2))
        assert sequence.to_dict() == {"omega": [3, 2], "alpha": [0, 0, 2]}

    def test_cycle(self, cycle6: Graph) -> None:
        """C6 has omega = (2, 1, 2) and no loops inside strata."""
        assert jacobi_sequence(cycle6, 0).to_dict() == {
            "omega": [2, 1, 2],
            "alpha": [0, 0, 0, 0],
        }

    def test_path_from_middle(self, path3: Graph) -> None:
        """A rooted path is fine even though it is not distance-regular."""
        assert jacobi_sequence(path3, 1).to_dict() == {
            "omega": [2],
            "alpha": [0, 0],
        }

    def test_representatives_disagree(self) -> None:
        """K33 minus an edge seen from vertex 1 has an ambiguous omega_2."""
        with pytest.raises(NotDistanceRegularError) as excinfo:
            jacobi_sequence(corpus_graph("k33-minus-edge"), 1)
        assert excinfo.value.witness["coefficient"] == "omega"
        assert excinfo.value.witness["n"] == 2
