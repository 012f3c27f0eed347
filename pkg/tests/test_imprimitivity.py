# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""Tests for imprimitivity module."""

from __future__ import annotations

import numpy as np
import pytest

from qwalk_si.corpus import corpus_graph
from qwalk_si.exceptions import (
    AutomorphismError,
    ConfigurationError,
    DimensionMismatchError,
    GroupAxiomError,
    GroupError,
    StructuralActionError,
)
from qwalk_si.imprimitivity import (
    affine_action,
    are_isomorphic,
    character,
    conjugacy_classes,
    conjugation_action,
    cyclic_group,
    dihedral_group,
    direct_product,
    element_order,
    graph_si_check,
    group_from_spec,
    left_multiplication_action,
    order_census,
    orbits,
    orthogonality_residual,
    permutation_representation,
    power_action,
    pvm_from_partition,
    pvm_from_strata,
    regular_representation,
    representation_residual,
    resolution_residual,
    right_regular_representation,
    scramble_action,
    semidirect_product,
    si_report,
    stabilizer,
    subgroup,
    trivial_action,
    verify_si,
)
from qwalk_si.graph_stratification import strata_vectors, stratify
from qwalk_si.models import FiniteGroup, Graph, GroupAction, PVMKind


def _singletons(n: int) -> list[list[int]]:
    return [[x] for x in range(n)]


class TestFiniteGroup:
    """Tests for Cayley table validation."""

    def test_cyclic(self) -> None:
        """Z5 has identity 0 and inverse -x."""
        group = cyclic_group(5)
        assert group.order == 5
        assert group.identity == 0
        assert group.inverse.tolist() == [0, 4, 3, 2, 1]

    def test_not_latin(self) -> None:
        """Repeated entries in a row are rejected."""
        with pytest.raises(GroupAxiomError, match="Latin"):
            FiniteGroup(mult=np.array([[0, 1], [1, 1]]))

    def test_not_associative(self) -> None:
        """A loop of order 5 with identity and inverses is not a group."""
        loop = np.array(
            [
                [0, 1, 2, 3, 4],
                [1, 0, 3, 4, 2],
                [2, 4, 0, 1, 3],
                [3, 2, 4, 0, 1],
                [4, 3, 1, 2, 0],
            ]
        )
        with pytest.raises(GroupAxiomError, match="associative"):
            FiniteGroup(mult=loop)

    def test_out_of_range(self) -> None:
        """Entries must index elements."""
        with pytest.raises(GroupAxiomError, match="out of range"):
            FiniteGroup(mult=np.array([[0, 2], [2, 0]]))

    def test_element_orders(self) -> None:
        """D4 has five involutions and two elements of order 4."""
        d4 = dihedral_group(4)
        assert d4.order == 8
        assert order_census(d4) == {1: 1, 2: 5, 4: 2}
        assert element_order(cyclic_group(6), 2) == 3

    def test_subgroup(self) -> None:
        """Subgroups are re-indexed and remember their parent elements."""
        sub = subgroup(cyclic_group(6), [0, 2, 4])
        assert sub.order == 3
        assert sub.parent_elements == (0, 2, 4)
        with pytest.raises(GroupAxiomError, match="closed"):
            subgroup(cyclic_group(4), [0, 1])


class TestProducts:
    """Tests for semidirect and direct products."""

    def test_semidirect_is_dihedral(self) -> None:
        """Z3 x| Z2 with inversion is S3 = D3."""
        s3 = group_from_spec("semidirect:3,2,2")
        assert s3.order == 6
        assert are_isomorphic(s3, dihedral_group(3))
        assert not are_isomorphic(s3, cyclic_group(6))

    def test_direct_products(self) -> None:
        """Z2 x Z3 is cyclic, Z2 x Z2 is not."""
        assert are_isomorphic(
            direct_product(cyclic_group(2), cyclic_group(3)), cyclic_group(6)
        )
        assert not are_isomorphic(
            direct_product(cyclic_group(2), cyclic_group(2)), cyclic_group(4)
        )

    def test_non_bijective_twist(self) -> None:
        """x -> 2x is not an automorphism of Z4."""
        with pytest.raises(AutomorphismError, match="bijection"):
            semidirect_product(
                cyclic_group(2), cyclic_group(4), power_action(4, 2, 2)
            )

    def test_twist_not_homomorphism(self) -> None:
        """2^3 != 1 mod 5, so Z3 cannot act on Z5 by doubling."""
        with pytest.raises(AutomorphismError, match="homomorphism"):
            semidirect_product(
                cyclic_group(3), cyclic_group(5), power_action(5, 3, 2)
            )

    @pytest.mark.parametrize("spec", ["dihedral:x", "klein:4", "cyclic:1,2"])
    def test_bad_specs(self, spec: str) -> None:
        """Malformed group specs are configuration errors."""
        with pytest.raises(ConfigurationError):
            group_from_spec(spec)

    def test_empty_factor(self) -> None:
        """Semidirect factors must have positive order."""
        with pytest.raises(GroupError):
            group_from_spec("semidirect:0,2,1")

    def test_conjugacy_classes(self) -> None:
        """D4 has five classes; abelian groups have singletons."""
        assert len(conjugacy_classes(dihedral_group(4))) == 5
        s3 = group_from_spec("semidirect:3,2,2")
        assert len(conjugacy_classes(s3)) == 3
        assert conjugacy_classes(cyclic_group(4)) == [
            frozenset({x}) for x in range(4)
        ]


class TestActions:
    """Tests for actions, orbits and stabilizers."""

    def test_incompatible_action(self) -> None:
        """An action must respect the product."""
        table = np.array([[0, 1, 2], [1, 0, 2], [0, 1, 2]])
        with pytest.raises(GroupAxiomError, match="compatible"):
            GroupAction(group=cyclic_group(3), table=table)

    def test_dihedral_on_square(self) -> None:
        """D4 acts transitively on the square with stabilizers of order 2."""
        action = affine_action(
            dihedral_group(4), cyclic_group(4), power_action(4, 2, 3)
        )
        assert orbits(action) == [frozenset(range(4))]
        assert stabilizer(action, 0).order == 2

    def test_orbit_stabilizer(self) -> None:
        """|orbit| * |stabilizer| = |G| for conjugation on S3."""
        s3 = group_from_spec("semidirect:3,2,2")
        action = conjugation_action(s3)
        for orb in orbits(action):
            assert len(orb) * stabilizer(action, min(orb)).order == 6

    def test_affine_size_mismatch(self) -> None:
        """The product must have |H| * |A| elements."""
        with pytest.raises(DimensionMismatchError):
            affine_action(
                cyclic_group(6), cyclic_group(4), power_action(4, 2, 3)
            )

    def test_scramble_changes_action(self, rng: np.random.Generator) -> None:
        """Relabelling gives a different but valid action."""
        action = left_multiplication_action(cyclic_group(5))
        scrambled = scramble_action(action, rng)
        assert not np.array_equal(scrambled.table, action.table)

    def test_scramble_trivial_action(self, rng: np.random.Generator) -> None:
        """The trivial action looks the same under every relabelling."""
        with pytest.raises(ConfigurationError, match="relabelling"):
            scramble_action(trivial_action(cyclic_group(3), 3), rng)


class TestRepresentations:
    """Tests for permutation representations."""

    def test_regular_character(self) -> None:
        """chi(e) = |G| and chi(g) = 0 otherwise."""
        d4 = dihedral_group(4)
        rep = regular_representation(d4)
        expected = np.zeros(8)
        expected[d4.identity] = 8
        np.testing.assert_array_equal(character(rep), expected)
        assert representation_residual(rep) == 0.0

    def test_left_and_right_commute(self) -> None:
        """Left and right regular representations commute."""
        s3 = group_from_spec("semidirect:3,2,2")
        left = regular_representation(s3).matrices
        right = right_regular_representation(s3).matrices
        for g in range(6):
            for h in range(6):
                np.testing.assert_array_equal(
                    left[g] @ right[h], right[h] @ left[g]
                )
        right_rep = right_regular_representation(s3)
        assert representation_residual(right_rep) == 0.0

    @pytest.mark.parametrize(
        "spec",
        ["cyclic:5", "dihedral:4", "semidirect:7,3,2", "semidirect:3,2,2"],
    )
    def test_left_and_right_characters_agree(self, spec: str) -> None:
        """Left and right regular representations have equal characters."""
        group = group_from_spec(spec)
        np.testing.assert_array_equal(
            character(regular_representation(group)),
            character(right_regular_representation(group)),
        )

    def test_sends_basis_vectors(self) -> None:
        """U_g delta_x = delta_{g.x}."""
        action = left_multiplication_action(cyclic_group(4))
        rep = permutation_representation(action)
        assert rep.dim == 4
        basis = np.eye(4, dtype=np.int64)
        np.testing.assert_array_equal(rep.matrices[1] @ basis[2], basis[3])


class TestPVM:
    """Tests for projection valued measures."""

    def test_partition_pvm(self) -> None:
        """Set projections resolve the identity and are orthogonal."""
        pvm = pvm_from_partition([[0, 2], [1], [3]], 4)
        assert resolution_residual(pvm) == 0.0
        assert orthogonality_residual(pvm) == 0.0
        assert pvm.kind == PVMKind.SET

    @pytest.mark.parametrize(
        ("blocks", "match"),
        [
            ([[0, 1], [1, 2]], "overlap"),
            ([[0], [1]], "cover"),
            ([[0, 1, 2, 5]], "outside"),
        ],
    )
    def test_bad_partitions(self, blocks: list[list[int]], match: str) -> None:
        """Partitions must be disjoint, in range and exhaustive."""
        with pytest.raises(ConfigurationError, match=match):
            pvm_from_partition(blocks, 3)

    def test_strata_pvm(self, petersen: Graph) -> None:
        """Rank-one strata projections are orthogonal but do not sum to I."""
        vectors = strata_vectors(petersen, stratify(petersen, 0))
        pvm = pvm_from_strata(vectors)
        assert pvm.kind == PVMKind.RANK_ONE
        assert orthogonality_residual(pvm) <= 1e-15
        assert resolution_residual(pvm) > 0.5


class TestSystemOfImprimitivity:
    """Tests for verify_si and its reports."""

    @pytest.mark.parametrize("n", [3, 6, 11])
    def test_regular_action(self, n: int) -> None:
        """Z_n acting on itself is a transitive SI with trivial stabilizers."""
        action = left_multiplication_action(cyclic_group(n))
        report = si_report(
            permutation_representation(action),
            pvm_from_partition(_singletons(n), n),
            action,
        )
        assert report.residual == 0.0
        assert report.transitive
        assert report.stabilizer_orders == [1]
        assert report.group_order == n

    def test_conjugacy_class_pvm(self) -> None:
        """Conjugation permutes the class projections trivially."""
        d4 = dihedral_group(4)
        action = conjugation_action(d4)
        pvm = pvm_from_partition(conjugacy_classes(d4), 8)
        report = si_report(permutation_representation(action), pvm, action)
        assert report.residual == 0.0
        assert not report.transitive
        assert sorted(report.orbit_sizes) == [1, 1, 2, 2, 2]

    def test_scrambled_representation_fails(
        self, rng: np.random.Generator
    ) -> None:
        """A relabelled representation breaks covariance."""
        action = left_multiplication_action(cyclic_group(5))
        rep = permutation_representation(scramble_action(action, rng))
        pvm = pvm_from_partition(_singletons(5), 5)
        assert verify_si(rep, pvm, action) == pytest.approx(1.0)

    def test_action_must_permute_base(self) -> None:
        """Rotating Z4 does not preserve {0, 1}, {2, 3}."""
        action = left_multiplication_action(cyclic_group(4))
        pvm = pvm_from_partition([[0, 1], [2, 3]], 4)
        with pytest.raises(StructuralActionError):
            verify_si(permutation_representation(action), pvm, action)

    def test_dimension_mismatch(self) -> None:
        """Rep, PVM and action must agree on dimension."""
        action = left_multiplication_action(cyclic_group(4))
        with pytest.raises(DimensionMismatchError):
            verify_si(
                permutation_representation(action),
                pvm_from_partition(_singletons(3), 3),
                action,
            )


class TestGraphSI:
    """Tests for strata covariance under graph automorphisms."""

    @pytest.mark.parametrize("name", ["c6", "q3", "petersen"])
    def test_vertex_transitive(self, name: str) -> None:
        """Strata move with the origin under every automorphism."""
        report = graph_si_check(corpus_graph(name), 0)
        assert report.residual <= 1e-12
        assert report.rank_one_residual is not None
        assert report.rank_one_residual <= 1e-12
        assert report.transitive

    def test_cycle_details(self, cycle6: Graph) -> None:
        """Aut(C6) = D6 with vertex stabilizers of order 2."""
        report = graph_si_check(cycle6, 0)
        assert report.group_order == 12
        assert report.stabilizer_orders == [2]

    def test_path_is_not_transitive(self, path3: Graph) -> None:
        """P3 has two vertex orbits but strata are still covariant."""
        report = graph_si_check(path3, 0)
        assert report.residual == 0.0
        assert not report.transitive
        assert sorted(report.orbit_sizes) == [1, 2]

    def test_scrambled_control(
        self, petersen: Graph, rng: np.random.Generator
    ) -> None:
        """A relabelled representation no longer carries strata to strata."""
        report = graph_si_check(petersen, 0, rng=rng)
        assert report.residual > 0.0
