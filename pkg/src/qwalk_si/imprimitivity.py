# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: 2025 The Linux Foundation

"""Finite groups, permutation representations and systems of imprimitivity.

Elements of a semidirect product H x| A are indexed ``h * |A| + a``. All
representations here are integer permutation matrices; conversion to floats
happens only when a residual is computed.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
import itertools
import logging
from typing import TYPE_CHECKING, Any

import numpy as np
from numpy.typing import NDArray

from .automorphisms import automorphism_group
from .exceptions import (
    AutomorphismError,
    ConfigurationError,
    DimensionMismatchError,
    GroupAxiomError,
    GroupError,
    StructuralActionError,
)
from .graph_stratification import distance_matrix, stratify
from .models import (
    PVM,
    FiniteGroup,
    FloatArray,
    Graph,
    GroupAction,
    IntArray,
    PVMKind,
    SIReport,
    UnitaryRep,
)

if TYPE_CHECKING:
    from .config import CayleyTableConfig

logger = logging.getLogger(__name__)

SCRAMBLE_ATTEMPTS = 100


# --------------------------------------------------------------------------
# Groups
# --------------------------------------------------------------------------


def cyclic_group(n: int) -> FiniteGroup:
    """Z_n under addition."""
    if n < 1:
        msg = f"Cyclic group order must be positive, got {n}"
        raise GroupError(msg)
    idx = np.arange(n)
    return FiniteGroup(
        mult=(idx[:, None] + idx[None, :]) % n,
        labels=tuple(str(i) for i in range(n)),
    )


def semidirect_product(
    h_group: FiniteGroup, a_group: FiniteGroup, t: IntArray
) -> FiniteGroup:
    """H x| A with (h1, a1)(h2, a2) = (h1 h2, a1 t_{h1}[a2]).

    Args:
        h_group: Acting group H
        a_group: Normal factor A
        t: |H| x |A| table, row h is the automorphism t_h of A

    Raises:
        AutomorphismError: If some t_h is not an automorphism of A, or
            h -> t_h is not a homomorphism
        GroupAxiomError: If the inverse formula fails
    """
    t = np.asarray(t, dtype=np.int64)
    n_h, n_a = h_group.order, a_group.order
    if t.shape != (n_h, n_a):
        msg = (
            f"Automorphism table must have shape ({n_h}, {n_a}), "
            f"got {t.shape}"
        )
        raise AutomorphismError(msg)

    a_mult = a_group.mult
    for h in range(n_h):
        if sorted(t[h].tolist()) != list(range(n_a)):
            msg = f"t_{h_group.label(h)} is not a bijection of A"
            raise AutomorphismError(msg)
        image = a_mult[t[h][:, None], t[h][None, :]]
        if not np.array_equal(t[h][a_mult], image):
            msg = f"t_{h_group.label(h)} does not preserve the product of A"
            raise AutomorphismError(msg)
    # t_{h1 h2} = t_{h1} o t_{h2}
    composed = t[np.arange(n_h)[:, None, None], t[None, :, :]]
    if not np.array_equal(t[h_group.mult], composed):
        raise AutomorphismError("h -> t_h is not a homomorphism")

    h_idx = np.repeat(np.arange(n_h), n_a)
    a_idx = np.tile(np.arange(n_a), n_h)
    h1, h2 = h_idx[:, None], h_idx[None, :]
    a1, a2 = a_idx[:, None], a_idx[None, :]
    mult = h_group.mult[h1, h2] * n_a + a_mult[a1, t[h1, a2]]
    labels = tuple(
        f"({h_group.label(h)},{a_group.label(a)})"
        for h, a in zip(h_idx, a_idx, strict=True)
    )
    group = FiniteGroup(mult=mult, labels=labels)

    # (h, a)^-1 = (h^-1, t_{h^-1}[a^-1])
    h_inv = h_group.inverse[h_idx]
    formula = h_inv * n_a + t[h_inv, a_group.inverse[a_idx]]
    products = group.mult[np.arange(group.order), formula]
    if not np.all(products == group.identity):
        raise GroupAxiomError("Semidirect inverse formula failed")
    logger.debug(f"Built semidirect product of order {group.order}")
    return group


def direct_product(h_group: FiniteGroup, a_group: FiniteGroup) -> FiniteGroup:
    """H x A as the semidirect product with trivial action."""
    t = np.tile(np.arange(a_group.order), (h_group.order, 1))
    return semidirect_product(h_group, a_group, t)


def power_action(a: int, h: int, r: int) -> IntArray:
    """t_j[x] = r^j x mod a for the generator j of Z_h."""
    return np.array(
        [[(pow(r, j, a) * x) % a for x in range(a)] for j in range(h)],
        dtype=np.int64,
    )


def dihedral_group(n: int) -> FiniteGroup:
    """D_n of order 2n, built as Z_n x| Z_2 with inversion."""
    if n < 1:
        msg = f"Dihedral group needs n >= 1, got {n}"
        raise GroupError(msg)
    return semidirect_product(
        cyclic_group(2), cyclic_group(n), power_action(n, 2, n - 1)
    )


def group_from_spec(spec: str) -> FiniteGroup:
    """Named constructor: ``cyclic:n``, ``dihedral:n`` or ``semidirect:a,h,r``.

    ``semidirect:a,h,r`` is Z_a x| Z_h where the generator of Z_h acts as
    multiplication by r.
    """
    kind, _, args = spec.partition(":")
    try:
        params = [int(v) for v in args.split(",")] if args else []
    except ValueError as e:
        msg = f"Group parameters must be integers: '{spec}'"
        raise ConfigurationError(msg) from e

    kind = kind.strip().lower()
    if kind == "cyclic" and len(params) == 1:
        return cyclic_group(params[0])
    if kind == "dihedral" and len(params) == 1:
        return dihedral_group(params[0])
    if kind == "semidirect" and len(params) == 3:
        a, h, r = params
        if a < 1 or h < 1:
            msg = f"Semidirect factors must be non-empty: '{spec}'"
            raise GroupError(msg)
        return semidirect_product(
            cyclic_group(h), cyclic_group(a), power_action(a, h, r)
        )
    msg = (
        f"Unknown group spec '{spec}'; expected cyclic:n, dihedral:n or "
        "semidirect:a,h,r"
    )
    raise ConfigurationError(msg)


def group_from_table(config: CayleyTableConfig) -> FiniteGroup:
    """Group from a validated Cayley table config."""
    return FiniteGroup(
        mult=np.array(config.mult, dtype=np.int64),
        labels=tuple(config.labels) if config.labels else (),
    )


def subgroup(group: FiniteGroup, elements: Iterable[int]) -> FiniteGroup:
    """Subgroup on ``elements``, re-indexed in sorted order.

    Raises:
        GroupAxiomError: If the elements are not closed under the product
    """
    members = sorted(set(int(g) for g in elements))
    index = {g: i for i, g in enumerate(members)}
    block = group.mult[np.ix_(members, members)]
    try:
        mult = np.array(
            [[index[int(v)] for v in row] for row in block], dtype=np.int64
        )
    except KeyError as e:
        msg = "Elements are not closed under the product"
        raise GroupAxiomError(msg) from e
    labels = tuple(group.label(g) for g in members) if group.labels else ()
    return FiniteGroup(
        mult=mult, labels=labels, parent_elements=tuple(members)
    )


def element_order(group: FiniteGroup, g: int) -> int:
    """Smallest k >= 1 with g^k = e."""
    power, k = g, 1
    while power != group.identity:
        power = int(group.mult[power, g])
        k += 1
    return k


def order_census(group: FiniteGroup) -> dict[int, int]:
    """Element order -> number of elements of that order."""
    census = Counter(element_order(group, g) for g in range(group.order))
    return dict(sorted(census.items()))


def _generators(group: FiniteGroup) -> list[int]:
    """Greedy generating set, largest element orders first."""
    by_order = sorted(
        range(group.order), key=lambda g: (-element_order(group, g), g)
    )
    gens: list[int] = []
    span = {group.identity}
    for g in by_order:
        if g in span:
            continue
        gens.append(g)
        span = _closure(group, gens)
        if len(span) == group.order:
            break
    return gens


def _closure(group: FiniteGroup, gens: Sequence[int]) -> set[int]:
    span = {group.identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(group.mult[x, g])
                if y not in span:
                    span.add(y)
                    nxt.append(y)
        frontier = nxt
    return span


def _extend_homomorphism(
    source: FiniteGroup,
    target: FiniteGroup,
    gens: Sequence[int],
    images: Sequence[int],
) -> dict[int, int] | None:
    """phi(x g) = phi(x) phi(g) along the Cayley graph; None on conflict."""
    phi = {source.identity: target.identity}
    frontier = [source.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, image in zip(gens, images, strict=True):
                y = int(source.mult[x, g])
                value = int(target.mult[phi[x], image])
                if y in phi:
                    if phi[y] != value:
                        return None
                else:
                    phi[y] = value
                    nxt.append(y)
        frontier = nxt
    return phi


def find_isomorphism(
    first: FiniteGroup, second: FiniteGroup
) -> dict[int, int] | None:
    """An isomorphism first -> second found by backtracking, or None."""
    if first.order != second.order or order_census(first) != order_census(
        second
    ):
        return None
    gens = _generators(first)
    target_orders: dict[int, list[int]] = {}
    for g in range(second.order):
        target_orders.setdefault(element_order(second, g), []).append(g)
    choices = [target_orders.get(element_order(first, g), []) for g in gens]
    for images in itertools.product(*choices):
        phi = _extend_homomorphism(first, second, gens, images)
        if phi is not None and len(set(phi.values())) == first.order:
            return phi
    return None


def are_isomorphic(first: FiniteGroup, second: FiniteGroup) -> bool:
    """True iff the two Cayley tables describe isomorphic groups."""
    return find_isomorphism(first, second) is not None


def conjugacy_classes(group: FiniteGroup) -> list[frozenset[int]]:
    """Conjugacy classes ordered by smallest member."""
    conj = conjugation_action(group).table
    seen: set[int] = set()
    classes = []
    for x in range(group.order):
        if x not in seen:
            cls = frozenset(int(v) for v in conj[:, x])
            seen |= cls
            classes.append(cls)
    return classes


# --------------------------------------------------------------------------
# Actions
# --------------------------------------------------------------------------


def left_multiplication_action(group: FiniteGroup) -> GroupAction:
    """g . x = g x on the group itself."""
    return GroupAction(group=group, table=group.mult)


def conjugation_action(group: FiniteGroup) -> GroupAction:
    """g . x = g x g^-1."""
    table = group.mult[group.mult, group.inverse[:, None]]
    return GroupAction(group=group, table=table)


def trivial_action(group: FiniteGroup, set_size: int) -> GroupAction:
    """Every element fixes every point."""
    table = np.tile(np.arange(set_size), (group.order, 1))
    return GroupAction(group=group, table=table)


def affine_action(
    product: FiniteGroup, a_group: FiniteGroup, t: IntArray
) -> GroupAction:
    """(h, a) . x = a t_h[x], the semidirect product acting on A.

    For D_n = Z_n x| Z_2 this is the symmetry group of the n-gon acting on
    its vertices.
    """
    t = np.asarray(t, dtype=np.int64)
    n_a = a_group.order
    if product.order != t.shape[0] * n_a:
        msg = (
            f"Product of order {product.order} does not match "
            f"{t.shape[0]} x {n_a}"
        )
        raise DimensionMismatchError(msg)
    g = np.arange(product.order)
    h_idx, a_idx = g // n_a, g % n_a
    table = a_group.mult[a_idx[:, None], t[h_idx]]
    return GroupAction(group=product, table=table)


def orbit(action: GroupAction, x: int) -> frozenset[int]:
    """{g . x : g in G}."""
    return frozenset(int(v) for v in action.table[:, x])


def orbits(action: GroupAction) -> list[frozenset[int]]:
    """Orbit partition ordered by smallest member."""
    seen: set[int] = set()
    result = []
    for x in range(action.set_size):
        if x not in seen:
            orb = orbit(action, x)
            seen |= orb
            result.append(orb)
    return result


def stabilizer(action: GroupAction, x: int) -> FiniteGroup:
    """Little group {g : g . x = x} as a subgroup."""
    fixing = np.flatnonzero(action.table[:, x] == x)
    return subgroup(action.group, fixing.tolist())


def scramble_action(
    action: GroupAction, rng: np.random.Generator
) -> GroupAction:
    """Conjugate the action by a random relabelling of the points.

    The result is still a valid action but generally differs from the
    original; used as a negative control.
    """
    size = action.set_size
    for _ in range(SCRAMBLE_ATTEMPTS):
        sigma = rng.permutation(size)
        sigma_inv = np.argsort(sigma)
        table = sigma[action.table[:, sigma_inv]]
        if not np.array_equal(table, action.table):
            return GroupAction(group=action.group, table=table)
    msg = "Could not find a relabelling that changes the action"
    raise ConfigurationError(msg)


# --------------------------------------------------------------------------
# Representations
# --------------------------------------------------------------------------


def permutation_representation(action: GroupAction) -> UnitaryRep:
    """U_g delta_x = delta_{g.x}, i.e. (U_g f)(y) = f(g^-1 y)."""
    size = action.set_size
    matrices = np.zeros((action.group.order, size, size), dtype=np.int64)
    g_idx = np.repeat(np.arange(action.group.order), size)
    x_idx = np.tile(np.arange(size), action.group.order)
    matrices[g_idx, action.table.reshape(-1), x_idx] = 1
    return UnitaryRep(group=action.group, matrices=matrices)


def regular_representation(group: FiniteGroup) -> UnitaryRep:
    """Left regular representation U_g f(x) = f(g^-1 x)."""
    return permutation_representation(left_multiplication_action(group))


def right_regular_representation(group: FiniteGroup) -> UnitaryRep:
    """R_g f(x) = f(x g), i.e. R_g delta_x = delta_{x g^-1}."""
    table = group.mult[:, group.inverse].T  # [g, x] -> x g^-1
    return permutation_representation(GroupAction(group=group, table=table))


def character(rep: UnitaryRep) -> NDArray[Any]:
    """trace(U_g) for every g."""
    traces: NDArray[Any] = np.trace(rep.matrices, axis1=1, axis2=2)
    return traces


def representation_residual(rep: UnitaryRep) -> float:
    """max |U_{g1 g2} - U_g1 U_g2| together with |U_e - I| and unitarity."""
    matrices = rep.matrices
    group = rep.group
    products = np.einsum("aij,bjk->abik", matrices, matrices)
    law = np.max(np.abs(products - matrices[group.mult]))
    identity = np.max(np.abs(matrices[group.identity] - np.eye(rep.dim)))
    gram = np.einsum("aji,ajk->aik", matrices.conj(), matrices)
    unitary = np.max(np.abs(gram - np.eye(rep.dim)))
    return float(max(law, identity, unitary))


# --------------------------------------------------------------------------
# Projection valued measures
# --------------------------------------------------------------------------


def pvm_from_partition(
    blocks: Sequence[Iterable[int]], dim: int
) -> PVM:
    """Diagonal set projections of a partition of {0..dim-1}.

    Raises:
        ConfigurationError: If the blocks overlap, leave points uncovered,
            or contain points out of range
    """
    base = tuple(frozenset(int(x) for x in block) for block in blocks)
    counts = Counter(x for block in base for x in block)
    overlap = sorted(x for x, c in counts.items() if c > 1)
    if overlap:
        msg = f"Partition blocks overlap at points {overlap}"
        raise ConfigurationError(msg)
    if any(not 0 <= x < dim for x in counts):
        msg = f"Partition has points outside 0..{dim - 1}"
        raise ConfigurationError(msg)
    if len(counts) != dim:
        missing = sorted(set(range(dim)) - set(counts))
        msg = f"Partition does not cover points {missing}"
        raise ConfigurationError(msg)
    if any(not block for block in base):
        raise ConfigurationError("Partition has an empty block")

    projections = np.zeros((len(base), dim, dim), dtype=np.float64)
    for i, block in enumerate(base):
        idx = sorted(block)
        projections[i, idx, idx] = 1.0
    return PVM(base=base, projections=projections, kind=PVMKind.SET)


def pvm_from_strata(vectors: Sequence[NDArray[Any]]) -> PVM:
    """Rank-one projections |Phi><Phi| / <Phi, Phi> of strata vectors."""
    projections = []
    base = []
    for i, phi in enumerate(vectors):
        v = np.asarray(phi, dtype=np.float64)
        norm2 = float(v @ v)
        if norm2 == 0.0:
            msg = f"Strata vector {i} is zero"
            raise ConfigurationError(msg)
        projections.append(np.outer(v, v) / norm2)
        base.append(frozenset(int(x) for x in np.flatnonzero(v)))
    return PVM(
        base=tuple(base),
        projections=np.array(projections),
        kind=PVMKind.RANK_ONE,
    )


def resolution_residual(pvm: PVM) -> float:
    """max |sum_i P_i - I|."""
    total = pvm.projections.sum(axis=0)
    return float(np.max(np.abs(total - np.eye(pvm.dim))))


def is_resolution_of_identity(pvm: PVM, tol: float = 1e-12) -> bool:
    """True iff the projections sum to the identity."""
    return resolution_residual(pvm) <= tol


def orthogonality_residual(pvm: PVM) -> float:
    """max |P_i P_j - delta_ij P_i| over all pairs."""
    p = pvm.projections
    products = np.einsum("aij,bjk->abik", p, p)
    expected = np.zeros_like(products)
    idx = np.arange(len(pvm.base))
    expected[idx, idx] = p
    return float(np.max(np.abs(products - expected)))


def _induced_base_action(pvm: PVM, action: GroupAction) -> IntArray:
    """Index j with g . E_i = E_j for every g and i.

    Raises:
        StructuralActionError: If some image set is not a base set
    """
    lookup = {block: j for j, block in enumerate(pvm.base)}
    induced = np.zeros((action.group.order, len(pvm.base)), dtype=np.int64)
    for g in range(action.group.order):
        for i, block in enumerate(pvm.base):
            image = frozenset(int(action.table[g, x]) for x in block)
            if image not in lookup:
                msg = (
                    f"Element {action.group.label(g)} maps base set "
                    f"{sorted(block)} to {sorted(image)}, which is not a "
                    "base set"
                )
                raise StructuralActionError(msg)
            induced[g, i] = lookup[image]
    return induced


def verify_si(rep: UnitaryRep, pvm: PVM, action: GroupAction) -> float:
    """max over g, E of |U_g P_E U_g^-1 - P_{g.E}|.

    ``action`` acts on the points underlying the PVM; it must carry every
    base set onto a base set. That is checked before any residual.

    Raises:
        DimensionMismatchError: If rep, pvm and action disagree on sizes
        StructuralActionError: If the action does not permute the base sets
    """
    if rep.dim != pvm.dim or action.set_size != pvm.dim:
        msg = (
            f"Representation dim {rep.dim}, PVM dim {pvm.dim} and action "
            f"set size {action.set_size} must agree"
        )
        raise DimensionMismatchError(msg)
    if rep.group.order != action.group.order:
        msg = (
            f"Representation has {rep.group.order} elements, action has "
            f"{action.group.order}"
        )
        raise DimensionMismatchError(msg)

    induced = _induced_base_action(pvm, action)
    u = rep.matrices.astype(np.complex128)
    u_inv = np.conj(np.transpose(u, (0, 2, 1)))
    p = pvm.projections.astype(np.complex128)
    conjugated = np.einsum(
        "gij,ejk,gkl->geil", u, p, u_inv, optimize=True
    )
    residual = float(np.max(np.abs(conjugated - p[induced])))
    logger.debug(
        f"SI residual {residual:.3e} over {rep.group.order} elements and "
        f"{len(pvm.base)} base sets"
    )
    return residual


def si_report(
    rep: UnitaryRep, pvm: PVM, action: GroupAction
) -> SIReport:
    """``verify_si`` plus orbit and little-group data of the point action."""
    residual = verify_si(rep, pvm, action)
    orbs = orbits(action)
    return SIReport(
        residual=residual,
        transitive=len(orbs) == 1,
        orbit_sizes=[len(o) for o in orbs],
        stabilizer_orders=[stabilizer(action, min(o)).order for o in orbs],
        group_order=action.group.order,
    )


# --------------------------------------------------------------------------
# Graph systems of imprimitivity
# --------------------------------------------------------------------------


def _strata_projections(
    graph: Graph, origin: int
) -> tuple[FloatArray, FloatArray]:
    """Strata-subspace projections and rank-one projections seen from origin."""
    strat = stratify(graph, origin)
    full = np.zeros((len(strat.strata), graph.n, graph.n))
    rank_one = np.zeros_like(full)
    for n, stratum in enumerate(strat.strata):
        idx = list(stratum)
        full[n, idx, idx] = 1.0
        phi = np.zeros(graph.n)
        phi[idx] = 1.0
        rank_one[n] = np.outer(phi, phi) / len(idx)
    return full, rank_one


def graph_si_check(
    graph: Graph,
    origin: int,
    generators: Iterable[Sequence[int]] | None = None,
    rng: np.random.Generator | None = None,
) -> SIReport:
    """Covariance of distance strata under the automorphism group.

    For every automorphism g and every n, U_g P_n(o) U_g^-1 = P_n(g.o), where
    P_n(o) projects onto span{delta_x : x in V_n(o)} and the strata of g.o
    come from a separate BFS. The rank-one variant |Phi_n><Phi_n| / |V_n| is
    checked the same way.

    With ``rng`` the representation comes from a randomly relabelled copy
    of the action while the image strata still follow the true action,
    which gives a negative control.
    """
    distance_matrix(graph)  # rejects disconnected graphs
    action = automorphism_group(graph, generators)
    acting = action if rng is None else scramble_action(action, rng)
    rep = permutation_representation(acting)
    u = rep.matrices.astype(np.float64)

    cache: dict[int, tuple[FloatArray, FloatArray]] = {}

    def _projections(vertex: int) -> tuple[FloatArray, FloatArray]:
        if vertex not in cache:
            cache[vertex] = _strata_projections(graph, vertex)
        return cache[vertex]

    full_o, rank_one_o = _projections(origin)
    residual = 0.0
    rank_one_residual = 0.0
    for g in range(action.group.order):
        image = int(action.table[g, origin])
        full_img, rank_one_img = _projections(image)
        if full_img.shape != full_o.shape:
            residual = max(residual, 1.0)
            rank_one_residual = max(rank_one_residual, 1.0)
            continue
        moved = np.einsum("ij,njk,lk->nil", u[g], full_o, u[g])
        residual = max(residual, float(np.max(np.abs(moved - full_img))))
        moved = np.einsum("ij,njk,lk->nil", u[g], rank_one_o, u[g])
        rank_one_residual = max(
            rank_one_residual, float(np.max(np.abs(moved - rank_one_img)))
        )

    orbs = orbits(action)
    logger.debug(
        f"Graph SI on {graph.name or graph.n}: |Aut| = {action.group.order}, "
        f"residual {residual:.3e}"
    )
    return SIReport(
        residual=residual,
        transitive=len(orbs) == 1,
        orbit_sizes=[len(o) for o in orbs],
        stabilizer_orders=[stabilizer(action, min(o)).order for o in orbs],
        group_order=action.group.order,
        rank_one_residual=rank_one_residual,
    )
