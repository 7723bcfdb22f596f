"""Deciding leak-proofness of a finite group.

The abelian group built here glues the maximal abelian subgroups of G
along their pairwise intersections: one block of coordinates per
subgroup basis, with relation rows identifying each intersection
generator's two discrete logarithms.  An element maps to the canonical
form of its coordinate vector; the group is leak-proof exactly when no
nonidentity element maps to zero, and binary leak-proof exactly when the
map is injective.  Any kernel element is turned back into an explicit
leaking flow on the complete graph over the subgroups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InternalInvariantError, NotInKernel, TooLarge
from .flows import GroupFlow, LeakVerdict, detect_leak
from .graphs import Graph, named_graph
from .groups import (
    DEFAULT_MAX_ORDER,
    AbelianBasis,
    FiniteGroup,
    Subgroup,
    abelian_basis,
    discrete_log,
    maximal_abelian_subgroups,
)
from .howell import HowellForm

__all__ = [
    "DeltaPresentation",
    "build_delta",
    "phi",
    "is_leakproof_group",
    "is_binary_leakproof_group",
    "witness_flow_from_kernel",
    "LeakproofVerdict",
    "InjectivityVerdict",
]


@dataclass(frozen=True)
class DeltaPresentation:
    """Presentation of the glued abelian group.

    Global coordinates are the concatenated subgroup bases; ``relations``
    stacks the order rows (one per generator) and one row per intersection
    generator of every unordered subgroup pair; ``canonical`` is the Howell
    form of the relation row space modulo ``modulus``.
    """

    group: FiniteGroup
    subgroups: tuple[Subgroup, ...]
    bases: tuple[AbelianBasis, ...]
    offsets: tuple[int, ...]
    generator_index: tuple[tuple[int, int], ...]
    modulus: int
    relations: np.ndarray
    canonical: HowellForm
    pair_rows: tuple[tuple[tuple[int, int], int], ...]  # ((i, j), generator element)

    @property
    def ncols(self) -> int:
        return len(self.generator_index)

    def containing_index(self, gamma: int) -> int:
        """Index of the first maximal abelian subgroup containing gamma."""
        for i, H in enumerate(self.subgroups):
            if gamma in H:
                return i
        raise InternalInvariantError("element outside every maximal abelian subgroup")

    def embed(self, gamma: int, subgroup_index: Optional[int] = None) -> np.ndarray:
        """gamma's coordinate vector, via its discrete log in one subgroup."""
        i = self.containing_index(gamma) if subgroup_index is None else subgroup_index
        vec = np.zeros(self.ncols, dtype=np.int64)
        dlog = discrete_log(self.bases[i], gamma)
        vec[self.offsets[i]: self.offsets[i] + len(dlog)] = dlog
        return vec

    def invariant_factors(self) -> list[int]:
        return self.canonical.invariant_factors()


def _pair_relation_rows(D_bases, offsets, group, i, j):
    """Rows dlog_i(g) - dlog_j(g) for each basis generator g of H_i n H_j."""
    Hi, Hj = D_bases[i].subgroup, D_bases[j].subgroup
    inter = Hi.intersection(Hj)
    if inter.order <= 1:
        return []
    rows = []
    for g in abelian_basis(inter).gens:
        row = np.zeros(offsets[-1], dtype=np.int64)
        di = discrete_log(D_bases[i], g)
        dj = discrete_log(D_bases[j], g)
        row[offsets[i]: offsets[i] + len(di)] = di
        row[offsets[j]: offsets[j] + len(dj)] -= np.array(dj)
        rows.append((row, g))
    return rows


def build_delta(G: FiniteGroup, max_order: int = DEFAULT_MAX_ORDER) -> DeltaPresentation:
    """Assemble the glued-abelian-group presentation for G."""
    if G.order > max_order:
        raise TooLarge(G.order, max_order)
    subgroups = maximal_abelian_subgroups(G)
    bases = tuple(abelian_basis(H) for H in subgroups)
    offsets = [0]
    generator_index: list[tuple[int, int]] = []
    for i, basis in enumerate(bases):
        generator_index.extend((i, k) for k in range(len(basis.gens)))
        offsets.append(offsets[-1] + len(basis.gens))
    ncols = offsets[-1]
    all_orders = [d for basis in bases for d in basis.orders]
    modulus = math.lcm(*all_orders) if all_orders else 1
    rows: list[np.ndarray] = []
    for col, (i, k) in enumerate(generator_index):
        row = np.zeros(ncols, dtype=np.int64)
        row[col] = bases[i].orders[k]
        rows.append(row)
    pair_rows: list[tuple[tuple[int, int], int]] = []
    offs = tuple(offsets)
    for i in range(len(subgroups)):
        for j in range(i + 1, len(subgroups)):
            for row, g in _pair_relation_rows(bases, offs, G, i, j):
                rows.append(row)
                pair_rows.append(((i, j), g))
    canonical = HowellForm(ncols, modulus)
    for row in rows:
        canonical.add_row(row)
    relations = (np.stack(rows) % modulus if rows
                 else np.zeros((0, ncols), dtype=np.int64))
    return DeltaPresentation(
        group=G,
        subgroups=subgroups,
        bases=bases,
        offsets=offs,
        generator_index=tuple(generator_index),
        modulus=modulus,
        relations=relations,
        canonical=canonical,
        pair_rows=tuple(pair_rows),
    )


def phi(D: DeltaPresentation, gamma: int) -> tuple[int, ...]:
    """Canonical coordinates of gamma's image; independent of which
    containing subgroup supplies the discrete log."""
    return tuple(int(x) for x in D.canonical.reduce(D.embed(gamma)))


@dataclass(frozen=True)
class LeakproofVerdict:
    leakproof: bool
    witness: Optional[int] = None          # some gamma != 1 with phi(gamma) = 0
    delta: Optional[DeltaPresentation] = None


@dataclass(frozen=True)
class InjectivityVerdict:
    injective: bool
    collision: Optional[tuple[int, int]] = None
    delta: Optional[DeltaPresentation] = None


def is_leakproof_group(G: FiniteGroup, max_order: int = DEFAULT_MAX_ORDER,
                       delta: Optional[DeltaPresentation] = None) -> LeakproofVerdict:
    """LeakProof when phi has trivial kernel fiber; else the first
    nonidentity element mapping to zero."""
    D = delta or build_delta(G, max_order)
    for gamma in G.elements():
        if gamma == G.identity:
            continue
        if not any(phi_coord for phi_coord in phi(D, gamma)):
            return LeakproofVerdict(False, witness=gamma, delta=D)
    return LeakproofVerdict(True, delta=D)


def is_binary_leakproof_group(G: FiniteGroup, max_order: int = DEFAULT_MAX_ORDER,
                              delta: Optional[DeltaPresentation] = None) -> InjectivityVerdict:
    """Injective phi (all normal forms pairwise distinct) or a colliding pair."""
    D = delta or build_delta(G, max_order)
    seen: dict[tuple[int, ...], int] = {}
    for gamma in G.elements():
        key = phi(D, gamma)
        if key in seen:
            return InjectivityVerdict(False, collision=(seen[key], gamma), delta=D)
        seen[key] = gamma
    return InjectivityVerdict(True, delta=D)


def witness_flow_from_kernel(source: "FiniteGroup | DeltaPresentation",
                             gamma: int) -> tuple[Graph, GroupFlow]:
    """Turn a kernel element into a leaking flow on the complete graph over
    the maximal abelian subgroups.

    A solution of the relation system expressing gamma's vector is folded,
    pair by pair, into one group element per subgroup pair; the resulting
    flow has excess gamma at gamma's subgroup and identity elsewhere, which
    detect_leak re-certifies before returning.
    """
    D = source if isinstance(source, DeltaPresentation) else build_delta(source)
    G = D.group
    if gamma == G.identity:
        raise NotInKernel("the identity is not a leak witness")
    target = D.embed(gamma)
    if not D.canonical.contains(target):
        raise NotInKernel("phi(gamma) is nonzero")
    chosen, registry = _greedy_subfamily(D, gamma, target)
    tracked = HowellForm(D.ncols, D.modulus, track=True)
    for row, _tag in registry:
        tracked.add_row(row)
    coeffs = tracked.solve(target)
    if coeffs is None:
        raise InternalInvariantError("subfamily lost the membership certificate")
    acc: dict[tuple[int, int], int] = {}
    for c, (_row, tag) in zip(coeffs, registry):
        if tag is None or c % D.modulus == 0:
            continue
        pair, g = tag
        acc[pair] = G.mul(acc.get(pair, G.identity), G.power(g, int(c)))
    vertex_of = {i: i + 1 for i in range(len(D.subgroups))}
    graph = _complete_graph(len(D.subgroups))
    values: dict[tuple[int, int], int] = {}
    for (i, j), a in acc.items():
        # coordinate block i receives +a, block j receives -a
        values[(vertex_of[j], vertex_of[i])] = a
        values[(vertex_of[i], vertex_of[j])] = G.inv(a)
    flow = GroupFlow(graph, G, values)
    verdict = detect_leak(flow)
    expected_vertex = vertex_of[D.containing_index(gamma)]
    if (verdict.kind != LeakVerdict.LEAKS_AT or verdict.vertex != expected_vertex
            or verdict.value != gamma):
        raise InternalInvariantError("kernel witness flow failed re-certification")
    return graph, flow


def _complete_graph(n: int) -> Graph:
    return named_graph(f"complete:{n}") if n >= 1 else Graph((), frozenset())


def _greedy_subfamily(D: DeltaPresentation, gamma: int, target: np.ndarray):
    """Smallest prefix family of subgroups whose relation rows already
    express the target vector; keeps the tracked solve instance small."""
    igamma = D.containing_index(gamma)
    Hg = D.subgroups[igamma]
    rest = [i for i in range(len(D.subgroups)) if i != igamma]
    rest.sort(key=lambda i: (-len(D.subgroups[i]._member_set & Hg._member_set), i))
    order_row_of: dict[int, list[np.ndarray]] = {}
    for col, (i, k) in enumerate(D.generator_index):
        row = np.zeros(D.ncols, dtype=np.int64)
        row[col] = D.bases[i].orders[k]
        order_row_of.setdefault(i, []).append(row)
    pair_rows_of: dict[tuple[int, int], list[tuple[np.ndarray, int]]] = {}
    for (pair, g), row in zip(D.pair_rows, D.relations[D.ncols:]):
        pair_rows_of.setdefault(pair, []).append((np.asarray(row, dtype=np.int64), g))
    incremental = HowellForm(D.ncols, D.modulus)
    registry: list[tuple[np.ndarray, Optional[tuple[tuple[int, int], int]]]] = []

    def add_subgroup(i: int, chosen: list[int]) -> None:
        for row in order_row_of.get(i, []):
            incremental.add_row(row)
            registry.append((row, None))
        for j in chosen:
            pair = (min(i, j), max(i, j))
            for row, g in pair_rows_of.get(pair, []):
                incremental.add_row(row)
                registry.append((row, (pair, g)))

    chosen: list[int] = []
    add_subgroup(igamma, chosen)
    chosen.append(igamma)
    while not incremental.contains(target):
        if not rest:
            raise InternalInvariantError("full family does not express a certified member")
        nxt = rest.pop(0)
        add_subgroup(nxt, chosen)
        chosen.append(nxt)
    return chosen, registry
