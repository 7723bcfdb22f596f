"""Shared test helpers: independent oracles and instance generators.

Everything here deliberately avoids the library's own search code paths:
the minor oracle enumerates connected-set families directly, the bridge
oracle deletes edges and recounts components, and the abelian-subgroup
oracle walks the subgroup lattice.
"""

from __future__ import annotations

import itertools
import random

from groupflow.flows import GroupFlow
from groupflow.graphs import (
    Graph,
    add_edge,
    components,
    edge_key,
    graph_from,
    induced_subgraph,
    vkey,
)
from groupflow.groups import FiniteGroup, Subgroup
from groupflow.planar import RotationSystem, test_planarity


# -- graph generators ---------------------------------------------------------


def all_labeled_graphs(n: int):
    """Every labeled graph on vertices 1..n."""
    vertices = list(range(1, n + 1))
    pairs = list(itertools.combinations(vertices, 2))
    for bits in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
        yield graph_from(vertices, edges)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    vertices = list(range(1, n + 1))
    edges = [e for e in itertools.combinations(vertices, 2) if rng.random() < p]
    return graph_from(vertices, edges)


def random_connected_planar_graph(rng: random.Random, n: int, extra: int) -> Graph:
    """Random tree plus up to `extra` chords that keep the graph planar."""
    vertices = list(range(1, n + 1))
    edges = []
    for v in vertices[1:]:
        edges.append((rng.randint(1, v - 1), v))
    G = graph_from(vertices, edges)
    candidates = [e for e in itertools.combinations(vertices, 2)
                  if edge_key(*e) not in G.edges]
    rng.shuffle(candidates)
    added = 0
    for u, v in candidates:
        if added == extra:
            break
        candidate = add_edge(G, u, v)
        if isinstance(test_planarity(candidate), RotationSystem):
            G = candidate
            added += 1
    return G


def random_spanning_tree(rng: random.Random, G: Graph) -> Graph:
    """Uniform-ish spanning tree by randomized growth (G must be connected)."""
    start = rng.choice(G.vertices)
    seen = {start}
    edges = []
    frontier = [(start, w) for w in G.neighbors(start)]
    while frontier:
        i = rng.randrange(len(frontier))
        u, v = frontier.pop(i)
        if v in seen:
            continue
        seen.add(v)
        edges.append((u, v))
        frontier.extend((v, w) for w in G.neighbors(v) if w not in seen)
    return graph_from(G.vertices, edges)


# -- independent oracles --------------------------------------------------------


def bridge_oracle(G: Graph) -> frozenset:
    """An edge is a bridge iff deleting it increases the component count."""
    base = len(components(G))
    out = set()
    for e in G.edges:
        H = Graph(G.vertices, G.edges - {e})
        if len(components(H)) > base:
            out.add(e)
    return frozenset(out)


def _connected_sets(G: Graph):
    vertices = list(G.vertices)
    for r in range(1, len(vertices) + 1):
        for sub in itertools.combinations(vertices, r):
            if len(components(induced_subgraph(G, sub))) == 1:
                yield frozenset(sub)


def minor_oracle(G: Graph, M: Graph) -> bool:
    """Brute-force minor test: search for pairwise-disjoint connected branch
    sets covering every model edge, assigning model vertices one at a time."""
    if M.n > G.n or M.m > G.m:
        return False
    candidate_sets = list(_connected_sets(G))
    model_order = sorted(M.vertices, key=lambda x: (-M.degree(x), vkey(x)))
    assigned: dict = {}

    def feasible(level: int, used: frozenset) -> bool:
        if level == len(model_order):
            return True
        x = model_order[level]
        required = [y for y in M.neighbors(x) if y in assigned]
        remaining = len(model_order) - level - 1
        for bset in candidate_sets:
            if bset & used or len(used) + len(bset) + remaining > G.n:
                continue
            if all(_adjacent(G, bset, assigned[y]) for y in required):
                assigned[x] = bset
                if feasible(level + 1, used | bset):
                    return True
                del assigned[x]
        return False

    return feasible(0, frozenset())


def _adjacent(G: Graph, A: frozenset, B: frozenset) -> bool:
    return any(w in B for u in A for w in G.neighbors(u))


def abelian_subgroup_lattice(G: FiniteGroup) -> set:
    """All abelian subgroups, by closure walks from singletons upward."""
    from groupflow.groups import closure

    found: set[tuple[int, ...]] = set()
    frontier = []
    for g in G.elements():
        sub = closure(G, [g])
        if sub.is_abelian and sub.members not in found:
            found.add(sub.members)
            frontier.append(sub)
    while frontier:
        sub = frontier.pop()
        for g in G.elements():
            if g in sub:
                continue
            bigger = closure(G, list(sub.members) + [g])
            if bigger.is_abelian and bigger.members not in found:
                found.add(bigger.members)
                frontier.append(Subgroup(G, bigger.members))
    return found


def maximal_abelian_oracle(G: FiniteGroup) -> set:
    """Maximal elements of the abelian subgroup lattice."""
    subs = abelian_subgroup_lattice(G)
    out = set()
    for members in subs:
        mset = set(members)
        if not any(mset < set(other) for other in subs):
            out.add(members)
    return out


# -- flow helpers -----------------------------------------------------------------


def random_flow(rng: random.Random, G: Graph, group: FiniteGroup) -> GroupFlow:
    values = {e: rng.randrange(group.order) for e in G.sorted_edges()}
    return GroupFlow.skew(G, group, values)


def two_root_tree_flow(rng: random.Random, G: Graph, T: Graph, group: FiniteGroup,
                       root, free_vertex, boundary):
    """Like solve_tree_flow, but conservation is not enforced at one extra
    vertex, whose parent edge gets a random value instead."""
    from groupflow.flows import GroupFlow, is_tractable
    from groupflow.graphs import is_forest

    assert is_forest(T) and len(components(T)) == 1
    values = {}
    for (u, v), g in boundary.items():
        values[(u, v)] = g
        values[(v, u)] = group.inv(g)
    parent = {root: None}
    depth = {root: 0}
    order = [root]
    queue = [root]
    while queue:
        x = queue.pop(0)
        for y in T.neighbors(x):
            if y not in parent:
                parent[y] = x
                depth[y] = depth[x] + 1
                order.append(y)
                queue.append(y)
    for v in sorted(order, key=lambda v: (-depth[v], vkey(v))):
        if v == root:
            continue
        p = parent[v]
        if v == free_vertex:
            g = rng.randrange(group.order)
            values[(p, v)] = g
            values[(v, p)] = group.inv(g)
            continue
        prod = group.identity
        for u in G.neighbors(v):
            if u == p:
                continue
            prod = group.mul(prod, values.get((u, v), group.identity))
        values[(p, v)] = group.inv(prod)
        values[(v, p)] = prod
    flow = GroupFlow(G, group, values)
    ok, _ = is_tractable(flow)
    return flow if ok else None


def compose_minor_witnesses(G: Graph, outer, inner):
    """Compose: inner certifies I <= H, outer certifies H <= G; the result
    certifies I <= G.  Used to test minor-relation transitivity."""
    from groupflow.graphs import MinorWitness

    branch_sets = {}
    forest = set()
    for x, inner_set in inner.branch_sets.items():
        combined = set()
        for y in inner_set:
            combined |= outer.branch_sets[y]
            forest |= {e for e in outer.forest_edges if e[0] in outer.branch_sets[y]}
        # connect the outer branch sets along inner's forest edges
        for (y1, y2) in inner.forest_edges:
            if y1 in inner_set and y2 in inner_set:
                link = _host_edge_between(G, outer.branch_sets[y1], outer.branch_sets[y2])
                forest.add(link)
        branch_sets[x] = frozenset(combined)
    return MinorWitness(inner.model, branch_sets, frozenset(forest))


def _host_edge_between(G: Graph, A: frozenset, B: frozenset):
    for u in sorted(A, key=vkey):
        for w in G.neighbors(u):
            if w in B:
                return edge_key(u, w)
    raise AssertionError("no host edge between adjacent branch sets")
