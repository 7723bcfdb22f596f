"""Group-valued flows on graphs.

A flow assigns a group element to each ordered vertex pair, skew-symmetric
(f(u,v) = f(v,u)^-1) and identity off the edge set.  This module covers
validation, tractability, excess and leak detection, the two flows carried
by the complete-bipartite and complete-graph examples, flow transport
through subgraphs and edge un-contractions, leak synthesis for non-planar
graphs, the face-walk conjugation transform, and a tree solver that
generates conserving flows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .errors import (
    BridgeEdge,
    EdgeMissing,
    GraphIsPlanar,
    InternalInvariantError,
    InvalidFlow,
    NotPlanarEmbedding,
    NotSubgraph,
    NotTractable,
)
from .graphs import (
    Graph,
    MinorWitness,
    Vertex,
    bridges,
    components,
    contract,
    contract_edge,
    edge_key,
    graph_from,
    is_forest,
    is_subgraph,
    named_graph,
    vkey,
)
from .groups import FiniteGroup, conjugacy_class_id, es_group
from .planar import RotationSystem, euler_planar_check, test_planarity


class GroupFlow:
    """A map from ordered vertex pairs to group elements; unset pairs are
    the identity.  Instances may violate the flow axioms; ``validate_flow``
    reports the first violation."""

    def __init__(self, graph: Graph, group: FiniteGroup,
                 values: Mapping[tuple[Vertex, Vertex], int]):
        self.graph = graph
        self.group = group
        self.values = {
            (u, v): int(g) for (u, v), g in values.items() if int(g) != group.identity
        }

    @classmethod
    def skew(cls, graph: Graph, group: FiniteGroup,
             one_direction: Mapping[tuple[Vertex, Vertex], int]) -> "GroupFlow":
        """Build a flow from one value per pair, filling in inverses."""
        values: dict[tuple[Vertex, Vertex], int] = {}
        for (u, v), g in one_direction.items():
            g = int(g)
            rev = values.get((v, u))
            if rev is not None and rev != group.inv(g):
                raise InvalidFlow(f"conflicting values given for ({u},{v}) and ({v},{u})")
            values[(u, v)] = g
            values.setdefault((v, u), group.inv(g))
        return cls(graph, group, values)

    def value(self, u: Vertex, v: Vertex) -> int:
        return self.values.get((u, v), self.group.identity)

    def incident_values(self, v: Vertex) -> list[int]:
        """Values flowing into v from its neighbours, in ascending neighbour order."""
        return [self.value(u, v) for u in self.graph.neighbors(v)]

    def support_pairs(self) -> list[tuple[Vertex, Vertex]]:
        return sorted(self.values, key=lambda p: (vkey(p[0]), vkey(p[1])))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupFlow):
            return NotImplemented
        return (self.graph == other.graph and self.group is other.group
                and self.values == other.values)

    def __repr__(self) -> str:
        return f"GroupFlow(n={self.graph.n}, support={len(self.values)}, group={self.group.spec})"


@dataclass(frozen=True)
class FlowViolation:
    kind: str                      # "skew" | "support"
    pair: tuple[Vertex, Vertex]

    def __str__(self) -> str:
        return f"{self.kind} violation at pair {self.pair}"


def validate_flow(f: GroupFlow) -> Optional[FlowViolation]:
    """None if both flow axioms hold, else the first violating pair."""
    for (u, v) in f.support_pairs():
        if not f.graph.has_edge(u, v):
            return FlowViolation("support", (u, v))
        if f.value(v, u) != f.group.inv(f.value(u, v)):
            return FlowViolation("skew", (u, v))
    return None


def _require_valid(f: GroupFlow) -> None:
    violation = validate_flow(f)
    if violation is not None:
        raise InvalidFlow(str(violation))


def is_tractable(f: GroupFlow) -> tuple[bool, Optional[Vertex]]:
    """True iff the values entering each vertex commute pairwise (then the
    subgroup they generate is abelian); on failure, the witness vertex."""
    for v in f.graph.vertices:
        vals = [g for g in f.incident_values(v) if g != f.group.identity]
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                if not f.group.commutes(vals[i], vals[j]):
                    return False, v
    return True, None


def excess(f: GroupFlow, v: Vertex) -> int:
    """Product of the values flowing into v.  Requires tractability, which
    makes the product independent of the multiplication order."""
    ok, bad = is_tractable(f)
    if not ok:
        raise NotTractable(bad)
    return f.group.prod(f.incident_values(v))


def excess_map(f: GroupFlow) -> dict[Vertex, int]:
    ok, bad = is_tractable(f)
    if not ok:
        raise NotTractable(bad)
    return {v: f.group.prod(f.incident_values(v)) for v in f.graph.vertices}


@dataclass(frozen=True)
class LeakVerdict:
    kind: str                                 # one of the four names below
    vertex: Optional[Vertex] = None
    value: Optional[int] = None
    vertices: Optional[tuple[Vertex, ...]] = None

    NOT_TRACTABLE = "NotTractable"
    CONSERVING = "ConservingEverywhere"
    LEAKS_AT = "LeaksAt"
    MULTIPLE = "MultipleNonConserving"


def detect_leak(f: GroupFlow) -> LeakVerdict:
    """Classify a valid flow: tractable + conserving everywhere, leaking at
    exactly one vertex, or failing at several."""
    _require_valid(f)
    ok, bad = is_tractable(f)
    if not ok:
        return LeakVerdict(LeakVerdict.NOT_TRACTABLE, vertex=bad)
    exc = excess_map(f)
    off = [v for v in f.graph.vertices if exc[v] != f.group.identity]
    if not off:
        return LeakVerdict(LeakVerdict.CONSERVING)
    if len(off) == 1:
        v = off[0]
        return LeakVerdict(LeakVerdict.LEAKS_AT, vertex=v, value=exc[v])
    return LeakVerdict(LeakVerdict.MULTIPLE, vertices=tuple(off))


def detect_binary_leak(f: GroupFlow, u: Vertex, v: Vertex) -> Optional[int]:
    """e(u)*e(v) when f is tractable and conserving away from {u, v};
    None otherwise.  A binary leak is present exactly when the returned
    value is not the identity."""
    if u == v:
        raise InvalidFlow("binary leak needs two distinct vertices")
    vertex_set = set(f.graph.vertices)
    if u not in vertex_set or v not in vertex_set:
        raise InvalidFlow(f"({u!r}, {v!r}) are not both vertices of the graph")
    _require_valid(f)
    ok, _ = is_tractable(f)
    if not ok:
        return None
    exc = excess_map(f)
    for w in f.graph.vertices:
        if w not in (u, v) and exc[w] != f.group.identity:
            return None
    return f.group.mul(exc[u], exc[v])


def round_flow(f: GroupFlow, R: RotationSystem, v: Vertex) -> int:
    """Conjugacy class id of the rotation-ordered product of incoming values.

    Starting at a different neighbour cyclically permutes the factors, so
    the class does not depend on the starting point; an isolated vertex
    gives the identity's class.
    """
    if R.graph != f.graph:
        raise InvalidFlow("rotation system is for a different graph")
    order = R.rotation[v]
    product = f.group.prod(f.value(u, v) for u in order)
    return conjugacy_class_id(f.group, product)


# -- the worked examples -----------------------------------------------------------


_K33_WORDS = {
    (1, 4): "x1", (1, 5): "x2", (1, 6): "x1*x2",
    (2, 4): "x4", (2, 5): "x3", (2, 6): "x4*x3",
    (3, 4): "x1*x4", (3, 5): "x2*x3", (3, 6): "x1*x4*x2*x3",
}

_K5_WORDS = {
    (1, 2): "x1", (1, 3): "x2", (1, 4): "x3", (1, 5): "x1*x2*x3",
    (2, 3): "x6", (2, 4): "x5", (2, 5): "x1*x6*x5",
    (3, 4): "x4", (3, 5): "x2*x6*x4",
    (4, 5): "x3*x5*x4",
}


def example_flow_k33() -> tuple[Graph, GroupFlow]:
    """The leaking es:2 flow on the complete bipartite graph K3,3."""
    graph = named_graph("complete_bipartite:3,3")
    group = es_group(2)
    values = {pair: group.parse_word(word) for pair, word in _K33_WORDS.items()}
    return graph, GroupFlow.skew(graph, group, values)


def example_flow_k5() -> tuple[Graph, GroupFlow]:
    """The leaking es:3 flow on the complete graph K5."""
    graph = named_graph("complete:5")
    group = es_group(3)
    values = {pair: group.parse_word(word) for pair, word in _K5_WORDS.items()}
    return graph, GroupFlow.skew(graph, group, values)


def example_flow_k33_minus() -> tuple[Graph, GroupFlow]:
    """The K3,3 example with the edge {3,6} removed: a binary leak at 3 and 6."""
    graph, flow = example_flow_k33()
    from .graphs import remove_edge
    host = remove_edge(graph, 3, 6)
    values = {p: g for p, g in flow.values.items() if set(p) != {3, 6}}
    return host, GroupFlow(host, flow.group, values)


# -- transport ----------------------------------------------------------------------


def lift_through_subgraph(G: Graph, H: Graph, g: GroupFlow) -> GroupFlow:
    """Extend a flow on a subgraph H to all of G by the identity elsewhere."""
    if g.graph != H:
        raise NotSubgraph("flow is not on the given subgraph")
    if not is_subgraph(H, G):
        raise NotSubgraph("H is not a subgraph of G")
    return GroupFlow(G, g.group, dict(g.values))


def relabel_flow(f: GroupFlow, mapping: Mapping[Vertex, Vertex], target: Graph) -> GroupFlow:
    """Transport a flow along an injective vertex map into a supergraph of
    the image."""
    values = {(mapping[u], mapping[v]): g for (u, v), g in f.values.items()}
    for (u, v) in values:
        if not target.has_edge(u, v):
            raise NotSubgraph(f"image pair ({u},{v}) is not an edge of the target")
    return GroupFlow(target, f.group, values)


def uncontract_flow(G: Graph, e: tuple[Vertex, Vertex], f: GroupFlow) -> GroupFlow:
    """Pull a tractable flow on G/e back to G.

    With e = {a, b}, X = N(a) minus e and Y = N(b) minus (e union X), the
    values into the contracted vertex are split among a and b, and the new
    edge value g(a,b) = prod over u in X of g(u,a) restores conservation at
    a while moving the excess of the contracted vertex to b.
    """
    a, b = e
    if not G.has_edge(a, b):
        raise EdgeMissing(e)
    contracted, quotient = contract_edge(G, (a, b))
    if f.graph != contracted:
        raise NotSubgraph("flow is not on the contraction of G along e")
    ok, bad = is_tractable(f)
    if not ok:
        raise NotTractable(bad)
    group = f.group
    merged = quotient[a]
    X = [u for u in G.neighbors(a) if u not in (a, b)]
    Y = [v for v in G.neighbors(b) if v not in (a, b) and v not in X]
    values: dict[tuple[Vertex, Vertex], int] = {}
    for (u, v), g in f.values.items():
        if u != merged and v != merged:
            values[(u, v)] = g
    for u in X:
        g = f.value(u, merged)
        values[(u, a)] = g
        values[(a, u)] = group.inv(g)
    for v in Y:
        g = f.value(merged, v)
        values[(b, v)] = g
        values[(v, b)] = group.inv(g)
    gab = group.prod(values.get((u, a), group.identity) for u in X)
    values[(a, b)] = gab
    values[(b, a)] = group.inv(gab)
    result = GroupFlow(G, group, values)
    _check_uncontract_contract(f, result, merged, a, b)
    return result


def _check_uncontract_contract(f: GroupFlow, g: GroupFlow, merged: Vertex,
                               a: Vertex, b: Vertex) -> None:
    ok, bad = is_tractable(g)
    if not ok:
        raise InternalInvariantError(f"uncontracted flow lost tractability at {bad}")
    before = excess_map(f)
    after = excess_map(g)
    ident = g.group.identity
    if after[a] != ident:
        raise InternalInvariantError("uncontraction left a non-conserving split vertex")
    if after[b] != before[merged]:
        raise InternalInvariantError("uncontraction did not transfer the excess")
    for v in g.graph.vertices:
        if v in (a, b):
            continue
        if after[v] != before[v]:
            raise InternalInvariantError(f"uncontraction changed the excess at {v}")


# -- leak synthesis ------------------------------------------------------------------


def synthesize_leaking_flow(G: Graph) -> GroupFlow:
    """Build a leaking flow on a non-planar graph.

    Pipeline: Kuratowski witness -> example flow on the model -> transport
    into the contraction of the witness forest -> un-contract the forest
    edges leaf-first -> a flow on G that detect_leak certifies.
    """
    result = test_planarity(G)
    if isinstance(result, RotationSystem):
        raise GraphIsPlanar("planar graphs admit no leaking flow")
    witness: MinorWitness = result
    if witness.model.n == 5:
        _, model_flow = example_flow_k5()
    else:
        _, model_flow = example_flow_k33()

    forest_graph = graph_from(G.vertices, witness.forest_edges)
    contracted, quotient = contract(G, forest_graph)
    embed = {x: quotient[next(iter(witness.branch_sets[x]))] for x in witness.model.vertices}
    flow = relabel_flow(model_flow, embed, contracted)

    chain = []  # (graph before, edge contracted) pairs, applied in order
    current = G
    for u, v in _leaf_first_order(witness.forest_edges):
        image = (_image_vertex(chain, u), _image_vertex(chain, v))
        chain.append((current, image))
        current, _ = contract_edge(current, image)
    if current != contracted:
        raise InternalInvariantError("edge-by-edge contraction disagrees with the forest contraction")
    for before, e in reversed(chain):
        flow = uncontract_flow(before, e, flow)
    verdict = detect_leak(flow)
    if verdict.kind != LeakVerdict.LEAKS_AT or verdict.value == flow.group.identity:
        raise InternalInvariantError("synthesized flow does not leak")
    return flow


def _image_vertex(chain, v: Vertex) -> Vertex:
    """Follow the min-label merges recorded so far."""
    for _, (a, b) in chain:
        if v == a or v == b:
            v = a if vkey(a) < vkey(b) else b
    return v


def _leaf_first_order(forest_edges) -> list[tuple[Vertex, Vertex]]:
    """Order forest edges so each one, at its turn, has a leaf endpoint."""
    remaining = set(forest_edges)
    order = []
    while remaining:
        degree: dict[Vertex, int] = {}
        for u, v in remaining:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        leaf_edges = sorted(
            (e for e in remaining if degree[e[0]] == 1 or degree[e[1]] == 1),
            key=lambda e: (vkey(e[0]), vkey(e[1])),
        )
        e = leaf_edges[0]
        order.append(e)
        remaining.remove(e)
    return order


# -- the conjugation transform -------------------------------------------------------


def conjugate_along_walk(f: GroupFlow, R: RotationSystem,
                         edge: tuple[Vertex, Vertex]) -> GroupFlow:
    """Zero out a non-bridge edge while preserving every round-flow class.

    With gamma = f(v,w) and b the indicator of directed edges on the face
    walk starting (v,w), the new flow is
    (s,t) -> gamma^b(t,s) * f(s,t) * gamma^-b(s,t).
    """
    v, w = edge
    if R.graph != f.graph:
        raise InvalidFlow("rotation system is for a different graph")
    if not euler_planar_check(R):
        raise NotPlanarEmbedding("rotation system fails the Euler criterion")
    if not f.graph.has_edge(v, w):
        raise EdgeMissing(edge)
    if edge_key(v, w) in bridges(f.graph):
        raise BridgeEdge(edge)
    walk_darts = set(_walk_from(R, (v, w)))
    if (w, v) in walk_darts:
        raise InternalInvariantError("face walk of a non-bridge traverses both directions")
    group = f.group
    gamma = f.value(v, w)
    values: dict[tuple[Vertex, Vertex], int] = {}
    for a, b in f.graph.edges:
        for u, x in ((a, b), (b, a)):
            g = f.value(u, x)
            if (x, u) in walk_darts:
                g = group.mul(gamma, g)
            if (u, x) in walk_darts:
                g = group.mul(g, group.inv(gamma))
            values[(u, x)] = g
    result = GroupFlow(f.graph, group, values)
    if result.value(v, w) != group.identity:
        raise InternalInvariantError("conjugation did not zero the chosen edge")
    return result


def _walk_from(R: RotationSystem, start: tuple[Vertex, Vertex]) -> list[tuple[Vertex, Vertex]]:
    darts = [start]
    cur = start
    while True:
        u, v = cur
        cur = (v, R.next_neighbor(v, u))
        if cur == start:
            return darts
        darts.append(cur)


# -- conserving-flow generator -------------------------------------------------------


def solve_tree_flow(G: Graph, T: Graph, root: Vertex,
                    boundary: Mapping[tuple[Vertex, Vertex], int],
                    group: FiniteGroup) -> tuple[Optional[GroupFlow], Optional[Vertex]]:
    """Complete boundary values on non-tree edges to a flow conserving at
    every vertex except possibly the root.

    Processing vertices leaf-to-root, each tree-edge value toward the
    parent is chosen to cancel the child's incident product (ascending
    neighbour order, parent last).  Returns (flow, None) when the result is
    tractable, else (None, failing vertex).
    """
    if set(T.vertices) != set(G.vertices) or not T.edges <= G.edges:
        raise NotSubgraph("T must be a spanning subgraph of G")
    if not is_forest(T) or len(components(T)) != 1:
        raise NotSubgraph("T must be a spanning tree")
    if root not in set(G.vertices):
        raise InvalidFlow(f"root {root!r} is not a vertex")
    values: dict[tuple[Vertex, Vertex], int] = {}
    for (u, v), g in boundary.items():
        if edge_key(u, v) in T.edges or not G.has_edge(u, v):
            raise InvalidFlow(f"boundary pair ({u},{v}) is not a non-tree edge")
        g = int(g)
        rev = values.get((v, u))
        if rev is not None and rev != group.inv(g):
            raise InvalidFlow(f"boundary is not skew-symmetric at ({u},{v})")
        values[(u, v)] = g
        values.setdefault((v, u), group.inv(g))
    parent: dict[Vertex, Optional[Vertex]] = {root: None}
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
        prod = group.identity
        for u in G.neighbors(v):
            if u == p:
                continue
            prod = group.mul(prod, values.get((u, v), group.identity))
        values[(p, v)] = group.inv(prod)
        values[(v, p)] = prod
    flow = GroupFlow(G, group, values)
    ok, bad = is_tractable(flow)
    if not ok:
        return None, bad
    return flow, None
