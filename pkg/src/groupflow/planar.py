"""Certified planarity and extra-planarity.

An embedding is a rotation system (cyclic neighbour order per vertex)
accepted exactly when every connected component satisfies Euler's formula
V - E + F = 2, faces being the orbits of the next-edge successor map.
``test_planarity`` always returns one of two independently checkable
certificates: such a rotation system, or a K5/K3,3 minor witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import networkx as nx

from .errors import InternalInvariantError, NotPlanarEmbedding, ParseError
from .graphs import (
    Graph,
    MinorWitness,
    Vertex,
    add_edge,
    bridges,
    components,
    edge_key,
    graph_from,
    induced_subgraph,
    named_graph,
    verify_minor,
    vkey,
)


@dataclass(frozen=True)
class RotationSystem:
    """A cyclic ordering of the neighbours of every vertex."""

    graph: Graph
    rotation: dict[Vertex, tuple[Vertex, ...]]

    def __post_init__(self):
        rot = {}
        for v in self.graph.vertices:
            order = tuple(self.rotation.get(v, ()))
            if set(order) != set(self.graph.neighbors(v)) or len(order) != len(set(order)):
                raise ParseError(f"rotation at {v!r} is not a cyclic order of its neighbours")
            rot[v] = _canonical_rotation(order)
        object.__setattr__(self, "rotation", rot)

    def next_neighbor(self, v: Vertex, u: Vertex) -> Vertex:
        order = self.rotation[v]
        i = order.index(u)
        return order[(i + 1) % len(order)]


def _canonical_rotation(order: tuple[Vertex, ...]) -> tuple[Vertex, ...]:
    if not order:
        return order
    i = min(range(len(order)), key=lambda k: vkey(order[k]))
    return order[i:] + order[:i]


@dataclass(frozen=True)
class BoundaryWalk:
    """A closed face walk (x0, ..., xn) with xn = x0, following the rule
    x_{i+2} = rotation(x_{i+1})(x_i); no directed edge repeats."""

    sequence: tuple[Vertex, ...]

    @property
    def length(self) -> int:
        return len(self.sequence) - 1

    def directed_edges(self) -> list[tuple[Vertex, Vertex]]:
        return list(zip(self.sequence, self.sequence[1:]))


def _face_orbit(R: RotationSystem, start: tuple[Vertex, Vertex]) -> list[tuple[Vertex, Vertex]]:
    orbit = [start]
    cur = start
    while True:
        u, v = cur
        cur = (v, R.next_neighbor(v, u))
        if cur == start:
            return orbit
        orbit.append(cur)


def faces(R: RotationSystem) -> list[BoundaryWalk]:
    """Decompose the directed edges into boundary walks.

    The successor map (u, v) -> (v, rotation(v)(u)) is a bijection on the
    directed edges; its cycles are the returned walks.  Every directed edge
    occurs in exactly one walk, so the walk lengths add up to 2|E|.
    """
    darts = set()
    for u, v in R.graph.edges:
        darts.add((u, v))
        darts.add((v, u))
    remaining = set(darts)
    walks = []
    for start in sorted(darts, key=lambda d: (vkey(d[0]), vkey(d[1]))):
        if start not in remaining:
            continue
        orbit = _face_orbit(R, start)
        for dart in orbit:
            remaining.discard(dart)
        seq = tuple(d[0] for d in orbit) + (orbit[0][0],)
        walks.append(BoundaryWalk(seq))
    return walks


def euler_planar_check(R: RotationSystem) -> bool:
    """True iff every component with at least one edge has V - E + F = 2."""
    walk_comp: dict[Vertex, int] = {}
    comps = components(R.graph)
    for i, comp in enumerate(comps):
        for v in comp:
            walk_comp[v] = i
    face_count = [0] * len(comps)
    for walk in faces(R):
        face_count[walk_comp[walk.sequence[0]]] += 1
    for i, comp in enumerate(comps):
        sub = induced_subgraph(R.graph, comp)
        if sub.m == 0:
            continue
        if len(comp) - sub.m + face_count[i] != 2:
            return False
    return True


# -- planarity dichotomy ---------------------------------------------------------


def _nx_graph(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(G.vertices)
    H.add_edges_from(G.edges)
    return H


def _nx_is_planar(G: Graph) -> bool:
    return nx.check_planarity(_nx_graph(G), counterexample=False)[0]


def _embedding(G: Graph) -> Optional[RotationSystem]:
    ok, emb = nx.check_planarity(_nx_graph(G), counterexample=False)
    if not ok:
        return None
    data = emb.get_data()
    return RotationSystem(G, {v: tuple(data.get(v, ())) for v in G.vertices})


def _kuratowski_witness(G: Graph) -> MinorWitness:
    """Extract a verified K5 or K3,3 minor from a non-planar graph.

    Delete removable edges until the graph is edge-minimal non-planar; what
    is left (ignoring isolated vertices) is a subdivision of K5 or K3,3.
    Its degree->=3 vertices become the branch vertices and every chain's
    interior is folded into one endpoint's branch set.
    """
    edges = set(G.edges)
    for e in sorted(edges, key=lambda e: (vkey(e[0]), vkey(e[1]))):
        trial = Graph(G.vertices, frozenset(edges - {e}))
        if not _nx_is_planar(trial):
            edges.remove(e)
    core = graph_from({v for e in edges for v in e}, edges)
    branch = [v for v in core.vertices if core.degree(v) >= 3]
    degs = sorted(core.degree(v) for v in branch)
    if degs == [4] * 5:
        model = named_graph("complete:5")
    elif degs == [3] * 6:
        model = named_graph("complete_bipartite:3,3")
    else:
        raise InternalInvariantError(f"unexpected subdivision degrees {degs}")
    branch_set: dict[Vertex, set[Vertex]] = {b: {b} for b in branch}
    forest: set[tuple[Vertex, Vertex]] = set()
    model_edges: set[tuple[Vertex, Vertex]] = set()
    seen_darts: set[tuple[Vertex, Vertex]] = set()
    for b in branch:
        for w in core.neighbors(b):
            if (b, w) in seen_darts:
                continue
            chain = [b, w]
            while core.degree(chain[-1]) == 2:
                nxt = next(x for x in core.neighbors(chain[-1]) if x != chain[-2])
                chain.append(nxt)
            seen_darts.add((b, w))
            seen_darts.add((chain[-1], chain[-2]))
            other = chain[-1]
            model_edges.add(edge_key(b, other))
            interior = chain[1:-1]
            owner = b if vkey(b) < vkey(other) else other
            if owner is other:
                interior = interior[::-1]
                path = [other] + interior
            else:
                path = [b] + interior
            branch_set[owner].update(interior)
            forest.update(edge_key(x, y) for x, y in zip(path, path[1:]))
    if model.n == 5:
        label_of = dict(zip(sorted(branch, key=vkey), range(1, 6)))
    else:
        side_a = [branch[0]]
        side_b = []
        for v in branch[1:]:
            if edge_key(v, branch[0]) in model_edges:
                side_b.append(v)
            else:
                side_a.append(v)
        side_a, side_b = sorted(side_a, key=vkey), sorted(side_b, key=vkey)
        if vkey(side_b[0]) < vkey(side_a[0]):
            side_a, side_b = side_b, side_a
        label_of = {v: i + 1 for i, v in enumerate(side_a)}
        label_of.update({v: i + 4 for i, v in enumerate(side_b)})
    witness = MinorWitness(
        model,
        {label_of[b]: frozenset(branch_set[b]) for b in branch},
        frozenset(forest),
    )
    if not verify_minor(G, witness):
        raise InternalInvariantError("extracted minor witness failed verification")
    return witness


PlanarityResult = Union[RotationSystem, MinorWitness]


def test_planarity(G: Graph) -> PlanarityResult:
    """Certified dichotomy: an Euler-checked rotation system, or a verified
    K5/K3,3 minor witness.  Exactly one of the two is returned."""
    R = _embedding(G)
    if R is not None:
        if not euler_planar_check(R):
            raise InternalInvariantError("embedding failed the Euler check")
        return R
    return _kuratowski_witness(G)


def walk_bridge_check(R: RotationSystem, walk: BoundaryWalk) -> list[tuple[Vertex, Vertex]]:
    """Edges traversed in both directions within a single face walk.

    In a planar embedding these are exactly bridges; that containment is
    asserted before returning.
    """
    if not euler_planar_check(R):
        raise NotPlanarEmbedding("rotation system fails the Euler criterion")
    all_faces = faces(R)
    target = frozenset(walk.directed_edges())
    if not any(frozenset(f.directed_edges()) == target for f in all_faces):
        raise ParseError("walk is not a face of this rotation system")
    darts = walk.directed_edges()
    dart_set = set(darts)
    found = sorted(
        {edge_key(u, v) for (u, v) in darts if (v, u) in dart_set},
        key=lambda e: (vkey(e[0]), vkey(e[1])),
    )
    graph_bridges = bridges(R.graph)
    for e in found:
        if e not in graph_bridges:
            raise InternalInvariantError(f"doubled walk edge {e} is not a bridge")
    return found


# -- extra-planarity --------------------------------------------------------------


@dataclass(frozen=True)
class ExtraPlanarVerdict:
    """Either every single-edge addition stays planar (with one embedding per
    vertex pair), or a failing pair together with its Kuratowski witness
    against the augmented graph."""

    extra_planar: bool
    embeddings: Optional[dict[tuple[Vertex, Vertex], RotationSystem]] = None
    pair: Optional[tuple[Vertex, Vertex]] = None
    witness: Optional[MinorWitness] = None


def _vertex_pairs(G: Graph) -> list[tuple[Vertex, Vertex]]:
    vs = G.vertices
    return [
        (vs[i], vs[j])
        for i in range(len(vs))
        for j in range(i + 1, len(vs))
    ]


def extra_planar(G: Graph) -> ExtraPlanarVerdict:
    """Check that G plus any single edge is planar.

    Pairs that are already adjacent reuse G's own embedding; the first
    failing pair (in canonical order) is reported with its witness.
    """
    pairs = _vertex_pairs(G)
    base = test_planarity(G)
    if isinstance(base, MinorWitness):
        pair = pairs[0]
        # the witness lives inside G, hence also inside G plus the extra edge
        return ExtraPlanarVerdict(False, pair=pair, witness=base)
    embeddings: dict[tuple[Vertex, Vertex], RotationSystem] = {}
    for pair in pairs:
        if G.has_edge(*pair):
            embeddings[pair] = base
            continue
        result = test_planarity(add_edge(G, *pair))
        if isinstance(result, MinorWitness):
            return ExtraPlanarVerdict(False, pair=pair, witness=result)
        embeddings[pair] = result
    return ExtraPlanarVerdict(True, embeddings=embeddings)
