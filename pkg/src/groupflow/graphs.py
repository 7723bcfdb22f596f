"""Simple undirected graphs with contraction and minor search.

Vertices are opaque ordered tokens (ints or strings); canonical outputs
sort by token.  Minor containment is decided exactly at desk scale by a
branch-and-bound over connected branch sets, and every positive answer is
packaged as a :class:`MinorWitness` that ``verify_minor`` can check
independently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Union

from .errors import HostTooLarge, NotForest, NotSpanning, ParseError

Vertex = Union[int, str]

DEFAULT_HOST_BOUND = 16


def vkey(v: Vertex):
    """Total order over mixed int/str vertex tokens."""
    return (0, v, "") if isinstance(v, int) else (1, 0, str(v))


def edge_key(u: Vertex, v: Vertex) -> tuple[Vertex, Vertex]:
    if u == v:
        raise ParseError(f"loop at vertex {u!r}")
    return (u, v) if vkey(u) < vkey(v) else (v, u)


@dataclass(frozen=True)
class Graph:
    vertices: tuple[Vertex, ...]
    edges: frozenset[tuple[Vertex, Vertex]]

    @cached_property
    def adjacency(self) -> dict[Vertex, tuple[Vertex, ...]]:
        adj: dict[Vertex, list[Vertex]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns, key=vkey)) for v, ns in adj.items()}

    def neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        return self.adjacency[v]

    def degree(self, v: Vertex) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return u != v and edge_key(u, v) in self.edges

    def sorted_edges(self) -> list[tuple[Vertex, Vertex]]:
        return sorted(self.edges, key=lambda e: (vkey(e[0]), vkey(e[1])))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def graph_from(vertices: Iterable[Vertex], edges: Iterable[tuple[Vertex, Vertex]]) -> Graph:
    vs = tuple(sorted(set(vertices), key=vkey))
    vset = set(vs)
    es = set()
    for u, v in edges:
        if u not in vset or v not in vset:
            raise ParseError(f"edge ({u!r}, {v!r}) has an endpoint outside the vertex set")
        es.add(edge_key(u, v))
    return Graph(vs, frozenset(es))


def add_edge(G: Graph, u: Vertex, v: Vertex) -> Graph:
    return Graph(G.vertices, G.edges | {edge_key(u, v)})


def remove_edge(G: Graph, u: Vertex, v: Vertex) -> Graph:
    return Graph(G.vertices, G.edges - {edge_key(u, v)})


def induced_subgraph(G: Graph, vertices: Iterable[Vertex]) -> Graph:
    vs = set(vertices)
    return graph_from(vs, (e for e in G.edges if e[0] in vs and e[1] in vs))


def is_subgraph(H: Graph, G: Graph) -> bool:
    return set(H.vertices) <= set(G.vertices) and H.edges <= G.edges


def named_graph(name: str) -> Graph:
    """Canonical graphs on vertex labels 1..n.

    ``k5minus``/``k33minus`` drop the edge between the two lowest-labelled
    adjacent vertices (any choice gives an isomorphic graph).
    """
    name = name.strip().lower()
    if name.startswith("complete_bipartite:"):
        parts = name.split(":", 1)[1].split(",")
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(f"bad graph name {name!r}")
        a, b = int(parts[0]), int(parts[1])
        left = list(range(1, a + 1))
        right = list(range(a + 1, a + b + 1))
        return graph_from(left + right, [(u, v) for u in left for v in right])
    if name.startswith("complete:"):
        n = _named_int(name)
        return graph_from(range(1, n + 1), itertools.combinations(range(1, n + 1), 2))
    if name.startswith("path:"):
        n = _named_int(name)
        return graph_from(range(1, n + 1), [(i, i + 1) for i in range(1, n)])
    if name.startswith("cycle:"):
        n = _named_int(name)
        if n < 3:
            raise ParseError("cycle:n needs n >= 3")
        return graph_from(range(1, n + 1), [(i, i % n + 1) for i in range(1, n + 1)])
    if name == "petersen":
        outer = [(i, i % 5 + 1) for i in range(1, 6)]
        spokes = [(i, i + 5) for i in range(1, 6)]
        inner = [(i + 5, (i + 1) % 5 + 6) for i in range(1, 6)]
        return graph_from(range(1, 11), outer + spokes + inner)
    if name == "k5minus":
        g = named_graph("complete:5")
        return remove_edge(g, *g.sorted_edges()[0])
    if name == "k33minus":
        g = named_graph("complete_bipartite:3,3")
        return remove_edge(g, *g.sorted_edges()[0])
    raise ParseError(f"unknown graph name {name!r}")


def _named_int(name: str) -> int:
    arg = name.split(":", 1)[1]
    if not arg.isdigit() or int(arg) < 1:
        raise ParseError(f"bad graph name {name!r}")
    return int(arg)


# -- connectivity ---------------------------------------------------------------


def components(G: Graph) -> list[tuple[Vertex, ...]]:
    """Connectivity partition, each class sorted, classes sorted by first member."""
    seen: set[Vertex] = set()
    out = []
    for start in G.vertices:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            x = stack.pop()
            for y in G.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        out.append(tuple(sorted(comp, key=vkey)))
    out.sort(key=lambda c: vkey(c[0]))
    return out


def connected(G: Graph) -> bool:
    return len(components(G)) <= 1


def bridges(G: Graph) -> frozenset[tuple[Vertex, Vertex]]:
    """Edges whose removal disconnects their endpoints (Tarjan low-links)."""
    index: dict[Vertex, int] = {}
    low: dict[Vertex, int] = {}
    out = set()
    counter = itertools.count()
    for root in G.vertices:
        if root in index:
            continue
        # iterative DFS; parent edge tracked to skip the tree edge once
        stack = [(root, None, iter(G.neighbors(root)))]
        index[root] = low[root] = next(counter)
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    parent = None  # a parallel edge cannot occur in a simple graph
                    continue
                if w not in index:
                    index[w] = low[w] = next(counter)
                    stack.append((w, v, iter(G.neighbors(w))))
                    advanced = True
                    break
                low[v] = min(low[v], index[w])
            if not advanced:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] > index[u]:
                        out.add(edge_key(u, v))
    return frozenset(out)


def spanning_forest(G: Graph) -> Graph:
    """A maximal acyclic subgraph spanning all vertices (BFS trees)."""
    seen: set[Vertex] = set()
    tree_edges = []
    for root in G.vertices:
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            x = queue.pop(0)
            for y in G.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    tree_edges.append(edge_key(x, y))
                    queue.append(y)
    return graph_from(G.vertices, tree_edges)


def is_forest(G: Graph) -> bool:
    return G.m == G.n - len(components(G))


def contract(G: Graph, H: Graph) -> tuple[Graph, dict[Vertex, Vertex]]:
    """Contract a spanning forest H inside G.

    Each connected component of H becomes a single vertex, labelled by its
    minimal member; the returned map sends every vertex of G to its class.
    """
    if set(H.vertices) != set(G.vertices):
        raise NotSpanning("H must span the vertices of G")
    if not H.edges <= G.edges:
        raise NotSpanning("H must be a subgraph of G")
    if not is_forest(H):
        raise NotForest("H has a cycle")
    quotient: dict[Vertex, Vertex] = {}
    for comp in components(H):
        rep = comp[0]
        for v in comp:
            quotient[v] = rep
    edges = set()
    for u, v in G.edges:
        ru, rv = quotient[u], quotient[v]
        if ru != rv:
            edges.add(edge_key(ru, rv))
    return graph_from(set(quotient.values()), edges), quotient


def contract_edge(G: Graph, e: tuple[Vertex, Vertex]) -> tuple[Graph, dict[Vertex, Vertex]]:
    """Contract a single edge of G (forest = that edge plus isolated vertices)."""
    u, v = e
    forest = graph_from(G.vertices, [edge_key(u, v)])
    return contract(G, forest)


# -- minors ---------------------------------------------------------------------


@dataclass(frozen=True)
class MinorWitness:
    """Certificate that ``model`` is a minor of some host graph.

    ``branch_sets`` maps each model vertex to a connected set of host
    vertices; ``forest_edges`` are host edges inside branch sets forming a
    spanning tree of each.
    """

    model: Graph
    branch_sets: Mapping[Vertex, frozenset[Vertex]]
    forest_edges: frozenset[tuple[Vertex, Vertex]]


def verify_minor(G: Graph, witness: MinorWitness) -> bool:
    """Check every MinorWitness invariant against the host graph G."""
    model = witness.model
    sets = witness.branch_sets
    if set(sets.keys()) != set(model.vertices):
        return False
    host_vertices = set(G.vertices)
    used: set[Vertex] = set()
    for x, bset in sets.items():
        if not bset or not bset <= host_vertices:
            return False
        if used & bset:
            return False
        used |= bset
    for u, v in witness.forest_edges:
        if edge_key(u, v) not in G.edges:
            return False
        owner_u = next((x for x, b in sets.items() if u in b), None)
        owner_v = next((x for x, b in sets.items() if v in b), None)
        if owner_u is None or owner_u != owner_v:
            return False
    for x, bset in sets.items():
        inner = [e for e in witness.forest_edges if e[0] in bset]
        if len(inner) != len(bset) - 1:
            return False
        sub = graph_from(bset, inner)
        if len(components(sub)) != 1:
            return False
    for a, b in model.edges:
        if not _sets_adjacent(G, sets[a], sets[b]):
            return False
    return True


def _sets_adjacent(G: Graph, A: frozenset[Vertex], B: frozenset[Vertex]) -> bool:
    for u in A:
        for w in G.neighbors(u):
            if w in B:
                return True
    return False


def _connected_subsets(G: Graph, allowed: frozenset[Vertex], max_size: int):
    """All connected subsets of `allowed`, each yielded once (min-seed growth)."""
    order = sorted(allowed, key=vkey)
    pos = {v: i for i, v in enumerate(order)}

    def grow(current: frozenset[Vertex], frontier: list[Vertex], banned: frozenset[Vertex]):
        yield current
        if len(current) == max_size:
            return
        local_banned = banned
        for i, v in enumerate(frontier):
            new_frontier = frontier[i + 1:] + [
                w for w in G.neighbors(v)
                if w in allowed and w not in current and w not in local_banned
                and w not in frontier
            ]
            yield from grow(current | {v}, new_frontier, local_banned)
            local_banned = local_banned | {v}

    for seed in order:
        later = frozenset(v for v in allowed if pos[v] > pos[seed])
        frontier = [w for w in G.neighbors(seed) if w in later]
        banned = frozenset(v for v in allowed if pos[v] < pos[seed])
        yield from grow(frozenset([seed]), frontier, banned)


def find_minor(G: Graph, M: Graph, host_bound: int = DEFAULT_HOST_BOUND) -> Optional[MinorWitness]:
    """Exact minor search: a witness if M is a minor of G, else None.

    Branch-and-bound over the model vertices in a fixed order; each is
    assigned a connected branch set disjoint from the earlier ones, pruned
    by adjacency to the already-assigned model neighbours.  Deterministic,
    so repeated runs return the same witness.
    """
    if G.n > host_bound:
        raise HostTooLarge(G.n, host_bound)
    if M.n > G.n or M.m > G.m:
        return None
    model_order = sorted(M.vertices, key=lambda x: (-M.degree(x), vkey(x)))
    assigned: dict[Vertex, frozenset[Vertex]] = {}

    def backtrack(level: int, free: frozenset[Vertex]) -> bool:
        if level == len(model_order):
            return True
        x = model_order[level]
        required = [y for y in M.neighbors(x) if y in assigned]
        remaining_models = len(model_order) - level - 1
        budget = len(free) - remaining_models
        if budget < 1:
            return False
        for bset in _connected_subsets(G, free, budget):
            if all(_sets_adjacent(G, bset, assigned[y]) for y in required):
                assigned[x] = bset
                if backtrack(level + 1, free - bset):
                    return True
                del assigned[x]
        return False

    if not backtrack(0, frozenset(G.vertices)):
        return None
    forest = []
    for bset in assigned.values():
        sub = induced_subgraph(G, bset)
        forest.extend(spanning_forest(sub).edges)
    witness = MinorWitness(M, dict(assigned), frozenset(forest))
    if not verify_minor(G, witness):
        raise AssertionError("find_minor produced an invalid witness")
    return witness
