"""Graph-core: named graphs, connectivity toolkit, contraction, minors."""

from __future__ import annotations

import random

import pytest

from groupflow.errors import HostTooLarge, NotForest, NotSpanning, ParseError
from groupflow.graphs import (
    Graph,
    MinorWitness,
    bridges,
    components,
    contract,
    contract_edge,
    edge_key,
    find_minor,
    graph_from,
    is_forest,
    named_graph,
    spanning_forest,
    verify_minor,
)

from helpers import (
    all_labeled_graphs,
    bridge_oracle,
    compose_minor_witnesses,
    minor_oracle,
    random_graph,
)


# -- named graphs ----------------------------------------------------------------


def test_complete_5():
    g = named_graph("complete:5")
    assert g.n == 5 and g.m == 10


def test_complete_bipartite_33():
    g = named_graph("complete_bipartite:3,3")
    assert g.m == 9
    for u in (1, 2, 3):
        assert g.neighbors(u) == (4, 5, 6)


def test_k33minus_edge_count():
    assert named_graph("k33minus").m == 8
    assert named_graph("k5minus").m == 9


def test_petersen_shape():
    g = named_graph("petersen")
    assert g.n == 10 and g.m == 15
    assert all(g.degree(v) == 3 for v in g.vertices)


def test_named_graph_errors():
    for bad in ("complete:x", "octahedron", "cycle:2", "path:0"):
        with pytest.raises(ParseError):
            named_graph(bad)


def test_no_loops():
    with pytest.raises(ParseError):
        graph_from([1, 2], [(1, 1)])


# -- connectivity ------------------------------------------------------------------


def test_cycle4_connectivity():
    g = named_graph("cycle:4")
    assert components(g) == [(1, 2, 3, 4)]
    assert bridges(g) == frozenset()


def test_path4_all_bridges():
    g = named_graph("path:4")
    assert bridges(g) == frozenset({(1, 2), (2, 3), (3, 4)})


def test_two_triangles():
    g = graph_from(range(1, 7), [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
    assert len(components(g)) == 2
    forest = spanning_forest(g)
    assert forest.m == 4
    assert is_forest(forest)


def test_bridges_vs_oracle_small_graphs():
    rng = random.Random(2)
    count = 0
    for g in all_labeled_graphs(5):
        if rng.random() < 0.1:
            assert bridges(g) == bridge_oracle(g)
            count += 1
    for _ in range(60):
        g = random_graph(rng, 8, rng.uniform(0.1, 0.6))
        assert bridges(g) == bridge_oracle(g)
        count += 1
    assert count > 60


def test_bridges_are_edges_on_no_cycle():
    """An edge lies on a cycle iff its endpoints stay connected without it."""
    rng = random.Random(9)
    for _ in range(40):
        g = random_graph(rng, 8, 0.3)
        cyc = set()
        for u, v in g.edges:
            without = Graph(g.vertices, g.edges - {edge_key(u, v)})
            comp_of = {x: i for i, c in enumerate(components(without)) for x in c}
            if comp_of[u] == comp_of[v]:
                cyc.add(edge_key(u, v))
        assert bridges(g) == g.edges - cyc


# -- contraction --------------------------------------------------------------------


def test_contract_edgeless_forest_is_identity():
    g = named_graph("petersen")
    h = graph_from(g.vertices, [])
    contracted, quotient = contract(g, h)
    assert contracted == g
    assert all(quotient[v] == v for v in g.vertices)


def test_contract_triangle_edge():
    tri = named_graph("cycle:3")
    contracted, quotient = contract_edge(tri, (1, 2))
    assert contracted.vertices == (1, 3)
    assert contracted.edges == frozenset({(1, 3)})
    assert quotient[2] == 1


def test_contract_k33_edge():
    k33 = named_graph("complete_bipartite:3,3")
    contracted, quotient = contract_edge(k33, (1, 4))
    assert contracted.n == 5
    merged = quotient[1]
    assert merged == quotient[4]
    others = [v for v in contracted.vertices if v != merged]
    for v in others:
        assert contracted.has_edge(merged, v)
    cycle_edges = {e for e in contracted.edges if merged not in e}
    assert cycle_edges == {(2, 5), (2, 6), (3, 5), (3, 6)}


def test_contract_rejects_bad_forest():
    g = named_graph("complete:4")
    with pytest.raises(NotSpanning):
        contract(g, graph_from([1, 2], [(1, 2)]))
    with pytest.raises(NotForest):
        contract(g, graph_from(g.vertices, [(1, 2), (2, 3), (1, 3)]))


# -- minors -------------------------------------------------------------------------


def test_identity_witness():
    k5 = named_graph("complete:5")
    w = find_minor(k5, k5)
    assert w is not None
    assert all(len(b) == 1 for b in w.branch_sets.values())
    assert verify_minor(k5, w)


def test_petersen_k5_minor():
    pet = named_graph("petersen")
    w = find_minor(pet, named_graph("complete:5"))
    assert w is not None and verify_minor(pet, w)
    assert sorted(len(b) for b in w.branch_sets.values()) == [2, 2, 2, 2, 2]


def test_k4_has_no_k33_minor():
    assert find_minor(named_graph("complete:4"), named_graph("complete_bipartite:3,3")) is None


def test_host_too_large():
    big = graph_from(range(1, 20), [(i, i + 1) for i in range(1, 19)])
    with pytest.raises(HostTooLarge):
        find_minor(big, named_graph("complete:5"))


def test_verify_minor_rejects_overlap():
    k4 = named_graph("complete:4")
    tri = named_graph("complete:3")
    w = MinorWitness(tri, {1: frozenset({1, 2}), 2: frozenset({2, 3}), 3: frozenset({4})},
                     frozenset({(1, 2), (2, 3)}))
    assert not verify_minor(k4, w)


def test_verify_minor_rejects_missing_connection():
    g = named_graph("path:4")
    tri = named_graph("complete:3")
    w = MinorWitness(tri, {1: frozenset({1}), 2: frozenset({2}), 3: frozenset({4})},
                     frozenset())
    assert not verify_minor(g, w)  # vertices 2 and 4 are not adjacent


def test_verify_minor_rejects_disconnected_branch_set():
    g = named_graph("path:4")
    single = named_graph("complete:1")
    w = MinorWitness(single, {1: frozenset({1, 3})}, frozenset())
    assert not verify_minor(g, w)


@pytest.mark.parametrize("model_name", [
    "complete:5", "complete_bipartite:3,3", "k5minus", "k33minus",
    "complete:4", "cycle:4",
])
def test_find_minor_vs_bruteforce_oracle(model_name):
    model = named_graph(model_name)
    rng = random.Random(hash(model_name) & 0xFFFF)
    checked = 0
    for _ in range(40):
        n = rng.randint(4, 7)
        g = random_graph(rng, n, rng.uniform(0.3, 0.9))
        w = find_minor(g, model)
        have = minor_oracle(g, model)
        assert (w is not None) == have, (model_name, g)
        if w is not None:
            assert verify_minor(g, w)
        checked += 1
    assert checked == 40


def test_minor_transitivity_by_composition():
    """Nested witnesses compose into a witness the checker accepts."""
    rng = random.Random(17)
    k4 = named_graph("complete:4")
    tri = named_graph("complete:3")
    done = 0
    attempts = 0
    while done < 12 and attempts < 400:
        attempts += 1
        g = random_graph(rng, rng.randint(5, 8), rng.uniform(0.4, 0.8))
        outer = None
        try:
            outer = find_minor(g, k4)
        except HostTooLarge:
            continue
        if outer is None:
            continue
        inner = find_minor(k4, tri)
        composed = compose_minor_witnesses(g, outer, inner)
        assert verify_minor(g, composed)
        done += 1
    assert done == 12
