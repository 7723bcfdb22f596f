"""Planarity: faces, Euler criterion, certified dichotomy, extra-planarity."""

from __future__ import annotations

import itertools
import random

import pytest

from groupflow.errors import NotPlanarEmbedding, ParseError
from groupflow.graphs import (
    bridges,
    find_minor,
    graph_from,
    named_graph,
    verify_minor,
)
from groupflow.planar import (
    RotationSystem,
    euler_planar_check,
    extra_planar,
    faces,
    walk_bridge_check,
)
from groupflow.planar import test_planarity as planarity_certificate

from helpers import all_labeled_graphs, random_graph


def embed(G):
    R = planarity_certificate(G)
    assert isinstance(R, RotationSystem)
    return R


# -- faces -----------------------------------------------------------------------


def test_single_edge_one_walk():
    g = graph_from([1, 2], [(1, 2)])
    walks = faces(RotationSystem(g, {1: (2,), 2: (1,)}))
    assert len(walks) == 1
    assert walks[0].sequence == (1, 2, 1)
    assert walks[0].length == 2


def test_triangle_two_walks():
    tri = named_graph("cycle:3")
    walks = faces(embed(tri))
    assert sorted(w.length for w in walks) == [3, 3]


def test_k4_planar_rotation_four_faces():
    walks = faces(embed(named_graph("complete:4")))
    assert len(walks) == 4
    assert all(w.length == 3 for w in walks)


def test_faces_cover_each_dart_once():
    rng = random.Random(4)
    for _ in range(40):
        g = random_graph(rng, rng.randint(2, 8), rng.uniform(0.2, 0.8))
        rotation = {}
        for v in g.vertices:
            order = list(g.neighbors(v))
            rng.shuffle(order)
            rotation[v] = tuple(order)
        R = RotationSystem(g, rotation)
        walks = faces(R)
        darts = [d for w in walks for d in w.directed_edges()]
        assert len(darts) == 2 * g.m
        assert len(set(darts)) == len(darts)
        for w in walks:
            seq = w.sequence
            for i in range(len(seq) - 2):
                assert seq[i + 2] == R.next_neighbor(seq[i + 1], seq[i])


def test_faces_successor_is_bijection():
    g = named_graph("petersen")
    rotation = {v: g.neighbors(v) for v in g.vertices}
    R = RotationSystem(g, rotation)
    succ = {}
    for u, v in itertools.chain(g.edges, ((b, a) for a, b in g.edges)):
        succ[(u, v)] = (v, R.next_neighbor(v, u))
    assert len(set(succ.values())) == len(succ)


def test_rotation_must_match_neighbors():
    g = named_graph("cycle:3")
    with pytest.raises(ParseError):
        RotationSystem(g, {1: (2,), 2: (1, 3), 3: (1, 2)})


# -- Euler criterion --------------------------------------------------------------


def test_triangle_euler_true():
    assert euler_planar_check(embed(named_graph("cycle:3")))


def test_k5_no_rotation_attains_euler():
    k5 = named_graph("complete:5")
    neigh = {v: [u for u in k5.vertices if u != v] for v in k5.vertices}
    attained = False
    for combo in itertools.product(
        *[[ (neigh[v][0],) + p for p in itertools.permutations(neigh[v][1:]) ]
          for v in k5.vertices]
    ):
        R = RotationSystem(k5, dict(zip(k5.vertices, combo)))
        if euler_planar_check(R):
            attained = True
            break
    assert not attained


def test_disconnected_euler_per_component():
    g = graph_from(range(1, 7), [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
    assert euler_planar_check(embed(g))


# -- certified dichotomy ------------------------------------------------------------


def test_k4_embedding():
    R = embed(named_graph("complete:4"))
    assert len(faces(R)) == 4


def test_k5_witness():
    k5 = named_graph("complete:5")
    w = planarity_certificate(k5)
    assert not isinstance(w, RotationSystem)
    assert w.model.n == 5
    assert verify_minor(k5, w)


def test_petersen_witness():
    pet = named_graph("petersen")
    w = planarity_certificate(pet)
    assert w.model.n in (5, 6)
    assert verify_minor(pet, w)


def test_dichotomy_exhaustive_5_vertices():
    """Certificate soundness + branch agreement on all 1024 labeled graphs."""
    k5 = named_graph("complete:5")
    k33 = named_graph("complete_bipartite:3,3")
    for g in all_labeled_graphs(5):
        result = planarity_certificate(g)
        if isinstance(result, RotationSystem):
            assert euler_planar_check(result)
            assert find_minor(g, k5) is None and find_minor(g, k33) is None
        else:
            assert verify_minor(g, result)
            assert find_minor(g, k5) is not None or find_minor(g, k33) is not None


def test_dichotomy_sampled_6_vertices():
    rng = random.Random(23)
    k5 = named_graph("complete:5")
    k33 = named_graph("complete_bipartite:3,3")
    for _ in range(120):
        g = random_graph(rng, 6, rng.uniform(0.3, 0.95))
        result = planarity_certificate(g)
        if isinstance(result, RotationSystem):
            assert euler_planar_check(result)
            assert find_minor(g, k5) is None and find_minor(g, k33) is None
        else:
            assert verify_minor(g, result)


# -- walk bridge check -------------------------------------------------------------


def test_path3_both_edges_returned():
    p3 = named_graph("path:3")
    R = embed(p3)
    walks = faces(R)
    assert len(walks) == 1
    assert walk_bridge_check(R, walks[0]) == [(1, 2), (2, 3)]


def test_triangle_no_doubled_edges():
    R = embed(named_graph("cycle:3"))
    for w in faces(R):
        assert walk_bridge_check(R, w) == []


def test_pendant_edge_detected():
    g = graph_from([1, 2, 3, 4], [(1, 2), (2, 3), (1, 3), (3, 4)])
    R = embed(g)
    doubled = set()
    for w in faces(R):
        doubled.update(walk_bridge_check(R, w))
    assert doubled == {(3, 4)}


def test_walk_bridge_check_needs_planar_embedding():
    k5 = named_graph("complete:5")
    rotation = {v: tuple(u for u in k5.vertices if u != v) for v in k5.vertices}
    R = RotationSystem(k5, rotation)
    walk = faces(R)[0]
    with pytest.raises(NotPlanarEmbedding):
        walk_bridge_check(R, walk)


def test_doubled_edges_are_bridges_randomized():
    rng = random.Random(31)
    for _ in range(40):
        g = random_graph(rng, rng.randint(3, 8), 0.35)
        result = planarity_certificate(g)
        if not isinstance(result, RotationSystem):
            continue
        expected = bridges(g)
        for w in faces(result):
            for e in walk_bridge_check(result, w):
                assert e in expected


# -- extra-planarity ------------------------------------------------------------------


def test_k4_extra_planar():
    verdict = extra_planar(named_graph("complete:4"))
    assert verdict.extra_planar
    assert len(verdict.embeddings) == 6   # all pairs already adjacent


def test_k5minus_not_extra_planar():
    g = named_graph("k5minus")
    verdict = extra_planar(g)
    assert not verdict.extra_planar
    assert verdict.pair == (1, 2)         # the removed edge
    from groupflow.graphs import add_edge
    assert verify_minor(add_edge(g, *verdict.pair), verdict.witness)


def test_path4_extra_planar():
    assert extra_planar(named_graph("path:4")).extra_planar


def test_extra_planar_singleton_and_empty():
    assert extra_planar(graph_from([1], [])).extra_planar
    assert extra_planar(graph_from([1, 2, 3], [])).extra_planar


def test_extra_kuratowski_sampled_6_vertices():
    """extra-planar iff no k5minus and no k33minus minor (sampled here;
    the exhaustive sweep lives in the acceptance suite)."""
    rng = random.Random(41)
    k5m = named_graph("k5minus")
    k33m = named_graph("k33minus")
    for _ in range(150):
        g = random_graph(rng, 6, rng.uniform(0.3, 0.95))
        verdict = extra_planar(g)
        minor_free = find_minor(g, k5m) is None and find_minor(g, k33m) is None
        assert verdict.extra_planar == minor_free
