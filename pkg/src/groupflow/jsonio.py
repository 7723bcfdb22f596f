"""JSON readers and writers for the file formats the CLI speaks.

Graphs: ``{"vertices": ["1", ...], "edges": [["1", "2"], ...]}`` (plain
edge-list text is also accepted on input).  Rotations list each vertex's
neighbours in cyclic order.  Witnesses mirror the MinorWitness fields.
Flows store the group spec, the graph, and one direction per edge with
elements written as generator words joined by ``*`` (``1`` = identity).
"""

from __future__ import annotations

import json
from typing import Any

from .errors import ParseError
from .flows import GroupFlow, LeakVerdict
from .graphs import Graph, MinorWitness, Vertex, edge_key, graph_from, vkey
from .groups import FiniteGroup, group_from_cayley, standard_group
from .planar import RotationSystem


def _vertex_token(raw: Any) -> Vertex:
    if isinstance(raw, int):
        return raw
    s = str(raw)
    if s.lstrip("-").isdigit():
        return int(s)
    return s


def vertex_str(v: Vertex) -> str:
    return str(v)


# -- graphs -------------------------------------------------------------------


def graph_to_json(G: Graph) -> dict:
    return {
        "vertices": [vertex_str(v) for v in G.vertices],
        "edges": [[vertex_str(u), vertex_str(v)] for u, v in G.sorted_edges()],
    }


def graph_from_json(data: Any) -> Graph:
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise ParseError("graph JSON needs 'vertices' and 'edges'")
    vertices = [_vertex_token(v) for v in data["vertices"]]
    edges = []
    for e in data["edges"]:
        if len(e) != 2:
            raise ParseError(f"edge {e!r} must have two endpoints")
        edges.append((_vertex_token(e[0]), _vertex_token(e[1])))
    return graph_from(vertices, edges)


def graph_from_text(text: str) -> Graph:
    """Parse a graph file: JSON, or an edge list with one 'u v' pair per line."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return graph_from_json(json.loads(text))
    vertices: set[Vertex] = set()
    edges = []
    for line in stripped.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) == 1:
            vertices.add(_vertex_token(parts[0]))
            continue
        if len(parts) != 2:
            raise ParseError(f"edge line {line!r} needs exactly two vertices")
        u, v = _vertex_token(parts[0]), _vertex_token(parts[1])
        vertices.update((u, v))
        edges.append((u, v))
    return graph_from(vertices, edges)


# -- rotations ----------------------------------------------------------------


def rotation_to_json(R: RotationSystem) -> dict:
    return {
        "rotation": {
            vertex_str(v): [vertex_str(u) for u in R.rotation[v]]
            for v in R.graph.vertices
        }
    }


def rotation_from_json(data: Any, G: Graph) -> RotationSystem:
    if not isinstance(data, dict) or "rotation" not in data:
        raise ParseError("rotation JSON needs a 'rotation' object")
    rotation = {
        _vertex_token(v): tuple(_vertex_token(u) for u in order)
        for v, order in data["rotation"].items()
    }
    return RotationSystem(G, rotation)


# -- minor witnesses ------------------------------------------------------------


def witness_to_json(w: MinorWitness) -> dict:
    return {
        "model": graph_to_json(w.model),
        "branch_sets": {
            vertex_str(x): sorted((vertex_str(u) for u in bset))
            for x, bset in sorted(w.branch_sets.items(), key=lambda kv: vkey(kv[0]))
        },
        "forest_edges": [
            [vertex_str(u), vertex_str(v)]
            for u, v in sorted(w.forest_edges, key=lambda e: (vkey(e[0]), vkey(e[1])))
        ],
    }


def witness_from_json(data: Any) -> MinorWitness:
    if not isinstance(data, dict) or "model" not in data or "branch_sets" not in data:
        raise ParseError("witness JSON needs 'model' and 'branch_sets'")
    model = graph_from_json(data["model"])
    branch_sets = {
        _vertex_token(x): frozenset(_vertex_token(u) for u in members)
        for x, members in data["branch_sets"].items()
    }
    forest = frozenset(
        edge_key(_vertex_token(e[0]), _vertex_token(e[1]))
        for e in data.get("forest_edges", [])
    )
    return MinorWitness(model, branch_sets, forest)


# -- flows ----------------------------------------------------------------------


def flow_to_json(f: GroupFlow) -> dict:
    out: dict[str, Any] = {}
    if f.group.spec is not None:
        out["group"] = f.group.spec
    else:
        out["group_table"] = {
            "names": list(f.group.names),
            "table": f.group.table.tolist(),
        }
    out["graph"] = graph_to_json(f.graph)
    values = []
    for (u, v) in f.graph.sorted_edges():
        g = f.value(u, v)
        if g != f.group.identity:
            values.append([vertex_str(u), vertex_str(v), f.group.name(g)])
    out["values"] = values
    return out


def flow_from_json(data: Any, max_order: int = 5040) -> GroupFlow:
    if not isinstance(data, dict) or "graph" not in data or "values" not in data:
        raise ParseError("flow JSON needs 'graph' and 'values'")
    if "group" in data:
        group = standard_group(str(data["group"]), max_order)
    elif "group_table" in data:
        spec = data["group_table"]
        group = group_from_cayley(spec["table"], spec["names"])
    else:
        raise ParseError("flow JSON needs 'group' or 'group_table'")
    graph = graph_from_json(data["graph"])
    one_direction = {}
    for entry in data["values"]:
        if len(entry) != 3:
            raise ParseError(f"flow value {entry!r} must be [u, v, word]")
        u, v = _vertex_token(entry[0]), _vertex_token(entry[1])
        one_direction[(u, v)] = group.parse_word(str(entry[2]))
    return GroupFlow.skew(graph, group, one_direction)


# -- verdicts ---------------------------------------------------------------------


def leak_verdict_to_json(verdict: LeakVerdict, group: FiniteGroup) -> dict:
    out: dict[str, Any] = {"kind": verdict.kind}
    if verdict.vertex is not None:
        out["vertex"] = vertex_str(verdict.vertex)
    if verdict.value is not None:
        out["value"] = group.name(verdict.value)
    if verdict.vertices is not None:
        out["vertices"] = [vertex_str(v) for v in verdict.vertices]
    return out


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
