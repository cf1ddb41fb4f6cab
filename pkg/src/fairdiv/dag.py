"""Condense a query result into an implication DAG and emit DOT or JSON.

Nodes are equivalence classes of mutually-implying notions; edges are the
transitive reduction of the condensed closure, so reachability in the
emitted graph equals implication in the input.  Output is deterministic:
classes are named by their lexicographically-smallest member and everything
is emitted in sorted order.  Geometry is left to the renderer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import networkx as nx

from .engine import FEASIBLE, INFEASIBLE, OPEN, QueryResult


@dataclass(frozen=True)
class DagNode:
    id: str  # lexicographically smallest member
    members: tuple[str, ...]
    feasibility: str  # feasible / infeasible / open


@dataclass(frozen=True)
class DagEdge:
    src: str
    dst: str
    refs: tuple[str, ...]  # provenance of the direct closure edge


@dataclass(frozen=True)
class ImplicationDag:
    nodes: tuple[DagNode, ...]
    edges: tuple[DagEdge, ...]
    # Non-implications and open pairs lifted to class representatives.
    nonimplications: tuple[tuple[str, str, tuple[str, ...]], ...]
    open_pairs: tuple[tuple[str, str], ...]


def build_dag(result: QueryResult) -> ImplicationDag:
    graph = nx.DiGraph()
    notions = sorted(result.feasibility)
    graph.add_nodes_from(notions)
    graph.add_edges_from(
        (f1, f2) for (f1, f2) in result.closure if f1 != f2
    )

    condensed = nx.condensation(graph)
    class_of: dict[str, str] = {}
    members_of: dict[str, tuple[str, ...]] = {}
    for scc_id in condensed.nodes:
        members = tuple(sorted(condensed.nodes[scc_id]["members"]))
        rep = members[0]
        members_of[rep] = members
        for notion in members:
            class_of[notion] = rep

    reduced = nx.transitive_reduction(condensed)

    nodes = []
    for rep, members in sorted(members_of.items()):
        statuses = {result.feasibility[n] for n in members}
        # Members of one class imply each other, so feasibility propagation
        # already forced them to agree; OPEN can only coexist with itself.
        statuses.discard(OPEN)
        if statuses == {FEASIBLE}:
            feasibility = FEASIBLE
        elif statuses == {INFEASIBLE}:
            feasibility = INFEASIBLE
        else:
            feasibility = OPEN
        nodes.append(DagNode(rep, members, feasibility))

    scc_rep = {
        scc_id: sorted(condensed.nodes[scc_id]["members"])[0]
        for scc_id in condensed.nodes
    }
    edges = []
    for a, b in reduced.edges:
        src, dst = scc_rep[a], scc_rep[b]
        chain = result.closure[(src, dst)]
        edges.append(DagEdge(src, dst, tuple(f.ref for f in chain)))
    edges.sort(key=lambda e: (e.src, e.dst))

    nonimps: dict[tuple[str, str], tuple[str, ...]] = {}
    for (f1, f2), prov in result.nonimplications.items():
        key = (class_of[f1], class_of[f2])
        if key not in nonimps:
            nonimps[key] = prov.refs()
    open_pairs = sorted(
        {
            tuple(sorted((class_of[a], class_of[b])))
            for a, b in result.open_pairs
            if class_of[a] != class_of[b]
        }
    )
    return ImplicationDag(
        nodes=tuple(nodes),
        edges=tuple(edges),
        nonimplications=tuple(
            (f1, f2, refs) for (f1, f2), refs in sorted(nonimps.items())
        ),
        open_pairs=tuple(open_pairs),
    )


def _node_label(node: DagNode) -> str:
    return r"\n".join(node.members)


_DOT_STYLE = {
    INFEASIBLE: 'color="none", fontcolor="red", style="filled", fillcolor="white"',
    FEASIBLE: 'shape="box", style="rounded,filled", color="green", fillcolor="white"',
    OPEN: 'shape="box", style="filled", color="gray", fillcolor="white"',
}


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(dag: ImplicationDag) -> str:
    lines = ["digraph implications {", "  rankdir=TB;"]
    for node in dag.nodes:
        label = _quote(_node_label(node)).replace("\\\\n", "\\n")
        lines.append(
            f"  {_quote(node.id)} [label={label}, {_DOT_STYLE[node.feasibility]}];"
        )
    for edge in dag.edges:
        tooltip = _quote("; ".join(edge.refs))
        lines.append(
            f"  {_quote(edge.src)} -> {_quote(edge.dst)} "
            f"[tooltip={tooltip}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def dag_to_json(dag: ImplicationDag) -> dict:
    return {
        "nodes": [
            {
                "id": n.id,
                "members": list(n.members),
                "feasibility": n.feasibility,
            }
            for n in dag.nodes
        ],
        "edges": [
            {"from": e.src, "to": e.dst, "refs": list(e.refs)}
            for e in dag.edges
        ],
        "nonimplications": [
            {"from": f1, "to": f2, "refs": list(refs)}
            for f1, f2, refs in dag.nonimplications
        ],
        "open_pairs": [list(p) for p in dag.open_pairs],
    }


def emit(dag: ImplicationDag, format: str) -> str:
    if format == "dot":
        return emit_dot(dag)
    if format == "json":
        return json.dumps(dag_to_json(dag), indent=2, sort_keys=True) + "\n"
    raise ValueError(f"unknown format {format!r}")
