"""Immutable network model, validation, and terminal normalization.

A network is a directed graph with a single source and a single sink.
Each edge carries an exact rational capacity (flow units) and an exact
rational transport cost (money per flow unit). Parallel edges are not
allowed: an ordered node pair identifies at most one edge, which keeps
flow and attack maps unambiguous. A parallel pair must be modelled with
an intermediate node.

Networks are frozen after validation; every operation in this package
treats them as read-only values, so sharing across threads is safe.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    DuplicateEdge,
    EmptyTerminalSet,
    InvalidPath,
    NegativeCapacity,
    NegativeCost,
    ParseError,
    SelfLoop,
    SourceEqualsSink,
    UnknownEndpoint,
)
from .rational import parse_rational

NodeId = str

ZERO = Fraction(0)


@dataclass(frozen=True)
class EdgeSpec:
    """One directed edge. ``id`` is the dense index of the edge in the
    network's edge list and is the key used by flows and attacks."""

    id: int
    tail: NodeId
    head: NodeId
    capacity: Fraction
    cost: Fraction


@dataclass(frozen=True)
class Cut:
    """A source-sink cut: the source-side node set, the ids of the edges
    leaving it, and their total capacity."""

    s_side: frozenset
    cut_set: tuple
    capacity: Fraction


@dataclass(frozen=True)
class Network:
    nodes: frozenset
    edges: tuple
    source: NodeId
    sink: NodeId

    @cached_property
    def edge_by_pair(self) -> Mapping:
        return {(e.tail, e.head): e for e in self.edges}

    @cached_property
    def out_edges(self) -> Mapping:
        table = {node: [] for node in self.nodes}
        for e in self.edges:
            table[e.tail].append(e)
        return {node: tuple(edges) for node, edges in table.items()}

    @cached_property
    def in_edges(self) -> Mapping:
        table = {node: [] for node in self.nodes}
        for e in self.edges:
            table[e.head].append(e)
        return {node: tuple(edges) for node, edges in table.items()}

    def edge(self, edge_id: int) -> EdgeSpec:
        return self.edges[edge_id]

    def edge_ids_on_path(self, nodes: Sequence) -> tuple:
        """Map a node sequence to edge ids, raising InvalidPath if any hop
        is not an edge of this network."""
        ids = []
        for tail, head in zip(nodes, nodes[1:]):
            edge = self.edge_by_pair.get((tail, head))
            if edge is None:
                raise InvalidPath(f"no edge from {tail!r} to {head!r}")
            ids.append(edge.id)
        return tuple(ids)

    def total_capacity(self) -> Fraction:
        return sum((e.capacity for e in self.edges), ZERO)


def _coerce_edges(edges: Iterable) -> list:
    coerced = []
    for index, item in enumerate(edges):
        if isinstance(item, EdgeSpec):
            tail, head, capacity, cost = item.tail, item.head, item.capacity, item.cost
        else:
            tail, head, capacity, cost = item
        capacity = parse_rational(capacity, what=f"capacity of edge ({tail}, {head})")
        cost = parse_rational(cost, what=f"cost of edge ({tail}, {head})")
        coerced.append(EdgeSpec(index, tail, head, capacity, cost))
    return coerced


def make_network(nodes: Iterable, edges: Iterable, source: NodeId, sink: NodeId) -> Network:
    """Validate a network candidate and freeze it.

    Raises an error naming the offending element when any invariant fails:
    duplicate or self-loop edges, endpoints outside the node set, negative
    capacities or costs, or source equal to sink.
    """
    node_set = frozenset(nodes)
    if source == sink:
        raise SourceEqualsSink(f"source and sink are both {source!r}")
    if source not in node_set:
        raise UnknownEndpoint(f"source {source!r} is not a declared node")
    if sink not in node_set:
        raise UnknownEndpoint(f"sink {sink!r} is not a declared node")

    specs = _coerce_edges(edges)
    seen = set()
    for e in specs:
        if e.tail not in node_set:
            raise UnknownEndpoint(f"edge ({e.tail}, {e.head}): unknown node {e.tail!r}")
        if e.head not in node_set:
            raise UnknownEndpoint(f"edge ({e.tail}, {e.head}): unknown node {e.head!r}")
        if e.tail == e.head:
            raise SelfLoop(f"edge ({e.tail}, {e.head}) is a self-loop")
        if (e.tail, e.head) in seen:
            raise DuplicateEdge(f"more than one edge from {e.tail!r} to {e.head!r}")
        seen.add((e.tail, e.head))
        if e.capacity < 0:
            raise NegativeCapacity(
                f"edge ({e.tail}, {e.head}) has capacity {e.capacity}"
            )
        if e.cost < 0:
            raise NegativeCost(f"edge ({e.tail}, {e.head}) has cost {e.cost}")

    return Network(node_set, tuple(specs), source, sink)


def _fresh_name(base: str, taken) -> str:
    name = base
    while name in taken:
        name = "_" + name
    return name


def normalize_terminals(
    nodes: Iterable,
    edges: Iterable,
    sources: Iterable,
    sinks: Iterable,
) -> Network:
    """Collapse a multi-source / multi-sink candidate into a single-terminal
    network.

    A super-source is wired to every original source (and every original
    sink to a super-sink) with zero-cost edges whose capacity is the sum of
    all original capacities plus one, a finite bound that can never bind.
    A candidate that already has exactly one source and one sink is
    returned unchanged, with no super-nodes added.
    """
    source_list = sorted(set(sources))
    sink_list = sorted(set(sinks))
    if not source_list or not sink_list:
        raise EmptyTerminalSet("source set and sink set must both be nonempty")
    overlap = set(source_list) & set(sink_list)
    if overlap:
        raise SourceEqualsSink(
            f"nodes {sorted(overlap)} appear as both source and sink"
        )

    if len(source_list) == 1 and len(sink_list) == 1:
        return make_network(nodes, edges, source_list[0], sink_list[0])

    node_set = set(nodes)
    specs = _coerce_edges(edges)
    bound = sum((e.capacity for e in specs), ZERO) + 1

    edge_rows = [(e.tail, e.head, e.capacity, e.cost) for e in specs]
    source = source_list[0]
    if len(source_list) > 1:
        source = _fresh_name("super_source", node_set)
        node_set.add(source)
        for original in source_list:
            edge_rows.append((source, original, bound, ZERO))
    sink = sink_list[0]
    if len(sink_list) > 1:
        sink = _fresh_name("super_sink", node_set)
        node_set.add(sink)
        for original in sink_list:
            edge_rows.append((original, sink, bound, ZERO))

    return make_network(node_set, edge_rows, source, sink)


# ---------------------------------------------------------------------------
# JSON surface
# ---------------------------------------------------------------------------

def network_from_json(data) -> Network:
    """Build a network from its JSON form.

    Accepts either a JSON string or an already-parsed dict with keys
    ``nodes``, ``edges`` and either ``source``/``sink`` scalars or
    ``sources``/``sinks`` lists (normalized via super-terminals). Edge
    capacities and costs are exact rational strings or integers.
    """
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("network JSON must be an object")

    try:
        nodes = data["nodes"]
        raw_edges = data["edges"]
    except KeyError as exc:
        raise ParseError(f"network JSON is missing key {exc.args[0]!r}") from exc
    if not isinstance(nodes, list) or not all(isinstance(n, str) for n in nodes):
        raise ParseError("'nodes' must be a list of strings")
    if not isinstance(raw_edges, list):
        raise ParseError("'edges' must be a list")

    edges = []
    for i, entry in enumerate(raw_edges):
        if not isinstance(entry, dict):
            raise ParseError(f"edge #{i} must be an object")
        try:
            edges.append((entry["from"], entry["to"], entry["capacity"], entry["cost"]))
        except KeyError as exc:
            raise ParseError(f"edge #{i} is missing key {exc.args[0]!r}") from exc

    if "sources" in data or "sinks" in data:
        sources = data.get("sources", [data["source"]] if "source" in data else [])
        sinks = data.get("sinks", [data["sink"]] if "sink" in data else [])
        return normalize_terminals(nodes, edges, sources, sinks)

    try:
        source = data["source"]
        sink = data["sink"]
    except KeyError as exc:
        raise ParseError(f"network JSON is missing key {exc.args[0]!r}") from exc
    return make_network(nodes, edges, source, sink)


def network_to_json(net: Network) -> dict:
    """Serialize a network to the dict form accepted by network_from_json."""
    return {
        "nodes": sorted(net.nodes),
        "source": net.source,
        "sink": net.sink,
        "edges": [
            {
                "from": e.tail,
                "to": e.head,
                "capacity": str(e.capacity),
                "cost": str(e.cost),
            }
            for e in net.edges
        ],
    }
