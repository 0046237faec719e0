"""Flow-theoretic primitives on exact rationals.

Algorithms are chosen for exactness and reproducibility on desk-scale
networks, not asymptotics:

* max-flow: shortest augmenting paths (breadth-first residual search),
  ties broken toward the lowest edge id, forward arcs before backward.
* min-cut: source side of the residual graph of a maximum flow.
* min-cost max-flow: successive shortest paths with node potentials.
  Costs are nonnegative, so plain Dijkstra works from the start and
  reduced costs stay nonnegative throughout.
* decomposition: cycles are peeled off first (depth-first search on the
  support graph), after which the support is acyclic and source-to-sink
  paths are extracted by always following the lowest-id positive edge.

Everything here is a pure function of an immutable network, safe for
concurrent use.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Union

from .errors import UndecomposableFlow, ZeroMaxFlow
from .game import PathFlow, path_cost, path_flow
from .network import Cut, Network, ZERO


# ---------------------------------------------------------------------------
# Residual-graph helpers
# ---------------------------------------------------------------------------

def _arcs_by_node(net: Network, reverse_ties: bool = False) -> dict:
    """Residual adjacency: node -> tuple of (edge id, is_forward, other end),
    sorted by edge id with the forward direction first. ``reverse_ties``
    flips the scan order; results must not depend on it."""
    adj = {node: [] for node in net.nodes}
    for e in net.edges:
        adj[e.tail].append((e.id, True, e.head))
        adj[e.head].append((e.id, False, e.tail))
    ordered = {}
    for node, arcs in adj.items():
        arcs.sort(key=lambda arc: (arc[0], not arc[1]))
        if reverse_ties:
            arcs.reverse()
        ordered[node] = tuple(arcs)
    return ordered


def _residual(net: Network, flow: dict, edge_id: int, forward: bool) -> Fraction:
    if forward:
        return net.edge(edge_id).capacity - flow[edge_id]
    return flow[edge_id]


# ---------------------------------------------------------------------------
# Max-flow and min-cut
# ---------------------------------------------------------------------------

def max_flow(net: Network, *, _reverse_ties: bool = False) -> tuple:
    """Maximum source-to-sink flow value and a flow attaining it.

    Returns ``(value, amounts)`` where ``amounts`` maps edge id to the
    exact flow on that edge. A network with no source-sink path yields
    value 0 and the zero flow.
    """
    flow = {e.id: ZERO for e in net.edges}
    adj = _arcs_by_node(net, _reverse_ties)
    value = ZERO
    while True:
        parent = _augmenting_bfs(net, adj, flow)
        if parent is None:
            break
        arcs = []
        node = net.sink
        while node != net.source:
            edge_id, forward, prev = parent[node]
            arcs.append((edge_id, forward))
            node = prev
        bottleneck = min(_residual(net, flow, eid, fwd) for eid, fwd in arcs)
        for edge_id, forward in arcs:
            flow[edge_id] += bottleneck if forward else -bottleneck
        value += bottleneck
    return value, flow


def _augmenting_bfs(net: Network, adj: dict, flow: dict) -> Optional[dict]:
    parent = {net.source: None}
    queue = deque([net.source])
    while queue:
        node = queue.popleft()
        for edge_id, forward, dst in adj[node]:
            if dst in parent or _residual(net, flow, edge_id, forward) <= 0:
                continue
            parent[dst] = (edge_id, forward, node)
            if dst == net.sink:
                return parent
            queue.append(dst)
    return None


def residual_source_side(net: Network, flow: dict) -> frozenset:
    """Nodes reachable from the source in the residual graph of ``flow``."""
    adj = _arcs_by_node(net)
    seen = {net.source}
    queue = deque([net.source])
    while queue:
        node = queue.popleft()
        for edge_id, forward, dst in adj[node]:
            if dst not in seen and _residual(net, flow, edge_id, forward) > 0:
                seen.add(dst)
                queue.append(dst)
    return frozenset(seen)


def min_cut(net: Network) -> Cut:
    """The canonical minimum cut: the source side is the set of nodes
    reachable from the source in the residual graph of a maximum flow."""
    _, flow = max_flow(net)
    s_side = residual_source_side(net, flow)
    cut_ids = tuple(
        e.id for e in net.edges if e.tail in s_side and e.head not in s_side
    )
    capacity = sum((net.edge(i).capacity for i in cut_ids), ZERO)
    return Cut(s_side, cut_ids, capacity)


def enumerate_partition_cuts(net: Network) -> Iterator:
    """Every source-sink cut, by explicit enumeration of node partitions.

    Exponential in the node count; intended as an exhaustive reference
    for small networks and for finding all minimum cuts.
    """
    middle = sorted(net.nodes - {net.source, net.sink})
    if len(middle) > 22:
        raise ValueError("partition enumeration is limited to 24 nodes")
    for mask in range(1 << len(middle)):
        s_side = {net.source}
        for i, node in enumerate(middle):
            if mask >> i & 1:
                s_side.add(node)
        cut_ids = tuple(
            e.id for e in net.edges if e.tail in s_side and e.head not in s_side
        )
        capacity = sum((net.edge(i).capacity for i in cut_ids), ZERO)
        yield Cut(frozenset(s_side), cut_ids, capacity)


def all_min_cuts(net: Network) -> tuple:
    """All minimum cuts, by partition enumeration (small networks only)."""
    cuts = list(enumerate_partition_cuts(net))
    best = min(cut.capacity for cut in cuts)
    return tuple(cut for cut in cuts if cut.capacity == best)


# ---------------------------------------------------------------------------
# Min-cost max-flow
# ---------------------------------------------------------------------------

def min_cost_max_flow(net: Network, *, _reverse_ties: bool = False) -> tuple:
    """A maximum flow of minimum total transport cost.

    Successive shortest paths: augment along a cheapest residual path
    until the sink is unreachable. Node potentials keep reduced costs
    nonnegative so every iteration is a plain Dijkstra run. Returns
    ``(amounts, cost)``.
    """
    flow = {e.id: ZERO for e in net.edges}
    adj = _arcs_by_node(net, _reverse_ties)
    index = {node: i for i, node in enumerate(sorted(net.nodes))}
    potential = {node: ZERO for node in net.nodes}
    total_cost = ZERO

    while True:
        dist, parent = _cheapest_residual_paths(net, adj, flow, potential, index)
        if net.sink not in dist:
            break
        for node, d in dist.items():
            potential[node] += d

        arcs = []
        node = net.sink
        while node != net.source:
            edge_id, forward, prev = parent[node]
            arcs.append((edge_id, forward))
            node = prev
        bottleneck = min(_residual(net, flow, eid, fwd) for eid, fwd in arcs)
        step_cost = ZERO
        for edge_id, forward in arcs:
            if forward:
                flow[edge_id] += bottleneck
                step_cost += net.edge(edge_id).cost
            else:
                flow[edge_id] -= bottleneck
                step_cost -= net.edge(edge_id).cost
        total_cost += bottleneck * step_cost
    return flow, total_cost


def _cheapest_residual_paths(net, adj, flow, potential, index) -> tuple:
    """Dijkstra over the residual graph with reduced arc costs."""
    dist = {net.source: ZERO}
    parent = {}
    final = set()
    heap = [(ZERO, index[net.source], net.source)]
    while heap:
        d, _, node = heapq.heappop(heap)
        if node in final:
            continue
        final.add(node)
        for edge_id, forward, dst in adj[node]:
            if dst in final or _residual(net, flow, edge_id, forward) <= 0:
                continue
            cost = net.edge(edge_id).cost
            reduced = (cost if forward else -cost) + potential[node] - potential[dst]
            candidate = d + reduced
            if dst not in dist or candidate < dist[dst]:
                dist[dst] = candidate
                parent[dst] = (edge_id, forward, node)
                heapq.heappush(heap, (candidate, index[dst], dst))
    return {node: d for node, d in dist.items() if node in final}, parent


# ---------------------------------------------------------------------------
# Edge-flow utilities
# ---------------------------------------------------------------------------

def flow_value(net: Network, amounts: Mapping) -> Fraction:
    """Net flow into the sink."""
    into = sum((amounts.get(e.id, ZERO) for e in net.in_edges[net.sink]), ZERO)
    out = sum((amounts.get(e.id, ZERO) for e in net.out_edges[net.sink]), ZERO)
    return into - out


def edge_flow_cost(net: Network, amounts: Mapping) -> Fraction:
    return sum((net.edge(i).cost * amount for i, amount in amounts.items()), ZERO)


def is_feasible(net: Network, amounts: Mapping) -> bool:
    """Capacity bounds on every edge plus conservation at every node other
    than the source and the sink."""
    for e in net.edges:
        amount = amounts.get(e.id, ZERO)
        if amount < 0 or amount > e.capacity:
            return False
    for node in net.nodes:
        if node in (net.source, net.sink):
            continue
        inflow = sum((amounts.get(e.id, ZERO) for e in net.in_edges[node]), ZERO)
        outflow = sum((amounts.get(e.id, ZERO) for e in net.out_edges[node]), ZERO)
        if inflow != outflow:
            return False
    return True


# ---------------------------------------------------------------------------
# Decomposition into paths and cycles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """Paths are (node sequence, amount) pairs from source to sink; cycles
    are closed node sequences (first node repeated last) with an amount.
    Summing amounts edge-wise reproduces the input flow exactly."""

    paths: tuple
    cycles: tuple


def decompose(net: Network, amounts: Mapping) -> Decomposition:
    """Write a feasible edge flow as source-sink path amounts plus cycles.

    Cycles are peeled first; the rest is acyclic and splits into simple
    paths. At most one path or cycle per edge is produced. Flows that
    cannot be written this way (net flow running from sink to source)
    raise UndecomposableFlow.
    """
    work = {}
    for edge_id, amount in amounts.items():
        if amount < 0:
            edge = net.edge(edge_id)
            raise UndecomposableFlow(
                f"negative amount {amount} on edge ({edge.tail}, {edge.head})"
            )
        if amount > 0:
            work[edge_id] = amount

    cycles = []
    while True:
        found = _find_cycle(net, work)
        if found is None:
            break
        cycle_nodes, cycle_edges = found
        bottleneck = min(work[i] for i in cycle_edges)
        _subtract(work, cycle_edges, bottleneck)
        cycles.append((tuple(cycle_nodes), bottleneck))

    out_ids = {
        node: tuple(sorted(e.id for e in net.out_edges[node])) for node in net.nodes
    }
    paths = []
    while True:
        extracted = _extract_path(net, work, out_ids)
        if extracted is None:
            break
        paths.append(extracted)

    if work:
        leftover = sorted(work)
        raise UndecomposableFlow(
            f"flow is not a sum of source-sink paths and cycles; "
            f"edges {leftover} carry unassignable amounts"
        )
    return Decomposition(tuple(paths), tuple(cycles))


def _subtract(work: dict, edge_ids, amount: Fraction) -> None:
    for edge_id in edge_ids:
        remaining = work[edge_id] - amount
        if remaining:
            work[edge_id] = remaining
        else:
            del work[edge_id]


def _find_cycle(net: Network, work: dict):
    """Deterministic depth-first search for a directed cycle in the support
    graph of ``work``. Returns (cycle nodes closed, cycle edge ids)."""
    adjacency = {}
    for edge_id in sorted(work):
        adjacency.setdefault(net.edge(edge_id).tail, []).append(edge_id)

    finished = set()
    for root in sorted(adjacency):
        if root in finished:
            continue
        frames = [(root, 0)]
        path_nodes = [root]
        path_edges = []
        position = {root: 0}
        while frames:
            node, idx = frames[-1]
            arcs = adjacency.get(node, ())
            if idx >= len(arcs):
                frames.pop()
                finished.add(node)
                del position[node]
                path_nodes.pop()
                if path_edges:
                    path_edges.pop()
                continue
            frames[-1] = (node, idx + 1)
            edge_id = arcs[idx]
            dst = net.edge(edge_id).head
            if dst in position:
                k = position[dst]
                return path_nodes[k:] + [dst], path_edges[k:] + [edge_id]
            if dst in finished:
                continue
            frames.append((dst, 0))
            position[dst] = len(path_nodes)
            path_nodes.append(dst)
            path_edges.append(edge_id)
    return None


def _extract_path(net: Network, work: dict, out_ids: dict):
    node = net.source
    nodes = [node]
    edges = []
    while node != net.sink:
        step = None
        for edge_id in out_ids.get(node, ()):
            if work.get(edge_id, ZERO) > 0:
                step = edge_id
                break
        if step is None:
            if node == net.source and not edges:
                return None
            raise UndecomposableFlow(
                f"walk from the source stalled at {node!r}"
            )
        edges.append(step)
        node = net.edge(step).head
        nodes.append(node)
        if len(edges) > len(net.edges):
            raise UndecomposableFlow("walk revisited an edge; flow has a cycle")
    bottleneck = min(work[i] for i in edges)
    _subtract(work, edges, bottleneck)
    return tuple(nodes), bottleneck


def strip_loops(net: Network, amounts: Mapping) -> PathFlow:
    """Drop the cycle components of a feasible edge flow and return the
    path part. Against every attack the result delivers the same flow
    while paying at most the original transport cost."""
    return path_flow(net, decompose(net, amounts).paths)


# ---------------------------------------------------------------------------
# Cheapest path cost and the routing-optimality check
# ---------------------------------------------------------------------------

def cheapest_path_cost(net: Network) -> Optional[Fraction]:
    """Minimum per-unit transport cost over all source-sink paths that use
    only positive-capacity edges. ``None`` when the sink is unreachable."""
    index = {node: i for i, node in enumerate(sorted(net.nodes))}
    dist = {net.source: ZERO}
    final = set()
    heap = [(ZERO, index[net.source], net.source)]
    while heap:
        d, _, node = heapq.heappop(heap)
        if node in final:
            continue
        final.add(node)
        if node == net.sink:
            return d
        for e in net.out_edges[node]:
            if e.capacity <= 0 or e.head in final:
                continue
            candidate = d + e.cost
            if e.head not in dist or candidate < dist[e.head]:
                dist[e.head] = candidate
                heapq.heappush(heap, (candidate, index[e.head], e.head))
    return None


@dataclass(frozen=True)
class RoutingCheck:
    """Whether some min-cost max-flow routes only along cheapest paths.

    Because every path costs at least the cheapest path cost, this holds
    exactly when the minimum transport cost equals cheapest-cost-per-unit
    times the max-flow value. ``certified_flow`` is a decomposition whose
    paths all cost exactly that much; ``costly_path`` is a (nodes, cost)
    counterexample otherwise.
    """

    holds: bool
    certified_flow: Optional[PathFlow]
    costly_path: Optional[tuple]


def check_cheapest_routing(net: Network) -> RoutingCheck:
    """Decide whether min-cost routing uses only cheapest paths; requires a
    positive max-flow value."""
    amounts, cost = min_cost_max_flow(net)
    value = flow_value(net, amounts)
    if value == 0:
        raise ZeroMaxFlow("the network carries no source-sink flow")
    unit_cost = cheapest_path_cost(net)
    return _routing_check(net, value, cost, unit_cost, decompose(net, amounts))


def _routing_check(net, value, cost, unit_cost, decomposition) -> RoutingCheck:
    holds = cost == unit_cost * value
    if holds:
        return RoutingCheck(True, path_flow(net, decomposition.paths), None)
    for nodes, _ in decomposition.paths:
        this_cost = path_cost(net, nodes)
        if this_cost > unit_cost:
            return RoutingCheck(False, None, (nodes, this_cost))
    raise AssertionError("cost exceeds the cheapest bound but no path does")


# ---------------------------------------------------------------------------
# One-shot analysis bundle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FlowAnalysis:
    """Everything the equilibrium layer needs about a network:
    the max-flow value, the canonical min-cut, a canonical min-cost
    max-flow as a path flow, its transport cost, the cheapest path cost
    (None when the sink is unreachable), and the routing check
    (None when there is no flow to route)."""

    max_flow_value: Fraction
    min_cut: Cut
    optimal_flow: PathFlow
    min_transport_cost: Fraction
    cheapest_path_cost: Optional[Fraction]
    cheapest_routing: Optional[bool]
    routing_witness: Union[PathFlow, tuple, None]


def analyze(net: Network) -> FlowAnalysis:
    cut = min_cut(net)
    amounts, cost = min_cost_max_flow(net)
    value = flow_value(net, amounts)
    decomposition = decompose(net, amounts)
    optimal = path_flow(net, decomposition.paths)
    unit_cost = cheapest_path_cost(net)

    if value == 0:
        routing, witness = None, None
    else:
        check = _routing_check(net, value, cost, unit_cost, decomposition)
        routing = check.holds
        witness = check.certified_flow if check.holds else check.costly_path

    return FlowAnalysis(
        max_flow_value=value,
        min_cut=cut,
        optimal_flow=optimal,
        min_transport_cost=cost,
        cheapest_path_cost=unit_cost,
        cheapest_routing=routing,
        routing_witness=witness,
    )
