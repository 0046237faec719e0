import random
from fractions import Fraction
from pathlib import Path

import pytest

from flowgame import Network, make_network, network_from_json, path_flow

FIXTURES = Path(__file__).parent / "fixtures"


def load_fixture(name: str) -> Network:
    return network_from_json(FIXTURES.joinpath(name).read_text())


@pytest.fixture(scope="session")
def triple_cut_net() -> Network:
    """Six nodes, nine edges; min-cut of three unit edges, cheapest path
    cost 3, and a unique min-cost max-flow on three cost-3 paths."""
    return load_fixture("triple_cut.json")


@pytest.fixture(scope="session")
def cheap_routing_net() -> Network:
    """Six nodes; max flow 3 at transport cost 9, all of it on cost-3
    paths, so the cheapest-routing property holds."""
    return load_fixture("cheap_routing.json")


@pytest.fixture(scope="session")
def detour_net() -> Network:
    """Four nodes; the unique min-cost max-flow uses two cost-4 paths even
    though a cost-3 path exists, so cheapest routing fails."""
    return load_fixture("detour.json")


@pytest.fixture(scope="session")
def square_net() -> Network:
    """Four-node square used for decomposition and attack examples."""
    return make_network(
        ["s", "1", "2", "t"],
        [
            ("s", "1", 2, 1),
            ("s", "2", 1, 1),
            ("1", "2", 1, 1),
            ("1", "t", 1, 1),
            ("2", "t", 2, 1),
        ],
        "s",
        "t",
    )


@pytest.fixture(scope="session")
def single_edge_net() -> Network:
    return make_network(["s", "t"], [("s", "t", 5, 2)], "s", "t")


# ---------------------------------------------------------------------------
# Random instance helpers (seeded by the caller)
# ---------------------------------------------------------------------------

def random_network(rng: random.Random, max_internal: int = 4) -> Network:
    """Random directed network with at most ``max_internal`` + 2 nodes,
    integer capacities and costs up to 3."""
    internal = [f"v{i}" for i in range(rng.randint(0, max_internal))]
    nodes = ["s", "t"] + internal
    edges = []
    for tail in nodes:
        for head in nodes:
            if tail == head:
                continue
            if rng.random() < 0.4:
                edges.append((tail, head, rng.randint(0, 3), rng.randint(0, 3)))
    return make_network(nodes, edges, "s", "t")


def random_path_flow(rng: random.Random, net: Network, paths) -> "path_flow":
    """A feasible flow over up to two of the given simple paths."""
    if not paths:
        return path_flow(net)
    remaining = {e.id: e.capacity for e in net.edges}
    items = []
    for nodes in rng.sample(list(paths), min(rng.randint(0, 2), len(paths))):
        ids = net.edge_ids_on_path(nodes)
        headroom = min(remaining[i] for i in ids)
        if headroom <= 0:
            continue
        amount = headroom * Fraction(rng.randint(1, 4), 4)
        for i in ids:
            remaining[i] -= amount
        items.append((nodes, amount))
    return path_flow(net, items)


def random_probabilities(rng: random.Random, count: int) -> list:
    weights = [rng.randint(1, 5) for _ in range(count)]
    total = sum(weights)
    return [Fraction(w, total) for w in weights]
