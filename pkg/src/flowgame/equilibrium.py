"""Equilibrium construction, closed-form quantities, best-response
oracles, profile verification, and maximin/minimax values.

The parameter plane splits into three open regions relative to the
cheapest per-unit path cost:

* Region I: p1 below the cheapest path cost. Routing anything loses
  money, so nobody acts.
* Region II: p1 above the cost, p2 below 1. Lost flow is worth less
  than the capacity an attack pays for, so the attacker stays out and
  the router ships a cheapest max flow.
* Region III: p1 above the cost and p2 above 1. No pure profile is
  stable; the constructed equilibrium mixes the zero flow with a
  cheapest max flow, and the empty attack with disrupting a full
  min-cut.

Points exactly on a boundary (p1 equal to the path cost, or p2 equal
to 1 with p1 above the cost) are reported as such, never folded into a
neighbouring region: the closed-form results are stated on open regions.

All decisions are exact. A profile is an equilibrium iff both
best-response gaps are exactly zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    BoundaryParams,
    CheapestRoutingRequired,
    EdgeBudgetExceeded,
    NoRoute,
    PathBudgetExceeded,
    WrongRegion,
)
from .flows import FlowAnalysis, all_min_cuts, analyze
from .game import (
    Attack,
    GameParams,
    MixedStrategy,
    PathFlow,
    attack,
    attack_cost,
    effective_flow,
    expected_edge_loads,
    expected_payoffs,
    mixture,
    path_cost,
    path_flow,
    point_mass,
    profile_expectations,
    transport_cost,
)
from .lp import solve_lp
from .network import Network, ZERO

ONE = Fraction(1)

# Partition enumeration of every min-cut is used for the support-property
# checks up to this many nodes; larger networks fall back to the canonical
# residual min-cut.
ALL_CUTS_NODE_LIMIT = 16


# ---------------------------------------------------------------------------
# Regions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Region:
    """Parameter region tag: "I", "II", "III", or "boundary" with flags
    saying which equality binds."""

    tag: str
    p1_at_cost: bool = False
    p2_at_one: bool = False

    def describe(self) -> str:
        if self.tag != "boundary":
            return self.tag
        parts = []
        if self.p1_at_cost:
            parts.append("p1 equals the cheapest path cost")
        if self.p2_at_one:
            parts.append("p2 equals 1")
        return "boundary (" + " and ".join(parts) + ")"


def classify_region(params: GameParams, unit_cost: Optional[Fraction]) -> Region:
    """Exact classification of (p1, p2) against the cheapest path cost."""
    if unit_cost is None:
        raise NoRoute(
            "the sink is unreachable, the cheapest path cost is infinite; "
            "the only equilibrium is no flow and no attack"
        )
    if params.p1 < unit_cost:
        return Region("I")
    if params.p1 == unit_cost:
        return Region("boundary", p1_at_cost=True, p2_at_one=params.p2 == 1)
    if params.p2 == 1:
        return Region("boundary", p2_at_one=True)
    if params.p2 < 1:
        return Region("II")
    return Region("III")


# ---------------------------------------------------------------------------
# Constructed equilibria
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EquilibriumProfile:
    s1: MixedStrategy
    s2: MixedStrategy
    provenance: str


def _mixture_drop_zero(pairs) -> MixedStrategy:
    """Mixture builder tolerating zero-probability atoms: with a zero
    cheapest path cost the empty attack gets weight cost/p1 = 0 and the
    mixture degenerates to a point mass."""
    return mixture([(action, prob) for action, prob in pairs if prob != 0])


def construct_equilibrium(
    net: Network,
    params: GameParams,
    analysis: Optional[FlowAnalysis] = None,
) -> EquilibriumProfile:
    """Build the equilibrium for the network's parameter region.

    Region I gives the pure no-action profile, Region II the pure
    cheapest-routing profile, Region III the two-point mixture with
    router probabilities (1 - 1/p2, 1/p2) on (zero flow, cheapest max
    flow) and attacker probabilities (cost/p1, 1 - cost/p1) on (no
    attack, full min-cut attack). Region III requires the network to
    admit a min-cost max-flow on cheapest paths only. A disconnected
    network yields the degenerate no-action profile directly.
    """
    if analysis is None:
        analysis = analyze(net)
    zero = path_flow(net)
    no_attack = attack(net)
    unit_cost = analysis.cheapest_path_cost
    if unit_cost is None:
        return EquilibriumProfile(
            point_mass(zero), point_mass(no_attack), "degenerate-no-route"
        )

    region = classify_region(params, unit_cost)
    if region.tag == "boundary":
        profiles = ()
        if region.p1_at_cost and params.p2 < 1:
            # Both pure profiles are equilibria here, with payoffs (0, 0).
            profiles = (
                EquilibriumProfile(
                    point_mass(zero), point_mass(no_attack), "boundary-no-action"
                ),
                EquilibriumProfile(
                    point_mass(analysis.optimal_flow),
                    point_mass(no_attack),
                    "boundary-route-only",
                ),
            )
        raise BoundaryParams(
            f"parameters sit on a region boundary: {region.describe()}",
            profiles=profiles,
        )
    if region.tag == "I":
        return EquilibriumProfile(point_mass(zero), point_mass(no_attack), "no-action")
    if region.tag == "II":
        return EquilibriumProfile(
            point_mass(analysis.optimal_flow), point_mass(no_attack), "route-only"
        )

    if not analysis.cheapest_routing:
        witness = analysis.routing_witness
        detail = ""
        if isinstance(witness, tuple):
            nodes, cost = witness
            detail = (
                f"; the optimal routing uses path {list(nodes)} of cost {cost}, "
                f"above the cheapest path cost {unit_cost}"
            )
        raise CheapestRoutingRequired(
            "the mixed construction needs a min-cost max-flow that travels "
            "only along cheapest paths, and this network has none" + detail,
            witness=witness,
        )
    cut_attack = attack(net, analysis.min_cut.cut_set)
    s1 = _mixture_drop_zero(
        [(zero, 1 - 1 / params.p2), (analysis.optimal_flow, 1 / params.p2)]
    )
    s2 = _mixture_drop_zero(
        [(no_attack, unit_cost / params.p1), (cut_attack, 1 - unit_cost / params.p1)]
    )
    return EquilibriumProfile(s1, s2, "contested-mixed")


# ---------------------------------------------------------------------------
# Closed-form equilibrium quantities (Region III)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosedFormReport:
    """Quantities shared by every equilibrium in the contested region:
    payoffs are zero, and the expected flows and costs depend only on
    (p1, p2), the cheapest path cost, and the max-flow value."""

    u1: Fraction
    u2: Fraction
    exp_initial_flow: Fraction
    exp_transport_cost: Fraction
    exp_attack_cost: Fraction
    exp_effective_flow: Fraction
    exp_lost_flow: Fraction
    yield_ratio: Fraction


def closed_form_quantities(
    params: GameParams,
    unit_cost: Optional[Fraction],
    max_flow_value: Fraction,
) -> ClosedFormReport:
    region = classify_region(params, unit_cost)
    if region.tag != "III":
        raise WrongRegion(
            "closed-form quantities hold only in the contested region "
            f"(p1 above the cheapest path cost, p2 above 1); got {region.describe()}"
        )
    p1, p2 = params.p1, params.p2
    theta = max_flow_value
    return ClosedFormReport(
        u1=ZERO,
        u2=ZERO,
        exp_initial_flow=theta / p2,
        exp_transport_cost=unit_cost * theta / p2,
        exp_attack_cost=(1 - unit_cost / p1) * theta,
        exp_effective_flow=unit_cost * theta / (p1 * p2),
        exp_lost_flow=(1 - unit_cost / p1) * theta / p2,
        yield_ratio=unit_cost / p1,
    )


# ---------------------------------------------------------------------------
# Best-response oracles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BestResponse:
    value: Fraction
    action: Union[PathFlow, Attack]


def enumerate_simple_paths(net: Network, budget: int) -> tuple:
    """All simple source-sink paths over positive-capacity edges, in
    lowest-edge-id depth-first order. Raises PathBudgetExceeded as soon as
    the count would pass ``budget``."""
    paths = []
    on_path = [net.source]
    visited = {net.source}

    def walk(node):
        if node == net.sink:
            if len(paths) >= budget:
                raise PathBudgetExceeded(
                    f"more than {budget} simple source-sink paths; raise the budget"
                )
            paths.append(tuple(on_path))
            return
        for e in net.out_edges[node]:
            if e.capacity <= 0 or e.head in visited:
                continue
            on_path.append(e.head)
            visited.add(e.head)
            walk(e.head)
            on_path.pop()
            visited.remove(e.head)

    walk(net.source)
    return tuple(paths)


def best_router_response(
    net: Network,
    s2: MixedStrategy,
    params: GameParams,
    max_paths: int = 5000,
) -> BestResponse:
    """Exact best response of the router to an attacker mixture.

    Per unit of flow, a path is worth p1 times its survival probability
    minus its transport cost. The best response solves the packing
    program: maximize total path worth subject to edge capacities. Paths
    with non-positive worth never help, so only the profitable ones enter
    the program; with none, the zero flow (worth 0) is optimal. Pure
    path flows suffice because the router payoff is linear in path
    amounts and loops only add cost.
    """
    weighted = []
    for nodes in enumerate_simple_paths(net, max_paths):
        ids = frozenset(net.edge_ids_on_path(nodes))
        survival = sum(
            (q for atk, q in s2.support if ids.isdisjoint(atk.edge_ids)), ZERO
        )
        weight = params.p1 * survival - path_cost(net, nodes)
        if weight > 0:
            weighted.append((nodes, ids, weight))
    if not weighted:
        return BestResponse(ZERO, path_flow(net))

    edge_ids = sorted(set().union(*(ids for _, ids, _ in weighted)))
    rows = []
    for edge_id in edge_ids:
        coeffs = [ONE if edge_id in ids else ZERO for _, ids, _ in weighted]
        rows.append((coeffs, net.edge(edge_id).capacity))
    result = solve_lp([-w for _, _, w in weighted], ub=rows)
    if result.status != "optimal":
        raise RuntimeError(f"path packing program came back {result.status}")
    amounts = [
        (nodes, x)
        for (nodes, _, _), x in zip(weighted, result.solution)
        if x > 0
    ]
    return BestResponse(-result.objective, path_flow(net, amounts))


def best_attacker_response(
    net: Network,
    s1: MixedStrategy,
    params: GameParams,
    max_attack_edges: int = 20,
    exhaustive: bool = False,
) -> BestResponse:
    """Exact best response of the attacker to a router mixture, by
    enumerating edge subsets.

    By default only edges carrying positive expected flow are candidates:
    disrupting an unloaded edge loses nothing for the router and costs
    its capacity, so it never appears in a best response. ``exhaustive``
    enumerates subsets of every edge instead. Ties break toward the
    lexicographically smallest edge set, so the empty attack wins all
    zero-value ties.
    """
    loads = expected_edge_loads(net, s1)
    if exhaustive:
        candidates = sorted(loads)
    else:
        candidates = [edge_id for edge_id in sorted(loads) if loads[edge_id] > 0]
    if len(candidates) > max_attack_edges:
        raise EdgeBudgetExceeded(
            f"{len(candidates)} candidate edges exceed the attack budget "
            f"of {max_attack_edges}"
        )

    flows_info = []
    for flow, p in s1.support:
        paths = [
            (frozenset(net.edge_ids_on_path(nodes)), amount)
            for nodes, amount in flow.paths
        ]
        flows_info.append((p, flow.value, paths))

    best_value = None
    best_ids = None
    for size in range(len(candidates) + 1):
        for ids in itertools.combinations(candidates, size):
            id_set = frozenset(ids)
            cost = sum((net.edge(i).capacity for i in ids), ZERO)
            lost = ZERO
            for p, total, paths in flows_info:
                surviving = sum(
                    (amount for edge_set, amount in paths if id_set.isdisjoint(edge_set)),
                    ZERO,
                )
                lost += p * (total - surviving)
            value = params.p2 * lost - cost
            if (
                best_value is None
                or value > best_value
                or (value == best_value and ids < best_ids)
            ):
                best_value = value
                best_ids = ids
    return BestResponse(best_value, Attack(best_ids))


# ---------------------------------------------------------------------------
# Per-edge saturation test
# ---------------------------------------------------------------------------

def edge_always_saturated(
    net: Network,
    max_flow_value: Fraction,
    min_transport_cost: Fraction,
    edge_id: int,
) -> bool:
    """Whether every min-cost max-flow fills the edge to capacity.

    Decided by a secondary program: over all flows with the maximum value
    and the minimum transport cost, minimize the amount on this edge; the
    edge is saturated by every optimal routing iff that minimum equals
    its capacity.
    """
    n = len(net.edges)
    eq_rows = []
    for node in sorted(net.nodes):
        if node in (net.source, net.sink):
            continue
        coeffs = [ZERO] * n
        for e in net.in_edges[node]:
            coeffs[e.id] += ONE
        for e in net.out_edges[node]:
            coeffs[e.id] -= ONE
        eq_rows.append((coeffs, ZERO))
    value_row = [ZERO] * n
    for e in net.in_edges[net.sink]:
        value_row[e.id] += ONE
    for e in net.out_edges[net.sink]:
        value_row[e.id] -= ONE
    eq_rows.append((value_row, max_flow_value))
    eq_rows.append(([e.cost for e in net.edges], min_transport_cost))
    ub_rows = []
    for e in net.edges:
        coeffs = [ZERO] * n
        coeffs[e.id] = ONE
        ub_rows.append((coeffs, e.capacity))

    objective = [ZERO] * n
    objective[edge_id] = ONE
    result = solve_lp(objective, eq=eq_rows, ub=ub_rows)
    if result.status != "optimal":
        raise RuntimeError(
            f"saturation program came back {result.status}; the optimal "
            "routing itself should be feasible"
        )
    return result.objective == net.edge(edge_id).capacity


# ---------------------------------------------------------------------------
# Profile verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PropertyCheck:
    name: str
    status: str  # "pass", "fail", or "not applicable"
    detail: str


@dataclass(frozen=True)
class VerificationReport:
    """Best-response gaps for both players, the equilibrium verdict, and
    (for verified equilibria in the contested region with cheapest-path
    routing) the structural property checks."""

    is_ne: bool
    router_gap: Fraction
    attacker_gap: Fraction
    u1: Fraction
    u2: Fraction
    router_best: BestResponse
    attacker_best: BestResponse
    region: Optional[Region]
    checks: tuple


def verify_equilibrium(
    net: Network,
    s1: MixedStrategy,
    s2: MixedStrategy,
    params: GameParams,
    max_paths: int = 5000,
    max_attack_edges: int = 20,
    exhaustive_attacks: bool = False,
    analysis: Optional[FlowAnalysis] = None,
) -> VerificationReport:
    """Decide exactly whether (s1, s2) is an equilibrium.

    The router gap is the best-response value minus the expected router
    payoff (and symmetrically for the attacker); the profile is an
    equilibrium iff both gaps are exactly zero. For equilibria in the
    contested region of a cheapest-routing network, the structural
    properties every equilibrium must satisfy are checked as well.
    """
    if analysis is None:
        analysis = analyze(net)
    u1, u2 = expected_payoffs(net, s1, s2, params)
    router_best = best_router_response(net, s2, params, max_paths)
    attacker_best = best_attacker_response(
        net, s1, params, max_attack_edges, exhaustive=exhaustive_attacks
    )
    router_gap = router_best.value - u1
    attacker_gap = attacker_best.value - u2
    is_ne = router_gap == 0 and attacker_gap == 0

    region = None
    if analysis.cheapest_path_cost is not None:
        region = classify_region(params, analysis.cheapest_path_cost)

    checks = ()
    if is_ne and region is not None and region.tag == "III" and analysis.cheapest_routing:
        checks = _equilibrium_property_checks(net, s1, s2, params, analysis)

    return VerificationReport(
        is_ne=is_ne,
        router_gap=router_gap,
        attacker_gap=attacker_gap,
        u1=u1,
        u2=u2,
        router_best=router_best,
        attacker_best=attacker_best,
        region=region,
        checks=checks,
    )


def _relevant_min_cuts(net: Network, analysis: FlowAnalysis) -> tuple:
    if len(net.nodes) <= ALL_CUTS_NODE_LIMIT:
        return all_min_cuts(net)
    return (analysis.min_cut,)


def _is_cheapest_max_flow(net, flow, analysis) -> bool:
    """Does this flow qualify as a cheapest-path max flow?"""
    return (
        flow.value == analysis.max_flow_value
        and transport_cost(net, flow) == analysis.cheapest_path_cost * analysis.max_flow_value
        and all(
            path_cost(net, nodes) == analysis.cheapest_path_cost
            for nodes, _ in flow.paths
        )
    )


def _equilibrium_property_checks(net, s1, s2, params, analysis) -> tuple:
    theta = analysis.max_flow_value
    unit_cost = analysis.cheapest_path_cost
    p1, p2 = params.p1, params.p2
    checks = []

    # Closed forms against direct expectation over the support.
    report = closed_form_quantities(params, unit_cost, theta)
    exps = profile_expectations(net, s1, s2)
    u1, u2 = expected_payoffs(net, s1, s2, params)
    comparisons = [
        ("router payoff", u1, report.u1),
        ("attacker payoff", u2, report.u2),
        ("expected initial flow", exps.initial_flow, report.exp_initial_flow),
        ("expected transport cost", exps.transport_cost, report.exp_transport_cost),
        ("expected attack cost", exps.attack_cost, report.exp_attack_cost),
        ("expected delivered flow", exps.effective_flow, report.exp_effective_flow),
        ("expected lost flow", exps.lost_flow, report.exp_lost_flow),
    ]
    if exps.initial_flow > 0:
        comparisons.append(
            ("yield", exps.effective_flow / exps.initial_flow, report.yield_ratio)
        )
    mismatches = [
        f"{name}: {actual} != {expected}"
        for name, actual, expected in comparisons
        if actual != expected
    ]
    checks.append(
        PropertyCheck(
            "closed-form quantities",
            "fail" if mismatches else "pass",
            "; ".join(mismatches) or "direct expectations match the closed forms",
        )
    )

    # No supported attack costs more than disrupting a min-cut.
    over_budget = [
        atk for atk, _ in s2.support if attack_cost(net, atk) > theta
    ]
    checks.append(
        PropertyCheck(
            "attack cost within min-cut budget",
            "fail" if over_budget else "pass",
            f"{len(over_budget)} supported attacks cost more than {theta}"
            if over_budget
            else f"every supported attack costs at most {theta}",
        )
    )

    # Every disrupted edge is filled to capacity by every optimal routing.
    disrupted = sorted({i for atk, _ in s2.support for i in atk.edge_ids})
    unsaturated = [
        i
        for i in disrupted
        if not edge_always_saturated(net, theta, analysis.min_transport_cost, i)
    ]
    checks.append(
        PropertyCheck(
            "disrupted edges saturated by every optimal routing",
            "fail" if unsaturated else "pass",
            "edges "
            + ", ".join(
                f"({net.edge(i).tail}, {net.edge(i).head})" for i in unsaturated
            )
            + " admit an optimal routing below capacity"
            if unsaturated
            else "all disrupted edges are saturated in every optimal routing",
        )
    )

    cuts = _relevant_min_cuts(net, analysis)
    loads = expected_edge_loads(net, s1)

    # Expected load on each min-cut edge equals its capacity over p2.
    load_misses = []
    for cut in cuts:
        for edge_id in cut.cut_set:
            expected = net.edge(edge_id).capacity / p2
            if loads[edge_id] != expected:
                edge = net.edge(edge_id)
                load_misses.append(
                    f"({edge.tail}, {edge.head}): {loads[edge_id]} != {expected}"
                )
    checks.append(
        PropertyCheck(
            "min-cut edge loads equal capacity over p2",
            "fail" if load_misses else "pass",
            "; ".join(load_misses)
            or f"checked {len(cuts)} min-cut(s)",
        )
    )

    # Uniform disruption probability when the attacks live inside one cut.
    applicable = [
        cut
        for cut in cuts
        if all(set(atk.edge_ids) <= set(cut.cut_set) for atk, _ in s2.support)
    ]
    if not applicable:
        checks.append(
            PropertyCheck(
                "uniform disruption probability across the min-cut",
                "not applicable",
                "supported attacks are not contained in a single min-cut",
            )
        )
    else:
        expected_prob = 1 - unit_cost / p1
        prob_misses = []
        for cut in applicable:
            for edge_id in cut.cut_set:
                prob = sum(
                    (q for atk, q in s2.support if edge_id in atk.edge_ids), ZERO
                )
                if prob != expected_prob:
                    edge = net.edge(edge_id)
                    prob_misses.append(
                        f"({edge.tail}, {edge.head}): {prob} != {expected_prob}"
                    )
        checks.append(
            PropertyCheck(
                "uniform disruption probability across the min-cut",
                "fail" if prob_misses else "pass",
                "; ".join(prob_misses)
                or f"each edge of {len(applicable)} containing min-cut(s) is "
                f"disrupted with probability {expected_prob}",
            )
        )

    # Every min-cut edge is used by some supported flow.
    uncovered = []
    for cut in cuts:
        for edge_id in cut.cut_set:
            if not any(
                flow.edge_amounts(net).get(edge_id, ZERO) > 0
                for flow, _ in s1.support
            ):
                edge = net.edge(edge_id)
                uncovered.append(f"({edge.tail}, {edge.head})")
    checks.append(
        PropertyCheck(
            "min-cut edges covered by supported flows",
            "fail" if uncovered else "pass",
            "no supported flow crosses " + ", ".join(uncovered)
            if uncovered
            else "every min-cut edge carries flow under some supported action",
        )
    )

    # Probability bounds on the four named actions when supported.
    bound_misses = []
    cut_sets = [frozenset(cut.cut_set) for cut in cuts]
    for flow, prob in s1.support:
        if flow.is_zero and prob > 1 - 1 / p2:
            bound_misses.append(f"zero flow has probability {prob} > {1 - 1 / p2}")
        if _is_cheapest_max_flow(net, flow, analysis) and prob > 1 / p2:
            bound_misses.append(
                f"a cheapest max flow has probability {prob} > {1 / p2}"
            )
    for atk, prob in s2.support:
        if atk.is_empty and prob > unit_cost / p1:
            bound_misses.append(
                f"the empty attack has probability {prob} > {unit_cost / p1}"
            )
        if frozenset(atk.edge_ids) in cut_sets and prob > 1 - unit_cost / p1:
            bound_misses.append(
                f"a full min-cut attack has probability {prob} > {1 - unit_cost / p1}"
            )
    checks.append(
        PropertyCheck(
            "support probability bounds",
            "fail" if bound_misses else "pass",
            "; ".join(bound_misses) or "all supported named actions respect their bounds",
        )
    )

    # Delivery identity: what the optimal routing would deliver under the
    # attacker's mixture equals the max-flow value minus the expected
    # attack cost.
    delivered = s2.expect(
        lambda atk: effective_flow(net, analysis.optimal_flow, atk).value
    )
    expected_delivery = theta - exps.attack_cost
    checks.append(
        PropertyCheck(
            "optimal-routing delivery identity",
            "pass" if delivered == expected_delivery else "fail",
            f"expected delivery of the optimal routing is {delivered}, "
            f"max-flow value minus expected attack cost is {expected_delivery}",
        )
    )

    return tuple(checks)


# ---------------------------------------------------------------------------
# Maximin and minimax
# ---------------------------------------------------------------------------

def maximin(
    net: Network,
    params: GameParams,
    player: int,
    max_paths: int = 5000,
    max_attack_edges: int = 20,
) -> tuple:
    """Pure maximin value and an action attaining it, for either player.

    Against a flow, the attacker can disrupt every edge (her own cost does
    not enter the router's payoff), leaving the router with minus the
    transport cost; against an attack, the router can ship nothing,
    leaving the attacker with minus the attack cost. Since costs are
    nonnegative, the guaranteed payoff of every candidate action is at
    most zero and the costless action achieves exactly zero. The maximum
    is computed over the enumerated candidates rather than assumed.
    """
    if player == 1:
        best = ZERO
        action: Union[PathFlow, Attack] = path_flow(net)
        for nodes in enumerate_simple_paths(net, max_paths):
            unit_amount = min(
                net.edge(i).capacity for i in net.edge_ids_on_path(nodes)
            )
            guaranteed = -unit_amount * path_cost(net, nodes)
            if guaranteed > best:
                best = guaranteed
                action = path_flow(net, [(nodes, unit_amount)])
        return best, action
    if player == 2:
        best = ZERO
        action = attack(net)
        # Attack costs are additive over edges, so single-edge candidates
        # already witness the maximum of the guaranteed payoff.
        for e in net.edges:
            guaranteed = -e.capacity
            if guaranteed > best:
                best = guaranteed
                action = attack(net, [e.id])
        return best, action
    raise ValueError(f"player must be 1 or 2, got {player!r}")


def minimax_certificate(
    net: Network,
    params: GameParams,
    player: int,
    analysis: Optional[FlowAnalysis] = None,
    max_paths: int = 5000,
    max_attack_edges: int = 20,
) -> tuple:
    """An opponent mixture capping the player's best response at zero.

    For the router's side the certificate is an attacker mixture; against
    it no flow earns more than zero (checked by the exact best-response
    oracle, whose value is returned). Together with the maximin value of
    zero this pins the minimax value to zero exactly. In Region I the
    costless point masses certify; above the cheapest path cost the
    attacker mixes the empty attack (probability cost/p1) with a full
    min-cut attack, and in the contested region the router mixes the zero
    flow (probability 1 - 1/p2) with a cheapest max flow.
    """
    if player not in (1, 2):
        raise ValueError(f"player must be 1 or 2, got {player!r}")
    if analysis is None:
        analysis = analyze(net)
    unit_cost = analysis.cheapest_path_cost

    if unit_cost is None:
        certificate = point_mass(attack(net) if player == 1 else path_flow(net))
    else:
        region = classify_region(params, unit_cost)
        if region.tag == "boundary":
            raise WrongRegion(
                f"minimax certificates are stated on open regions; {region.describe()}"
            )
        if player == 1:
            if region.tag == "I":
                certificate = point_mass(attack(net))
            else:
                certificate = _mixture_drop_zero(
                    [
                        (attack(net), unit_cost / params.p1),
                        (attack(net, analysis.min_cut.cut_set), 1 - unit_cost / params.p1),
                    ]
                )
        else:
            if region.tag in ("I", "II"):
                certificate = point_mass(path_flow(net))
            else:
                if not analysis.cheapest_routing:
                    raise CheapestRoutingRequired(
                        "the router-side certificate mixes in a cheapest max "
                        "flow, which this network does not admit",
                        witness=analysis.routing_witness,
                    )
                certificate = mixture(
                    [
                        (path_flow(net), 1 - 1 / params.p2),
                        (analysis.optimal_flow, 1 / params.p2),
                    ]
                )

    if player == 1:
        value = best_router_response(net, certificate, params, max_paths).value
    else:
        value = best_attacker_response(net, certificate, params, max_attack_edges).value
    return value, certificate
