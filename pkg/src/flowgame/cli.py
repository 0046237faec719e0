"""Command-line interface.

Subcommands: analyze, solve, verify, best-response, maximin. Reports go
to stdout as JSON (``--format json``) or aligned text (default); identical
inputs and flags produce byte-identical output. All numbers on the wire
are exact rational strings.

Exit codes: 0 success, 1 profile is not an equilibrium, 2 parse or
validation failure, 3 the network lacks a cheapest-path optimal routing
where one is required, 4 parameters on a region boundary, 5 enumeration
budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from .equilibrium import (
    ClosedFormReport,
    EquilibriumProfile,
    VerificationReport,
    best_attacker_response,
    best_router_response,
    classify_region,
    closed_form_quantities,
    construct_equilibrium,
    maximin,
    minimax_certificate,
    verify_equilibrium,
)
from .errors import (
    BoundaryParams,
    CheapestRoutingRequired,
    EdgeBudgetExceeded,
    FlowGameError,
    PathBudgetExceeded,
    ParseError,
)
from .flows import FlowAnalysis, analyze
from .game import (
    Attack,
    GameParams,
    MixedStrategy,
    PathFlow,
    attack,
    mixture,
    path_flow,
    transport_cost,
)
from .network import Cut, Network, network_from_json
from .rational import parse_rational

EXIT_OK = 0
EXIT_NOT_NE = 1
EXIT_PARSE = 2
EXIT_ROUTING = 3
EXIT_BOUNDARY = 4
EXIT_BUDGET = 5


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _rat(value: Fraction) -> str:
    return str(value)


def _flow_json(net: Network, flow: PathFlow) -> dict:
    return {
        "paths": [
            {"nodes": list(nodes), "amount": _rat(amount)}
            for nodes, amount in flow.paths
        ],
        "value": _rat(flow.value),
        "transport_cost": _rat(transport_cost(net, flow)),
    }


def _attack_json(net: Network, atk: Attack) -> list:
    return [[tail, head] for tail, head in atk.pairs(net)]


def _cut_json(net: Network, cut: Cut) -> dict:
    return {
        "source_side": sorted(cut.s_side),
        "edges": [[net.edge(i).tail, net.edge(i).head] for i in cut.cut_set],
        "capacity": _rat(cut.capacity),
    }


def _strategy1_json(net: Network, strategy: MixedStrategy) -> list:
    return [
        {"prob": _rat(prob), "flow": _flow_json(net, flow)}
        for flow, prob in strategy.support
    ]


def _strategy2_json(net: Network, strategy: MixedStrategy) -> list:
    return [
        {"prob": _rat(prob), "attack": _attack_json(net, atk)}
        for atk, prob in strategy.support
    ]


def _profile_json(net: Network, profile: EquilibriumProfile) -> dict:
    return {
        "provenance": profile.provenance,
        "p1_strategy": _strategy1_json(net, profile.s1),
        "p2_strategy": _strategy2_json(net, profile.s2),
    }


def _closed_forms_json(report: ClosedFormReport) -> dict:
    return {
        "router_payoff": _rat(report.u1),
        "attacker_payoff": _rat(report.u2),
        "expected_initial_flow": _rat(report.exp_initial_flow),
        "expected_transport_cost": _rat(report.exp_transport_cost),
        "expected_attack_cost": _rat(report.exp_attack_cost),
        "expected_effective_flow": _rat(report.exp_effective_flow),
        "expected_lost_flow": _rat(report.exp_lost_flow),
        "yield": _rat(report.yield_ratio),
    }


def _verification_json(net: Network, report: VerificationReport) -> dict:
    return {
        "is_ne": report.is_ne,
        "router_payoff": _rat(report.u1),
        "attacker_payoff": _rat(report.u2),
        "router_gap": _rat(report.router_gap),
        "attacker_gap": _rat(report.attacker_gap),
        "router_best_response": {
            "value": _rat(report.router_best.value),
            "flow": _flow_json(net, report.router_best.action),
        },
        "attacker_best_response": {
            "value": _rat(report.attacker_best.value),
            "attack": _attack_json(net, report.attacker_best.action),
        },
        "property_checks": [
            {"name": check.name, "status": check.status, "detail": check.detail}
            for check in report.checks
        ],
    }


def _analysis_json(net: Network, analysis: FlowAnalysis) -> dict:
    if analysis.cheapest_routing is None:
        routing = "not applicable"
        witness = None
    elif analysis.cheapest_routing:
        routing = True
        witness = {
            "kind": "cheapest-path flow",
            "flow": _flow_json(net, analysis.routing_witness),
        }
    else:
        routing = False
        nodes, cost = analysis.routing_witness
        witness = {"kind": "costly path", "nodes": list(nodes), "cost": _rat(cost)}
    return {
        "network": {
            "nodes": len(net.nodes),
            "edges": len(net.edges),
            "source": net.source,
            "sink": net.sink,
        },
        "max_flow_value": _rat(analysis.max_flow_value),
        "cheapest_path_cost": (
            "infinite"
            if analysis.cheapest_path_cost is None
            else _rat(analysis.cheapest_path_cost)
        ),
        "min_cut": _cut_json(net, analysis.min_cut),
        "optimal_flow": _flow_json(net, analysis.optimal_flow),
        "min_transport_cost": _rat(analysis.min_transport_cost),
        "cheapest_routing": routing,
        "routing_witness": witness,
    }


# ---------------------------------------------------------------------------
# Deserialization
# ---------------------------------------------------------------------------

def _load_json_file(path: str) -> object:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def load_network(path: str) -> Network:
    return network_from_json(_load_json_file(path))


def parse_path_flow(net: Network, data) -> PathFlow:
    if not isinstance(data, dict) or "paths" not in data:
        raise ParseError("a flow must be an object with a 'paths' list")
    paths = []
    for entry in data["paths"]:
        try:
            nodes = entry["nodes"]
            amount = entry["amount"]
        except (TypeError, KeyError) as exc:
            raise ParseError("each path needs 'nodes' and 'amount'") from exc
        paths.append((tuple(nodes), parse_rational(amount, what="path amount")))
    return path_flow(net, paths)


def parse_router_strategy(net: Network, entries) -> MixedStrategy:
    if not isinstance(entries, list) or not entries:
        raise ParseError("'p1_strategy' must be a nonempty list")
    support = []
    for entry in entries:
        try:
            prob = entry["prob"]
            flow = entry["flow"]
        except (TypeError, KeyError) as exc:
            raise ParseError("each p1_strategy entry needs 'prob' and 'flow'") from exc
        support.append((parse_path_flow(net, flow), parse_rational(prob, what="prob")))
    return mixture(support)


def parse_attacker_strategy(net: Network, entries) -> MixedStrategy:
    if not isinstance(entries, list) or not entries:
        raise ParseError("'p2_strategy' must be a nonempty list")
    support = []
    for entry in entries:
        try:
            prob = entry["prob"]
            edges = entry["attack"]
        except (TypeError, KeyError) as exc:
            raise ParseError("each p2_strategy entry needs 'prob' and 'attack'") from exc
        if not isinstance(edges, list):
            raise ParseError("'attack' must be a list of [from, to] pairs")
        atk = attack(net, [tuple(pair) for pair in edges])
        support.append((atk, parse_rational(prob, what="prob")))
    return mixture(support)


def load_profile(net: Network, path: str) -> tuple:
    data = _load_json_file(path)
    if not isinstance(data, dict):
        raise ParseError("profile JSON must be an object")
    if "p1_strategy" not in data or "p2_strategy" not in data:
        raise ParseError("profile JSON needs 'p1_strategy' and 'p2_strategy'")
    return (
        parse_router_strategy(net, data["p1_strategy"]),
        parse_attacker_strategy(net, data["p2_strategy"]),
    )


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def _inline(value) -> bool:
    """Scalars and flat lists print on one line; nesting gets indented."""
    if isinstance(value, dict):
        return not value
    if isinstance(value, list):
        return all(not isinstance(item, dict) and _inline(item) for item in value)
    return True


def _text_lines(value, indent: int, lines: list) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        for key, item in value.items():
            if _inline(item):
                lines.append(f"{pad}{key}: {_scalar(item)}")
            else:
                lines.append(f"{pad}{key}:")
                _text_lines(item, indent + 1, lines)
    elif isinstance(value, list):
        for item in value:
            if _inline(item):
                lines.append(f"{pad}- {_scalar(item)}")
            else:
                lines.append(f"{pad}-")
                _text_lines(item, indent + 1, lines)
    else:
        lines.append(f"{pad}{_scalar(value)}")


def _scalar(item) -> str:
    if item is None:
        return "none"
    if isinstance(item, bool):
        return "true" if item else "false"
    if isinstance(item, list):
        return "[" + ", ".join(_scalar(v) for v in item) + "]"
    if isinstance(item, dict):
        return "{}"
    return str(item)


def emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        lines: list = []
        _text_lines(report, 0, lines)
        sys.stdout.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    net = load_network(args.network)
    report = _analysis_json(net, analyze(net))
    emit(report, args.format)
    return EXIT_OK


def _game_params(args) -> GameParams:
    return GameParams(
        parse_rational(args.p1, what="--p1"), parse_rational(args.p2, what="--p2")
    )


def cmd_solve(args) -> int:
    net = load_network(args.network)
    params = _game_params(args)
    analysis = analyze(net)

    try:
        profile = construct_equilibrium(net, params, analysis)
    except BoundaryParams as exc:
        report = {
            "region": "boundary",
            "message": str(exc),
            "equilibria": [_profile_json(net, p) for p in exc.profiles],
        }
        emit(report, args.format)
        return EXIT_BOUNDARY

    verification = verify_equilibrium(
        net,
        profile.s1,
        profile.s2,
        params,
        max_paths=args.max_paths,
        max_attack_edges=args.max_attack_edges,
        analysis=analysis,
    )
    if analysis.cheapest_path_cost is None:
        region_tag = "degenerate"
    else:
        region_tag = classify_region(params, analysis.cheapest_path_cost).tag
    closed = None
    if region_tag == "III":
        closed = _closed_forms_json(
            closed_form_quantities(
                params, analysis.cheapest_path_cost, analysis.max_flow_value
            )
        )
    report = {
        "region": region_tag,
        "parameters": {"p1": _rat(params.p1), "p2": _rat(params.p2)},
        "equilibrium": _profile_json(net, profile),
        "closed_forms": closed,
        "verification": _verification_json(net, verification),
    }
    emit(report, args.format)
    return EXIT_OK if verification.is_ne else EXIT_NOT_NE


def cmd_verify(args) -> int:
    net = load_network(args.network)
    params = _game_params(args)
    s1, s2 = load_profile(net, args.profile)
    report = verify_equilibrium(
        net,
        s1,
        s2,
        params,
        max_paths=args.max_paths,
        max_attack_edges=args.max_attack_edges,
    )
    emit(_verification_json(net, report), args.format)
    return EXIT_OK if report.is_ne else EXIT_NOT_NE


def cmd_best_response(args) -> int:
    net = load_network(args.network)
    params = _game_params(args)
    data = _load_json_file(args.opponent)
    if not isinstance(data, dict):
        raise ParseError("opponent strategy JSON must be an object")

    if args.player == 1:
        if "p2_strategy" not in data:
            raise ParseError("player 1 responds to a 'p2_strategy'")
        opponent = parse_attacker_strategy(net, data["p2_strategy"])
        best = best_router_response(net, opponent, params, args.max_paths)
        action = {"flow": _flow_json(net, best.action)}
    else:
        if "p1_strategy" not in data:
            raise ParseError("player 2 responds to a 'p1_strategy'")
        opponent = parse_router_strategy(net, data["p1_strategy"])
        best = best_attacker_response(net, opponent, params, args.max_attack_edges)
        action = {"attack": _attack_json(net, best.action)}

    report = {"player": args.player, "value": _rat(best.value), **action}
    emit(report, args.format)
    return EXIT_OK


def _action_name(action) -> str:
    if isinstance(action, PathFlow):
        return "zero flow" if action.is_zero else "path flow"
    return "empty attack" if action.is_empty else "attack"


def cmd_maximin(args) -> int:
    net = load_network(args.network)
    params = _game_params(args)
    analysis = analyze(net)

    value1, action1 = maximin(net, params, 1, args.max_paths, args.max_attack_edges)
    value2, action2 = maximin(net, params, 2, args.max_paths, args.max_attack_edges)
    report = {
        "router_maximin": {"value": _rat(value1), "action": _action_name(action1)},
        "attacker_maximin": {"value": _rat(value2), "action": _action_name(action2)},
    }
    try:
        cap1, cert1 = minimax_certificate(
            net, params, 1, analysis, args.max_paths, args.max_attack_edges
        )
        cap2, cert2 = minimax_certificate(
            net, params, 2, analysis, args.max_paths, args.max_attack_edges
        )
        report["minimax_certificates"] = {
            "router_side": {
                "best_response_value": _rat(cap1),
                "attacker_mixture": _strategy2_json(net, cert1),
            },
            "attacker_side": {
                "best_response_value": _rat(cap2),
                "router_mixture": _strategy1_json(net, cert2),
            },
        }
    except FlowGameError as exc:
        report["minimax_certificates"] = None
        report["minimax_note"] = str(exc)
    emit(report, args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowgame",
        description=(
            "Exact solver and verifier for a two-player network routing "
            "and interdiction game"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, game_params=True):
        p.add_argument("network", help="network JSON file")
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--max-paths", type=int, default=5000, dest="max_paths")
        p.add_argument(
            "--max-attack-edges", type=int, default=20, dest="max_attack_edges"
        )
        if game_params:
            p.add_argument("--p1", required=True, help="router value per delivered unit")
            p.add_argument("--p2", required=True, help="attacker value per lost unit")

    p = sub.add_parser("analyze", help="flow primitives and the routing check")
    common(p, game_params=False)
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("solve", help="construct and verify the equilibrium")
    common(p)
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("verify", help="check a strategy profile exactly")
    common(p)
    p.add_argument("profile", help="profile JSON file")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("best-response", help="optimal reply to an opponent mixture")
    common(p)
    p.add_argument("opponent", help="opponent strategy JSON file")
    p.add_argument("--player", type=int, choices=(1, 2), required=True)
    p.set_defaults(handler=cmd_best_response)

    p = sub.add_parser("maximin", help="maximin values and minimax certificates")
    common(p)
    p.set_defaults(handler=cmd_maximin)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (PathBudgetExceeded, EdgeBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CheapestRoutingRequired as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ROUTING
    except BoundaryParams as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUNDARY
    except FlowGameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
