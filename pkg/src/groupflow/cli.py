"""Command-line front end.

Exit codes: 0 = affirmative/success, 1 = negative verdict (non-planar,
leaks, not extra-planar, ...), 2 = usage or parse error, 3 = internal
invariant violation.  Negative mathematical verdicts are results, not
failures, so shell pipelines can branch on them.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import jsonio
from .errors import GraphIsPlanar, GroupFlowError, InternalInvariantError, ParseError
from .flows import (
    LeakVerdict,
    detect_binary_leak,
    detect_leak,
    example_flow_k33,
    example_flow_k33_minus,
    example_flow_k5,
    synthesize_leaking_flow,
)
from .graphs import DEFAULT_HOST_BOUND, find_minor, named_graph
from .groupleak import build_delta, is_binary_leakproof_group, is_leakproof_group
from .groups import DEFAULT_MAX_ORDER, standard_group
from .planar import RotationSystem, euler_planar_check, extra_planar, faces, test_planarity

_MODEL_NAMES = {
    "k5": "complete:5",
    "k33": "complete_bipartite:3,3",
    "k5minus": "k5minus",
    "k33minus": "k33minus",
}


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")


def _read_graph(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    if text.strip().startswith("{"):
        try:
            return jsonio.graph_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    return jsonio.graph_from_text(text)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        out = jsonio.dumps(payload)
    else:
        out = text if text.endswith("\n") else text + "\n"
    if getattr(args, "output", None):
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)


def _cmd_planar(args) -> int:
    G = _read_graph(args.graph)
    result = test_planarity(G)
    if isinstance(result, RotationSystem):
        payload = {"planar": True, **jsonio.rotation_to_json(result)}
        _emit(args, payload, "planar")
        return 0
    model_name = "K5" if result.model.n == 5 else "K3,3"
    payload = {"planar": False, "witness": jsonio.witness_to_json(result)}
    _emit(args, payload, f"non-planar: contains a {model_name} minor")
    return 1


def _cmd_extra_planar(args) -> int:
    G = _read_graph(args.graph)
    verdict = extra_planar(G)
    if verdict.extra_planar:
        payload = {
            "extra_planar": True,
            "embeddings": [
                {
                    "pair": [jsonio.vertex_str(u), jsonio.vertex_str(v)],
                    **jsonio.rotation_to_json(R),
                }
                for (u, v), R in sorted(verdict.embeddings.items())
            ],
        }
        _emit(args, payload, "extra-planar")
        return 0
    u, v = verdict.pair
    payload = {
        "extra_planar": False,
        "pair": [jsonio.vertex_str(u), jsonio.vertex_str(v)],
        "witness": jsonio.witness_to_json(verdict.witness),
    }
    _emit(args, payload, f"not extra-planar: adding ({u},{v}) is non-planar")
    return 1


def _cmd_minor(args) -> int:
    G = _read_graph(args.graph)
    model = named_graph(_MODEL_NAMES[args.model])
    witness = find_minor(G, model, host_bound=args.max_size or DEFAULT_HOST_BOUND)
    if witness is None:
        _emit(args, {"minor": False, "model": args.model}, f"no {args.model} minor")
        return 1
    payload = {"minor": True, "model": args.model, "witness": jsonio.witness_to_json(witness)}
    _emit(args, payload, f"{args.model} minor found")
    return 0


def _cmd_faces(args) -> int:
    G = _read_graph(args.graph)
    R = jsonio.rotation_from_json(_read_json(args.rotation), G)
    walks = faces(R)
    payload = {
        "faces": [[jsonio.vertex_str(x) for x in w.sequence] for w in walks],
        "euler_planar": euler_planar_check(R),
    }
    text = "\n".join(" ".join(map(str, w.sequence)) for w in walks) or "(no faces)"
    _emit(args, payload, text)
    return 0


def _cmd_check_flow(args) -> int:
    flow = jsonio.flow_from_json(_read_json(args.flow),
                                 max_order=args.max_size or DEFAULT_MAX_ORDER)
    if args.binary:
        u = jsonio._vertex_token(args.binary[0])
        v = jsonio._vertex_token(args.binary[1])
        value = detect_binary_leak(flow, u, v)
        if value is None:
            payload = {"kind": "NoBinaryLeak", "pair": [str(u), str(v)],
                       "reason": "flow is not tractable-and-conserving off the pair"}
            _emit(args, payload, "no binary leak (preconditions fail)")
            return 0
        name = flow.group.name(value)
        if value == flow.group.identity:
            _emit(args, {"kind": "NoBinaryLeak", "pair": [str(u), str(v)], "value": name},
                  "no binary leak: e(u)e(v) = 1")
            return 0
        _emit(args, {"kind": "BinaryLeakAt", "pair": [str(u), str(v)], "value": name},
              f"binary leak at ({u},{v}) with value {name}")
        return 1
    verdict = detect_leak(flow)
    payload = jsonio.leak_verdict_to_json(verdict, flow.group)
    _emit(args, payload, verdict.kind)
    return 0 if verdict.kind == LeakVerdict.CONSERVING else 1


def _cmd_leak_witness(args) -> int:
    G = _read_graph(args.graph)
    try:
        flow = synthesize_leaking_flow(G)
    except GraphIsPlanar:
        _emit(args, {"kind": "GraphIsPlanar"}, "graph is planar: no leaking flow exists")
        return 1
    verdict = detect_leak(flow)
    payload = jsonio.flow_to_json(flow)
    payload["verdict"] = jsonio.leak_verdict_to_json(verdict, flow.group)
    _emit(args, payload, f"leaking flow written (leaks at {verdict.vertex})")
    return 0


def _cmd_group_leakproof(args) -> int:
    bound = args.max_size or DEFAULT_MAX_ORDER
    G = standard_group(args.group, max_order=bound)
    delta = build_delta(G, max_order=bound)
    verdict = is_leakproof_group(G, delta=delta)
    payload = {
        "group": args.group,
        "leakproof": verdict.leakproof,
        "delta_invariant_factors": delta.invariant_factors(),
    }
    if not verdict.leakproof:
        payload["witness"] = G.name(verdict.witness)
    text = f"{args.group}: " + ("leak-proof" if verdict.leakproof
                                else f"leaks at {G.name(verdict.witness)}")
    _emit(args, payload, text)
    return 0 if verdict.leakproof else 1


def _cmd_group_binary_leakproof(args) -> int:
    bound = args.max_size or DEFAULT_MAX_ORDER
    G = standard_group(args.group, max_order=bound)
    delta = build_delta(G, max_order=bound)
    verdict = is_binary_leakproof_group(G, delta=delta)
    payload = {
        "group": args.group,
        "binary_leakproof": verdict.injective,
        "delta_invariant_factors": delta.invariant_factors(),
    }
    if not verdict.injective:
        payload["collision"] = [G.name(x) for x in verdict.collision]
    text = f"{args.group}: " + ("binary leak-proof" if verdict.injective else "not binary leak-proof")
    _emit(args, payload, text)
    return 0 if verdict.injective else 1


def _cmd_examples(args) -> int:
    builders = {
        "k33": example_flow_k33,
        "k5": example_flow_k5,
        "k33minus": example_flow_k33_minus,
    }
    _, flow = builders[args.which]()
    _emit(args, jsonio.flow_to_json(flow), f"example flow {args.which}")
    return 0


def _add_common_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # subcommands get SUPPRESS defaults so a flag given before the
    # subcommand is not clobbered by the subparser's defaults
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", "-f", choices=("json", "text"), default=default("json"),
                        help="output mode (default json)")
    parser.add_argument("--output", "-o", default=default(None),
                        help="write output to a file instead of stdout")
    parser.add_argument("--seed", type=int, default=default(0),
                        help="seed for randomized suites (reserved for test tooling)")
    parser.add_argument("--max-size", type=int, default=default(None),
                        help="override the group-order / minor-host bounds")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupflow",
        description="Group-valued graph flows: leak detection, certified planarity, leak-proof groups.",
    )
    _add_common_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_common_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("planar", parents=[common],
                       help="planarity with embedding or minor witness")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_planar)

    p = sub.add_parser("extra-planar", parents=[common],
                       help="is every single-edge addition planar?")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_extra_planar)

    p = sub.add_parser("minor", parents=[common], help="search for a fixed minor")
    p.add_argument("graph")
    p.add_argument("--model", choices=sorted(_MODEL_NAMES), required=True)
    p.set_defaults(func=_cmd_minor)

    p = sub.add_parser("faces", parents=[common],
                       help="boundary walks of a rotation system")
    p.add_argument("graph")
    p.add_argument("rotation")
    p.set_defaults(func=_cmd_faces)

    p = sub.add_parser("check-flow", parents=[common],
                       help="validate a flow and classify its leak")
    p.add_argument("flow")
    p.add_argument("--binary", nargs=2, metavar=("U", "V"),
                   help="check for a binary leak at the two vertices")
    p.set_defaults(func=_cmd_check_flow)

    p = sub.add_parser("leak-witness", parents=[common],
                       help="synthesize a leaking flow on a non-planar graph")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_leak_witness)

    p = sub.add_parser("group-leakproof", parents=[common],
                       help="decide leak-proofness of a finite group")
    p.add_argument("group")
    p.set_defaults(func=_cmd_group_leakproof)

    p = sub.add_parser("group-binary-leakproof", parents=[common],
                       help="decide binary leak-proofness")
    p.add_argument("group")
    p.set_defaults(func=_cmd_group_binary_leakproof)

    p = sub.add_parser("examples", parents=[common],
                       help="emit one of the bundled example flows")
    p.add_argument("which", choices=("k33", "k5", "k33minus"))
    p.set_defaults(func=_cmd_examples)

    return parser


def run(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except InternalInvariantError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3
    except (ParseError, GroupFlowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
