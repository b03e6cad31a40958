"""Command-line driver: ``smpswap {validate,check,da,repair,psm,gen} ...``.

Exit status: 0 when a result or decision was computed (including "no"),
1 on usage or input errors, 2 when the subgraph cannot be made stable or a
search budget ran out.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import formats, generators
from .instance import InvalidSubgraph, Side, apply_sequence, check_subgraph, validate
from .psm import (
    DEFAULT_BUDGET_MATCHINGS,
    CapacitatedUnsupported,
    StateBudgetExceeded,
    TooManyMatchings,
    default_budget_states,
    psm_bfs,
    psm_via_matchings,
)
from .repair import Infeasible, min_repair
from .stability import deferred_acceptance, stability_report, unmatched_vertices

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _edges_out(edges):
    return [[i + 1, j + 1] for i, j in sorted(edges)]


def _swaps_out(seq):
    return [[s.side.value, s.vertex + 1, s.position + 1] for s in seq]


class _Inputs:
    """Reads input files once and keeps a digest of their bytes."""

    def __init__(self):
        self.digest = hashlib.sha256()

    def read(self, path: str) -> str:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        self.digest.update(data)
        return data.decode("utf-8")

    def instance(self, path):
        return formats.parse_instance(self.read(path))

    def subgraph(self, path, instance):
        return check_subgraph(instance, formats.parse_subgraph(self.read(path)))


def _cmd_validate(args, inputs):
    try:
        inst = inputs.instance(args.instance)
    except formats.ParseError as exc:
        return EXIT_OK, {"valid": False, "violations": [str(exc)]}, {}
    return EXIT_OK, {
        "valid": not validate(inst),
        "violations": validate(inst),
        "n_a": inst.n_a,
        "n_b": inst.n_b,
        "edges": len(inst.edges),
    }, {}


def _cmd_check(args, inputs):
    inst = inputs.instance(args.instance)
    s = inputs.subgraph(args.subgraph, inst)
    rep = stability_report(inst, s)
    if args.figure:
        from .plotting import save_check_figure

        save_check_figure(args.figure, inst, s)
    return EXIT_OK, {
        "stable": rep.stable,
        "blocking": _edges_out(rep.blocking),
        "reasons": [[i + 1, j + 1, *rep.reasons[(i, j)]] for i, j in sorted(rep.blocking)],
    }, {"blocking_count": len(rep.blocking)}


def _cmd_da(args, inputs):
    inst = inputs.instance(args.instance)
    m = deferred_acceptance(inst, Side(args.side))
    ua, ub = unmatched_vertices(inst, m)
    if args.out:
        Path(args.out).write_text(formats.serialize_subgraph(m))
    return EXIT_OK, {
        "matching": _edges_out(m),
        "unmatched_a": sorted(i + 1 for i in ua),
        "unmatched_b": sorted(j + 1 for j in ub),
        "n_u": len(ua) + len(ub),
    }, {}


def _cmd_repair(args, inputs):
    inst = inputs.instance(args.instance)
    s = inputs.subgraph(args.subgraph, inst)
    method = args.method or "sfm"
    if method not in ("brute", "sfm"):
        raise UsageError("repair --method must be brute or sfm")
    try:
        res = min_repair(inst, s, method)
    except Infeasible as exc:
        return EXIT_FAILED, {"feasible": False, "error": str(exc)}, {}
    after = apply_sequence(inst, res.sequence)
    if args.apply_out:
        Path(args.apply_out).write_text(formats.serialize_instance(after))
    if args.sequence_out:
        Path(args.sequence_out).write_text(formats.serialize_sequence(res.sequence))
    if args.figure:
        from .plotting import save_repair_figure

        save_repair_figure(args.figure, inst, after, s)
    return EXIT_OK, {
        "feasible": True,
        "cost": res.cost,
        "fixed_a": _edges_out(res.fixed_a),
        "sequence": _swaps_out(res.sequence),
        "costs_a": {str(v + 1): c for v, c in sorted(res.costs_a.items())},
        "costs_b": {str(v + 1): c for v, c in sorted(res.costs_b.items())},
    }, {"oracle_calls": res.oracle_calls}


def _cmd_psm(args, inputs):
    inst = inputs.instance(args.instance)
    method = args.method or "bfs"
    if args.k is None or args.k < 0:
        raise UsageError("psm needs --k >= 0")
    try:
        if method == "bfs":
            if args.target != "perfect":
                raise UsageError("--target maximum needs --method enum")
            budget = args.budget_states if args.budget_states is not None else default_budget_states()
            res = psm_bfs(inst, args.k, budget)
        elif method == "enum":
            res = psm_via_matchings(inst, args.k, args.budget_matchings, args.target)
        else:
            raise UsageError("psm --method must be bfs or enum")
    except CapacitatedUnsupported as exc:
        raise UsageError(str(exc)) from None
    except StateBudgetExceeded as exc:
        return EXIT_FAILED, {"decision": None, "error": str(exc)}, exc.stats
    except TooManyMatchings as exc:
        return EXIT_FAILED, {"decision": None, "error": str(exc)}, {}
    if args.apply_out and res.decision:
        Path(args.apply_out).write_text(formats.serialize_instance(apply_sequence(inst, res.sequence)))
    return EXIT_OK, {
        "decision": res.decision,
        "k": res.k,
        "cost": res.cost,
        "sequence": _swaps_out(res.sequence),
        "matching": _edges_out(res.matching) if res.matching is not None else None,
    }, dict(res.stats)


def _cmd_gen(args, inputs):
    sub = None
    if args.family == "fig1":
        inst, sub = generators.gen_fig1(), generators.FIG1_MATCHING
    elif args.family == "path":
        if args.n is None:
            raise UsageError("gen path needs --n")
        try:
            inst = generators.gen_path(args.n)
        except generators.InvalidParameter as exc:
            raise UsageError(str(exc)) from None
        sub = generators.path_perfect_matching(args.n)
    else:
        if args.n_a is None or args.n_b is None:
            raise UsageError("gen random needs --n-a and --n-b")
        try:
            inst = generators.gen_random(args.n_a, args.n_b, args.density, args.cap_max, args.seed)
        except generators.InvalidParameter as exc:
            raise UsageError(str(exc)) from None
    text = formats.serialize_instance(inst)
    if args.out:
        Path(args.out).write_text(text)
    if args.subgraph_out and sub is not None:
        Path(args.subgraph_out).write_text(formats.serialize_subgraph(sub))
    inputs.digest.update(text.encode())
    return EXIT_OK, {"instance": text, "out": args.out, "n_a": inst.n_a, "n_b": inst.n_b, "edges": len(inst.edges)}, {}


COMMANDS = {
    "validate": _cmd_validate,
    "check": _cmd_check,
    "da": _cmd_da,
    "repair": _cmd_repair,
    "psm": _cmd_psm,
    "gen": _cmd_gen,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "json-like"], default="text")

    parser = _Parser(prog="smpswap", description="Preference-swap repair of stable matching instances.")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = subs.add_parser("validate", parents=[common], help="check an instance file")
    p.add_argument("--instance", required=True)

    p = subs.add_parser("check", parents=[common], help="list blocking edges of a subgraph")
    p.add_argument("--instance", required=True)
    p.add_argument("--subgraph", required=True)
    p.add_argument("--figure", help="write a drawing of the extended graph")

    p = subs.add_parser("da", parents=[common], help="deferred acceptance")
    p.add_argument("--instance", required=True)
    p.add_argument("--side", choices=["a", "b"], default="a")
    p.add_argument("--out", help="write the matching as a subgraph file")

    p = subs.add_parser("repair", parents=[common], help="fewest swaps making a subgraph stable")
    p.add_argument("--instance", required=True)
    p.add_argument("--subgraph", required=True)
    p.add_argument("--method", choices=["brute", "sfm", "bfs", "enum"])
    p.add_argument("--apply-out", help="write the repaired instance")
    p.add_argument("--sequence-out", help="write the swap sequence")
    p.add_argument("--figure", help="write before/after drawings")

    p = subs.add_parser("psm", parents=[common], help="swap distance to a perfect stable matching")
    p.add_argument("--instance", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--method", choices=["brute", "sfm", "bfs", "enum"])
    p.add_argument("--target", choices=["perfect", "maximum"], default="perfect")
    p.add_argument("--budget-states", type=int)
    p.add_argument("--budget-matchings", type=int, default=DEFAULT_BUDGET_MATCHINGS)
    p.add_argument("--apply-out", help="write the instance after the witnessing swaps")

    p = subs.add_parser("gen", parents=[common], help="generate an instance")
    p.add_argument("family", choices=["fig1", "path", "random"])
    p.add_argument("--n", type=int)
    p.add_argument("--n-a", type=int)
    p.add_argument("--n-b", type=int)
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--cap-max", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the instance here instead of the report")
    p.add_argument("--subgraph-out", help="also write the family's reference matching")
    return parser


def run_cli(argv=None) -> tuple[int, dict]:
    """Parse ``argv``, run the command and return ``(exit code, report)``."""
    start = time.perf_counter()
    inputs = _Inputs()
    command = None
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        code, result, stats = COMMANDS[command](args, inputs)
    except (UsageError, formats.ParseError, InvalidSubgraph) as exc:
        return EXIT_USAGE, {"command": command, "error": str(exc)}
    return code, {
        "command": command,
        "input_digest": inputs.digest.hexdigest(),
        "result": result,
        "stats": stats,
        "wall_clock": round(time.perf_counter() - start, 6),
    }


def render_text(report: dict) -> str:
    if "error" in report and "result" not in report:
        return f"error: {report['error']}\n"
    cmd, res = report["command"], report["result"]
    lines = []
    if cmd == "gen":
        return f"wrote {res['out']}\n" if res["out"] else res["instance"]
    if cmd == "validate":
        lines.append("valid" if res["valid"] else "invalid")
        lines += [f"  {v}" for v in res["violations"]]
    elif cmd == "check":
        lines.append("stable" if res["stable"] else f"{len(res['blocking'])} blocking edges")
        lines += [f"  a{i} b{j}  ({ra}, {rb})" for i, j, ra, rb in res["reasons"]]
    elif cmd == "da":
        lines += [f"match {i} {j}" for i, j in res["matching"]]
        lines.append(f"unmatched a: {res['unmatched_a']}  b: {res['unmatched_b']}  n_u={res['n_u']}")
    elif cmd == "repair":
        if not res["feasible"]:
            lines.append(f"infeasible: {res['error']}")
        else:
            lines.append(f"cost {res['cost']}")
            lines += [f"swap {side} {v} {p}" for side, v, p in res["sequence"]]
    elif cmd == "psm":
        if res["decision"] is None:
            lines.append(f"undecided: {res['error']}")
        else:
            lines.append(f"{'yes' if res['decision'] else 'no'} (k={res['k']}, cost={res['cost']})")
            lines += [f"swap {side} {v} {p}" for side, v, p in res["sequence"]]
    return "\n".join(lines) + "\n"


def _wanted_format(argv) -> str:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--format", default="text")
    ns, _ = pre.parse_known_args(argv)
    return "json" if ns.format in ("json", "json-like") else "text"


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    code, report = run_cli(argv)
    if _wanted_format(argv) == "json":
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    elif code == EXIT_USAGE:
        sys.stderr.write(render_text(report))
    else:
        sys.stdout.write(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
