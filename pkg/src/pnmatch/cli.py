"""Command-line front end.

Every subcommand reads one JSON document (a file path or ``-`` for stdin),
prints one JSON document on stdout and exits with 0 on a positive verdict,
1 on a negative one and 2 on unusable input.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .errors import CapExceeded, InvalidDerivation, NotCorrect, NotUnique, PnmatchError
from .graph import Cycle, Graph, cycle_from_json, cycle_to_json, graph_from_json, graph_to_dot, graph_to_json
from .kingdom import kingdom_order
from .matching import is_unique_pm, random_upm, upm_from_json, upm_replay, upm_sequentialize, upm_to_json
from .proofnet import ProofStructure, correctness_graph, from_json, mix_count, random_net, rewire, to_dot, to_json
from .sequentialization import (
    derivation_from_json,
    derivation_to_json,
    enumerate_sequentializations,
    mix_sequentialize,
    validate_derivation,
)
from .transitions import (
    TransitionSystem,
    brute_force_closed_trails,
    complete_transitions,
    find_compatible_closed_trail,
    transitions_from_json,
)
from .translations import graphification, pm_line_graph, proofification, rb_graph

OK, NEGATIVE, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# input helpers

def _load(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not JSON ({exc})") from None


def _format(obj) -> str:
    """Guess what a JSON document holds from its keys."""
    if not isinstance(obj, dict):
        return "unknown"
    if "order" in obj:
        return "kingdom"
    if "links" in obj and "edges" in obj:
        return "net"
    if "vertices" in obj and "edges" in obj:
        return "graph"
    if "derivation" in obj:
        return "derivation"
    if "derivations" in obj:
        return "derivations"
    if "trails" in obj:
        return "trails"
    if "decomposition" in obj:
        return "decomposition"
    if "trail" in obj:
        return "trail"
    if "correct" in obj or "unique" in obj:
        return "verdict"
    if obj.get("kind") in ("ax", "tensor", "par", "mix"):
        return "derivation"
    return "unknown"


def _net(obj) -> ProofStructure:
    if _format(obj) != "net":
        raise InputError("expected a proof structure with 'links' and 'edges'")
    return from_json(obj)


def _graph(obj) -> tuple[Graph, frozenset | None]:
    if _format(obj) != "graph":
        raise InputError("expected a graph with 'vertices' and 'edges'")
    return graph_from_json(obj)


def _transitions(g: Graph, obj) -> TransitionSystem:
    """``allowed`` lists the allowed pairs per vertex; otherwise ``pairs``
    lists forbidden pairs of edges, each forbidden at their shared vertex."""
    if "allowed" in obj:
        return transitions_from_json(g, obj)
    forbidden: dict[int, list] = {}
    for e, f in obj.get("pairs", ()):
        e, f = int(e), int(f)
        shared = set(g.edges[e]) & set(g.edges[f])
        if len(shared) != 1:
            raise InputError(f"pair {(e, f)} does not share exactly one vertex")
        forbidden.setdefault(shared.pop(), []).append((e, f))
    return complete_transitions(g, forbidden)


def _switching_cycle_json(ps: ProofStructure, c: Cycle) -> dict:
    links = correctness_graph(ps).vertex_links
    return {"links": [links[v] for v in c.vertices], "edges": list(c.edges)}


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, sort_keys=False)
    sys.stdout.write("\n")


def _write_dot(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)
        print(f"wrote {path}", file=sys.stderr)


# ---------------------------------------------------------------------------
# subcommands

def cmd_check(args) -> int:
    obj = _load(args.input)
    if _format(obj) == "graph":
        g, m = graph_from_json(obj)
        if m is None:
            raise InputError("graph has no 'matching' to check")
        res = is_unique_pm(g, m)
        out = {"unique": res.unique}
        if not res.unique:
            out["witness"] = cycle_to_json(res.witness)
        _emit(out)
        return OK if res.unique else NEGATIVE
    ps = _net(obj)
    _write_dot(args.dot, to_dot(ps))
    try:
        k = mix_count(ps)
    except NotCorrect as exc:
        _emit({"correct": False, "mix_count": None, "witness": _switching_cycle_json(ps, exc.witness)})
        return NEGATIVE
    if args.mode == "mll" and k != 1:
        _emit({"correct": False, "mix_count": k, "reason": "switching graphs are disconnected"})
        return NEGATIVE
    _emit({"correct": True, "mix_count": k})
    return OK


def cmd_seq(args) -> int:
    obj = _load(args.input)
    if _format(obj) == "graph":
        g, m = graph_from_json(obj)
        if m is None:
            raise InputError("graph has no 'matching' to decompose")
        try:
            d = upm_sequentialize(g, m)
        except NotUnique as exc:
            _emit({"unique": False, "witness": cycle_to_json(exc.witness)})
            return NEGATIVE
        _emit({"decomposition": upm_to_json(d)})
        return OK
    ps = _net(obj)
    if args.all:
        ders = enumerate_sequentializations(ps, args.cap)
        _emit({"count": len(ders), "derivations": [derivation_to_json(d) for d in ders]})
        return OK if ders else NEGATIVE
    try:
        d = mix_sequentialize(ps)
    except NotCorrect as exc:
        _emit({"correct": False, "witness": _switching_cycle_json(ps, exc.witness)})
        return NEGATIVE
    _emit({"derivation": derivation_to_json(d)})
    return OK


def cmd_kingdom(args) -> int:
    ps = _net(_load(args.input))
    try:
        order = kingdom_order(ps)
    except NotCorrect as exc:
        _emit({"correct": False, "witness": _switching_cycle_json(ps, exc.witness)})
        return NEGATIVE
    _write_dot(args.dot, order.to_dot(ps))
    _emit(order.to_json())
    return OK


def cmd_translate(args) -> int:
    obj = _load(args.input)
    if args.to in ("rb", "graphify"):
        ps = _net(obj)
        mg = rb_graph(ps) if args.to == "rb" else graphification(ps)
        _write_dot(args.dot, graph_to_dot(mg.graph, mg.matching))
        _emit(graph_to_json(mg.graph, mg.matching))
        return OK
    g, m = _graph(obj)
    if args.to == "proofify":
        if m is None:
            raise InputError("proofification needs a 'matching'")
        ps = proofification(g, m).ps
        _write_dot(args.dot, to_dot(ps))
        _emit(to_json(ps))
        return OK
    mg = pm_line_graph(g, _transitions(g, obj))
    _write_dot(args.dot, graph_to_dot(mg.graph, mg.matching))
    _emit(graph_to_json(mg.graph, mg.matching))
    return OK


def cmd_trail(args) -> int:
    obj = _load(args.input)
    g, _ = _graph(obj)
    t = _transitions(g, obj)
    if args.all:
        trails = brute_force_closed_trails(g, t, args.cap)
        _emit({"count": len(trails), "trails": [cycle_to_json(c) for c in trails]})
        return OK if trails else NEGATIVE
    c = find_compatible_closed_trail(g, t)
    _emit({"trail": None if c is None else cycle_to_json(c)})
    return OK if c is not None else NEGATIVE


def cmd_gen(args) -> int:
    rng = np.random.default_rng(args.seed)
    if args.kind == "upm":
        g, m = random_upm(args.size, rng)
        _write_dot(args.dot, graph_to_dot(g, m))
        _emit(graph_to_json(g, m))
        return OK
    if args.size < 1:
        raise InputError("a proof structure needs at least one link")
    ps = random_net(args.size, rng)
    if args.mode == "rewired":
        ps = rewire(ps, rng)
    _write_dot(args.dot, to_dot(ps))
    _emit(to_json(ps))
    return OK


def cmd_validate(args) -> int:
    obj = _load(args.input)
    fmt = _format(obj)
    report: dict = {"format": fmt}
    try:
        if fmt == "net":
            ps = from_json(obj)
            report.update(links=len(ps.kinds), edges=len(ps.edges), pars=len(ps.pars))
        elif fmt == "graph":
            g, m = graph_from_json(obj)
            report.update(vertices=g.n, edges=g.m)
            if m is not None:
                report["perfect"] = 2 * len(m) == g.n
            if "allowed" in obj or "pairs" in obj:
                report["transitions"] = _transitions(g, obj).transition_count
        elif fmt == "derivation":
            d = derivation_from_json(obj.get("derivation", obj))
            if args.net:
                report["builds_net"] = validate_derivation(_net(_load(args.net)), d)
                if not report["builds_net"]:
                    raise InvalidDerivation("derivation does not build the given net")
        elif fmt == "derivations":
            ders = [derivation_from_json(x) for x in obj["derivations"]]
            if args.net:
                net = _net(_load(args.net))
                report["builds_net"] = all(validate_derivation(net, d) for d in ders)
                if not report["builds_net"]:
                    raise InvalidDerivation("some derivation does not build the given net")
            report["count"] = len(ders)
        elif fmt == "trails":
            report["count"] = len([cycle_from_json(x) for x in obj["trails"]])
        elif fmt == "decomposition":
            d = upm_from_json(obj["decomposition"])
            report["vertices"] = len(upm_replay(d)[0])
        elif fmt == "kingdom":
            links = [int(l) for l in obj["links"]]
            pairs = [(int(p), int(q)) for p, q in obj["order"]]
            known = set(links)
            if any(p not in known or q not in known or p == q for p, q in pairs):
                raise ValueError("order mentions unknown links or relates a link to itself")
            report["pairs"] = len(pairs)
        elif fmt == "trail":
            if obj["trail"] is not None:
                cycle_from_json(obj["trail"])
        elif fmt == "verdict":
            verdict = obj.get("correct", obj.get("unique"))
            if not isinstance(verdict, bool):
                raise ValueError("verdict must be a boolean")
            w = obj.get("witness")
            if w is not None and not isinstance(w, dict):
                raise ValueError("witness must be an object")
        else:
            raise ValueError("unrecognized document")
    except (PnmatchError, ValueError, KeyError, TypeError) as exc:
        report.update(valid=False, error=str(exc))
        _emit(report)
        return NEGATIVE
    report["valid"] = True
    _emit(report)
    return OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pnmatch", description="Proof nets through unique perfect matchings.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str, *, needs_input: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        if needs_input:
            sp.add_argument("input", nargs="?", default="-", help="JSON file, '-' for stdin (default)")
        sp.add_argument("--dot", metavar="PATH", help="also write a DOT rendering to PATH")
        sp.set_defaults(func=func)
        return sp

    sp = add("check", cmd_check, "correctness of a net, or uniqueness of a graph's matching")
    sp.add_argument("--mode", choices=["mix", "mll"], default="mix")
    sp = add("seq", cmd_seq, "sequentialize a net, or decompose a graph with a unique matching")
    sp.add_argument("--all", action="store_true", help="list every derivation (small nets only)")
    sp.add_argument("--cap", type=int, default=10_000)
    add("kingdom", cmd_kingdom, "kingdom ordering of a correct net")
    sp = add("translate", cmd_translate, "translate between nets and matched graphs")
    sp.add_argument("--to", choices=["rb", "graphify", "proofify", "lpm"], required=True)
    sp = add("trail", cmd_trail, "compatible closed trail of a graph with forbidden transitions")
    sp.add_argument("--all", action="store_true", help="list every trail by exhaustive search")
    sp.add_argument("--cap", type=int, default=10_000)
    sp = add("gen", cmd_gen, "seeded random instance", needs_input=False)
    sp.add_argument("--kind", choices=["net", "upm"], default="net")
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mode", choices=["correct", "rewired"], default="correct",
                    help="'rewired' perturbs the correct net, which may break correctness")
    sp = add("validate", cmd_validate, "parse any document produced by this tool")
    sp.add_argument("--net", metavar="PATH", help="net to replay a derivation against")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "size", 0) < 0:
        print("error: --size must be nonnegative", file=sys.stderr)
        return BAD_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except CapExceeded as exc:
        print(f"error: {exc}; raise --cap", file=sys.stderr)
    except (PnmatchError, ValueError) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
    return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
