"""Sequent-calculus derivations of proof nets.

Derivations are trees of ``ax``, ``tensor``, ``par`` and ``mix`` rules
that name the link each rule introduces.  They are obtained from the
bridge decomposition of the graphification, which they mirror node for
node: an axiom is a join of two empty sides, a par a join with an empty
right side, a tensor a join of two non-empty sides, a mix a union.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Optional, Union as _U

from ._util import deep_recursion
from .errors import CapExceeded, Incorrect, InvalidDerivation, NotUnique
from .graph import Cycle
from .matching import EMPTY, Empty, Join, Union, UpmDerivation, is_unique_pm, upm_sequentialize
from .proofnet import Kind, ProofStructure
from .translations import MatchedGraph, alternating_to_switching, graphification

__all__ = [
    "AxRule",
    "TensorRule",
    "ParRule",
    "MixRule",
    "Derivation",
    "mix_sequentialize",
    "validate_derivation",
    "derivation_links",
    "derivation_to_upm",
    "upm_to_derivation",
    "enumerate_sequentializations",
    "last_rules",
    "derivation_to_json",
    "derivation_from_json",
    "pretty",
]


@dataclass(frozen=True)
class AxRule:
    link: int


@dataclass(frozen=True)
class TensorRule:
    """``left`` holds the source of the tensor's first in-edge."""

    link: int
    left: "Derivation"
    right: "Derivation"


@dataclass(frozen=True)
class ParRule:
    link: int
    premise: "Derivation"


@dataclass(frozen=True)
class MixRule:
    left: "Derivation"
    right: "Derivation"


Derivation = _U[AxRule, TensorRule, ParRule, MixRule]


def _children(d: Derivation) -> tuple:
    if isinstance(d, AxRule):
        return ()
    if isinstance(d, ParRule):
        return (d.premise,)
    return (d.left, d.right)


def derivation_links(d: Derivation) -> list[int]:
    """Links introduced in ``d``, in pre-order."""
    out, stack = [], [d]
    while stack:
        node = stack.pop()
        if not isinstance(node, MixRule):
            out.append(node.link)
        stack.extend(reversed(_children(node)))
    return out


def mix_sequentialize(ps: ProofStructure, trace: Optional[Callable] = None) -> Derivation:
    """A derivation of ``ps``, or :class:`Incorrect` carrying a switching
    cycle.

    The graphification is decomposed by removing, component by component,
    the matching bridge of the smallest link; the decomposition is then read
    as a derivation.  ``trace`` is forwarded to the decomposition and sees
    every component with its matching bridges.
    """
    mg = graphification(ps)
    try:
        u = upm_sequentialize(mg.graph, mg.matching, trace=trace)
    except NotUnique as exc:
        raise Incorrect(alternating_to_switching(mg, exc.witness)) from None
    return upm_to_derivation(ps, u, mg)


def validate_derivation(ps: ProofStructure, d: Derivation) -> bool:
    """True iff replaying the rules of ``d`` builds exactly ``ps``.

    Every link must be introduced once by a rule of its kind; an axiom is a
    leaf; a par's two predecessors lie in its premise; a tensor's first
    in-edge comes from its left premise and the second from its right.
    """
    try:
        with deep_recursion():
            seen = _replay(ps, d)
    except InvalidDerivation:
        return False
    return seen == set(ps.kinds)


def _replay(ps: ProofStructure, d: Derivation) -> set:
    if isinstance(d, MixRule):
        a, b = _replay(ps, d.left), _replay(ps, d.right)
        if a & b:
            raise InvalidDerivation("mix premises overlap")
        return a | b
    if not isinstance(d, (AxRule, TensorRule, ParRule)):
        raise InvalidDerivation(f"unknown rule {d!r}")
    l = d.link
    kind = ps.kinds.get(l)
    if isinstance(d, AxRule):
        if kind is not Kind.AX:
            raise InvalidDerivation(f"link {l} is not an axiom")
        return {l}
    if isinstance(d, ParRule):
        if kind is not Kind.PAR:
            raise InvalidDerivation(f"link {l} is not a par")
        inside = _replay(ps, d.premise)
        if l in inside or not set(ps.predecessors(l)) <= inside:
            raise InvalidDerivation(f"par {l} does not close over its premise")
        return inside | {l}
    if kind is not Kind.TENSOR:
        raise InvalidDerivation(f"link {l} is not a tensor")
    a, b = _replay(ps, d.left), _replay(ps, d.right)
    if a & b or l in a or l in b:
        raise InvalidDerivation("tensor premises overlap")
    s1, s2 = ps.predecessors(l)
    if s1 not in a or s2 not in b:
        raise InvalidDerivation(f"tensor {l} premises are not split by its in-edges")
    return a | b | {l}


# ---------------------------------------------------------------------------
# Correspondence with decompositions of the graphification

def upm_to_derivation(ps: ProofStructure, u: UpmDerivation, mg: MatchedGraph | None = None) -> Derivation:
    """Read a decomposition of ``graphification(ps)`` as a derivation."""
    mg = mg or graphification(ps)

    def conv(node) -> Derivation:
        if isinstance(node, Union):
            return MixRule(conv(node.left), conv(node.right))
        if isinstance(node, Join):
            if node.edge not in mg.provenance or tuple(mg.graph.edges[node.edge]) != tuple(node.ends):
                raise InvalidDerivation(f"join on {node.edge} is not a link edge")
            l = mg.provenance[node.edge]
            kind = ps.kinds[l]
            le, re = isinstance(node.left, Empty), isinstance(node.right, Empty)
            if kind is Kind.AX and le and re:
                return AxRule(l)
            if kind is Kind.PAR and not le and re:
                return ParRule(l, conv(node.left))
            if kind is Kind.TENSOR and not le and not re:
                return TensorRule(l, conv(node.left), conv(node.right))
            raise InvalidDerivation(f"join shape does not fit {kind.value} link {l}")
        raise InvalidDerivation("empty decomposition has no derivation")

    with deep_recursion():
        return conv(u)


def derivation_to_upm(ps: ProofStructure, d: Derivation, mg: MatchedGraph | None = None) -> UpmDerivation:
    """Inverse of :func:`upm_to_derivation`; raises :class:`InvalidDerivation`
    when ``d`` does not validate against ``ps``."""
    if not validate_derivation(ps, d):
        raise InvalidDerivation("derivation does not build the proof structure")
    mg = mg or graphification(ps)
    rank = {l: i for i, l in enumerate(ps.links)}
    g = mg.graph

    def conv(node) -> tuple[UpmDerivation, frozenset]:
        if isinstance(node, MixRule):
            a, va = conv(node.left)
            b, vb = conv(node.right)
            return Union(a, b), va | vb
        i = rank[node.link]
        x, x2 = 2 * i, 2 * i + 1
        if isinstance(node, AxRule):
            return Join(i, (x, x2), frozenset(), frozenset(), EMPTY, EMPTY), frozenset((x, x2))
        if isinstance(node, ParRule):
            a, va = conv(node.premise)
            ua = frozenset(w for w, _ in g.adj[x] if w in va)
            return Join(i, (x, x2), ua, frozenset(), a, EMPTY), va | {x, x2}
        a, va = conv(node.left)
        b, vb = conv(node.right)
        ua = frozenset(w for w, _ in g.adj[x] if w in va)
        ub = frozenset(w for w, _ in g.adj[x2] if w in vb)
        return Join(i, (x, x2), ua, ub, a, b), va | vb | {x, x2}

    with deep_recursion():
        return conv(d)[0]


# ---------------------------------------------------------------------------
# Exhaustive enumeration

def _components(ps: ProofStructure, links: frozenset) -> list[frozenset]:
    adj: dict[int, list[int]] = {l: [] for l in links}
    for s, t in ps.edges:
        if s in links and t in links:
            adj[s].append(t)
            adj[t].append(s)
    seen: set = set()
    out = []
    for l in sorted(links):
        if l in seen:
            continue
        comp = {l}
        queue = deque([l])
        seen.add(l)
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    queue.append(y)
        out.append(frozenset(comp))
    return out


def last_rules(ps: ProofStructure, links: frozenset):
    """Every way the last rule of a derivation of ``links`` can look.

    Yields ``(rule, link, parts)``: ``rule`` is ``"mix"`` (``link`` None),
    ``"ax"``, ``"par"`` or ``"tensor"``, and ``parts`` the link sets of its
    premises in order.  A mix splits the connected components in two, the
    part holding the smallest link on the left.  Otherwise the rule
    introduces a terminal link: an axiom alone, a par over everything else,
    or a tensor whose removal separates its two predecessors, with every
    unrelated component sent to either side.
    """
    comps = _components(ps, links)
    if len(comps) > 1:
        first, rest = comps[0], comps[1:]
        for mask in range(1 << len(rest)):
            left = first.union(*(c for i, c in enumerate(rest) if mask >> i & 1))
            if left != links:
                yield "mix", None, (left, links - left)
    for l in sorted(links):
        if any(ps.edges[e][1] in links for e in ps.out_edges[l]):
            continue  # not terminal here
        kind = ps.kinds[l]
        rest = links - {l}
        if kind is Kind.AX:
            if not rest:
                yield "ax", l, ()
            continue
        if kind is Kind.PAR:
            yield "par", l, (rest,)
            continue
        s1, s2 = ps.predecessors(l)
        parts = _components(ps, rest)
        c1 = next(p for p in parts if s1 in p)
        c2 = next(p for p in parts if s2 in p)
        if c1 == c2:
            continue
        free = [p for p in parts if p != c1 and p != c2]
        for mask in range(1 << len(free)):
            left = c1.union(*(p for i, p in enumerate(free) if mask >> i & 1))
            yield "tensor", l, (left, rest - left)


def enumerate_sequentializations(ps: ProofStructure, cap: int = 10_000) -> list[Derivation]:
    """Every derivation of ``ps``, directly on the proof structure.

    Exponential; for small nets.  See :func:`last_rules` for the shape of
    each step.
    """
    memo: dict[frozenset, list] = {}

    def rec(links: frozenset) -> list[Derivation]:
        if links in memo:
            return memo[links]
        out: list[Derivation] = []
        for rule, l, parts in last_rules(ps, links):
            if rule == "ax":
                combos = [AxRule(l)]
            elif rule == "par":
                combos = [ParRule(l, a) for a in rec(parts[0])]
            else:
                lefts, rights = rec(parts[0]), rec(parts[1])
                if len(out) + len(lefts) * len(rights) > cap:
                    raise CapExceeded(cap, "sequentializations")
                make = MixRule if rule == "mix" else (lambda a, b, l=l: TensorRule(l, a, b))
                combos = [make(a, b) for a in lefts for b in rights]
            if len(out) + len(combos) > cap:
                raise CapExceeded(cap, "sequentializations")
            out.extend(combos)
        memo[links] = out
        return out

    with deep_recursion():
        return list(rec(frozenset(ps.kinds)))


# ---------------------------------------------------------------------------
# Serialization

def derivation_to_json(d: Derivation) -> dict:
    if isinstance(d, AxRule):
        return {"kind": "ax", "link": d.link}
    if isinstance(d, ParRule):
        return {"kind": "par", "link": d.link, "premise": derivation_to_json(d.premise)}
    if isinstance(d, TensorRule):
        return {"kind": "tensor", "link": d.link, "left": derivation_to_json(d.left), "right": derivation_to_json(d.right)}
    return {"kind": "mix", "left": derivation_to_json(d.left), "right": derivation_to_json(d.right)}


def derivation_from_json(obj: dict) -> Derivation:
    kind = obj.get("kind")
    if kind == "ax":
        return AxRule(int(obj["link"]))
    if kind == "par":
        return ParRule(int(obj["link"]), derivation_from_json(obj["premise"]))
    if kind == "tensor":
        return TensorRule(int(obj["link"]), derivation_from_json(obj["left"]), derivation_from_json(obj["right"]))
    if kind == "mix":
        return MixRule(derivation_from_json(obj["left"]), derivation_from_json(obj["right"]))
    raise ValueError(f"unknown rule kind {kind!r}")


def pretty(d: Derivation, indent: str = "  ") -> str:
    """Indented rule tree, conclusion rule first."""
    lines: list[str] = []

    def walk(node, depth: int) -> None:
        pad = indent * depth
        if isinstance(node, AxRule):
            lines.append(f"{pad}ax {node.link}")
        elif isinstance(node, ParRule):
            lines.append(f"{pad}⅋ {node.link}")
        elif isinstance(node, TensorRule):
            lines.append(f"{pad}⊗ {node.link}")
        else:
            lines.append(f"{pad}mix")
        for c in _children(node):
            walk(c, depth + 1)

    with deep_recursion():
        walk(d, 0)
    return "\n".join(lines) + "\n"
