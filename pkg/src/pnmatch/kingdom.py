"""Kingdom ordering of proof nets.

``p << q`` when every derivation introduces ``p`` inside a premise of the
rule introducing ``q``.  It is computed as the transitive closure of the
successor relation together with the dependency relation, where ``p`` is
a dependency of a par ``q`` when some switching path joins the two
predecessors of ``q`` through ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._util import deep_recursion
from .errors import NotAPar, NotCorrect, NotMaximal, NotMllCorrect
from .matching import find_alternating_path_through, is_unique_pm
from .proofnet import Kind, ProofStructure, mix_count
from .sequentialization import (
    Derivation,
    MixRule,
    _children,
    derivation_links,
    last_rules,
)
from .translations import graphification

__all__ = [
    "KingdomOrder",
    "successor_relation",
    "is_dependency",
    "dependency_relation",
    "kingdom_order",
    "kingdom_order_bruteforce",
    "derivation_relation",
    "last_rule_links",
    "check_last_rule_property",
]


@dataclass(frozen=True)
class KingdomOrder:
    """Strict order on ``links`` generated by ``generators``.

    The transitive closure is a boolean matrix indexed by link rank;
    ``closure[i, j]`` means ``links[i] << links[j]``.
    """

    links: tuple[int, ...]
    generators: frozenset

    @cached_property
    def index(self) -> dict[int, int]:
        return {l: i for i, l in enumerate(self.links)}

    @cached_property
    def closure(self) -> np.ndarray:
        k = len(self.links)
        r = np.zeros((k, k), dtype=bool)
        for p, q in self.generators:
            r[self.index[p], self.index[q]] = True
        while True:
            nxt = r | (r @ r)
            if (nxt == r).all():
                return r
            r = nxt

    def precedes(self, p: int, q: int) -> bool:
        return bool(self.closure[self.index[p], self.index[q]])

    def pairs(self) -> frozenset:
        rows, cols = np.nonzero(self.closure)
        return frozenset((self.links[i], self.links[j]) for i, j in zip(rows.tolist(), cols.tolist()))

    def maximal(self) -> list[int]:
        below_something = self.closure.any(axis=1)
        return [l for l, b in zip(self.links, below_something.tolist()) if not b]

    def greatest(self) -> int | None:
        """The link above every other one, if any."""
        k = len(self.links)
        for j, l in enumerate(self.links):
            col = self.closure[:, j].copy()
            col[j] = True
            if col.all() and k:
                return l
        return None

    def hasse(self) -> list[tuple[int, int]]:
        c = self.closure
        out = []
        for p, q in sorted(self.pairs()):
            i, j = self.index[p], self.index[q]
            if not (c[i] & c[:, j]).any():
                out.append((p, q))
        return out

    def is_strict_order(self) -> bool:
        c = self.closure
        return not c.diagonal().any() and bool(((c @ c) <= c).all())

    def __eq__(self, other) -> bool:
        return isinstance(other, KingdomOrder) and self.links == other.links and self.pairs() == other.pairs()

    def __hash__(self) -> int:
        return hash((self.links, self.pairs()))

    def to_json(self) -> dict:
        return {"links": list(self.links), "order": [list(p) for p in sorted(self.pairs())]}

    def to_dot(self, ps: ProofStructure | None = None) -> str:
        lines = ["digraph kingdom {", "  rankdir=BT;"]
        for l in self.links:
            label = f"{ps.kinds[l].symbol} {l}" if ps is not None else str(l)
            lines.append(f'  l{l} [label="{label}"];')
        for p, q in self.hasse():
            lines.append(f"  l{p} -> l{q};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def successor_relation(ps: ProofStructure) -> frozenset:
    """Pairs ``(p, q)`` with a directed edge from ``p`` to ``q``."""
    return frozenset(ps.edges)


def _require_correct(ps: ProofStructure, mg=None):
    mg = mg or graphification(ps)
    res = is_unique_pm(mg.graph, mg.matching)
    if not res:
        raise NotCorrect(res.witness)
    return mg


def is_dependency(ps: ProofStructure, p: int, q: int, checked: bool = False) -> bool:
    """Whether ``p`` is a dependency of the par ``q`` in a correct net.

    When ``p`` is a predecessor of ``q`` this is the question whether turning
    ``q`` into a tensor breaks correctness.  Otherwise ``q`` is graphified as
    a tensor would be (its two premises on different ends of its matching
    edge); removing that edge leaves its two ends exposed, and an
    alternating path between them through ``p``'s matching edge is exactly
    a switching path between the predecessors of ``q`` through ``p``.
    """
    if ps.kinds.get(q) is not Kind.PAR:
        raise NotAPar(f"link {q} is not a par")
    if p == q or p not in ps.kinds:
        raise ValueError(f"link {p} must be a link other than {q}")
    if not checked:
        _require_correct(ps)
    as_tensor = ps.relabel(q, Kind.TENSOR)
    if p in ps.predecessors(q):
        mg = graphification(as_tensor)
        return not is_unique_pm(mg.graph, mg.matching).unique
    mg = graphification(as_tensor)
    rank = {l: i for i, l in enumerate(ps.links)}
    g = mg.graph
    eq = rank[q]
    a, b = g.edges[eq]
    sub, keep = g.without_edges([eq])
    pos = {old: new for new, old in enumerate(keep)}
    m = frozenset(pos[e] for e in mg.matching if e != eq)
    return find_alternating_path_through(sub, m, a, b, pos[rank[p]]) is not None


def dependency_relation(ps: ProofStructure) -> frozenset:
    _require_correct(ps)
    return frozenset(
        (p, q) for q in ps.pars for p in ps.links if p != q and is_dependency(ps, p, q, checked=True)
    )


def kingdom_order(ps: ProofStructure) -> KingdomOrder:
    """Transitive closure of successors and dependencies."""
    gens = successor_relation(ps) | dependency_relation(ps)
    return KingdomOrder(tuple(ps.links), frozenset(gens))


def derivation_relation(d: Derivation) -> frozenset:
    """Pairs ``(p, q)`` with ``p`` introduced strictly above the rule of ``q``."""
    out = set()
    stack = [d]
    while stack:
        node = stack.pop()
        kids = _children(node)
        if not isinstance(node, MixRule):
            for c in kids:
                for p in derivation_links(c):
                    out.add((p, node.link))
        stack.extend(kids)
    return frozenset(out)


def kingdom_order_bruteforce(ps: ProofStructure) -> KingdomOrder:
    """Intersection over all derivations of :func:`derivation_relation`.

    Derivations are not listed one by one.  For a fixed last rule the
    premises vary independently and contribute pairs on disjoint link sets,
    so the intersection over a sub-net is the intersection, over its
    possible last rules, of the rule's own pairs joined with the
    intersections of its premises.
    """
    memo: dict[frozenset, frozenset | None] = {}

    def rec(links: frozenset) -> frozenset | None:
        if links in memo:
            return memo[links]
        acc = None
        for rule, l, parts in last_rules(ps, links):
            subs = [rec(p) for p in parts]
            if any(r is None for r in subs):
                continue
            own = frozenset() if l is None else frozenset((p, l) for p in links if p != l)
            rel = own.union(*subs)
            acc = rel if acc is None else acc & rel
        memo[links] = acc
        return acc

    with deep_recursion():
        rel = rec(frozenset(ps.kinds))
    if rel is None:
        raise NotCorrect(None, "proof structure has no sequentialization")
    return KingdomOrder(tuple(ps.links), rel)


def last_rule_links(ps: ProofStructure) -> frozenset:
    """Links introduced by the last rule of some derivation."""
    links = frozenset(ps.kinds)
    out = set()
    for rule, l, parts in last_rules(ps, links):
        if rule == "mix":
            continue
        if all(_derivable(ps, p) for p in parts):
            out.add(l)
    return frozenset(out)


def _derivable(ps: ProofStructure, links: frozenset) -> bool:
    return is_unique_pm(*_graphified(ps.restrict(links))).unique


def _graphified(ps: ProofStructure):
    mg = graphification(ps)
    return mg.graph, mg.matching


def check_last_rule_property(ps: ProofStructure, l: int) -> bool:
    """For a connected correct net and a link maximal in its kingdom order,
    whether some derivation ends with the rule introducing ``l``."""
    if mix_count(ps) != 1:
        raise NotMllCorrect("proof net needs the mix rule")
    order = kingdom_order(ps)
    if l not in order.maximal():
        raise NotMaximal(f"link {l} is not maximal")
    return l in last_rule_links(ps)
