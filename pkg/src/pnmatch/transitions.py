"""Graphs with forbidden transitions and compatible closed trails.

A transition system allows, at every vertex, some unordered pairs of
incident edges to be traversed consecutively.  Closed trails that only use
allowed transitions are found through the perfect-matching line graph,
where they become alternating cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import CapExceeded
from .graph import Cycle, Graph

__all__ = [
    "TransitionSystem",
    "pairs_to_transitions",
    "complete_transitions",
    "find_compatible_closed_trail",
    "brute_force_closed_trails",
    "canonical_trail",
    "is_compatible_closed_trail",
    "transitions_to_json",
    "transitions_from_json",
]


@dataclass(frozen=True)
class TransitionSystem:
    """``allowed[v]`` holds pairs ``(e, f)``, ``e < f``, of edges incident
    to ``v`` that may follow each other at ``v``."""

    graph: Graph
    allowed: tuple[frozenset, ...]

    def __post_init__(self):
        g = self.graph
        if len(self.allowed) != g.n:
            raise ValueError("need one transition set per vertex")
        norm = []
        for v, pairs in enumerate(self.allowed):
            inc = {e for _, e in g.adj[v]}
            out = set()
            for e, f in pairs:
                e, f = int(e), int(f)
                if e == f or e not in inc or f not in inc:
                    raise ValueError(f"transition {(e, f)} at vertex {v} is not between two incident edges")
                out.add((min(e, f), max(e, f)))
            norm.append(frozenset(out))
        object.__setattr__(self, "allowed", tuple(norm))

    def permits(self, v: int, e: int, f: int) -> bool:
        return (min(e, f), max(e, f)) in self.allowed[v]

    @property
    def transition_count(self) -> int:
        return sum(len(a) for a in self.allowed)


def complete_transitions(g: Graph, forbidden: Mapping[int, Iterable[tuple[int, int]]] | None = None) -> TransitionSystem:
    """Allow every transition except the listed ``forbidden[v]`` pairs."""
    forbidden = forbidden or {}
    allowed = []
    for v in range(g.n):
        inc = sorted(e for _, e in g.adj[v])
        bad = {(min(a, b), max(a, b)) for a, b in forbidden.get(v, ())}
        allowed.append(frozenset(
            (a, b) for i, a in enumerate(inc) for b in inc[i + 1:] if (a, b) not in bad
        ))
    return TransitionSystem(g, tuple(allowed))


def pairs_to_transitions(pg) -> TransitionSystem:
    """Transition system of a paired graph: each pair is forbidden at the
    vertex it shares, everything else is allowed."""
    forbidden: dict[int, list[tuple[int, int]]] = {}
    for pair, v in zip(pg.pairs, pg.pivots):
        forbidden.setdefault(v, []).append(pair)
    return complete_transitions(pg.graph, forbidden)


def canonical_trail(vertices: Iterable[int], edges: Iterable[int]) -> Cycle:
    """``vertices[i]`` is the vertex between ``edges[i-1]`` and ``edges[i]``."""
    return Cycle(tuple(vertices), tuple(edges)).canonical()


def is_compatible_closed_trail(t: TransitionSystem, c: Cycle) -> bool:
    g = t.graph
    k = len(c.edges)
    if k < 2 or len(c.vertices) != k or len(set(c.edges)) != k:
        return False
    for i in range(k):
        v, e, w = c.vertices[i], c.edges[i], c.vertices[(i + 1) % k]
        if set(g.edges[e]) != {v, w}:
            return False
        if not t.permits(v, c.edges[i - 1], e):
            return False
    return True


def find_compatible_closed_trail(g: Graph, t: TransitionSystem) -> Cycle | None:
    """A compatible closed trail, or None when there is none.

    Builds the perfect-matching line graph, tests its matching for
    uniqueness, and reads the trail off the alternating-cycle witness.
    """
    from .matching import is_unique_pm
    from .translations import pm_line_graph

    lg = pm_line_graph(g, t)
    res = is_unique_pm(lg.graph, lg.matching)
    if res.unique:
        return None
    return _trail_from_alternating(lg, res.witness)


def _trail_from_alternating(lg, c: Cycle) -> Cycle:
    """Map an alternating cycle of the line graph back to a closed trail."""
    k = len(c.edges)
    # rotate so the cycle starts with a matching edge
    start = 0 if c.edges[0] in lg.matching else 1
    edges = [c.edges[(start + i) % k] for i in range(k)]
    verts = [c.vertices[(start + i) % k] for i in range(k)]
    trail_edges, trail_verts = [], []
    for i in range(0, k, 2):
        orig = lg.provenance[edges[i]]
        trail_edges.append(orig)
        # vertex where this original edge was entered
        trail_verts.append(lg.vertex_keys[verts[i]][1])
    return canonical_trail(trail_verts, trail_edges)


def brute_force_closed_trails(g: Graph, t: TransitionSystem, cap: int = 10_000) -> list[Cycle]:
    """Every compatible closed trail, canonical and sorted.

    Trails have at least two edges; on simple graphs that means at least
    three.  Exponential; for small instances.
    """
    found: set[Cycle] = set()
    used = [False] * g.m

    def extend(start: int, first: int, verts: list[int], edges: list[int]) -> None:
        v = verts[-1]
        # ``v`` is where we stand; edges[-1] brought us here
        if v == start and len(edges) >= 2 and t.permits(v, edges[-1], first):
            c = canonical_trail(verts[:-1], edges)
            if c not in found:
                if len(found) >= cap:
                    raise CapExceeded(cap, "closed trails")
                found.add(c)
        for w, f in g.adj[v]:
            if f <= first or used[f] or not t.permits(v, edges[-1], f):
                continue
            used[f] = True
            verts.append(w)
            edges.append(f)
            extend(start, first, verts, edges)
            verts.pop()
            edges.pop()
            used[f] = False

    for e in range(g.m):
        used[e] = True
        for u, v in (g.edges[e], g.edges[e][::-1]):
            extend(u, e, [u, v], [e])
        used[e] = False
    return sorted(found, key=lambda c: (len(c.edges), c.edges))


def transitions_to_json(t: TransitionSystem) -> dict:
    return {"allowed": [sorted(list(p) for p in a) for a in t.allowed]}


def transitions_from_json(g: Graph, obj: Mapping) -> TransitionSystem:
    try:
        allowed = tuple(frozenset((int(e), int(f)) for e, f in a) for a in obj["allowed"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed transition system: {exc}") from None
    return TransitionSystem(g, allowed)
