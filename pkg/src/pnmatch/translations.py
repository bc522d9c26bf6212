"""Translations between proof structures and graphs with perfect matchings.

* :func:`rb_graph` - two vertices per directed edge (conclusions included).
* :func:`graphification` - two vertices per link.
* :func:`proofification` - a proof structure built from a matched graph.
* :func:`pm_line_graph` - two vertices per edge of a graph with forbidden
  transitions.

Each result records where its matching edges come from so that cycles can
be carried back and forth.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .errors import NotPerfect, PnmatchError
from .graph import Cycle, Graph, is_alternating_cycle, is_perfect_matching
from .proofnet import Kind, ProofStructure, WithConclusions, add_conclusions, correctness_graph
from .transitions import TransitionSystem, pairs_to_transitions

__all__ = [
    "MatchedGraph",
    "rb_graph",
    "graphification",
    "Proofification",
    "proofification",
    "pm_line_graph",
    "alternating_to_switching",
    "switching_to_alternating",
    "proofification_cycle_to_switching",
    "proofification_switching_to_cycle",
    "verify_rb_equals_lpm",
    "NotAlternating",
    "NotASwitchingCycle",
]


class NotAlternating(PnmatchError, ValueError):
    pass


class NotASwitchingCycle(PnmatchError, ValueError):
    pass


@dataclass(frozen=True)
class MatchedGraph:
    """A graph with a perfect matching and its origin.

    ``provenance[e]`` describes what matching edge ``e`` stands for (a
    directed edge id, a link id or an original edge id); ``vertex_keys[v]``
    names vertex ``v`` in the source object; ``edge_origin`` maps
    non-matching edges to the source objects that produced them.
    """

    graph: Graph
    matching: frozenset
    provenance: dict
    vertex_keys: tuple = ()
    source: Any = None
    edge_origin: dict = field(default_factory=dict)

    def __post_init__(self):
        if not is_perfect_matching(self.graph, self.matching):
            raise NotPerfect("translation did not produce a perfect matching")


def _build(n: int, matching_pairs, other_pairs) -> tuple[Graph, frozenset, dict]:
    """Matching edges get ids ``0..k-1`` in order; other edges follow, with
    duplicates collapsed onto the first occurrence."""
    edges = list(matching_pairs)
    seen = {frozenset(e): i for i, e in enumerate(edges)}
    origin: dict[int, list] = {}
    for pair, tag in other_pairs:
        key = frozenset(pair)
        if key in seen:
            origin.setdefault(seen[key], []).append(tag)
            continue
        seen[key] = len(edges)
        origin[len(edges)] = [tag]
        edges.append(tuple(pair))
    g = Graph(n, tuple(edges))
    return g, frozenset(range(len(matching_pairs))), {e: tuple(v) for e, v in origin.items()}


# ---------------------------------------------------------------------------
# RB-graph

def rb_graph(ps: ProofStructure | WithConclusions) -> MatchedGraph:
    """One matching edge per directed edge ``d`` between its upper end
    (vertex ``2d``, at the source) and lower end (``2d + 1``, at the target).

    Non-matching edges: an ``ax`` joins the upper ends of its two
    out-edges; a ``tensor`` joins its two premises' lower ends to each other
    and to its out-edge's upper end; a ``par`` joins only its premises'
    lower ends to its out-edge's upper end.  Conclusions add nothing.
    """
    wc = ps if isinstance(ps, WithConclusions) else add_conclusions(ps)
    base = wc.ps
    up = lambda d: 2 * d  # noqa: E731
    low = lambda d: 2 * d + 1  # noqa: E731
    outs: dict[int, list[int]] = {l: [] for l in base.kinds}
    ins: dict[int, list[int]] = {l: [] for l in base.kinds}
    for d, (s, t) in enumerate(wc.edges):
        outs[s].append(d)
        if t in ins:
            ins[t].append(d)
    others = []
    for l, k in base.kinds.items():
        if k is Kind.AX:
            d1, d2 = outs[l]
            others.append(((up(d1), up(d2)), l))
        else:
            p1, p2 = ins[l]
            (o,) = outs[l]
            if k is Kind.TENSOR:
                others.append(((low(p1), low(p2)), l))
            others.append(((up(o), low(p1)), l))
            others.append(((up(o), low(p2)), l))
    m = len(wc.edges)
    g, match, origin = _build(2 * m, [(up(d), low(d)) for d in range(m)], others)
    keys = tuple((v // 2, "up" if v % 2 == 0 else "low") for v in range(2 * m))
    return MatchedGraph(g, match, {d: d for d in range(m)}, keys, wc, origin)


# ---------------------------------------------------------------------------
# Graphification

def graphification(ps: ProofStructure) -> MatchedGraph:
    """One matching edge ``(a_l, b_l) = (2i, 2i + 1)`` per link, ``i`` its
    rank in ascending link id; matching edge ``i`` stands for that link.

    Each in-edge ``d`` of a link ``t`` from a link ``s`` joins both ``a_s``
    and ``b_s`` to one end of ``t``: always ``a_t`` for a ``par``; for a
    ``tensor``, ``a_t`` for its first in-edge (smaller edge id) and ``b_t``
    for the second.  Parallel edges are merged; ``edge_origin`` lists the
    directed edges behind each non-matching edge.
    """
    links = ps.links
    rank = {l: i for i, l in enumerate(links)}
    others = []
    for t in links:
        k = ps.kinds[t]
        if k is Kind.AX:
            continue
        d1, d2 = ps.in_edges[t]
        for j, d in enumerate((d1, d2)):
            s = ps.edges[d][0]
            end = 2 * rank[t] + (1 if k is Kind.TENSOR and j == 1 else 0)
            others.append(((2 * rank[s], end), d))
            others.append(((2 * rank[s] + 1, end), d))
    g, match, origin = _build(2 * len(links), [(2 * i, 2 * i + 1) for i in range(len(links))], others)
    keys = tuple((links[v // 2], "a" if v % 2 == 0 else "b") for v in range(g.n))
    return MatchedGraph(g, match, {i: l for i, l in enumerate(links)}, keys, ps, origin)


def _attach_end(ps: ProofStructure, rank: dict, d: int) -> int:
    """Vertex of the target link of ``d`` that ``d`` attaches to."""
    t = ps.edges[d][1]
    if ps.kinds[t] is Kind.TENSOR and ps.in_edges[t][1] == d:
        return 2 * rank[t] + 1
    return 2 * rank[t]


def alternating_to_switching(mg: MatchedGraph, c: Cycle) -> Cycle:
    """Carry an alternating cycle of a graphification to a switching cycle
    of its proof structure (vertices are correctness-graph vertices, edges
    are directed-edge ids)."""
    ps: ProofStructure = mg.source
    g = mg.graph
    if not is_alternating_cycle(g, mg.matching, c):
        raise NotAlternating("not an alternating cycle of the graphification")
    k = len(c.edges)
    start = 0 if c.edges[0] in mg.matching else 1
    verts, edges = [], []
    for i in range(0, k, 2):
        me = c.edges[(start + i) % k]
        ne = c.edges[(start + i + 1) % k]
        verts.append(me)  # correctness-graph vertex = rank of the link
        edges.append(mg.edge_origin[ne][0])
    return Cycle(tuple(verts), tuple(edges)).canonical()


def switching_to_alternating(mg: MatchedGraph, c: Cycle) -> Cycle:
    """Inverse of :func:`alternating_to_switching`.

    At each link the cycle enters and leaves through two edges; an in-edge
    fixes the end of the link's matching edge it attaches to, and an
    out-edge takes the other end (``a`` in, ``b`` out when both are
    out-edges).
    """
    ps: ProofStructure = mg.source
    links = ps.links
    rank = {l: i for i, l in enumerate(links)}
    g = mg.graph
    k = len(c.edges)
    if k < 2 or len(c.vertices) != k or len(set(c.vertices)) != k:
        raise NotASwitchingCycle("not a simple cycle")
    ends = []  # (entry vertex, exit vertex) in the graphification, per link
    for i in range(k):
        r = c.vertices[i]
        l = links[r]
        d_in, d_out = c.edges[i - 1], c.edges[i]
        if l not in ps.edges[d_in] or l not in ps.edges[d_out]:
            raise NotASwitchingCycle(f"edges {d_in}, {d_out} do not meet at link {l}")
        if ps.kinds[l] is Kind.PAR and ps.edges[d_in][1] == l and ps.edges[d_out][1] == l:
            raise NotASwitchingCycle(f"cycle uses both premises of par link {l}")
        fixed_in = _attach_end(ps, rank, d_in) if ps.edges[d_in][1] == l and d_in != d_out else None
        fixed_out = _attach_end(ps, rank, d_out) if ps.edges[d_out][1] == l else None
        a, b = 2 * r, 2 * r + 1
        if fixed_in is not None and fixed_out is not None:
            x, y = fixed_in, fixed_out
        elif fixed_in is not None:
            x, y = fixed_in, a + b - fixed_in
        elif fixed_out is not None:
            x, y = a + b - fixed_out, fixed_out
        else:
            x, y = a, b
        if x == y:
            raise NotASwitchingCycle(f"cycle cannot cross link {l}")
        ends.append((x, y))
    verts, edges = [], []
    for i in range(k):
        x, y = ends[i]
        nx = ends[(i + 1) % k][0]
        verts += [x, y]
        edges.append(c.vertices[i])  # matching edge id = rank
        e = g.edge_between(y, nx)
        if e is None:
            raise NotASwitchingCycle("no graphification edge for a cycle step")
        edges.append(e)
    out = Cycle(tuple(verts), tuple(edges))
    if not is_alternating_cycle(g, mg.matching, out):
        raise NotASwitchingCycle("image is not an alternating cycle")
    return out.canonical()


# ---------------------------------------------------------------------------
# Proofification

@dataclass(frozen=True)
class Proofification:
    """A proof structure built from ``(graph, matching)`` plus the maps
    relating them.

    ``ax_of_edge[e]`` is the axiom of a non-matching edge, ``tensor_of_edge[e]``
    the tensor of a matching edge, ``leaf_ax[u]`` the axiom of a degree-1
    vertex, ``pars_of_vertex[u]`` the chain of binary pars at ``u``.
    ``premise_path[(u, v)]`` lists the directed edges leading from the axiom
    of edge ``(u, v)`` down to the tensor of ``u``'s matching edge.
    """

    ps: ProofStructure
    graph: Graph
    matching: frozenset
    ax_of_edge: dict
    tensor_of_edge: dict
    leaf_ax: dict
    pars_of_vertex: dict
    premise_path: dict

    @property
    def link_kinds(self) -> dict:
        return self.ps.kinds


def proofification(g: Graph, m) -> Proofification:
    """Proof structure of a graph with a perfect matching.

    An axiom per non-matching edge; at every vertex with ``k >= 2``
    non-matching neighbours a left comb of ``k - 1`` binary pars over their
    axiom outputs (neighbours in ascending order); an axiom at a degree-1
    vertex; a tensor per matching edge over the outputs of its two ends.
    Link ids follow that creation order.
    """
    m = frozenset(m)
    if not is_perfect_matching(g, m):
        raise NotPerfect("edge set is not a perfect matching of the graph")
    kinds: dict[int, Kind] = {}
    edges: list[tuple[int, int]] = []

    def link(kind: Kind) -> int:
        kinds[len(kinds)] = kind
        return len(kinds) - 1

    ax_of_edge = {}
    for e in range(g.m):
        if e not in m:
            ax_of_edge[e] = link(Kind.AX)
    leaf_ax, pars_of_vertex = {}, {}
    premise_path: dict[tuple[int, int], list[int]] = {}
    keys_of: dict[int, list[tuple[int, int]]] = {u: [] for u in range(g.n)}
    out_link: dict[int, int] = {}  # vertex -> link whose output is B_u

    def extend_paths(u: int, d: int) -> None:
        for key in keys_of[u]:
            premise_path[key].append(d)

    for u in range(g.n):
        nbrs = sorted((w, e) for w, e in g.adj[u] if e not in m)
        if not nbrs:
            out_link[u] = leaf_ax[u] = link(Kind.AX)
            continue
        if len(nbrs) == 1:
            w, e = nbrs[0]
            out_link[u] = ax_of_edge[e]
            premise_path[(u, w)] = []
            keys_of[u].append((u, w))
            continue
        chain: list[int] = []
        for j, (w, e) in enumerate(nbrs[1:], start=1):
            p = link(Kind.PAR)
            if not chain:
                w0, e0 = nbrs[0]
                premise_path[(u, w0)] = [len(edges)]
                keys_of[u].append((u, w0))
                edges.append((ax_of_edge[e0], p))
            else:
                extend_paths(u, len(edges))
                edges.append((chain[-1], p))
            premise_path[(u, w)] = [len(edges)]
            keys_of[u].append((u, w))
            edges.append((ax_of_edge[e], p))
            chain.append(p)
        pars_of_vertex[u] = tuple(chain)
        out_link[u] = chain[-1]
    tensor_of_edge = {}
    for e in sorted(m):
        t = link(Kind.TENSOR)
        tensor_of_edge[e] = t
        for x in g.edges[e]:
            extend_paths(x, len(edges))
            edges.append((out_link[x], t))
    ps = ProofStructure(kinds, tuple(edges))
    return Proofification(
        ps, g, m, ax_of_edge, tensor_of_edge, leaf_ax, pars_of_vertex,
        {k: tuple(v) for k, v in premise_path.items()},
    )


def proofification_cycle_to_switching(pf: Proofification, c: Cycle) -> Cycle:
    """Carry an alternating cycle of the matched graph to a switching cycle
    of the proofification (correctness-graph vertices = link ids, since
    proofification ids are dense)."""
    g, m = pf.graph, pf.matching
    if not is_alternating_cycle(g, m, c):
        raise NotAlternating("not an alternating cycle")
    k = len(c.edges)
    start = 0 if c.edges[0] in m else 1
    vs = [c.vertices[(start + i) % k] for i in range(k)]
    es = [c.edges[(start + i) % k] for i in range(k)]
    # vs[i] -es[i]- vs[i+1]; es[0] is a matching edge
    out_edges: list[int] = []
    for i in range(0, k, 2):
        x1 = vs[(i + 1) % k]
        x2 = vs[(i + 2) % k]
        # from tensor(es[i]) up through x1's pars to ax(es[i+1]), then down to tensor(es[i+2])
        out_edges += list(reversed(pf.premise_path[(x1, x2)]))
        out_edges += list(pf.premise_path[(x2, x1)])
    start_link = pf.tensor_of_edge[es[0]]
    walk = [start_link]
    for d in out_edges[:-1]:
        s, t = pf.ps.edges[d]
        walk.append(t if walk[-1] == s else s)
    return Cycle(tuple(walk), tuple(out_edges)).canonical()


def proofification_switching_to_cycle(pf: Proofification, c: Cycle) -> Cycle:
    """Inverse of :func:`proofification_cycle_to_switching`."""
    edge_of = {}
    for e, l in pf.ax_of_edge.items():
        edge_of[l] = e
    for e, l in pf.tensor_of_edge.items():
        edge_of[l] = e
    seq = [edge_of[l] for l in c.vertices if l in edge_of]
    g = pf.graph
    k = len(seq)
    if k < 2:
        raise NotASwitchingCycle("cycle does not cross the graph")
    verts = []
    for i in range(k):
        shared = set(g.edges[seq[i - 1]]) & set(g.edges[seq[i]])
        if len(shared) != 1:
            raise NotASwitchingCycle("consecutive edges do not meet")
        verts.append(shared.pop())
    out = Cycle(tuple(verts), tuple(seq))
    if not is_alternating_cycle(g, pf.matching, out):
        raise NotASwitchingCycle("image is not an alternating cycle")
    return out.canonical()


# ---------------------------------------------------------------------------
# PM-line graph

def pm_line_graph(g: Graph, t: TransitionSystem) -> MatchedGraph:
    """Two vertices per edge ``e = (u, v)``: ``2e`` stands for the end at
    ``u`` and ``2e + 1`` for the end at ``v``.  Matching edge ``e`` joins
    them; an allowed transition ``(e, f)`` at ``x`` joins the ends of ``e``
    and ``f`` at ``x``.  Non-matching edges are listed vertex by vertex."""
    if t.graph is not g and t.graph != g:
        raise ValueError("transition system belongs to another graph")

    def end(e: int, x: int) -> int:
        return 2 * e if g.edges[e][0] == x else 2 * e + 1

    others = []
    for x in range(g.n):
        for e, f in sorted(t.allowed[x]):
            others.append(((end(e, x), end(f, x)), x))
    lg, match, origin = _build(2 * g.m, [(2 * e, 2 * e + 1) for e in range(g.m)], others)
    keys = tuple((v // 2, g.edges[v // 2][v % 2]) for v in range(2 * g.m))
    return MatchedGraph(lg, match, {e: e for e in range(g.m)}, keys, (g, t), origin)


def verify_rb_equals_lpm(ps: ProofStructure | WithConclusions) -> bool:
    """The RB-graph coincides with the PM-line graph of the correctness
    graph (conclusions included, pairs as forbidden transitions), both
    having vertex ``2d`` / ``2d + 1`` for the source / target end of
    directed edge ``d``."""
    wc = ps if isinstance(ps, WithConclusions) else add_conclusions(ps)
    rb = rb_graph(wc)
    pg = correctness_graph(wc)
    lpm = pm_line_graph(pg.graph, pairs_to_transitions(pg))
    if rb.graph.n != lpm.graph.n:
        return False
    as_set = lambda mg: frozenset(frozenset(e) for e in mg.graph.edges)  # noqa: E731
    as_match = lambda mg: frozenset(frozenset(mg.graph.edges[e]) for e in mg.matching)  # noqa: E731
    return (
        rb.graph.m == lpm.graph.m
        and as_set(rb) == as_set(lpm)
        and as_match(rb) == as_match(lpm)
    )
