"""Undirected graphs with dense integer ids, matchings, bridges and Berge
decompositions.

Vertices are ``0..n-1`` and edges are identified by their position in
``Graph.edges``.  A matching is any ``frozenset`` of edge ids.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator, NamedTuple

from .errors import CapExceeded

Matching = frozenset  # frozenset[int] of edge ids

__all__ = [
    "Graph",
    "Matching",
    "Cycle",
    "Path",
    "BergeDecomposition",
    "connected_components",
    "component_sizes",
    "bridges",
    "bridge_edges",
    "is_matching",
    "is_perfect_matching",
    "mates",
    "symmetric_difference_decompose",
    "enumerate_perfect_matchings",
    "alternating_cycles",
    "is_alternating_cycle",
    "is_alternating_path",
    "graph_to_json",
    "graph_from_json",
    "graph_to_dot",
    "cycle_to_json",
    "cycle_from_json",
]


@dataclass(frozen=True)
class Graph:
    """Undirected graph on vertices ``0..n-1``.

    ``edges[i]`` is the pair of endpoints of edge ``i``.  Self-loops are
    rejected; parallel edges are rejected unless ``multi`` is set (only the
    correctness graphs of proof structures need them).
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    multi: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for i, (u, v) in enumerate(edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {i} = {(u, v)} has an endpoint out of range")
            if u == v:
                raise ValueError(f"edge {i} is a self-loop on vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen and not self.multi:
                raise ValueError(f"edge {i} = {(u, v)} is parallel to an earlier edge")
            seen.add(key)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """``adj[v]`` lists ``(neighbor, edge_id)`` in ascending edge id."""
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            out[u].append((v, i))
            out[v].append((u, i))
        return tuple(tuple(a) for a in out)

    @cached_property
    def edge_index(self) -> dict[frozenset, int]:
        """Map from unordered endpoint pair to edge id (simple graphs only)."""
        if self.multi:
            raise ValueError("edge_index is ambiguous on a multigraph")
        return {frozenset(e): i for i, e in enumerate(self.edges)}

    def edge_between(self, u: int, v: int) -> int | None:
        return self.edge_index.get(frozenset((u, v)))

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if v == a else a

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def without_edges(self, removed: Iterable[int]) -> tuple["Graph", list[int]]:
        """Spanning subgraph without ``removed``; also returns the old id of
        every surviving edge."""
        removed = set(removed)
        keep = [i for i in range(self.m) if i not in removed]
        return self.edge_subgraph(keep), keep

    def edge_subgraph(self, keep: Iterable[int]) -> "Graph":
        """Spanning subgraph whose edge ``j`` is old edge ``keep[j]``."""
        return Graph(self.n, tuple(self.edges[i] for i in keep), multi=self.multi)


class Cycle(NamedTuple):
    """Closed walk ``v0 -e0- v1 -e1- ... v[k-1] -e[k-1]- v0``."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __len__(self) -> int:  # number of edges
        return len(self.edges)

    @property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def canonical(self) -> "Cycle":
        """Rotate to the smallest edge id; orient toward the smaller second edge."""
        k = len(self.edges)
        if k == 0:
            return self
        i = min(range(k), key=self.edges.__getitem__)
        fwd = Cycle(
            tuple(self.vertices[(i + j) % k] for j in range(k)),
            tuple(self.edges[(i + j) % k] for j in range(k)),
        )
        bwd = Cycle(
            tuple(self.vertices[(i + 1 - j) % k] for j in range(k)),
            tuple(self.edges[(i - j) % k] for j in range(k)),
        )
        return min(fwd, bwd, key=lambda c: (c.edges, c.vertices))


class Path(NamedTuple):
    """Walk ``v0 -e0- v1 ... -e[k-1]- vk``."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    def reversed(self) -> "Path":
        return Path(self.vertices[::-1], self.edges[::-1])


@dataclass(frozen=True)
class BergeDecomposition:
    cycles: tuple[Cycle, ...] = ()
    paths: tuple[Path, ...] = ()

    @property
    def edge_set(self) -> frozenset:
        out = set()
        for c in self.cycles:
            out.update(c.edges)
        for p in self.paths:
            out.update(p.edges)
        return frozenset(out)

    def __bool__(self) -> bool:
        return bool(self.cycles or self.paths)


def connected_components(g: Graph) -> list[int]:
    """Component label of every vertex, labels numbered by smallest vertex."""
    label = [-1] * g.n
    c = 0
    for s in range(g.n):
        if label[s] != -1:
            continue
        label[s] = c
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w, _ in g.adj[v]:
                if label[w] == -1:
                    label[w] = c
                    queue.append(w)
        c += 1
    return label


def component_sizes(g: Graph) -> list[int]:
    labels = connected_components(g)
    sizes = [0] * (max(labels) + 1 if labels else 0)
    for c in labels:
        sizes[c] += 1
    return sizes


def bridge_edges(
    neighbors: Callable[[int], Iterable[tuple[int, int]]],
    roots: Iterable[int],
) -> set[int]:
    """Bridges reachable from ``roots`` by a single low-link DFS pass.

    ``neighbors(v)`` yields ``(w, edge_id)`` pairs.  Parallel edges are
    handled by skipping the tree edge by id rather than by parent vertex.
    """
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    found: set[int] = set()
    t = 0
    for s in roots:
        if s in disc:
            continue
        disc[s] = low[s] = t
        t += 1
        stack = [(s, -1, iter(neighbors(s)))]
        while stack:
            v, via, it = stack[-1]
            for w, eid in it:
                if eid == via:
                    continue
                if w in disc:
                    if disc[w] < low[v]:
                        low[v] = disc[w]
                else:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, eid, iter(neighbors(w))))
                    break
            else:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    if low[v] < low[u]:
                        low[u] = low[v]
                    if low[v] > disc[u]:
                        found.add(via)
    return found


def bridges(g: Graph) -> frozenset:
    """Edges whose removal increases the number of connected components."""
    return frozenset(bridge_edges(g.adj.__getitem__, range(g.n)))


def mates(g: Graph, m: Iterable[int]) -> list[int]:
    """``mate[v]`` is the vertex matched to ``v``, or -1."""
    mate = [-1] * g.n
    for e in m:
        u, v = g.edges[e]
        if mate[u] != -1 or mate[v] != -1:
            raise ValueError(f"edge {e} shares a vertex with another matching edge")
        mate[u], mate[v] = v, u
    return mate


def is_matching(g: Graph, m: Iterable[int]) -> bool:
    covered = set()
    for e in m:
        if not 0 <= e < g.m:
            return False
        u, v = g.edges[e]
        if u in covered or v in covered:
            return False
        covered.update((u, v))
    return True


def is_perfect_matching(g: Graph, m: Iterable[int]) -> bool:
    m = frozenset(m)
    return is_matching(g, m) and 2 * len(m) == g.n


def _walk_component(g: Graph, adj: dict[int, list[int]], start: int, seen: set) -> tuple[list[int], list[int]]:
    verts, edges = [start], []
    v, prev = start, None
    while True:
        nxt = [e for e in adj[v] if e != prev and e not in seen]
        if not nxt:
            break
        e = nxt[0]
        seen.add(e)
        edges.append(e)
        v = g.other(e, v)
        prev = e
        if v == start:
            break
        verts.append(v)
    return verts, edges


def symmetric_difference_decompose(g: Graph, m1: Iterable[int], m2: Iterable[int]) -> BergeDecomposition:
    """Split ``m1 △ m2`` into vertex-disjoint alternating cycles and paths.

    Cycles are canonical (see :meth:`Cycle.canonical`); paths start at their
    smaller end vertex.  Both lists are sorted by smallest edge id.
    """
    diff = frozenset(m1) ^ frozenset(m2)
    adj: dict[int, list[int]] = {}
    for e in sorted(diff):
        for v in g.edges[e]:
            adj.setdefault(v, []).append(e)
    if any(len(es) > 2 for es in adj.values()):
        raise ValueError("arguments are not both matchings")
    seen: set[int] = set()
    paths, cycles = [], []
    for v in sorted(adj):
        if len(adj[v]) == 1 and adj[v][0] not in seen:
            verts, edges = _walk_component(g, adj, v, seen)
            paths.append(Path(tuple(verts), tuple(edges)))
    for v in sorted(adj):
        if adj[v][0] not in seen:
            verts, edges = _walk_component(g, adj, v, seen)
            cycles.append(Cycle(tuple(verts), tuple(edges)).canonical())
    cycles.sort(key=lambda c: c.edges[0])
    paths.sort(key=lambda p: min(p.edges))
    return BergeDecomposition(tuple(cycles), tuple(paths))


def enumerate_perfect_matchings(g: Graph, cap: int = 10_000) -> list[frozenset]:
    """All perfect matchings of ``g``, brute force.

    Exponential; intended for graphs of at most ~20 vertices.  Matchings are
    produced by always covering the smallest uncovered vertex first, trying
    its edges by ascending id.  Raises :class:`CapExceeded` when there are
    more than ``cap``.
    """
    covered = [False] * g.n
    chosen: list[int] = []
    out: list[frozenset] = []

    def rec(start: int) -> None:
        v = start
        while v < g.n and covered[v]:
            v += 1
        if v == g.n:
            if len(out) >= cap:
                raise CapExceeded(cap, "perfect matchings")
            out.append(frozenset(chosen))
            return
        covered[v] = True
        for w, e in g.adj[v]:
            if not covered[w]:
                covered[w] = True
                chosen.append(e)
                rec(v + 1)
                chosen.pop()
                covered[w] = False
        covered[v] = False

    if g.n % 2 == 0:
        rec(0)
    return out


def alternating_cycles(g: Graph, m: Iterable[int], cap: int = 10_000) -> list[Cycle]:
    """Every alternating cycle for the matching ``m``, brute force.

    Each cycle is reported once, canonical, in discovery order.
    """
    m = frozenset(m)
    mate_edge = [-1] * g.n
    for e in m:
        u, v = g.edges[e]
        mate_edge[u] = mate_edge[v] = e
    out: list[Cycle] = []
    on_path = [False] * g.n

    def extend(s: int, verts: list[int], edges: list[int]) -> None:
        # verts[-1] was just entered through its matching edge
        y = verts[-1]
        for x, e in g.adj[y]:
            if e in m:
                continue
            if x == s:
                if len(out) >= cap:
                    raise CapExceeded(cap, "alternating cycles")
                out.append(Cycle(tuple(verts), tuple(edges + [e])).canonical())
            elif x > s and not on_path[x] and mate_edge[x] != -1:
                xm = mate_edge[x]
                x2 = g.other(xm, x)
                if on_path[x2] or x2 < s:
                    continue
                on_path[x] = on_path[x2] = True
                verts += [x, x2]
                edges += [e, xm]
                extend(s, verts, edges)
                del verts[-2:], edges[-2:]
                on_path[x] = on_path[x2] = False

    for s in range(g.n):
        if mate_edge[s] == -1:
            continue
        t = g.other(mate_edge[s], s)
        if t < s:
            continue
        on_path[s] = on_path[t] = True
        extend(s, [s, t], [mate_edge[s]])
        on_path[s] = on_path[t] = False
    return out


def is_alternating_cycle(g: Graph, m: Iterable[int], c: Cycle) -> bool:
    m = frozenset(m)
    k = len(c.edges)
    if k < 2 or k % 2 or len(set(c.vertices)) != k or len(set(c.edges)) != k:
        return False
    for i, e in enumerate(c.edges):
        if set(g.edges[e]) != {c.vertices[i], c.vertices[(i + 1) % k]}:
            return False
        if (e in m) == (c.edges[(i + 1) % k] in m):
            return False
    return True


def is_alternating_path(g: Graph, m: Iterable[int], p: Path) -> bool:
    m = frozenset(m)
    k = len(p.edges)
    if len(p.vertices) != k + 1 or len(set(p.vertices)) != k + 1:
        return False
    for i, e in enumerate(p.edges):
        if set(g.edges[e]) != {p.vertices[i], p.vertices[i + 1]}:
            return False
        if i and (e in m) == (p.edges[i - 1] in m):
            return False
    return True


def iter_edges(g: Graph) -> Iterator[tuple[int, int, int]]:
    for i, (u, v) in enumerate(g.edges):
        yield i, u, v


def graph_to_json(g: Graph, m: Iterable[int] | None = None) -> dict:
    out = {"vertices": g.n, "edges": [list(e) for e in g.edges]}
    if m is not None:
        out["matching"] = sorted(m)
    return out


def graph_from_json(obj: dict) -> tuple[Graph, frozenset | None]:
    """Parse ``{"vertices": n, "edges": [[u, v], ...]}`` with an optional
    ``"matching"`` list of edge indices."""
    try:
        n = int(obj["vertices"])
        edges = tuple((int(u), int(v)) for u, v in obj["edges"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed graph: {exc}") from None
    g = Graph(n, edges)
    m = obj.get("matching")
    if m is None:
        return g, None
    m = frozenset(int(e) for e in m)
    if not is_matching(g, m):
        raise ValueError("matching field is not a matching of the graph")
    return g, m


def graph_to_dot(g: Graph, m: Iterable[int] | None = None, name: str = "g") -> str:
    """Undirected DOT; matching edges are drawn bold."""
    m = frozenset(m or ())
    lines = [f"graph {name} {{"]
    lines += [f"  v{v};" for v in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        style = ", style=bold" if i in m else ""
        lines.append(f'  v{u} -- v{v} [label="{i}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cycle_to_json(c: Cycle | Path) -> dict:
    return {"vertices": list(c.vertices), "edges": list(c.edges)}


def cycle_from_json(obj: dict) -> Cycle:
    try:
        return Cycle(tuple(int(v) for v in obj["vertices"]), tuple(int(e) for e in obj["edges"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed cycle: {exc}") from None
