"""Maximum matching, uniqueness of perfect matchings and their inductive
decomposition.

The augmenting-path search is Edmonds' blossom algorithm in its classic
array form (``base`` / ``p`` / ``mate`` with explicit contraction), which is
O(V^3) overall and plenty for the sizes handled here.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Union as _U

import numpy as np

from ._util import deep_recursion
from .errors import CapExceeded, NotABridge, NotPerfect, NotUnique, PreconditionViolated
from .graph import (
    Cycle,
    Graph,
    Path,
    bridge_edges,
    is_matching,
    is_perfect_matching,
    mates,
    symmetric_difference_decompose,
)

__all__ = [
    "maximum_matching",
    "has_perfect_matching",
    "UniquenessResult",
    "is_unique_pm",
    "find_alternating_path_through",
    "Empty",
    "Union",
    "Join",
    "UpmDerivation",
    "upm_sequentialize",
    "upm_replay",
    "upm_reconstructs",
    "enumerate_upm_derivations",
    "upm_to_json",
    "upm_from_json",
    "is_matching_bridge_by_parity",
    "Blossom",
    "blossoms_with_stem",
    "stem_relation",
    "transitive_closure",
    "random_upm",
]


# ---------------------------------------------------------------------------
# Edmonds search

def _augmenting_search(adj, mate: list[int], root: int, banned: int = -1) -> list[int] | None:
    """Search an augmenting path from the exposed vertex ``root``.

    ``adj[v]`` yields ``(w, edge_id)``; edge ``banned`` is ignored.  Returns
    the path as a vertex list from ``root`` to another exposed vertex, or
    None.
    """
    n = len(mate)
    used = [False] * n
    p = [-1] * n
    base = list(range(n))
    used[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = p[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = p[mate[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            p[v] = child
            child = mate[v]
            v = p[mate[v]]

    while queue:
        v = queue.popleft()
        for to, eid in adj[v]:
            if eid == banned or base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and p[mate[to]] != -1):
                cur = lca(v, to)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif p[to] == -1:
                p[to] = v
                if mate[to] == -1:
                    path = []
                    w = to
                    while w != -1:
                        path.append(w)
                        pw = p[w]
                        path.append(pw)
                        w = mate[pw]
                    return path[::-1]
                used[mate[to]] = True
                queue.append(mate[to])
    return None


def _apply_path(mate: list[int], path: list[int]) -> None:
    for i in range(0, len(path), 2):
        a, b = path[i], path[i + 1]
        mate[a], mate[b] = b, a


def _pair_edges(g: Graph) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for i, (u, v) in enumerate(g.edges):
        key = (u, v) if u < v else (v, u)
        out.setdefault(key, i)
    return out


def _mate_to_matching(g: Graph, mate: list[int]) -> frozenset:
    pe = _pair_edges(g)
    return frozenset(pe[(v, w)] for v, w in enumerate(mate) if w > v)


def maximum_matching(g: Graph) -> frozenset:
    """A maximum-cardinality matching, as a set of edge ids.

    Starts from the greedy matching in edge-id order, then runs one blossom
    search from every exposed vertex in ascending order.
    """
    mate = [-1] * g.n
    for u, v in g.edges:
        if mate[u] == -1 and mate[v] == -1:
            mate[u], mate[v] = v, u
    for r in range(g.n):
        if mate[r] == -1:
            path = _augmenting_search(g.adj, mate, r)
            if path is not None:
                _apply_path(mate, path)
    return _mate_to_matching(g, mate)


def has_perfect_matching(g: Graph) -> bool:
    if g.n % 2:
        return False
    return 2 * len(maximum_matching(g)) == g.n


# ---------------------------------------------------------------------------
# Uniqueness

@dataclass(frozen=True)
class UniquenessResult:
    """Outcome of :func:`is_unique_pm`; truthy iff the matching is unique."""

    unique: bool
    witness: Optional[Cycle] = None

    def __bool__(self) -> bool:
        return self.unique


def _check_perfect(g: Graph, m: frozenset) -> None:
    if not is_perfect_matching(g, m):
        raise NotPerfect("edge set is not a perfect matching of the graph")


def _peel(g: Graph, m: frozenset) -> list[bool]:
    """Vertices left after stripping matching edges that lie on no
    alternating cycle.

    A matching edge at a degree-1 vertex, or a matching edge that is a
    bridge, cannot lie on an alternating cycle; deleting it together with
    its endpoints keeps the remaining matching perfect and leaves every
    alternating cycle intact.  Rounds alternate leaf stripping with one
    bridge pass until nothing changes.
    """
    mate = mates(g, m)
    alive = [True] * g.n
    deg = [len(a) for a in g.adj]
    adj = g.adj

    def kill(v: int, stack: list[int]) -> None:
        alive[v] = False
        for w, _ in adj[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)

    def strip_leaves(stack: list[int]) -> None:
        while stack:
            v = stack.pop()
            if alive[v] and deg[v] == 1:
                w = mate[v]
                kill(v, stack)
                if alive[w]:
                    kill(w, stack)

    strip_leaves([v for v in range(g.n) if deg[v] == 1])
    while True:
        roots = [v for v in range(g.n) if alive[v]]
        if not roots:
            break
        found = bridge_edges(
            lambda v: ((w, e) for w, e in adj[v] if alive[w]), roots
        )
        hit = [e for e in found if e in m]
        if not hit:
            break
        stack: list[int] = []
        for e in hit:
            for v in g.edges[e]:
                if alive[v]:
                    kill(v, stack)
        strip_leaves(stack)
    return alive


def is_unique_pm(g: Graph, m: Iterable[int]) -> UniquenessResult:
    """Decide whether the perfect matching ``m`` is the only one of ``g``.

    ``m`` is unique iff for no matching edge ``e = (a, b)`` the graph
    ``g - e`` has an augmenting path from ``a`` to ``b`` for ``m - e``.  The
    edges are tried in ascending id order and the first success yields the
    witness cycle, so the result is deterministic; edges that peel off as
    bridges or leaves are skipped since they cannot succeed.
    """
    m = frozenset(m)
    _check_perfect(g, m)
    alive = _peel(g, m)
    if not any(alive):
        return UniquenessResult(True)
    keep = [v for v in range(g.n) if alive[v]]
    index = {v: i for i, v in enumerate(keep)}
    sub_edges, old_id = [], []
    for i, (u, v) in enumerate(g.edges):
        if alive[u] and alive[v]:
            sub_edges.append((index[u], index[v]))
            old_id.append(i)
    sub = Graph(len(keep), tuple(sub_edges), multi=g.multi)
    sub_m = [j for j, i in enumerate(old_id) if i in m]
    base_mate = mates(sub, sub_m)
    for j in sorted(sub_m, key=old_id.__getitem__):
        a, b = sub.edges[j]
        mate = list(base_mate)
        mate[a] = mate[b] = -1
        path = _augmenting_search(sub.adj, mate, a, banned=j)
        if path is None:
            continue
        # path runs a .. b and alternates starting with a non-matching edge
        other = set(m)
        other.discard(old_id[j])
        for k in range(0, len(path), 2):
            x, y = keep[path[k]], keep[path[k + 1]]
            other.add(_edge_of(g, x, y, m, False))
        for k in range(1, len(path) - 1, 2):
            x, y = keep[path[k]], keep[path[k + 1]]
            other.discard(_edge_of(g, x, y, m, True))
        dec = symmetric_difference_decompose(g, m, other)
        return UniquenessResult(False, dec.cycles[0])
    raise AssertionError("peeling left a residue with a unique perfect matching")


def _edge_of(g: Graph, x: int, y: int, m: frozenset, matched: bool) -> int:
    """Edge id between x and y, preferring one whose matching membership is
    ``matched`` (only matters on multigraphs)."""
    best = None
    for w, e in g.adj[x]:
        if w == y:
            if (e in m) == matched:
                return e
            if best is None:
                best = e
    if best is None:
        raise KeyError((x, y))
    return best


# ---------------------------------------------------------------------------
# Alternating path through a prescribed edge

def find_alternating_path_through(
    g: Graph, m: Iterable[int], u: int, v: int, e: int, check: bool = False
) -> Path | None:
    """Alternating path from ``u`` to ``v`` that uses the matching edge ``e``.

    ``m`` must leave exactly ``u`` and ``v`` exposed and have no alternating
    cycle (verified when ``check`` is set).  Works by completing ``m - e`` to
    a perfect matching of ``g - e`` with two augmenting searches, then
    splicing the two resulting paths with ``e``.  Returns None when ``g - e``
    has no perfect matching.
    """
    m = frozenset(m)
    if not is_matching(g, m):
        raise PreconditionViolated("edge set is not a matching")
    mate = mates(g, m)
    exposed = [w for w in range(g.n) if mate[w] == -1]
    if sorted(exposed) != sorted({u, v}) or u == v:
        raise PreconditionViolated(
            f"expected exactly vertices {u} and {v} unmatched, got {exposed}"
        )
    if e not in m:
        raise PreconditionViolated(f"edge {e} is not in the matching")
    if check:
        keep = [w for w in range(g.n) if w not in (u, v)]
        idx = {w: i for i, w in enumerate(keep)}
        sub_ids = [i for i, (x, y) in enumerate(g.edges) if x in idx and y in idx]
        sub = Graph(len(keep), tuple((idx[g.edges[i][0]], idx[g.edges[i][1]]) for i in sub_ids), multi=g.multi)
        pos = {i: j for j, i in enumerate(sub_ids)}
        if not is_unique_pm(sub, [pos[i] for i in m]):
            raise PreconditionViolated("the matching has an alternating cycle")
    a, b = g.edges[e]
    mate[a] = mate[b] = -1
    first = _augmenting_search(g.adj, mate, u, banned=e)
    if first is None:
        return None
    _apply_path(mate, first)
    root = next(w for w in (u, v, a, b) if mate[w] == -1)
    second = _augmenting_search(g.adj, mate, root, banned=e)
    if second is None:
        return None
    _apply_path(mate, second)
    m2 = set()
    for x, y in enumerate(mate):
        if y > x:
            m2.add(_edge_of_banned(g, x, y, e, m))
    dec = symmetric_difference_decompose(g, m - {e}, m2)
    if dec.cycles:
        raise PreconditionViolated("the matching has an alternating cycle")
    pieces = {}
    for p in dec.paths:
        for end in p.ends:
            pieces[end] = p if p.vertices[0] == end else p.reversed()
    if u not in pieces or v not in pieces:
        raise PreconditionViolated("the matching has an alternating cycle")
    start = pieces[u]
    finish = pieces[v].reversed()
    if {start.vertices[-1], finish.vertices[0]} != {a, b}:
        raise PreconditionViolated("the matching has an alternating cycle")
    return Path(start.vertices + finish.vertices, start.edges + (e,) + finish.edges)


def _edge_of_banned(g: Graph, x: int, y: int, banned: int, m: frozenset) -> int:
    fallback = None
    for w, eid in g.adj[x]:
        if w == y and eid != banned:
            if eid in m:
                return eid
            if fallback is None:
                fallback = eid
    return fallback


# ---------------------------------------------------------------------------
# Inductive decomposition of unique perfect matchings

@dataclass(frozen=True)
class Empty:
    """The empty graph with the empty matching."""

    def vertices(self) -> frozenset:
        return frozenset()


@dataclass(frozen=True)
class Union:
    """Disjoint union of two non-empty decompositions."""

    left: "UpmDerivation"
    right: "UpmDerivation"

    def vertices(self) -> frozenset:
        return self.left.vertices() | self.right.vertices()


@dataclass(frozen=True)
class Join:
    """Add matching edge ``edge`` between fresh ``ends = (x, x')``, linking
    ``x`` to ``attach_left`` in ``left`` and ``x'`` to ``attach_right`` in
    ``right``."""

    edge: int
    ends: tuple[int, int]
    attach_left: frozenset
    attach_right: frozenset
    left: "UpmDerivation"
    right: "UpmDerivation"

    def vertices(self) -> frozenset:
        return self.left.vertices() | self.right.vertices() | frozenset(self.ends)


UpmDerivation = _U[Empty, Union, Join]
EMPTY = Empty()


class _Residual:
    """Working view of ``g`` restricted to a shrinking vertex set."""

    def __init__(self, g: Graph, m: frozenset):
        self.g = g
        self.m = m
        self.mate_edge = [-1] * g.n
        for e in m:
            for v in g.edges[e]:
                self.mate_edge[v] = e

    def components(self, verts: Iterable[int], alive) -> list[list[int]]:
        seen = set()
        out = []
        for s in sorted(verts):
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for w, _ in self.g.adj[v]:
                    if alive[w] and w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            out.append(comp)
        return out

    def min_matching_edge(self, comp: list[int]) -> int:
        return min(self.mate_edge[v] for v in comp)


def _fold_union(parts: list[UpmDerivation]) -> UpmDerivation:
    if not parts:
        return EMPTY
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Union(p, out)
    return out


def upm_sequentialize(g: Graph, m: Iterable[int], trace=None) -> UpmDerivation:
    """Decompose ``(g, m)`` by repeatedly removing matching bridges.

    In each connected component the matching bridge with smallest edge id is
    removed; the pieces touching its first endpoint form the left operand and
    those touching the second the right.  Components at one level are folded
    into right-nested unions ordered by smallest matching edge id.  Raises
    :class:`NotUnique` with an alternating cycle when some component has no
    matching bridge.  ``trace(component, matching_bridges)`` is called at
    every step when given.
    """
    m = frozenset(m)
    _check_perfect(g, m)
    res = _Residual(g, m)
    alive = [True] * g.n

    def component(comp: list[int]) -> UpmDerivation:
        cs = set(comp)
        found = bridge_edges(
            lambda v: ((w, e) for w, e in g.adj[v] if alive[w]), [comp[0]]
        )
        cands = [e for e in found if e in m]
        if trace is not None:
            trace(comp, sorted(cands))
        if not cands:
            raise NotUnique(is_unique_pm(g, m).witness)
        e = min(cands)
        x, x2 = g.edges[e]
        alive[x] = alive[x2] = False
        ua = frozenset(w for w, _ in g.adj[x] if alive[w])
        ub = frozenset(w for w, _ in g.adj[x2] if alive[w])
        rest = cs - {x, x2}
        parts = res.components(rest, alive)
        left = [p for p in parts if ua.intersection(p)]
        right = [p for p in parts if ub.intersection(p)]
        lt = side(left)
        rt = side(right)
        return Join(e, (x, x2), ua, ub, lt, rt)

    def side(parts: list[list[int]]) -> UpmDerivation:
        parts = sorted(parts, key=res.min_matching_edge)
        return _fold_union([component(p) for p in parts])

    with deep_recursion():
        return side(res.components(range(g.n), alive))


def upm_replay(d: UpmDerivation) -> tuple[frozenset, frozenset, frozenset]:
    """Rebuild ``(vertices, edges, matching)`` with edges as endpoint pairs.

    Raises ValueError when a node breaks the grammar (overlapping operands,
    empty union operand, empty attachment set beside a non-empty operand,
    attachment outside its operand).
    """
    verts: set = set()
    edges: set = set()
    match: set = set()

    def walk(node) -> frozenset:
        if isinstance(node, Empty):
            return frozenset()
        if isinstance(node, Union):
            a, b = walk(node.left), walk(node.right)
            if not a or not b:
                raise ValueError("union operand is empty")
            if a & b:
                raise ValueError("union operands overlap")
            return a | b
        if isinstance(node, Join):
            a, b = walk(node.left), walk(node.right)
            x, x2 = node.ends
            if a & b or x == x2 or {x, x2} & (a | b):
                raise ValueError("join operands overlap")
            for side_verts, att in ((a, node.attach_left), (b, node.attach_right)):
                if not att <= side_verts:
                    raise ValueError("attachment outside its operand")
                if side_verts and not att:
                    raise ValueError("empty attachment beside a non-empty operand")
            edge = frozenset((x, x2))
            edges.add(edge)
            match.add(edge)
            edges.update(frozenset((x, w)) for w in node.attach_left)
            edges.update(frozenset((x2, w)) for w in node.attach_right)
            return a | b | {x, x2}
        raise TypeError(f"not a decomposition node: {node!r}")

    with deep_recursion():
        verts = walk(d)
    return frozenset(verts), frozenset(edges), frozenset(match)


def upm_reconstructs(g: Graph, m: Iterable[int], d: UpmDerivation) -> bool:
    """True iff replaying ``d`` yields exactly ``(g, m)``, edge ids included."""
    try:
        verts, edges, match = upm_replay(d)
    except ValueError:
        return False
    if g.multi:
        return False
    if verts != frozenset(range(g.n)):
        return False
    if edges != frozenset(frozenset(e) for e in g.edges):
        return False
    if match != frozenset(frozenset(g.edges[e]) for e in m):
        return False
    stack = [d]
    while stack:
        node = stack.pop()
        if isinstance(node, Join):
            if not 0 <= node.edge < g.m or tuple(g.edges[node.edge]) != tuple(node.ends):
                return False
            stack += [node.left, node.right]
        elif isinstance(node, Union):
            stack += [node.left, node.right]
    return True


def _bipartitions(items: list) -> Iterable[tuple[list, list]]:
    """Splits of ``items`` into two non-empty lists, first item always left."""
    k = len(items)
    for mask in range(1 << (k - 1)):
        left, right = [items[0]], []
        for i in range(1, k):
            (left if mask >> (i - 1) & 1 else right).append(items[i])
        if right:
            yield left, right


def _subsets(items: list) -> Iterable[tuple[list, list]]:
    k = len(items)
    for mask in range(1 << k):
        yield [items[i] for i in range(k) if mask >> i & 1], [items[i] for i in range(k) if not mask >> i & 1]


def enumerate_upm_derivations(g: Graph, m: Iterable[int], cap: int = 10_000) -> list[UpmDerivation]:
    """Every decomposition of ``(g, m)`` into the Empty/Union/Join grammar.

    Union operands are unordered (the operand holding the smallest matching
    edge is put on the left).  Exponential; for small unique instances.
    Raises :class:`CapExceeded` past ``cap`` results at any level.
    """
    m = frozenset(m)
    _check_perfect(g, m)
    res = _Residual(g, m)
    memo: dict[frozenset, list] = {}

    def comps(vs: frozenset) -> list[frozenset]:
        alive = [False] * g.n
        for v in vs:
            alive[v] = True
        parts = [frozenset(p) for p in res.components(vs, alive)]
        return sorted(parts, key=lambda p: res.min_matching_edge(list(p)))

    def push(out: list, item) -> None:
        if len(out) >= cap:
            raise CapExceeded(cap, "decompositions")
        out.append(item)

    def rec(vs: frozenset) -> list:
        if vs in memo:
            return memo[vs]
        out: list = []
        if not vs:
            out.append(EMPTY)
            memo[vs] = out
            return out
        parts = comps(vs)
        if len(parts) > 1:
            for left, right in _bipartitions(parts):
                ls = rec(frozenset().union(*left))
                rs = rec(frozenset().union(*right))
                for a in ls:
                    for b in rs:
                        push(out, Union(a, b))
        for e in sorted(m):
            x, x2 = g.edges[e]
            if x not in vs:
                continue
            rest = vs - {x, x2}
            ua = frozenset(w for w, _ in g.adj[x] if w in rest)
            ub = frozenset(w for w, _ in g.adj[x2] if w in rest)
            sub = comps(rest)
            lparts, rparts, free = [], [], []
            ok = True
            for p in sub:
                ta, tb = bool(ua & p), bool(ub & p)
                if ta and tb:
                    ok = False
                    break
                (lparts if ta else rparts if tb else free).append(p)
            if not ok:
                continue
            for fl, fr in _subsets(free):
                if fl and not lparts or fr and not rparts:
                    continue
                lv = frozenset().union(*(lparts + fl))
                rv = frozenset().union(*(rparts + fr))
                for a in rec(lv):
                    for b in rec(rv):
                        push(out, Join(e, (x, x2), ua, ub, a, b))
        memo[vs] = out
        return out

    with deep_recursion():
        return list(rec(frozenset(range(g.n))))


def upm_to_json(d: UpmDerivation) -> dict:
    if isinstance(d, Empty):
        return {"kind": "empty"}
    if isinstance(d, Union):
        return {"kind": "union", "left": upm_to_json(d.left), "right": upm_to_json(d.right)}
    return {
        "kind": "join",
        "edge": d.edge,
        "ends": list(d.ends),
        "attach_left": sorted(d.attach_left),
        "attach_right": sorted(d.attach_right),
        "left": upm_to_json(d.left),
        "right": upm_to_json(d.right),
    }


def upm_from_json(obj: dict) -> UpmDerivation:
    kind = obj.get("kind")
    if kind == "empty":
        return EMPTY
    if kind == "union":
        return Union(upm_from_json(obj["left"]), upm_from_json(obj["right"]))
    if kind == "join":
        x, x2 = obj["ends"]
        return Join(
            int(obj["edge"]),
            (int(x), int(x2)),
            frozenset(obj["attach_left"]),
            frozenset(obj["attach_right"]),
            upm_from_json(obj["left"]),
            upm_from_json(obj["right"]),
        )
    raise ValueError(f"unknown decomposition node kind {kind!r}")


# ---------------------------------------------------------------------------
# Bridges, blossoms, stems

def is_matching_bridge_by_parity(g: Graph, e: int) -> bool:
    """True iff both sides of the bridge ``e`` have an odd vertex count.

    In a graph with a unique perfect matching this happens exactly when
    ``e`` belongs to the matching.
    """
    u, v = g.edges[e]
    side = _reach(g, u, e)
    if v in side:
        raise NotABridge(f"edge {e} is not a bridge")
    return len(side) % 2 == 1 and len(_reach(g, v, e)) % 2 == 1


def _reach(g: Graph, start: int, banned: int) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w, eid in g.adj[v]:
            if eid != banned and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


@dataclass(frozen=True)
class Blossom:
    """Odd cycle matched internally except at ``root``, whose matching edge
    ``stem`` leaves the cycle."""

    cycle: Cycle
    root: int
    stem: int


def blossoms_with_stem(g: Graph, m: Iterable[int], f: int, cap: int = 10_000) -> list[Blossom]:
    """All blossoms whose stem is the matching edge ``f`` (exhaustive DFS).

    Results are sorted by root, then by canonical cycle.
    """
    m = frozenset(m)
    _check_perfect(g, m)
    if f not in m:
        raise PreconditionViolated(f"edge {f} is not in the matching")
    mate_edge = [-1] * g.n
    for e in m:
        for v in g.edges[e]:
            mate_edge[v] = e
    found: dict[tuple, Blossom] = {}
    for r in sorted(g.edges[f]):
        on = [False] * g.n
        on[r] = True
        on[g.other(f, r)] = True  # the mate of the root cannot be on the cycle

        def extend(verts: list[int], edges: list[int]) -> None:
            y = verts[-1]
            for x, e in g.adj[y]:
                if e in m:
                    continue
                if x == r and len(verts) > 2:
                    c = Cycle(tuple(verts), tuple(edges + [e])).canonical()
                    if c not in found:
                        if len(found) >= cap:
                            raise CapExceeded(cap, "blossoms")
                        found[c] = Blossom(c, r, f)
                    continue
                if on[x]:
                    continue
                xm = mate_edge[x]
                x2 = g.other(xm, x)
                if on[x2]:
                    continue
                on[x] = on[x2] = True
                verts += [x, x2]
                edges += [e, xm]
                extend(verts, edges)
                del verts[-2:], edges[-2:]
                on[x] = on[x2] = False

        for x, e in g.adj[r]:
            if e in m or on[x]:
                continue
            xm = mate_edge[x]
            x2 = g.other(xm, x)
            if on[x2]:
                continue
            on[x] = on[x2] = True
            extend([r, x, x2], [e, xm])
            on[x] = on[x2] = False
    return sorted(found.values(), key=lambda b: (b.root, b.cycle.edges, b.cycle.vertices))


def stem_relation(g: Graph, m: Iterable[int], cap: int = 100_000) -> frozenset:
    """Pairs ``(e, f)`` of matching edges with ``e`` on a blossom of stem ``f``."""
    m = frozenset(m)
    out = set()
    for f in sorted(m):
        for b in blossoms_with_stem(g, m, f, cap):
            for e in b.cycle.edges:
                if e in m:
                    out.add((e, f))
    return frozenset(out)


def transitive_closure(pairs: Iterable[tuple[int, int]], universe: Iterable[int]) -> frozenset:
    """Transitive closure of a relation, by repeated boolean squaring."""
    items = sorted(set(universe))
    idx = {x: i for i, x in enumerate(items)}
    k = len(items)
    if k == 0:
        return frozenset()
    r = np.zeros((k, k), dtype=bool)
    for a, b in pairs:
        r[idx[a], idx[b]] = True
    while True:
        nxt = r | (r @ r)
        if (nxt == r).all():
            break
        r = nxt
    rows, cols = np.nonzero(r)
    return frozenset((items[i], items[j]) for i, j in zip(rows.tolist(), cols.tolist()))


# ---------------------------------------------------------------------------
# Random instances

def random_upm(size: int, rng: np.random.Generator, density: float = 0.4) -> tuple[Graph, frozenset]:
    """Random graph with a unique perfect matching of ``size`` edges.

    Built by ``size`` random joins over a pool of finished pieces: each join
    takes a random subset of the pool for each side and attaches its fresh
    ends to random non-empty vertex subsets (each vertex kept with
    probability ``density``).  Whatever is left in the pool is unioned.
    Vertices and edges are then shuffled; the matching is returned by id.
    """
    pool: list[list[int]] = []
    edges: list[tuple[int, int]] = []
    match: list[tuple[int, int]] = []
    nv = 0

    def attach(verts: list[int]) -> list[int]:
        if not verts:
            return []
        keep = rng.random(len(verts)) < density
        chosen = [v for v, k in zip(verts, keep) if k]
        if not chosen:
            chosen = [verts[int(rng.integers(len(verts)))]]
        return chosen

    for _ in range(size):
        left, right, keep = [], [], []
        for piece in pool:
            r = rng.random()
            (left if r < 0.3 else right if r < 0.6 else keep).append(piece)
        lv = [v for p in left for v in p]
        rv = [v for p in right for v in p]
        x, x2 = nv, nv + 1
        nv += 2
        edges.append((x, x2))
        match.append((x, x2))
        edges += [(x, w) for w in attach(lv)]
        edges += [(x2, w) for w in attach(rv)]
        pool = keep + [lv + rv + [x, x2]]
    perm = rng.permutation(nv)
    order = rng.permutation(len(edges))
    new_edges = []
    for i in order:
        u, v = edges[i]
        a, b = int(perm[u]), int(perm[v])
        new_edges.append((a, b) if rng.random() < 0.5 else (b, a))
    g = Graph(nv, tuple(new_edges))
    mset = {frozenset((int(perm[u]), int(perm[v]))) for u, v in match}
    mm = frozenset(i for i, e in enumerate(g.edges) if frozenset(e) in mset)
    return g, mm
