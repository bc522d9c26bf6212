"""Brute-force reference implementations used as test oracles.

Nothing here imports the algorithms under test; graphs and proof
structures are taken apart into plain tuples first.
"""

from __future__ import annotations

import itertools
from collections import defaultdict


def plain_edges(g) -> list[tuple[int, int]]:
    return [tuple(e) for e in g.edges]


# ---------------------------------------------------------------------------
# matchings

def max_matching_size(n: int, edges) -> int:
    """Exhaustive: branch on the smallest vertex, matched or not."""
    adj = defaultdict(list)
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    memo = {}

    def rec(free: frozenset) -> int:
        if free in memo:
            return memo[free]
        if not free:
            return 0
        v = min(free)
        rest = free - {v}
        best = rec(rest)
        for w in adj[v]:
            if w in rest:
                best = max(best, 1 + rec(rest - {w}))
        memo[free] = best
        return best

    return rec(frozenset(range(n)))


def perfect_matchings(n: int, edges) -> list[frozenset]:
    """All perfect matchings as sets of edge indices."""
    inc = defaultdict(list)
    for i, (u, v) in enumerate(edges):
        inc[u].append((v, i))
        inc[v].append((u, i))
    out = []

    def rec(free: frozenset, chosen: list) -> None:
        if not free:
            out.append(frozenset(chosen))
            return
        v = min(free)
        for w, i in inc[v]:
            if w in free and w != v:
                chosen.append(i)
                rec(free - {v, w}, chosen)
                chosen.pop()

    if n % 2 == 0:
        rec(frozenset(range(n)), [])
    return out


def alternating_path_exists(n: int, edges, m, u: int, v: int, e: int) -> bool:
    """Is there a simple path from exposed ``u`` to exposed ``v``,
    alternating between non-matching and matching edges, that uses ``e``?"""
    m = set(m)
    inc = defaultdict(list)
    for i, (a, b) in enumerate(edges):
        inc[a].append((b, i))
        inc[b].append((a, i))

    def rec(x: int, want_matched: bool, seen: set, used_e: bool) -> bool:
        for y, i in inc[x]:
            if (i in m) != want_matched or y in seen:
                continue
            hit = used_e or i == e
            if y == v:
                if not want_matched and hit:
                    return True
                continue
            seen.add(y)
            if rec(y, not want_matched, seen, hit):
                return True
            seen.discard(y)
        return False

    return rec(u, False, {u}, False)


def bridge_set(n: int, edges) -> set[int]:
    """Edges whose removal increases the number of components."""

    def components(skip: int) -> int:
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        c = n
        for i, (a, b) in enumerate(edges):
            if i == skip:
                continue
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                c -= 1
        return c

    base = components(-1)
    return {i for i in range(len(edges)) if components(i) > base}


# ---------------------------------------------------------------------------
# proof structures

def _raw(ps):
    kinds = {l: k.value for l, k in ps.kinds.items()}
    return kinds, [tuple(e) for e in ps.edges]


def switching_edge_sets(ps):
    """Every switching graph as (vertex list, list of undirected edges)."""
    kinds, edges = _raw(ps)
    pars = sorted(l for l, k in kinds.items() if k == "par")
    into = defaultdict(list)
    for i, (s, t) in enumerate(edges):
        into[t].append(i)
    fixed = [i for i, (s, t) in enumerate(edges) if kinds[t] != "par"]
    for choice in itertools.product(*(into[p] for p in pars)):
        yield sorted(kinds), [edges[i] for i in fixed] + [edges[i] for i in choice]


def _acyclic_and_components(verts, edges) -> tuple[bool, int]:
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    comps = len(verts)
    for s, t in edges:
        a, b = find(s), find(t)
        if a == b:
            return False, -1
        parent[a] = b
        comps -= 1
    return True, comps


def dr_correct(ps, mll: bool = False) -> bool:
    """Every switching graph acyclic (and connected when ``mll``)."""
    for verts, edges in switching_edge_sets(ps):
        ok, comps = _acyclic_and_components(verts, edges)
        if not ok or (mll and comps != 1):
            return False
    return True


def switching_component_counts(ps) -> set[int]:
    out = set()
    for verts, edges in switching_edge_sets(ps):
        ok, comps = _acyclic_and_components(verts, edges)
        if ok:
            out.add(comps)
    return out


def is_sequentializable(ps) -> bool:
    """Direct search for a derivation, independent of any graph translation.

    A set of links is derivable when it splits into two non-empty unions of
    connected pieces that are both derivable (mix), or when a terminal link
    can be removed as the last rule.
    """
    kinds, edges = _raw(ps)
    succ = defaultdict(list)
    preds = defaultdict(list)
    for s, t in edges:
        succ[s].append(t)
        preds[t].append(s)
    memo: dict[frozenset, bool] = {}

    def pieces(links: frozenset) -> list[frozenset]:
        left = set(links)
        out = []
        while left:
            start = left.pop()
            comp, stack = {start}, [start]
            while stack:
                x = stack.pop()
                for y in succ[x] + preds[x]:
                    if y in left:
                        left.discard(y)
                        comp.add(y)
                        stack.append(y)
            out.append(frozenset(comp))
        return out

    def ok(links: frozenset) -> bool:
        if links in memo:
            return memo[links]
        memo[links] = False
        comps = pieces(links)
        if len(comps) > 1:
            res = all(ok(c) for c in comps)
            memo[links] = res
            return res
        for l in links:
            if any(t in links for t in succ[l]):
                continue
            rest = links - {l}
            if kinds[l] == "ax" and not rest:
                memo[links] = True
                return True
            if kinds[l] == "par" and ok(rest):
                memo[links] = True
                return True
            if kinds[l] == "tensor":
                s1, s2 = preds[l]
                parts = pieces(rest)
                c1 = next(p for p in parts if s1 in p)
                c2 = next(p for p in parts if s2 in p)
                if c1 != c2 and all(ok(p) for p in parts):
                    memo[links] = True
                    return True
        return False

    return ok(frozenset(kinds))


def switching_dependency(ps, p: int, q: int) -> bool:
    """Is there a path between the two predecessors of the par ``q`` that
    avoids ``q``, passes through ``p``, repeats no vertex and uses at most
    one premise edge of every par?"""
    kinds, edges = _raw(ps)
    into = defaultdict(list)
    for i, (s, t) in enumerate(edges):
        into[t].append(i)
    pair_of = {}
    for l, k in kinds.items():
        if k == "par":
            for i in into[l]:
                pair_of[i] = l
    s1, s2 = (edges[i][0] for i in into[q])
    if s1 == s2:
        return p == s1
    inc = defaultdict(list)
    for i, (s, t) in enumerate(edges):
        if q in (s, t):
            continue
        inc[s].append((t, i))
        inc[t].append((s, i))

    def rec(x: int, seen: set, pars: set) -> bool:
        if x == s2:
            return p in seen
        for y, i in inc[x]:
            if y in seen:
                continue
            par = pair_of.get(i)
            if par is not None and par in pars:
                continue
            seen.add(y)
            if par is not None:
                pars.add(par)
            if rec(y, seen, pars):
                return True
            seen.discard(y)
            if par is not None:
                pars.discard(par)
        return False

    return rec(s1, {s1}, set())


def reachable(ps, src: int, dst: int) -> bool:
    _, edges = _raw(ps)
    succ = defaultdict(list)
    for s, t in edges:
        succ[s].append(t)
    stack, seen = [src], {src}
    while stack:
        x = stack.pop()
        if x == dst:
            return True
        for y in succ[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return False
