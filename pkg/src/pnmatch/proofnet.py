"""Proof structures of multiplicative linear logic with Mix, their
correctness graphs and the switching-based correctness test.

A proof structure is a directed acyclic multigraph whose vertices (links)
are labeled ``ax``, ``tensor`` or ``par``.  Links carry arbitrary integer
ids; directed edges are identified by their position in ``edges``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional

import numpy as np

from .errors import (
    CyclicStructure,
    DegreeViolation,
    EmptyStructure,
    InvalidStructure,
    NotCorrect,
    TooManyPairs,
)
from .graph import Cycle, Graph

__all__ = [
    "Kind",
    "ProofStructure",
    "WithConclusions",
    "validate",
    "add_conclusions",
    "strip_conclusions",
    "PairedGraph",
    "correctness_graph",
    "SwitchingGraph",
    "switching_graphs",
    "DrResult",
    "dr_check",
    "switching_cycles",
    "mix_count",
    "random_net",
    "rewire",
    "to_json",
    "from_json",
    "to_dot",
]

DEFAULT_MAX_PAIRS = 24


class Kind(str, Enum):
    AX = "ax"
    TENSOR = "tensor"
    PAR = "par"

    @property
    def symbol(self) -> str:
        return {"ax": "ax", "tensor": "⊗", "par": "⅋"}[self.value]

    @property
    def max_out(self) -> int:
        return 2 if self is Kind.AX else 1


@dataclass(frozen=True, eq=False)
class ProofStructure:
    """Validated proof structure.

    ``kinds`` maps link id to :class:`Kind`; ``edges[i] = (source, target)``.
    Construction raises a subclass of :class:`InvalidStructure` when a
    degree clause fails, the graph is empty, or it has a directed cycle.
    """

    kinds: Mapping[int, Kind]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        kinds = {int(k): Kind(v) for k, v in dict(self.kinds).items()}
        object.__setattr__(self, "kinds", dict(sorted(kinds.items())))
        object.__setattr__(self, "edges", tuple((int(s), int(t)) for s, t in self.edges))
        self._check()

    def _check(self) -> None:
        if not self.kinds:
            raise EmptyStructure("a proof structure needs at least one link")
        indeg = {l: 0 for l in self.kinds}
        outdeg = {l: 0 for l in self.kinds}
        for i, (s, t) in enumerate(self.edges):
            if s not in self.kinds or t not in self.kinds:
                raise InvalidStructure(f"edge {i} = {(s, t)} refers to an unknown link")
            outdeg[s] += 1
            indeg[t] += 1
        for l, k in self.kinds.items():
            if k is Kind.AX:
                if indeg[l] != 0:
                    raise DegreeViolation(l, "ax indegree", "0", indeg[l])
                if outdeg[l] > 2:
                    raise DegreeViolation(l, "ax outdegree", "<= 2", outdeg[l])
            else:
                if indeg[l] != 2:
                    raise DegreeViolation(l, f"{k.value} indegree", "2", indeg[l])
                if outdeg[l] > 1:
                    raise DegreeViolation(l, f"{k.value} outdegree", "<= 1", outdeg[l])
        order = self._topological_order()
        if order is None:
            raise CyclicStructure("the directed graph has a cycle")

    def _topological_order(self) -> list[int] | None:
        indeg = {l: 0 for l in self.kinds}
        for _, t in self.edges:
            indeg[t] += 1
        out = {l: [] for l in self.kinds}
        for s, t in self.edges:
            out[s].append(t)
        queue = deque(l for l in self.kinds if indeg[l] == 0)
        order = []
        while queue:
            l = queue.popleft()
            order.append(l)
            for t in out[l]:
                indeg[t] -= 1
                if indeg[t] == 0:
                    queue.append(t)
        return order if len(order) == len(self.kinds) else None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ProofStructure)
            and self.kinds == other.kinds
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((tuple(self.kinds.items()), self.edges))

    def __repr__(self) -> str:
        ks = ", ".join(f"{l}:{k.value}" for l, k in self.kinds.items())
        return f"ProofStructure({{{ks}}}, {list(self.edges)})"

    @property
    def links(self) -> list[int]:
        return list(self.kinds)

    def __len__(self) -> int:
        return len(self.kinds)

    @cached_property
    def in_edges(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {l: [] for l in self.kinds}
        for i, (_, t) in enumerate(self.edges):
            out[t].append(i)
        return {l: tuple(v) for l, v in out.items()}

    @cached_property
    def out_edges(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {l: [] for l in self.kinds}
        for i, (s, _) in enumerate(self.edges):
            out[s].append(i)
        return {l: tuple(v) for l, v in out.items()}

    def predecessors(self, l: int) -> tuple[int, ...]:
        """Sources of the in-edges of ``l``, in edge-id order (may repeat)."""
        return tuple(self.edges[e][0] for e in self.in_edges[l])

    def successor(self, l: int) -> int | None:
        outs = self.out_edges[l]
        if self.kinds[l] is Kind.AX or not outs:
            return None
        return self.edges[outs[0]][1]

    @property
    def terminal_links(self) -> list[int]:
        return [l for l in self.kinds if not self.out_edges[l]]

    @property
    def pars(self) -> list[int]:
        return [l for l, k in self.kinds.items() if k is Kind.PAR]

    def relabel(self, l: int, kind: Kind) -> "ProofStructure":
        kinds = dict(self.kinds)
        kinds[l] = Kind(kind)
        return ProofStructure(kinds, self.edges)

    def restrict(self, links: Iterable[int]) -> "ProofStructure":
        """Induced sub-structure on ``links`` (edge ids are renumbered)."""
        keep = set(links)
        return ProofStructure(
            {l: k for l, k in self.kinds.items() if l in keep},
            tuple((s, t) for s, t in self.edges if s in keep and t in keep),
        )


def validate(raw) -> ProofStructure:
    """Parse and validate a raw structure: a :class:`ProofStructure`, a JSON
    object, or a ``(kinds, edges)`` pair."""
    if isinstance(raw, ProofStructure):
        return ProofStructure(raw.kinds, raw.edges)
    if isinstance(raw, Mapping):
        return from_json(raw)
    kinds, edges = raw
    return ProofStructure(kinds, edges)


# ---------------------------------------------------------------------------
# Conclusions

@dataclass(frozen=True)
class WithConclusions:
    """A proof structure completed with unlabeled conclusion vertices.

    ``edges`` extends ``ps.edges`` with one edge per conclusion, in the order
    of ``conclusions``.  Every labeled link then has its full outdegree.
    """

    ps: ProofStructure
    conclusions: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def vertices(self) -> list[int]:
        return list(self.ps.kinds) + list(self.conclusions)

    def kind(self, v: int) -> Kind | None:
        return self.ps.kinds.get(v)


def add_conclusions(ps: ProofStructure) -> WithConclusions:
    """Complete ``ps`` with conclusion vertices, ids following the largest
    link id, created in link-id order."""
    next_id = max(ps.kinds) + 1
    concl, edges = [], list(ps.edges)
    for l, k in ps.kinds.items():
        for _ in range(k.max_out - len(ps.out_edges[l])):
            concl.append(next_id)
            edges.append((l, next_id))
            next_id += 1
    return WithConclusions(ps, tuple(concl), tuple(edges))


def strip_conclusions(wc: WithConclusions) -> ProofStructure:
    c = set(wc.conclusions)
    for v in c:
        if sum(1 for _, t in wc.edges if t == v) != 1 or any(s == v for s, _ in wc.edges):
            raise InvalidStructure(f"conclusion {v} must have indegree 1 and outdegree 0")
    for l, k in wc.ps.kinds.items():
        if sum(1 for s, _ in wc.edges if s == l) != k.max_out:
            raise InvalidStructure(f"link {l} does not have its full outdegree")
    return ProofStructure(wc.ps.kinds, tuple(e for e in wc.edges if e[1] not in c))


# ---------------------------------------------------------------------------
# Correctness graphs and switchings

@dataclass(frozen=True)
class PairedGraph:
    """Undirected multigraph with disjoint pairs of edges sharing a vertex.

    ``pivots[i]`` is the vertex shared by ``pairs[i]``.  When built from a
    proof structure, vertex ``i`` is ``vertex_links[i]`` and edge ids are the
    directed edge ids.
    """

    graph: Graph
    pairs: tuple[tuple[int, int], ...]
    pivots: tuple[int, ...]
    vertex_links: tuple[int, ...] = ()

    def __post_init__(self):
        seen = set()
        for (a, b), v in zip(self.pairs, self.pivots):
            if a == b or a in seen or b in seen:
                raise ValueError("pairs must consist of distinct, disjoint edges")
            seen.update((a, b))
            if v not in self.graph.edges[a] or v not in self.graph.edges[b]:
                raise ValueError(f"pair {(a, b)} does not meet at vertex {v}")

    @cached_property
    def vertex_of(self) -> dict[int, int]:
        return {l: i for i, l in enumerate(self.vertex_links)}

    @cached_property
    def pair_of(self) -> dict[int, int]:
        out = {}
        for i, (a, b) in enumerate(self.pairs):
            out[a] = out[b] = i
        return out


def correctness_graph(ps: ProofStructure | WithConclusions) -> PairedGraph:
    """Undirected copy of ``ps`` with the two in-edges of every ``par``
    paired at that ``par``."""
    if isinstance(ps, WithConclusions):
        verts, edges, base = ps.vertices, ps.edges, ps.ps
    else:
        verts, edges, base = ps.links, ps.edges, ps
    idx = {l: i for i, l in enumerate(verts)}
    g = Graph(len(verts), tuple((idx[s], idx[t]) for s, t in edges), multi=True)
    pairs, pivots = [], []
    for l in base.pars:
        a, b = base.in_edges[l]
        pairs.append((a, b))
        pivots.append(idx[l])
    return PairedGraph(g, tuple(pairs), tuple(pivots), tuple(verts))


@dataclass(frozen=True)
class SwitchingGraph:
    switching: tuple[int, ...]  # chosen edge of each pair, in pair order
    edge_ids: tuple[int, ...]  # host edge id of each edge of ``graph``
    graph: Graph


def _switching_subgraph(pg: PairedGraph, choice: tuple[int, ...]) -> SwitchingGraph:
    dropped = set()
    for (a, b), c in zip(pg.pairs, choice):
        dropped.add(b if c == a else a)
    keep = tuple(i for i in range(pg.graph.m) if i not in dropped)
    return SwitchingGraph(choice, keep, pg.graph.edge_subgraph(keep))


def switching_graphs(pg: PairedGraph, max_pairs: int = DEFAULT_MAX_PAIRS) -> Iterator[SwitchingGraph]:
    """All ``2**len(pairs)`` switching graphs; the first edge of the first
    pair varies slowest."""
    if len(pg.pairs) > max_pairs:
        raise TooManyPairs(f"{len(pg.pairs)} pairs exceed the bound {max_pairs}")
    for choice in itertools.product(*pg.pairs):
        yield _switching_subgraph(pg, choice)


def sample_switching(pg: PairedGraph, rng: np.random.Generator) -> SwitchingGraph:
    bits = rng.integers(0, 2, size=len(pg.pairs))
    return _switching_subgraph(pg, tuple(p[int(b)] for p, b in zip(pg.pairs, bits)))


@dataclass(frozen=True)
class DrResult:
    """Verdict of :func:`dr_check`; truthy iff correct.

    On failure ``switching`` is an offending switching (chosen edge per
    pair, unresolved pairs omitted) and ``witness`` is a cycle of its
    switching graph, or None when the failure is disconnection.
    """

    correct: bool
    witness: Optional[Cycle] = None
    switching: tuple[int, ...] = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.correct


class _RollbackDSU:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.history: list[int] = []

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]
        self.history.append(b)
        return True

    def rollback(self, mark: int) -> None:
        while len(self.history) > mark:
            b = self.history.pop()
            a = self.parent[b]
            self.size[a] -= self.size[b]
            self.parent[b] = b


def _forest_path(g: Graph, present: list[int], u: int, v: int) -> tuple[list[int], list[int]]:
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in present:
        a, b = g.edges[e]
        adj.setdefault(a, []).append((b, e))
        adj.setdefault(b, []).append((a, e))
    prev = {u: (None, None)}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y, e in adj.get(x, ()):
            if y not in prev:
                prev[y] = (x, e)
                queue.append(y)
    verts, edges = [v], []
    while verts[-1] != u:
        x, e = prev[verts[-1]]
        verts.append(x)
        edges.append(e)
    return verts[::-1], edges[::-1]


def _normalize_mode(mode: str) -> str:
    mode = mode.lower()
    if mode in ("mix",):
        return "mix"
    if mode in ("mll", "nomix", "no-mix"):
        return "mll"
    raise ValueError(f"unknown correctness mode {mode!r}")


def dr_check(ps: ProofStructure, mode: str = "mix", max_pairs: int = DEFAULT_MAX_PAIRS) -> DrResult:
    """Switching-graph correctness test by exhaustive search.

    ``mode="mix"`` requires every switching graph to be acyclic;
    ``mode="mll"`` additionally requires it to be connected.  Switchings
    are explored depth first with a union-find that is rolled back between
    branches, so a cycle is reported as soon as a partial switching closes
    one.
    """
    mode = _normalize_mode(mode)
    pg = correctness_graph(ps)
    if len(pg.pairs) > max_pairs:
        raise TooManyPairs(f"{len(pg.pairs)} pairs exceed the bound {max_pairs}")
    g = pg.graph
    paired = set(pg.pair_of)
    dsu = _RollbackDSU(g.n)
    present: list[int] = []

    def add(e: int, choice: list[int]) -> DrResult | None:
        u, v = g.edges[e]
        if dsu.union(u, v):
            present.append(e)
            return None
        verts, path = _forest_path(g, present, v, u)
        cyc = Cycle(tuple(verts), tuple(path + [e])).canonical()
        return DrResult(False, cyc, tuple(choice), "cycle")

    for e in range(g.m):
        if e not in paired:
            bad = add(e, [])
            if bad is not None:
                return bad

    choice: list[int] = []

    def rec(i: int) -> DrResult | None:
        if i == len(pg.pairs):
            if mode == "mll" and g.n - len(present) != 1:
                return DrResult(False, None, tuple(choice), "disconnected")
            return None
        for e in pg.pairs[i]:
            mark, plen = len(dsu.history), len(present)
            choice.append(e)
            bad = add(e, choice)
            if bad is None:
                bad = rec(i + 1)
            if bad is not None:
                return bad
            dsu.rollback(mark)
            del present[plen:]
            choice.pop()
        return None

    bad = rec(0)
    return DrResult(True) if bad is None else bad


def switching_cycles(ps: ProofStructure, cap: int = 100_000) -> list[Cycle]:
    """Every cycle of the correctness graph using at most one edge of each
    pair, brute force.  Canonical, sorted."""
    pg = correctness_graph(ps)
    g = pg.graph
    pair_of = pg.pair_of
    found: set[Cycle] = set()
    on = [False] * g.n

    def extend(s: int, verts: list[int], edges: list[int], used_pairs: set) -> None:
        y = verts[-1]
        for x, e in g.adj[y]:
            if edges and e == edges[-1]:
                continue
            p = pair_of.get(e)
            if p is not None and p in used_pairs:
                continue
            if x == s and edges:
                c = Cycle(tuple(verts), tuple(edges + [e])).canonical()
                if c not in found:
                    if len(found) >= cap:
                        from .errors import CapExceeded

                        raise CapExceeded(cap, "switching cycles")
                    found.add(c)
                continue
            if x < s or on[x]:
                continue
            on[x] = True
            if p is not None:
                used_pairs.add(p)
            verts.append(x)
            edges.append(e)
            extend(s, verts, edges, used_pairs)
            verts.pop()
            edges.pop()
            if p is not None:
                used_pairs.discard(p)
            on[x] = False

    for s in range(g.n):
        on[s] = True
        extend(s, [s], [], set())
        on[s] = False
    return sorted(found, key=lambda c: (len(c.edges), c.edges))


def mix_count(ps: ProofStructure) -> int:
    """Number of connected components shared by all switching graphs of a
    correct structure: vertices minus (edges minus pairs).  Raises
    :class:`NotCorrect`, carrying a switching cycle, on incorrect input."""
    from .matching import is_unique_pm
    from .translations import alternating_to_switching, graphification

    mg = graphification(ps)
    res = is_unique_pm(mg.graph, mg.matching)
    if not res:
        raise NotCorrect(alternating_to_switching(mg, res.witness))
    return len(ps.kinds) - (len(ps.edges) - len(ps.pars))


# ---------------------------------------------------------------------------
# Random instances

DEFAULT_WEIGHTS = {"ax": 0.3, "tensor": 0.25, "par": 0.3, "mix": 0.15}


def random_net(
    size: int,
    rng: np.random.Generator,
    weights: Mapping[str, float] | None = None,
    max_pars: int | None = None,
) -> ProofStructure:
    """Random correct structure with exactly ``size`` links.

    Rules are replayed on a pool of finished nets: ``ax`` adds a fresh
    axiom net, ``tensor`` joins links with free outputs from two different
    nets, ``par`` joins two free outputs of one net, ``mix`` merges two
    nets.  The pool is returned as one structure with shuffled link ids and
    edge order.
    """
    if size < 1:
        raise ValueError("size must be at least 1")
    w = dict(DEFAULT_WEIGHTS)
    if weights:
        w.update(weights)
    rules = ["ax", "tensor", "par", "mix"]
    kinds: list[Kind] = []
    edges: list[tuple[int, int]] = []
    free: list[int] = []  # remaining output slots per link
    pool: list[list[int]] = []  # link lists
    n_pars = 0

    def open_links(net: list[int]) -> list[int]:
        return [l for l in net if free[l] > 0]

    def new_link(kind: Kind) -> int:
        kinds.append(kind)
        free.append(kind.max_out)
        return len(kinds) - 1

    while len(kinds) < size:
        probs = np.array([w[r] for r in rules], dtype=float)
        if max_pars is not None and n_pars >= max_pars:
            probs[2] = 0.0
        rule = rules[int(rng.choice(4, p=probs / probs.sum()))]
        openable = [i for i, net in enumerate(pool) if open_links(net)]
        if rule == "tensor" and len(openable) >= 2:
            i, j = (int(x) for x in rng.choice(openable, size=2, replace=False))
            u = int(rng.choice(open_links(pool[i])))
            v = int(rng.choice(open_links(pool[j])))
            t = new_link(Kind.TENSOR)
            edges += [(u, t), (v, t)]
            free[u] -= 1
            free[v] -= 1
            merged = pool[i] + pool[j] + [t]
            pool = [p for k, p in enumerate(pool) if k not in (i, j)] + [merged]
        elif rule == "par" and any(sum(free[l] for l in net) >= 2 for net in pool):
            cands = [k for k, net in enumerate(pool) if sum(free[l] for l in net) >= 2]
            i = int(rng.choice(cands))
            slots = [l for l in pool[i] for _ in range(free[l])]
            a, b = (int(x) for x in rng.choice(len(slots), size=2, replace=False))
            u, v = slots[a], slots[b]
            p = new_link(Kind.PAR)
            n_pars += 1
            edges += [(u, p), (v, p)]
            free[u] -= 1
            free[v] -= 1
            pool[i] = pool[i] + [p]
        elif rule == "mix" and len(pool) >= 2:
            i, j = (int(x) for x in rng.choice(len(pool), size=2, replace=False))
            merged = pool[i] + pool[j]
            pool = [p for k, p in enumerate(pool) if k not in (i, j)] + [merged]
        else:
            pool.append([new_link(Kind.AX)])
    perm = rng.permutation(len(kinds))
    order = rng.permutation(len(edges))
    new_kinds = {int(perm[l]): k for l, k in enumerate(kinds)}
    new_edges = tuple((int(perm[edges[i][0]]), int(perm[edges[i][1]])) for i in order)
    return ProofStructure(new_kinds, new_edges)


def rewire(ps: ProofStructure, rng: np.random.Generator, moves: int = 1, tries: int = 200) -> ProofStructure:
    """Randomly move edge sources, keeping a valid (acyclic, degree-correct)
    structure.  The result may or may not be correct."""
    current = ps
    for _ in range(moves):
        for _ in range(tries):
            cand = _rewire_once(current, rng)
            if cand is not None:
                current = cand
                break
    return current


def _rewire_once(ps: ProofStructure, rng: np.random.Generator) -> ProofStructure | None:
    if not ps.edges:
        return None
    edges = list(ps.edges)
    i = int(rng.integers(len(edges)))
    if rng.random() < 0.5 and len(edges) > 1:
        j = int(rng.integers(len(edges)))
        if i == j:
            return None
        (si, ti), (sj, tj) = edges[i], edges[j]
        edges[i], edges[j] = (sj, ti), (si, tj)
    else:
        spare = [l for l, k in ps.kinds.items() if len(ps.out_edges[l]) < k.max_out]
        if not spare:
            return None
        s = int(rng.choice(spare))
        edges[i] = (s, edges[i][1])
    try:
        return ProofStructure(ps.kinds, tuple(edges))
    except InvalidStructure:
        return None


# ---------------------------------------------------------------------------
# Serialization

def to_json(ps: ProofStructure) -> dict:
    return {
        "links": [{"id": l, "kind": k.value} for l, k in ps.kinds.items()],
        "edges": [list(e) for e in ps.edges],
    }


def from_json(obj: Mapping) -> ProofStructure:
    try:
        kinds = {}
        for item in obj["links"]:
            l = int(item["id"])
            if l in kinds:
                raise InvalidStructure(f"duplicate link id {l}")
            kinds[l] = Kind(item["kind"])
        edges = tuple((int(s), int(t)) for s, t in obj["edges"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidStructure):
            raise
        raise InvalidStructure(f"malformed proof structure: {exc}") from None
    return ProofStructure(kinds, edges)


def to_dot(ps: ProofStructure, name: str = "proof_structure") -> str:
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for l, k in ps.kinds.items():
        lines.append(f'  l{l} [label="{k.symbol}"];')
    for i, (s, t) in enumerate(ps.edges):
        lines.append(f'  l{s} -> l{t} [label="{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
