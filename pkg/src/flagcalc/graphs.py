"""Finite simple graphs on [n], canonical forms and isomorphism-class enumeration.

Vertices are always 1..n.  Canonical forms come from an individualization /
refinement search: every leaf of the search tree is a discrete, isomorphism
invariant ordering of the vertices, and the canonical graph is the smallest
relabelled edge list over all leaves.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

DEFAULT_CAP = 7
HARD_CAP = 8

Edge = tuple[int, int]


class GraphFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge {e} out of range for n={self.n}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        pairs = [tuple(e) for e in edges]
        seen = set()
        for i, j in pairs:
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        return cls(n, frozenset(pairs))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def adjacency(self) -> dict[int, frozenset[int]]:
        nbrs: dict[int, set[int]] = {v: set() for v in self.vertices}
        for i, j in self.edges:
            nbrs[i].add(j)
            nbrs[j].add(i)
        return {v: frozenset(s) for v, s in nbrs.items()}

    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def sort_key(self) -> tuple:
        """Deterministic basis order: edge count, then edge list."""
        return (self.num_edges, self.sorted_edges())

    def relabel(self, perm: dict[int, int] | Sequence[int]) -> "Graph":
        """Apply a vertex map.  A sequence is read as ``perm[v-1] = image of v``."""
        if not isinstance(perm, dict):
            perm = {v: perm[v - 1] for v in self.vertices}
        return Graph(self.n, frozenset((perm[i], perm[j]) for i, j in self.edges))

    def __str__(self) -> str:
        return format_graph(self)


# -- text format ------------------------------------------------------------

_GRAPH_RE = re.compile(r"^g:(\d+):\{([^}]*)\}$")


def _parse_edge_list(n: int, body: str, what: str) -> list[Edge]:
    body = body.strip()
    if not body:
        return []
    edges = []
    for tok in body.split(","):
        tok = tok.strip()
        if n >= 10:
            raise GraphFormatError(f"{what}: edge tokens are ambiguous for n >= 10")
        if len(tok) != 2 or not tok.isdigit():
            raise GraphFormatError(f"{what}: bad edge token {tok!r}")
        i, j = int(tok[0]), int(tok[1])
        if i == j:
            raise GraphFormatError(f"{what}: loop {tok}")
        if not (1 <= i <= n and 1 <= j <= n):
            raise GraphFormatError(f"{what}: vertex out of range in {tok}")
        if i > j:
            raise GraphFormatError(f"{what}: edge {tok} must be written with i<j")
        edges.append((i, j))
    if len(set(edges)) != len(edges):
        raise GraphFormatError(f"{what}: duplicate edge")
    return edges


def parse_graph(text: str) -> Graph:
    """Parse ``g:<n>:{12,23}``.  Rejects loops, duplicates and out-of-range vertices."""
    m = _GRAPH_RE.match(text.strip())
    if not m:
        raise GraphFormatError(f"not a graph literal: {text!r}")
    n = int(m.group(1))
    return Graph(n, frozenset(_parse_edge_list(n, m.group(2), text)))


def format_edges(edges: Iterable[Edge]) -> str:
    return "{" + ",".join(f"{i}{j}" for i, j in sorted(edges)) + "}"


def format_graph(g: Graph) -> str:
    return f"g:{g.n}:{format_edges(g.edges)}"


# -- named graphs -------------------------------------------------------------

def complete(n: int) -> Graph:
    return Graph(n, frozenset(itertools.combinations(range(1, n + 1), 2)))


def edgeless(n: int) -> Graph:
    return Graph(n, frozenset())


def path(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(1, n)))


EMPTY = Graph(0)


# -- basic operations -------------------------------------------------------

def induced(g: Graph, u: Iterable[int]) -> Graph:
    """Induced subgraph on ``u``, relabelled order-preservingly to 1..|u|."""
    verts = sorted(set(u))
    for v in verts:
        if not 1 <= v <= g.n:
            raise ValueError(f"vertex {v} not in [1, {g.n}]")
    pos = {v: i + 1 for i, v in enumerate(verts)}
    return Graph(
        len(verts),
        frozenset((pos[a], pos[b]) for a, b in g.edges if a in pos and b in pos),
    )


def complement(g: Graph) -> Graph:
    all_pairs = itertools.combinations(g.vertices, 2)
    return Graph(g.n, frozenset(p for p in all_pairs if p not in g.edges))


def automorphism_count(g: Graph) -> int:
    return sum(1 for _ in _automorphisms(g))


def _automorphisms(g: Graph):
    # Search over label-consistent partial maps; cheap for n <= 8.
    adj = g.adjacency()
    deg = {v: len(adj[v]) for v in g.vertices}
    order = list(g.vertices)
    image: dict[int, int] = {}
    used: set[int] = set()

    def extend(idx: int):
        if idx == len(order):
            yield dict(image)
            return
        v = order[idx]
        for w in g.vertices:
            if w in used or deg[w] != deg[v]:
                continue
            if all((u in adj[v]) == (image[u] in adj[w]) for u in order[:idx]):
                image[v] = w
                used.add(w)
                yield from extend(idx + 1)
                used.discard(w)
                del image[v]

    yield from extend(0)


# -- canonical labelling ------------------------------------------------------

def _refine(n: int, adj: Sequence[int], cells: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Equitable refinement of an ordered partition.

    ``adj`` holds neighbour bitmasks indexed by 0-based vertex.  Cells are split
    by neighbour counts into every current cell; the split order depends only on
    those counts, so the result is isomorphism invariant.
    """
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        new_cells: list[tuple[int, ...]] = []
        changed = False
        for c in cells:
            if len(c) == 1:
                new_cells.append(c)
                continue
            sig = {v: tuple(bin(adj[v] & m).count("1") for m in masks) for v in c}
            keys = sorted(set(sig.values()))
            if len(keys) > 1:
                changed = True
            for k in keys:
                new_cells.append(tuple(v for v in c if sig[v] == k))
        cells = new_cells
        if not changed:
            return cells


def _canonical_relabel(n: int, edges: Iterable[Edge], fixed: Sequence[int] = ()) -> tuple[tuple[Edge, ...], dict[int, int]]:
    """Minimal relabelled edge list over all refinement-search leaves.

    ``fixed`` vertices are individualized up front, in order, and receive the
    new labels 1..len(fixed).  Returns the canonical edge list and the map
    old vertex -> new vertex for one leaf achieving it.
    """
    adj = [0] * n
    edge_list = list(edges)
    for i, j in edge_list:
        adj[i - 1] |= 1 << (j - 1)
        adj[j - 1] |= 1 << (i - 1)
    fixed0 = [v - 1 for v in fixed]
    rest = tuple(v for v in range(n) if v not in set(fixed0))
    cells = [(v,) for v in fixed0] + ([rest] if rest else [])
    cells = _refine(n, adj, cells)

    best: tuple[tuple[Edge, ...], dict[int, int]] | None = None

    def leaf(order: list[int]):
        nonlocal best
        pos = {v + 1: i + 1 for i, v in enumerate(order)}
        enc = tuple(sorted((min(pos[a], pos[b]), max(pos[a], pos[b])) for a, b in edge_list))
        if best is None or enc < best[0]:
            best = (enc, pos)

    def search(cells: list[tuple[int, ...]]):
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            leaf([c[0] for c in cells])
            return
        c = cells[target]
        for v in c:
            split = cells[:target] + [(v,), tuple(w for w in c if w != v)] + cells[target + 1:]
            search(_refine(n, adj, split))

    search(cells)
    assert best is not None
    return best


@lru_cache(maxsize=None)
def _canonical_cached(n: int, edges: frozenset[Edge]) -> Graph:
    enc, _ = _canonical_relabel(n, edges)
    return Graph(n, frozenset(enc))


def canonical_form(g: Graph) -> Graph:
    """Canonical representative of the isomorphism class of ``g``.

    Idempotent, and equal for two graphs exactly when they are isomorphic.
    """
    if g.n > HARD_CAP:
        raise ValueError(f"canonical_form supports at most {HARD_CAP} vertices")
    return _canonical_cached(g.n, g.edges)


def canonical_labelling(g: Graph) -> dict[int, int]:
    """A vertex map taking ``g`` onto ``canonical_form(g)``."""
    _, pos = _canonical_relabel(g.n, g.edges)
    return pos


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    return canonical_form(g) == canonical_form(h)


# -- enumeration --------------------------------------------------------------

@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (EMPTY,)
    found: set[Graph] = set()
    for base in _enumerate(n - 1):
        for r in range(n):
            for nbrs in itertools.combinations(range(1, n), r):
                g = Graph(n, base.edges | frozenset((v, n) for v in nbrs))
                found.add(canonical_form(g))
    return tuple(sorted(found, key=Graph.sort_key))


def enumerate_graphs(n: int, cap: int = DEFAULT_CAP) -> list[Graph]:
    """One canonical representative per isomorphism class on [n], in basis order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > min(cap, HARD_CAP):
        raise ValueError(f"n={n} exceeds the enumeration cap {min(cap, HARD_CAP)}")
    return list(_enumerate(n))
