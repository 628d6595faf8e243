"""Types, tau-labelled graphs (flags), flag enumeration and labelling probabilities."""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .graphs import (
    HARD_CAP,
    Graph,
    GraphFormatError,
    _canonical_relabel,
    _parse_edge_list,
    automorphism_count,
    enumerate_graphs,
    format_edges,
)


def make_type(k: int, edges=()) -> Graph:
    """A type is just a graph on [k]."""
    return Graph(k, frozenset(tuple(e) for e in edges))


def is_embedding(tau: Graph, theta: Sequence[int], g: Graph) -> bool:
    """Whether ``theta`` (``theta[i-1]`` is the image of type vertex i) embeds tau into g."""
    if len(theta) != tau.n:
        raise ValueError("theta must have one image per type vertex")
    if len(set(theta)) != len(theta):
        raise ValueError("theta is not injective")
    for v in theta:
        if not 1 <= v <= g.n:
            raise ValueError(f"theta image {v} outside [1, {g.n}]")
    for i, j in itertools.combinations(range(1, tau.n + 1), 2):
        if tau.has_edge(i, j) != g.has_edge(theta[i - 1], theta[j - 1]):
            return False
    return True


@dataclass(frozen=True)
class Flag:
    g: Graph
    theta: tuple[int, ...]
    tau: Graph

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta", tuple(self.theta))
        if not is_embedding(self.tau, self.theta, self.g):
            raise ValueError("theta is not an embedding of the type")

    @property
    def k(self) -> int:
        return self.tau.n

    @property
    def n(self) -> int:
        return self.g.n

    def sort_key(self) -> tuple:
        return (self.g.num_edges, self.g.sorted_edges(), self.theta)

    def __str__(self) -> str:
        return format_flag(self)


def type_flag(tau: Graph) -> Flag:
    """The flag (tau, id), i.e. the labelled unit."""
    return Flag(tau, tuple(range(1, tau.n + 1)), tau)


# -- canonical forms ------------------------------------------------------------

@lru_cache(maxsize=None)
def _canonical_flag_cached(n: int, edges: frozenset, theta: tuple[int, ...], tau: Graph) -> Flag:
    enc, _ = _canonical_relabel(n, edges, fixed=theta)
    return Flag(Graph(n, frozenset(enc)), tuple(range(1, len(theta) + 1)), tau)


def canonical_flag(f: Flag) -> Flag:
    """Canonical representative of the tau-isomorphism class of ``f``.

    Labelled vertices are moved to 1..k in label order; the remaining vertices
    are canonicalized with the labels held fixed.
    """
    if f.n > HARD_CAP:
        raise ValueError(f"flags support at most {HARD_CAP} vertices")
    return _canonical_flag_cached(f.n, f.g.edges, f.theta, f.tau)


def tau_isomorphic(a: Flag, b: Flag) -> bool:
    if a.tau != b.tau:
        raise ValueError("flags have different types")
    if a.n != b.n or a.g.num_edges != b.g.num_edges:
        return False
    return canonical_flag(a) == canonical_flag(b)


def embeddings(tau: Graph, g: Graph) -> list[tuple[int, ...]]:
    """All injections [k] -> V(g) that embed tau, in lexicographic order."""
    return [th for th in itertools.permutations(g.vertices, tau.n) if is_embedding(tau, th, g)]


@lru_cache(maxsize=None)
def _enumerate_flags(tau: Graph, n: int) -> tuple[Flag, ...]:
    found = set()
    for g in enumerate_graphs(n, cap=HARD_CAP):
        for th in embeddings(tau, g):
            found.add(canonical_flag(Flag(g, th, tau)))
    return tuple(sorted(found, key=Flag.sort_key))


def enumerate_flags(tau: Graph, n: int) -> list[Flag]:
    """One representative per tau-isomorphism class of flags on [n], in basis order."""
    if n < tau.n:
        raise ValueError(f"flag size {n} is smaller than the type size {tau.n}")
    if n > HARD_CAP:
        raise ValueError(f"n={n} exceeds the enumeration cap {HARD_CAP}")
    return list(_enumerate_flags(tau, n))


@lru_cache(maxsize=None)
def _q_cached(f: Flag) -> Fraction:
    target = canonical_flag(f)
    hits = 0
    total = 0
    for th in itertools.permutations(f.g.vertices, f.k):
        total += 1
        if is_embedding(f.tau, th, f.g) and canonical_flag(Flag(f.g, th, f.tau)) == target:
            hits += 1
    return Fraction(hits, total)


def q_coefficient(f: Flag) -> Fraction:
    """Probability that a uniform random injection [k] -> V(f) is an embedding
    giving a flag tau-isomorphic to ``f``."""
    return _q_cached(f)


def unit_q(tau: Graph) -> Fraction:
    """Closed form for q of (tau, id): |Aut(tau)| / k!."""
    return Fraction(automorphism_count(tau), math.factorial(tau.n))


# -- text format ---------------------------------------------------------------

_FLAG_RE = re.compile(r"^f:(\d+):\{([^}]*)\}\|t:(\d+):\{([^}]*)\}\|theta:([\d,]*)$")
_TYPE_RE = re.compile(r"^t:(\d+):\{([^}]*)\}$")


def parse_type(text: str) -> Graph:
    m = _TYPE_RE.match(text.strip())
    if not m:
        raise GraphFormatError(f"not a type literal: {text!r}")
    k = int(m.group(1))
    return Graph(k, frozenset(_parse_edge_list(k, m.group(2), text)))


def format_type(tau: Graph) -> str:
    return f"t:{tau.n}:{format_edges(tau.edges)}"


def parse_flag(text: str) -> Flag:
    """Parse ``f:<n>:{edges}|t:<k>:{type-edges}|theta:<images>``.

    Theta images are comma separated; the comma may be omitted when every
    image is a single digit (``theta:12``).
    """
    m = _FLAG_RE.match(text.strip())
    if not m:
        raise GraphFormatError(f"not a flag literal: {text!r}")
    n, k = int(m.group(1)), int(m.group(3))
    g = Graph(n, frozenset(_parse_edge_list(n, m.group(2), text)))
    tau = Graph(k, frozenset(_parse_edge_list(k, m.group(4), text)))
    raw = m.group(5)
    theta = tuple(int(t) for t in raw.split(",")) if "," in raw else tuple(int(c) for c in raw)
    if len(theta) != k:
        raise GraphFormatError(f"theta has {len(theta)} images, type has {k} vertices")
    try:
        return Flag(g, theta, tau)
    except ValueError as exc:
        raise GraphFormatError(f"{text}: {exc}") from None


def format_flag(f: Flag) -> str:
    sep = "," if f.n >= 10 else ""
    theta = sep.join(str(v) for v in f.theta)
    return f"f:{f.n}:{format_edges(f.g.edges)}|{format_type(f.tau)}|theta:{theta}"
