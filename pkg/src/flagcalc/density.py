"""Exact induced densities by exhaustive subset enumeration."""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb

from .flags import Flag, canonical_flag, enumerate_flags
from .graphs import Graph, canonical_form, enumerate_graphs, induced


def _induced_flag(host: Flag, extra) -> Flag:
    """host restricted to theta([k]) plus ``extra``, labels moved to 1..k."""
    order = list(host.theta) + sorted(extra)
    pos = {v: i + 1 for i, v in enumerate(order)}
    edges = frozenset(
        (pos[a], pos[b]) for a, b in host.g.edges if a in pos and b in pos
    )
    return Flag(Graph(len(order), edges), tuple(range(1, host.k + 1)), host.tau)


@lru_cache(maxsize=None)
def subgraph_profile(g: Graph, m: int) -> Counter:
    """Multiset of canonical induced subgraphs of ``g`` on ``m`` vertices."""
    return Counter(canonical_form(induced(g, u)) for u in itertools.combinations(g.vertices, m))


@lru_cache(maxsize=None)
def flag_profile(host: Flag, m: int) -> Counter:
    """Multiset of canonical induced sub-flags of ``host`` on ``m`` vertices."""
    free = [v for v in host.g.vertices if v not in host.theta]
    return Counter(
        canonical_flag(_induced_flag(host, u))
        for u in itertools.combinations(free, m - host.k)
    )


def density(h: Graph, g: Graph) -> Fraction:
    """p(h, g): probability a random v(h)-subset of V(g) induces a copy of h."""
    if h.n > g.n:
        return Fraction(0)
    hits = subgraph_profile(g, h.n)[canonical_form(h)]
    return Fraction(hits, comb(g.n, h.n))


def _check_types(*flags: Flag) -> None:
    if len({f.tau for f in flags}) != 1:
        raise ValueError("flags have different types")


def labelled_density(h: Flag, g: Flag) -> Fraction:
    """p_tau(h, g): random (v(h)-k)-subsets of the unlabelled vertices of g."""
    _check_types(h, g)
    if h.n > g.n:
        return Fraction(0)
    hits = flag_profile(g, h.n)[canonical_flag(h)]
    return Fraction(hits, comb(g.n - g.k, h.n - h.k))


@lru_cache(maxsize=None)
def split_profile(host: Graph, m1: int, m2: int) -> tuple[Counter, int]:
    """Counts of (canonical G[U1], canonical G[U2]) over ordered disjoint pairs."""
    counts: Counter = Counter()
    total = 0
    for u1 in itertools.combinations(host.vertices, m1):
        c1 = canonical_form(induced(host, u1))
        rest = [v for v in host.vertices if v not in u1]
        for u2 in itertools.combinations(rest, m2):
            counts[c1, canonical_form(induced(host, u2))] += 1
            total += 1
    return counts, total


@lru_cache(maxsize=None)
def flag_split_profile(host: Flag, m1: int, m2: int) -> tuple[Counter, int]:
    free = [v for v in host.g.vertices if v not in host.theta]
    k = host.k
    counts: Counter = Counter()
    total = 0
    for u1 in itertools.combinations(free, m1 - k):
        c1 = canonical_flag(_induced_flag(host, u1))
        rest = [v for v in free if v not in u1]
        for u2 in itertools.combinations(rest, m2 - k):
            counts[c1, canonical_flag(_induced_flag(host, u2))] += 1
            total += 1
    return counts, total


def split_density(h1: Graph, h2: Graph, host: Graph) -> Fraction:
    """Probability that random disjoint U1, U2 induce h1 and h2 respectively."""
    if h1.n + h2.n > host.n:
        raise ValueError("v(h1) + v(h2) exceeds v(host)")
    counts, total = split_profile(host, h1.n, h2.n)
    return Fraction(counts[canonical_form(h1), canonical_form(h2)], total)


def labelled_split_density(h1: Flag, h2: Flag, host: Flag) -> Fraction:
    """Labelled analogue of :func:`split_density`; subsets avoid the labelled vertices."""
    _check_types(h1, h2, host)
    if h1.n + h2.n - host.k > host.n:
        raise ValueError("v(h1) + v(h2) - k exceeds v(host)")
    counts, total = flag_split_profile(host, h1.n, h2.n)
    return Fraction(counts[canonical_flag(h1), canonical_flag(h2)], total)


def chain_decompose(h: Graph, n: int) -> dict[Graph, Fraction]:
    """Coefficients of ``h`` over the level-n basis: basis graph H -> p(h, H)."""
    if h.n > n:
        raise ValueError(f"cannot lift a {h.n}-vertex graph to level {n}")
    return {big: density(h, big) for big in enumerate_graphs(n, cap=8)}


def chain_decompose_flag(h: Flag, n: int) -> dict[Flag, Fraction]:
    """Labelled chain rule: basis flag F -> p_tau(h, F) at level n."""
    if h.n > n:
        raise ValueError(f"cannot lift a {h.n}-vertex flag to level {n}")
    return {big: labelled_density(h, big) for big in enumerate_flags(h.tau, n)}
