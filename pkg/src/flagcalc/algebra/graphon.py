"""Step graphons: exactly evaluable limit objects with finitely many parts."""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from ..graphs import Graph, automorphism_count, canonical_form


@dataclass(frozen=True)
class StepGraphon:
    weights: tuple[Fraction, ...]
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        w = tuple(Fraction(x) for x in self.weights)
        m = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "matrix", m)
        if not w:
            raise ValueError("a step graphon needs at least one part")
        if any(x <= 0 for x in w):
            raise ValueError("part weights must be positive")
        if sum(w) != 1:
            raise ValueError(f"part weights sum to {sum(w)}, not 1")
        if len(m) != len(w) or any(len(row) != len(w) for row in m):
            raise ValueError("matrix shape does not match the number of parts")
        for i, j in itertools.product(range(len(w)), repeat=2):
            if m[i][j] != m[j][i]:
                raise ValueError("matrix is not symmetric")
            if not 0 <= m[i][j] <= 1:
                raise ValueError("edge probabilities must lie in [0, 1]")

    @property
    def parts(self) -> int:
        return len(self.weights)

    @classmethod
    def constant(cls, p) -> "StepGraphon":
        return cls((Fraction(1),), ((Fraction(p),),))

    @classmethod
    def from_json(cls, data: dict) -> "StepGraphon":
        return cls(
            tuple(Fraction(x) for x in data["weights"]),
            tuple(tuple(Fraction(x) for x in row) for row in data["matrix"]),
        )

    @classmethod
    def load(cls, path: str | Path) -> "StepGraphon":
        return cls.from_json(json.loads(Path(path).read_text()))

    def to_json(self) -> dict:
        return {
            "weights": [str(x) for x in self.weights],
            "matrix": [[str(x) for x in row] for row in self.matrix],
        }


def complete_bipartite_graphon() -> StepGraphon:
    half = Fraction(1, 2)
    return StepGraphon((half, half), ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))))


@lru_cache(maxsize=None)
def _labelled_density(h: Graph, w: StepGraphon) -> Fraction:
    """Probability that a labelled sample of v(h) points is exactly h."""
    pairs = list(itertools.combinations(range(1, h.n + 1), 2))
    total = Fraction(0)
    for parts in itertools.product(range(w.parts), repeat=h.n):
        term = Fraction(1)
        for p in parts:
            term *= w.weights[p]
        for i, j in pairs:
            x = w.matrix[parts[i - 1]][parts[j - 1]]
            term *= x if h.has_edge(i, j) else 1 - x
            if term == 0:
                break
        total += term
    return total


def graphon_density(h: Graph, w: StepGraphon) -> Fraction:
    """Induced density of ``h`` in the step graphon ``w``."""
    c = canonical_form(h)
    copies = Fraction(math.factorial(c.n), automorphism_count(c))
    return copies * _labelled_density(c, w)
