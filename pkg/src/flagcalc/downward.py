"""The downward adjoint pair: averaging labelled forms down to unlabelled ones.

``alpha_d`` sends a flag to its underlying graph weighted by the labelling
probability q.  Its partner ``gamma_d`` sends a graph to the uniform measure
over its embeddings of the type, scaled by the probability that a random
injection is an embedding; it is never materialized, only integrated against
a flag by :func:`gamma_density`.
"""
from __future__ import annotations

from fractions import Fraction

from .algebra.linear import LinearForm
from .density import density, labelled_density
from .flags import Flag, embeddings, q_coefficient, unit_q
from .graphs import Graph, canonical_form

WeightedGraphMeasure = dict  # canonical Graph -> Fraction >= 0, finite support


def alpha_d(f: Flag) -> WeightedGraphMeasure:
    return {canonical_form(f.g): q_coefficient(f)}


def alpha_dagger(lf: LinearForm) -> LinearForm:
    """Linear extension of alpha_d to a labelled linear form, same level."""
    if lf.tau is None:
        raise ValueError("alpha_dagger needs a labelled linear form")
    out: dict[Graph, Fraction] = {}
    for f, c in lf.items():
        if not c:
            continue
        for h, w in alpha_d(f).items():
            out[h] = out.get(h, Fraction(0)) + c * w
    return LinearForm.from_mapping(lf.level, None, out)


def gamma_density(h: Flag, g: Graph) -> Fraction:
    """Integral of p_tau(h, .) against gamma_d(g)."""
    tau = h.tau
    structures = embeddings(tau, g)
    if not structures:
        return Fraction(0)
    mass = unit_q(tau) * density(tau, g)
    avg = sum((labelled_density(h, Flag(g, th, tau)) for th in structures), Fraction(0))
    return mass * avg / len(structures)


def check_adjointness(h: Flag, g: Graph) -> bool:
    return q_coefficient(h) * density(h.g, g) == gamma_density(h, g)


class DownwardPair:
    """The (alpha_d, gamma_d) adjoint pair for a fixed type."""

    def __init__(self, tau: Graph):
        self.tau = tau

    def alpha(self, f: Flag) -> WeightedGraphMeasure:
        self._check(f)
        return alpha_d(f)

    def gamma_density(self, h: Flag, g: Graph) -> Fraction:
        self._check(h)
        return gamma_density(h, g)

    def transfer(self, lf: LinearForm) -> LinearForm:
        if lf.tau != self.tau:
            raise ValueError("linear form has a different type")
        return alpha_dagger(lf)

    def is_adjoint_at(self, h: Flag, g: Graph) -> bool:
        self._check(h)
        return check_adjointness(h, g)

    def _check(self, f: Flag) -> None:
        if f.tau != self.tau:
            raise ValueError("flag has a different type")
