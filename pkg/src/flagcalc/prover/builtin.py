"""Hand-written certificates for the two worked examples: Mantel and Goodman.

Both use the single one-vertex type, the flags "labelled vertex plus a
non-neighbour" and "labelled vertex plus a neighbour", and the rank-one
matrix [[1, -1], [-1, 1]], whose downward image at level 3 is
I3 - 1/3 E3 - 1/3 P3 + K3 >= 0.
"""
from __future__ import annotations

from fractions import Fraction

from ..algebra.parser import parse_assertion
from ..density import chain_decompose
from ..flags import Flag, make_type
from ..graphs import Graph, complete, format_graph
from .certificate import Assumption, Block, Certificate, Verdict, expand_block, verify_certificate

TAU1 = make_type(1)
LABELLED_NON_EDGE = Flag(Graph(2), (1,), TAU1)
LABELLED_EDGE = Flag(Graph(2, frozenset({(1, 2)})), (1,), TAU1)
KEY_Q = [[Fraction(1), Fraction(-1)], [Fraction(-1), Fraction(1)]]

I3 = Graph(3)
E3 = Graph(3, frozenset({(2, 3)}))
P3 = Graph(3, frozenset({(1, 3), (2, 3)}))
K3 = complete(3)

MANTEL_TARGET = "g:3:{12,13,23} = 0 => g:2:{12} <= 1/2"
GOODMAN_TARGET = "g:3:{12,13,23} + g:3:{} >= 1/4"


def key_block(lam: Fraction) -> Block:
    return Block(TAU1, [LABELLED_NON_EDGE, LABELLED_EDGE], KEY_Q, lam)


def mantel_certificate(bound: Fraction = Fraction(1, 2)) -> Certificate:
    return Certificate(
        target=parse_assertion(f"g:3:{{12,13,23}} = 0 => g:2:{{12}} <= {bound}"),
        level=3,
        blocks=[key_block(Fraction(1, 2))],
        slack={E3: Fraction(1, 3)},
        assumptions=[Assumption(K3, {K3: Fraction(1)})],
    )


def goodman_certificate(bound: Fraction = Fraction(1, 4)) -> Certificate:
    return Certificate(
        target=parse_assertion(f"g:3:{{12,13,23}} + g:3:{{}} >= {bound}"),
        level=3,
        blocks=[key_block(Fraction(3, 4))],
    )


def _term(c: Fraction, name: str) -> str:
    return f"{c}*{name}"


_NAMES = {I3: "I3", E3: "E3", P3: "P3", K3: "K3"}


def _line(coeffs: dict[Graph, Fraction]) -> str:
    return " + ".join(_term(coeffs.get(g, Fraction(0)), n) for g, n in _NAMES.items())


def _key_inequality() -> dict[Graph, Fraction]:
    return expand_block(TAU1, [LABELLED_NON_EDGE, LABELLED_EDGE], KEY_Q, 3).as_dict()


def prove_mantel() -> Verdict:
    cert = mantel_certificate()
    verdict = verify_certificate(cert)
    k2 = chain_decompose(complete(2), 3)
    key = _key_inequality()
    step = {g: k2[g] + Fraction(1, 2) * key[g] for g in _NAMES}
    erased = dict(step)
    erased[K3] -= 1
    padded = {g: Fraction(1, 2) for g in _NAMES}
    lines = [
        f"target: {MANTEL_TARGET}",
        f"key inequality (downward image of the square): {_line(key)} >= 0",
        f"K2 = {_line(k2)}    [decomposition]",
        f"   <= {_line(k2)} + 1/2*({_line(key)})    [add inequality]",
        f"    = {_line(step)}    [ordered algebra]",
        f"    = {_line(erased)}    [assumption erasure: K3 = {format_graph(K3)} = 0]",
        f"   <= {_line(padded)}    [non-negativity padding]",
        "    = 1/2*(I3 + E3 + P3 + K3)    [ordered algebra]",
        "    = 1/2    [sum-to-one]",
        "verifier:",
    ] + ["  " + t for t in verdict.trace]
    return Verdict(verdict.accepted, verdict.residual, lines, verdict.reason)


def prove_goodman() -> Verdict:
    cert = goodman_certificate()
    verdict = verify_certificate(cert)
    lhs = {I3: Fraction(1), E3: Fraction(0), P3: Fraction(0), K3: Fraction(1)}
    key = _key_inequality()
    step = {g: lhs[g] - Fraction(3, 4) * key[g] for g in _NAMES}
    lines = [
        f"target: {GOODMAN_TARGET}",
        f"key inequality (downward image of the square): {_line(key)} >= 0",
        f"I3 + K3 = {_line(lhs)}    [decomposition]",
        f"   >= {_line(lhs)} - 3/4*({_line(key)})    [add inequality]",
        f"    = {_line(step)}    [ordered algebra]",
        "    = 1/4*(I3 + E3 + P3 + K3)    [ordered algebra]",
        "    = 1/4    [sum-to-one]",
        "verifier:",
    ] + ["  " + t for t in verdict.trace]
    return Verdict(verdict.accepted, verdict.residual, lines, verdict.reason)
