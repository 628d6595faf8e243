"""Sum-of-squares certificates and their exact verification.

A certificate for ``(F1 = 0 & ...) => E <= c`` at level n claims the identity

    c*1 - E = sum_b lam_b * down(sum_ij Q_ij F_i F_j) + sum_H a_H H - sum mu_{F,H} H + residual

over the level-n basis, where 1 is the all-ones vector (sum-to-one), every
Q is PSD, lam and a are non-negative, mu only touches basis graphs containing
a forbidden F, and the residual has no negative coefficient.  ``>=`` targets
are mirrored.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from ..algebra.ast import (
    And,
    Assertion,
    Atom,
    Expr,
    Geq,
    Implies,
    Mul,
    Scale,
    TrueA,
    Zero,
    evaluate,
    format_assertion,
    is_constant,
    sub,
    sum_exprs,
)
from ..algebra.linear import LevelError, LinearForm, minimal_level, to_linear_form
from ..algebra.parser import parse_assertion
from ..density import density
from ..downward import alpha_dagger
from ..flags import Flag, format_flag, format_type, parse_flag, parse_type
from ..graphs import Graph, canonical_form, format_graph, parse_graph
from .psd import as_matrix, is_symmetric, psd_check_exact


class CertificateError(ValueError):
    """Malformed certificate or unsupported target shape."""


# -- target shape -------------------------------------------------------------------

@dataclass(frozen=True)
class Target:
    expr: Expr
    bound: Fraction
    sense: str  # "<=" or ">="
    forbidden: tuple[Graph, ...] = ()


def _zero_equation(a: Assertion) -> Graph | None:
    """Recognize the desugared ``F = 0`` pattern for a single graph F."""
    if not (isinstance(a, And) and isinstance(a.a, Geq) and isinstance(a.b, Geq)):
        return None
    x, y = a.a, a.b
    if (
        isinstance(x.left, Atom)
        and isinstance(x.right, Zero)
        and isinstance(y.left, Zero)
        and y.right == x.left
        and isinstance(x.left.obj, Graph)
    ):
        return x.left.obj
    return None


def _conjuncts(a: Assertion) -> list[Graph]:
    if isinstance(a, TrueA):
        return []
    f = _zero_equation(a)
    if f is not None:
        return [f]
    if isinstance(a, And):
        return _conjuncts(a.a) + _conjuncts(a.b)
    raise CertificateError(f"unsupported assumption: {format_assertion(a)}")


def _const_value(e: Expr) -> Fraction:
    return evaluate(e, lambda h: 0)


def analyze_target(a: Assertion) -> Target:
    """Split a target into (E, c, sense, forbidden graphs).

    Supported: ``E <= c``, ``E >= c`` and ``(F1 = 0 & ... ) => E <= c / >= c``
    with constant c.  Sides that are both non-constant are moved left: ``L >= R``
    becomes ``L - R >= 0``.
    """
    forbidden: list[Graph] = []
    if isinstance(a, Implies):
        forbidden = _conjuncts(a.a)
        a = a.b
    if not isinstance(a, Geq):
        raise CertificateError(f"unsupported target: {format_assertion(a)}")
    left, right = a.left, a.right
    if is_constant(right) and not is_constant(left):
        return Target(left, _const_value(right), ">=", tuple(forbidden))
    if is_constant(left) and not is_constant(right):
        return Target(right, _const_value(left), "<=", tuple(forbidden))
    return Target(sub(left, right), Fraction(0), ">=", tuple(forbidden))


# -- data model -------------------------------------------------------------------

@dataclass
class Block:
    tau: Graph
    flags: list[Flag]
    Q: list[list[Fraction]]
    lam: Fraction = Fraction(1)


@dataclass
class Assumption:
    forbidden: Graph
    mu: dict[Graph, Fraction]


@dataclass
class Certificate:
    target: Assertion
    level: int
    blocks: list[Block] = field(default_factory=list)
    slack: dict[Graph, Fraction] = field(default_factory=dict)
    assumptions: list[Assumption] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "target": format_assertion(self.target),
            "level": self.level,
            "blocks": [
                {
                    "type": format_type(b.tau),
                    "flags": [format_flag(f) for f in b.flags],
                    "Q": [[str(x) for x in row] for row in b.Q],
                    "lambda": str(b.lam),
                }
                for b in self.blocks
            ],
            "slack": {format_graph(g): str(c) for g, c in self.slack.items()},
            "assumptions": [
                {
                    "forbidden": format_graph(a.forbidden),
                    "mu": {format_graph(g): str(c) for g, c in a.mu.items()},
                }
                for a in self.assumptions
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        try:
            return cls(
                target=parse_assertion(data["target"]),
                level=int(data["level"]),
                blocks=[
                    Block(
                        tau=parse_type(b["type"]),
                        flags=[parse_flag(f) for f in b["flags"]],
                        Q=[[Fraction(x) for x in row] for row in b["Q"]],
                        lam=Fraction(b.get("lambda", "1")),
                    )
                    for b in data.get("blocks", [])
                ],
                slack={parse_graph(g): Fraction(c) for g, c in data.get("slack", {}).items()},
                assumptions=[
                    Assumption(
                        parse_graph(a["forbidden"]),
                        {parse_graph(g): Fraction(c) for g, c in a.get("mu", {}).items()},
                    )
                    for a in data.get("assumptions", [])
                ],
            )
        except (KeyError, TypeError) as exc:
            raise CertificateError(f"malformed certificate: {exc}") from None

    @classmethod
    def load(cls, path: str | Path) -> "Certificate":
        return cls.from_json(json.loads(Path(path).read_text()))


@dataclass
class Verdict:
    accepted: bool
    residual: LinearForm | None
    trace: list[str] = field(default_factory=list)
    reason: str = ""


# -- verification ---------------------------------------------------------------------

def block_square(tau: Graph, flags: Sequence[Flag], Q) -> Expr:
    """The labelled expression sum_ij Q_ij F_i F_j."""
    q = as_matrix(Q)
    terms = []
    for i, fi in enumerate(flags):
        for j, fj in enumerate(flags):
            if q[i][j]:
                terms.append(Scale(q[i][j], Mul(Atom(fi), Atom(fj))))
    return sum_exprs(terms)


def expand_block(tau: Graph, flags: Sequence[Flag], Q, level: int) -> LinearForm:
    """Downward image of the labelled quadratic form at ``level``.

    PSD-ness of Q is the caller's obligation; :func:`verify_certificate` checks it.
    """
    for f in flags:
        if f.tau != tau:
            raise ValueError("flag type does not match the block type")
    q = as_matrix(Q)
    if len(q) != len(flags) or not is_symmetric(q):
        raise ValueError("Q must be a symmetric matrix matching the flag list")
    sizes = [f.n for f in flags]
    needed = max((a + b - tau.n for a in sizes for b in sizes), default=tau.n)
    if level < needed:
        raise LevelError(level, needed)
    expr = block_square(tau, flags, q)
    labelled = to_linear_form(expr, level, tau=tau)
    return alpha_dagger(labelled)


def _fmt_form(lf: LinearForm) -> str:
    parts = [f"{c}*{format_graph(g)}" for g, c in lf.items()]
    return " + ".join(parts) if parts else "0"


def verify_certificate(cert: Certificate) -> Verdict:
    trace: list[str] = []

    def reject(reason: str, residual: LinearForm | None = None) -> Verdict:
        trace.append(f"rejected: {reason}")
        return Verdict(False, residual, trace, reason)

    target = analyze_target(cert.target)
    n = cert.level
    try:
        minimal = minimal_level(target.expr)
    except TypeError as exc:
        raise CertificateError(str(exc)) from None
    if n < minimal:
        return reject(f"level {n} is below the target's minimal level {minimal}")

    ones = LinearForm.ones(n)
    lhs = to_linear_form(target.expr, n)
    trace.append(f"flatten: E = {_fmt_form(lhs)}")
    if target.sense == "<=":
        residual = target.bound * ones - lhs
    else:
        residual = lhs - target.bound * ones
    trace.append(f"sum-to-one: {target.bound} = {target.bound} * (sum of level-{n} basis)")

    for idx, b in enumerate(cert.blocks):
        if b.lam < 0:
            return reject(f"block {idx}: negative multiplier {b.lam}")
        q = as_matrix(b.Q)
        if len(q) != len(b.flags) or any(len(r) != len(q) for r in q):
            raise CertificateError(f"block {idx}: Q shape does not match the flag list")
        if not is_symmetric(q):
            return reject(f"block {idx}: Q is not symmetric")
        if not psd_check_exact(q):
            return reject(f"block {idx}: Q is not positive semidefinite")
        try:
            down = expand_block(b.tau, b.flags, q, n)
        except LevelError as exc:
            return reject(f"block {idx}: {exc}")
        trace.append(f"downward: block {idx} (type {format_type(b.tau)}) gives {_fmt_form(down)} >= 0")
        residual = residual - b.lam * down
        trace.append(f"add inequality: subtract {b.lam} * block {idx}")

    forbidden = {canonical_form(f) for f in target.forbidden}
    for a in cert.assumptions:
        f = canonical_form(a.forbidden)
        if f not in forbidden:
            return reject(f"assumption {format_graph(a.forbidden)} is not among the target's hypotheses")
        for h, mu in a.mu.items():
            if h.n != n:
                return reject(f"assumption multiplier on {format_graph(h)} does not match level {n}")
            if density(f, h) == 0:
                return reject(f"assumption multiplier on {format_graph(h)}, which contains no {format_graph(f)}")
            residual = residual + mu * residual.unit(h)
            trace.append(f"assumption erasure: {format_graph(h)} += {mu} since {format_graph(f)} = 0")

    for h, a_h in cert.slack.items():
        if a_h < 0:
            return reject(f"negative slack {a_h} on {format_graph(h)}")
        if h.n != n:
            return reject(f"slack on {format_graph(h)} does not match level {n}")
        residual = residual - a_h * residual.unit(h)
        trace.append(f"non-negativity padding: {a_h} * {format_graph(h)} >= 0")

    trace.append(f"residual: {_fmt_form(residual)}")
    negative = [(g, c) for g, c in residual.items() if c < 0]
    if negative:
        g, c = negative[0]
        return reject(f"negative residual coefficient {c} on {format_graph(g)}", residual)
    trace.append(f"accepted: {format_assertion(cert.target)}")
    return Verdict(True, residual, trace)
