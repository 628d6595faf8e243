"""Density expressions and assertions.

Core expression nodes are ``Atom``, ``Zero``, ``One``, ``Const``, ``Scale``,
``Add`` and ``Mul``.  Core assertion nodes are ``FalseA``, ``TrueA``, ``Geq``,
``Not`` and ``Or``; ``And`` and ``Implies`` are kept as nodes so that certificate
targets keep their shape, and expose :meth:`desugar` for the core form.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from ..flags import Flag, format_flag
from ..graphs import Graph, format_graph


class ExprTypeError(TypeError):
    """Unlabelled and labelled atoms (or two different types) mixed in one tree."""


# -- expressions ----------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    obj: Union[Graph, Flag]


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Scale:
    r: Fraction
    e: "Expr"


@dataclass(frozen=True)
class Add:
    a: "Expr"
    b: "Expr"


@dataclass(frozen=True)
class Mul:
    a: "Expr"
    b: "Expr"


Expr = Union[Atom, Zero, One, Const, Scale, Add, Mul]


def neg(e: Expr) -> Expr:
    return Scale(Fraction(-1), e)


def sub(a: Expr, b: Expr) -> Expr:
    return Add(a, neg(b))


def sum_exprs(items) -> Expr:
    items = list(items)
    if not items:
        return Zero()
    out = items[0]
    for e in items[1:]:
        out = Add(out, e)
    return out


def atoms(e: Expr) -> Iterator[Union[Graph, Flag]]:
    if isinstance(e, Atom):
        yield e.obj
    elif isinstance(e, Scale):
        yield from atoms(e.e)
    elif isinstance(e, (Add, Mul)):
        yield from atoms(e.a)
        yield from atoms(e.b)


def expr_type(e: Expr) -> Graph | None:
    """The shared type of all labelled atoms, or None for an unlabelled tree."""
    labelled = set()
    plain = False
    for a in atoms(e):
        if isinstance(a, Flag):
            labelled.add(a.tau)
        else:
            plain = True
    if len(labelled) > 1:
        raise ExprTypeError("expression mixes flags of different types")
    if labelled and plain:
        raise ExprTypeError("expression mixes labelled and unlabelled atoms")
    return next(iter(labelled)) if labelled else None


def is_constant(e: Expr) -> bool:
    return next(atoms(e), None) is None


def has_mul(e: Expr) -> bool:
    if isinstance(e, Mul):
        return True
    if isinstance(e, Scale):
        return has_mul(e.e)
    if isinstance(e, Add):
        return has_mul(e.a) or has_mul(e.b)
    return False


def has_one(e: Expr) -> bool:
    if isinstance(e, (One, Const)):
        return True
    if isinstance(e, Scale):
        return has_one(e.e)
    if isinstance(e, (Add, Mul)):
        return has_one(e.a) or has_one(e.b)
    return False


def evaluate(e: Expr, value) -> Fraction:
    """Structural evaluation with ``value(atom)`` supplying atom densities."""
    if isinstance(e, Atom):
        return Fraction(value(e.obj))
    if isinstance(e, Zero):
        return Fraction(0)
    if isinstance(e, One):
        return Fraction(1)
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Scale):
        return e.r * evaluate(e.e, value)
    if isinstance(e, Add):
        return evaluate(e.a, value) + evaluate(e.b, value)
    if isinstance(e, Mul):
        return evaluate(e.a, value) * evaluate(e.b, value)
    raise TypeError(f"not an expression: {e!r}")


def _frac(r: Fraction) -> str:
    return str(r)


def format_expr(e: Expr) -> str:
    if isinstance(e, Atom):
        return format_flag(e.obj) if isinstance(e.obj, Flag) else format_graph(e.obj)
    if isinstance(e, Zero):
        return "0"
    if isinstance(e, One):
        return "1"
    if isinstance(e, Const):
        return _frac(e.value) if e.value >= 0 else f"-({_frac(-e.value)})"
    if isinstance(e, Scale):
        if e.r < 0:
            inner = format_expr(e.e) if e.r == -1 else f"{_frac(-e.r)} * ({format_expr(e.e)})"
            return f"-({inner})"
        return f"{_frac(e.r)} * ({format_expr(e.e)})"
    if isinstance(e, Add):
        return f"{format_expr(e.a)} + {format_expr(e.b)}"
    if isinstance(e, Mul):
        return f"({format_expr(e.a)}) * ({format_expr(e.b)})"
    raise TypeError(f"not an expression: {e!r}")


# -- assertions -------------------------------------------------------------------

@dataclass(frozen=True)
class FalseA:
    pass


@dataclass(frozen=True)
class TrueA:
    pass


@dataclass(frozen=True)
class Geq:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Not:
    a: "Assertion"


@dataclass(frozen=True)
class Or:
    a: "Assertion"
    b: "Assertion"


@dataclass(frozen=True)
class And:
    a: "Assertion"
    b: "Assertion"

    def desugar(self) -> "Assertion":
        return Not(Or(Not(self.a), Not(self.b)))


@dataclass(frozen=True)
class Implies:
    a: "Assertion"
    b: "Assertion"

    def desugar(self) -> "Assertion":
        return Or(Not(self.a), self.b)


Assertion = Union[FalseA, TrueA, Geq, Not, Or, And, Implies]


def eq(a: Expr, b: Expr) -> Assertion:
    return And(Geq(a, b), Geq(b, a))


def leq(a: Expr, b: Expr) -> Assertion:
    return Geq(b, a)


def lt(a: Expr, b: Expr) -> Assertion:
    return Not(Geq(a, b))


def gt(a: Expr, b: Expr) -> Assertion:
    return Not(Geq(b, a))


def desugar(a: Assertion) -> Assertion:
    """Rewrite into the core connectives false/true/>=/not/or."""
    if isinstance(a, (And, Implies)):
        return desugar(a.desugar())
    if isinstance(a, Not):
        return Not(desugar(a.a))
    if isinstance(a, Or):
        return Or(desugar(a.a), desugar(a.b))
    return a


def assertion_exprs(a: Assertion) -> Iterator[Expr]:
    if isinstance(a, Geq):
        yield a.left
        yield a.right
    elif isinstance(a, Not):
        yield from assertion_exprs(a.a)
    elif isinstance(a, (Or, And, Implies)):
        yield from assertion_exprs(a.a)
        yield from assertion_exprs(a.b)


def assertion_type(a: Assertion) -> Graph | None:
    return expr_type(sum_exprs(assertion_exprs(a)))


def evaluate_assertion(a: Assertion, value) -> bool:
    a = desugar(a)
    return _eval_core(a, value)


def _eval_core(a: Assertion, value) -> bool:
    if isinstance(a, FalseA):
        return False
    if isinstance(a, TrueA):
        return True
    if isinstance(a, Geq):
        return evaluate(a.left, value) >= evaluate(a.right, value)
    if isinstance(a, Not):
        return not _eval_core(a.a, value)
    if isinstance(a, Or):
        return _eval_core(a.a, value) or _eval_core(a.b, value)
    raise TypeError(f"not a core assertion: {a!r}")


def format_assertion(a: Assertion) -> str:
    if isinstance(a, FalseA):
        return "false"
    if isinstance(a, TrueA):
        return "true"
    if isinstance(a, Geq):
        return f"{format_expr(a.left)} >= {format_expr(a.right)}"
    if isinstance(a, Not):
        return f"!({format_assertion(a.a)})"
    if isinstance(a, Or):
        return f"({format_assertion(a.a)}) | ({format_assertion(a.b)})"
    if isinstance(a, And):
        return f"({format_assertion(a.a)}) & ({format_assertion(a.b)})"
    if isinstance(a, Implies):
        return f"({format_assertion(a.a)}) => ({format_assertion(a.b)})"
    raise TypeError(f"not an assertion: {a!r}")
