"""Evaluation of expressions and assertions on finite hosts and step graphons."""
from __future__ import annotations

from fractions import Fraction
from typing import Union

from ..density import density, labelled_density
from ..flags import Flag
from ..graphs import Graph
from .ast import (
    Assertion,
    Expr,
    ExprTypeError,
    assertion_exprs,
    assertion_type,
    atoms,
    evaluate,
    evaluate_assertion,
    expr_type,
)
from .graphon import StepGraphon, graphon_density
from .linear import LinearForm

Oracle = Union[Graph, Flag, StepGraphon]


def _require_unlabelled(t) -> None:
    if t is not None:
        raise ExprTypeError("this oracle only evaluates unlabelled expressions")


def eval_on_host(e: Expr, g: Graph) -> Fraction:
    """Finite proxy semantics: each atom H is replaced by p(H, g)."""
    _require_unlabelled(expr_type(e))
    return evaluate(e, lambda h: density(h, g))


def eval_on_flag_host(e: Expr, g: Flag) -> Fraction:
    t = expr_type(e)
    if t is None and any(True for _ in atoms(e)):
        raise ExprTypeError("unlabelled expression evaluated on a labelled host")
    if t is not None and t != g.tau:
        raise ExprTypeError("expression type differs from the host type")
    return evaluate(e, lambda h: labelled_density(h, g))


def eval_on_graphon(e: Expr, w: StepGraphon) -> Fraction:
    """Exact limit semantics; multiplication is pointwise."""
    _require_unlabelled(expr_type(e))
    return evaluate(e, lambda h: graphon_density(h, w))


def _atom_value(oracle: Oracle):
    if isinstance(oracle, StepGraphon):
        return lambda h: graphon_density(h, oracle)
    if isinstance(oracle, Flag):
        return lambda h: labelled_density(h, oracle)
    return lambda h: density(h, oracle)


def eval_expr(e: Expr, oracle: Oracle) -> Fraction:
    if isinstance(oracle, Flag):
        return eval_on_flag_host(e, oracle)
    if isinstance(oracle, StepGraphon):
        return eval_on_graphon(e, oracle)
    return eval_on_host(e, oracle)


def eval_assertion(a: Assertion, oracle: Oracle) -> bool:
    t = assertion_type(a)
    if isinstance(oracle, Flag):
        if t is None and any(True for x in assertion_exprs(a) for _ in atoms(x)):
            raise ExprTypeError("unlabelled assertion evaluated on a labelled host")
        if t is not None and t != oracle.tau:
            raise ExprTypeError("assertion type differs from the host type")
    else:
        _require_unlabelled(t)
    return evaluate_assertion(a, _atom_value(oracle))


def eval_form(lf: LinearForm, oracle: Oracle) -> Fraction:
    """Value of a linear form: sum of coefficient times basis density."""
    value = _atom_value(oracle)
    return sum((c * value(x) for x, c in lf.items() if c), Fraction(0))
