from .ast import (
    Add,
    And,
    Assertion,
    Atom,
    Const,
    Expr,
    ExprTypeError,
    FalseA,
    Geq,
    Implies,
    Mul,
    Not,
    One,
    Or,
    Scale,
    TrueA,
    Zero,
    desugar,
    eq,
    format_assertion,
    format_expr,
    gt,
    leq,
    lt,
    neg,
    sub,
    sum_exprs,
)
from .graphon import StepGraphon, complete_bipartite_graphon, graphon_density
from .linear import LevelError, LinearForm, basis, minimal_level, to_linear_form
from .parser import ParseError, parse_assertion, parse_expr
from .semantics import (
    eval_assertion,
    eval_expr,
    eval_form,
    eval_on_flag_host,
    eval_on_graphon,
    eval_on_host,
)
