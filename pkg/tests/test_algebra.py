import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import GRAPHON_SUITE, E3, I2, I3, K2, K3, LE2, LE3_END, LE3_ISO, LI2, LI3, LK3, LP3_END, LP3_MID, P3, TAU1
from flagcalc.algebra import (
    Add,
    And,
    Atom,
    Const,
    FalseA,
    Geq,
    Implies,
    LevelError,
    LinearForm,
    Mul,
    Not,
    One,
    Or,
    ParseError,
    Scale,
    StepGraphon,
    TrueA,
    Zero,
    complete_bipartite_graphon,
    desugar,
    eq,
    eval_assertion,
    eval_expr,
    eval_form,
    eval_on_graphon,
    eval_on_host,
    format_assertion,
    format_expr,
    graphon_density,
    gt,
    leq,
    lt,
    minimal_level,
    parse_assertion,
    parse_expr,
    sum_exprs,
    to_linear_form,
)
from flagcalc.algebra.ast import ExprTypeError
from flagcalc.flags import Flag
from flagcalc.graphs import canonical_form, enumerate_graphs
from oracles import brute_density, brute_split

A_K2, A_I2, A_K3, A_I3 = Atom(K2), Atom(I2), Atom(K3), Atom(I3)


# -- parsing ------------------------------------------------------------------

def test_parse_scaled_sum():
    assert parse_expr("1/2 * g:2:{12} + g:2:{}") == Add(Scale(Fraction(1, 2), A_K2), A_I2)


def test_parse_equation_desugars_to_two_inequalities():
    zero = parse_assertion("g:3:{12,13,23} = 0")
    assert zero == And(Geq(A_K3, Zero()), Geq(Zero(), A_K3))


def test_parse_negation_is_scaling():
    assert parse_expr("-(g:2:{12})") == Scale(Fraction(-1), A_K2)


def test_parse_constants_and_products():
    assert parse_expr("1") == One()
    assert parse_expr("0") == Zero()
    assert parse_expr("3/4") == Const(Fraction(3, 4))
    assert parse_expr("g:2:{12} * g:2:{}") == Mul(A_K2, A_I2)
    assert parse_expr("2 * g:2:{12} * g:2:{}") == Scale(Fraction(2), Mul(A_K2, A_I2))


def test_parse_connective_precedence():
    a = parse_assertion("g:2:{12} >= 0 & ! g:2:{} >= 1 | false => true")
    left = Or(And(Geq(A_K2, Zero()), Not(Geq(A_I2, One()))), FalseA())
    assert a == Implies(left, TrueA())
    assert parse_assertion("true => false => true") == Implies(TrueA(), Implies(FalseA(), TrueA()))


def test_parse_comparison_sugar():
    assert parse_assertion("g:2:{12} <= 1/2") == leq(A_K2, Const(Fraction(1, 2)))
    assert parse_assertion("g:2:{12} < 1") == lt(A_K2, One())
    assert parse_assertion("g:2:{12} > 0") == gt(A_K2, Zero())
    assert parse_assertion("(g:2:{12} >= 0)") == Geq(A_K2, Zero())


@pytest.mark.parametrize(
    "bad",
    ["0.5 * g:2:{12}", "g:2:{12} +", "g:2:{11}", "g:2:{12} >= ", "g:2:{12} ^ 2", "(g:2:{12}"],
)
def test_parse_errors(bad):
    with pytest.raises((ParseError, ValueError)):
        parse_assertion(bad) if ">=" in bad else parse_expr(bad)


def test_mixed_types_rejected():
    with pytest.raises(ExprTypeError):
        parse_expr("g:2:{12} + f:2:{12}|t:1:{}|theta:1")
    with pytest.raises(ExprTypeError):
        parse_expr("f:2:{12}|t:1:{}|theta:1 * f:2:{12}|t:2:{12}|theta:1,2")


def test_format_roundtrip():
    for text in ["1/2 * g:2:{12} + g:2:{}", "g:2:{12} * (g:2:{} + -1 * g:1:{})"]:
        e = parse_expr(text)
        assert parse_expr(format_expr(e)) == e
    a = parse_assertion("g:3:{12,13,23} = 0 => g:2:{12} <= 1/2")
    assert parse_assertion(format_assertion(a)) == a


# -- evaluation ---------------------------------------------------------------

def test_eval_on_host_examples():
    assert eval_on_host(A_K2, P3) == Fraction(2, 3)
    assert eval_on_host(One(), P3) == 1
    assert eval_on_host(Zero(), P3) == 0
    everything = sum_exprs(Atom(g) for g in enumerate_graphs(3))
    for g in enumerate_graphs(5):
        assert eval_on_host(everything, g) == 1


def test_eval_on_host_rejects_labelled():
    with pytest.raises(ExprTypeError):
        eval_on_host(Atom(LE2), P3)


def test_graphon_examples():
    half = StepGraphon.constant("1/2")
    assert eval_on_graphon(Add(A_K3, A_I3), half) == Fraction(1, 4)
    assert graphon_density(K3, half) == Fraction(1, 8)
    bip = complete_bipartite_graphon()
    assert eval_on_graphon(A_K2, bip) == Fraction(1, 2)
    assert eval_on_graphon(A_K3, bip) == 0
    assert eval_on_graphon(One(), bip) == 1


def test_graphon_validation():
    with pytest.raises(ValueError):
        StepGraphon(("1/2", "1/3"), (("0", "1"), ("1", "0")))
    with pytest.raises(ValueError):
        StepGraphon(("1/2", "1/2"), (("0", "1"), ("0", "0")))
    with pytest.raises(ValueError):
        StepGraphon.constant("3/2")


def test_graphon_json_roundtrip(tmp_path, graphon_suite):
    for w in graphon_suite:
        path = tmp_path / "w.json"
        path.write_text(json.dumps(w.to_json()))
        assert StepGraphon.load(path) == w


def _brute_graphon_density(h, w):
    """Sum over injective placements of h-vertices into parts, without the automorphism shortcut."""
    total = Fraction(0)
    pairs = list(itertools.combinations(range(1, h.n + 1), 2))
    for mask in range(1 << len(pairs)):
        edges = {pairs[i] for i in range(len(pairs)) if mask >> i & 1}
        if brute_density(h.n, h.edges, h.n, edges) != 1:
            continue
        for parts in itertools.product(range(w.parts), repeat=h.n):
            term = Fraction(1)
            for p in parts:
                term *= w.weights[p]
            for i, j in pairs:
                x = w.matrix[parts[i - 1]][parts[j - 1]]
                term *= x if (i, j) in edges else 1 - x
            total += term
    return total


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_graphon_density_matches_labelled_copy_sum(n, graphon_suite):
    for w in graphon_suite:
        assert sum(graphon_density(h, w) for h in enumerate_graphs(n)) == 1
        if n <= 3:
            for h in enumerate_graphs(n):
                assert graphon_density(h, w) == _brute_graphon_density(h, w)


def test_eval_assertion_examples(graphon_suite):
    bip = complete_bipartite_graphon()
    assert eval_assertion(parse_assertion("g:3:{12,13,23} = 0"), bip)
    sandwich = parse_assertion("1 >= g:3:{12,23} & g:3:{12,23} >= 0")
    for w in graphon_suite:
        assert eval_assertion(sandwich, w)
        assert not eval_assertion(FalseA(), w)
    for g in enumerate_graphs(4):
        assert eval_assertion(sandwich, g)
        assert not eval_assertion(FalseA(), g)


def test_eval_on_flag_host():
    host = Flag(P3, (2,), TAU1)
    assert eval_expr(Atom(LE2), host) == 1
    assert eval_expr(Add(Atom(LE2), Atom(LI2)), host) == 1
    with pytest.raises(ExprTypeError):
        eval_expr(A_K2, host)


BOOLS = [FalseA(), TrueA()]


@pytest.mark.parametrize("a,b", list(itertools.product(BOOLS, BOOLS)))
def test_connective_truth_tables(a, b):
    va, vb = isinstance(a, TrueA), isinstance(b, TrueA)
    g = K2
    assert eval_assertion(And(a, b), g) == (va and vb)
    assert eval_assertion(Or(a, b), g) == (va or vb)
    assert eval_assertion(Implies(a, b), g) == ((not va) or vb)
    assert eval_assertion(Not(a), g) == (not va)
    assert eval_assertion(desugar(Implies(a, b)), g) == eval_assertion(Implies(a, b), g)


def test_comparison_sugar_semantics():
    for g in enumerate_graphs(4):
        x, y = eval_on_host(A_K2, g), eval_on_host(A_I2, g)
        assert eval_assertion(eq(A_K2, A_I2), g) == (x == y)
        assert eval_assertion(leq(A_K2, A_I2), g) == (x <= y)
        assert eval_assertion(lt(A_K2, A_I2), g) == (x < y)
        assert eval_assertion(gt(A_K2, A_I2), g) == (x > y)


# -- flattening ---------------------------------------------------------------

def _canon(d):
    return {canonical_form(g) if not isinstance(g, Flag) else g: c for g, c in d.items()}


def test_flatten_edge_to_level_three():
    lf = to_linear_form(A_K2, 3)
    assert lf.as_dict() == _canon({I3: 0, E3: Fraction(1, 3), P3: Fraction(2, 3), K3: 1})


def test_flatten_labelled_square():
    d = Add(Atom(LI2), Scale(Fraction(-1), Atom(LE2)))
    lf = to_linear_form(Mul(d, d), 3)
    want = {LI3: 1, LE3_ISO: 1, LE3_END: -1, LP3_END: -1, LP3_MID: 1, LK3: 1}
    assert lf == LinearForm.from_mapping(3, TAU1, want)


def test_flatten_one_is_all_ones():
    for n in range(0, 5):
        assert to_linear_form(One(), n) == LinearForm.ones(n)
    assert to_linear_form(One(), 3, tau=TAU1) == LinearForm.ones(3, TAU1)


def test_flatten_level_errors():
    with pytest.raises(LevelError) as info:
        to_linear_form(Mul(A_K2, A_K2), 3)
    assert info.value.minimal == 4
    assert minimal_level(Mul(Atom(LE2), Atom(LE2))) == 3
    assert minimal_level(Mul(Mul(A_K2, A_K2), A_I2)) == 6


def test_flatten_product_of_edges():
    lf = to_linear_form(Mul(A_K2, A_K2), 4)
    for h, c in lf.items():
        assert c == brute_split(2, K2.edges, 2, K2.edges, 4, h.edges)


def test_linear_form_json_roundtrip():
    lf = to_linear_form(parse_expr("f:2:{12}|t:1:{}|theta:1 * f:2:{}|t:1:{}|theta:1"))
    assert LinearForm.from_json(json.loads(json.dumps(lf.to_json()))) == lf
    lf = to_linear_form(A_K2, 4)
    assert LinearForm.from_json(lf.to_json()) == lf


# -- soundness properties -----------------------------------------------------

SMALL = [g for n in range(1, 4) for g in enumerate_graphs(n)]
RATS = st.fractions(-2, 2, max_denominator=4)


def exprs(allow_mul):
    leaves = st.one_of(
        st.sampled_from(SMALL).map(Atom),
        st.just(One()),
        st.just(Zero()),
        RATS.map(Const),
    )

    def extend(children):
        opts = [
            st.builds(Add, children, children),
            st.builds(Scale, RATS, children),
        ]
        if allow_mul:
            opts.append(st.builds(Mul, children, children))
        return st.one_of(opts)

    return st.recursive(leaves, extend, max_leaves=4)


@settings(max_examples=60, deadline=None)
@given(exprs(allow_mul=True), st.integers(0, 4))
def test_flatten_is_exact_on_graphons(e, which):
    """Flattening preserves value at every step graphon, products included."""
    m = minimal_level(e)
    if m > 5:
        return
    w = GRAPHON_SUITE[which]
    lf = to_linear_form(e, m)
    assert eval_form(lf, w) == eval_on_graphon(e, w)
    if m < 5:
        assert eval_form(to_linear_form(e, m + 1), w) == eval_on_graphon(e, w)


@settings(max_examples=60, deadline=None)
@given(exprs(allow_mul=False), st.data())
def test_flatten_is_exact_on_hosts_without_products(e, data):
    m = minimal_level(e)
    level = data.draw(st.integers(m, 5))
    g = data.draw(st.sampled_from(enumerate_graphs(6)))
    assert eval_form(to_linear_form(e, level), g) == eval_on_host(e, g)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from(SMALL), st.sampled_from(SMALL))
def test_products_commute_and_associate(a, b, c):
    a, b, c = Atom(a), Atom(b), Atom(c)
    if minimal_level(Mul(Mul(a, b), c)) > 6:
        return
    assert to_linear_form(Mul(a, b)) == to_linear_form(Mul(b, a))
    m = minimal_level(Mul(Mul(a, b), c))
    assert to_linear_form(Mul(Mul(a, b), c), m) == to_linear_form(Mul(a, Mul(b, c)), m)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from(SMALL), st.sampled_from(SMALL))
def test_products_distribute(a, b, c):
    a, b, c = Atom(a), Atom(b), Atom(c)
    left = Mul(a, Add(b, c))
    m = minimal_level(left)
    if m > 6:
        return
    assert to_linear_form(left, m) == to_linear_form(Add(Mul(a, b), Mul(a, c)), m)
    assert to_linear_form(Mul(One(), a), m) == to_linear_form(a, m)


ORACLES = GRAPHON_SUITE + [g for g in enumerate_graphs(4)] + [P3]


@settings(max_examples=60, deadline=None)
@given(exprs(allow_mul=True), exprs(allow_mul=True), exprs(allow_mul=True), RATS)
def test_ring_rewrites_preserve_value(a, b, c, r):
    pairs = [
        (Mul(a, Add(b, c)), Add(Mul(a, b), Mul(a, c))),
        (Mul(a, b), Mul(b, a)),
        (Mul(Mul(a, b), c), Mul(a, Mul(b, c))),
        (Scale(r, Add(a, b)), Add(Scale(r, a), Scale(r, b))),
        (Scale(r, Mul(a, b)), Mul(Scale(r, a), b)),
        (Add(a, Zero()), a),
        (Mul(a, One()), a),
        (Mul(a, Const(r)), Scale(r, a)),
    ]
    for w in ORACLES:
        for left, right in pairs:
            assert eval_expr(left, w) == eval_expr(right, w)
