"""Linear forms over a level-n basis and flattening of density expressions."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from ..density import (
    chain_decompose,
    chain_decompose_flag,
    flag_split_profile,
    split_profile,
)
from ..flags import Flag, canonical_flag, enumerate_flags, format_flag, format_type, parse_flag, parse_type, type_flag
from ..graphs import EMPTY, HARD_CAP, Graph, canonical_form, enumerate_graphs, format_graph, parse_graph
from .ast import Add, Atom, Const, Expr, Mul, One, Scale, Zero, expr_type, sum_exprs

Basis = Union[Graph, Flag]


class LevelError(ValueError):
    """Requested level is below the smallest level the expression flattens to."""

    def __init__(self, level: int, minimal: int):
        super().__init__(f"level {level} is too small; the minimal feasible level is {minimal}")
        self.level = level
        self.minimal = minimal


def basis(level: int, tau: Graph | None = None) -> list[Basis]:
    if tau is None:
        return list(enumerate_graphs(level, cap=HARD_CAP))
    return list(enumerate_flags(tau, level))


def _canon(obj: Basis) -> Basis:
    return canonical_flag(obj) if isinstance(obj, Flag) else canonical_form(obj)


@dataclass(frozen=True)
class LinearForm:
    level: int
    tau: Graph | None
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if len(self.coeffs) != len(self.basis):
            raise ValueError("coefficient vector does not match the basis size")

    @property
    def basis(self) -> list[Basis]:
        return basis(self.level, self.tau)

    @classmethod
    def zero(cls, level: int, tau: Graph | None = None) -> "LinearForm":
        return cls(level, tau, (Fraction(0),) * len(basis(level, tau)))

    @classmethod
    def ones(cls, level: int, tau: Graph | None = None) -> "LinearForm":
        return cls(level, tau, (Fraction(1),) * len(basis(level, tau)))

    @classmethod
    def from_mapping(cls, level: int, tau: Graph | None, mapping: Mapping[Basis, Fraction]) -> "LinearForm":
        """Build from basis elements (any labelling); isomorphic keys accumulate."""
        b = basis(level, tau)
        index = {x: i for i, x in enumerate(b)}
        coeffs = [Fraction(0)] * len(b)
        for key, c in mapping.items():
            ck = _canon(key)
            if ck not in index:
                raise ValueError(f"{key} is not a level-{level} basis element of this type")
            coeffs[index[ck]] += Fraction(c)
        return cls(level, tau, tuple(coeffs))

    def unit(self, key: Basis) -> "LinearForm":
        return LinearForm.from_mapping(self.level, self.tau, {key: 1})

    def _check(self, other: "LinearForm") -> None:
        if (self.level, self.tau) != (other.level, other.tau):
            raise ValueError("linear forms live on different bases")

    def __add__(self, other: "LinearForm") -> "LinearForm":
        self._check(other)
        return LinearForm(self.level, self.tau, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        self._check(other)
        return LinearForm(self.level, self.tau, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rmul__(self, r) -> "LinearForm":
        r = Fraction(r)
        return LinearForm(self.level, self.tau, tuple(r * c for c in self.coeffs))

    def __neg__(self) -> "LinearForm":
        return (-1) * self

    def __getitem__(self, key: Basis) -> Fraction:
        return self.as_dict()[_canon(key)]

    def as_dict(self) -> dict[Basis, Fraction]:
        return dict(zip(self.basis, self.coeffs))

    def items(self):
        return zip(self.basis, self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def to_expr(self) -> Expr:
        """Read back as a density expression (zero terms dropped)."""
        return sum_exprs(Scale(c, Atom(x)) for x, c in self.items() if c != 0)

    def to_json(self) -> dict:
        fmt = format_graph if self.tau is None else format_flag
        return {
            "level": self.level,
            "type": None if self.tau is None else format_type(self.tau),
            "coefficients": [[fmt(x), str(c)] for x, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LinearForm":
        tau = None if data.get("type") is None else parse_type(data["type"])
        parse = parse_graph if tau is None else parse_flag
        mapping: dict[Basis, Fraction] = {}
        for text, c in data["coefficients"]:
            key = _canon(parse(text))
            mapping[key] = mapping.get(key, Fraction(0)) + Fraction(c)
        return cls.from_mapping(int(data["level"]), tau, mapping)


# -- flattening -------------------------------------------------------------------

Sparse = dict  # canonical basis element -> Fraction, homogeneous in size


def _unit(tau: Graph | None) -> Basis:
    return EMPTY if tau is None else canonical_flag(type_flag(tau))


def _k(tau: Graph | None) -> int:
    return 0 if tau is None else tau.n


def minimal_level(e: Expr, tau: Graph | None = None) -> int:
    """Smallest level ``e`` flattens to when products are eliminated innermost-out."""
    if tau is None:
        tau = expr_type(e)
    k = _k(tau)
    if isinstance(e, Atom):
        return e.obj.n
    if isinstance(e, (Zero, One, Const)):
        return k
    if isinstance(e, Scale):
        return minimal_level(e.e, tau)
    if isinstance(e, Add):
        return max(minimal_level(e.a, tau), minimal_level(e.b, tau))
    if isinstance(e, Mul):
        return minimal_level(e.a, tau) + minimal_level(e.b, tau) - k
    raise TypeError(f"not an expression: {e!r}")


@lru_cache(maxsize=None)
def _lift_one(key: Basis, level: int) -> tuple[tuple[Basis, Fraction], ...]:
    if key.n == level:
        return ((key, Fraction(1)),)
    table = chain_decompose_flag(key, level) if isinstance(key, Flag) else chain_decompose(key, level)
    return tuple((b, c) for b, c in table.items() if c)


def _lift(form: Sparse, level: int) -> Sparse:
    out: Sparse = {}
    for key, c in form.items():
        for big, r in _lift_one(key, level):
            out[big] = out.get(big, Fraction(0)) + c * r
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _product_table(m1: int, m2: int, tau: Graph | None) -> dict:
    """(A, B) -> [(host, r)] with r the split density of A, B in host."""
    k = _k(tau)
    level = m1 + m2 - k
    table: dict = {}
    for host in basis(level, tau):
        if tau is None:
            counts, total = split_profile(host, m1, m2)
        else:
            counts, total = flag_split_profile(host, m1, m2)
        for pair, cnt in counts.items():
            table.setdefault(pair, []).append((host, Fraction(cnt, total)))
    return table


def _multiply(a: Sparse, ma: int, b: Sparse, mb: int, tau: Graph | None) -> Sparse:
    table = _product_table(ma, mb, tau)
    out: Sparse = {}
    for x, cx in a.items():
        for y, cy in b.items():
            for host, r in table.get((x, y), ()):
                out[host] = out.get(host, Fraction(0)) + cx * cy * r
    return {k: v for k, v in out.items() if v}


def _flatten(e: Expr, tau: Graph | None) -> tuple[int, Sparse]:
    k = _k(tau)
    if isinstance(e, Atom):
        return e.obj.n, {_canon(e.obj): Fraction(1)}
    if isinstance(e, Zero):
        return k, {}
    if isinstance(e, One):
        return k, {_unit(tau): Fraction(1)}
    if isinstance(e, Const):
        return k, ({_unit(tau): e.value} if e.value else {})
    if isinstance(e, Scale):
        m, f = _flatten(e.e, tau)
        return m, {x: e.r * c for x, c in f.items() if e.r * c}
    if isinstance(e, Add):
        ma, fa = _flatten(e.a, tau)
        mb, fb = _flatten(e.b, tau)
        m = max(ma, mb)
        out = _lift(fa, m)
        for x, c in _lift(fb, m).items():
            out[x] = out.get(x, Fraction(0)) + c
        return m, {x: c for x, c in out.items() if c}
    if isinstance(e, Mul):
        ma, fa = _flatten(e.a, tau)
        mb, fb = _flatten(e.b, tau)
        return ma + mb - k, _multiply(fa, ma, fb, mb, tau)
    raise TypeError(f"not an expression: {e!r}")


def to_linear_form(e: Expr, level: int | None = None, tau: Graph | None = None) -> LinearForm:
    """Flatten ``e`` into a linear form over the level-``level`` basis.

    Products are eliminated innermost-out, left to right, each at the smallest
    level the operands allow; 1 becomes the empty graph (or the flag (tau, id))
    and the result is lifted to ``level`` by the chain rule.  ``tau`` types
    atom-free expressions; otherwise it must agree with the atoms.
    """
    found = expr_type(e)
    if found is not None and tau is not None and found != tau:
        raise ValueError("expression type does not match the requested type")
    tau = found if found is not None else tau
    minimal = minimal_level(e, tau)
    if level is None:
        level = minimal
    if level < minimal:
        raise LevelError(level, minimal)
    if level > HARD_CAP:
        raise ValueError(f"level {level} exceeds the cap {HARD_CAP}")
    _, form = _flatten(e, tau)
    return LinearForm.from_mapping(level, tau, _lift(form, level))


def combine(forms: Iterable[tuple[Fraction, LinearForm]]) -> LinearForm:
    forms = list(forms)
    out = LinearForm.zero(forms[0][1].level, forms[0][1].tau)
    for r, f in forms:
        out = out + Fraction(r) * f
    return out
