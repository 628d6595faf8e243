"""Certificate search: untrusted numeric SDP, rational rounding, exact check."""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..algebra.ast import Assertion
from ..algebra.linear import LinearForm, to_linear_form
from ..algebra.parser import parse_assertion
from ..density import density
from ..flags import Flag, enumerate_flags, make_type
from ..graphs import Graph, canonical_form
from .certificate import (
    Assumption,
    Block,
    Certificate,
    analyze_target,
    expand_block,
    verify_certificate,
)

log = logging.getLogger(__name__)

DEFAULT_MAX_DENOMINATOR = 10**4
DEFAULT_MAX_ITERS = 2000


def default_flags(tau: Graph, level: int) -> list[Flag]:
    """All flags of the largest size s with 2s - k <= level."""
    s = (level + tau.n) // 2
    return enumerate_flags(tau, s) if s >= tau.n else []


def _pair_forms(tau: Graph, flags: Sequence[Flag], level: int) -> dict[tuple[int, int], LinearForm]:
    """Downward image of the symmetric unit (F_i F_j + F_j F_i) / 2 for i <= j."""
    m = len(flags)
    out = {}
    for i in range(m):
        for j in range(i, m):
            q = [[Fraction(0)] * m for _ in range(m)]
            q[i][j] = q[j][i] = Fraction(1) if i == j else Fraction(1, 2)
            out[i, j] = expand_block(tau, flags, q, level)
    return out


def _solve(target_vec, frozen, pair_data, sense, max_iters):
    """Optimize the bound over PSD blocks; returns (bound, [Q arrays]) or None."""
    import cvxpy as cp  # slow to import; only the search needs it

    nb = len(target_vec)
    t = cp.Variable()
    qs = [cp.Variable((len(fl), len(fl)), symmetric=True) for fl, _ in pair_data]
    rows = []
    for h in range(nb):
        if h in frozen:
            continue
        expr = 0
        for q, (fl, pairs) in zip(qs, pair_data):
            for (i, j), form in pairs.items():
                c = float(form.coeffs[h])
                if c:
                    expr = expr + (c * (q[i, j] if i == j else 2 * q[i, j]))
        # "<=": t - E_h - A(Q)_h >= 0 ; ">=": E_h - t - A(Q)_h >= 0
        if sense == "<=":
            rows.append(t - float(target_vec[h]) - expr >= 0)
        else:
            rows.append(float(target_vec[h]) - t - expr >= 0)
    cons = rows + [q >> 0 for q in qs]
    objective = cp.Minimize(t) if sense == "<=" else cp.Maximize(t)
    prob = cp.Problem(objective, cons)
    try:
        prob.solve(solver=cp.CLARABEL, max_iter=max_iters)
    except (cp.error.SolverError, Exception) as exc:  # numeric stage is untrusted
        log.debug("numeric stage failed: %s", exc)
        return None
    if prob.status not in ("optimal", "optimal_inaccurate") or t.value is None:
        return None
    return float(t.value), [np.array(q.value) for q in qs]


def _denominators(limit: int) -> list[int]:
    out = []
    d = 1
    while d < limit:
        out.append(d)
        d *= 10
    out.append(limit)
    return out


def search_certificate(
    target: Assertion | str,
    level: int,
    types: Sequence[Graph] | None = None,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
    max_iters: int = DEFAULT_MAX_ITERS,
) -> Certificate | None:
    """Look for a certificate that :func:`verify_certificate` accepts.

    The numeric stage solves the small SDP for the best bound; its block
    matrices are rounded by continued fractions at increasing denominator
    bounds and each rounding is checked exactly.  Returns None (not found)
    once every rounding has failed.
    """
    if isinstance(target, str):
        target = parse_assertion(target)
    if types is None:
        types = [make_type(1)]
    shape = analyze_target(target)
    lhs = to_linear_form(shape.expr, level)
    basis = lhs.basis
    forb = [canonical_form(f) for f in shape.forbidden]
    frozen = {
        h for h, g in enumerate(basis) if any(f.n <= g.n and density(f, g) > 0 for f in forb)
    }

    pair_data = []
    for tau in types:
        flags = default_flags(tau, level)
        if flags:
            pair_data.append((flags, _pair_forms(tau, flags, level)))

    solved = _solve(lhs.coeffs, frozen, pair_data, shape.sense, max_iters)
    if solved is None:
        return None
    bound, qvals = solved
    log.info("numeric optimum %.9f for target bound %s", bound, shape.bound)

    for d in _denominators(max_denominator):
        blocks = []
        for (flags, _), qv, tau in zip(pair_data, qvals, [f[0].tau for f, _ in pair_data]):
            m = len(flags)
            q = [[Fraction(0)] * m for _ in range(m)]
            for i in range(m):
                for j in range(i, m):
                    q[i][j] = q[j][i] = Fraction(float(qv[i, j])).limit_denominator(d)
            blocks.append(Block(tau, list(flags), q, Fraction(1)))
        cert = _complete(target, level, blocks, shape, basis, frozen, forb)
        if cert is not None and verify_certificate(cert).accepted:
            return cert
    return None


def _complete(target, level, blocks, shape, basis, frozen, forb) -> Certificate | None:
    """Fill in assumption multipliers that zero the residual on F-containing graphs."""
    cert = Certificate(target, level, blocks)
    verdict = verify_certificate(cert)
    if verdict.residual is None:
        return None
    assumptions = []
    remaining = set(frozen)
    for f in forb:
        mu = {}
        for h in sorted(remaining):
            g = basis[h]
            if density(f, g) > 0:
                c = verdict.residual.coeffs[h]
                if c:
                    mu[g] = -c
                remaining.discard(h)
        assumptions.append(Assumption(f, mu))
    cert.assumptions = assumptions
    return cert
