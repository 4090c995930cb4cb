"""Exact probability between two capacities, found through a linear program.

Used only as a fallback when pivot transforms stall.  The LP solver picks a
vertex in floating point; its active constraints are then re-solved in
rationals and the point is verified exactly.  If that fails, vertices are
enumerated exhaustively.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy.optimize import linprog

from .capacity import Capacity, ProbabilityMeasure, dominates, same_ground

_TIGHT = 1e-9


def _rows(mu: Capacity, nu: Capacity):
    """Constraint rows ``(coeffs, rhs, kind)``: ``kind`` is 'le', 'ge' or 'eq'."""
    n = mu.n
    rows = [([1] * n, Fraction(1), "eq")]
    for a in range(1, mu.ground.full):
        coeffs = [a >> i & 1 for i in range(n)]
        rows.append((coeffs, mu[a], "le"))
        rows.append((coeffs, nu[a], "ge"))
    for i in range(n):
        unit = [0] * n
        unit[i] = 1
        rows.append((unit, Fraction(0), "ge"))
    return rows


def _solve(matrix, rhs):
    """Exact Gauss-Jordan solve of a square system; ``None`` if singular."""
    n = len(matrix)
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def _independent(rows, n):
    """Greedy exact selection of up to ``n`` linearly independent rows."""
    basis, chosen = [], []
    for row in rows:
        vec = [Fraction(x) for x in row[0]]
        for b in basis:
            lead = next(i for i, x in enumerate(b) if x != 0)
            if vec[lead] != 0:
                f = vec[lead] / b[lead]
                vec = [x - f * y for x, y in zip(vec, b)]
        if any(vec):
            basis.append(vec)
            chosen.append(row)
            if len(chosen) == n:
                break
    return chosen


def _feasible(weights, mu, nu):
    if any(w < 0 for w in weights) or sum(weights) != 1:
        return None
    p = ProbabilityMeasure.from_weights(mu.ground, weights)
    if dominates(mu, p) and dominates(p, nu):
        return p
    return None


def _from_rows(rows, mu, nu):
    weights = _solve([r[0] for r in rows], [r[1] for r in rows])
    return None if weights is None else _feasible(weights, mu, nu)


def sandwiched_probability(mu: Capacity, nu: Capacity) -> ProbabilityMeasure | None:
    """Some exact probability ``P`` with ``nu <= P <= mu``, or ``None`` if there is none."""
    same_ground(mu, nu)
    n = mu.n
    rows = _rows(mu, nu)
    a_ub, b_ub = [], []
    for coeffs, rhs, kind in rows[1:]:
        sign = 1 if kind == "le" else -1
        a_ub.append([sign * x for x in coeffs])
        b_ub.append(sign * float(rhs))
    res = linprog(
        np.zeros(n),
        A_ub=np.array(a_ub, dtype=float),
        b_ub=np.array(b_ub),
        A_eq=np.ones((1, n)),
        b_eq=[1.0],
        bounds=[(None, None)] * n,
        method="highs-ds",
    )
    if res.status == 0:
        x = res.x
        tight = [rows[0]] + [
            r for r in rows[1:] if abs(float(np.dot(r[0], x)) - float(r[1])) <= _TIGHT
        ]
        chosen = _independent(tight, n)
        if len(chosen) == n:
            p = _from_rows(chosen, mu, nu)
            if p is not None:
                return p
    # exact vertex enumeration; the sum row is always part of a vertex basis
    for combo in combinations(rows[1:], n - 1):
        p = _from_rows([rows[0], *combo], mu, nu)
        if p is not None:
            return p
    return None
