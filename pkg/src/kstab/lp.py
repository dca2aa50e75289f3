"""Tiny exact linear programming over the rationals.

A two-phase dense simplex with Bland's rule: deterministic, exact, and
entirely adequate for the cone problems this engine meets (at most six
equality constraints and a couple of dozen nonnegative variables).  Used
for effective-cone membership and for pseudo-effective thresholds, where
the optimal basis doubles as a certificate that can be re-solved with a
symbolic parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .rationals import Q, to_q


class Infeasible(Exception):
    pass


class Unbounded(Exception):
    pass


@dataclass
class LPResult:
    value: Fraction
    x: tuple[Fraction, ...]
    basis: tuple[int, ...]


def _pivot(tab: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    p = tab[row][col]
    tab[row] = [x / p for x in tab[row]]
    for r in range(len(tab)):
        if r != row and tab[r][col] != 0:
            factor = tab[r][col]
            tab[r] = [x - factor * y for x, y in zip(tab[r], tab[row])]
    basis[row] = col


def _run_simplex(tab: list[list[Fraction]], basis: list[int], ncols: int, allowed) -> None:
    # maximize; objective row is last, stored as z-row coefficients
    # (reduced costs); Bland's rule: smallest eligible column, then row.
    while True:
        obj = tab[-1]
        col = next((j for j in range(ncols) if j in allowed and obj[j] > 0), None)
        if col is None:
            return
        best_row = None
        best_ratio = None
        for r in range(len(tab) - 1):
            if tab[r][col] > 0:
                ratio = tab[r][-1] / tab[r][col]
                if best_ratio is None or ratio < best_ratio or (
                    ratio == best_ratio and basis[r] < basis[best_row]
                ):
                    best_row, best_ratio = r, ratio
        if best_row is None:
            raise Unbounded()
        _pivot(tab, basis, best_row, col)


def solve_equality_lp(
    a: Sequence[Sequence[Fraction]],
    b: Sequence[Fraction],
    c: Sequence[Fraction],
) -> LPResult:
    """Maximize c*x subject to a*x = b, x >= 0 (all data exact rationals).

    Raises Infeasible or Unbounded.  Redundant constraint rows are removed
    up front so the optimal basis is always a genuine invertible column set.
    """
    rows = [[to_q(x) for x in row] for row in a]
    rhs = [to_q(x) for x in b]
    # drop linearly dependent rows (inconsistent ones mean infeasible)
    reduced: list[tuple[list[Fraction], Fraction]] = []
    work = [row + [bi] for row, bi in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    pivot_cols: list[int] = []
    for row in work:
        r = row[:]
        for (prow, pcol) in zip(reduced, pivot_cols):
            if r[pcol] != 0:
                factor = r[pcol]
                r = [x - factor * y for x, y in zip(r, prow[0] + [prow[1]])]
        lead = next((j for j in range(ncols) if r[j] != 0), None)
        if lead is None:
            if r[ncols] != 0:
                raise Infeasible()
            continue
        scale = r[lead]
        r = [x / scale for x in r]
        reduced.append((r[:ncols], r[ncols]))
        pivot_cols.append(lead)
    rows = [r for (r, _) in reduced]
    rhs = [v for (_, v) in reduced]
    m = len(rows)
    if m == 0:
        if any(x > 0 for x in c):
            # all-zero constraints: any x works, unbounded unless c <= 0
            raise Unbounded()
        return LPResult(Q(0), tuple([Q(0)] * ncols), ())
    # make rhs nonnegative
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
    total = ncols + m  # structural + artificial
    tab = []
    for i in range(m):
        row = rows[i] + [Q(1) if j == i else Q(0) for j in range(m)] + [rhs[i]]
        tab.append(row)
    basis = [ncols + i for i in range(m)]
    # phase 1: maximize -sum(artificials)
    zrow = [Q(0)] * (total + 1)
    for i in range(m):
        for j in range(total + 1):
            zrow[j] += tab[i][j]
    for j in range(ncols, total):
        zrow[j] = Q(0)
    tab.append(zrow)
    _run_simplex(tab, basis, total, allowed=set(range(ncols)))
    if tab[-1][-1] != 0:
        raise Infeasible()
    # pivot any artificial variables out of the basis
    for r in range(m):
        if basis[r] >= ncols:
            col = next((j for j in range(ncols) if tab[r][j] != 0), None)
            if col is None:
                continue  # fully redundant row (should not survive pre-reduction)
            _pivot(tab, basis, r, col)
    tab.pop()
    # phase 2: maximize c
    zrow = [Q(0)] * (total + 1)
    for j in range(ncols):
        zrow[j] = to_q(c[j])
    for r in range(m):
        if basis[r] < ncols and zrow[basis[r]] != 0:
            factor = zrow[basis[r]]
            zrow = [x - factor * y for x, y in zip(zrow, tab[r])]
    tab.append(zrow)
    _run_simplex(tab, basis, total, allowed=set(range(ncols)))
    x = [Q(0)] * ncols
    for r in range(m):
        if basis[r] < ncols:
            x[basis[r]] = tab[r][-1]
    value = sum((to_q(ci) * xi for ci, xi in zip(c, x)), Q(0))
    return LPResult(value, tuple(x), tuple(sorted(b_ for b_ in basis if b_ < ncols)))


def in_cone(generators: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
    """Nonnegative coefficients writing target in the cone, or None.

    Generators and target are coordinate vectors of equal length; the cone
    is their nonnegative span.
    """
    if not generators:
        return () if all(to_q(x) == 0 for x in target) else None
    a = [[to_q(g[i]) for g in generators] for i in range(len(target))]
    try:
        res = solve_equality_lp(a, list(target), [Q(0)] * len(generators))
    except Infeasible:
        return None
    return res.x


def max_shift(
    base: Sequence[Fraction],
    direction: Sequence[Fraction],
    generators: Sequence[Sequence[Fraction]],
) -> LPResult:
    """Maximize s >= 0 with base + s*direction in the generator cone.

    The first LP variable is s; the optimal basis (column indices into
    [s, generators...]) certifies the answer and supports parametric
    re-solving.  Raises Infeasible when even s = 0 fails, Unbounded when
    the direction never leaves the cone.
    """
    n = len(base)
    cols = [[-to_q(direction[i])] + [to_q(g[i]) for g in generators] for i in range(n)]
    c = [Q(1)] + [Q(0)] * len(generators)
    return solve_equality_lp(cols, list(base), c)
