"""Even integral lattices: discriminant forms, overlattices, saturation.

A lattice is a symmetric integer Gram matrix.  The discriminant group
A = L*/L is computed through an integer Smith normal form with explicit
transformation matrices, so group elements come out as rational coordinate
vectors in the original basis (reduced to the fundamental domain [0,1)^r).
That representation makes the Q/2Z quadratic form a plain matrix product
and keeps the Nikulin overlattice construction concrete: an overlattice is
returned as a new Gram matrix plus the rational basis-change certificate.

Enumerations are guarded by an element bound (default 10**6, overridable
per call or through the KSTAB_ENUM_BOUND environment variable).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    DegenerateLattice,
    DependentBasis,
    GroupTooLarge,
    OddLattice,
)
from .poly import Polynomial
from .rationals import Q, det, mat_mul, mat_transpose, to_q

DEFAULT_ENUM_BOUND = 10**6


def _enum_bound(bound: int | None) -> int:
    if bound is not None:
        return bound
    env = os.environ.get("KSTAB_ENUM_BOUND")
    return int(env) if env else DEFAULT_ENUM_BOUND


class GramLattice:
    """Integral lattice presented by a symmetric Gram matrix."""

    def __init__(self, gram: Sequence[Sequence[int]]):
        rows = [list(row) for row in gram]
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
                if int(rows[i][j]) != rows[i][j]:
                    raise ValueError("Gram entries must be integers")
                rows[i][j] = int(rows[i][j])
        self.gram: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in rows)
        self.rank = n

    def __repr__(self):
        return f"GramLattice({[list(r) for r in self.gram]})"

    def __eq__(self, other):
        return isinstance(other, GramLattice) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def evaluate(self, v: Sequence[int]) -> int:
        """Self-pairing v^T G v."""
        return self.pair(v, v)

    def pair(self, v: Sequence[int], w: Sequence[int]) -> int:
        if len(v) != self.rank or len(w) != self.rank:
            raise ValueError(f"vectors must have length {self.rank}")
        return sum(
            int(v[i]) * self.gram[i][j] * int(w[j])
            for i in range(self.rank)
            for j in range(self.rank)
        )


def determinant(lattice: GramLattice) -> int:
    value = det([[Q(x) for x in row] for row in lattice.gram])
    assert value.denominator == 1
    return int(value)


def signature(lattice: GramLattice) -> tuple[int, int, int]:
    """Inertia (positive, negative, zero) by exact congruence diagonalization."""
    n = lattice.rank
    m = [[to_q(x) for x in row] for row in lattice.gram]
    pos = neg = zero = 0

    def sym_op(i: int, j: int, c: Fraction) -> None:
        # row_i += c * row_j followed by the same column operation
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        for row in m:
            row[i] = row[i] + c * row[j]

    def sym_swap(i: int, j: int) -> None:
        m[i], m[j] = m[j], m[i]
        for row in m:
            row[i], row[j] = row[j], row[i]

    k = 0
    end = n
    while k < end:
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, end) if m[i][i] != 0), None)
            if swap is not None:
                sym_swap(k, swap)
            else:
                off = next((j for j in range(k + 1, end) if m[k][j] != 0), None)
                if off is not None:
                    # all trailing diagonals vanish; e_k += e_off makes the
                    # new diagonal entry 2*m[k][off] != 0
                    sym_op(k, off, Q(1))
                else:
                    # radical direction: park it at the end and shrink
                    sym_swap(k, end - 1)
                    end -= 1
                    zero += 1
                    continue
        d = m[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, end):
            if m[i][k] != 0:
                sym_op(i, k, -m[i][k] / d)
        k += 1
    return pos, neg, zero


# -- Smith normal form -------------------------------------------------------


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """(U, D, V) with U*A*V = D diagonal, U and V unimodular, diagonal
    entries nonnegative with d1 | d2 | ... .
    """
    a = [[int(x) for x in row] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_op(i, j, c):
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, c):
        for row in a:
            row[i] += c * row[j]
        for row in v:
            row[i] += c * row[j]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # find a pivot
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    pivot, best = (i, j), abs(a[i][j])
        if pivot is None:
            break
        row_swap(t, pivot[0])
        col_swap(t, pivot[1])
        while True:
            # kill column t
            done = True
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, -q)
                    if a[i][t] != 0:
                        row_swap(t, i)
                        done = False
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, -q)
                    if a[t][j] != 0:
                        col_swap(t, j)
                        done = False
            if done:
                break
        # enforce divisibility d_t | a[i][j] for the trailing block
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t] != 0:
                    bad = (i, j)
                    break
            if bad:
                break
        if bad:
            row_op(t, bad[0], 1)
            continue
        t += 1
    for i in range(limit):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]
    return u, a, v


# -- discriminant groups -----------------------------------------------------


@dataclass(frozen=True)
class DiscriminantGroup:
    """A = L*/L presented by invariant factors and dual-vector generators.

    ``generators[i]`` is a rational coordinate vector (in the original
    lattice basis) of order ``factors[i]``; the factors divide one another in
    increasing order and multiply to |det|.
    """

    lattice: GramLattice
    factors: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]

    @property
    def order(self) -> int:
        out = 1
        for f in self.factors:
            out *= f
        return out

    def canonical(self, vector: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Reduce a dual vector modulo the lattice to coordinates in [0,1)^r."""
        return tuple(to_q(x) - to_q(x).__floor__() for x in vector)

    def element(self, coords: Sequence[int]) -> tuple[Fraction, ...]:
        """Group element a1*g1 + ... + ak*gk as a canonical dual vector."""
        if len(coords) != len(self.generators):
            raise ValueError("coordinate length mismatch")
        acc = [Q(0)] * self.lattice.rank
        for a, gen in zip(coords, self.generators):
            for i, x in enumerate(gen):
                acc[i] += a * x
        return self.canonical(acc)

    def elements(self, bound: int | None = None) -> list[tuple[Fraction, ...]]:
        """All group elements in a deterministic (sorted) order."""
        if self.order > _enum_bound(bound):
            raise GroupTooLarge(f"group of order {self.order} exceeds the bound")
        out = set()
        for coords in itertools.product(*(range(f) for f in self.factors)):
            out.add(self.element(coords))
        return sorted(out)


def discriminant_group(lattice: GramLattice) -> DiscriminantGroup:
    """Invariant factors and generators of L*/L via Smith normal form."""
    if determinant(lattice) == 0:
        raise DegenerateLattice("discriminant group needs det != 0")
    u, d, v = smith_normal_form(lattice.gram)
    factors: list[int] = []
    gens: list[tuple[Fraction, ...]] = []
    for i in range(lattice.rank):
        di = d[i][i]
        if di in (0, 1):
            continue
        column = tuple(Q(v[r][i], di) for r in range(lattice.rank))
        factors.append(di)
        gens.append(column)
    group = DiscriminantGroup(lattice, tuple(factors), tuple(gens))
    object.__setattr__(group, "generators", tuple(group.canonical(g) for g in gens))
    return group


def discriminant_quadratic(lattice: GramLattice, x: Sequence[Fraction]) -> Fraction:
    """q(x) in Q/2Z for an even lattice, canonical representative in [0, 2).

    ``x`` is a rational coordinate vector in the original basis (an element
    of the dual lattice).
    """
    if not lattice.is_even():
        raise OddLattice("discriminant quadratic form needs an even lattice")
    if determinant(lattice) == 0:
        raise DegenerateLattice("discriminant form needs det != 0")
    xq = [to_q(c) for c in x]
    gq = [[Q(e) for e in row] for row in lattice.gram]
    value = sum(xq[i] * gq[i][j] * xq[j] for i in range(lattice.rank) for j in range(lattice.rank))
    return value % 2


def discriminant_bilinear(lattice: GramLattice, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    """b(x, y) in Q/Z, canonical representative in [0, 1)."""
    if determinant(lattice) == 0:
        raise DegenerateLattice("discriminant form needs det != 0")
    xq = [to_q(c) for c in x]
    yq = [to_q(c) for c in y]
    value = sum(xq[i] * lattice.gram[i][j] * yq[j] for i in range(lattice.rank) for j in range(lattice.rank))
    return value % 1


def isotropic_elements(lattice: GramLattice, bound: int | None = None) -> list[tuple[Fraction, ...]]:
    """All discriminant-group elements with q = 0 in Q/2Z (0 included)."""
    group = discriminant_group(lattice)
    return [x for x in group.elements(bound) if discriminant_quadratic(lattice, x) == 0]


def is_primitivity_forced(lattice: GramLattice, bound: int | None = None) -> bool:
    """True iff 0 is the only isotropic element of the discriminant form.

    A nonzero isotropic element generates an isotropic subgroup and hence a
    proper even overlattice; with none, every embedding into a larger even
    lattice is primitive.
    """
    iso = isotropic_elements(lattice, bound)
    zero = tuple([Q(0)] * lattice.rank)
    return iso == [zero]


@dataclass(frozen=True)
class Overlattice:
    """An even overlattice with its basis certificate.

    ``basis`` rows express the new basis in rational coordinates of the
    original one, so gram = basis * G * basis^T and |index| = 1/|det basis|.
    """

    gram: GramLattice
    basis: tuple[tuple[Fraction, ...], ...]
    subgroup: tuple[tuple[Fraction, ...], ...]

    @property
    def index(self) -> int:
        b = det([list(row) for row in self.basis])
        return int(1 / abs(b))


def _isotropic_subgroups(lattice: GramLattice, bound: int | None) -> list[frozenset]:
    group = discriminant_group(lattice)
    iso = set(isotropic_elements(lattice, bound))
    zero = tuple([Q(0)] * lattice.rank)

    def close(generators: frozenset) -> frozenset | None:
        # subgroup generated inside the isotropic set, or None if it leaves it
        elems = {zero}
        frontier = [zero]
        while frontier:
            base = frontier.pop()
            for g in generators:
                s = group.canonical([a + b for a, b in zip(base, g)])
                if s not in elems:
                    if s not in iso:
                        return None
                    elems.add(s)
                    frontier.append(s)
        return frozenset(elems)

    subgroups = {frozenset({zero})}
    frontier = [frozenset({zero})]
    while frontier:
        h = frontier.pop()
        for g in iso:
            if g in h:
                continue
            extended = close(frozenset(h | {g}))
            if extended is not None and extended not in subgroups:
                subgroups.add(extended)
                frontier.append(extended)
    return sorted(subgroups, key=lambda h: (len(h), sorted(h)))


def _lattice_basis_from_rational_rows(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Z-basis (HNF-style, deterministic) of the lattice spanned by the rows."""
    denom = 1
    for row in rows:
        for x in row:
            denom = denom * x.denominator // _gcd(denom, x.denominator)
    ints = [[int(x * denom) for x in row] for row in rows]
    hnf = _hermite_normal_form(ints)
    return [[Q(x, denom) for x in row] for row in hnf]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _hermite_normal_form(rows: list[list[int]]) -> list[list[int]]:
    """Row-style HNF (nonzero rows, pivot-positive, reduced above pivots)."""
    m = [list(r) for r in rows]
    cols = len(m[0]) if m else 0
    pivot_row = 0
    for col in range(cols):
        pivot = None
        for r in range(pivot_row, len(m)):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[pivot_row], m[pivot] = m[pivot], m[pivot_row]
        # gcd out the column below the pivot
        for r in range(pivot_row + 1, len(m)):
            while m[r][col] != 0:
                q = m[pivot_row][col] // m[r][col]
                m[pivot_row] = [a - q * b for a, b in zip(m[pivot_row], m[r])]
                m[pivot_row], m[r] = m[r], m[pivot_row]
        if m[pivot_row][col] < 0:
            m[pivot_row] = [-x for x in m[pivot_row]]
        for r in range(pivot_row):
            q = m[r][col] // m[pivot_row][col]
            if q:
                m[r] = [a - q * b for a, b in zip(m[r], m[pivot_row])]
        pivot_row += 1
    return [row for row in m[:pivot_row] if any(row)]


def even_overlattices(lattice: GramLattice, bound: int | None = None) -> list[Overlattice]:
    """All even overlattices, one per isotropic subgroup of the discriminant.

    The list always contains the lattice itself (trivial subgroup) and is
    deterministically ordered by subgroup size.  det(overlattice) scales by
    1/|H|^2.
    """
    if not lattice.is_even():
        raise OddLattice("overlattice enumeration is defined for even lattices")
    out: list[Overlattice] = []
    n = lattice.rank
    for subgroup in _isotropic_subgroups(lattice, bound):
        rows = [[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)]
        rows += [list(v) for v in subgroup]
        basis = _lattice_basis_from_rational_rows(rows)
        assert len(basis) == n
        gram_q = mat_mul(mat_mul(basis, [[Q(x) for x in row] for row in lattice.gram]), mat_transpose(basis))
        gram = [[int(x) for x in row] for row in gram_q]
        over = GramLattice(gram)
        assert over.is_even(), "overlattice from an isotropic subgroup must stay even"
        out.append(
            Overlattice(
                gram=over,
                basis=tuple(tuple(row) for row in basis),
                subgroup=tuple(sorted(subgroup)),
            )
        )
    return out


def is_saturated(ambient: GramLattice, sub_basis: Sequence[Sequence[int]]) -> bool:
    """True iff the span of the rows is a direct summand of Z^rank.

    Equivalent to: the coordinate matrix has all Smith invariant factors 1,
    i.e. the sublattice is primitive in the ambient lattice.
    """
    rows = [[int(x) for x in row] for row in sub_basis]
    if not rows:
        return True
    if any(len(row) != ambient.rank for row in rows):
        raise ValueError("sub-basis vectors must match the ambient rank")
    from .rationals import rank as qrank

    if qrank([[Q(x) for x in row] for row in rows]) != len(rows):
        raise DependentBasis("sub-basis is linearly dependent")
    _, d, _ = smith_normal_form(rows)
    k = len(rows)
    return all(d[i][i] == 1 for i in range(k))


def integer_search_quadratic(
    form: Polynomial,
    comparison: str,
    box: dict[str, tuple[int, int]],
) -> list[tuple[int, ...]]:
    """Exhaustive integer solutions of ``form <comparison> 0`` in a box.

    The box must cover every variable of the polynomial; results are sorted
    tuples in the variable order of the polynomial.  Enumeration proves
    emptiness only within the box, never globally.
    """
    ops = {
        ">": lambda v: v > 0,
        ">=": lambda v: v >= 0,
        "<": lambda v: v < 0,
        "<=": lambda v: v <= 0,
        "==": lambda v: v == 0,
    }
    if comparison not in ops:
        raise ValueError(f"unknown comparison {comparison!r}")
    test = ops[comparison]
    variables = form.vars
    for v in variables:
        if v not in box:
            raise ValueError(f"box is missing variable {v!r}")
    ranges = [range(box[v][0], box[v][1] + 1) for v in variables]
    # plain-integer fast path over the (possibly large) box
    terms = [
        (c if c.denominator != 1 else c.numerator, exp) for exp, c in form.coeffs.items()
    ]
    out = []
    for point in itertools.product(*ranges):
        value = 0
        for c, exp in terms:
            term = c
            for x, e in zip(point, exp):
                if e:
                    term *= x**e
            value += term
        if test(value):
            out.append(point)
    return sorted(out)
