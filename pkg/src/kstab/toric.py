"""Lattice polytopes in rank 3: exact hulls, polar duals, toric criteria.

The hull is computed by exhaustive supporting-plane search with rational
arithmetic (every triple of points proposes a plane; a plane with all
points on one side is a facet).  That is quadratic-ish in the number of
points, entirely adequate at this scale, and immune to the degeneracies
that plague floating-point incremental hulls: coplanar point sets simply
propose the same facet several times and are deduplicated.

Polar duality uses the convention that pairs a reflexive polytope with the
convex hull of the *inward* facet normals, P* = {y : <y, x> >= -1 for all
x in P}; facets of a reflexive polytope sit at lattice distance one, and
this is the pairing under which the engine reproduces its reference data.
The two classical conventions differ by a global sign, which changes no
volume, no degree, and no barycenter-vanishing test.

The dimension is fixed at three on purpose: it keeps the hull code small
and exactly verifiable, and it is all the Fano-threefold applications need.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import gcd
from typing import Iterable, Sequence

from .errors import DegeneratePolytope, NotReflexive, OriginNotInterior

from .rationals import Q, qvec, to_q

Vec3 = tuple[Fraction, Fraction, Fraction]


def _cross(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _primitive(n: Vec3) -> tuple[Vec3, Fraction]:
    """Scale a rational normal to a primitive integer vector; return scale."""
    denoms = [x.denominator for x in n]
    lcm = 1
    for d in denoms:
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(x * lcm) for x in n]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero normal")
    scaled = tuple(Q(x // g) for x in ints)
    return scaled, Q(lcm, g)


@dataclass(frozen=True)
class Facet:
    normal: Vec3  # primitive integer outward normal
    offset: Fraction  # <normal, x> <= offset on the polytope
    vertices: tuple[Vec3, ...]


class LatticePolytope:
    """Full-dimensional polytope in rank 3 with exact rational vertices.

    Construction canonicalizes the input: duplicates and non-extreme points
    are dropped, so ``vertices`` are exactly the extreme points.
    """

    def __init__(self, points: Iterable[Sequence]):
        pts = sorted({tuple(to_q(x) for x in p) for p in points})
        if any(len(p) != 3 for p in pts):
            raise ValueError("points must be 3-vectors")
        if _affine_rank(pts) < 3:
            raise DegeneratePolytope("points do not span a 3-dimensional polytope")
        facets = _facets(tuple(pts))
        # a point is extreme iff the facets through it have normals of rank 3
        vertices = []
        for p in pts:
            normals = [f.normal for f in facets if _dot(f.normal, p) == f.offset]
            from .rationals import rank as _rank

            if len(normals) >= 3 and _rank([list(n) for n in normals]) == 3:
                vertices.append(p)
        self.vertices: tuple[Vec3, ...] = tuple(vertices)
        self.facets: tuple[Facet, ...] = tuple(
            Facet(f.normal, f.offset, tuple(v for v in f.vertices if v in set(vertices)))
            for f in facets
        )

    def __eq__(self, other):
        return isinstance(other, LatticePolytope) and self.vertices == other.vertices

    def __repr__(self):
        return f"LatticePolytope({[tuple(map(str, v)) for v in self.vertices]})"

    def is_lattice(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    def contains_origin_interior(self) -> bool:
        return all(f.offset > 0 for f in self.facets)

    def transform(self, matrix: Sequence[Sequence[int]]) -> "LatticePolytope":
        rows = [qvec(r) for r in matrix]
        return LatticePolytope(
            [tuple(_dot(row, v) for row in rows) for v in self.vertices]
        )


def _affine_rank(pts: list[Vec3]) -> int:
    if len(pts) < 2:
        return 0
    base = pts[0]
    from .rationals import rank

    return rank([list(_sub(p, base)) for p in pts[1:]])


def _facets(vertices: tuple[Vec3, ...]) -> tuple[Facet, ...]:
    seen: dict[tuple[Vec3, Fraction], list[Vec3]] = {}
    for a, b, c in itertools.combinations(vertices, 3):
        n = _cross(_sub(b, a), _sub(c, a))
        if all(x == 0 for x in n):
            continue
        n, _ = _primitive(n)
        offset = _dot(n, a)
        sides = {0}
        for p in vertices:
            d = _dot(n, p) - offset
            sides.add(0 if d == 0 else (1 if d > 0 else -1))
            if {1, -1} <= sides:
                break
        if {1, -1} <= sides:
            continue
        if 1 in sides:
            n = tuple(-x for x in n)
            offset = -offset
        key = (n, offset)
        if key not in seen:
            seen[key] = [p for p in vertices if _dot(n, p) == offset]
    facets = [
        Facet(normal=n, offset=c, vertices=tuple(sorted(pts)))
        for (n, c), pts in sorted(seen.items())
    ]
    return tuple(facets)


def polar_dual(p: LatticePolytope) -> LatticePolytope:
    """Dual polytope conv{-n/c : <n, x> <= c a facet}, origin strictly inside.

    Equivalently {y : <y, x> >= -1 for all x in P}; applying it twice
    returns the original polytope.
    """
    if not p.contains_origin_interior():
        raise OriginNotInterior("polar duality needs the origin strictly inside")
    verts = [tuple(-x / f.offset for x in f.normal) for f in p.facets]
    return LatticePolytope(verts)


def is_reflexive(p: LatticePolytope) -> bool:
    """True iff the origin is interior and the dual has integer vertices."""
    if not p.contains_origin_interior():
        raise OriginNotInterior("reflexivity needs the origin strictly inside")
    return polar_dual(p).is_lattice()


def _ordered_facet_vertices(f: Facet) -> list[Vec3]:
    """Vertices of a facet polygon in rotational order, exactly."""
    pts = list(f.vertices)
    centroid = tuple(sum(p[i] for p in pts) / len(pts) for i in range(3))
    rel = {p: _sub(p, centroid) for p in pts}
    ref = rel[pts[0]]

    def half(v: Vec3) -> int:
        c = _dot(f.normal, _cross(ref, v))
        if c > 0:
            return 0
        if c < 0:
            return 1
        return 0 if _dot(ref, v) > 0 else 1

    def compare(a: Vec3, b: Vec3) -> int:
        va, vb = rel[a], rel[b]
        ha, hb = half(va), half(vb)
        if ha != hb:
            return -1 if ha < hb else 1
        c = _dot(f.normal, _cross(va, vb))
        if c == 0:
            return 0
        return -1 if c > 0 else 1

    return sorted(pts, key=cmp_to_key(compare))


def _triangulation(p: LatticePolytope, apex_mode: str) -> list[tuple[Vec3, Vec3, Vec3, Vec3]]:
    """Tetrahedra covering the polytope, from a chosen apex.

    apex_mode "centroid" cones from the vertex average (interior), "vertex"
    cones from the first vertex over the facets avoiding it; the two give
    independent triangulations for the volume cross-check.
    """
    if apex_mode == "centroid":
        n = len(p.vertices)
        apex = tuple(sum(v[i] for v in p.vertices) / n for i in range(3))
        facets = p.facets
    elif apex_mode == "vertex":
        apex = p.vertices[0]
        facets = tuple(f for f in p.facets if apex not in f.vertices)
    else:
        raise ValueError("apex_mode must be 'centroid' or 'vertex'")
    tets = []
    for f in facets:
        ring = _ordered_facet_vertices(f)
        for i in range(1, len(ring) - 1):
            tets.append((apex, ring[0], ring[i], ring[i + 1]))
    return tets


def _tet_volume(t: tuple[Vec3, Vec3, Vec3, Vec3]) -> Fraction:
    a, b, c, d = t
    u, v, w = _sub(b, a), _sub(c, a), _sub(d, a)
    det = _dot(u, _cross(v, w))
    return abs(det) / 6


def volume(p: LatticePolytope, apex_mode: str = "centroid") -> Fraction:
    """Exact Euclidean volume via triangulation."""
    return sum((_tet_volume(t) for t in _triangulation(p, apex_mode)), Q(0))


def barycenter(p: LatticePolytope, apex_mode: str = "centroid") -> Vec3:
    """Exact centroid: volume-weighted average of tetrahedron centroids."""
    total = Q(0)
    acc = [Q(0), Q(0), Q(0)]
    for t in _triangulation(p, apex_mode):
        v = _tet_volume(t)
        total += v
        for i in range(3):
            acc[i] += v * sum(pt[i] for pt in t) / 4
    if total == 0:
        raise DegeneratePolytope("zero volume")
    return tuple(x / total for x in acc)


def anticanonical_degree(p: LatticePolytope) -> int:
    """Degree 3! * vol(dual) of the Fano toric variety of the spanning fan."""
    if not is_reflexive(p):
        raise NotReflexive("the anticanonical degree formula needs a reflexive polytope")
    deg = 6 * volume(polar_dual(p))
    assert deg.denominator == 1
    return int(deg)


def toric_kps_check(p: LatticePolytope) -> tuple[bool, Vec3]:
    """Vanishing-barycenter criterion on the dual (moment) polytope.

    Returns (flag, barycenter of the dual).  A True flag means K-polystable
    by the toric criterion (the Futaki character vanishes); the engine
    claims nothing beyond the criterion itself.
    """
    if not is_reflexive(p):
        raise NotReflexive("the barycenter criterion needs a reflexive polytope")
    b = barycenter(polar_dual(p))
    return (b == (0, 0, 0), b)


# reference instances


def prism() -> LatticePolytope:
    """Triangular prism whose spanning fan defines the volume-18 example."""
    return LatticePolytope(
        [
            (-1, -1, -1),
            (1, 0, -1),
            (0, 1, -1),
            (-1, -1, 1),
            (1, 0, 1),
            (0, 1, 1),
        ]
    )


def bipyramid() -> LatticePolytope:
    """The dual of the prism."""
    return LatticePolytope([(2, -1, 0), (-1, 2, 0), (-1, -1, 0), (0, 0, 1), (0, 0, -1)])


def cube() -> LatticePolytope:
    return LatticePolytope(list(itertools.product((-1, 1), repeat=3)))


def octahedron() -> LatticePolytope:
    return LatticePolytope([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])


def simplex_p3() -> LatticePolytope:
    """Spanning-fan polytope of 3-dimensional projective space."""
    return LatticePolytope([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)])


def asymmetric_reflexive() -> LatticePolytope:
    """A reflexive prism (weighted plane times a line) with nonzero dual barycenter."""
    return LatticePolytope(
        [(1, 0, -1), (0, 1, -1), (-1, -2, -1), (1, 0, 1), (0, 1, 1), (-1, -2, 1)]
    )
