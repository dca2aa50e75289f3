"""Toric polytope tests.

Volumes were derived by hand (prism = triangle area 3/2 times height 2;
bipyramid = two pyramids over a lattice triangle of area 9/2) and the
asymmetric control's dual barycenter (1/4, -1/4, 0) by the pyramid-centroid
formula, all before running the engine.
"""

import random
from fractions import Fraction as Q

import pytest

from kstab.errors import DegeneratePolytope, NotReflexive, OriginNotInterior
from kstab.toric import (
    LatticePolytope,
    anticanonical_degree,
    asymmetric_reflexive,
    barycenter,
    bipyramid,
    cube,
    is_reflexive,
    octahedron,
    polar_dual,
    prism,
    simplex_p3,
    toric_kps_check,
    volume,
)


class TestHull:
    def test_redundant_points_dropped(self):
        p = LatticePolytope(list(cube().vertices) + [(0, 0, 0), (1, 1, 0)])
        assert p == cube()

    def test_degenerate_rejected(self):
        with pytest.raises(DegeneratePolytope):
            LatticePolytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (2, 3, 0)])

    def test_facet_counts(self):
        assert len(cube().facets) == 6
        assert len(octahedron().facets) == 8
        assert len(prism().facets) == 5
        assert len(bipyramid().facets) == 6

    def test_coplanar_merging(self):
        # a cube facet proposed by many triples is reported once
        facet_normals = {f.normal for f in cube().facets}
        assert facet_normals == {
            (1, 0, 0),
            (-1, 0, 0),
            (0, 1, 0),
            (0, -1, 0),
            (0, 0, 1),
            (0, 0, -1),
        }


class TestPolarDual:
    def test_prism_dual_is_bipyramid(self):
        assert polar_dual(prism()) == bipyramid()

    def test_cube_octahedron(self):
        assert polar_dual(cube()) == octahedron()
        assert polar_dual(octahedron()) == cube()

    def test_involution_on_prism(self):
        assert polar_dual(polar_dual(prism())) == prism()

    def test_origin_must_be_interior(self):
        shifted = LatticePolytope([(v[0] + 5, v[1], v[2]) for v in cube().vertices])
        with pytest.raises(OriginNotInterior):
            polar_dual(shifted)


class TestReflexive:
    def test_examples(self):
        assert is_reflexive(prism())
        assert is_reflexive(cube())
        assert is_reflexive(simplex_p3())
        assert is_reflexive(asymmetric_reflexive())

    def test_stretched_octahedron_not_reflexive(self):
        p = LatticePolytope([(2, 0, 0), (-2, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])
        assert not is_reflexive(p)


class TestVolumeBarycenter:
    def test_prism(self):
        assert volume(prism()) == 3
        assert barycenter(prism()) == (0, 0, 0)

    def test_bipyramid(self):
        assert volume(bipyramid()) == 3
        assert barycenter(bipyramid()) == (0, 0, 0)

    def test_cube(self):
        assert volume(cube()) == 8
        assert barycenter(cube()) == (0, 0, 0)

    def test_independent_triangulations_agree(self):
        for p in (prism(), bipyramid(), cube(), octahedron(), simplex_p3(), asymmetric_reflexive()):
            assert volume(p, "centroid") == volume(p, "vertex")
            assert barycenter(p, "centroid") == barycenter(p, "vertex")

    def test_asymmetric_dual_barycenter(self):
        dual = polar_dual(asymmetric_reflexive())
        assert barycenter(dual) == (Q(1, 4), Q(-1, 4), 0)


class TestDegreesAndKps:
    def test_prism_degree(self):
        assert anticanonical_degree(prism()) == 18

    def test_simplex_degree(self):
        assert anticanonical_degree(simplex_p3()) == 64

    def test_octahedron_degree(self):
        assert anticanonical_degree(octahedron()) == 48

    def test_not_reflexive_rejected(self):
        p = LatticePolytope([(2, 0, 0), (-2, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])
        with pytest.raises(NotReflexive):
            anticanonical_degree(p)

    def test_prism_kps(self):
        flag, bary = toric_kps_check(prism())
        assert flag and bary == (0, 0, 0)

    def test_simplex_kps(self):
        flag, _ = toric_kps_check(simplex_p3())
        assert flag

    def test_asymmetric_fails_kps(self):
        flag, bary = toric_kps_check(asymmetric_reflexive())
        assert not flag
        assert bary != (0, 0, 0)


def random_unimodular(rng):
    """Product of elementary shears and signed permutations: det = +-1."""
    m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    for _ in range(6):
        i, j = rng.sample(range(3), 2)
        c = rng.randint(-2, 2)
        for col in range(3):
            m[i][col] += c * m[j][col]
    perm = list(rng.sample(range(3), 3))
    signs = [rng.choice((1, -1)) for _ in range(3)]
    return [[signs[r] * m[perm[r]][col] for col in range(3)] for r in range(3)]


class TestEquivariance:
    def test_unimodular_invariance(self):
        rng = random.Random(5)
        base = prism()
        vol0, bary0, deg0 = volume(base), barycenter(base), anticanonical_degree(base)
        for _ in range(10):
            m = random_unimodular(rng)
            moved = base.transform(m)
            assert volume(moved) == vol0
            expected = tuple(
                sum(Q(m[r][c]) * bary0[c] for c in range(3)) for r in range(3)
            )
            assert barycenter(moved) == expected
            assert anticanonical_degree(moved) == deg0
