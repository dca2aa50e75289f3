"""The toric barycenter criterion on exact lattice polytopes.

A reflexive polytope encodes a Gorenstein toric Fano threefold; the
variety is K-polystable exactly when the barycenter of the dual (moment)
polytope is the origin.  The engine computes hulls, duals, volumes and
barycenters in exact rational arithmetic, so "is the barycenter zero" is a
literal equality, not a tolerance.
"""

from kstab import anticanonical_degree, is_reflexive, polar_dual, polytope_volume, toric_kps_check
from kstab.toric import asymmetric_reflexive, cube, octahedron, prism, simplex_p3

p = prism()
print("triangular prism", [tuple(v) for v in p.vertices])
print("  reflexive:", is_reflexive(p))
dual = polar_dual(p)
print("  dual bipyramid vertices:", [tuple(map(int, v)) for v in dual.vertices])
print("  volume:", polytope_volume(p), " dual volume:", polytope_volume(dual))
print("  anticanonical degree:", anticanonical_degree(p))
flag, bary = toric_kps_check(p)
print("  dual barycenter:", bary, "-> K-polystable by the toric criterion:", flag)

print("\ncontrols:")
print("  simplex (projective 3-space): degree", anticanonical_degree(simplex_p3()))
print("  octahedron (product of three lines): degree", anticanonical_degree(octahedron()))
print("  cube: volume", polytope_volume(cube()), "dual is the octahedron:", polar_dual(cube()) == octahedron())

print("\nan asymmetric reflexive prism (weighted plane times a line):")
a = asymmetric_reflexive()
flag, bary = toric_kps_check(a)
print("  reflexive:", is_reflexive(a), " dual barycenter:", tuple(map(str, bary)))
print("  criterion verdict:", flag, "(a nonzero Futaki character obstructs polystability)")
