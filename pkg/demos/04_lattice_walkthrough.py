"""Even-lattice arithmetic: discriminant forms, overlattices, primitivity.

The star witness is the rank-2 lattice diag(22, -2) attached to a one-nodal
degeneration: its discriminant group is Z/2 + Z/22 with quadratic form
a^2/22 - b^2/2 (mod 2), which has no nonzero isotropic element; therefore
the lattice admits no proper even overlattice and every embedding into a
bigger even lattice is automatically primitive.  A small control lattice
shows what failure looks like, and the same module powers the saturation
test and the bounded integer searches used by the degeneration analysis.
"""

from kstab import (
    GramLattice,
    determinant,
    discriminant_group,
    discriminant_quadratic,
    even_overlattices,
    integer_search_quadratic,
    is_primitivity_forced,
    is_saturated,
    isotropic_elements,
    signature,
)
from kstab.poly import parse_polynomial

nodal = GramLattice([[22, 0], [0, -2]])
group = discriminant_group(nodal)
print("nodal lattice diag(22, -2):")
print("  determinant:", determinant(nodal), " signature:", signature(nodal))
print("  discriminant group invariant factors:", group.factors)
print("  generators (dual coordinates):", [tuple(map(str, g)) for g in group.generators])
print("  q on the two generators:", [str(discriminant_quadratic(nodal, g)) for g in group.generators])
print("  isotropic elements:", isotropic_elements(nodal))
print("  primitivity forced:", is_primitivity_forced(nodal))
print("  even overlattices:", len(even_overlattices(nodal)), "(only itself)")

print("\ncontrol lattice diag(2, -2):")
control = GramLattice([[2, 0], [0, -2]])
print("  isotropic elements:", [tuple(map(str, x)) for x in isotropic_elements(control)])
for over in even_overlattices(control):
    print(f"  overlattice index {over.index}: gram {[list(r) for r in over.gram.gram]},",
          f"det {determinant(over.gram)}")

print("\nsaturation: the rank-2 sublattice spanned by the first two basis vectors")
rank3 = GramLattice([[22, 11, 6], [11, 4, 1], [6, 1, -2]])
print("  inside the rank-3 lattice:", is_saturated(rank3, [(1, 0, 0), (0, 1, 0)]))

print("\nbounded integer searches (enumeration proves emptiness only in the box):")
form = parse_polynomial("-8*a^2 + 28*a*b - 22*b^2 + 40", ("a", "b"))
print("  -8a^2+28ab-22b^2+40 > 0, a in [1,100], b in [-100,-1]:",
      integer_search_quadratic(form, ">", {"a": (1, 100), "b": (-100, -1)}))
form_c = parse_polynomial("-22 + 28*c - 8*c^2", ("c",))
print("  -22+28c-8c^2 > 0, c in [-100,100]:",
      integer_search_quadratic(form_c, ">", {"c": (-100, 100)}))
