"""Exception hierarchy for the exact computation engine.

Every error raised on a bad input or a failed certificate derives from
:class:`KstabError`, so callers (notably the command line front end) can map
computation failures to a single exit code while genuine bugs still surface
as ordinary Python exceptions.
"""


class KstabError(Exception):
    """Base class for all expected computation errors."""


class DomainError(KstabError):
    """An evaluation or integration range leaves the domain of a function."""


class IrrationalWall(KstabError):
    """A chamber wall is a real but irrational root of a degree-2 polynomial.

    Walls are required to be rational; approximating one would silently break
    the exactness guarantee, so the engine refuses instead.
    """


class DegenerateLattice(KstabError):
    """A lattice operation needs a nondegenerate Gram matrix (det != 0)."""


class OddLattice(KstabError):
    """A discriminant quadratic form is only defined for even lattices."""


class GroupTooLarge(KstabError):
    """A discriminant-group enumeration exceeds the configured bound."""


class DependentBasis(KstabError):
    """A sublattice basis is linearly dependent."""


class NotPseudoEffective(KstabError):
    """A divisor class lies outside the declared effective cone."""


class UnboundedDirection(KstabError):
    """A threshold search is unbounded (Z is anti-effective for the cone)."""


class IndefiniteSupport(KstabError):
    """An accumulated Zariski support Gram is not negative definite.

    This is the canary for an incomplete or incorrect negative-curve list on
    the surface model.
    """


class WallCrossingDegeneracy(KstabError):
    """Two chamber walls coincide along a whole chamber."""


class CertificateViolation(KstabError):
    """A claimed chamber decomposition fails its nefness/effectivity checks."""


class InvalidModel(KstabError):
    """Model data is structurally inconsistent (symmetry, sizes, signs)."""


class ModelFileError(KstabError):
    """A model file cannot be parsed."""


class NonpositiveVolume(KstabError):
    """An S-invariant normalization needs a positive anticanonical volume."""


class OriginNotInterior(KstabError):
    """Polar duality needs the origin strictly inside the polytope."""


class DegeneratePolytope(KstabError):
    """The point set does not span a full-dimensional polytope."""


class NotReflexive(KstabError):
    """A toric criterion is only defined for reflexive polytopes."""
