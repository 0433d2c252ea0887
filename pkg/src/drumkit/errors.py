"""Exception types shared across the package."""


class DrumkitError(Exception):
    """Base class for all drumkit errors."""


class UnknownSymbol(DrumkitError):
    """A generator word uses a letter with no definition."""


class UnknownPair(DrumkitError):
    """Requested catalog pair id does not exist."""


class DegreeMismatch(DrumkitError):
    """Permutations of different degrees were combined."""


class GroupTooLarge(DrumkitError):
    """Group closure exceeded the configured element cap."""


class NotSameGroup(DrumkitError):
    """Generator pairing does not extend to a group isomorphism."""

    def __init__(self, message: str, witness: str | None = None):
        super().__init__(message)
        self.witness = witness


class InvalidSignature(DrumkitError):
    """Malformed orbifold signature."""


class BadGluing(DrumkitError):
    """An edge gluing is not an involution."""


class Disconnected(DrumkitError):
    """Tile adjacency graph is not connected."""


class NotBipartite(DrumkitError):
    """Tile adjacency graph admits no proper 2-coloring."""


class InconsistentTiling(DrumkitError):
    """Boundary corner data is incompatible with the ambient corner orders."""


class NoTransplant(DrumkitError):
    """Label propagation contradicts itself or yields no valid map."""


class SignObstruction(DrumkitError):
    """Parity signs fail the intertwining identity."""


class NotReducible(DrumkitError):
    """Gram matrix does not reduce to one diagonal and one off-diagonal value."""


class NoSolution(DrumkitError):
    """Norm-preserving equations have no real solution."""


class NotHomophonicMap(DrumkitError):
    """Special-point multiplier is undefined or inconsistent for this map."""


class ConeManifold(DrumkitError):
    """Interior vertex angles do not sum to 2*pi.

    Carries the offending vertex cycles and their angle deficits.
    """

    def __init__(self, message: str, vertices=None, deficits=None):
        super().__init__(message)
        self.vertices = list(vertices or [])
        self.deficits = list(deficits or [])


class InconsistentRealization(DrumkitError):
    """Placements depend on the spanning tree (holonomy failure)."""


class RefusedOverlappingDomain(DrumkitError):
    """Refinement refused because the domain self-overlaps."""


class DegenerateElement(DrumkitError):
    """Mesh contains a zero-area triangle."""


class SolverDidNotConverge(DrumkitError):
    """Eigenvalue iteration hit its cap before reaching tolerance."""


class IncomparableSpectra(DrumkitError):
    """Spectra differ in boundary condition or refinement level."""


class SeamViolation(DrumkitError):
    """Transplanted nodal values disagree at glued mesh nodes."""


class PointNotInMesh(DrumkitError):
    """Requested evaluation point is not a mesh vertex."""
