"""Exception hierarchy shared by all modules."""


class WallsError(ValueError):
    """Base class for domain errors (mapped to exit code 2 by the CLI)."""


class ZeroVector(WallsError):
    pass


class NotSpherical(WallsError):
    pass


class BoundTooLarge(WallsError):
    pass


class VectorNotInLattice(WallsError):
    pass


class DegenerateLattice(WallsError):
    pass


class NotRankTwo(WallsError):
    pass


class NotHyperbolic(WallsError):
    pass


class AmbiguousSign(WallsError):
    """Re Z(u)/Z(v) vanishes at the evaluation point; move along the wall."""


class UnrepresentedWall(WallsError):
    """The lattice has no wall curve meeting the upper half-plane slice."""


class NotTransverse(WallsError):
    pass


class UnsupportedVector(WallsError):
    pass


class CentralChargeVanishes(WallsError):
    pass


class WindowEmpty(WallsError):
    pass
