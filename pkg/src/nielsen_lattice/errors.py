"""Exception hierarchy.

``InputError`` subclasses mean the caller handed us something malformed or
outside a documented precondition (CLI exit code 2).  ``ResourceError``
subclasses mean a search cap or a supported-regime boundary was hit (exit
code 3).  Everything else is a bug.
"""


class LatticeError(Exception):
    pass


class InputError(LatticeError):
    pass


class ResourceError(LatticeError):
    pass


# lattice-core
class OddRank1Parameter(InputError):
    pass


class ZeroScale(InputError):
    pass


class AmbientMismatch(InputError):
    pass


class DegenerateLattice(InputError):
    pass


class NotEvenLattice(InputError):
    pass


class ZeroVector(InputError):
    pass


# isometry
class NotAnIsometry(InputError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# group-rep
class CapExceeded(ResourceError):
    pass


class UnsupportedGroupExponent(ResourceError):
    pass


# enumeration
class NotDefinite(InputError):
    pass


class NodeCapExceeded(ResourceError):
    pass


# enriques
class EvenN(InputError):
    pass


class NTooSmall(InputError):
    pass


class BadIndex(InputError):
    pass


class NotTwoCongruence(InputError):
    pass


class IntegralityFailure(LatticeError):
    """Raised when an extension that theory says is integral is not."""


class BadSpheres(InputError):
    pass


class NegativeMukaiSquare(InputError):
    pass


class EvenChi(InputError):
    pass


# criterion
class NotCentralizing(InputError):
    pass


class NotOrientationPreserving(InputError):
    pass


class UnsupportedFamily(ResourceError):
    pass


class NotDividing(InputError):
    pass
