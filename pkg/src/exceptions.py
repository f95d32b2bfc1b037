"""
Error types raised by the group determinant library.
"""


class GrpdetError(Exception):
    """Base class for all library errors."""


class NotPrime(GrpdetError):
    """The modulus p is not prime."""


class OrderMismatch(GrpdetError):
    """ord_p(r) differs from the requested n."""


class NotDivisor(GrpdetError):
    """n does not divide p-1."""


class PrimeMismatch(GrpdetError):
    """Operands live in cyclotomic or quadratic rings for different primes."""


class BadIndex(GrpdetError):
    """A conjugation or block index is divisible by p."""


class WrongShape(GrpdetError):
    """The group does not have the shape an operation requires."""


class NotInSubfield(GrpdetError):
    """A cyclotomic integer is not fixed by the required automorphisms."""


class OutOfRange(GrpdetError):
    """An integer argument lies outside its allowed range."""


class Zero(GrpdetError):
    """Zero was passed where a nonzero integer is required."""


class ZeroInput(GrpdetError):
    """Membership was asked for the value 0."""


class InternalInconsistency(GrpdetError):
    """Two exact computations that must agree did not."""


class UnsupportedGroup(GrpdetError):
    """No complete decider or construction exists for this group."""


class BadS(GrpdetError):
    """The lemma parameter s is not coprime to n."""


class BadResidue(GrpdetError):
    """u or v is not a quadratic residue / non-residue as required."""


class TagGroupMismatch(GrpdetError):
    """A construction tag was used with a group it does not apply to."""


class PredictionMismatch(InternalInconsistency):
    """A construction's determinant differs from its prediction."""


class NotAchievable(GrpdetError):
    """The requested value is not an integer group determinant."""


class UnknownDecision(GrpdetError):
    """The decider could not settle the value within its configured bounds."""


class StorageFull(GrpdetError):
    """The census store could not be written."""


class CorruptCheckpoint(GrpdetError):
    """A census checkpoint is unreadable or inconsistent with its store."""


class ElementParseError(GrpdetError):
    """Element text could not be parsed."""
