"""Exception types shared across the package."""


class PBRError(Exception):
    """Base class for every error raised by :mod:`pbr`."""


class InvalidPermutation(PBRError, ValueError):
    pass


class ClosureExceedsCap(PBRError):
    pass


class SpecParseError(PBRError, ValueError):
    pass


class ParentMismatch(PBRError, ValueError):
    pass


class NotNormal(PBRError, ValueError):
    pass


class NotSurjective(PBRError, ValueError):
    pass


class NotDihedral(PBRError, ValueError):
    pass


class NotNormalMember(PBRError, ValueError):
    pass


class NotBasic(PBRError, ValueError):
    pass


class NotIntersectionClosed(PBRError, ValueError):
    """A family of subgroup classes fails intersection closure.

    ``witness`` holds the offending pair of subgroups ``(H, K)``; their
    intersection lies outside the family.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SearchCapExceeded(PBRError):
    pass


class InternalInconsistency(PBRError, RuntimeError):
    """A computation contradicted a theorem it relies on; indicates a bug."""


class VerificationFailed(PBRError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnknownSuite(PBRError, ValueError):
    pass
