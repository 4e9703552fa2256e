"""Exception hierarchy shared by every module of the package."""


class PathLatError(ValueError):
    pass


class InvalidPath(PathLatError):
    pass


class NonzeroEndpoint(InvalidPath):
    pass


class BelowAxis(InvalidPath):
    pass


class IllegalStep(InvalidPath):
    pass


class UnpairedFlat(InvalidPath):
    pass


class WidthMismatch(InvalidPath):
    pass


class SizeLimitExceeded(PathLatError):
    pass


class NonIntegralRank(PathLatError):
    pass


class FamilyMismatch(PathLatError):
    pass


class ClosureViolation(PathLatError):
    pass


class NotComparable(PathLatError):
    pass


class NotIsomorphic(PathLatError):
    pass


class NotCoprime(PathLatError):
    pass


class NotInLattice(PathLatError):
    pass


class SpectrumNotRanked(PathLatError):
    pass


class NoClosedForm(PathLatError):
    pass


class NotQuasiJoinIrreducible(PathLatError):
    pass
