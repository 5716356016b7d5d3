"""Exception types raised across the package."""


class RootGradeError(Exception):
    """Base class for all errors raised by rootgrade."""


class DimensionError(RootGradeError, ValueError):
    pass


class NoComplement(RootGradeError):
    """No action-stable complement exists for the requested submodule."""


class StarNotInvolutive(RootGradeError):
    pass


class UnknownName(RootGradeError, KeyError):
    pass


class WrongKind(RootGradeError):
    pass


class NotInHF(RootGradeError):
    """A subspace that was required to lie in HF(b) does not."""


class NotUniform(RootGradeError):
    pass


class RankTooSmall(RootGradeError):
    pass


class NotInGS(RootGradeError):
    pass


class NotClosed(RootGradeError):
    pass


class InvalidCocycle(RootGradeError):
    pass


class NotPerfect(RootGradeError):
    pass


class TauGNonzero(RootGradeError):
    pass


class DNotTrivial(RootGradeError):
    pass


class CertificateFailure(RootGradeError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class QuadrupleFormatError(RootGradeError):
    """Malformed quadruple or structure-constant file."""

    def __init__(self, message, location=""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
