"""Exception types shared across the package."""


class CodedLRError(Exception):
    """Base class for all errors raised by this package."""


class ZeroInverse(CodedLRError):
    """Multiplicative inverse of zero requested."""


class OutOfRange(CodedLRError):
    """Signed value outside the representable range of the field embedding."""


class DimensionMismatch(CodedLRError):
    """Matrix or vector dimensions do not agree."""


class OverflowRisk(CodedLRError):
    """Quantization parameters admit values that could wrap around mod p."""


class InsufficientWorkers(CodedLRError):
    """Fewer workers than the recovery threshold requires."""


class FieldTooSmall(CodedLRError):
    """Not enough distinct field elements for the requested evaluation points."""


class NotEnoughPoints(CodedLRError):
    """Too few interpolation points for the requested degree bound."""


class DuplicateEvaluationPoint(CodedLRError):
    """Two interpolation or sharing points coincide."""


class NotEnoughResults(CodedLRError):
    """Fewer worker results than the recovery threshold."""


class NotEnoughShares(CodedLRError):
    """Fewer secret shares than reconstruction requires."""


class InsufficientParties(CodedLRError):
    """Too few parties for degree reduction (need N >= 2T+1)."""


class SingularNormalEquations(CodedLRError):
    """Least-squares fit grid is degenerate."""


class WorkerUnreachable(CodedLRError):
    """A worker could not be contacted."""


class RoundTimeout(CodedLRError):
    """Fewer than threshold results arrived before the round deadline."""


class ProtocolViolation(CodedLRError):
    """A worker received a message its state machine does not allow."""


class FormatError(CodedLRError):
    """Malformed serialized matrix, frame, or dataset file."""
