"""Exception types shared across the orchestrator."""


class QorcError(Exception):
    """Base class for all orchestrator errors."""


class QasmSyntaxError(QorcError):
    """Malformed OpenQASM input. Carries the 1-based source position."""

    def __init__(self, message, line, col):
        super().__init__(f"{message} (line {line}, col {col})")
        self.line = line
        self.col = col


class UnsupportedGateError(QorcError):
    """Gate outside the supported OpenQASM 2.0 subset."""


class QasmIndexError(QorcError, IndexError):
    """Out-of-range register access in a QASM program."""


class InvalidParamsError(QorcError):
    """Backend generation parameters violate their invariants."""


class SchemaError(QorcError):
    """Registry or job document failed validation. Names the offending field."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class NotCliffordError(QorcError):
    """Stabilizer simulation requested for a non-Clifford circuit."""


class MissingEdgeRateError(QorcError):
    """Noisy simulation hit a 2-qubit gate with no error-rate entry."""


class TooManyQubitsError(QorcError):
    """Statevector simulation beyond the desk-scale qubit cap."""


class EmptyDistributionError(QorcError):
    """Fidelity requested between empty outcome distributions."""


class Unsupported3QGateError(QorcError):
    """Only ccx is decomposable among 3-qubit gates."""


class TooFewQubitsError(QorcError):
    """Circuit does not fit on the target backend."""


class InvalidEmbeddingError(QorcError):
    """Embedding maps a required interaction onto a missing coupling edge."""


class NoCandidatesError(QorcError):
    """Selection requested from a score table with no successful entries."""


class QueueFullError(QorcError):
    """Job queue is at capacity."""


class ValidationError(QorcError):
    """Job specification violates its invariants."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
