"""Exception hierarchy shared by all satnls modules."""


class SatnlsError(Exception):
    """Base class for all package errors."""


class InvalidDimension(SatnlsError):
    pass


class InvalidSize(SatnlsError):
    pass


class NonFiniteInput(SatnlsError):
    pass


class GridMismatch(SatnlsError):
    pass


class InvalidExponent(SatnlsError):
    pass


class ComplexPotential(SatnlsError):
    pass


class InvalidSection(SatnlsError):
    pass


class UnknownKind(SatnlsError):
    pass


class DegenerateInput(SatnlsError):
    pass


class ZeroField(DegenerateInput):
    pass


class LinearSolveDiverged(SatnlsError):
    pass


class FixedPointDiverged(SatnlsError):
    pass


class TruncationInvalid(SatnlsError):
    """Boundary shell carries more L2 mass than the configured threshold."""


class EmptySeries(SatnlsError):
    pass


class InsufficientData(SatnlsError):
    pass


class NoPositiveConstant(SatnlsError):
    pass


class InvalidTime(SatnlsError):
    pass


class MissingDiagnostics(SatnlsError):
    pass


class UnknownScenario(SatnlsError):
    pass


class UnsupportedDimension(SatnlsError):
    pass


class ConfigError(SatnlsError):
    """Base class for run-configuration file problems (CLI exit code 2)."""


class MissingKey(ConfigError):
    pass


class UnknownKey(ConfigError):
    pass


class BadValue(ConfigError):
    pass


class ValidationError(ConfigError):
    pass
