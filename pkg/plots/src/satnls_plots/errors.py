class PlotsError(Exception):
    """Base class for figure rendering failures."""


class MissingInput(PlotsError):
    """An input artifact file does not exist."""


class SchemaError(PlotsError):
    """An input artifact exists but does not match the documented schema."""


class InconsistentInput(PlotsError):
    """Artifacts contradict each other (for example a bound that fails to
    dominate the series it claims to bound)."""
