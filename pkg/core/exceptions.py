class BellKitError(ValueError):
    """Base class for every domain error raised by the apps."""


class ShapeError(BellKitError):
    """A table does not match the shape its scenario prescribes."""


class InvariantError(BellKitError):
    """A behavior, model or quantum object breaks one of its invariants."""


class ModeError(BellKitError):
    """Exact-only operation called with approximate data, or vice versa."""


class ParameterError(BellKitError):
    """An operation parameter is out of range."""


class SizeError(BellKitError):
    """A strategy enumeration would exceed the configured cap."""


class CoverageError(BellKitError):
    """Sample records do not cover every required setting pair."""


class ScenarioMismatchError(BellKitError):
    """Two objects that must share a scenario do not."""
