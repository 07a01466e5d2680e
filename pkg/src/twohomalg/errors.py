"""Exception types shared by every layer of the package."""


class InputError(ValueError):
    """Malformed or ill-typed input (shapes, rings, invalid morphisms)."""


class PreconditionError(InputError):
    """An operation's mathematical precondition does not hold."""


class ConstructionError(RuntimeError):
    """A multi-stage construction could not be completed."""


class CapacityError(RuntimeError):
    """An enumeration would exceed the configured size bound."""
