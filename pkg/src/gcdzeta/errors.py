"""Exception types shared by all gcdzeta modules."""


class DomainError(ValueError):
    """An argument lies outside the operation's domain."""


class ResourceError(RuntimeError):
    """Predicted work or memory exceeds the operation's guard."""


class NumericalError(ArithmeticError):
    """A numerical procedure cannot reach the requested accuracy."""
