"""Exception types shared across the package."""


class LayeredColoringError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(LayeredColoringError, ValueError):
    pass


class InvalidSpecError(InvalidInputError):
    pass


class InvalidColoringError(InvalidInputError):
    pass


class SizeError(InvalidInputError):
    """Input exceeds the hard cap of an exhaustive oracle."""


class ParseError(LayeredColoringError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class ValidationError(LayeredColoringError):
    """Inputs are well formed but inconsistent (bad decomposition, n mismatch, ...)."""

    def __init__(self, message, violations=()):
        self.violations = list(violations)
        super().__init__(message)


class DecompositionError(ValidationError):
    pass


class EmbeddingError(ValidationError):
    pass


class LinkageError(ValidationError):
    pass


class PipelineInvariantError(LayeredColoringError):
    def __init__(self, message, component=None):
        self.component = component
        if component is not None:
            message = f"{message} (component: {sorted(component)})"
        super().__init__(message)


class InternalError(LayeredColoringError):
    """A structural guarantee failed; always a bug."""
