"""Exception hierarchy.

``GraphError`` and ``ParseError`` are input errors (bad graph data or file
syntax).  ``DomainError`` subclasses mean the input is well formed but is not
the resolution graph of a rational singularity.  ``IdentityFailure`` means an
exact identity that must hold for rational graphs did not; it always points at
a bug or at a precondition that slipped through.
"""


class GraphError(ValueError):
    def __init__(self, message: str, token: object = None):
        super().__init__(message)
        self.token = token


class ParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DomainError(Exception):
    pass


class EmptyGraph(DomainError):
    pass


class WeightBelowTwo(DomainError):
    pass


class NotConnected(DomainError):
    pass


class NotNegativeDefinite(DomainError):
    pass


class NotRational(DomainError):
    pass


class IdentityFailure(AssertionError):
    pass
