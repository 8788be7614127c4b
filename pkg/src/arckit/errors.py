"""Exception types raised across the toolkit."""

from __future__ import annotations


class ArcKitError(Exception):
    """Base class for every error raised by arckit."""


class UnknownVertex(ArcKitError, KeyError):
    def __init__(self, vertex):
        super().__init__(vertex)
        self.vertex = vertex

    def __str__(self) -> str:
        return f"unknown vertex {self.vertex!r}"


class ParseError(ArcKitError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class InvalidModel(ArcKitError, ValueError):
    """A word that is not a well-formed arc or chord model."""


class PreconditionError(ArcKitError, ValueError):
    """Graph has a similar pair or a D-vertex where neither is allowed."""


class ModelMismatch(ArcKitError, ValueError):
    """A model does not represent the graph it was checked against."""


class NormalizationFailed(ArcKitError, RuntimeError):
    pass


class SizeCapExceeded(ArcKitError, ValueError):
    def __init__(self, what: str, size: int, cap: int):
        self.what, self.size, self.cap = what, size, cap
        super().__init__(
            f"{what}: input has {size} vertices, cap is {cap} (raise it with --cap)"
        )


class InvalidJoin(ArcKitError, ValueError):
    pass


class PartitionGap(ArcKitError, ValueError):
    def __init__(self, u, vertices):
        self.u, self.vertices = u, tuple(vertices)
        super().__init__(
            f"side partition of {u!r} misclassifies {', '.join(self.vertices)}"
        )


class FixtureInvalid(ArcKitError, AssertionError):
    """A fixture fails one of the premises its construction is meant to guarantee."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report
