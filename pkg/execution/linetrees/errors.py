"""linetrees.errors
-----------------

Exception hierarchy shared by the graph, counting and verification modules.
The CLI maps each class to a process exit code.
"""


class LineTreeError(Exception):
    """Root of every error raised by the linetrees package."""

    exit_code: int = 1


class GraphArgumentError(LineTreeError, ValueError):
    """An argument names an unknown edge/vertex or is otherwise inconsistent."""

    exit_code = 2


class GraphParseError(GraphArgumentError):
    """A GraphFile could not be parsed.

    Attributes:
        line_no: 1-based line number of the offending line (0 for whole-file errors).
    """

    exit_code = 3

    def __init__(self, message: str, line_no: int = 0):
        self.line_no = line_no
        prefix = f"line {line_no}: " if line_no else ""
        super().__init__(f"{prefix}{message}")


class DomainError(LineTreeError, ValueError):
    """A formula or algorithm precondition does not hold for the given graph.

    Attributes:
        component: Optional vertex set identifying the failing part of the graph.
    """

    exit_code = 4

    def __init__(self, message: str, component: frozenset[int] | None = None):
        self.component = component
        if component is not None:
            message = f"{message} (component {sorted(component)})"
        super().__init__(message)


class ResourceLimitError(LineTreeError, RuntimeError):
    """An enumeration or retry loop would exceed its configured cap."""

    exit_code = 4


class GeneratorAuditError(LineTreeError, RuntimeError):
    """A generator produced a graph outside the class it was asked for."""

    exit_code = 1


class NonIntegralResultError(LineTreeError, ArithmeticError):
    """A formula that must evaluate to an integer produced a proper fraction."""

    exit_code = 1
