"""
Exception hierarchy shared by every package.

Each class carries the exit code the command line maps it to:
1 for input and signature problems, 2 for axiom or consistency
violations, 3 for resource caps.
"""


class ToolkitError(Exception):
    """Base class for every error raised by the toolkit."""

    exit_code = 1


class StructuralError(ToolkitError):
    """Operands do not fit together (variable lists, bases, permutations)."""


class InputError(ToolkitError):
    """Malformed text input. `location` is `file:line:col` when known."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class UnsupportedError(ToolkitError):
    """The input lies outside the signatures this toolkit computes."""


class AxiomError(ToolkitError):
    exit_code = 2


class InternalError(ToolkitError):
    """A consistency check between two computations of the same quantity failed."""

    exit_code = 2


class ResourceError(ToolkitError):
    exit_code = 3
