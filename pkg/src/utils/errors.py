# project_root/src/utils/errors.py
"""
Exception hierarchy shared by every layer of the solver.

The CLI turns any `OmtBitsError` into an SMT-LIB `(error "...")` line;
anything else is a bug and gets a traceback in the log.
"""

from typing import Optional


class OmtBitsError(Exception):
    """Base class for all user-facing errors."""


class SortError(OmtBitsError):
    """Operands of different sorts or widths were combined."""


class SmtLibSyntaxError(OmtBitsError):
    """Lexical or syntax error in SMT-LIB input, located at line:column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class SmtLibSortError(OmtBitsError):
    """A well-formed expression that is ill-sorted."""

    def __init__(self, message: str, expression: str = "", line: int = 0, column: int = 0):
        where = f"{line}:{column}: " if line else ""
        suffix = f" in {expression}" if expression else ""
        super().__init__(f"{where}{message}{suffix}")
        self.expression = expression
        self.line = line
        self.column = column


class UnsupportedConstructError(OmtBitsError):
    """An operator outside the supported fragment (e.g. fp.add)."""

    def __init__(self, operator: str, line: int = 0, column: int = 0):
        where = f"{line}:{column}: " if line else ""
        super().__init__(f"{where}unsupported operator '{operator}'")
        self.operator = operator
        self.line = line
        self.column = column


class BlastError(OmtBitsError):
    """Unknown variable or bit index out of range in a blast map lookup."""


class EngineError(OmtBitsError):
    """Failure inside an optimization engine, optionally tagged with the command index."""

    def __init__(self, message: str, command_index: Optional[int] = None):
        prefix = f"command {command_index}: " if command_index is not None else ""
        super().__init__(f"{prefix}{message}")
        self.command_index = command_index


class OracleGuardrailError(OmtBitsError):
    """Brute-force enumeration requested on an objective that is too wide."""


class InternalError(OmtBitsError):
    """An internal invariant was violated."""
