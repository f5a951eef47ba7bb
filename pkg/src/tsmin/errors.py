"""Exception hierarchy shared across the pipeline.

Every error carries a short machine-readable ``kind`` and the exit code the
CLI maps it to (1 for data/config problems, 2 for internal failures).
"""

from __future__ import annotations


class TsminError(Exception):
    """Base class for all tool errors."""

    kind = "internal"
    exit_code = 2


class ConfigError(TsminError):
    kind = "config"
    exit_code = 1


class DataError(TsminError):
    kind = "data"
    exit_code = 1


class FrontendError(DataError):
    """Lexical or structural failure while reading test source."""

    kind = "frontend"

    def __init__(self, message, *, file=None, line=None, col=None):
        self.file = file
        self.line = line
        self.col = col
        where = ""
        if file is not None:
            where += f"{file}:"
        if line is not None:
            where += f"{line}:"
            if col is not None:
                where += f"{col}:"
        super().__init__(f"{where} {message}" if where else message)


class AstFormatError(DataError):
    """Malformed AST document; message names the offending path."""

    kind = "ast-format"


class AstStructureError(DataError):
    """Well-formed document describing an impossible tree."""

    kind = "ast-structure"


class MatrixFormatError(DataError):
    """Unparseable or inconsistent similarity-matrix file."""

    kind = "matrix-format"


class StalenessError(DataError):
    """Roster/digest mismatch when reusing persisted artifacts."""

    kind = "stale"


class FitnessUndefinedError(ConfigError):
    """Fitness requested for a subset too small to score."""

    kind = "fitness-undefined"


class InternalError(TsminError):
    """Invariant violation; always a bug, never a data problem."""

    kind = "internal"
