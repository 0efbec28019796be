"""Exception hierarchy for tempolake.

Two broad groups: errors caused by user input (bad files, bad queries,
unknown names) and errors that indicate an internal inconsistency (a log
that no longer matches its table, a corrupt index). The CLI maps the
former to exit status 1 and the latter to exit status 2.
"""

from __future__ import annotations


class TempolakeError(Exception):
    """Base class for every error raised by this package."""


# ---------------------------------------------------------------------------
# user-facing errors (CLI exit status 1)


class UserError(TempolakeError):
    """Problems attributable to caller input or configuration."""


class IngestionError(UserError):
    """Malformed CSV input (ragged rows, bad quoting, undecodable bytes)."""


class SchemaError(UserError):
    """Structurally invalid table (duplicate headers, type violations)."""


class ConfigError(UserError):
    """Invalid configuration value or config file."""


class QueryError(UserError):
    """Invalid discovery query (missing fields, empty probe, bad clause)."""


class VersionRangeError(QueryError):
    """Requested ordinal outside a family's version chain."""


class UnsupportedClauseError(QueryError):
    """Version clause cannot be evaluated for this family (e.g. ASOF
    against a family with no temporal signal)."""


class InsufficientOverlapError(QueryError):
    """Implicit version selection had fewer than the minimum joined
    entities in every version."""


class NotFoundError(UserError):
    """Unknown family id or table id."""


# ---------------------------------------------------------------------------
# internal errors (CLI exit status 2)


class InternalError(TempolakeError):
    """Inconsistencies inside the engine's own artifacts."""


class LogConflictError(InternalError):
    """A change op references a column or key the table does not have,
    or would create one it already has."""


class StaleLogError(InternalError):
    """A change op's saved context disagrees with the table it is being
    applied to (old value mismatch, saved row mismatch)."""


class SynthesisError(InternalError):
    """Change-log synthesis could not produce a log that replays exactly."""


class TrainingError(InternalError):
    """Degenerate training input (e.g. a single class)."""


class DegenerateFitError(InternalError):
    """Affine fit attempted on a constant x column."""


class InsufficientDataError(InternalError):
    """Affine fit attempted on fewer than two paired points."""


class SignalUnavailableError(InternalError):
    """An ordering signal was requested from tables that cannot supply it."""


class BuildError(InternalError):
    """Index build inputs are mutually inconsistent."""


class IndexCorruptionError(InternalError):
    """Persisted index state is missing or damaged."""
