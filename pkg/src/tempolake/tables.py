"""Table model: typed cells, CSV ingestion, type inference, and the
structural probes (temporal columns, entity keys) everything else
builds on.

Cells are plain Python values. ``None`` is the null cell; ``int``,
``float``, ``str`` and :class:`Timestamp` carry the four typed
variants. Equality between cells is variant-and-value exact; there is
no cross-variant coercion anywhere in the model.
"""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import IO, Iterable, Union

from .errors import IngestionError, SchemaError

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

_INT_RE = re.compile(r"^[+-]?[0-9]+$")

# Closed list so inference stays reproducible.
_TS_FORMATS = ("%Y-%m-%d", "%Y-%m-%dT%H:%M:%S", "%Y-%m-%dT%H:%M:%SZ", "%Y/%m/%d")


@dataclass(frozen=True, order=True)
class Timestamp:
    """UTC instant, seconds since the epoch."""

    seconds: int

    def iso(self) -> str:
        dt = datetime.fromtimestamp(self.seconds, tz=timezone.utc)
        if self.seconds % 86400 == 0:
            return dt.strftime("%Y-%m-%d")
        return dt.strftime("%Y-%m-%dT%H:%M:%SZ")

    def __repr__(self) -> str:  # keeps test diffs readable
        return f"Timestamp({self.iso()})"


Cell = Union[None, int, float, str, Timestamp]


class ColType(Enum):
    INTEGER = "integer"
    REAL = "real"
    TEXT = "text"
    TIMESTAMP = "timestamp"


def parse_timestamp(text: str) -> Timestamp | None:
    """Parse under the accepted formats, None when none match."""
    s = text.strip()
    for fmt in _TS_FORMATS:
        try:
            dt = datetime.strptime(s, fmt)
        except ValueError:
            continue
        dt = dt.replace(tzinfo=timezone.utc)
        return Timestamp(int(dt.timestamp()))
    return None


def _parse_int(text: str) -> int | None:
    s = text.strip()
    if not _INT_RE.match(s):
        return None
    v = int(s)
    if v < INT64_MIN or v > INT64_MAX:
        return None
    return v


def _parse_real(text: str) -> float | None:
    s = text.strip()
    if not s or "_" in s:
        return None
    if _INT_RE.match(s):
        # Integer-looking text wider than 64 bits must not silently
        # round through float.
        v = int(s)
        if v < INT64_MIN or v > INT64_MAX:
            return None
        return float(v)
    try:
        v = float(s)
    except ValueError:
        return None
    if not math.isfinite(v):
        return None
    return v


def cell_key(value: Cell) -> tuple:
    """Hashable tag+value form of a cell; exact across variants."""
    if value is None:
        return ("n",)
    t = type(value)
    if t is int:
        return ("i", value)
    if t is float:
        return ("r", value)
    if t is str:
        return ("s", value)
    if t is Timestamp:
        return ("ts", value.seconds)
    raise TypeError(f"not a cell: {value!r}")


def cells_equal(a: Cell, b: Cell) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return type(a) is type(b) and a == b


def format_cell(value: Cell) -> str:
    """Serialize one cell to its CSV text form. Null becomes the
    empty field; floats use repr so they reload bit-exact."""
    if value is None:
        return ""
    t = type(value)
    if t is int:
        return str(value)
    if t is float:
        return repr(value)
    if t is str:
        return value
    if t is Timestamp:
        return value.iso()
    raise TypeError(f"not a cell: {value!r}")


def parse_cell(raw: str, col_type: ColType) -> Cell:
    """Parse raw CSV text under a declared column type."""
    if raw == "":
        return None
    if col_type is ColType.TEXT:
        return raw
    if col_type is ColType.INTEGER:
        v = _parse_int(raw)
        if v is None:
            raise SchemaError(f"value {raw!r} is not a 64-bit integer")
        return v
    if col_type is ColType.REAL:
        v = _parse_real(raw)
        if v is None:
            raise SchemaError(f"value {raw!r} is not a finite real")
        return v
    ts = parse_timestamp(raw)
    if ts is None:
        raise SchemaError(f"value {raw!r} is not a recognized timestamp")
    return ts


def cell_matches_type(value: Cell, col_type: ColType) -> bool:
    if value is None:
        return True
    t = type(value)
    if col_type is ColType.INTEGER:
        return t is int
    if col_type is ColType.REAL:
        return t is float and math.isfinite(value)
    if col_type is ColType.TEXT:
        return t is str
    return t is Timestamp


def normalize_header(header: str) -> str:
    """Lowercase, trim, collapse inner whitespace to one underscore."""
    return re.sub(r"\s+", "_", header.strip().lower())


def header_tokens(name: str) -> set[str]:
    """Word tokens of a normalized header name."""
    return {tok for tok in re.split(r"[^a-z0-9]+", name) if tok}


@dataclass(frozen=True)
class ColumnRef:
    table_id: str
    column_index: int
    column_name: str


@dataclass
class Table:
    """Rectangular typed grid. Treated as immutable after construction;
    every operation that changes a table returns a new one."""

    table_id: str
    name: str
    headers: list[str]
    col_types: list[ColType]
    rows: list[list[Cell]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.headers = [normalize_header(h) for h in self.headers]
        if len(set(self.headers)) != len(self.headers):
            dupes = sorted({h for h in self.headers if self.headers.count(h) > 1})
            raise SchemaError(
                f"table {self.table_id!r}: duplicate normalized header(s) {dupes}"
            )
        if len(self.col_types) != len(self.headers):
            raise SchemaError(
                f"table {self.table_id!r}: {len(self.col_types)} column types "
                f"for {len(self.headers)} headers"
            )
        for i, row in enumerate(self.rows):
            if len(row) != len(self.headers):
                raise SchemaError(
                    f"table {self.table_id!r}: row {i} has {len(row)} cells, "
                    f"expected {len(self.headers)}"
                )
            for j, value in enumerate(row):
                if not cell_matches_type(value, self.col_types[j]):
                    raise SchemaError(
                        f"table {self.table_id!r}: cell ({i},{self.headers[j]}) "
                        f"value {value!r} does not match {self.col_types[j].value}"
                    )

    @property
    def arity(self) -> int:
        return len(self.headers)

    @property
    def row_count(self) -> int:
        return len(self.rows)

    def column_index(self, name: str) -> int:
        try:
            return self.headers.index(name)
        except ValueError:
            raise SchemaError(f"table {self.table_id!r} has no column {name!r}") from None

    def has_column(self, name: str) -> bool:
        return name in self.headers

    def column_values(self, j: int) -> list[Cell]:
        return [row[j] for row in self.rows]

    def distinct_keys(self, j: int) -> set[tuple]:
        """Distinct non-Null cell keys of one column."""
        return {cell_key(row[j]) for row in self.rows if row[j] is not None}

    def copy_rows(self) -> list[list[Cell]]:
        return [list(row) for row in self.rows]

    def with_identity(self, table_id: str, name: str | None = None) -> "Table":
        return Table(
            table_id=table_id,
            name=self.name if name is None else name,
            headers=list(self.headers),
            col_types=list(self.col_types),
            rows=self.copy_rows(),
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.headers)
        for row in self.rows:
            writer.writerow([format_cell(v) for v in row])
        return buf.getvalue()

    def cell_count(self) -> int:
        return len(self.rows) * self.arity


def infer_types(columns: list[list[str]]) -> list[ColType]:
    """Per-column variant from raw text. Order of attempts: Integer,
    Real, Timestamp, Text. Empty strings are missing and do not vote.
    An all-empty column is Text."""
    out: list[ColType] = []
    for col in columns:
        values = [v for v in col if v != ""]
        if not values:
            out.append(ColType.TEXT)
        elif all(_parse_int(v) is not None for v in values):
            out.append(ColType.INTEGER)
        elif all(_parse_real(v) is not None for v in values):
            out.append(ColType.REAL)
        elif all(parse_timestamp(v) is not None for v in values):
            out.append(ColType.TIMESTAMP)
        else:
            out.append(ColType.TEXT)
    return out


def _decode(source: Union[bytes, str, IO[bytes], IO[str]]) -> str:
    if isinstance(source, str):
        return source
    if isinstance(source, bytes):
        try:
            return source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise IngestionError(f"input is not valid UTF-8: {exc}") from None
    data = source.read()
    return _decode(data)


def load_table(
    source: Union[bytes, str, IO[bytes], IO[str]],
    table_id: str,
    name: str | None = None,
) -> Table:
    """Load one CSV file into a typed Table.

    The first record is the header row; empty fields become Null. Row
    numbers in errors count physical records, header included.
    """
    text = _decode(source)
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        records = list(reader)
    except csv.Error as exc:
        raise IngestionError(f"table {table_id!r}: malformed CSV: {exc}") from None
    if not records:
        raise IngestionError(f"table {table_id!r}: empty input, missing header row")

    raw_headers = records[0]
    headers = [normalize_header(h) for h in raw_headers]
    if len(set(headers)) != len(headers):
        dupes = sorted({h for h in headers if headers.count(h) > 1})
        raise SchemaError(f"table {table_id!r}: duplicate normalized header(s) {dupes}")

    width = len(headers)
    body = records[1:]
    for i, record in enumerate(body):
        if not record and width == 1:
            # a blank line is how a lone Null cell serializes
            record = [""]
            body[i] = record
        if len(record) != width:
            # +2: header is row 1, first data record is row 2
            raise IngestionError(
                f"table {table_id!r}: row {i + 2} has {len(record)} fields, "
                f"expected {width}"
            )

    columns = [[record[j] for record in body] for j in range(width)]
    col_types = infer_types(columns)
    rows = [[parse_cell(record[j], col_types[j]) for j in range(width)] for record in body]
    return Table(
        table_id=table_id,
        name=name if name is not None else table_id,
        headers=headers,
        col_types=col_types,
        rows=rows,
    )


def detect_temporal_columns(t: Table) -> list[ColumnRef]:
    """Timestamp columns, plus Text columns that are at least 95%
    parseable timestamps; ordered by column index."""
    found: list[ColumnRef] = []
    for j, col_type in enumerate(t.col_types):
        if col_type is ColType.TIMESTAMP:
            found.append(ColumnRef(t.table_id, j, t.headers[j]))
        elif col_type is ColType.TEXT:
            values = [v for v in t.column_values(j) if v is not None]
            if not values:
                continue
            parsed = sum(1 for v in values if parse_timestamp(v) is not None)
            if parsed / len(values) >= 0.95:
                found.append(ColumnRef(t.table_id, j, t.headers[j]))
    return found


def infer_entity_key(t: Table) -> ColumnRef | None:
    """Leftmost column whose values are all non-Null and distinct."""
    for j in range(t.arity):
        values = t.column_values(j)
        if any(v is None for v in values):
            continue
        keys = {cell_key(v) for v in values}
        if len(keys) == len(values):
            return ColumnRef(t.table_id, j, t.headers[j])
    return None


def column_as_timestamps(t: Table, ref: ColumnRef) -> list[Timestamp]:
    """Values of a temporal column as Timestamps, Nulls and junk
    skipped. Works for both Timestamp and mostly-temporal Text columns."""
    out: list[Timestamp] = []
    for v in t.column_values(ref.column_index):
        if v is None:
            continue
        if type(v) is Timestamp:
            out.append(v)
        elif type(v) is str:
            ts = parse_timestamp(v)
            if ts is not None:
                out.append(ts)
    return out
