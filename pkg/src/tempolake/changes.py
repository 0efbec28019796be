"""Invertible change operators and change-log application.

A change log carries every edit needed to turn version k of a table
into version k+1, with enough saved context that the log can be
inverted exactly. Rows are addressed by a key value (an entity-key
column named in the log header) rather than by row index, so logs stay
valid under row reordering of unrelated rows; tables with no usable
key column fall back to full-row-hash identity.

Frames and positions, the part worth being precise about:

* Ops apply in canonical group order: renames, column adds, column
  drops, affine transforms, row deletes, row adds, cell updates.
* Column positions (AddColumn, DropColumn) are indices into the
  "wide" schema: the old headers after renames, with all added
  columns inserted and no column dropped yet. Both directions of a
  log see that same schema, which is what lets invert_log swap
  AddColumn and DropColumn verbatim.
* DeleteRow saves the row as it looked when the log started (the
  entry snapshot, old schema); AddRow carries the row in the final
  schema. Row positions are indices in the table where the row fully
  exists: the old table for deletes, the new table for adds.
* Keys in per-row maps (AddColumn values, DropColumn saved values)
  are entry keys of the table the log is applied to; keys that are
  absent simply fill with Null and are not validated, which is what
  makes a log and its inverse agree about rows only one side has.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .errors import IndexCorruptionError, LogConflictError, StaleLogError
from .tables import (
    Cell,
    ColType,
    Table,
    Timestamp,
    cell_matches_type,
    cells_equal,
    normalize_header,
)

# tolerance for snapping an affine image back onto the integer grid
_INT_SNAP = 1e-6


@dataclass(frozen=True)
class RenameColumn:
    old_name: str
    new_name: str


@dataclass(frozen=True)
class AddColumn:
    name: str
    position: int  # index in the wide (post-rename, post-add) schema
    col_type: ColType
    values: Mapping[str, Cell] = field(default_factory=dict)  # entry key -> cell


@dataclass(frozen=True)
class DropColumn:
    name: str
    position: int  # index in the wide schema, same frame as AddColumn
    col_type: ColType
    saved_values: Mapping[str, Cell] = field(default_factory=dict)


@dataclass(frozen=True)
class TransformColumnAffine:
    name: str
    a: float
    b: float
    # non-numeric pre-images would be saved here; typed tables make the
    # situation unrepresentable, so the map stays empty on every path
    preimages: Mapping[str, Cell] = field(default_factory=dict)


@dataclass(frozen=True)
class DeleteRow:
    key: str
    row: tuple  # entry snapshot, old schema
    position: int  # row index in the old table


@dataclass(frozen=True)
class AddRow:
    key: str
    row: tuple  # final schema
    position: int  # row index in the new table


@dataclass(frozen=True)
class UpdateCell:
    key: str
    column: str
    old_value: Cell
    new_value: Cell


ChangeOp = Union[
    RenameColumn,
    AddColumn,
    DropColumn,
    TransformColumnAffine,
    DeleteRow,
    AddRow,
    UpdateCell,
]


@dataclass(frozen=True)
class ChangeLog:
    family_id: str
    from_ordinal: int
    to_ordinal: int
    key_column: str | None
    ops: tuple


# ---------------------------------------------------------------------------
# row keys


def serialize_key(value: Cell) -> str:
    """Key-cell text form, variant-tagged so 40 and "40" never collide."""
    t = type(value)
    if t is int:
        return f"i:{value}"
    if t is float:
        return f"r:{value!r}"
    if t is str:
        return f"s:{value}"
    if t is Timestamp:
        return f"ts:{value.seconds}"
    raise LogConflictError(f"cell {value!r} cannot serve as a row key")


def hash_row(row: Iterable[Cell]) -> str:
    payload = json.dumps([encode_cell(v) for v in row], ensure_ascii=False)
    return "h:" + hashlib.sha1(payload.encode("utf-8")).hexdigest()[:16]


def entry_keys(table: Table, key_column: str | None) -> list[str]:
    """One key per row, aligned with table.rows.

    Key-column keys must be non-Null and unique; hash keys get an
    occurrence suffix so duplicate rows stay distinguishable.
    """
    if key_column is None:
        seen: dict[str, int] = {}
        keys = []
        for row in table.rows:
            base = hash_row(row)
            occ = seen.get(base, 0)
            seen[base] = occ + 1
            keys.append(f"{base}#{occ}")
        return keys
    j = table.column_index(key_column)
    keys = []
    for i, row in enumerate(table.rows):
        if row[j] is None:
            raise LogConflictError(
                f"table {table.table_id!r}: key column {key_column!r} is Null at row {i}"
            )
        keys.append(serialize_key(row[j]))
    if len(set(keys)) != len(keys):
        raise LogConflictError(
            f"table {table.table_id!r}: key column {key_column!r} is not unique"
        )
    return keys


# ---------------------------------------------------------------------------
# canonical order


_GROUP_RANK = {
    RenameColumn: 0,
    AddColumn: 1,
    DropColumn: 2,
    TransformColumnAffine: 3,
    DeleteRow: 4,
    AddRow: 5,
    UpdateCell: 6,
}


def canonical_sort_key(op: ChangeOp) -> tuple:
    rank = _GROUP_RANK[type(op)]
    if isinstance(op, RenameColumn):
        return (rank, op.old_name, "")
    if isinstance(op, (AddColumn, DropColumn, TransformColumnAffine)):
        return (rank, op.name, "")
    if isinstance(op, (DeleteRow, AddRow)):
        return (rank, "", op.key)
    return (rank, op.column, op.key)


def canonicalize_ops(ops: Iterable[ChangeOp]) -> tuple:
    return tuple(sorted(ops, key=canonical_sort_key))


def make_log(
    family_id: str,
    from_ordinal: int,
    to_ordinal: int,
    key_column: str | None,
    ops: Iterable[ChangeOp],
) -> ChangeLog:
    log = ChangeLog(family_id, from_ordinal, to_ordinal, key_column, canonicalize_ops(ops))
    validate_log(log)
    return log


# ---------------------------------------------------------------------------
# static validation


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise LogConflictError(f"invalid log: {message}")


def validate_log(log: ChangeLog) -> None:
    """Structural checks that need no table: name disjointness, key
    disjointness, canonical order, invertibility preconditions."""
    _require(
        abs(log.to_ordinal - log.from_ordinal) == 1,
        f"ordinals {log.from_ordinal}->{log.to_ordinal} are not one step apart",
    )
    keys = [canonical_sort_key(op) for op in log.ops]
    _require(keys == sorted(keys), "ops are not in canonical order")

    renames = [op for op in log.ops if isinstance(op, RenameColumn)]
    adds = [op for op in log.ops if isinstance(op, AddColumn)]
    drops = [op for op in log.ops if isinstance(op, DropColumn)]
    affines = [op for op in log.ops if isinstance(op, TransformColumnAffine)]
    deletes = [op for op in log.ops if isinstance(op, DeleteRow)]
    row_adds = [op for op in log.ops if isinstance(op, AddRow)]
    updates = [op for op in log.ops if isinstance(op, UpdateCell)]

    for name in (
        [op.old_name for op in renames]
        + [op.new_name for op in renames]
        + [op.name for op in adds + drops + affines]
        + [op.column for op in updates]
    ):
        _require(name == normalize_header(name), f"column name {name!r} is not normalized")

    src = {op.old_name for op in renames}
    tgt = {op.new_name for op in renames}
    _require(len(src) == len(renames), "duplicate rename source")
    _require(len(tgt) == len(renames), "duplicate rename target")
    _require(not (src & tgt), "rename chains and swaps are not representable")

    add_names = {op.name for op in adds}
    drop_names = {op.name for op in drops}
    _require(len(add_names) == len(adds), "duplicate added column")
    _require(len(drop_names) == len(drops), "duplicate dropped column")
    _require(not (add_names & drop_names), "column both added and dropped")
    _require(not ((add_names | drop_names) & (src | tgt)), "renamed column also added or dropped")

    affine_names = {op.name for op in affines}
    _require(len(affine_names) == len(affines), "duplicate affine target")
    _require(
        not (affine_names & (add_names | drop_names | src)),
        "affine target is added, dropped, or a stale rename source",
    )
    for op in affines:
        _require(
            isinstance(op.a, (int, float)) and math.isfinite(op.a) and op.a != 0,
            f"affine coefficient {op.a!r} on {op.name!r}",
        )
        _require(isinstance(op.b, (int, float)) and math.isfinite(op.b), f"affine intercept on {op.name!r}")
        _require(not op.preimages, "affine pre-image map must be empty for typed tables")

    update_cells = {(op.column, op.key) for op in updates}
    _require(len(update_cells) == len(updates), "two updates target one cell")
    update_cols = {op.column for op in updates}
    _require(not (update_cols & affine_names), "update and affine target one column")
    _require(
        not (update_cols & (add_names | drop_names | src)),
        "update column is added, dropped, or a stale rename source",
    )

    del_keys = {op.key for op in deletes}
    addr_keys = {op.key for op in row_adds}
    _require(len(del_keys) == len(deletes), "duplicate delete key")
    _require(len(addr_keys) == len(row_adds), "duplicate add-row key")
    _require(not (del_keys & addr_keys), "row key both deleted and added")
    update_keys = {op.key for op in updates}
    _require(not (update_keys & (del_keys | addr_keys)), "update targets a deleted or added row")

    for op in adds + drops:
        _require(op.position >= 0, f"negative column position on {op.name!r}")
    for op in deletes + row_adds:
        _require(op.position >= 0, f"negative row position on key {op.key!r}")

    if log.key_column is None:
        _require(not updates, "hash-keyed log cannot carry cell updates")
        if adds or drops:
            _require(
                all(not op.values for op in adds) and all(not op.saved_values for op in drops),
                "hash-keyed column changes cannot carry per-row values",
            )
    else:
        rename_map = {op.old_name: op.new_name for op in renames}
        kc = rename_map.get(log.key_column, log.key_column)
        _require(kc not in drop_names, "key column cannot be dropped")
        _require(kc not in add_names, "key column collides with an added column")
        _require(kc not in affine_names, "key column cannot be transformed")
        _require(kc not in update_cols, "key column cannot be updated")


# ---------------------------------------------------------------------------
# application


def apply_log(table: Table, log: ChangeLog) -> Table:
    """Apply one log, returning a new table; the input is untouched.

    Conflicts (references to columns or keys the table lacks) raise
    LogConflictError; saved-context disagreements raise StaleLogError.
    """
    validate_log(log)

    renames = [op for op in log.ops if isinstance(op, RenameColumn)]
    adds = [op for op in log.ops if isinstance(op, AddColumn)]
    drops = [op for op in log.ops if isinstance(op, DropColumn)]
    affines = [op for op in log.ops if isinstance(op, TransformColumnAffine)]
    deletes = [op for op in log.ops if isinstance(op, DeleteRow)]
    row_adds = [op for op in log.ops if isinstance(op, AddRow)]
    updates = [op for op in log.ops if isinstance(op, UpdateCell)]

    keys = entry_keys(table, log.key_column)
    if log.key_column is None and (adds or drops):
        # without stable keys there is no way to restore surviving rows'
        # dropped values on inversion, so column changes must come with
        # a full row replacement
        if set(keys) - {op.key for op in deletes}:
            raise LogConflictError(
                "hash-keyed log with column changes must delete every existing row"
            )

    headers = list(table.headers)
    col_types = list(table.col_types)
    order = list(keys)
    entry_rows = {k: list(r) for k, r in zip(keys, table.rows)}
    rowmap = {k: list(r) for k, r in zip(keys, table.rows)}

    for op in renames:
        if op.old_name not in headers:
            raise LogConflictError(f"rename of missing column {op.old_name!r}")
        if op.new_name in headers:
            raise LogConflictError(f"rename target {op.new_name!r} already exists")
        headers[headers.index(op.old_name)] = op.new_name

    for op in sorted(adds, key=lambda o: o.position):
        if op.name in headers:
            raise LogConflictError(f"added column {op.name!r} already exists")
        if not 0 <= op.position <= len(headers):
            raise LogConflictError(f"add position {op.position} out of range for {op.name!r}")
        headers.insert(op.position, op.name)
        col_types.insert(op.position, op.col_type)
        for k in order:
            v = op.values.get(k)
            if not cell_matches_type(v, op.col_type):
                raise LogConflictError(
                    f"added column {op.name!r}: value {v!r} does not match {op.col_type.value}"
                )
            rowmap[k].insert(op.position, v)

    # descending so earlier drops do not shift later positions
    for op in sorted(drops, key=lambda o: -o.position):
        if not 0 <= op.position < len(headers) or headers[op.position] != op.name:
            raise LogConflictError(
                f"drop of {op.name!r}: no such column at position {op.position}"
            )
        if op.col_type is not col_types[op.position]:
            raise LogConflictError(f"drop of {op.name!r}: column type changed")
        for k in order:
            if k in op.saved_values and not cells_equal(rowmap[k][op.position], op.saved_values[k]):
                raise StaleLogError(
                    f"drop of {op.name!r}: saved value disagrees at key {k!r}"
                )
        del headers[op.position]
        del col_types[op.position]
        for k in order:
            del rowmap[k][op.position]

    for op in affines:
        if op.name not in headers:
            raise LogConflictError(f"affine transform of missing column {op.name!r}")
        j = headers.index(op.name)
        if col_types[j] not in (ColType.INTEGER, ColType.REAL):
            raise LogConflictError(f"affine transform of non-numeric column {op.name!r}")
        integral = col_types[j] is ColType.INTEGER
        for k in order:
            x = rowmap[k][j]
            if x is None:
                continue
            y = op.a * x + op.b
            if integral:
                snapped = round(y)
                if abs(y - snapped) > _INT_SNAP:
                    raise LogConflictError(
                        f"affine image {y!r} of column {op.name!r} is not integral"
                    )
                rowmap[k][j] = int(snapped)
            else:
                rowmap[k][j] = float(y)

    for op in deletes:
        if op.key not in rowmap:
            raise LogConflictError(f"delete of unknown row key {op.key!r}")
        saved = entry_rows[op.key]
        if len(op.row) != len(saved) or not all(
            cells_equal(a, b) for a, b in zip(op.row, saved)
        ):
            raise StaleLogError(f"delete of key {op.key!r}: saved row disagrees")
        order.remove(op.key)
        del rowmap[op.key]

    rename_map = {op.old_name: op.new_name for op in renames}
    key_col_now = (
        None if log.key_column is None else rename_map.get(log.key_column, log.key_column)
    )
    for op in sorted(row_adds, key=lambda o: o.position):
        if op.key in rowmap:
            raise LogConflictError(f"added row key {op.key!r} already present")
        if len(op.row) != len(headers):
            raise LogConflictError(f"added row {op.key!r} has wrong arity")
        for v, ct in zip(op.row, col_types):
            if not cell_matches_type(v, ct):
                raise LogConflictError(
                    f"added row {op.key!r}: cell {v!r} does not match {ct.value}"
                )
        if key_col_now is not None:
            j = headers.index(key_col_now)
            if serialize_key(op.row[j]) != op.key:
                raise LogConflictError(f"added row key {op.key!r} disagrees with its key cell")
        else:
            # inversion recomputes hash keys from the produced table, so
            # a fabricated key would orphan the row
            if op.key.rsplit("#", 1)[0] != hash_row(op.row):
                raise LogConflictError(f"added row key {op.key!r} disagrees with its row hash")
        if not 0 <= op.position <= len(order):
            raise LogConflictError(f"add position {op.position} out of range for {op.key!r}")
        order.insert(op.position, op.key)
        rowmap[op.key] = list(op.row)

    for op in updates:
        if op.column not in headers:
            raise LogConflictError(f"update of missing column {op.column!r}")
        j = headers.index(op.column)
        if op.key not in rowmap:
            raise LogConflictError(f"update of unknown row key {op.key!r}")
        if not cells_equal(rowmap[op.key][j], op.old_value):
            raise StaleLogError(
                f"update of ({op.column!r}, {op.key!r}): old value disagrees"
            )
        if not cell_matches_type(op.new_value, col_types[j]):
            raise LogConflictError(
                f"update of ({op.column!r}, {op.key!r}): new value has wrong type"
            )
        rowmap[op.key][j] = op.new_value

    return Table(
        table_id=table.table_id,
        name=table.name,
        headers=headers,
        col_types=col_types,
        rows=[rowmap[k] for k in order],
    )


# ---------------------------------------------------------------------------
# inversion


def invert_log(log: ChangeLog) -> ChangeLog:
    """Exact inverse: ordinals swap, every op flips, canonical order
    restored. Column references move through the rename map so they
    stay valid in the inverse frame."""
    validate_log(log)
    fwd = {op.old_name: op.new_name for op in log.ops if isinstance(op, RenameColumn)}
    back = {new: old for old, new in fwd.items()}

    inverted: list[ChangeOp] = []
    for op in log.ops:
        if isinstance(op, RenameColumn):
            inverted.append(RenameColumn(op.new_name, op.old_name))
        elif isinstance(op, AddColumn):
            inverted.append(DropColumn(op.name, op.position, op.col_type, op.values))
        elif isinstance(op, DropColumn):
            inverted.append(AddColumn(op.name, op.position, op.col_type, op.saved_values))
        elif isinstance(op, TransformColumnAffine):
            inverted.append(
                TransformColumnAffine(
                    back.get(op.name, op.name), 1.0 / op.a, -op.b / op.a, op.preimages
                )
            )
        elif isinstance(op, DeleteRow):
            inverted.append(AddRow(op.key, op.row, op.position))
        elif isinstance(op, AddRow):
            inverted.append(DeleteRow(op.key, op.row, op.position))
        else:
            inverted.append(
                UpdateCell(op.key, back.get(op.column, op.column), op.new_value, op.old_value)
            )

    key_column = (
        None if log.key_column is None else fwd.get(log.key_column, log.key_column)
    )
    return ChangeLog(
        family_id=log.family_id,
        from_ordinal=log.to_ordinal,
        to_ordinal=log.from_ordinal,
        key_column=key_column,
        ops=canonicalize_ops(inverted),
    )


# ---------------------------------------------------------------------------
# wire format: one JSON record per line, header first


def encode_cell(value: Cell):
    if value is None:
        return None
    t = type(value)
    if t is int:
        return ["i", value]
    if t is float:
        return ["r", value]
    if t is str:
        return ["s", value]
    if t is Timestamp:
        return ["ts", value.seconds]
    raise LogConflictError(f"not a cell: {value!r}")


def decode_cell(obj) -> Cell:
    if obj is None:
        return None
    tag, raw = obj
    if tag == "i":
        return int(raw)
    if tag == "r":
        return float(raw)
    if tag == "s":
        return str(raw)
    if tag == "ts":
        return Timestamp(int(raw))
    raise IndexCorruptionError(f"unknown cell tag {tag!r}")


def _encode_value_map(values: Mapping[str, Cell]) -> list:
    return [[k, encode_cell(v)] for k, v in sorted(values.items())]


def _decode_value_map(pairs) -> dict[str, Cell]:
    return {k: decode_cell(v) for k, v in pairs}


def _encode_op(op: ChangeOp) -> list:
    if isinstance(op, RenameColumn):
        return ["rename", op.old_name, op.new_name]
    if isinstance(op, AddColumn):
        return ["add_col", op.name, op.position, op.col_type.value, _encode_value_map(op.values)]
    if isinstance(op, DropColumn):
        return ["drop_col", op.name, op.position, op.col_type.value, _encode_value_map(op.saved_values)]
    if isinstance(op, TransformColumnAffine):
        return ["affine", op.name, op.a, op.b, _encode_value_map(op.preimages)]
    if isinstance(op, DeleteRow):
        return ["del_row", op.key, op.position, [encode_cell(v) for v in op.row]]
    if isinstance(op, AddRow):
        return ["add_row", op.key, op.position, [encode_cell(v) for v in op.row]]
    if isinstance(op, UpdateCell):
        return ["update", op.key, op.column, encode_cell(op.old_value), encode_cell(op.new_value)]
    raise LogConflictError(f"unknown op {op!r}")


def _decode_op(record) -> ChangeOp:
    tag = record[0]
    if tag == "rename":
        return RenameColumn(record[1], record[2])
    if tag == "add_col":
        return AddColumn(record[1], int(record[2]), ColType(record[3]), _decode_value_map(record[4]))
    if tag == "drop_col":
        return DropColumn(record[1], int(record[2]), ColType(record[3]), _decode_value_map(record[4]))
    if tag == "affine":
        return TransformColumnAffine(record[1], float(record[2]), float(record[3]), _decode_value_map(record[4]))
    if tag == "del_row":
        return DeleteRow(
            key=record[1], position=int(record[2]), row=tuple(decode_cell(v) for v in record[3])
        )
    if tag == "add_row":
        return AddRow(
            key=record[1], position=int(record[2]), row=tuple(decode_cell(v) for v in record[3])
        )
    if tag == "update":
        return UpdateCell(record[1], record[2], decode_cell(record[3]), decode_cell(record[4]))
    raise IndexCorruptionError(f"unknown op tag {tag!r}")


def serialize_log(log: ChangeLog) -> str:
    header = {
        "family_id": log.family_id,
        "from_ordinal": log.from_ordinal,
        "to_ordinal": log.to_ordinal,
        "key_column": log.key_column,
        "op_count": len(log.ops),
    }
    lines = [json.dumps(header, ensure_ascii=False)]
    lines.extend(json.dumps(_encode_op(op), ensure_ascii=False) for op in log.ops)
    return "\n".join(lines) + "\n"


def parse_log(text: str) -> ChangeLog:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise IndexCorruptionError("empty change-log record")
    try:
        header = json.loads(lines[0])
        ops = tuple(_decode_op(json.loads(line)) for line in lines[1:])
    except (json.JSONDecodeError, ValueError, IndexError, KeyError) as exc:
        raise IndexCorruptionError(f"malformed change-log record: {exc}") from None
    if not isinstance(header, dict) or "op_count" not in header:
        raise IndexCorruptionError("malformed change-log header")
    if header["op_count"] != len(ops):
        raise IndexCorruptionError(
            f"change log announces {header['op_count']} ops but carries {len(ops)}"
        )
    log = ChangeLog(
        family_id=header["family_id"],
        from_ordinal=int(header["from_ordinal"]),
        to_ordinal=int(header["to_ordinal"]),
        key_column=header["key_column"],
        ops=ops,
    )
    validate_log(log)
    return log
