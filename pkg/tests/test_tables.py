from __future__ import annotations

import random

import pytest

from tempolake.errors import IngestionError, SchemaError
from tempolake.tables import (
    ColType,
    ColumnRef,
    Table,
    Timestamp,
    cell_key,
    cells_equal,
    detect_temporal_columns,
    format_cell,
    header_tokens,
    infer_entity_key,
    infer_types,
    load_table,
    normalize_header,
    parse_timestamp,
)


def test_load_header_only_file():
    t = load_table("Player,Team\n", "t0")
    assert t.headers == ["player", "team"]
    assert t.col_types == [ColType.TEXT, ColType.TEXT]
    assert t.rows == []


def test_ragged_row_reports_physical_row_number():
    text = "a,b\n1,2\n1,2,3\n4,5\n"
    with pytest.raises(IngestionError, match="row 3"):
        load_table(text, "t0")


def test_duplicate_normalized_headers_rejected():
    with pytest.raises(SchemaError, match="duplicate"):
        load_table("Age,  age \n1,2\n", "t0")


def test_integer_cell_parsed_as_integer():
    t = load_table("Player,Age\nL. James,40\n", "t4")
    j = t.column_index("age")
    assert t.col_types[j] is ColType.INTEGER
    assert t.rows[0][j] == 40
    assert type(t.rows[0][j]) is int


def test_infer_types_rule_order():
    assert infer_types([["1", "2", "3"]]) == [ColType.INTEGER]
    assert infer_types([["27.3", "25.1"]]) == [ColType.REAL]
    assert infer_types([["2018-04-11", "2018-04-12"]]) == [ColType.TIMESTAMP]
    assert infer_types([["abc", "1"]]) == [ColType.TEXT]


def test_mixed_int_and_decimal_is_real():
    assert infer_types([["1", "2.5"]]) == [ColType.REAL]


def test_all_empty_column_is_text_with_nulls():
    t = load_table("a,b\n,x\n,y\n", "t0")
    assert t.col_types[0] is ColType.TEXT
    assert t.column_values(0) == [None, None]


def test_int64_overflow_falls_back_to_text():
    big = str(2**63)  # one past the max
    assert infer_types([[big]]) == [ColType.TEXT]
    assert infer_types([[str(2**63 - 1)]]) == [ColType.INTEGER]
    # and it must not sneak in through the Real branch either
    assert infer_types([[big, "2.5"]]) == [ColType.TEXT]


def test_underscored_and_nonfinite_numerics_are_text():
    assert infer_types([["1_000"]]) == [ColType.TEXT]
    assert infer_types([["inf"]]) == [ColType.TEXT]
    assert infer_types([["nan", "1.0"]]) == [ColType.TEXT]


def test_timestamp_formats():
    assert parse_timestamp("2018-04-11") == Timestamp(1523404800)
    assert parse_timestamp("2018/04/11") == Timestamp(1523404800)
    assert parse_timestamp("2018-04-11T07:30:00") == Timestamp(1523431800)
    assert parse_timestamp("2018-04-11T07:30:00Z") == Timestamp(1523431800)
    assert parse_timestamp("11.04.2018") is None
    assert parse_timestamp("2018-04-11 07:30:00") is None


def test_timestamp_iso_round_trip():
    for s in ("2018-04-11", "2018-04-11T07:30:00Z"):
        ts = parse_timestamp(s)
        assert ts is not None
        assert ts.iso() == s
        assert parse_timestamp(ts.iso()) == ts


def test_normalize_header_collapses_whitespace():
    assert normalize_header("  Points  Per\tGame ") == "points_per_game"
    assert normalize_header("Player") == "player"


def test_header_tokens_split_on_separators():
    assert header_tokens("points_per_game") == {"points", "per", "game"}
    assert header_tokens("player") == {"player"}


def test_cell_keys_distinguish_variants():
    assert cell_key(1) != cell_key(1.0)
    assert cell_key("1") != cell_key(1)
    assert cell_key(None) == ("n",)
    assert cell_key(Timestamp(0)) != cell_key(0)
    assert not cells_equal(1, 1.0)
    assert not cells_equal(1, True)
    assert cells_equal(None, None)
    assert cells_equal("x", "x")


def test_bool_is_not_a_valid_integer_cell():
    with pytest.raises(SchemaError):
        Table("t", "t", ["a"], [ColType.INTEGER], [[True]])


def test_table_validation_rejects_ragged_and_mistyped():
    with pytest.raises(SchemaError, match="row 1"):
        Table("t", "t", ["a", "b"], [ColType.TEXT, ColType.TEXT], [["x", "y"], ["z"]])
    with pytest.raises(SchemaError, match="does not match"):
        Table("t", "t", ["a"], [ColType.INTEGER], [["text"]])


def test_detect_temporal_columns_timestamp_and_mostly_parseable_text():
    t = load_table("player,date\nx,2018-01-01\ny,2018-01-02\n", "t0")
    refs = detect_temporal_columns(t)
    assert refs == [ColumnRef("t0", 1, "date")]

    # text column, 96 of 100 values are dates: over the 0.95 bar
    values = [f"2020-01-{(i % 28) + 1:02d}" for i in range(96)] + ["junk"] * 4
    rows = "\n".join(f"{v},note" for v in values)
    mostly = load_table("when,k\n" + rows + "\n", "t1")
    assert mostly.col_types[0] is ColType.TEXT
    assert [r.column_name for r in detect_temporal_columns(mostly)] == ["when"]

    # 94 of 100: under the bar
    values = [f"2020-01-{(i % 28) + 1:02d}" for i in range(94)] + ["junk"] * 6
    rows = "\n".join(f"{v},note" for v in values)
    under = load_table("when,k\n" + rows + "\n", "t2")
    assert detect_temporal_columns(under) == []


def test_no_temporal_columns_in_plain_fixtures():
    t = load_table("player,team,age\nA,X,30\nB,Y,31\n", "t1")
    assert detect_temporal_columns(t) == []


def test_entity_key_prefers_leftmost_unique_column():
    t = load_table("player,team\nL. James,LAL\nJ. Harden,HOU\n", "t1")
    ref = infer_entity_key(t)
    assert ref == ColumnRef("t1", 0, "player")

    dup = load_table("a,b\nx,1\nx,1\n", "t2")
    assert infer_entity_key(dup) is None

    two = load_table("id,player\n1,A\n2,B\n", "t3")
    assert infer_entity_key(two).column_name == "id"


def test_entity_key_skips_columns_with_nulls():
    t = load_table("maybe,player\n,A\n2,B\n", "t0")
    assert infer_entity_key(t).column_name == "player"


def test_entity_key_is_verifiably_unique(random_tables):
    for t in random_tables:
        ref = infer_entity_key(t)
        if ref is None:
            continue
        values = t.column_values(ref.column_index)
        assert all(v is not None for v in values)
        assert len({cell_key(v) for v in values}) == len(values)


@pytest.fixture
def random_tables() -> list[Table]:
    rng = random.Random(7)
    tables = []
    for n in range(20):
        width = rng.randint(1, 5)
        height = rng.randint(0, 12)
        cols = []
        for _ in range(width):
            kind = rng.choice(["int", "real", "text", "date", "mixed"])
            col = []
            for _ in range(height):
                if rng.random() < 0.15:
                    col.append("")
                elif kind == "int":
                    col.append(str(rng.randint(-50, 50)))
                elif kind == "real":
                    col.append(repr(rng.randint(0, 400) / 4))
                elif kind == "date":
                    col.append(f"2021-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}")
                elif kind == "mixed":
                    col.append(rng.choice(["x", "12", "3.5", "2020-01-01"]))
                else:
                    col.append(rng.choice(["ant", "bee", "cat", "dog", "elk"]))
            cols.append(col)
        header = ",".join(f"c{j}" for j in range(width))
        lines = [header] + [",".join(cols[j][i] for j in range(width)) for i in range(height)]
        tables.append(load_table("\n".join(lines) + "\n", f"rand{n}"))
    return tables


def test_csv_round_trip_is_identity(random_tables):
    for t in random_tables:
        again = load_table(t.to_csv(), t.table_id)
        assert again.headers == t.headers
        assert again.col_types == t.col_types
        assert again.rows == t.rows
        for row_a, row_b in zip(t.rows, again.rows):
            for a, b in zip(row_a, row_b):
                assert cells_equal(a, b)


def test_round_trip_preserves_tricky_values():
    text = 'a,b,c\n"he said ""hi""",-0.5,2019-06-30\n" spaced ",1e-3,2019-07-01\n'
    t = load_table(text, "t0")
    again = load_table(t.to_csv(), "t0")
    assert again.rows == t.rows
    assert again.col_types == t.col_types
    assert t.rows[1][0] == " spaced "


def test_infer_types_is_permutation_invariant():
    rng = random.Random(3)
    col = [str(rng.randint(0, 9)) for _ in range(10)] + ["x", "", "2.5"]
    base = infer_types([col])
    for _ in range(10):
        shuffled = col[:]
        rng.shuffle(shuffled)
        assert infer_types([shuffled]) == base


def test_format_cell_inverse_of_parse():
    assert format_cell(None) == ""
    assert format_cell(40) == "40"
    assert format_cell(27.3) == "27.3"
    assert format_cell("x,y") == "x,y"
    assert format_cell(Timestamp(1523404800)) == "2018-04-11"


def test_quoted_fields_and_crlf():
    t = load_table('a,b\r\n"1,5",two\r\n', "t0")
    assert t.rows == [["1,5", "two"]]


def test_with_identity_copies_rows():
    t = load_table("a\n1\n", "t0")
    u = t.with_identity("t1")
    u.rows[0][0] = 99
    assert t.rows[0][0] == 1
    assert u.table_id == "t1"
    assert u.name == t.name
