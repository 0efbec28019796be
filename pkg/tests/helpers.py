"""Shared helpers for the test suite: small table factories, exact
table comparison, and independent reference implementations (rank
correlation, KS statistic, brute-force lookup scoring) used as
oracles against the package's own code."""

from __future__ import annotations

import math
from typing import Sequence

from tempolake.tables import Cell, ColType, Table, cell_key, cells_equal

_TYPE_BY_SAMPLE = {int: ColType.INTEGER, float: ColType.REAL, str: ColType.TEXT}


def infer_cell_type(values: Sequence[Cell]) -> ColType:
    for v in values:
        if v is None:
            continue
        t = _TYPE_BY_SAMPLE.get(type(v))
        if t is None:
            return ColType.TIMESTAMP
        return t
    return ColType.TEXT


def make_table(table_id: str, columns: dict[str, list[Cell]], name: str | None = None) -> Table:
    """Build a typed table from named columns; types taken from the
    first non-Null cell of each column."""
    headers = list(columns)
    cols = [columns[h] for h in headers]
    height = len(cols[0]) if cols else 0
    assert all(len(c) == height for c in cols), "ragged test columns"
    return Table(
        table_id=table_id,
        name=name if name is not None else table_id,
        headers=headers,
        col_types=[infer_cell_type(c) for c in cols],
        rows=[[c[i] for c in cols] for i in range(height)],
    )


def tables_identical(a: Table, b: Table) -> bool:
    """Exact structural equality: headers, column types, and every
    cell variant-and-value equal, row order included. Identity fields
    (table_id, name) are not compared."""
    if a.headers != b.headers or a.col_types != b.col_types:
        return False
    if len(a.rows) != len(b.rows):
        return False
    for ra, rb in zip(a.rows, b.rows):
        if not all(cells_equal(x, y) for x, y in zip(ra, rb)):
            return False
    return True


def assert_tables_identical(a: Table, b: Table) -> None:
    assert a.headers == b.headers, f"{a.headers} != {b.headers}"
    assert a.col_types == b.col_types
    assert len(a.rows) == len(b.rows), f"{len(a.rows)} rows != {len(b.rows)} rows"
    for i, (ra, rb) in enumerate(zip(a.rows, b.rows)):
        for j, (x, y) in enumerate(zip(ra, rb)):
            assert cells_equal(x, y), f"cell ({i},{a.headers[j]}): {x!r} != {y!r}"


def kendall_tau(order_a: Sequence, order_b: Sequence) -> float:
    """Kendall rank correlation between two orderings of one item set."""
    assert set(order_a) == set(order_b)
    pos = {item: i for i, item in enumerate(order_b)}
    items = list(order_a)
    n = len(items)
    if n < 2:
        return 1.0
    concordant = discordant = 0
    for i in range(n):
        for j in range(i + 1, n):
            if pos[items[i]] < pos[items[j]]:
                concordant += 1
            else:
                discordant += 1
    return (concordant - discordant) / (n * (n - 1) / 2)


def spearman_reference(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Independent Spearman rho with average ranks for ties."""

    def ranks(values):
        order = sorted(range(len(values)), key=lambda i: values[i])
        out = [0.0] * len(values)
        i = 0
        while i < len(order):
            j = i
            while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
                j += 1
            avg = (i + j) / 2 + 1
            for k in range(i, j + 1):
                out[order[k]] = avg
            i = j + 1
        return out

    ra, rb = ranks(list(xs)), ranks(list(ys))
    n = len(ra)
    ma = sum(ra) / n
    mb = sum(rb) / n
    cov = sum((x - ma) * (y - mb) for x, y in zip(ra, rb))
    va = sum((x - ma) ** 2 for x in ra)
    vb = sum((y - mb) ** 2 for y in rb)
    if va == 0 or vb == 0:
        return 0.0
    return cov / math.sqrt(va * vb)


def ks_statistic_reference(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Brute-force two-sample KS: max ECDF gap over all sample points."""
    gap = 0.0
    for t in list(xs) + list(ys):
        fa = sum(1 for v in xs if v <= t) / len(xs)
        fb = sum(1 for v in ys if v <= t) / len(ys)
        gap = max(gap, abs(fa - fb))
    return gap


def pairwise_f1(predicted: Sequence[set], truth: Sequence[set]) -> float:
    """F1 over unordered same-family pairs of two partitions."""

    def pairs(partition):
        out = set()
        for group in partition:
            members = sorted(group)
            for i in range(len(members)):
                for j in range(i + 1, len(members)):
                    out.add((members[i], members[j]))
        return out

    p, t = pairs(predicted), pairs(truth)
    if not p and not t:
        return 1.0
    if not p or not t:
        return 0.0
    tp = len(p & t)
    if tp == 0:
        return 0.0
    precision = tp / len(p)
    recall = tp / len(t)
    return 2 * precision * recall / (precision + recall)
