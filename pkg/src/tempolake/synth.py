"""Synthetic temporal-lake generator.

Produces version families with known lineage and true change logs,
plus unrelated singleton distractor tables. Every next version is
built by actually applying the step's change log, so replay soundness
holds by construction and the generated lake doubles as the oracle
for the whole test suite.

Determinism contract: one ``random.Random`` stream per lake, one per
family, nothing iterates over sets, so the same (config, seed) always
yields a byte-identical serialized lake.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from random import Random
from typing import Mapping, Sequence

from . import vocab
from .changes import (
    AddColumn,
    AddRow,
    ChangeLog,
    ChangeOp,
    DeleteRow,
    DropColumn,
    RenameColumn,
    TransformColumnAffine,
    UpdateCell,
    apply_log,
    entry_keys,
    make_log,
    parse_log,
    serialize_key,
    serialize_log,
)
from .errors import ConfigError, IngestionError
from .tables import Cell, ColType, Table, Timestamp, load_table

OP_KINDS = (
    "update",
    "add_row",
    "delete_row",
    "add_column",
    "drop_column",
    "rename",
    "affine",
    "noop",
)

DEFAULT_OP_MIX: dict[str, float] = {
    "update": 0.35,
    "add_row": 0.15,
    "delete_row": 0.10,
    "add_column": 0.10,
    "drop_column": 0.05,
    "rename": 0.10,
    "affine": 0.05,
    "noop": 0.10,
}

_NULL_RATE = 0.05
_MANIFEST_FORMAT = 1


# ---------------------------------------------------------------------------
# themes


@dataclass(frozen=True)
class ColumnSpec:
    name: str
    col_type: ColType
    kind: str  # pool | int | real | timestamp
    lo: int = 0
    hi: int = 0
    pool: tuple[str, ...] = ()


def _pool(name: str, values: tuple[str, ...]) -> ColumnSpec:
    return ColumnSpec(name, ColType.TEXT, "pool", pool=values)


def _int(name: str, lo: int, hi: int) -> ColumnSpec:
    return ColumnSpec(name, ColType.INTEGER, "int", lo, hi)


def _real(name: str, lo: int, hi: int) -> ColumnSpec:
    return ColumnSpec(name, ColType.REAL, "real", lo, hi)


def _ts(name: str) -> ColumnSpec:
    # day numbers spanning roughly 2011..2022
    return ColumnSpec(name, ColType.TIMESTAMP, "timestamp", 15000, 19000)


@dataclass(frozen=True)
class Theme:
    label: str
    entity_column: str
    entity_kind: str  # person | city | product | station | bin | course
    columns: tuple[ColumnSpec, ...]
    drift: ColumnSpec
    drift_step: tuple[int, int]
    temporal: ColumnSpec


FAMILY_THEMES: tuple[Theme, ...] = (
    Theme(
        "basketball roster", "player", "person",
        (
            _pool("team", vocab.BASKETBALL_TEAMS),
            _real("pts", 0, 35),
            _real("rebounds", 0, 15),
            _real("assists", 0, 12),
            _int("games", 0, 82),
            _int("height", 160, 220),
            _int("weight", 60, 130),
            _pool("position", vocab.BASKETBALL_POSITIONS),
            _int("salary", 500, 40000),
        ),
        _int("age", 19, 40), (1, 3), _ts("last_updated"),
    ),
    Theme(
        "football roster", "player", "person",
        (
            _pool("team", vocab.FOOTBALL_TEAMS),
            _int("rating", 50, 99),
            _int("goals", 0, 40),
            _int("caps", 0, 120),
            _real("market_value", 0, 80),
            _pool("position", vocab.FOOTBALL_POSITIONS),
        ),
        _int("age", 17, 38), (1, 3), _ts("last_updated"),
    ),
    Theme(
        "employee directory", "employee", "person",
        (
            _pool("department", vocab.DEPARTMENTS),
            _pool("office", vocab.CITIES),
            _int("salary", 30000, 180000),
            _int("tenure", 0, 25),
            _real("rating", 1, 5),
        ),
        _int("age", 22, 60), (1, 3), _ts("as_of"),
    ),
    Theme(
        "city metrics", "city", "city",
        (
            _real("area", 10, 500),
            _real("gdp", 1, 900),
            _int("founded", 1650, 1990),
            _int("households", 8000, 800000),
            _int("parks", 1, 60),
        ),
        _int("population", 20000, 2000000), (500, 5000), _ts("census_date"),
    ),
    Theme(
        "product catalog", "product", "product",
        (
            _real("price", 5, 400),
            _int("stock", 0, 900),
            _pool("category", vocab.PRODUCT_CATEGORIES),
            _real("rating", 1, 5),
            _real("weight_kg", 0, 40),
        ),
        _int("units_sold", 0, 5000), (50, 500), _ts("listed_on"),
    ),
    Theme(
        "station readings", "station", "station",
        (
            _real("temperature", -20, 45),
            _int("humidity", 10, 100),
            _real("pressure", 950, 1050),
            _pool("city", vocab.CITIES),
        ),
        _int("uptime_days", 0, 2000), (5, 30), _ts("last_seen"),
    ),
)

DISTRACTOR_THEMES: tuple[Theme, ...] = (
    Theme(
        "warehouse bins", "bin", "bin",
        (
            _int("aisle", 1, 40),
            _int("shelf", 1, 8),
            _int("capacity", 10, 500),
            _real("filled", 0, 100),
            _pool("zone", ("A", "B", "C", "D", "E", "F")),
        ),
        _int("cycle_count", 0, 50), (1, 5), _ts("audited_on"),
    ),
    Theme(
        "course schedule", "course", "course",
        (
            _int("credits", 1, 5),
            _int("enrollment", 5, 300),
            _pool("building", vocab.CITIES),
            _pool("term", ("fall", "spring", "summer")),
            _pool("instructor", ()),  # filled with person names at build time
        ),
        _int("sections", 1, 12), (1, 2), _ts("updated_on"),
    ),
)

_THEMES_BY_LABEL = {t.label: t for t in FAMILY_THEMES + DISTRACTOR_THEMES}


# ---------------------------------------------------------------------------
# configs


@dataclass(frozen=True)
class FamilyConfig:
    family_id: str = "fam000"
    theme: str | None = None
    entity_count: tuple[int, int] = (15, 40)
    version_count: tuple[int, int] = (3, 6)
    ops_per_step: tuple[int, int] = (2, 6)
    op_mix: Mapping[str, float] = field(default_factory=lambda: dict(DEFAULT_OP_MIX))
    temporal: bool = False
    drift: bool = True
    shared_names: tuple[str, ...] = ()
    shared_vocab_rate: float = 0.0


@dataclass(frozen=True)
class LakeConfig:
    family_count: int = 50
    distractor_count: int = 100
    shared_vocab_rate: float = 0.3
    version_count: tuple[int, int] = (3, 6)
    entity_count: tuple[int, int] = (15, 40)
    temporal_rate: float = 0.4
    drift_rate: float = 0.9
    op_mix: Mapping[str, float] = field(default_factory=lambda: dict(DEFAULT_OP_MIX))


@dataclass
class FamilyGroundTruth:
    family_id: str
    versions: list[Table]
    true_logs: list[ChangeLog]
    drift_columns: list[str]
    key_column: str


@dataclass
class SyntheticLake:
    families: list[FamilyGroundTruth]
    distractors: list[Table]
    generator_seed: int
    config: LakeConfig


def _validate_family_config(cfg: FamilyConfig) -> None:
    if cfg.version_count[0] < 2 or cfg.version_count[1] < cfg.version_count[0]:
        raise ConfigError(f"version count range {cfg.version_count} needs at least 2 versions")
    if cfg.entity_count[0] < 3 or cfg.entity_count[1] < cfg.entity_count[0]:
        raise ConfigError(f"entity count range {cfg.entity_count} needs at least 3 entities")
    if cfg.ops_per_step[0] < 0 or cfg.ops_per_step[1] < cfg.ops_per_step[0]:
        raise ConfigError(f"bad ops-per-step range {cfg.ops_per_step}")
    if not 0.0 <= cfg.shared_vocab_rate <= 1.0:
        raise ConfigError(f"shared vocabulary rate {cfg.shared_vocab_rate} outside [0,1]")
    _validate_op_mix(cfg.op_mix)
    if cfg.theme is not None and cfg.theme not in _THEMES_BY_LABEL:
        raise ConfigError(f"unknown theme {cfg.theme!r}")


def _validate_op_mix(mix: Mapping[str, float]) -> None:
    for kind, weight in mix.items():
        if kind not in OP_KINDS:
            raise ConfigError(f"unknown op kind {kind!r} in op mix")
        if weight < 0:
            raise ConfigError(f"negative weight for op kind {kind!r}")
    if sum(mix.values()) <= 0:
        raise ConfigError("op mix weights sum to zero")


def validate_lake_config(cfg: LakeConfig) -> None:
    if cfg.family_count < 0 or cfg.distractor_count < 0:
        raise ConfigError("negative table counts")
    for rate_name in ("shared_vocab_rate", "temporal_rate", "drift_rate"):
        rate = getattr(cfg, rate_name)
        if not 0.0 <= rate <= 1.0:
            raise ConfigError(f"{rate_name} {rate} outside [0,1]")
    if cfg.version_count[0] < 2 or cfg.version_count[1] < cfg.version_count[0]:
        raise ConfigError(f"version count range {cfg.version_count} needs at least 2 versions")
    if cfg.entity_count[0] < 3 or cfg.entity_count[1] < cfg.entity_count[0]:
        raise ConfigError(f"entity count range {cfg.entity_count} needs at least 3 entities")
    _validate_op_mix(cfg.op_mix)


# ---------------------------------------------------------------------------
# value and entity generation


def _gen_value(rng: Random, spec: ColumnSpec) -> Cell:
    if spec.kind == "pool":
        return rng.choice(spec.pool)
    if spec.kind == "int":
        return rng.randint(spec.lo, spec.hi)
    if spec.kind == "real":
        # quarter steps keep every float and affine image exactly
        # representable, so round trips stay bit-exact
        return rng.randint(spec.lo * 4, spec.hi * 4) / 4
    if spec.kind == "timestamp":
        return Timestamp(rng.randint(spec.lo, spec.hi) * 86400)
    raise ConfigError(f"unknown column kind {spec.kind!r}")


def _fresh_entity(rng: Random, kind: str) -> str:
    if kind == "person":
        return f"{rng.choice(vocab.INITIALS)} {rng.choice(vocab.SURNAMES)}"
    if kind == "city":
        return f"{rng.choice(vocab.CITIES)}, {rng.choice(vocab.STATE_CODES)}"
    if kind == "product":
        return f"{rng.choice(vocab.PRODUCT_ADJECTIVES)} {rng.choice(vocab.PRODUCT_NOUNS)}"
    if kind == "station":
        return f"ST-{rng.randint(100, 999)} {rng.choice(vocab.CITIES)}"
    if kind == "bin":
        return f"BIN-{rng.randint(1000, 9999)}"
    if kind == "course":
        return f"{rng.choice(vocab.DEPARTMENTS)} {rng.randint(100, 499)}"
    raise ConfigError(f"unknown entity kind {kind!r}")


def _new_entity(
    rng: Random,
    kind: str,
    used: set[str],
    shared_names: Sequence[str],
    shared_rate: float,
) -> str:
    for _ in range(4000):
        if kind == "person" and shared_names and rng.random() < shared_rate:
            candidate = rng.choice(shared_names)
        else:
            candidate = _fresh_entity(rng, kind)
        if candidate not in used:
            used.add(candidate)
            return candidate
    raise ConfigError("entity vocabulary exhausted; lower the entity count")


def _table_id(rng: Random, prefix: str) -> str:
    return f"{prefix}_{rng.getrandbits(40):010x}"


def _person_pool(rng: Random, size: int) -> tuple[str, ...]:
    names: list[str] = []
    seen: set[str] = set()
    while len(names) < size:
        candidate = _fresh_entity(rng, "person")
        if candidate not in seen:
            seen.add(candidate)
            names.append(candidate)
    return tuple(names)


def _resolve_pool(spec: ColumnSpec, person_pool: Sequence[str]) -> ColumnSpec:
    if spec.kind == "pool" and not spec.pool:
        return replace(spec, pool=tuple(person_pool[:40]))
    return spec


# ---------------------------------------------------------------------------
# family generation


def generate_family(config: FamilyConfig, seed: int) -> FamilyGroundTruth:
    """Build one ground-truth family: a base table plus one applied
    change log per step, storing every intermediate version."""
    _validate_family_config(config)
    rng = Random(seed)
    if config.theme is None:
        theme = FAMILY_THEMES[rng.randrange(len(FAMILY_THEMES))]
    else:
        theme = _THEMES_BY_LABEL[config.theme]

    n_versions = rng.randint(*config.version_count)
    n_entities = rng.randint(*config.entity_count)
    key_col = theme.entity_column

    # schema: entity column plus a sampled subset of theme columns,
    # with the drift and temporal columns appended when enabled
    k = rng.randint(3, max(3, min(6, len(theme.columns))))
    chosen_idx = sorted(rng.sample(range(len(theme.columns)), min(k, len(theme.columns))))
    value_specs = [theme.columns[i] for i in chosen_idx]
    if config.drift:
        value_specs.append(theme.drift)
    if config.temporal:
        value_specs.append(theme.temporal)

    spec_by_col: dict[str, ColumnSpec] = {s.name: s for s in value_specs}
    protected = {key_col}
    drift_col = theme.drift.name if config.drift else None
    temporal_col = theme.temporal.name if config.temporal else None
    protected.update(c for c in (drift_col, temporal_col) if c)

    used_entities: set[str] = set()
    entities = [
        _new_entity(rng, theme.entity_kind, used_entities, config.shared_names, config.shared_vocab_rate)
        for _ in range(n_entities)
    ]
    rows: list[list[Cell]] = []
    for entity in entities:
        row: list[Cell] = [entity]
        for spec in value_specs:
            if spec.name not in protected and rng.random() < _NULL_RATE:
                row.append(None)
            else:
                row.append(_gen_value(rng, spec))
        rows.append(row)

    base = Table(
        table_id=_table_id(rng, config.family_id),
        name=theme.label,
        headers=[key_col] + [s.name for s in value_specs],
        col_types=[ColType.TEXT] + [s.col_type for s in value_specs],
        rows=rows,
    )

    versions = [base]
    logs: list[ChangeLog] = []
    for step in range(n_versions - 1):
        current = versions[-1]
        ops, spec_by_col = _plan_step(
            rng, config, theme, current, spec_by_col,
            key_col, drift_col, temporal_col, used_entities,
        )
        log = make_log(config.family_id, step, step + 1, key_col, ops)
        nxt = apply_log(current, log).with_identity(_table_id(rng, config.family_id))
        versions.append(nxt)
        logs.append(log)

    ids = [t.table_id for t in versions]
    assert len(set(ids)) == len(ids), "version id collision"
    return FamilyGroundTruth(
        family_id=config.family_id,
        versions=versions,
        true_logs=logs,
        drift_columns=[drift_col] if drift_col else [],
        key_column=key_col,
    )


def _plan_step(
    rng: Random,
    config: FamilyConfig,
    theme: Theme,
    current: Table,
    spec_by_col: dict[str, ColumnSpec],
    key_col: str,
    drift_col: str | None,
    temporal_col: str | None,
    used_entities: set[str],
) -> tuple[list[ChangeOp], dict[str, ColumnSpec]]:
    """Plan one step's ops against the current version, respecting the
    log invariants by construction. Returns the ops and the column
    spec map for the produced schema."""
    protected = {key_col} | {c for c in (drift_col, temporal_col) if c}
    kinds = [k for k in OP_KINDS if config.op_mix.get(k, 0) > 0]
    weights = [config.op_mix[k] for k in kinds]
    n_draws = rng.randint(*config.ops_per_step)
    draws = rng.choices(kinds, weights=weights, k=n_draws) if n_draws else []
    count = {kind: draws.count(kind) for kind in OP_KINDS}

    ops: list[ChangeOp] = []
    specs = dict(spec_by_col)
    touched: set[str] = set()
    keys = entry_keys(current, key_col)

    # renames
    w1 = list(current.headers)
    for _ in range(count["rename"]):
        candidates = [c for c in w1 if c not in protected and c not in touched and c != key_col]
        rng.shuffle(candidates)
        done = False
        for col in candidates:
            alts = [
                a for a in vocab.RENAME_SYNONYMS.get(col, ())
                if a not in w1 and a not in specs and a not in touched
            ]
            if not alts:
                continue
            new = rng.choice(alts)
            ops.append(RenameColumn(col, new))
            w1[w1.index(col)] = new
            specs[new] = specs.pop(col)
            touched.update((col, new))
            done = True
            break
        if not done:
            break

    # column drops: keep at least the key and two value columns
    drop_names: list[str] = []
    for _ in range(count["drop_column"]):
        droppable = [
            c for c in w1
            if c not in protected and c not in touched and c != key_col
        ]
        if len(w1) - len(drop_names) <= 3 or not droppable:
            break
        col = rng.choice(droppable)
        drop_names.append(col)
        touched.add(col)

    # column adds: unused theme columns, inserted at random slots
    add_specs: list[ColumnSpec] = []
    for _ in range(count["add_column"]):
        available = [
            s for s in theme.columns
            if s.name not in w1 and s.name not in specs
            and s.name not in touched and s.name not in drop_names
        ]
        if not available:
            break
        spec = rng.choice(available)
        add_specs.append(spec)
        touched.add(spec.name)

    # build the wide schema to pin positions for adds and drops
    w2 = list(w1)
    for spec in add_specs:
        w2.insert(rng.randint(1, len(w2)), spec.name)
    for spec in add_specs:
        values = {k: (_gen_value(rng, spec) if rng.random() >= _NULL_RATE else None) for k in keys}
        ops.append(AddColumn(spec.name, w2.index(spec.name), spec.col_type, values))
        specs[spec.name] = spec
    for col in drop_names:
        j = current.headers.index(col)
        saved = {k: current.rows[i][j] for i, k in enumerate(keys)}
        ops.append(DropColumn(col, w2.index(col), current.col_types[j], saved))
        del specs[col]

    # random affine rescales on untouched numeric columns
    for _ in range(count["affine"]):
        numeric = [
            c for c in w1
            if c not in protected and c not in touched and c not in drop_names
            and c in specs and specs[c].col_type in (ColType.INTEGER, ColType.REAL)
        ]
        if not numeric:
            break
        col = rng.choice(numeric)
        if specs[col].col_type is ColType.INTEGER:
            a = float(rng.choice((1, 2, 3, -1, -2)))
            b = float(rng.randint(-5, 5))
        else:
            a = rng.choice((0.25, 0.5, 2.0, 4.0, -0.5, -2.0))
            b = rng.randint(-20, 20) / 4
        if a == 1.0 and b == 0.0:
            b = 1.0
        ops.append(TransformColumnAffine(col, a, b))
        touched.add(col)

    # drift column moves forward every step
    if drift_col is not None:
        ops.append(TransformColumnAffine(drift_col, 1.0, float(rng.randint(*theme.drift_step))))

    # row deletes, always leaving at least two rows
    n_del = min(count["delete_row"], max(0, current.row_count - 2))
    deleted_idx = sorted(rng.sample(range(current.row_count), n_del)) if n_del else []
    for i in deleted_idx:
        ops.append(DeleteRow(keys[i], tuple(current.rows[i]), i))
    surviving = [i for i in range(current.row_count) if i not in set(deleted_idx)]

    # temporal column: one dedicated bump keeps its max strictly rising
    if temporal_col is not None and surviving:
        j = current.headers.index(temporal_col)
        col_values = [current.rows[i][j] for i in range(current.row_count)]
        max_secs = max(v.seconds for v in col_values if v is not None)
        bump_i = rng.choice(surviving)
        new_value = Timestamp(max_secs + rng.randint(1, 30) * 86400)
        ops.append(UpdateCell(keys[bump_i], temporal_col, current.rows[bump_i][j], new_value))

    # final schema, for new rows
    w3 = [c for c in w2 if c not in drop_names]

    # row adds, appended after the surviving rows
    added = 0
    for _ in range(count["add_row"]):
        entity = _new_entity(
            rng, theme.entity_kind, used_entities, config.shared_names, config.shared_vocab_rate
        )
        row: list[Cell] = []
        for col in w3:
            if col == key_col:
                row.append(entity)
            elif col == temporal_col:
                j = current.headers.index(temporal_col)
                ceiling = max(
                    (v.seconds for v in (current.rows[i][j] for i in range(current.row_count)) if v is not None),
                )
                row.append(Timestamp(ceiling - rng.randint(0, 100) * 86400))
            else:
                row.append(_gen_value(rng, specs[col]))
        ops.append(AddRow(serialize_key(entity), tuple(row), len(surviving) + added))
        added += 1

    # cell updates on columns no other op touches
    updatable = [
        c for c in w3
        if c not in protected and c not in touched and c in current.headers
    ]
    planned_cells: set[tuple[str, str]] = set()
    n_updates = count["update"]
    if not ops and not n_updates:
        n_updates = 1  # keep every step observable
    for _ in range(n_updates):
        if not updatable or not surviving:
            break
        col = rng.choice(updatable)
        i = rng.choice(surviving)
        if (col, keys[i]) in planned_cells:
            continue
        j = current.headers.index(col)
        old = current.rows[i][j]
        new = _gen_value(rng, specs[col])
        for _ in range(5):
            if not (new == old and type(new) is type(old)):
                break
            new = _gen_value(rng, specs[col])
        else:
            continue
        planned_cells.add((col, keys[i]))
        ops.append(UpdateCell(keys[i], col, old, new))

    return ops, specs


# ---------------------------------------------------------------------------
# lake generation


def generate_lake(config: LakeConfig, seed: int) -> SyntheticLake:
    validate_lake_config(config)
    rng = Random(seed)
    shared_names = _person_pool(rng, 80)

    families: list[FamilyGroundTruth] = []
    used_themes: list[Theme] = []
    for i in range(config.family_count):
        fam_seed = rng.getrandbits(63)
        theme = FAMILY_THEMES[rng.randrange(len(FAMILY_THEMES))]
        fam_config = FamilyConfig(
            family_id=f"gt{i:03d}",
            theme=theme.label,
            entity_count=config.entity_count,
            version_count=config.version_count,
            op_mix=dict(config.op_mix),
            temporal=rng.random() < config.temporal_rate,
            drift=rng.random() < config.drift_rate,
            shared_names=shared_names,
            shared_vocab_rate=config.shared_vocab_rate,
        )
        families.append(generate_family(fam_config, fam_seed))
        if all(t.label != theme.label for t in used_themes):
            used_themes.append(theme)

    distractors = [
        _generate_distractor(
            Random(rng.getrandbits(63)), i, used_themes, shared_names, config.shared_vocab_rate
        )
        for i in range(config.distractor_count)
    ]

    all_ids = [t.table_id for f in families for t in f.versions]
    all_ids += [d.table_id for d in distractors]
    assert len(set(all_ids)) == len(all_ids), "table id collision across the lake"
    return SyntheticLake(families, distractors, seed, config)


def _generate_distractor(
    rng: Random,
    index: int,
    family_themes: Sequence[Theme],
    shared_names: tuple[str, ...],
    shared_rate: float,
) -> Table:
    """One singleton table; at the shared-vocabulary rate it borrows a
    family theme's headers, otherwise it comes from a disjoint theme."""
    if family_themes and rng.random() < shared_rate:
        theme = family_themes[rng.randrange(len(family_themes))]
    else:
        theme = DISTRACTOR_THEMES[rng.randrange(len(DISTRACTOR_THEMES))]

    candidates = [_resolve_pool(s, shared_names) for s in theme.columns]
    k = rng.randint(2, max(2, min(5, len(candidates))))
    chosen_idx = sorted(rng.sample(range(len(candidates)), min(k, len(candidates))))
    value_specs = [candidates[i] for i in chosen_idx]
    if rng.random() < 0.3:
        value_specs.append(theme.drift)
    if rng.random() < 0.2:
        value_specs.append(theme.temporal)

    n_rows = rng.randint(8, 30)
    used: set[str] = set()
    rows: list[list[Cell]] = []
    for _ in range(n_rows):
        entity = _new_entity(rng, theme.entity_kind, used, shared_names, shared_rate)
        row: list[Cell] = [entity]
        for spec in value_specs:
            row.append(None if rng.random() < _NULL_RATE else _gen_value(rng, spec))
        rows.append(row)

    return Table(
        table_id=_table_id(rng, f"dx{index:03d}"),
        name=theme.label,
        headers=[theme.entity_column] + [s.name for s in value_specs],
        col_types=[ColType.TEXT] + [s.col_type for s in value_specs],
        rows=rows,
    )


# ---------------------------------------------------------------------------
# views over a lake


def lake_tables(lake: SyntheticLake) -> list[Table]:
    """Every table in the lake, family versions first, then distractors."""
    out = [t for fam in lake.families for t in fam.versions]
    out.extend(lake.distractors)
    return out


def true_partition(lake: SyntheticLake) -> list[set[str]]:
    """Ground-truth grouping: one set per family, one singleton per
    distractor."""
    groups = [set(t.table_id for t in fam.versions) for fam in lake.families]
    groups.extend({d.table_id} for d in lake.distractors)
    return groups


# ---------------------------------------------------------------------------
# persistence


def save_lake(lake: SyntheticLake, root: Path) -> None:
    root = Path(root)
    (root / "tables").mkdir(parents=True, exist_ok=True)
    (root / "logs").mkdir(parents=True, exist_ok=True)

    manifest: dict = {
        "format": _MANIFEST_FORMAT,
        "generator_seed": lake.generator_seed,
        "config": _config_to_dict(lake.config),
        "families": [],
        "distractors": [],
    }
    for fam in lake.families:
        log_files = []
        for log in fam.true_logs:
            fname = f"{fam.family_id}_step{log.from_ordinal}.log"
            (root / "logs" / fname).write_text(serialize_log(log), encoding="utf-8")
            log_files.append(fname)
        for table in fam.versions:
            (root / "tables" / f"{table.table_id}.csv").write_text(table.to_csv(), encoding="utf-8")
        manifest["families"].append(
            {
                "family_id": fam.family_id,
                "key_column": fam.key_column,
                "drift_columns": fam.drift_columns,
                "table_ids": [t.table_id for t in fam.versions],
                "table_names": [t.name for t in fam.versions],
                "log_files": log_files,
            }
        )
    for table in lake.distractors:
        (root / "tables" / f"{table.table_id}.csv").write_text(table.to_csv(), encoding="utf-8")
        manifest["distractors"].append({"table_id": table.table_id, "name": table.name})

    (root / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def load_lake(root: Path) -> SyntheticLake:
    root = Path(root)
    manifest_path = root / "manifest.json"
    if not manifest_path.exists():
        raise IngestionError(f"no lake manifest at {manifest_path}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))

    def read_table(table_id: str, name: str) -> Table:
        path = root / "tables" / f"{table_id}.csv"
        if not path.exists():
            raise IngestionError(f"lake table file missing: {path}")
        return load_table(path.read_text(encoding="utf-8"), table_id, name)

    families = []
    for entry in manifest["families"]:
        versions = [
            read_table(tid, name)
            for tid, name in zip(entry["table_ids"], entry["table_names"])
        ]
        logs = [
            parse_log((root / "logs" / fname).read_text(encoding="utf-8"))
            for fname in entry["log_files"]
        ]
        families.append(
            FamilyGroundTruth(
                family_id=entry["family_id"],
                versions=versions,
                true_logs=logs,
                drift_columns=list(entry["drift_columns"]),
                key_column=entry["key_column"],
            )
        )
    distractors = [read_table(d["table_id"], d["name"]) for d in manifest["distractors"]]
    return SyntheticLake(
        families=families,
        distractors=distractors,
        generator_seed=int(manifest["generator_seed"]),
        config=_config_from_dict(manifest["config"]),
    )


def _config_to_dict(cfg: LakeConfig) -> dict:
    return {
        "family_count": cfg.family_count,
        "distractor_count": cfg.distractor_count,
        "shared_vocab_rate": cfg.shared_vocab_rate,
        "version_count": list(cfg.version_count),
        "entity_count": list(cfg.entity_count),
        "temporal_rate": cfg.temporal_rate,
        "drift_rate": cfg.drift_rate,
        "op_mix": dict(cfg.op_mix),
    }


def _config_from_dict(data: Mapping) -> LakeConfig:
    return LakeConfig(
        family_count=int(data["family_count"]),
        distractor_count=int(data["distractor_count"]),
        shared_vocab_rate=float(data["shared_vocab_rate"]),
        version_count=tuple(data["version_count"]),
        entity_count=tuple(data["entity_count"]),
        temporal_rate=float(data["temporal_rate"]),
        drift_rate=float(data["drift_rate"]),
        op_mix=dict(data["op_mix"]),
    )


def parse_lake_config(text: str) -> LakeConfig:
    """Flat key=value config format; unknown keys are rejected."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()

    cfg = LakeConfig()
    floats = {"shared_vocab_rate", "temporal_rate", "drift_rate"}
    version = list(cfg.version_count)
    entity = list(cfg.entity_count)
    op_mix = dict(cfg.op_mix)
    updates: dict = {}
    for key, value in values.items():
        try:
            if key in ("family_count", "distractor_count"):
                updates[key] = int(value)
            elif key == "version_min":
                version[0] = int(value)
            elif key == "version_max":
                version[1] = int(value)
            elif key == "entity_min":
                entity[0] = int(value)
            elif key == "entity_max":
                entity[1] = int(value)
            elif key in floats:
                updates[key] = float(value)
            elif key.startswith("op_"):
                kind = key[3:]
                if kind not in OP_KINDS:
                    raise ConfigError(f"unknown op kind {kind!r} in config")
                op_mix[kind] = float(value)
            else:
                raise ConfigError(f"unknown config key {key!r}")
        except ValueError:
            raise ConfigError(f"config key {key!r}: bad value {value!r}") from None

    cfg = replace(
        cfg,
        version_count=(version[0], version[1]),
        entity_count=(entity[0], entity[1]),
        op_mix=op_mix,
        **updates,
    )
    validate_lake_config(cfg)
    return cfg
