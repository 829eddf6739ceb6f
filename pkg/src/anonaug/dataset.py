"""Tabular data model: schemas, cells, datasets, CSV ingestion and output.

Cell values come in four shapes: raw strings, numbers, numeric intervals
(produced by generalization) and taxonomy node labels. A dataset is an
immutable list of records aligned to an ordered attribute schema.

CSV dialect: comma-separated, double-quote quoting, UTF-8, header row.
Intervals render as "lo-hi"; if either bound is negative the separator
becomes ".." so the text stays parseable.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Optional, Union

import numpy as np

from .errors import SchemaError
from .taxonomy import Taxonomy, TaxonomySet, load_hierarchy

NUMERIC = "numeric"
CATEGORICAL = "categorical"

QUASI_IDENTIFIER = "quasi_identifier"
SENSITIVE = "sensitive"
INSENSITIVE = "insensitive"

_ROLE_ALIASES = {
    "qi": QUASI_IDENTIFIER,
    "quasi_identifier": QUASI_IDENTIFIER,
    "sensitive": SENSITIVE,
    "insensitive": INSENSITIVE,
}


# --------------------------------------------------------------------------
# Cells
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RawCell:
    value: str


@dataclass(frozen=True)
class NumberCell:
    value: float


@dataclass(frozen=True)
class IntervalCell:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise SchemaError(f"interval lower bound {self.lo} exceeds upper bound {self.hi}")


@dataclass(frozen=True)
class NodeCell:
    label: str


Cell = Union[RawCell, NumberCell, IntervalCell, NodeCell]


def format_number(value: float) -> str:
    """Integral floats print without a decimal point ("20", not "20.0")."""
    if value == int(value):
        return str(int(value))
    return repr(float(value))


def render_cell(cell: Cell) -> str:
    """The flat-CSV text of a cell; also the audit's comparison key."""
    if isinstance(cell, RawCell):
        return cell.value
    if isinstance(cell, NumberCell):
        return format_number(cell.value)
    if isinstance(cell, IntervalCell):
        sep = ".." if (cell.lo < 0 or cell.hi < 0) else "-"
        return f"{format_number(cell.lo)}{sep}{format_number(cell.hi)}"
    if isinstance(cell, NodeCell):
        return cell.label
    raise TypeError(f"not a cell: {cell!r}")


def parse_numeric_token(token: str, allow_interval: bool = False) -> Cell:
    """Parse a CSV field of a numeric column into a number or interval cell."""
    text = token.strip()
    try:
        return NumberCell(float(text))
    except ValueError:
        pass
    if allow_interval:
        if ".." in text:
            lo_text, _, hi_text = text.partition("..")
            try:
                return IntervalCell(float(lo_text), float(hi_text))
            except ValueError:
                pass
        # split on the first "-" that is not a leading sign
        dash = text.find("-", 1)
        if dash > 0:
            try:
                return IntervalCell(float(text[:dash]), float(text[dash + 1:]))
            except ValueError:
                pass
    raise SchemaError(f"cannot parse {token!r} as a numeric value")


# --------------------------------------------------------------------------
# Schema
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class AttributeSchema:
    """One column: its kind (numeric/categorical) and privacy role."""

    name: str
    kind: str
    role: str
    numeric_domain: Optional[tuple[float, float]] = None
    taxonomy_ref: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.name:
            raise SchemaError("attribute name must be nonempty")
        if self.kind not in (NUMERIC, CATEGORICAL):
            raise SchemaError(f"unknown attribute kind {self.kind!r}")
        if self.role not in (QUASI_IDENTIFIER, SENSITIVE, INSENSITIVE):
            raise SchemaError(f"unknown attribute role {self.role!r}")
        if self.kind == CATEGORICAL and self.numeric_domain is not None:
            raise SchemaError(f"categorical attribute {self.name!r} cannot carry a numeric domain")

    @property
    def is_qi(self) -> bool:
        return self.role == QUASI_IDENTIFIER


@dataclass(frozen=True)
class SchemaConfig:
    """Loaded schema plus the taxonomies referenced by its categorical QIs."""

    attributes: tuple[AttributeSchema, ...]
    taxonomies: TaxonomySet

    def __post_init__(self) -> None:
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise SchemaError(f"duplicate attribute names in schema: {names}")
        sensitive = [a for a in self.attributes if a.role == SENSITIVE]
        if len(sensitive) > 1:
            raise SchemaError("at most one sensitive attribute is supported")
        for attr in self.attributes:
            if attr.kind == CATEGORICAL and attr.is_qi:
                if attr.name not in self.taxonomies:
                    raise SchemaError(
                        f"categorical quasi-identifier {attr.name!r} has no loaded taxonomy"
                    )
        extra = set(self.taxonomies) - {
            a.name for a in self.attributes if a.kind == CATEGORICAL and a.is_qi
        }
        if extra:
            raise SchemaError(f"taxonomies loaded for non-QI attributes: {sorted(extra)}")


def load_schema_config(path: Union[str, os.PathLike]) -> SchemaConfig:
    """Read the JSON schema config; hierarchy paths resolve relative to it."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read schema config {path}: {exc}") from exc
    if not isinstance(raw, dict) or "attributes" not in raw:
        raise SchemaError(f"schema config {path} must be an object with an 'attributes' list")

    attributes = []
    taxonomies: dict[str, Taxonomy] = {}
    for entry in raw["attributes"]:
        name = entry.get("name", "")
        kind = entry.get("kind", "")
        role = _ROLE_ALIASES.get(entry.get("role", ""), entry.get("role", ""))
        domain = None
        if entry.get("domain") is not None:
            domain = (float(entry["domain"]["min"]), float(entry["domain"]["max"]))
        hierarchy = entry.get("hierarchy")
        attributes.append(AttributeSchema(
            name=name, kind=kind, role=role,
            numeric_domain=domain,
            taxonomy_ref=hierarchy,
        ))
        if hierarchy is not None:
            hier_path = path.parent / hierarchy
            try:
                taxonomies[name] = load_hierarchy(hier_path.read_bytes(), name)
            except OSError as exc:
                raise SchemaError(f"cannot read hierarchy file {hier_path}: {exc}") from exc
    return SchemaConfig(attributes=tuple(attributes), taxonomies=TaxonomySet(taxonomies))


# --------------------------------------------------------------------------
# Records and datasets
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Record:
    cells: tuple[Cell, ...]


@dataclass(frozen=True)
class Provenance:
    kind: str  # "original" | "anonymized" | "merged"
    algorithm: Optional[str] = None
    requested_k: Optional[int] = None


ORIGINAL = Provenance("original")


@dataclass(frozen=True)
class Dataset:
    schema: tuple[AttributeSchema, ...]
    records: tuple[Record, ...]
    provenance: Provenance = ORIGINAL

    def __post_init__(self) -> None:
        m = len(self.schema)
        if m < 1:
            raise SchemaError("a dataset needs at least one attribute")
        for i, rec in enumerate(self.records):
            if len(rec.cells) != m:
                raise SchemaError(
                    f"record {i} has {len(rec.cells)} cells, schema has {m} attributes"
                )

    @property
    def n(self) -> int:
        return len(self.records)

    @property
    def m(self) -> int:
        return len(self.schema)

    @property
    def z(self) -> int:
        return len(self.qi_indices)

    @property
    def qi_indices(self) -> tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.schema) if a.is_qi)

    @property
    def sensitive_index(self) -> Optional[int]:
        for i, a in enumerate(self.schema):
            if a.role == SENSITIVE:
                return i
        return None

    def attribute(self, name: str) -> AttributeSchema:
        for a in self.schema:
            if a.name == name:
                return a
        raise SchemaError(f"no attribute named {name!r}")

    def column(self, name: str) -> list[Cell]:
        idx = [a.name for a in self.schema].index(name)
        return [rec.cells[idx] for rec in self.records]

    def with_provenance(self, provenance: Provenance) -> "Dataset":
        return replace(self, provenance=provenance)


# --------------------------------------------------------------------------
# Ingestion / serialization / sampling
# --------------------------------------------------------------------------

def _source_text(csv_source: Union[bytes, str, os.PathLike]) -> str:
    if isinstance(csv_source, bytes):
        return csv_source.decode("utf-8")
    if isinstance(csv_source, os.PathLike) or (
        isinstance(csv_source, str) and "\n" not in csv_source and os.path.exists(csv_source)
    ):
        return Path(csv_source).read_text(encoding="utf-8")
    if isinstance(csv_source, str):
        return csv_source
    raise SchemaError(f"unsupported CSV source type {type(csv_source)!r}")


def load_dataset(csv_source: Union[bytes, str, os.PathLike], config: SchemaConfig) -> Dataset:
    """Parse a headered CSV against the schema config.

    Numeric domains missing from the config are inferred as the column's
    (min, max) and frozen into the returned schema. The "?" token is an
    ordinary categorical value, never a null.
    """
    text = _source_text(csv_source)
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise SchemaError("empty CSV: no header row")
    header = rows[0]
    if len(set(header)) != len(header):
        raise SchemaError(f"duplicate column names in CSV header: {header}")
    expected = [a.name for a in config.attributes]
    if header != expected:
        raise SchemaError(
            f"CSV header {header} does not match configured attributes {expected}"
        )

    body = rows[1:]
    columns: list[list[str]] = [[] for _ in header]
    for rownum, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise SchemaError(f"row {rownum} has {len(row)} fields, expected {len(header)}")
        for j, field_text in enumerate(row):
            columns[j].append(field_text)

    # parse cells column-wise so numeric errors name the column
    parsed_columns: list[list[Cell]] = []
    schema_out: list[AttributeSchema] = []
    for j, attr in enumerate(config.attributes):
        if attr.kind == NUMERIC:
            cells: list[Cell] = []
            for rownum, tok in enumerate(columns[j], start=2):
                try:
                    cells.append(parse_numeric_token(tok))
                except SchemaError as exc:
                    raise SchemaError(f"column {attr.name!r}, row {rownum}: {exc}") from exc
            domain = attr.numeric_domain
            if domain is None and cells:
                vals = [c.value for c in cells]  # type: ignore[union-attr]
                domain = (min(vals), max(vals))
            schema_out.append(replace(attr, numeric_domain=domain))
        else:
            cells = [RawCell(tok) for tok in columns[j]]
            if attr.is_qi:
                taxonomy = config.taxonomies[attr.name]
                leaves = set(taxonomy.leaf_labels)
                for rownum, cell in enumerate(cells, start=2):
                    if cell.value not in leaves:  # type: ignore[union-attr]
                        raise SchemaError(
                            f"column {attr.name!r}, row {rownum}: value "
                            f"{cell.value!r} is not a leaf of its taxonomy"  # type: ignore[union-attr]
                        )
            schema_out.append(attr)
        parsed_columns.append(cells)

    records = tuple(
        Record(tuple(parsed_columns[j][i] for j in range(len(header))))
        for i in range(len(body))
    )
    return Dataset(schema=tuple(schema_out), records=records, provenance=ORIGINAL)


def serialize_csv(d: Dataset) -> bytes:
    """Render a dataset back to CSV bytes (UTF-8, LF line endings)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([a.name for a in d.schema])
    for rec in d.records:
        writer.writerow([render_cell(c) for c in rec.cells])
    return buf.getvalue().encode("utf-8")


def sample_records(d: Dataset, count: int, seed: int) -> Dataset:
    """Uniform sample without replacement; original record order is kept."""
    if count < 0 or count > d.n:
        raise SchemaError(f"sample count {count} outside [0, {d.n}]")
    rng = np.random.default_rng(seed)
    chosen = np.sort(rng.choice(d.n, size=count, replace=False))
    return replace(d, records=tuple(d.records[int(i)] for i in chosen))


def dataset_from_records(schema: Iterable[AttributeSchema],
                         records: Iterable[Record],
                         provenance: Provenance = ORIGINAL) -> Dataset:
    return Dataset(schema=tuple(schema), records=tuple(records), provenance=provenance)
