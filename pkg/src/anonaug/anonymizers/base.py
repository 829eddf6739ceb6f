"""Shared pieces of the three anonymizers: group generalization and
assembly of an AnonymizationRun from a partition of record indices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ..dataset import (
    NUMERIC,
    AttributeSchema,
    Cell,
    Dataset,
    IntervalCell,
    NodeCell,
    NumberCell,
    Provenance,
    RawCell,
    Record,
)
from ..errors import AnonymizationError
from ..loss import gcp_dataset
from ..taxonomy import TaxonomySet

BM = "BM"
TDGA = "TDGA"
CBA = "CBA"
ALGORITHMS = (BM, TDGA, CBA)


@dataclass(frozen=True)
class Partition:
    member_indices: tuple[int, ...]
    generalized_qi_cells: tuple[Cell, ...]


@dataclass(frozen=True)
class AnonymizationRun:
    algorithm: str
    requested_k: int
    partitions: tuple[Partition, ...]
    output: Dataset
    gcp: float
    seed: Optional[int] = None


def check_preconditions(d: Dataset, k: int) -> None:
    if k < 2:
        raise AnonymizationError(f"k must be >= 2, got {k}")
    if d.n < k:
        raise AnonymizationError(f"dataset has {d.n} records, fewer than k={k}")
    if d.z < 1:
        raise AnonymizationError("dataset has no quasi-identifiers")


def generalize_group(group: Sequence[Record], schema: Sequence[AttributeSchema],
                     taxonomies: TaxonomySet) -> list[Cell]:
    """One generalized cell per QI: numeric span or categorical LCA."""
    if not group:
        raise AnonymizationError("cannot generalize an empty group")
    cells: list[Cell] = []
    for j, attr in enumerate(schema):
        if not attr.is_qi:
            continue
        column = [rec.cells[j] for rec in group]
        if attr.kind == NUMERIC:
            vals = []
            for cell in column:
                if not isinstance(cell, NumberCell):
                    raise AnonymizationError(
                        f"attribute {attr.name!r}: expected raw numbers, got {cell!r}"
                    )
                vals.append(cell.value)
            lo, hi = min(vals), max(vals)
            cells.append(NumberCell(lo) if lo == hi else IntervalCell(lo, hi))
        else:
            labels = []
            for cell in column:
                if isinstance(cell, RawCell):
                    labels.append(cell.value)
                elif isinstance(cell, NodeCell):
                    labels.append(cell.label)
                else:
                    raise AnonymizationError(
                        f"attribute {attr.name!r}: expected labels, got {cell!r}"
                    )
            cells.append(NodeCell(taxonomies[attr.name].lca(labels)))
    return cells


def build_run(d: Dataset, taxonomies: TaxonomySet, k: int, algorithm: str,
              groups: Sequence[Sequence[int]], seed: Optional[int]) -> AnonymizationRun:
    """Generalize each index group and emit the output in input order."""
    qi_cols = d.qi_indices
    partitions = []
    new_cells: list[Optional[tuple[Cell, ...]]] = [None] * d.n
    raw_groups = []
    for indices in groups:
        members = [d.records[i] for i in indices]
        raw_groups.append(members)
        generalized = tuple(generalize_group(members, d.schema, taxonomies))
        partitions.append(Partition(tuple(int(i) for i in indices), generalized))
        for i in indices:
            rec = d.records[i]
            cells = list(rec.cells)
            for pos, col in enumerate(qi_cols):
                cells[col] = generalized[pos]
            new_cells[i] = tuple(cells)
    for i, cells in enumerate(new_cells):
        if cells is None:
            raise AnonymizationError(f"record {i} not covered by any partition")

    output = Dataset(
        schema=d.schema,
        records=tuple(Record(cells) for cells in new_cells),  # type: ignore[arg-type]
        provenance=Provenance("anonymized", algorithm=algorithm, requested_k=k),
    )
    gcp = gcp_dataset(raw_groups, d.schema, taxonomies, d.n)
    return AnonymizationRun(
        algorithm=algorithm,
        requested_k=k,
        partitions=tuple(partitions),
        output=output,
        gcp=gcp,
        seed=seed,
    )
