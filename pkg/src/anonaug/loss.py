"""Information loss: normalized certainty penalty (NCP) and its
record-weighted global form (GCP).

Numeric attributes score the group's span as a fraction of the attribute
domain; categorical attributes score the leaf coverage of the lowest
common ancestor as a fraction of all leaves, with singletons scoring 0.
Attributes are weighted equally within a group.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .dataset import (
    CATEGORICAL,
    NUMERIC,
    AttributeSchema,
    IntervalCell,
    NodeCell,
    NumberCell,
    RawCell,
    Record,
)
from .errors import LossError
from .taxonomy import Taxonomy, TaxonomySet


@dataclass(frozen=True)
class LossBreakdown:
    per_attribute_ncp: dict[str, float]
    group_ncp: float
    gcp: float


def ncp_numeric(group_min: float, group_max: float,
                domain_min: float, domain_max: float) -> float:
    if domain_min >= domain_max:
        raise LossError(f"zero-width domain [{domain_min}, {domain_max}]")
    if not (domain_min <= group_min <= group_max <= domain_max):
        raise LossError(
            f"group span [{group_min}, {group_max}] outside domain "
            f"[{domain_min}, {domain_max}]"
        )
    return (group_max - group_min) / (domain_max - domain_min)


def ncp_categorical(t: Taxonomy, values: Iterable[str]) -> float:
    values = list(values)
    if not values:
        raise LossError("ncp of an empty categorical value set is undefined")
    lca = t.lca(values)
    covered = t.subtree_leaf_count(lca)
    if covered == 1:
        return 0.0
    return covered / t.subtree_leaf_count(t.root.label)


def _numeric_span(cells: Sequence, attr_name: str) -> tuple[float, float]:
    lo = hi = None
    for cell in cells:
        if isinstance(cell, NumberCell):
            c_lo = c_hi = cell.value
        elif isinstance(cell, IntervalCell):
            c_lo, c_hi = cell.lo, cell.hi
        else:
            raise LossError(
                f"attribute {attr_name!r}: expected numeric cells, got {cell!r}"
            )
        lo = c_lo if lo is None else min(lo, c_lo)
        hi = c_hi if hi is None else max(hi, c_hi)
    return lo, hi


def _categorical_labels(cells: Sequence, attr_name: str) -> list[str]:
    labels = []
    for cell in cells:
        if isinstance(cell, (RawCell,)):
            labels.append(cell.value)
        elif isinstance(cell, NodeCell):
            labels.append(cell.label)
        else:
            raise LossError(
                f"attribute {attr_name!r}: expected categorical cells, got {cell!r}"
            )
    return labels


def attribute_ncp(group: Sequence[Record], index: int, attr: AttributeSchema,
                  taxonomies: TaxonomySet) -> float:
    cells = [rec.cells[index] for rec in group]
    if attr.kind == NUMERIC:
        if attr.numeric_domain is None:
            raise LossError(f"attribute {attr.name!r} has no numeric domain")
        lo, hi = _numeric_span(cells, attr.name)
        return ncp_numeric(lo, hi, *attr.numeric_domain)
    return ncp_categorical(taxonomies[attr.name], _categorical_labels(cells, attr.name))


def group_ncp(group: Sequence[Record], schema: Sequence[AttributeSchema],
              taxonomies: TaxonomySet) -> float:
    """Equal-weight mean of the per-QI NCPs of a record group."""
    if not group:
        raise LossError("ncp of an empty group is undefined")
    qi = [(i, a) for i, a in enumerate(schema) if a.is_qi]
    if not qi:
        return 0.0
    total = sum(attribute_ncp(group, i, a, taxonomies) for i, a in qi)
    return total / len(qi)


def group_breakdown(group: Sequence[Record], schema: Sequence[AttributeSchema],
                    taxonomies: TaxonomySet) -> LossBreakdown:
    per_attr = {
        a.name: attribute_ncp(group, i, a, taxonomies)
        for i, a in enumerate(schema) if a.is_qi
    }
    ncp = sum(per_attr.values()) / len(per_attr) if per_attr else 0.0
    return LossBreakdown(per_attribute_ncp=per_attr, group_ncp=ncp, gcp=ncp)


def gcp_dataset(groups: Sequence[Sequence[Record]], schema: Sequence[AttributeSchema],
                taxonomies: TaxonomySet, n: int) -> float:
    """Record-weighted mean of group NCPs over a partition of n records."""
    total_records = sum(len(g) for g in groups)
    if total_records != n:
        raise LossError(f"groups hold {total_records} records, expected {n}")
    if n == 0:
        raise LossError("gcp of an empty dataset is undefined")
    return sum(len(g) * group_ncp(g, schema, taxonomies) for g in groups) / n
