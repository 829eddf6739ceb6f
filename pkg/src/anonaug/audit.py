"""Privacy auditing: equivalence classes, measured k, distinct l.

Records are grouped on the *rendered* text of their quasi-identifier
cells, exactly as they would appear in a flat CSV, so an interval cell
and a raw string with the same text are indistinguishable on purpose.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .dataset import Dataset, render_cell
from .errors import AuditError


@dataclass(frozen=True)
class EquivalenceClass:
    signature: tuple[str, ...]
    member_indices: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.member_indices)


@dataclass(frozen=True)
class ReportCell:
    """Requested-vs-measured k in the '=', '>(v)', '<(v)' notation."""

    requested_k: int
    measured_k: int

    def __post_init__(self) -> None:
        if self.requested_k < 2:
            raise AuditError(f"requested k must be >= 2, got {self.requested_k}")
        if self.measured_k < 1:
            raise AuditError(f"measured k must be >= 1, got {self.measured_k}")

    @property
    def text(self) -> str:
        if self.measured_k == self.requested_k:
            return "="
        if self.measured_k > self.requested_k:
            return f">({self.measured_k})"
        return f"<({self.measured_k})"

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class AnonymityReport:
    k: int
    l_distinct: Optional[int]
    class_count: int
    class_size_histogram: dict[int, int]

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "l_distinct": self.l_distinct,
            "class_count": self.class_count,
            "class_size_histogram": {
                str(size): count
                for size, count in sorted(self.class_size_histogram.items())
            },
        }


def qi_signature(d: Dataset, record_index: int) -> tuple[str, ...]:
    rec = d.records[record_index]
    return tuple(render_cell(rec.cells[j]) for j in d.qi_indices)


def equivalence_classes(d: Dataset) -> list[EquivalenceClass]:
    """Group records by QI signature, ordered by first member index."""
    if d.n < 1:
        raise AuditError("cannot compute equivalence classes of an empty dataset")
    groups: dict[tuple[str, ...], list[int]] = {}
    for i in range(d.n):
        groups.setdefault(qi_signature(d, i), []).append(i)
    return [
        EquivalenceClass(signature=sig, member_indices=tuple(members))
        for sig, members in groups.items()
    ]


def calc_k(d: Dataset) -> int:
    """Minimum equivalence-class size; errors on an empty dataset."""
    return min(ec.size for ec in equivalence_classes(d))


def calc_l_distinct(d: Dataset) -> int:
    """Minimum count of distinct sensitive values within any class."""
    s_idx = d.sensitive_index
    if s_idx is None:
        raise AuditError("dataset has no sensitive attribute")
    classes = equivalence_classes(d)
    return min(
        len({render_cell(d.records[i].cells[s_idx]) for i in ec.member_indices})
        for ec in classes
    )


def audit_report(d: Dataset) -> AnonymityReport:
    classes = equivalence_classes(d)
    sizes = Counter(ec.size for ec in classes)
    l_distinct = calc_l_distinct(d) if d.sensitive_index is not None else None
    return AnonymityReport(
        k=min(sizes),
        l_distinct=l_distinct,
        class_count=len(classes),
        class_size_histogram=dict(sizes),
    )


def compare_cell(requested_k: int, measured_k: int) -> ReportCell:
    return ReportCell(requested_k=requested_k, measured_k=measured_k)
