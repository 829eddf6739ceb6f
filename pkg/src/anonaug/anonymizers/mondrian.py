"""Basic Mondrian: strict multidimensional median partitioning.

At every node the QI with the widest normalized span is cut at its lower
median (values equal to the median go left). A cut is allowable only if
both sides keep at least k records; when no QI admits an allowable cut
the node becomes a leaf partition. Width ties break by schema order.
Seed-free: the output is a pure function of the data and the hierarchy
leaf ordering.
"""

from __future__ import annotations

import numpy as np

from ..dataset import Dataset
from ..taxonomy import TaxonomySet
from .base import BM, AnonymizationRun, build_run, check_preconditions
from .encoding import EncodedQI, encode_dataset


def _widths(enc: EncodedQI, rows: np.ndarray) -> np.ndarray:
    sub = enc.values[rows]
    spans = sub.max(axis=0) - sub.min(axis=0)
    with np.errstate(invalid="ignore", divide="ignore"):
        widths = np.where(enc.denom > 0.0, spans / enc.denom, 0.0)
    return widths


def _split_partition(enc: EncodedQI, rows: np.ndarray, k: int,
                     leaves: list[np.ndarray]) -> None:
    stack = [rows]
    while stack:
        part = stack.pop()
        widths = _widths(enc, part)
        allowed = np.ones(enc.z, dtype=bool)
        cut = None
        while allowed.any():
            masked = np.where(allowed, widths, -np.inf)
            dim = int(np.argmax(masked))
            col = enc.values[part, dim]
            median = np.sort(col)[(len(col) - 1) // 2]
            left = part[col <= median]
            right = part[col > median]
            if len(left) >= k and len(right) >= k:
                cut = (left, right)
                break
            allowed[dim] = False
        if cut is None:
            leaves.append(part)
        else:
            # right first so the left side is processed next (stable order)
            stack.append(cut[1])
            stack.append(cut[0])


def mondrian_anonymize(d: Dataset, k: int,
                       taxonomies: TaxonomySet = TaxonomySet()) -> AnonymizationRun:
    check_preconditions(d, k)
    enc = encode_dataset(d, taxonomies)
    leaves: list[np.ndarray] = []
    _split_partition(enc, np.arange(d.n, dtype=np.int64), k, leaves)
    return build_run(d, taxonomies, k, BM, [list(map(int, part)) for part in leaves],
                     seed=None)
