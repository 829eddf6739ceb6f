"""Clustering-based anonymization: greedy k-member clusters.

Clusters of exactly k grow around seeds -- the first chosen by the
seeded RNG, each next one the record farthest from the previous cluster
-- by repeatedly absorbing the record that raises the cluster's NCP
least. Records left over when fewer than k remain each join the cluster
whose NCP grows least, so the output has floor(n/k) clusters.
"""

from __future__ import annotations

import numpy as np

from ..dataset import Dataset
from ..taxonomy import TaxonomySet
from .. import kernels
from .base import CBA, AnonymizationRun, build_run, check_preconditions
from .encoding import encode_dataset


def cba_anonymize(d: Dataset, k: int, seed: int,
                  taxonomies: TaxonomySet = TaxonomySet()) -> AnonymizationRun:
    check_preconditions(d, k)
    enc = encode_dataset(d, taxonomies)
    rng = np.random.default_rng(seed)
    start = int(rng.integers(d.n))

    labels = kernels.kmember_assign(*enc.kernel_args(), k=k, start=start)
    cluster_count = int(labels.max()) + 1
    groups: list[list[int]] = [[] for _ in range(cluster_count)]
    for record, label in enumerate(labels):
        groups[int(label)].append(record)

    return build_run(d, taxonomies, k, CBA, groups, seed=seed)
