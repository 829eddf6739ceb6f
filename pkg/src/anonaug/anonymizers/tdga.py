"""Top-down greedy anonymization: binary splitting with balancing.

Groups of at least 2k records are split around a farthest-pair seed; the
short side, if any, is topped up by moving the cheapest records over
from the long one (the kernel handles one split). Splitting recurses
depth-first, left side first, so the seed RNG is consumed in a fixed
order and runs are reproducible from (dataset, k, seed).
"""

from __future__ import annotations

import numpy as np

from ..dataset import Dataset
from ..taxonomy import TaxonomySet
from .. import kernels
from .base import TDGA, AnonymizationRun, build_run, check_preconditions
from .encoding import encode_dataset

SPLIT_THRESHOLD_FACTOR = 2    # groups under 2k records are final
FARTHEST_PAIR_ROUNDS = 3      # fixed by the kernel contract


def tdga_anonymize(d: Dataset, k: int, seed: int,
                   taxonomies: TaxonomySet = TaxonomySet()) -> AnonymizationRun:
    check_preconditions(d, k)
    enc = encode_dataset(d, taxonomies)
    rng = np.random.default_rng(seed)

    final: list[np.ndarray] = []
    stack = [np.arange(d.n, dtype=np.int64)]
    while stack:
        group = stack.pop()
        if len(group) < SPLIT_THRESHOLD_FACTOR * k:
            final.append(group)
            continue
        start_pos = int(rng.integers(len(group)))
        split = kernels.tdga_split(*enc.kernel_args(), members=group, k=k,
                                   start_pos=start_pos)
        if split is None:
            final.append(group)
            continue
        left, right = split
        stack.append(right)
        stack.append(left)

    return build_run(d, taxonomies, k, TDGA, [list(map(int, g)) for g in final],
                     seed=seed)
