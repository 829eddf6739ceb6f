"""Array encoding of quasi-identifiers for the partitioning kernels.

Numeric QIs become float columns; categorical QIs become leaf indices in
hierarchy-file order, with per-attribute lookup tables so a kernel can
fold a leaf into a running lowest-common-ancestor and read off subtree
leaf counts without touching Python objects:

  lca_flat[lca_off[a] + node*n_leaves[a] + leaf] -> lca node id
  leafcnt_flat[cnt_off[a] + node]                -> leaves under node
  leaf_node[leaf_off[a] + leaf]                  -> node id of a leaf

Node ids are preorder positions within each attribute's tree (root = 0),
so denom[a] for a categorical attribute equals leafcnt_flat[cnt_off[a]].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..dataset import CATEGORICAL, Dataset, NumberCell, RawCell, NodeCell
from ..errors import AnonymizationError
from ..taxonomy import Taxonomy, TaxonomySet


@dataclass
class EncodedQI:
    qi_names: list[str]
    qi_cols: list[int]              # schema indices of the QI attributes
    values: np.ndarray              # float64 (n, z): value or leaf index
    is_cat: np.ndarray              # uint8 (z,)
    denom: np.ndarray               # float64 (z,): domain width or leaf count
    n_leaves: np.ndarray            # int32 (z,)
    lca_flat: np.ndarray            # int32
    lca_off: np.ndarray             # int64 (z,)
    leafcnt_flat: np.ndarray        # int32
    cnt_off: np.ndarray             # int64 (z,)
    leaf_node: np.ndarray           # int32
    leaf_off: np.ndarray            # int64 (z,)

    @property
    def z(self) -> int:
        return len(self.qi_cols)

    def kernel_args(self) -> tuple:
        return (self.values, self.is_cat, self.denom, self.n_leaves,
                self.lca_flat, self.lca_off, self.leafcnt_flat, self.cnt_off,
                self.leaf_node, self.leaf_off)


def _pack_taxonomy(t: Taxonomy) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Preorder node ids plus the (node, leaf) -> lca fold table."""
    labels: list[str] = []

    def walk(node) -> None:
        labels.append(node.label)
        for child in node.children:
            walk(child)

    walk(t.root)
    id_of = {label: i for i, label in enumerate(labels)}
    id_paths = {label: [id_of[step] for step in t.path(label)] for label in labels}

    leaves = t.leaf_labels
    num_nodes, num_leaves = len(labels), len(leaves)
    lca = np.empty((num_nodes, num_leaves), dtype=np.int32)
    for label in labels:
        node_path = id_paths[label]
        for li, leaf in enumerate(leaves):
            leaf_path = id_paths[leaf]
            common = 0
            for a, b in zip(node_path, leaf_path):
                if a != b:
                    break
                common += 1
            lca[id_of[label], li] = node_path[common - 1]
    leafcnt = np.array([t.subtree_leaf_count(label) for label in labels], dtype=np.int32)
    leaf_node = np.array([id_of[leaf] for leaf in leaves], dtype=np.int32)
    return lca, leafcnt, leaf_node


def encode_dataset(d: Dataset, taxonomies: TaxonomySet) -> EncodedQI:
    """Encode the QI columns of a raw (not yet generalized) dataset."""
    qi_cols = list(d.qi_indices)
    if not qi_cols:
        raise AnonymizationError("dataset has no quasi-identifiers")
    z = len(qi_cols)
    n = d.n

    values = np.empty((n, z), dtype=np.float64)
    is_cat = np.zeros(z, dtype=np.uint8)
    denom = np.zeros(z, dtype=np.float64)
    n_leaves = np.zeros(z, dtype=np.int32)
    lca_parts: list[np.ndarray] = []
    cnt_parts: list[np.ndarray] = []
    leaf_parts: list[np.ndarray] = []
    lca_off = np.zeros(z, dtype=np.int64)
    cnt_off = np.zeros(z, dtype=np.int64)
    leaf_off = np.zeros(z, dtype=np.int64)
    lca_total = cnt_total = leaf_total = 0

    for a, col in enumerate(qi_cols):
        attr = d.schema[col]
        if attr.kind == CATEGORICAL:
            taxonomy = taxonomies[attr.name]
            lca, leafcnt, leaf_node = _pack_taxonomy(taxonomy)
            is_cat[a] = 1
            denom[a] = float(taxonomy.num_leaves)
            n_leaves[a] = taxonomy.num_leaves
            lca_off[a], cnt_off[a], leaf_off[a] = lca_total, cnt_total, leaf_total
            lca_parts.append(lca.ravel())
            cnt_parts.append(leafcnt)
            leaf_parts.append(leaf_node)
            lca_total += lca.size
            cnt_total += leafcnt.size
            leaf_total += leaf_node.size
            for i, rec in enumerate(d.records):
                cell = rec.cells[col]
                if isinstance(cell, RawCell):
                    label = cell.value
                elif isinstance(cell, NodeCell) and taxonomy.is_leaf(cell.label):
                    label = cell.label
                else:
                    raise AnonymizationError(
                        f"attribute {attr.name!r}: cannot anonymize already "
                        f"generalized cell {cell!r}"
                    )
                values[i, a] = taxonomy.leaf_index(label)
        else:
            if attr.numeric_domain is None:
                raise AnonymizationError(
                    f"numeric attribute {attr.name!r} has no domain"
                )
            lo, hi = attr.numeric_domain
            denom[a] = hi - lo
            for i, rec in enumerate(d.records):
                cell = rec.cells[col]
                if not isinstance(cell, NumberCell):
                    raise AnonymizationError(
                        f"attribute {attr.name!r}: cannot anonymize already "
                        f"generalized cell {cell!r}"
                    )
                values[i, a] = cell.value

    def _concat(parts: list[np.ndarray]) -> np.ndarray:
        if not parts:
            return np.zeros(0, dtype=np.int32)
        return np.ascontiguousarray(np.concatenate(parts), dtype=np.int32)

    return EncodedQI(
        qi_names=[d.schema[c].name for c in qi_cols],
        qi_cols=qi_cols,
        values=values,
        is_cat=is_cat,
        denom=denom,
        n_leaves=n_leaves,
        lca_flat=_concat(lca_parts),
        lca_off=lca_off,
        leafcnt_flat=_concat(cnt_parts),
        cnt_off=cnt_off,
        leaf_node=_concat(leaf_parts),
        leaf_off=leaf_off,
    )
