"""Value-generalization hierarchies for categorical quasi-identifiers.

Hierarchy files list one leaf-to-root path per line, ";"-separated
("Milan;Northern Italy;Italy"). All paths must have the same depth so
generalization levels are well defined; trees are built by merging the
shared upper parts of the paths. Leaf order in the file is the
deterministic total order used for median splits.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Union

from .errors import TaxonomyError


@dataclass
class TaxonomyNode:
    label: str
    children: list["TaxonomyNode"] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children


class Taxonomy:
    """A rooted tree of labels with O(1) label lookup and leaf ordering."""

    def __init__(self, attribute_name: str, root: TaxonomyNode, leaf_order: list[str]):
        self.attribute_name = attribute_name
        self.root = root
        self._paths: dict[str, tuple[str, ...]] = {}  # label -> path root..label
        self._leaf_counts: dict[str, int] = {}
        self._index_paths(root, ())
        self._leaves = leaf_order
        self._leaf_index = {label: i for i, label in enumerate(leaf_order)}

    def _index_paths(self, node: TaxonomyNode, prefix: tuple[str, ...]) -> int:
        if node.label in self._paths:
            raise TaxonomyError(
                f"label {node.label!r} appears twice in the {self.attribute_name!r} hierarchy"
            )
        path = prefix + (node.label,)
        self._paths[node.label] = path
        if node.is_leaf:
            count = 1
        else:
            count = sum(self._index_paths(child, path) for child in node.children)
        self._leaf_counts[node.label] = count
        return count

    # -- queries ------------------------------------------------------------

    @property
    def leaf_labels(self) -> list[str]:
        return list(self._leaves)

    @property
    def num_leaves(self) -> int:
        return len(self._leaves)

    @property
    def depth(self) -> int:
        return len(self._paths[self._leaves[0]])

    def __contains__(self, label: str) -> bool:
        return label in self._paths

    def path(self, label: str) -> tuple[str, ...]:
        try:
            return self._paths[label]
        except KeyError:
            raise TaxonomyError(
                f"label {label!r} not in the {self.attribute_name!r} hierarchy"
            ) from None

    def is_leaf(self, label: str) -> bool:
        return label in self._leaf_index

    def leaf_index(self, leaf_label: str) -> int:
        """0-based position of a leaf in the hierarchy-file order."""
        try:
            return self._leaf_index[leaf_label]
        except KeyError:
            if leaf_label in self._paths:
                raise TaxonomyError(
                    f"label {leaf_label!r} is internal, not a leaf"
                ) from None
            raise TaxonomyError(
                f"label {leaf_label!r} not in the {self.attribute_name!r} hierarchy"
            ) from None

    def subtree_leaf_count(self, label: str) -> int:
        """Number of leaves at or below the node (a leaf counts as 1)."""
        self.path(label)
        return self._leaf_counts[label]

    def lca(self, labels) -> str:
        """Label of the lowest node that is an ancestor-or-self of all inputs."""
        labels = list(labels)
        if not labels:
            raise TaxonomyError("lca of an empty label set is undefined")
        paths = [self.path(lbl) for lbl in labels]
        shortest = min(len(p) for p in paths)
        common = 0
        for depth in range(shortest):
            step = paths[0][depth]
            if all(p[depth] == step for p in paths[1:]):
                common = depth + 1
            else:
                break
        return paths[0][common - 1]

    def is_ancestor_or_self(self, ancestor: str, label: str) -> bool:
        return ancestor in self.path(label)

    def level_labels(self, level: int) -> list[str]:
        """Labels at a depth level, 0 = leaves, increasing toward the root."""
        depth = self.depth
        if not 0 <= level < depth:
            raise TaxonomyError(f"level {level} outside [0, {depth})")
        wanted = depth - level
        out = []
        seen = set()
        for leaf in self._leaves:
            label = self._paths[leaf][wanted - 1]
            if label not in seen:
                seen.add(label)
                out.append(label)
        return out


class TaxonomySet(Mapping[str, Taxonomy]):
    """Taxonomies keyed by attribute name, one per categorical QI."""

    def __init__(self, taxonomies: Mapping[str, Taxonomy] = ()):
        self._taxonomies = dict(taxonomies)

    def __getitem__(self, name: str) -> Taxonomy:
        try:
            return self._taxonomies[name]
        except KeyError:
            raise TaxonomyError(f"no taxonomy loaded for attribute {name!r}") from None

    def __iter__(self) -> Iterator[str]:
        return iter(self._taxonomies)

    def __len__(self) -> int:
        return len(self._taxonomies)


def load_hierarchy(csv_source: Union[bytes, str], attribute_name: str) -> Taxonomy:
    """Build a taxonomy from ";"-separated leaf-to-root path rows."""
    text = csv_source.decode("utf-8") if isinstance(csv_source, bytes) else csv_source
    rows = [row for row in csv.reader(io.StringIO(text), delimiter=";") if row]
    if not rows:
        raise TaxonomyError(f"empty hierarchy file for attribute {attribute_name!r}")

    depth = len(rows[0])
    if depth < 2:
        raise TaxonomyError(
            f"hierarchy rows need at least a leaf and a root, got {rows[0]!r}"
        )
    root_label = rows[0][-1]
    root = TaxonomyNode(root_label)
    nodes: dict[str, TaxonomyNode] = {root_label: root}
    parents: dict[str, str] = {}
    leaf_order: list[str] = []

    for rownum, row in enumerate(rows, start=1):
        row = [part.strip() for part in row]
        if len(row) != depth:
            raise TaxonomyError(
                f"row {rownum} has depth {len(row)}, expected {depth} "
                f"(all paths in a hierarchy must have equal depth)"
            )
        if row[-1] != root_label:
            raise TaxonomyError(
                f"row {rownum} ends at {row[-1]!r} but the root is {root_label!r}"
            )
        if any(not part for part in row):
            raise TaxonomyError(f"row {rownum} contains an empty label")
        leaf = row[0]
        if leaf in nodes:
            raise TaxonomyError(f"duplicate leaf label {leaf!r} (row {rownum})")
        # walk root -> leaf, creating nodes and checking path consistency
        current = root
        for label in reversed(row[:-1]):
            existing = nodes.get(label)
            if existing is None:
                node = TaxonomyNode(label)
                nodes[label] = node
                parents[label] = current.label
                current.children.append(node)
                current = node
            else:
                if parents.get(label) != current.label:
                    raise TaxonomyError(
                        f"label {label!r} appears under both "
                        f"{parents.get(label)!r} and {current.label!r} (row {rownum})"
                    )
                current = existing
        leaf_order.append(leaf)

    taxonomy = Taxonomy(attribute_name, root, leaf_order)
    for leaf in leaf_order:
        if not taxonomy.is_leaf(leaf):
            raise TaxonomyError(
                f"label {leaf!r} is used both as a leaf and as an inner level"
            )
    return taxonomy
