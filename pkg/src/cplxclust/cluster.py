"""Agglomerative complete-linkage clustering over a Hellinger distance
matrix, plus the dendrogram produced by the merge sequence and its
k-cut into labelled groups.

The merge loop is the plain O(n^3) distance-matrix algorithm: start
from singletons, repeatedly merge the pair of clusters with the
smallest complete-linkage distance (the largest member-to-member
distance), and record that distance as the merge height. At the scale
this tool targets (hundreds of types) the simple algorithm is fast and
easy to verify against a brute-force reference.

Tie-break: when several candidate pairs share the exact minimum
distance, each cluster is represented by the smallest original row
index among its members, and the pair whose (smaller, larger)
representative pair is lexicographically least merges first.
"""

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import DataError
from .hellinger import DistanceMatrix
from .scoring import ScoredType

__all__ = [
    "Dendrogram",
    "ClusterGroup",
    "ClusterAssignment",
    "agglomerate",
    "cut",
    "label_clusters",
    "cluster_label",
]


@dataclass(frozen=True)
class Dendrogram:
    """Binary merge tree over a set of leaves.

    Node references: 0..n-1 are leaves (indices into ``leaves``), and
    n+i is the cluster created by ``merges[i]``. For n leaves there are
    exactly n-1 merges and complete linkage guarantees the heights are
    non-decreasing.
    """

    leaves: tuple[str, ...]
    merges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        n = len(self.leaves)
        if n == 0:
            raise DataError("a dendrogram needs at least one leaf")
        if len(self.merges) != n - 1:
            raise DataError(
                f"{n} leaves require exactly {n - 1} merges, got {len(self.merges)}"
            )
        merges = tuple(
            (int(left), int(right), float(height))
            for left, right, height in self.merges
        )
        object.__setattr__(self, "leaves", tuple(str(s) for s in self.leaves))
        object.__setattr__(self, "merges", merges)
        seen = set()
        prev = 0.0
        for i, (left, right, height) in enumerate(merges):
            top = n + i
            for ref in (left, right):
                if not (0 <= ref < top):
                    raise DataError(f"merge {i} references unknown node {ref}")
                if ref in seen:
                    raise DataError(f"node {ref} is a child of two merges")
                seen.add(ref)
            if height < prev:
                raise DataError(
                    f"merge heights must be non-decreasing, got {height} "
                    f"after {prev}"
                )
            prev = height
        # Every node except the root must be consumed exactly once.
        if n > 1 and len(seen) != 2 * n - 2:
            raise DataError("dendrogram does not connect all leaves into one root")

    @property
    def n_leaves(self) -> int:
        return len(self.leaves)

    def members(self, node: int) -> tuple[int, ...]:
        """Leaf indices under a node, in traversal order."""
        n = self.n_leaves
        if node < n:
            return (node,)
        left, right, _ = self.merges[node - n]
        return self.members(left) + self.members(right)

    def leaf_order(self) -> tuple[int, ...]:
        """Display order of leaves (left-to-right traversal of the root)."""
        n = self.n_leaves
        root = n + len(self.merges) - 1 if self.merges else 0
        return self.members(root)

    def to_dict(self) -> dict:
        return {
            "leaves": list(self.leaves),
            "merges": [
                {"left": left, "right": right, "height": height}
                for left, right, height in self.merges
            ],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Dendrogram":
        return cls(
            leaves=tuple(doc["leaves"]),
            merges=tuple(
                (m["left"], m["right"], m["height"]) for m in doc["merges"]
            ),
        )


@dataclass(frozen=True)
class ClusterGroup:
    label: str
    members: tuple[str, ...]
    mean_scaled_score: float
    business_pct: float | None = None


@dataclass(frozen=True)
class ClusterAssignment:
    """A partition of the leaves into k labelled groups.

    Labels are assigned in descending mean scaled score, so group A is
    always the most complex.
    """

    k: int
    groups: tuple[ClusterGroup, ...]

    def label_of(self, type_id: str) -> str:
        for g in self.groups:
            if type_id in g.members:
                return g.label
        raise DataError(f"type {type_id!r} is not in any cluster")


def cluster_label(i: int) -> str:
    """Spreadsheet-style letters: A..Z, AA, AB, ..."""
    if i < 0:
        raise DataError(f"label index must be non-negative, got {i}")
    out = ""
    i += 1
    while i > 0:
        i, rem = divmod(i - 1, 26)
        out = chr(ord("A") + rem) + out
    return out


def agglomerate(matrix: DistanceMatrix) -> Dendrogram:
    """Complete-linkage agglomerative clustering of a distance matrix."""
    matrix.validate()
    n = matrix.n
    if n == 1:
        return Dendrogram(leaves=matrix.labels, merges=())

    work = matrix.entries.astype(float).copy()
    np.fill_diagonal(work, np.inf)
    reps = list(range(n))  # smallest original index in each active cluster
    node = list(range(n))  # dendrogram node id of each active cluster
    merges: list[tuple[int, int, float]] = []
    for step in range(n - 1):
        height = float(work.min())
        best = None
        for i, j in np.argwhere(work == height):
            if i >= j:
                continue
            key = (min(reps[i], reps[j]), max(reps[i], reps[j]))
            if best is None or key < best[0]:
                best = (key, int(i), int(j))
        _, i, j = best
        if reps[i] < reps[j]:
            left, right = node[i], node[j]
        else:
            left, right = node[j], node[i]
        merges.append((left, right, height))
        # Complete linkage: the merged cluster's distance to any other
        # is the max of the two old rows. Retire row/column j.
        merged_row = np.maximum(work[i], work[j])
        work[i, :] = merged_row
        work[:, i] = merged_row
        work[i, i] = np.inf
        work[j, :] = np.inf
        work[:, j] = np.inf
        reps[i] = min(reps[i], reps[j])
        node[i] = n + step
    return Dendrogram(leaves=matrix.labels, merges=tuple(merges))


def cut(tree: Dendrogram, k: int) -> list[list[str]]:
    """Partition the leaves into exactly k groups.

    Undoes the last k-1 merges: only the first n-k merges are applied.
    Groups are ordered by their smallest original leaf index, members in
    leaf index order.
    """
    n = tree.n_leaves
    if not isinstance(k, int) or isinstance(k, bool) or not (1 <= k <= n):
        raise DataError(f"k must be an integer in [1, {n}], got {k!r}")
    parent = list(range(n + len(tree.merges)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, (left, right, _) in enumerate(tree.merges[: n - k]):
        top = n + i
        parent[find(left)] = top
        parent[find(right)] = top

    groups: dict[int, list[int]] = {}
    for leaf in range(n):
        groups.setdefault(find(leaf), []).append(leaf)
    ordered = sorted(groups.values(), key=lambda g: g[0])
    return [[tree.leaves[i] for i in g] for g in ordered]


def label_clusters(
    groups: Sequence[Sequence[str]],
    scores: Sequence[ScoredType],
    business: Mapping[str, float] | None = None,
) -> ClusterAssignment:
    """Assign letters to groups by descending mean scaled score.

    ``business``, when given, maps type ids to business fractions; each
    group's fraction is the sum over its members.
    """
    by_id = {s.type_id: s for s in scores}
    if business is not None:
        known = [business.get(t, 0.0) for t in by_id]
        if sum(known) > 1.0 + 1e-9:
            raise DataError("business fractions sum to more than 1")
    enriched = []
    for members in groups:
        members = tuple(members)
        missing = [t for t in members if t not in by_id]
        if missing:
            raise DataError(f"no scores for cluster members {missing}")
        mean_score = sum(by_id[t].scaled_score for t in members) / len(members)
        pct = None
        if business is not None:
            pct = float(sum(business.get(t, 0.0) for t in members))
        enriched.append((mean_score, members, pct))
    enriched.sort(key=lambda item: -item[0])  # stable: ties keep cut order
    labelled = tuple(
        ClusterGroup(
            label=cluster_label(i),
            members=members,
            mean_scaled_score=mean_score,
            business_pct=pct,
        )
        for i, (mean_score, members, pct) in enumerate(enriched)
    )
    return ClusterAssignment(k=len(labelled), groups=labelled)
