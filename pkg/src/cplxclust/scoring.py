"""Complexity scores: order types by posterior median, accumulate the
Hellinger distance between neighbours along that order, and rescale the
running totals to 0..10.

The raw score of the k-th type in median-ascending order is

    score[0] = 0
    score[k] = score[k-1] + H(posterior[k], posterior[k-1])

with distances looked up in the precomputed matrix. Because only
adjacent-in-order distances enter the chain, the scores depend on the
median ordering; two types with nearly tied medians can swap places and
reroute the chain. That sensitivity is inherent to the definition and
is left as-is.
"""

import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import DataError
from .hellinger import DistanceMatrix, build_matrix
from .posterior import BetaDist, median, variance

__all__ = [
    "ScoredType",
    "sort_by_complexity",
    "raw_scores",
    "scale_scores",
    "score_types",
]

SCALE_MAX = 10.0


@dataclass(frozen=True)
class ScoredType:
    """One product type with its posterior and complexity scores.

    ``rank`` is the 1-based position in median-ascending order;
    ``raw_score`` the cumulative Hellinger distance up to that rank;
    ``scaled_score`` the raw score rescaled so the most complex type
    scores exactly 10 (all zero when no type differs from any other).
    """

    type_id: str
    posterior: BetaDist
    median: float
    variance: float
    raw_score: float
    scaled_score: float
    rank: int
    attributes: tuple[tuple[str, str], ...] = ()


def sort_by_complexity(
    posteriors: Sequence[tuple[str, BetaDist]],
) -> list[tuple[str, BetaDist]]:
    """Order types by ascending posterior median.

    Ties are broken by ascending variance (the smaller spread is the
    less complex type); remaining ties keep input order.
    """
    if len(posteriors) == 0:
        raise DataError("cannot order zero types")
    ids = [t for t, _ in posteriors]
    if len(set(ids)) != len(ids):
        raise DataError("type ids must be unique")
    return sorted(posteriors, key=lambda item: (median(item[1]), variance(item[1])))


def raw_scores(
    ordered: Sequence[tuple[str, BetaDist]], matrix: DistanceMatrix
) -> list[float]:
    """Cumulative adjacent Hellinger distances along the given order.

    Distances are indexed from ``matrix``, never recomputed, so the
    scores are consistent with whatever matrix the caller built. The
    ordered ids must be a permutation of the matrix labels.
    """
    ids = [t for t, _ in ordered]
    if sorted(ids) != sorted(matrix.labels):
        raise DataError(
            "ordered types do not match distance matrix labels: "
            f"{sorted(ids)[:5]}... vs {sorted(matrix.labels)[:5]}..."
        )
    idx = [matrix.index_of(t) for t in ids]
    out = [0.0]
    for k in range(1, len(idx)):
        out.append(out[-1] + float(matrix.entries[idx[k], idx[k - 1]]))
    return out


def scale_scores(raw: Sequence[float]) -> list[float]:
    """Min-max rescale of raw scores onto [0, 10].

    With the chain seeded at 0 this is 10 * raw / max(raw). If all raw
    scores are equal (every pairwise distance zero) there is nothing to
    differentiate and every score is 0.
    """
    raw = list(raw)
    if not raw:
        return []
    lo = min(raw)
    hi = max(raw)
    span = hi - lo
    if span <= 0.0:
        if len(raw) > 1:
            warnings.warn(
                "all raw scores equal; no complexity differentiation, "
                "emitting all-zero scores",
                RuntimeWarning,
                stacklevel=2,
            )
        return [0.0 for _ in raw]
    return [SCALE_MAX * (r - lo) / span for r in raw]


def score_types(
    posteriors: Sequence[tuple[str, BetaDist]],
    matrix: DistanceMatrix | None = None,
    attributes: Mapping[str, tuple[tuple[str, str], ...]] | None = None,
) -> list[ScoredType]:
    """Full scoring pass: order, accumulate, rescale, assemble.

    Returns one ``ScoredType`` per input, in the input order. A
    distance matrix is built on the fly unless one is supplied.
    """
    if matrix is None:
        matrix = build_matrix(posteriors)
    ordered = sort_by_complexity(posteriors)
    raw = raw_scores(ordered, matrix)
    scaled = scale_scores(raw)
    by_id = {}
    for rank0, ((type_id, dist), r, s) in enumerate(zip(ordered, raw, scaled)):
        by_id[type_id] = ScoredType(
            type_id=type_id,
            posterior=dist,
            median=median(dist),
            variance=variance(dist),
            raw_score=r,
            scaled_score=s,
            rank=rank0 + 1,
            attributes=(attributes or {}).get(type_id, ()),
        )
    return [by_id[t] for t, _ in posteriors]
