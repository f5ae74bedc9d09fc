"""Scikit-learn compatible front end.

``ComplexityClusterer`` wraps the posterior / distance / scoring /
clustering chain behind the usual estimator API (``fit``,
``fit_predict``, ``get_params``), so it slots into sklearn pipelines and
model-selection tooling. Rows of X are product types, columns are
inspection counts.
"""

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .cluster import agglomerate, cut, label_clusters
from .errors import DataError
from .hellinger import build_matrix
from .posterior import TypeCounts, posterior_from_counts
from .scoring import score_types

__all__ = ["ComplexityClusterer"]


class ComplexityClusterer(BaseEstimator, ClusterMixin):
    """Cluster product types by the similarity of their failure posteriors.

    Parameters
    ----------
    n_clusters : int, default=2
        Number of complexity groups to cut the dendrogram into.

    Attributes
    ----------
    posteriors_ : list of BetaDist
        Jeffreys posterior of the failure fraction, one per row of X.
    medians_, variances_ : ndarray of shape (n_samples,)
        Posterior medians and variances.
    raw_scores_, scores_ : ndarray of shape (n_samples,)
        Cumulative-distance scores and their 0..10 rescaling.
    distances_ : ndarray of shape (n_samples, n_samples)
        Pairwise Hellinger distances.
    dendrogram_ : Dendrogram
        Complete-linkage merge tree.
    assignment_ : ClusterAssignment
        Lettered groups, A = most complex.
    labels_ : ndarray of shape (n_samples,)
        Integer cluster label per row; 0 corresponds to group A.

    Examples
    --------
    >>> import numpy as np
    >>> X = np.array([[200, 5], [170, 4], [50, 2], [48, 2]])
    >>> ComplexityClusterer(n_clusters=2).fit_predict(X)
    array([1, 1, 0, 0])
    """

    def __init__(self, n_clusters: int = 2):
        self.n_clusters = n_clusters

    def fit(self, X, y=None, type_ids=None):
        """Fit on an (n_samples, 2) array of [inspected, repaired] counts.

        Every row must have at least one inspected item: a row without
        inspections carries no evidence and cannot be placed relative
        to the others (filter such rows out before fitting).
        """
        X = check_array(X, dtype="numeric", ensure_2d=True)
        if X.shape[1] != 2:
            raise DataError(
                f"X must have two columns [inspected, repaired], got {X.shape[1]}"
            )
        if np.any(X < 0) or np.any(X != np.floor(X)):
            raise DataError("counts must be non-negative integers")
        n = X.shape[0]
        if not isinstance(self.n_clusters, int) or isinstance(self.n_clusters, bool):
            raise DataError(f"n_clusters must be an int, got {self.n_clusters!r}")
        if not (1 <= self.n_clusters <= n):
            raise DataError(
                f"n_clusters must be in [1, {n}] for {n} samples, "
                f"got {self.n_clusters}"
            )
        if type_ids is None:
            type_ids = [str(i) for i in range(n)]
        elif len(type_ids) != n:
            raise DataError("type_ids length must match X")
        type_ids = [str(t) for t in type_ids]

        counts = [
            TypeCounts(type_id=t, inspected=int(row[0]), repaired=int(row[1]))
            for t, row in zip(type_ids, X)
        ]
        no_evidence = [c.type_id for c in counts if c.inspected == 0]
        if no_evidence:
            raise DataError(
                f"rows with zero inspected items cannot be analyzed: {no_evidence}"
            )
        posteriors = [(c.type_id, posterior_from_counts(c)) for c in counts]
        matrix = build_matrix(posteriors)
        scored = score_types(posteriors, matrix)
        tree = agglomerate(matrix)
        assignment = label_clusters(cut(tree, self.n_clusters), scored)

        letter_rank = {g.label: i for i, g in enumerate(assignment.groups)}
        member_letter = {t: g.label for g in assignment.groups for t in g.members}

        self.n_features_in_ = 2
        self.type_ids_ = list(type_ids)
        self.posteriors_ = [d for _, d in posteriors]
        self.medians_ = np.array([s.median for s in scored])
        self.variances_ = np.array([s.variance for s in scored])
        self.raw_scores_ = np.array([s.raw_score for s in scored])
        self.scores_ = np.array([s.scaled_score for s in scored])
        self.distances_ = np.asarray(matrix.entries)
        self.matrix_ = matrix
        self.scored_ = scored
        self.dendrogram_ = tree
        self.assignment_ = assignment
        self.labels_ = np.array([letter_rank[member_letter[t]] for t in type_ids])
        return self

    def cluster_letters(self):
        """Cluster letter per fitted row (A = most complex group)."""
        check_is_fitted(self, "labels_")
        letters = [g.label for g in self.assignment_.groups]
        return [letters[i] for i in self.labels_]
