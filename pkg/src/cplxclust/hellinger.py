"""Hellinger distance between beta distributions and the pairwise
distance matrix over a set of product types.

For Beta(a1, b1) and Beta(a2, b2) the squared Hellinger distance has the
closed form

    H^2 = 1 - B((a1+a2)/2, (b1+b2)/2) / sqrt(B(a1, b1) * B(a2, b2))

which ``hellinger_beta`` evaluates entirely in log space. The
definitional integral

    H^2 = 1 - integral_0^1 sqrt(f1(t) * f2(t)) dt

is implemented independently in ``hellinger_numeric`` with adaptive
quadrature (scipy, with scipy's own log-density) so the closed form can
be verified against it; the two routes share no special-function code.
"""

import io
import csv
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.integrate import quad
from scipy.special import betaln as _scipy_betaln

from .errors import DataError, DomainError, NumericalError, SchemaError
from .posterior import BetaDist
from .special import log_beta

__all__ = ["DistanceMatrix", "hellinger_beta", "hellinger_numeric", "build_matrix"]


def hellinger_beta(x: BetaDist, y: BetaDist) -> float:
    """Closed-form Hellinger distance between two beta distributions.

    Always in [0, 1]; exactly 0 for identical parameters. The argument
    of the outer square root is clamped at 0 because for nearly
    identical distributions the log-space ratio can round to slightly
    above 1.
    """
    log_ratio = log_beta(0.5 * (x.a + y.a), 0.5 * (x.b + y.b)) - 0.5 * (
        log_beta(x.a, x.b) + log_beta(y.a, y.b)
    )
    return math.sqrt(max(0.0, 1.0 - math.exp(log_ratio)))


def _interior_mode(a: float, b: float) -> float:
    if a > 1.0 and b > 1.0:
        m = (a - 1.0) / (a + b - 2.0)
    else:
        m = a / (a + b)
    return min(max(m, 1e-12), 1.0 - 1e-12)


def hellinger_numeric(x: BetaDist, y: BetaDist, abs_tol: float = 1e-12) -> float:
    """Hellinger distance by adaptive quadrature of the defining integral.

    Used as an independent check on ``hellinger_beta``. The integrand
    sqrt(f_x(t) f_y(t)) is integrated under the substitution
    t = sin(theta)^2, which removes the endpoint singularities that
    appear when a shape parameter is below 1 and resolves the sharp
    interior peak of large-shape densities. ``abs_tol`` is the absolute
    tolerance on the integral (must be >= 1e-12).

    Raises ``NumericalError`` if the quadrature cannot reach the
    requested tolerance within its subdivision budget.
    """
    if not (abs_tol >= 1e-12):
        raise DomainError(f"abs_tol must be >= 1e-12, got {abs_tol!r}")
    a1, b1, a2, b2 = x.a, x.b, y.a, y.b
    am = 0.5 * (a1 + a2)
    bm = 0.5 * (b1 + b2)
    c = -0.5 * (float(_scipy_betaln(a1, b1)) + float(_scipy_betaln(a2, b2)))

    def integrand(theta: float) -> float:
        s = math.sin(theta)
        ct = math.cos(theta)
        t = s * s
        omt = ct * ct
        if t <= 0.0 or omt <= 0.0:
            return 0.0
        lg = (am - 1.0) * math.log(t) + (bm - 1.0) * math.log(omt) + c
        if lg < -745.0:
            return 0.0
        return math.exp(lg) * 2.0 * s * ct

    hints = sorted(
        {
            math.asin(math.sqrt(_interior_mode(a, b)))
            for a, b in ((am, bm), (a1, b1), (a2, b2))
        }
    )
    result = quad(
        integrand,
        0.0,
        0.5 * math.pi,
        points=hints,
        limit=300,
        epsabs=abs_tol,
        epsrel=1e-11,
        full_output=1,
    )
    bc, err = result[0], result[1]
    if len(result) > 3 and err > 10.0 * abs_tol:
        raise NumericalError(
            f"quadrature did not converge for shapes ({a1}, {b1}) vs "
            f"({a2}, {b2}): {result[3]}"
        )
    return math.sqrt(max(0.0, 1.0 - min(bc, 1.0)))


@dataclass(frozen=True)
class DistanceMatrix:
    """Dense symmetric matrix of pairwise Hellinger distances.

    Invariants, checked on construction: zero diagonal, entries in
    [0, 1], and exact (bitwise) symmetry. ``labels`` are the type ids
    aligned with rows and columns.
    """

    labels: tuple[str, ...]
    entries: np.ndarray

    def __post_init__(self):
        labels = tuple(str(s) for s in self.labels)
        if len(set(labels)) != len(labels):
            raise DataError("distance matrix labels must be unique")
        entries = np.asarray(self.entries, dtype=float)
        n = len(labels)
        if entries.shape != (n, n):
            raise DataError(
                f"entries must be {n}x{n} to match {n} labels, "
                f"got shape {entries.shape}"
            )
        entries = entries.copy()
        entries.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "entries", entries)
        self.validate()

    def validate(self) -> None:
        e = self.entries
        if not np.all(np.isfinite(e)):
            raise DataError("distance matrix entries must be finite")
        if np.any(np.diagonal(e) != 0.0):
            raise DataError("distance matrix diagonal must be exactly zero")
        if np.any(e < 0.0) or np.any(e > 1.0):
            raise DataError("distance matrix entries must lie in [0, 1]")
        if not np.array_equal(e, e.T):
            raise DataError("distance matrix must be exactly symmetric")

    @property
    def n(self) -> int:
        return len(self.labels)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise DataError(f"unknown type id {label!r} in distance matrix") from None

    def distance(self, label_a: str, label_b: str) -> float:
        return float(self.entries[self.index_of(label_a), self.index_of(label_b)])

    def to_json(self) -> str:
        return json.dumps(
            {"labels": list(self.labels), "entries": self.entries.tolist()},
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "DistanceMatrix":
        doc = json.loads(text)
        return cls(labels=tuple(doc["labels"]), entries=np.array(doc["entries"]))

    def to_csv(self) -> str:
        # repr() of a float is its shortest round-trip representation,
        # so re-reading this file reproduces the entries bit for bit.
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + list(self.labels))
        for label, row in zip(self.labels, self.entries):
            w.writerow([label] + [repr(float(v)) for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "DistanceMatrix":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or len(rows[0]) < 2:
            raise SchemaError("not a distance matrix CSV: missing label header")
        labels = tuple(rows[0][1:])
        entries = np.array([[float(v) for v in row[1:]] for row in rows[1:]])
        return cls(labels=labels, entries=entries)


def build_matrix(posteriors: Sequence[tuple[str, BetaDist]]) -> DistanceMatrix:
    """Pairwise Hellinger distance matrix over (type_id, posterior) pairs.

    Only the upper triangle is computed; the lower triangle is mirrored
    so symmetry holds exactly as stored.
    """
    if len(posteriors) == 0:
        raise DataError("cannot build a distance matrix from zero types")
    labels = tuple(str(t) for t, _ in posteriors)
    if len(set(labels)) != len(labels):
        dupes = sorted({t for t in labels if labels.count(t) > 1})
        raise DataError(f"duplicate type ids: {dupes}")
    dists = [d for _, d in posteriors]
    n = len(dists)
    entries = np.zeros((n, n), dtype=float)
    for i in range(n):
        for j in range(i + 1, n):
            h = hellinger_beta(dists[i], dists[j])
            entries[i, j] = h
            entries[j, i] = h
    return DistanceMatrix(labels=labels, entries=entries)
