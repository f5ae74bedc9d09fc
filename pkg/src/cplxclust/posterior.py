"""Beta posteriors for the fraction of failed inspections per product type.

A type with n inspected items and X repaired (failed) items gets the
Jeffreys-prior posterior Beta(X + 1/2, n - X + 1/2) for its underlying
failure fraction. That posterior is the type's complexity indicator:
everything downstream (distances, scores, clusters) operates on it.
"""

import math
from dataclasses import dataclass, field

from .errors import DataError, DomainError
from .special import beta_quantile

__all__ = [
    "BetaDist",
    "TypeCounts",
    "FiveNumberSummary",
    "fraction_nonconforming",
    "posterior_from_counts",
    "median",
    "variance",
    "five_number_summary",
    "BOX_WHISKER_LO",
    "BOX_WHISKER_HI",
]

# Whisker quantiles used for the boxplot min/max. The mathematical
# support of a beta distribution is always [0, 1], which would make
# every whisker identical, so the summary uses extreme quantiles
# instead. These are a documented convention of this tool.
BOX_WHISKER_LO = 0.005
BOX_WHISKER_HI = 0.995


@dataclass(frozen=True)
class BetaDist:
    """A beta distribution with shape parameters ``a`` and ``b``."""

    a: float
    b: float

    def __post_init__(self):
        for name in ("a", "b"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v) or v <= 0.0:
                raise DomainError(
                    f"beta shape {name} must be positive and finite, got {v!r}"
                )
            object.__setattr__(self, name, float(v))

    @property
    def mean(self) -> float:
        return self.a / (self.a + self.b)


@dataclass(frozen=True)
class TypeCounts:
    """Aggregated inspection counts for one product type.

    ``attributes`` holds the design attributes defining the type as an
    ordered (name, value) sequence, e.g. (("nps", "6"), ("schedule",
    "STD"), ("material", "A")). ``total`` is the overall number of
    produced items and may be absent for inputs that only report
    inspection outcomes.
    """

    type_id: str
    inspected: int
    repaired: int
    total: int | None = None
    attributes: tuple[tuple[str, str], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "type_id", str(self.type_id))
        object.__setattr__(
            self, "attributes", tuple((str(k), str(v)) for k, v in self.attributes)
        )
        for name in ("inspected", "repaired", "total"):
            v = getattr(self, name)
            if name == "total" and v is None:
                continue
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise DataError(
                    f"type {self.type_id!r}: {name} must be a non-negative "
                    f"integer, got {v!r}"
                )
        if self.repaired > self.inspected:
            raise DataError(
                f"type {self.type_id!r}: repaired ({self.repaired}) exceeds "
                f"inspected ({self.inspected})"
            )
        if self.total is not None and self.inspected > self.total:
            raise DataError(
                f"type {self.type_id!r}: inspected ({self.inspected}) exceeds "
                f"total ({self.total})"
            )

    @property
    def attribute_values(self) -> tuple[str, ...]:
        return tuple(v for _, v in self.attributes)


@dataclass(frozen=True)
class FiveNumberSummary:
    """Boxplot summary (min, q1, median, q3, max), all probabilities."""

    min: float
    q1: float
    median: float
    q3: float
    max: float

    def __post_init__(self):
        vals = (self.min, self.q1, self.median, self.q3, self.max)
        if not all(0.0 <= v <= 1.0 for v in vals):
            raise DataError(f"summary values must lie in [0, 1]: {vals}")
        if not (self.min <= self.q1 <= self.median <= self.q3 <= self.max):
            raise DataError(f"summary values out of order: {vals}")


def fraction_nonconforming(counts: TypeCounts) -> float:
    """Observed failure fraction X / n for one type."""
    if counts.inspected == 0:
        raise DataError(
            f"type {counts.type_id!r}: fraction nonconforming is undefined "
            f"with zero inspected items"
        )
    return counts.repaired / counts.inspected


def posterior_from_counts(counts: TypeCounts) -> BetaDist:
    """Jeffreys posterior Beta(X + 1/2, n - X + 1/2) of the failure fraction.

    With no inspections this degenerates to the Beta(1/2, 1/2) prior,
    which carries no evidence; the analysis pipeline excludes such types
    rather than clustering the bare prior.
    """
    return BetaDist(counts.repaired + 0.5, counts.inspected - counts.repaired + 0.5)


def median(d: BetaDist) -> float:
    """Posterior median, the complexity ordering statistic."""
    return beta_quantile(0.5, d.a, d.b)


def variance(d: BetaDist) -> float:
    """Beta variance a*b / ((a+b)^2 (a+b+1)), the tie-break statistic."""
    s = d.a + d.b
    return d.a * d.b / (s * s * (s + 1.0))


def five_number_summary(
    d: BetaDist,
    lower: float = BOX_WHISKER_LO,
    upper: float = BOX_WHISKER_HI,
) -> FiveNumberSummary:
    """Quantile-based boxplot summary of a posterior.

    Whiskers default to the 0.5% and 99.5% quantiles (see
    ``BOX_WHISKER_LO``/``BOX_WHISKER_HI``).
    """
    return FiveNumberSummary(
        min=beta_quantile(lower, d.a, d.b),
        q1=beta_quantile(0.25, d.a, d.b),
        median=beta_quantile(0.5, d.a, d.b),
        q3=beta_quantile(0.75, d.a, d.b),
        max=beta_quantile(upper, d.a, d.b),
    )
