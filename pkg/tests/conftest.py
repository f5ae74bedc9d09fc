"""Shared fixtures: the eight-type demo dataset with its known-good
values, and the 35-type industrial dataset."""

from pathlib import Path

import numpy as np
import pytest

from cplxclust import TypeCounts, posterior_from_counts

DATA_DIR = Path(__file__).parent / "data"

# Eight demo product types: (type_id, inspected, repaired).
EIGHT_TYPES = (
    ("1", 200, 5),
    ("2", 170, 4),
    ("3", 50, 2),
    ("4", 48, 2),
    ("5", 100, 2),
    ("6", 99, 2),
    ("7", 98, 4),
    ("8", 101, 4),
)

# Known-good posterior shapes and medians for the eight types.
EIGHT_POSTERIORS = {
    "1": (5.5, 195.5),
    "2": (4.5, 166.5),
    "3": (2.5, 48.5),
    "4": (2.5, 46.5),
    "5": (2.5, 98.5),
    "6": (2.5, 97.5),
    "7": (4.5, 94.5),
    "8": (4.5, 97.5),
}
EIGHT_MEDIANS = {
    "1": 0.0258,
    "2": 0.0245,
    "3": 0.0432,
    "4": 0.0450,
    "5": 0.0217,
    "6": 0.0219,
    "7": 0.0424,
    "8": 0.0412,
}

# Known-good pairwise Hellinger distances (4 decimals).
EIGHT_MATRIX = np.array(
    [
        [0.0000, 0.0602, 0.4100, 0.4290, 0.2109, 0.2090, 0.3900, 0.3694],
        [0.0602, 0.0000, 0.4023, 0.4219, 0.1566, 0.1552, 0.3989, 0.3789],
        [0.4100, 0.4023, 0.0000, 0.0232, 0.3737, 0.3688, 0.1604, 0.1674],
        [0.4290, 0.4219, 0.0232, 0.0000, 0.3937, 0.3888, 0.1703, 0.1796],
        [0.2109, 0.1566, 0.3737, 0.3937, 0.0000, 0.0057, 0.4100, 0.3936],
        [0.2090, 0.1552, 0.3688, 0.3888, 0.0057, 0.0000, 0.4046, 0.3881],
        [0.3900, 0.3989, 0.1604, 0.1703, 0.4100, 0.4046, 0.0000, 0.0230],
        [0.3694, 0.3789, 0.1674, 0.1796, 0.3936, 0.3881, 0.0230, 0.0000],
    ]
)

# Median-ascending order of the eight types and the cumulative distance
# chain along it (accumulated by hand from the 4-decimal distances).
EIGHT_ORDER = ("5", "6", "2", "1", "8", "7", "3", "4")
EIGHT_RAW_CHAIN = (0.0, 0.0057, 0.1609, 0.2211, 0.5905, 0.6135, 0.7739, 0.7971)

# Known-good 0..10 scores (one decimal).
EIGHT_SCORES = {
    "1": 2.8,
    "2": 2.0,
    "3": 9.7,
    "4": 10.0,
    "5": 0.0,
    "6": 0.1,
    "7": 7.7,
    "8": 7.4,
}

EIGHT_K4_GROUPS = (
    frozenset({"1", "2"}),
    frozenset({"3", "4"}),
    frozenset({"5", "6"}),
    frozenset({"7", "8"}),
)

# The 35-type dataset covers roughly 80% of a production population of
# this many items.
GRAND_TOTAL_35 = 224298


@pytest.fixture
def eight_counts() -> list[TypeCounts]:
    return [
        TypeCounts(type_id=t, inspected=n, repaired=x) for t, n, x in EIGHT_TYPES
    ]


@pytest.fixture
def eight_posteriors(eight_counts):
    return [(c.type_id, posterior_from_counts(c)) for c in eight_counts]


@pytest.fixture
def eight_csv() -> Path:
    return DATA_DIR / "eight_products.csv"


@pytest.fixture
def top35_csv() -> Path:
    return DATA_DIR / "weld_types_top35.csv"
