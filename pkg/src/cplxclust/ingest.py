"""CSV ingestion: raw per-item inspection rows or pre-aggregated
per-type counts, grouping by design attributes, business percentages,
and top-N selection.

Files are UTF-8 CSV with a header row. Column names are supplied by the
caller (or the CLI flags), which keeps the tool agnostic of any
particular domain's schema.
"""

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import DataError, SchemaError
from .posterior import TypeCounts

__all__ = [
    "RESULT_NOT_INSPECTED",
    "RESULT_PASSED",
    "RESULT_FAILED",
    "InspectionRecord",
    "BusinessShare",
    "BusinessSummary",
    "read_raw",
    "aggregate",
    "read_aggregated",
    "top_n_by_business",
    "expand_counts",
]

# Inspection result codes carried by raw per-item rows.
RESULT_NOT_INSPECTED = 0
RESULT_PASSED = 1
RESULT_FAILED = 2
_VALID_RESULTS = (RESULT_NOT_INSPECTED, RESULT_PASSED, RESULT_FAILED)

# Attribute values are joined with this separator to synthesize a type
# id for each distinct attribute combination.
TYPE_ID_SEPARATOR = "|"


@dataclass(frozen=True)
class InspectionRecord:
    """One produced item: its design attributes and inspection outcome."""

    attributes: tuple[tuple[str, str], ...]
    result: int
    item_id: str | None = None

    def __post_init__(self):
        if self.result not in _VALID_RESULTS:
            raise DataError(
                f"inspection result must be one of {_VALID_RESULTS}, "
                f"got {self.result!r}"
            )
        object.__setattr__(
            self, "attributes", tuple((str(k), str(v)) for k, v in self.attributes)
        )


@dataclass(frozen=True)
class BusinessShare:
    type_id: str
    total: int
    fraction: float
    cumulative: float


@dataclass(frozen=True)
class BusinessSummary:
    """Per-type business fractions in descending-volume order."""

    grand_total: int
    shares: tuple[BusinessShare, ...]

    def fraction_of(self, type_id: str) -> float:
        for s in self.shares:
            if s.type_id == type_id:
                return s.fraction
        raise DataError(f"type {type_id!r} not in business summary")


def _open_rows(path) -> tuple[list[str], csv.DictReader]:
    path = Path(path)
    handle = path.open(newline="", encoding="utf-8")
    reader = csv.DictReader(handle)
    header = reader.fieldnames
    if header is None:
        handle.close()
        raise SchemaError(f"{path}: empty file, expected a CSV header row")
    return list(header), reader


def _require_columns(path, header: Sequence[str], needed: Iterable[str]) -> None:
    missing = [c for c in needed if c not in header]
    if missing:
        raise SchemaError(
            f"{path}: missing column(s) {missing}; file has {list(header)}"
        )


def read_raw(
    path,
    attribute_columns: Sequence[str],
    result_column: str = "result",
    item_id_column: str | None = None,
) -> list[InspectionRecord]:
    """Read per-item inspection rows.

    The result column must hold 0 (not inspected), 1 (inspected and
    passed) or 2 (inspected and failed); anything else raises a
    ``DataError`` naming the offending line.
    """
    header, reader = _open_rows(path)
    needed = list(attribute_columns) + [result_column]
    if item_id_column:
        needed.append(item_id_column)
    _require_columns(path, header, needed)
    records = []
    for row in reader:
        raw = (row.get(result_column) or "").strip()
        try:
            result = int(raw)
        except ValueError:
            raise DataError(
                f"{path} line {reader.line_num}: result {raw!r} is not an integer"
            ) from None
        if result not in _VALID_RESULTS:
            raise DataError(
                f"{path} line {reader.line_num}: result must be 0, 1 or 2, "
                f"got {result}"
            )
        records.append(
            InspectionRecord(
                attributes=tuple((c, (row.get(c) or "").strip()) for c in attribute_columns),
                result=result,
                item_id=(row.get(item_id_column) or "").strip() if item_id_column else None,
            )
        )
    return records


def aggregate(
    records: Sequence[InspectionRecord], group_by: Sequence[str]
) -> list[TypeCounts]:
    """Aggregate per-item records into per-type counts.

    One ``TypeCounts`` per distinct combination of the ``group_by``
    attribute values; the type id is the attribute values joined with
    ``TYPE_ID_SEPARATOR``. Output is sorted by the attribute values, so
    the result does not depend on record order.
    """
    group_by = list(group_by)
    if not group_by:
        raise DataError("group_by must name at least one attribute")
    buckets: dict[tuple[str, ...], list[int]] = {}
    for rec in records:
        attrs = dict(rec.attributes)
        missing = [g for g in group_by if g not in attrs]
        if missing:
            raise SchemaError(f"record is missing grouping attribute(s) {missing}")
        key = tuple(attrs[g] for g in group_by)
        counts = buckets.setdefault(key, [0, 0, 0])  # total, inspected, repaired
        counts[0] += 1
        if rec.result in (RESULT_PASSED, RESULT_FAILED):
            counts[1] += 1
        if rec.result == RESULT_FAILED:
            counts[2] += 1
    return [
        TypeCounts(
            type_id=TYPE_ID_SEPARATOR.join(key),
            inspected=inspected,
            repaired=repaired,
            total=total,
            attributes=tuple(zip(group_by, key)),
        )
        for key, (total, inspected, repaired) in sorted(buckets.items())
    ]


def read_aggregated(
    path,
    type_column: str = "type_id",
    inspected_column: str = "inspected",
    repaired_column: str = "repaired",
    total_column: str | None = None,
    attribute_columns: Sequence[str] = (),
) -> list[TypeCounts]:
    """Read per-type counts that were aggregated upstream.

    ``total_column`` is optional; without it the counts carry no
    production totals and business percentages are unavailable.
    """
    header, reader = _open_rows(path)
    needed = [type_column, inspected_column, repaired_column] + list(attribute_columns)
    if total_column:
        needed.append(total_column)
    _require_columns(path, header, needed)

    def read_int(row, column, line):
        raw = (row.get(column) or "").strip()
        try:
            return int(raw)
        except ValueError:
            raise DataError(
                f"{path} line {line}: {column} {raw!r} is not an integer"
            ) from None

    out = []
    seen = set()
    for row in reader:
        line = reader.line_num
        type_id = (row.get(type_column) or "").strip()
        if not type_id:
            raise DataError(f"{path} line {line}: empty type id")
        if type_id in seen:
            raise DataError(f"{path} line {line}: duplicate type id {type_id!r}")
        seen.add(type_id)
        try:
            out.append(
                TypeCounts(
                    type_id=type_id,
                    inspected=read_int(row, inspected_column, line),
                    repaired=read_int(row, repaired_column, line),
                    total=read_int(row, total_column, line) if total_column else None,
                    attributes=tuple(
                        (c, (row.get(c) or "").strip()) for c in attribute_columns
                    ),
                )
            )
        except DataError as exc:
            raise DataError(f"{path} line {line}: {exc}") from None
    return out


def top_n_by_business(
    counts: Sequence[TypeCounts], n: int, grand_total: int | None = None
) -> tuple[list[TypeCounts], BusinessSummary]:
    """Select the n highest-volume types and summarize business shares.

    Types are ordered by descending total (ties by ascending type id).
    Fractions are taken against ``grand_total`` when the input list is
    itself a truncation of a larger population; by default the grand
    total is the sum of the given totals, in which case the cumulative
    fraction over all types ends at 1.
    """
    if any(c.total is None for c in counts):
        missing = [c.type_id for c in counts if c.total is None][:5]
        raise DataError(f"cannot rank by business: no totals for types {missing}")
    if not isinstance(n, int) or isinstance(n, bool) or not (1 <= n <= len(counts)):
        raise DataError(f"n must be an integer in [1, {len(counts)}], got {n!r}")
    ordered = sorted(counts, key=lambda c: (-c.total, c.type_id))
    total_sum = sum(c.total for c in counts)
    if grand_total is None:
        grand_total = total_sum
    if grand_total < total_sum:
        raise DataError(
            f"grand total {grand_total} is smaller than the sum of the "
            f"given totals ({total_sum})"
        )
    shares = []
    cum = 0.0
    for c in ordered:
        frac = c.total / grand_total
        cum += frac
        shares.append(
            BusinessShare(type_id=c.type_id, total=c.total, fraction=frac, cumulative=cum)
        )
    return list(ordered[:n]), BusinessSummary(grand_total=grand_total, shares=tuple(shares))


def expand_counts(counts: Sequence[TypeCounts]) -> list[InspectionRecord]:
    """Expand per-type counts back into synthetic per-item records.

    The inverse of ``aggregate`` up to record order: each type yields
    ``repaired`` failed records, ``inspected - repaired`` passed ones,
    and ``total - inspected`` uninspected ones (none when the total is
    absent). Records carry a synthetic leading attribute ("type_id",
    id) ahead of the type's own attributes, so grouping by "type_id"
    reproduces the counts.
    """
    records = []
    for c in counts:
        attrs = (("type_id", c.type_id),) + c.attributes
        total = c.total if c.total is not None else c.inspected
        plan = (
            (RESULT_FAILED, c.repaired),
            (RESULT_PASSED, c.inspected - c.repaired),
            (RESULT_NOT_INSPECTED, total - c.inspected),
        )
        for result, count in plan:
            records.extend(
                InspectionRecord(attributes=attrs, result=result) for _ in range(count)
            )
    return records
