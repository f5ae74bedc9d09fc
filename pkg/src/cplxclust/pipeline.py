"""End-to-end analysis pipeline: ingest, analyze, write artifacts.

``analyze`` is the library-level orchestration over in-memory counts;
``run_pipeline`` adds file ingestion and artifact emission around it and
is what the CLI calls. Artifacts are first rendered in memory and then
written via temp-file-plus-rename, so a failing run leaves no partial
files behind.
"""

import csv
import dataclasses
import io
import logging
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from ._version import __version__
from .cluster import agglomerate, cut, label_clusters
from .errors import UsageError
from .hellinger import DistanceMatrix, build_matrix
from .ingest import aggregate, read_aggregated, read_raw, top_n_by_business
from .posterior import TypeCounts, posterior_from_counts
from .report import (
    AnalysisReport,
    Provenance,
    emit_boxplot_data,
    emit_clusters,
    emit_dendrogram,
    emit_report,
    emit_score_table,
)
from .scoring import score_types

__all__ = ["RunConfig", "analyze", "run_pipeline", "write_text_atomic", "STAGES"]

log = logging.getLogger(__name__)

STAGES = ("distance", "score", "cluster", "analyze")


@dataclass
class RunConfig:
    """Parameters of one pipeline run (one input file, one output dir)."""

    input_path: Path
    mode: str = "aggregated"  # or "raw"
    type_column: str = "type_id"
    attribute_columns: tuple[str, ...] = ()
    result_column: str = "result"
    inspected_column: str = "inspected"
    repaired_column: str = "repaired"
    total_column: str | None = None  # None: use a "total" column if present
    top: int | None = None
    k: int | None = None
    out_dir: Path | None = None
    emit: tuple[str, ...] = ("csv", "json")
    grand_total: int | None = None
    run_id: str = ""
    stage: str = "analyze"

    def __post_init__(self):
        self.input_path = Path(self.input_path)
        if self.mode not in ("raw", "aggregated"):
            raise UsageError(f"mode must be 'raw' or 'aggregated', got {self.mode!r}")
        if self.stage not in STAGES:
            raise UsageError(f"stage must be one of {STAGES}, got {self.stage!r}")
        known = {"csv", "json", "newick", "ascii", "svg"}
        bad = [f for f in self.emit if f not in known]
        if bad:
            raise UsageError(f"unknown emit format(s) {bad}; known: {sorted(known)}")


def load_counts(config: RunConfig) -> list[TypeCounts]:
    """Ingest the input file according to the configured mode."""
    if config.mode == "raw":
        if not config.attribute_columns:
            raise UsageError("raw mode needs --attrs to group records by")
        records = read_raw(
            config.input_path,
            attribute_columns=config.attribute_columns,
            result_column=config.result_column,
        )
        return aggregate(records, group_by=config.attribute_columns)
    total_column = config.total_column
    if total_column is None:
        with open(config.input_path, encoding="utf-8") as fh:
            header = next(csv.reader(fh), [])
        total_column = "total" if "total" in header else None
    return read_aggregated(
        config.input_path,
        type_column=config.type_column,
        inspected_column=config.inspected_column,
        repaired_column=config.repaired_column,
        total_column=total_column,
        attribute_columns=config.attribute_columns,
    )


def analyze(
    counts: Sequence[TypeCounts],
    k: int | None = None,
    top: int | None = None,
    grand_total: int | None = None,
    provenance: Provenance | None = None,
) -> tuple[AnalysisReport, DistanceMatrix]:
    """Run the analysis chain over aggregated counts.

    Types without inspections are excluded (with a warning), since a
    bare prior carries no evidence to compare. When ``top`` is given,
    the analysis is restricted to the top-N types by production volume.
    """
    counts = list(counts)
    skipped = [c.type_id for c in counts if c.inspected == 0]
    if skipped:
        log.warning(
            "excluding %d type(s) with zero inspected items: %s",
            len(skipped),
            ", ".join(skipped[:10]) + ("..." if len(skipped) > 10 else ""),
        )
        counts = [c for c in counts if c.inspected > 0]
    if not counts:
        raise UsageError("no types with inspection evidence to analyze")

    business = None
    if top is not None:
        counts, business = top_n_by_business(counts, top, grand_total=grand_total)
    elif all(c.total is not None for c in counts):
        _, business = top_n_by_business(counts, len(counts), grand_total=grand_total)

    if k is not None and not (1 <= k <= len(counts)):
        raise UsageError(f"k must be in [1, {len(counts)}], got {k}")

    posteriors = [(c.type_id, posterior_from_counts(c)) for c in counts]
    attributes = {c.type_id: c.attributes for c in counts}
    matrix = build_matrix(posteriors)
    scored = score_types(posteriors, matrix, attributes=attributes)
    tree = agglomerate(matrix)
    clusters = None
    if k is not None:
        fractions = (
            {s.type_id: s.fraction for s in business.shares} if business else None
        )
        clusters = label_clusters(cut(tree, k), scored, business=fractions)

    if provenance is None:
        provenance = Provenance(tool_version=__version__, n_analyzed=len(counts), k=k)
    report = AnalysisReport(
        scored=tuple(scored),
        dendrogram=tree,
        provenance=provenance,
        clusters=clusters,
        business=business,
    )
    return report, matrix


def write_text_atomic(path: Path, text: str) -> None:
    """Write via a temp file in the target directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def run_pipeline(config: RunConfig) -> AnalysisReport:
    """Ingest, analyze up to the configured stage, write artifacts.

    Returns the report; artifacts are written only when ``out_dir`` is
    set, and each file is renamed into place atomically.
    """
    if not config.input_path.exists():
        raise FileNotFoundError(f"input file not found: {config.input_path}")

    counts = load_counts(config)
    report, matrix = analyze(
        counts,
        k=config.k if config.stage in ("cluster", "analyze") else None,
        top=config.top,
        grand_total=config.grand_total,
    )
    provenance = Provenance(
        tool_version=__version__,
        n_analyzed=len(report.scored),
        input_path=str(config.input_path),
        mode=config.mode,
        group_by=tuple(config.attribute_columns),
        top=config.top,
        k=config.k,
        run_id=config.run_id,
    )
    report = dataclasses.replace(report, provenance=provenance)

    if config.out_dir is not None:
        _write_artifacts(report, matrix, config)
    return report


def _write_artifacts(
    report: AnalysisReport, matrix: DistanceMatrix, config: RunConfig
) -> None:
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    emit = set(config.emit)
    stage = config.stage

    artifacts: dict[str, str] = {}
    if "csv" in emit:
        artifacts["matrix.csv"] = matrix.to_csv()
    if "json" in emit:
        artifacts["matrix.json"] = matrix.to_json()

    if stage in ("score", "cluster", "analyze"):
        if "csv" in emit:
            artifacts["scores.csv"] = emit_score_table(report, "csv")
            artifacts["boxplot.csv"] = emit_boxplot_data(report, "csv")
            if report.business is not None:
                artifacts["business.csv"] = _business_csv(report)
        if "json" in emit:
            artifacts["scores.json"] = emit_score_table(report, "json")
            artifacts["boxplot.json"] = emit_boxplot_data(report, "json")

    if stage in ("cluster", "analyze"):
        if "json" in emit:
            artifacts["dendrogram.json"] = emit_dendrogram(report, "json")
        if "newick" in emit:
            artifacts["dendrogram.newick"] = emit_dendrogram(report, "newick")
        if "ascii" in emit:
            artifacts["dendrogram.txt"] = emit_dendrogram(report, "ascii")
        if "svg" in emit:
            artifacts["dendrogram.svg"] = emit_dendrogram(report, "svg")
        if report.clusters is not None:
            if "csv" in emit:
                artifacts["clusters.csv"] = emit_clusters(report, "csv")
            if "json" in emit:
                artifacts["clusters.json"] = emit_clusters(report, "json")

    if stage == "analyze" and "json" in emit:
        artifacts["report.json"] = emit_report(report)

    for name, text in artifacts.items():
        write_text_atomic(out / name, text)


def _business_csv(report: AnalysisReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["type_id", "total", "fraction", "cumulative"])
    for s in report.business.shares:
        w.writerow([s.type_id, s.total, repr(s.fraction), repr(s.cumulative)])
    return buf.getvalue()
