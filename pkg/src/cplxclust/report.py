"""Report assembly and emission.

Gathers the analysis artifacts (scores, clusters, business shares,
dendrogram) into one ``AnalysisReport`` and renders them as CSV, JSON,
Newick, ASCII art or standalone SVG. Machine formats (CSV/JSON) carry
full float precision so they round-trip exactly; human renderings show
scores at one decimal.

Emission is a pure function of the report: no timestamps are written,
and the provenance block carries a caller-supplied run id instead, so
two emissions of the same report are byte-identical.
"""

import csv
import io
import json
from dataclasses import dataclass
from typing import Sequence

from .cluster import ClusterAssignment, Dendrogram
from .errors import UsageError
from .ingest import BusinessSummary
from .posterior import five_number_summary
from .scoring import ScoredType

__all__ = [
    "Provenance",
    "AnalysisReport",
    "leaf_label",
    "emit_score_table",
    "emit_boxplot_data",
    "emit_dendrogram",
    "emit_clusters",
    "emit_report",
]

DENDROGRAM_FORMATS = ("json", "newick", "ascii", "svg")


@dataclass(frozen=True)
class Provenance:
    """Where the analysis came from and how it was parameterized."""

    tool_version: str
    n_analyzed: int
    input_path: str | None = None
    mode: str | None = None
    group_by: tuple[str, ...] = ()
    top: int | None = None
    k: int | None = None
    run_id: str = ""

    def to_dict(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "n_analyzed": self.n_analyzed,
            "input_path": self.input_path,
            "mode": self.mode,
            "group_by": list(self.group_by),
            "top": self.top,
            "k": self.k,
            "run_id": self.run_id,
        }


@dataclass(frozen=True)
class AnalysisReport:
    """Everything one analysis run produced."""

    scored: tuple[ScoredType, ...]
    dendrogram: Dendrogram
    provenance: Provenance
    clusters: ClusterAssignment | None = None
    business: BusinessSummary | None = None

    def __post_init__(self):
        object.__setattr__(self, "scored", tuple(self.scored))
        ids = [s.type_id for s in self.scored]
        if len(set(ids)) != len(ids):
            raise UsageError("scored types must be unique")
        if set(ids) != set(self.dendrogram.leaves):
            raise UsageError("scored types and dendrogram leaves disagree")
        if self.clusters is not None:
            clustered = [t for g in self.clusters.groups for t in g.members]
            if sorted(clustered) != sorted(ids):
                raise UsageError(
                    "cluster assignment does not partition the scored types"
                )

    def score_of(self, type_id: str) -> ScoredType:
        for s in self.scored:
            if s.type_id == type_id:
                return s
        raise UsageError(f"unknown type {type_id!r}")


def leaf_label(scored: ScoredType) -> str:
    """Display label: "<id>.(<attr values>).[<score>]", score at one decimal."""
    score = f"{scored.scaled_score:.1f}"
    if scored.attributes:
        attrs = ", ".join(v for _, v in scored.attributes)
        return f"{scored.type_id}.({attrs}).[{score}]"
    return f"{scored.type_id}.[{score}]"


def _attr_names(scored: Sequence[ScoredType]) -> list[str]:
    for s in scored:
        if s.attributes:
            return [k for k, _ in s.attributes]
    return []


def emit_score_table(report: AnalysisReport, fmt: str = "csv") -> str:
    """Score table, most complex type first."""
    rows = sorted(report.scored, key=lambda s: -s.scaled_score)
    if fmt == "json":
        return json.dumps(
            [
                {
                    "type_id": s.type_id,
                    "attributes": dict(s.attributes),
                    "median": s.median,
                    "variance": s.variance,
                    "raw_score": s.raw_score,
                    "scaled_score": s.scaled_score,
                    "rank": s.rank,
                }
                for s in rows
            ],
            indent=2,
        )
    if fmt != "csv":
        raise UsageError(f"unknown score table format {fmt!r}")
    attr_names = _attr_names(rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["type_id", *attr_names, "median", "variance", "raw_score", "scaled_score"])
    for s in rows:
        attrs = dict(s.attributes)
        w.writerow(
            [s.type_id]
            + [attrs.get(a, "") for a in attr_names]
            + [repr(s.median), repr(s.variance), repr(s.raw_score), repr(s.scaled_score)]
        )
    return buf.getvalue()


def emit_boxplot_data(
    report: AnalysisReport, fmt: str = "csv", order: str = "input"
) -> str:
    """Five-number summaries per type, for boxplot rendering.

    ``order`` is "input" (the analyzed order) or "business" (descending
    business share; requires a business summary).
    """
    rows = list(report.scored)
    if order == "business":
        if report.business is None:
            raise UsageError("business order requested but no business summary")
        position = {s.type_id: i for i, s in enumerate(report.business.shares)}
        rows.sort(key=lambda s: position.get(s.type_id, len(position)))
    elif order != "input":
        raise UsageError(f"unknown boxplot order {order!r}")
    summaries = [(s, five_number_summary(s.posterior)) for s in rows]
    if fmt == "json":
        return json.dumps(
            [
                {
                    "type_id": s.type_id,
                    "min": f.min,
                    "q1": f.q1,
                    "median": f.median,
                    "q3": f.q3,
                    "max": f.max,
                }
                for s, f in summaries
            ],
            indent=2,
        )
    if fmt != "csv":
        raise UsageError(f"unknown boxplot format {fmt!r}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["type_id", "min", "q1", "median", "q3", "max"])
    for s, f in summaries:
        w.writerow([s.type_id, repr(f.min), repr(f.q1), repr(f.median), repr(f.q3), repr(f.max)])
    return buf.getvalue()


def emit_clusters(report: AnalysisReport, fmt: str = "csv") -> str:
    """Cluster assignment table (one row per group)."""
    if report.clusters is None:
        raise UsageError("no cluster assignment in this report")
    groups = report.clusters.groups
    if fmt == "json":
        return json.dumps(
            [
                {
                    "label": g.label,
                    "members": list(g.members),
                    "mean_scaled_score": g.mean_scaled_score,
                    "business_pct": g.business_pct,
                }
                for g in groups
            ],
            indent=2,
        )
    if fmt != "csv":
        raise UsageError(f"unknown cluster table format {fmt!r}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "members", "mean_scaled_score", "business_pct"])
    for g in groups:
        w.writerow(
            [
                g.label,
                ";".join(g.members),
                repr(g.mean_scaled_score),
                "" if g.business_pct is None else repr(g.business_pct),
            ]
        )
    return buf.getvalue()


def emit_report(report: AnalysisReport) -> str:
    """The combined machine-readable report (JSON)."""
    doc = {
        "provenance": report.provenance.to_dict(),
        "scores": json.loads(emit_score_table(report, "json")),
        "boxplot": json.loads(emit_boxplot_data(report, "json")),
        "dendrogram": report.dendrogram.to_dict(),
        "clusters": (
            json.loads(emit_clusters(report, "json"))
            if report.clusters is not None
            else None
        ),
        "business": (
            {
                "grand_total": report.business.grand_total,
                "shares": [
                    {
                        "type_id": s.type_id,
                        "total": s.total,
                        "fraction": s.fraction,
                        "cumulative": s.cumulative,
                    }
                    for s in report.business.shares
                ],
            }
            if report.business is not None
            else None
        ),
    }
    return json.dumps(doc, indent=2)


# --------------------------------------------------------------------
# Dendrogram renderings


def emit_dendrogram(report: AnalysisReport, fmt: str) -> str:
    """Render the dendrogram as json, newick, ascii or svg."""
    if fmt == "json":
        doc = report.dendrogram.to_dict()
        doc["labels"] = [
            leaf_label(report.score_of(t)) for t in report.dendrogram.leaves
        ]
        if report.clusters is not None:
            doc["clusters"] = json.loads(emit_clusters(report, "json"))
        return json.dumps(doc, indent=2)
    if fmt == "newick":
        return _render_newick(report)
    if fmt == "ascii":
        return _render_ascii(report)
    if fmt == "svg":
        return _render_svg(report)
    raise UsageError(
        f"unknown dendrogram format {fmt!r}, expected one of {DENDROGRAM_FORMATS}"
    )


def _node_heights(tree: Dendrogram) -> dict[int, float]:
    heights = {i: 0.0 for i in range(tree.n_leaves)}
    for i, (_, _, h) in enumerate(tree.merges):
        heights[tree.n_leaves + i] = h
    return heights


def _quote_newick(label: str) -> str:
    return "'" + label.replace("'", "''") + "'"


def _render_newick(report: AnalysisReport) -> str:
    tree = report.dendrogram
    n = tree.n_leaves
    heights = _node_heights(tree)
    labels = {i: leaf_label(report.score_of(t)) for i, t in enumerate(tree.leaves)}

    def render(node: int, parent_height: float) -> str:
        length = parent_height - heights[node]
        if node < n:
            return f"{_quote_newick(labels[node])}:{length!r}"
        left, right, h = tree.merges[node - n]
        inner = f"({render(left, h)},{render(right, h)})"
        return f"{inner}:{length!r}"

    root = n + len(tree.merges) - 1 if tree.merges else 0
    if root < n:
        return f"{_quote_newick(labels[root])};\n"
    left, right, h = tree.merges[root - n]
    return f"({render(left, h)},{render(right, h)});\n"


def _cluster_letters(report: AnalysisReport) -> dict[str, str]:
    if report.clusters is None:
        return {}
    return {
        t: g.label for g in report.clusters.groups for t in g.members
    }


def _render_ascii(report: AnalysisReport) -> str:
    """Indented merge tree; leaves carry their labels (and cluster letter)."""
    tree = report.dendrogram
    n = tree.n_leaves
    letters = _cluster_letters(report)

    def line_for_leaf(idx: int) -> str:
        t = tree.leaves[idx]
        base = leaf_label(report.score_of(t))
        if letters:
            base += f"  <{letters[t]}>"
        return base

    lines: list[str] = []

    def walk(node: int, prefix: str, connector: str, cont: str) -> None:
        if node < n:
            lines.append(prefix + connector + line_for_leaf(node))
            return
        left, right, h = tree.merges[node - n]
        lines.append(prefix + connector + f"({h:.4f})")
        child_prefix = prefix + cont
        walk(left, child_prefix, "|-- ", "|   ")
        walk(right, child_prefix, "`-- ", "    ")

    root = n + len(tree.merges) - 1 if tree.merges else 0
    walk(root, "", "", "")
    out = "\n".join(lines) + "\n"
    if report.clusters is not None:
        out += f"\nclusters (k={report.clusters.k}):\n"
        for g in report.clusters.groups:
            business = (
                f", business {100.0 * g.business_pct:.1f}%"
                if g.business_pct is not None
                else ""
            )
            out += (
                f"  {g.label}: {', '.join(g.members)} "
                f"(mean score {g.mean_scaled_score:.2f}{business})\n"
            )
    return out


def _render_svg(report: AnalysisReport) -> str:
    """Standalone SVG: horizontal dendrogram, leaves left, height axis below."""
    tree = report.dendrogram
    n = tree.n_leaves
    heights = _node_heights(tree)
    letters = _cluster_letters(report)
    order = tree.leaf_order()

    labels = {}
    for i, t in enumerate(tree.leaves):
        text = leaf_label(report.score_of(t))
        if letters:
            text += f"  <{letters[t]}>"
        labels[i] = text

    char_w = 7.2
    row_h = 18.0
    gutter = 12.0 + char_w * max(len(v) for v in labels.values())
    plot_w = 420.0
    top = 12.0
    axis_h = 34.0 + (16.0 if report.clusters is not None else 0.0)
    width = gutter + plot_w + 20.0
    height_px = top + row_h * n + axis_h
    max_h = max((h for h in heights.values()), default=0.0)
    scale = plot_w / max_h if max_h > 0 else 0.0

    def x_of(h: float) -> float:
        return gutter + h * scale

    ys = {leaf: top + row_h * (pos + 0.5) for pos, leaf in enumerate(order)}
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height_px:.0f}" viewBox="0 0 {width:.0f} {height_px:.0f}" '
        f'font-family="monospace" font-size="12">'
    ]
    for pos, leaf in enumerate(order):
        parts.append(
            f'<text x="{gutter - 6:.1f}" y="{ys[leaf] + 4:.1f}" '
            f'text-anchor="end">{_svg_escape(labels[leaf])}</text>'
        )

    def draw(node: int) -> float:
        """Draw a subtree, return its y center."""
        if node < n:
            return ys[node]
        left, right, h = tree.merges[node - n]
        y_left = draw(left)
        y_right = draw(right)
        x = x_of(h)
        for child, y_child in ((left, y_left), (right, y_right)):
            parts.append(
                f'<line x1="{x_of(heights[child]):.2f}" y1="{y_child:.2f}" '
                f'x2="{x:.2f}" y2="{y_child:.2f}" stroke="black"/>'
            )
        parts.append(
            f'<line x1="{x:.2f}" y1="{y_left:.2f}" x2="{x:.2f}" '
            f'y2="{y_right:.2f}" stroke="black"/>'
        )
        return 0.5 * (y_left + y_right)

    root = n + len(tree.merges) - 1 if tree.merges else 0
    draw(root)

    axis_y = top + row_h * n + 14.0
    parts.append(
        f'<line x1="{gutter:.1f}" y1="{axis_y:.1f}" '
        f'x2="{gutter + plot_w:.1f}" y2="{axis_y:.1f}" stroke="black"/>'
    )
    ticks = 5
    for i in range(ticks + 1):
        h = max_h * i / ticks
        x = x_of(h)
        parts.append(
            f'<line x1="{x:.2f}" y1="{axis_y:.1f}" x2="{x:.2f}" '
            f'y2="{axis_y + 4:.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{axis_y + 16:.1f}" '
            f'text-anchor="middle">{h:.3f}</text>'
        )
    if report.clusters is not None:
        legend = "  ".join(
            g.label
            + (f"({100.0 * g.business_pct:.1f}%)" if g.business_pct is not None else "")
            for g in report.clusters.groups
        )
        parts.append(
            f'<text x="{gutter:.1f}" y="{height_px - 4:.1f}" '
            f'text-anchor="start">clusters: {_svg_escape(legend)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _svg_escape(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )
