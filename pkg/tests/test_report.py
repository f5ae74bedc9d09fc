"""Report emission: tables, boxplot data, and dendrogram renderings."""

import csv
import io
import json
import xml.etree.ElementTree as ET

import pytest

from cplxclust import TypeCounts, UsageError, analyze
from cplxclust.report import (
    AnalysisReport,
    emit_boxplot_data,
    emit_clusters,
    emit_dendrogram,
    emit_report,
    emit_score_table,
    leaf_label,
)

from conftest import EIGHT_TYPES
from oracles import parse_newick


@pytest.fixture
def eight_report(eight_counts):
    report, _ = analyze(eight_counts, k=4)
    return report


@pytest.fixture
def attr_report(top35_csv):
    from cplxclust import read_aggregated

    counts = read_aggregated(
        top35_csv,
        total_column="total",
        attribute_columns=["nps", "schedule", "material"],
    )
    report, _ = analyze(counts, top=10, k=3)
    return report


class TestLeafLabel:
    def test_with_attributes(self, attr_report):
        labels = [leaf_label(s) for s in attr_report.scored]
        top = attr_report.score_of("1")
        assert leaf_label(top) == f"1.(2, XS, Material A).[{top.scaled_score:.1f}]"

    def test_without_attributes(self, eight_report):
        s4 = eight_report.score_of("4")
        assert leaf_label(s4) == "4.[10.0]"


class TestScoreTable:
    def test_most_complex_first(self, eight_report):
        rows = emit_score_table(eight_report, "csv").splitlines()
        header = rows[0].split(",")
        assert header[0] == "type_id"
        first = rows[1].split(",")
        assert first[0] == "4"
        assert float(first[header.index("scaled_score")]) == 10.0

    def test_csv_roundtrips_exactly(self, eight_report):
        text = emit_score_table(eight_report, "csv")
        parsed = list(csv.DictReader(io.StringIO(text)))
        by_id = {s.type_id: s for s in eight_report.scored}
        for row in parsed:
            s = by_id[row["type_id"]]
            assert float(row["median"]) == s.median
            assert float(row["variance"]) == s.variance
            assert float(row["raw_score"]) == s.raw_score
            assert float(row["scaled_score"]) == s.scaled_score

    def test_json_roundtrips_exactly(self, eight_report):
        doc = json.loads(emit_score_table(eight_report, "json"))
        by_id = {s.type_id: s for s in eight_report.scored}
        assert len(doc) == 8
        for row in doc:
            s = by_id[row["type_id"]]
            assert row["median"] == s.median
            assert row["scaled_score"] == s.scaled_score

    def test_single_type(self):
        report, _ = analyze([TypeCounts(type_id="solo", inspected=10, repaired=1)])
        doc = json.loads(emit_score_table(report, "json"))
        assert len(doc) == 1
        assert doc[0]["scaled_score"] == 0.0

    def test_attribute_columns(self, attr_report):
        header = emit_score_table(attr_report, "csv").splitlines()[0]
        assert header.startswith("type_id,nps,schedule,material,")

    def test_unknown_format(self, eight_report):
        with pytest.raises(UsageError):
            emit_score_table(eight_report, "xml")


class TestBoxplotData:
    def test_medians_cluster_around_known_levels(self, eight_report):
        doc = json.loads(emit_boxplot_data(eight_report, "json"))
        med = {row["type_id"]: row["median"] for row in doc}
        for t in ("1", "2", "5", "6"):
            assert med[t] == pytest.approx(0.02, abs=0.007)
        for t in ("3", "4", "7", "8"):
            assert med[t] == pytest.approx(0.04, abs=0.007)

    def test_summary_ordering_invariant(self, attr_report):
        for row in json.loads(emit_boxplot_data(attr_report, "json")):
            assert row["min"] <= row["q1"] <= row["median"] <= row["q3"] <= row["max"]

    def test_input_order_default(self, eight_report):
        doc = json.loads(emit_boxplot_data(eight_report, "json"))
        assert [r["type_id"] for r in doc] == [t for t, _, _ in EIGHT_TYPES]

    def test_business_order(self, attr_report):
        doc = json.loads(emit_boxplot_data(attr_report, "json", order="business"))
        shares = {s.type_id: s.fraction for s in attr_report.business.shares}
        fracs = [shares[r["type_id"]] for r in doc]
        assert fracs == sorted(fracs, reverse=True)

    def test_business_order_needs_summary(self, eight_report):
        with pytest.raises(UsageError):
            emit_boxplot_data(eight_report, "json", order="business")

    def test_unknown_order(self, eight_report):
        with pytest.raises(UsageError):
            emit_boxplot_data(eight_report, "json", order="alphabetical")


class TestDendrogramRenderings:
    def test_ascii_pairs_adjacent(self, eight_report):
        lines = emit_dendrogram(eight_report, "ascii").splitlines()
        position = {}
        for i, line in enumerate(lines):
            for t in "12345678":
                if f"{t}.[" in line:
                    position[t] = i
        for a, b in (("1", "2"), ("3", "4"), ("5", "6"), ("7", "8")):
            assert abs(position[a] - position[b]) == 1

    def test_ascii_cluster_legend(self, eight_report):
        text = emit_dendrogram(eight_report, "ascii")
        assert "clusters (k=4):" in text
        assert "A: 3, 4" in text

    def test_single_leaf_ascii(self):
        report, _ = analyze([TypeCounts(type_id="solo", inspected=10, repaired=1)])
        text = emit_dendrogram(report, "ascii")
        assert "solo.[0.0]" in text

    def test_newick_roundtrip_topology(self, eight_report):
        text = emit_dendrogram(eight_report, "newick")
        root = parse_newick(text)
        tree = eight_report.dendrogram
        labels = {
            i: leaf_label(eight_report.score_of(t))
            for i, t in enumerate(tree.leaves)
        }
        expected_clades = set()
        n = tree.n_leaves
        for m in range(len(tree.merges)):
            members = tree.members(n + m)
            expected_clades.add(frozenset(labels[i] for i in members))
        assert root.clades() == expected_clades

    def test_newick_path_lengths_recover_height(self, eight_report):
        root = parse_newick(emit_dendrogram(eight_report, "newick"))
        tree = eight_report.dendrogram
        root_height = tree.merges[-1][2]

        def depth_to_leaves(node, acc):
            if not node.children:
                return [acc + (node.length or 0.0)]
            out = []
            for child in node.children:
                out.extend(depth_to_leaves(child, acc + (node.length or 0.0)))
            return out

        for depth in depth_to_leaves(root, 0.0):
            assert depth == pytest.approx(root_height, abs=1e-12)

    def test_svg_parses_and_contains_labels(self, eight_report):
        text = emit_dendrogram(eight_report, "svg")
        root = ET.fromstring(text)
        assert root.tag.endswith("svg")
        texts = [el.text for el in root.iter() if el.tag.endswith("text")]
        assert any(t and "4.[10.0]" in t for t in texts)

    def test_json_has_leaves_and_merges(self, eight_report):
        doc = json.loads(emit_dendrogram(eight_report, "json"))
        assert set(doc["leaves"]) == set("12345678")
        assert len(doc["merges"]) == 7
        assert all({"left", "right", "height"} <= set(m) for m in doc["merges"])

    def test_unknown_format(self, eight_report):
        with pytest.raises(UsageError):
            emit_dendrogram(eight_report, "png")


class TestReportDocument:
    def test_combined_report(self, attr_report):
        doc = json.loads(emit_report(attr_report))
        assert doc["provenance"]["n_analyzed"] == 10
        assert len(doc["scores"]) == 10
        assert doc["clusters"] is not None
        assert doc["business"]["shares"][0]["type_id"] == "1"

    def test_emission_is_deterministic(self, eight_report):
        for emit in (
            lambda: emit_score_table(eight_report, "csv"),
            lambda: emit_boxplot_data(eight_report, "json"),
            lambda: emit_dendrogram(eight_report, "newick"),
            lambda: emit_dendrogram(eight_report, "svg"),
            lambda: emit_report(eight_report),
        ):
            assert emit() == emit()

    def test_scored_must_match_leaves(self, eight_report):
        with pytest.raises(UsageError):
            AnalysisReport(
                scored=eight_report.scored[:4],
                dendrogram=eight_report.dendrogram,
                provenance=eight_report.provenance,
            )

    def test_clusters_table(self, eight_report):
        rows = emit_clusters(eight_report, "csv").splitlines()
        assert rows[0] == "label,members,mean_scaled_score,business_pct"
        assert rows[1].startswith("A,3;4,")
