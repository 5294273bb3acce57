"""
Unit tests for graceful labelings: the G(t,s) numbering, the verifier and the search.
"""

import pytest

from euler_mod4.errors import LabelingFormatError, LabelingMismatchError, ParameterError
from euler_mod4.families import GtsParams, cycle_graph, gts
from euler_mod4.graceful import (
    ABSENT,
    FOUND,
    INCONCLUSIVE,
    GracefulLabeling,
    ap_rows,
    complement_labeling,
    gts_labeling,
    gts_serial_order,
    parse_labeling,
    search_graceful,
    serialize_labeling,
    verify_graceful,
)
from euler_mod4.graph_core import build_graph


def c4_labeling():
    labels = {0: 0, 1: 4, 2: 1, 3: 2}
    return GracefulLabeling(node_labels=labels, q=4)


class TestGtsLabeling:
    """Tests for the closed-form G(t,s) numbering."""

    def test_one_one(self):
        """G(1,1) is C4 labeled 0, 4, 1, 2."""
        labeling = gts_labeling(GtsParams(1, 1))
        graph = gts(GtsParams(1, 1)).graph

        assert sorted(labeling.node_labels.values()) == [0, 1, 2, 4]
        assert sorted(labeling.edge_labels(graph).values()) == [1, 2, 3, 4]

    def test_four_three(self):
        params = GtsParams(4, 3)
        report = verify_graceful(gts(params).graph, gts_labeling(params))

        assert report.valid
        assert report.violations == []

    def test_grid(self):
        for t in range(1, 6):
            for s in range(1, 6):
                params = GtsParams(t, s)
                labeling = gts_labeling(params)
                assert labeling.q == 4 * t * s
                assert verify_graceful(gts(params).graph, labeling).valid, (t, s)

    def test_column_zero_is_row_index(self):
        params = GtsParams(3, 2)
        labeling = gts_labeling(params)
        for r, row in enumerate(gts(params).grid):
            assert labeling.node_labels[row[0]] == r

    def test_largest_label_is_q(self):
        params = GtsParams(2, 3)
        assert max(gts_labeling(params).node_labels.values()) == params.size


class TestProgressions:
    """Tests for ap_rows."""

    def test_four_three(self):
        progressions = ap_rows(GtsParams(4, 3))

        assert progressions.lower_rows[0] == [11, 19, 27]
        assert progressions.lower_rows[-1] == [8, 16, 24]
        assert progressions.lower_columns[0] == [11, 10, 9, 8]
        assert progressions.upper_first_column == [29, 34, 39, 44]
        assert progressions.upper_rows[-1] == [29, 31, 33]
        assert progressions.upper_rows[0] == [44, 46, 48]

    @pytest.mark.parametrize("t, s", [(1, 2), (2, 3), (3, 3), (4, 3), (5, 2)])
    def test_common_differences(self, t, s):
        def differences(values):
            return {b - a for a, b in zip(values, values[1:])}

        progressions = ap_rows(GtsParams(t, s))
        for row in progressions.lower_rows:
            assert differences(row) <= {2 * t}
        for column in progressions.lower_columns:
            assert differences(column) <= {-1}
        assert differences(progressions.upper_first_column) <= {2 * s - 1}
        for row in progressions.upper_rows:
            assert differences(row) <= {2}


class TestSerialOrder:
    """Tests for gts_serial_order."""

    def test_ranks_by_label(self):
        params = GtsParams(4, 3)
        labels = gts_labeling(params).node_labels
        ranks = gts_serial_order(params).ranks
        rank_of_label = {labels[node]: rank for node, rank in ranks.items()}

        assert rank_of_label[0] == 1
        assert rank_of_label[8] == 9
        assert rank_of_label[16] == 13
        assert rank_of_label[48] == params.order

    def test_ranks_are_a_permutation(self):
        params = GtsParams(3, 4)
        assert sorted(gts_serial_order(params).ranks.values()) == list(range(1, params.order + 1))


class TestVerifyGraceful:
    """Tests for verify_graceful."""

    def test_valid(self):
        assert verify_graceful(cycle_graph(4), c4_labeling()).valid

    def test_duplicate_node_label(self):
        labeling = GracefulLabeling(node_labels={0: 0, 1: 4, 2: 1, 3: 0}, q=4)
        report = verify_graceful(cycle_graph(4), labeling)
        assert not report.valid
        assert any("used by nodes [0, 3]" in v for v in report.violations)

    def test_out_of_range(self):
        labeling = GracefulLabeling(node_labels={0: 0, 1: 5, 2: 1, 3: 2}, q=4)
        report = verify_graceful(cycle_graph(4), labeling)
        assert not report.valid
        assert any("outside" in v for v in report.violations)

    def test_repeated_and_missing_edge_labels(self):
        """C5 cannot be graceful; the identity labeling repeats 1 and misses 5."""
        labeling = GracefulLabeling(node_labels={u: u for u in range(5)}, q=5)
        report = verify_graceful(cycle_graph(5), labeling)
        assert not report.valid
        assert any(v.startswith("edge label 1 on edges") for v in report.violations)
        assert any(v.startswith("edge labels missing") for v in report.violations)

    def test_wrong_q(self):
        labeling = GracefulLabeling(node_labels={0: 0, 1: 4, 2: 1, 3: 2}, q=5)
        report = verify_graceful(cycle_graph(4), labeling)
        assert not report.valid
        assert report.violations[0] == "labeling declares q=5 but graph has q=4"

    def test_node_set_mismatch(self):
        with pytest.raises(LabelingMismatchError):
            verify_graceful(cycle_graph(4), GracefulLabeling(node_labels={0: 0, 1: 4, 2: 1}, q=4))
        with pytest.raises(LabelingMismatchError):
            verify_graceful(
                cycle_graph(4), GracefulLabeling(node_labels={0: 0, 1: 4, 2: 1, 3: 2, 7: 3}, q=4)
            )

    def test_complement_is_graceful(self):
        params = GtsParams(3, 2)
        graph = gts(params).graph
        complement = complement_labeling(gts_labeling(params))

        assert verify_graceful(graph, complement).valid
        assert complement_labeling(complement) == gts_labeling(params)


class TestSearchGraceful:
    """Tests for search_graceful."""

    @pytest.mark.parametrize("n", [3, 4, 7, 8])
    def test_graceful_cycles(self, n):
        graph = cycle_graph(n)
        result = search_graceful(graph)

        assert result.status == FOUND
        assert result.found
        assert verify_graceful(graph, result.labeling).valid

    @pytest.mark.parametrize("n", [5, 6])
    def test_non_graceful_cycles(self, n):
        result = search_graceful(cycle_graph(n))
        assert result.status == ABSENT
        assert result.labeling is None

    def test_k4_graceful(self, k4):
        result = search_graceful(k4)
        assert result.found
        assert verify_graceful(k4, result.labeling).valid

    def test_k5_not_graceful(self, k5):
        assert search_graceful(k5).status == ABSENT

    def test_budget_exhausted(self, k4):
        result = search_graceful(k4, budget=2)
        assert result.status == INCONCLUSIVE
        assert result.assignments == 2

    def test_too_many_nodes(self):
        """Seven nodes cannot take distinct labels in 0..4."""
        graph = build_graph(7, [(0, 1), (1, 2), (2, 3), (3, 0)])
        assert search_graceful(graph).status == ABSENT

    def test_isolated_nodes_get_spare_labels(self):
        graph = build_graph(4, [(0, 1), (1, 2), (0, 2)])
        result = search_graceful(graph)
        assert result.found
        assert verify_graceful(graph, result.labeling).valid

    def test_invalid_arguments(self, c6):
        with pytest.raises(ParameterError):
            search_graceful(build_graph(3, []))
        with pytest.raises(ParameterError):
            search_graceful(c6, budget=0)

    @pytest.mark.parametrize(
        "t, s",
        [
            (1, 1),
            (1, 2),
            (1, 3),
            (1, 4),
            pytest.param(1, 5, marks=pytest.mark.slow),
            (2, 1),
            pytest.param(2, 2, marks=pytest.mark.slow),
            (3, 1),
        ],
    )
    def test_agrees_with_closed_form(self, t, s):
        """Every G(t,s) on at most 12 nodes."""
        params = GtsParams(t, s)
        assert params.order <= 12
        graph = gts(params).graph
        result = search_graceful(graph)
        assert result.found
        assert verify_graceful(graph, result.labeling).valid

    def test_small_gts_instances_are_all_listed(self):
        listed = {(1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (2, 1), (2, 2), (3, 1)}
        small = {(t, s) for t in range(1, 7) for s in range(1, 7) if GtsParams(t, s).order <= 12}
        assert small == listed


class TestLabelingDocuments:
    """Tests for parse_labeling and serialize_labeling."""

    def test_roundtrip(self):
        labeling = gts_labeling(GtsParams(2, 2))
        assert parse_labeling(serialize_labeling(labeling)) == labeling

    def test_parse(self):
        labeling = parse_labeling('{"labels": {"0": 0, "1": 4, "2": 1, "3": 2}, "q": 4}')
        assert labeling == c4_labeling()

    @pytest.mark.parametrize(
        "text",
        ["", "not json", '{"labels": {"0": 0}}', '{"labels": {"a": 0}, "q": 1}', '{"labels": [], "q": 1}'],
    )
    def test_parse_errors(self, text):
        with pytest.raises(LabelingFormatError):
            parse_labeling(text)
