import pytest

from mmviz.chartspec import (
    ChartSpec,
    ChartType,
    Selection,
    SortDirection,
    SortState,
    visible_rows,
)
from mmviz.executor import (
    AppState,
    DETAIL_RECORD_CAP,
    FeedbackKind,
    affordances,
    apply,
)
from mmviz.fusion import FusionContext, OperationRequest, _zone_key
from mmviz.gestures import Zone, ZoneKind


def req(kind, target=None, params=None):
    return OperationRequest(kind, target=target or {}, params=params or {})


def bound(dataset, **spec_kw):
    return AppState(dataset=dataset, spec=ChartSpec(**spec_kw))


class TestBind:
    def test_bind_x_builds_bar(self, tiny):
        state, fb, _ = apply(AppState(dataset=tiny),
                             req("bind", {"channel": "x"}, {"attributes": ["Genre"]}))
        assert fb.kind == FeedbackKind.SUCCESS
        assert state.spec.x == "Genre"
        assert state.revision == 1
        assert state.view().chart_type == "bar"

    def test_bind_same_x_is_void(self, tiny):
        state = bound(tiny, x="Genre")
        state2, fb, _ = apply(state, req("bind", {"channel": "x"}, {"attributes": ["Genre"]}))
        assert fb.kind == FeedbackKind.VOID
        assert state2.revision == state.revision

    def test_bind_y_replace_vs_append(self, tiny):
        state = bound(tiny, x="Genre", y=("Gross",))
        appended, fb, _ = apply(state, req("bind", {"channel": "y"},
                                           {"attributes": ["Budget"], "append": True}))
        assert appended.spec.y == ("Gross", "Budget")
        replaced, fb, _ = apply(state, req("bind", {"channel": "y"},
                                           {"attributes": ["Budget"], "append": False}))
        assert replaced.spec.y == ("Budget",)

    def test_bind_unknown_attribute(self, tiny):
        state = AppState(dataset=tiny)
        state2, fb, _ = apply(state, req("bind", {"channel": "x"}, {"attributes": ["Nope"]}))
        assert fb.kind == FeedbackKind.ERROR
        assert fb.code == "invalid_operation:UnknownAttribute"
        assert state2.revision == state.revision

    def test_bind_clears_type_override(self, tiny):
        state = bound(tiny, x="Genre", y=("Gross", "Budget"),
                      type_override=ChartType.STACKED_BAR)
        state2, fb, _ = apply(state, req("bind", {"channel": "color"},
                                         {"attributes": ["Rating"]}))
        assert fb.kind == FeedbackKind.ERROR or state2.spec.type_override is None

    def test_chart_type_change_clears_selection_and_viewport(self, tiny):
        state = AppState(dataset=tiny, spec=ChartSpec(x="Budget", y=("Gross",)),
                         selection=Selection(ids=frozenset({0, 2})),
                         viewport={"x": (10.0, 50.0)})
        state2, fb, _ = apply(state, req("bind", {"channel": "x"}, {"attributes": ["Genre"]}))
        assert fb.kind == FeedbackKind.SUCCESS
        assert state2.selection.ids == frozenset()
        assert state2.viewport == {}

    def test_rebind_x_drops_unsortable_carried_sort(self, tiny):
        # sorted grouped bar becomes a scatter: the sort is stale, not an error
        state = bound(tiny, x="Genre", y=("Gross",),
                      sort=SortState("Gross", SortDirection.DESCENDING))
        state2, fb, _ = apply(state, req("bind", {"channel": "x"}, {"attributes": ["Budget"]}))
        assert fb.kind == FeedbackKind.SUCCESS
        assert state2.spec.sort is None


class TestUnbind:
    def test_unbind_y_by_name(self, tiny):
        state = bound(tiny, x="Genre", y=("Gross", "Budget"))
        state2, fb, _ = apply(state, req("unbind", {"channel": "y"},
                                         {"attribute": "Budget"}))
        assert state2.spec.y == ("Gross",)
        assert fb.kind == FeedbackKind.SUCCESS

    def test_unbind_missing_is_void(self, tiny):
        state = bound(tiny, x="Genre")
        _, fb, _ = apply(state, req("unbind", {"channel": "y"}, {"attribute": "Gross"}))
        assert fb.kind == FeedbackKind.VOID

    def test_unbind_last_axis_cascades_color(self, tiny):
        state = bound(tiny, x="Genre", color="Rating")
        state2, fb, _ = apply(state, req("unbind", {"channel": "x"}, {}))
        assert state2.spec.x is None
        assert state2.spec.color is None

    def test_unbind_keeps_color_while_an_axis_remains(self, tiny):
        state = bound(tiny, x="Budget", y=("Gross",), color="Rating")
        state2, fb, _ = apply(state, req("unbind", {"channel": "x"}, {}))
        assert state2.spec.color == "Rating"
        assert state2.view().chart_type == "histogram"

    def test_unbind_drops_sort_on_departed_attribute(self, tiny):
        state = bound(tiny, x="Genre", y=("Gross", "Budget"),
                      sort=SortState("Budget", SortDirection.ASCENDING))
        state2, fb, _ = apply(state, req("unbind", {"channel": "y"},
                                         {"attribute": "Budget"}))
        assert state2.spec.sort is None


class TestSort:
    def test_sort_bar_by_count(self, tiny):
        state = bound(tiny, x="Genre")
        state2, fb, _ = apply(state, req("sort", {"axis": "y"},
                                         {"direction": "descending"}))
        assert fb.kind == FeedbackKind.SUCCESS
        assert state2.spec.sort == SortState("count", SortDirection.DESCENDING)

    def test_repeat_sort_is_void_with_exact_text(self, tiny):
        state = bound(tiny, x="Genre",
                      sort=SortState("count", SortDirection.ASCENDING))
        _, fb, _ = apply(state, req("sort", {"axis": "y"}, {"direction": "ascending"}))
        assert fb.kind == FeedbackKind.VOID
        assert fb.text == "Bars are already sorted in ascending order by count"

    def test_two_measures_without_by_is_ambiguous(self, tiny):
        state = bound(tiny, x="Genre", y=("Gross", "Budget"))
        state2, fb, _ = apply(state, req("sort", {"axis": "y"}, {"direction": "ascending"}))
        assert fb.kind == FeedbackKind.ERROR
        assert fb.code == "ambiguous_sort"
        assert state2.revision == state.revision

    def test_two_measures_with_spoken_by(self, tiny):
        state = bound(tiny, x="Genre", y=("Gross", "Budget"))
        # spoken names resolve case-insensitively
        state2, fb, _ = apply(state, req("sort", {"axis": "y"},
                                         {"direction": "descending", "by": "gross"}))
        assert fb.kind == FeedbackKind.SUCCESS
        assert state2.spec.sort.by == "Gross"

    def test_sort_scatter_rejected(self, tiny):
        state = bound(tiny, x="Budget", y=("Gross",))
        state2, fb, _ = apply(state, req("sort", {"axis": "x"}, {"direction": "ascending"}))
        assert fb.code == "invalid_operation:SortOnUnsortableChart"
        assert state2.revision == state.revision

    def test_parallel_axis_flip_by_index(self, tiny):
        state = bound(tiny, y=("Gross", "Budget"))
        state2, fb, _ = apply(state, req("sort", {"axis": "y", "index": 1},
                                         {"direction": "descending"}))
        assert fb.kind == FeedbackKind.SUCCESS
        assert state2.spec.sort == SortState("Budget", SortDirection.DESCENDING, axis="y")
        flags = {a.attribute: a.descending for a in state2.view().axes}
        assert flags["Budget"] is True

    def test_parallel_flip_same_way_is_void(self, tiny):
        state = bound(tiny, y=("Gross", "Budget"),
                      sort=SortState("Budget", SortDirection.DESCENDING, axis="y"))
        _, fb, _ = apply(state, req("sort", {"axis": "y", "index": 1},
                                    {"direction": "descending"}))
        assert fb.kind == FeedbackKind.VOID


class TestFilter:
    def test_range_filter_removes_rows(self, tiny):
        state = bound(tiny, x="Genre")
        state2, fb, _ = apply(state, req(
            "filter",
            {"range": {"attribute": "Gross", "comparator": "<", "bounds": (100.0,)}},
            {"polarity": "remove"}))
        assert fb.kind == FeedbackKind.SUCCESS
        # rows with Gross < 100 go; the null-Gross row stays under "remove"
        assert visible_rows(state2.spec.filters, tiny) == frozenset({0, 2, 4, 5})

    def test_keep_range_excludes_nulls(self, tiny):
        state = bound(tiny, x="Genre")
        state2, _, _ = apply(state, req(
            "filter",
            {"range": {"attribute": "Gross", "comparator": ">=", "bounds": (100.0,)}},
            {"polarity": "keep"}))
        assert visible_rows(state2.spec.filters, tiny) == frozenset({0, 2, 5})

    def test_redundant_filter_is_void(self, tiny):
        state = bound(tiny, x="Genre")
        state2, fb, _ = apply(state, req(
            "filter",
            {"range": {"attribute": "Gross", "comparator": "<", "bounds": (-1.0,)}},
            {"polarity": "remove"}))
        assert fb.kind == FeedbackKind.VOID
        assert fb.text == "No points meet that filtering criteria"
        assert state2.revision == state.revision

    def test_categorical_range_rejected(self, tiny):
        state = bound(tiny, x="Genre")
        _, fb, _ = apply(state, req(
            "filter",
            {"range": {"attribute": "Genre", "comparator": "<", "bounds": (1.0,)}},
            {"polarity": "remove"}))
        assert fb.kind == FeedbackKind.ERROR

    def test_remove_named_categories(self, tiny):
        state = bound(tiny, x="Genre")
        state2, _, _ = apply(state, req(
            "filter",
            {"categories": {"attribute": "Genre", "values": ["drama"]}},
            {"polarity": "remove"}))
        assert visible_rows(state2.spec.filters, tiny) == frozenset({0, 2, 3, 5})

    def test_remove_all_except(self, tiny):
        state = bound(tiny, x="Genre")
        state2, _, _ = apply(state, req(
            "filter",
            {"categories": {"attribute": "Genre", "values": ["Drama"]}},
            {"polarity": "remove", "except_values": True}))
        assert visible_rows(state2.spec.filters, tiny) == frozenset({1, 4})

    def test_keep_categories(self, tiny):
        state = bound(tiny, x="Genre")
        state2, _, _ = apply(state, req(
            "filter",
            {"categories": {"attribute": "Genre", "values": ["Action", "Comedy"]}},
            {"polarity": "keep"}))
        assert visible_rows(state2.spec.filters, tiny) == frozenset({0, 2, 3, 5})

    def test_remove_others_keeps_selection_rows(self, tiny):
        state = AppState(dataset=tiny, spec=ChartSpec(x="Budget", y=("Gross",)),
                         selection=Selection(ids=frozenset({0, 2})))
        state2, fb, _ = apply(state, req("filter", {"reference": "others"},
                                         {"polarity": "remove"}))
        assert fb.kind == FeedbackKind.SUCCESS
        assert visible_rows(state2.spec.filters, tiny) == frozenset({0, 2})
        assert state2.selection.ids == frozenset()

    def test_remove_these(self, tiny):
        state = AppState(dataset=tiny, spec=ChartSpec(x="Budget", y=("Gross",)),
                         selection=Selection(ids=frozenset({0, 2})))
        state2, _, _ = apply(state, req("filter", {"reference": "these"},
                                        {"polarity": "remove"}))
        assert visible_rows(state2.spec.filters, tiny) == frozenset({1, 3, 4, 5})

    def test_keep_these_equals_remove_others(self, tiny):
        base = AppState(dataset=tiny, spec=ChartSpec(x="Budget", y=("Gross",)),
                        selection=Selection(ids=frozenset({1, 3})))
        a, _, _ = apply(base, req("filter", {"reference": "these"}, {"polarity": "keep"}))
        b, _, _ = apply(base, req("filter", {"reference": "others"}, {"polarity": "remove"}))
        assert visible_rows(a.spec.filters, tiny) == visible_rows(b.spec.filters, tiny)

    def test_reference_without_selection_is_void(self, tiny):
        state = bound(tiny, x="Genre")
        _, fb, _ = apply(state, req("filter", {"reference": "others"},
                                    {"polarity": "remove"}))
        assert fb.kind == FeedbackKind.VOID

    def test_erase_bars_removes_categories(self, tiny):
        state = bound(tiny, x="Genre")
        state2, fb, _ = apply(state, req("filter", {"marks": ["bar:Drama"]}, {}))
        assert fb.kind == FeedbackKind.SUCCESS
        assert visible_rows(state2.spec.filters, tiny) == frozenset({0, 2, 3, 5})

    def test_erase_grouped_series_mark_removes_whole_category(self, tiny):
        state = bound(tiny, x="Genre", y=("Gross", "Budget"))
        state2, _, _ = apply(state, req("filter", {"marks": ["bar:Drama/Gross"]}, {}))
        assert visible_rows(state2.spec.filters, tiny) == frozenset({0, 2, 3, 5})

    def test_erase_histogram_bin_removes_range(self, tiny):
        state = bound(tiny, x="Gross")
        view = state.view()
        target = view.marks[0]
        state2, fb, _ = apply(state, req("filter", {"marks": [target.id]}, {}))
        assert fb.kind == FeedbackKind.SUCCESS
        remaining = visible_rows(state2.spec.filters, tiny)
        assert set(target.rows).isdisjoint(remaining)

    def test_erase_scatter_points_removes_rows(self, tiny):
        state = bound(tiny, x="Budget", y=("Gross",))
        state2, _, _ = apply(state, req("filter", {"marks": ["pt:0", "pt:2"]}, {}))
        assert visible_rows(state2.spec.filters, tiny) == frozenset({1, 3, 4, 5})

    def test_erase_color_legend_value_filters(self, tiny):
        state = bound(tiny, x="Budget", y=("Gross",), color="Rating")
        state2, fb, _ = apply(state, req("filter", {"legend_values": ["R"]}, {}))
        assert fb.kind == FeedbackKind.SUCCESS
        visible = visible_rows(state2.spec.filters, tiny)
        assert all(tiny.value(r, "Rating") != "R" for r in visible)

    def test_erase_series_legend_entry_unbinds(self, tiny):
        state = bound(tiny, x="Genre", y=("Gross", "Budget"))
        state2, fb, _ = apply(state, req("filter", {"legend_values": ["Budget"]}, {}))
        assert fb.kind == FeedbackKind.SUCCESS
        assert state2.spec.y == ("Gross",)
        assert state2.spec.filters == ()


class TestSelect:
    def test_tap_mark_selects_rows(self, tiny):
        state = bound(tiny, x="Budget", y=("Gross",))
        state2, fb, _ = apply(state, req("select", {"marks": ["pt:3"]},
                                         {"compound": False}))
        assert fb.kind == FeedbackKind.SUCCESS
        assert state2.selection.ids == frozenset({3})

    def test_plain_tap_replaces_compound_extends(self, tiny):
        state = AppState(dataset=tiny, spec=ChartSpec(x="Budget", y=("Gross",)),
                         selection=Selection(ids=frozenset({0})))
        plain, _, _ = apply(state, req("select", {"marks": ["pt:3"]}, {"compound": False}))
        comp, _, _ = apply(state, req("select", {"marks": ["pt:3"]}, {"compound": True}))
        assert plain.selection.ids == frozenset({3})
        assert comp.selection.ids == frozenset({0, 3})

    def test_legend_value_select(self, tiny):
        state = bound(tiny, x="Budget", y=("Gross",), color="Rating")
        state2, _, _ = apply(state, req("select", {"legend_value": "PG"}, {}))
        assert state2.selection.ids == {r for r in range(6)
                                        if tiny.value(r, "Rating") == "PG"}

    def test_axis_range_select(self, tiny):
        state = bound(tiny, x="Budget", y=("Gross",))
        state2, _, _ = apply(state, req(
            "select", {"axis_range": {"axis": "y", "lo": 100.0, "hi": 250.0}}, {}))
        expect = {r for r in range(6)
                  if (v := tiny.numeric(r, "Gross")) is not None and 100.0 <= v <= 250.0}
        assert state2.selection.ids == expect

    def test_lasso_uses_data_coordinates(self, tiny):
        state = bound(tiny, x="Budget", y=("Gross",))
        target = state.view().mark("pt:0").channels
        x, y = target["x"], target["y"]
        poly = [[x - 1, y - 1], [x + 1, y - 1], [x + 1, y + 1], [x - 1, y + 1]]
        state2, _, _ = apply(state, req("select", {"lasso": poly}, {"compound": False}))
        assert state2.selection.ids == frozenset({0})

    def test_degenerate_lasso_is_void(self, tiny):
        state = bound(tiny, x="Budget", y=("Gross",))
        _, fb, _ = apply(state, req("select", {"lasso": [[0, 0], [0, 0]]}, {}))
        assert fb.kind == FeedbackKind.VOID

    def test_selection_limited_to_visible_rows(self, tiny):
        state = bound(tiny, x="Budget", y=("Gross",))
        state, _, _ = apply(state, req(
            "filter",
            {"categories": {"attribute": "Genre", "values": ["Drama"]}},
            {"polarity": "remove"}))
        state2, _, _ = apply(state, req("select", {"marks": ["pt:1", "pt:0"]},
                                        {"compound": False}))
        assert state2.selection.ids == frozenset({0})  # row 1 is filtered out

    def test_clear_selection(self, tiny):
        state = AppState(dataset=tiny, spec=ChartSpec(x="Budget", y=("Gross",)),
                         selection=Selection(ids=frozenset({0})))
        state2, fb, _ = apply(state, req("clear_selection"))
        assert fb.kind == FeedbackKind.SUCCESS
        assert state2.selection.ids == frozenset()
        _, fb2, _ = apply(state2, req("clear_selection"))
        assert fb2.kind == FeedbackKind.VOID

    def test_select_on_empty_view_is_error(self, tiny):
        _, fb, _ = apply(AppState(dataset=tiny), req("select", {"marks": ["pt:0"]}, {}))
        assert fb.kind == FeedbackKind.ERROR


class TestDetails:
    def test_mark_details_returns_records(self, tiny):
        state = bound(tiny, x="Genre")
        state2, fb, detail = apply(state, req("details", {"mark": "bar:Drama"}, {}))
        assert fb.kind == FeedbackKind.SUCCESS
        assert state2.revision == state.revision  # details never mutate
        ids = {rec["row_id"] for rec in detail["records"]}
        assert ids == {1, 4}
        assert detail["truncated"] is False

    def test_mark_details_caps_records(self, movies):
        state = bound(movies, x="Major Genre")
        _, _, detail = apply(state, req("details", {"mark": "bar:Drama"}, {}))
        assert len(detail["records"]) == DETAIL_RECORD_CAP
        assert detail["truncated"] is True

    def test_ruler_reports_bars_at_or_above(self, tiny):
        state = bound(tiny, x="Genre", y=("Gross",))
        _, fb, detail = apply(state, req("details", {"ruler": {"axis": "y"}},
                                         {"value": 100.0}))
        view = state.view()
        expect = {m.id for m in view.marks if m.channels["value"] >= 100.0}
        assert set(detail["marks"]) == expect

    def test_ruler_on_categorical_axis_is_void(self, tiny):
        state = bound(tiny, x="Genre")
        _, fb, _ = apply(state, req("details", {"ruler": {"axis": "x"}}, {"value": 1.0}))
        assert fb.kind == FeedbackKind.VOID


class TestZoomPan:
    def test_zoom_in_shrinks_viewport(self, tiny):
        state = bound(tiny, x="Budget", y=("Gross",))
        state2, fb, _ = apply(state, req("zoom", {}, {"scale": 2.0}))
        assert fb.kind == FeedbackKind.SUCCESS
        for axis_id, (lo, hi) in state2.viewport.items():
            assert hi - lo > 0

    def test_zoom_out_past_extent_clears_viewport(self, tiny):
        state = bound(tiny, x="Budget", y=("Gross",))
        state2, _, _ = apply(state, req("zoom", {}, {"scale": 2.0}))
        state3, _, _ = apply(state2, req("zoom", {}, {"scale": 0.1}))
        assert state3.viewport == {}

    def test_pan_round_trip_is_exact(self, tiny):
        state = bound(tiny, x="Budget", y=("Gross",))
        state, _, _ = apply(state, req("zoom", {}, {"scale": 4.0}))
        before = dict(state.viewport)
        right, fb, _ = apply(state, req("pan", {}, {"delta": [5.0, 0.0]}))
        assert fb.kind == FeedbackKind.SUCCESS
        back, _, _ = apply(right, req("pan", {}, {"delta": [-5.0, 0.0]}))
        assert back.viewport == before

    def test_pan_without_zoom_is_void(self, tiny):
        state = bound(tiny, x="Budget", y=("Gross",))
        _, fb, _ = apply(state, req("pan", {}, {"delta": [5.0, 0.0]}))
        assert fb.kind == FeedbackKind.VOID

    def test_zoom_identity_is_void(self, tiny):
        state = bound(tiny, x="Budget", y=("Gross",))
        _, fb, _ = apply(state, req("zoom", {}, {"scale": 1.0}))
        assert fb.kind == FeedbackKind.VOID

    def test_bar_chart_cannot_zoom(self, tiny):
        state = bound(tiny, x="Genre")
        _, fb, _ = apply(state, req("zoom", {}, {"scale": 2.0}))
        assert fb.kind == FeedbackKind.VOID


class TestChartType:
    def test_stacked_override(self, tiny):
        state = bound(tiny, x="Genre", y=("Gross", "Budget"))
        state2, fb, _ = apply(state, req("chart_type", {}, {"chart_type": "stacked_bar"}))
        assert fb.kind == FeedbackKind.SUCCESS
        assert state2.view().chart_type == "stacked_bar"

    def test_switch_back_to_inferred_clears_override(self, tiny):
        state = bound(tiny, x="Genre", y=("Gross", "Budget"),
                      type_override=ChartType.STACKED_BAR)
        state2, fb, _ = apply(state, req("chart_type", {}, {"chart_type": "grouped_bar"}))
        assert fb.kind == FeedbackKind.SUCCESS
        assert state2.spec.type_override is None

    def test_same_type_is_void(self, tiny):
        state = bound(tiny, x="Genre")
        _, fb, _ = apply(state, req("chart_type", {}, {"chart_type": "bar"}))
        assert fb.kind == FeedbackKind.VOID

    def test_unfit_type_is_error(self, tiny):
        state = bound(tiny, x="Genre")
        state2, fb, _ = apply(state, req("chart_type", {}, {"chart_type": "scatter"}))
        assert fb.code == "invalid_operation:BadTypeOverride"
        assert state2.revision == state.revision


class TestInvalidOperations:
    """Every rejection leaves the revision untouched and names its reason."""

    CASES = [
        ("ColorWithoutAxes",
         ChartSpec(),
         req("bind", {"channel": "color"}, {"attributes": ["Rating"]})),
        ("CategoricalBothAxes",
         ChartSpec(x="Genre"),
         req("bind", {"channel": "y"}, {"attributes": ["Rating"]})),
        ("DuplicateBinding",
         ChartSpec(x="Gross"),
         req("bind", {"channel": "y"}, {"attributes": ["Gross"]})),
        ("SortOnUnsortableChart",
         ChartSpec(x="Budget", y=("Gross",)),
         req("sort", {"axis": "x"}, {"direction": "ascending"})),
        ("CategoricalMeasure",
         ChartSpec(x="Budget"),
         req("bind", {"channel": "y"}, {"attributes": ["Genre"]})),
        ("UnknownAttribute",
         ChartSpec(),
         req("bind", {"channel": "x"}, {"attributes": ["Elephants"]})),
    ]

    @pytest.mark.parametrize("reason, spec, request_", CASES,
                             ids=[c[0] for c in CASES])
    def test_rejection_preserves_state(self, tiny, reason, spec, request_):
        state = AppState(dataset=tiny, spec=spec, revision=7)
        state2, fb, _ = apply(state, request_)
        assert fb.kind == FeedbackKind.ERROR
        assert fb.code == f"invalid_operation:{reason}"
        assert state2.revision == 7
        assert state2.spec == spec


class TestInputErrors:
    def test_pen_in_panel_text(self, tiny):
        _, fb, _ = apply(AppState(dataset=tiny),
                         req("input_error", {}, {"code": "pen_in_panel"}))
        assert fb.kind == FeedbackKind.ERROR
        assert fb.text == "The pen cannot be used in the panel area. Please use touch."

    @pytest.mark.parametrize("code", ["parse_incomplete", "parse_unrecognized",
                                      "parse_ambiguous"])
    def test_parse_failures_share_text(self, tiny, code):
        _, fb, _ = apply(AppState(dataset=tiny), req("input_error", {}, {"code": code}))
        assert fb.text == "Unable to process that command. Please try a different one"

    def test_transcript_while_idle_is_void(self, tiny):
        _, fb, _ = apply(AppState(dataset=tiny),
                         req("input_error", {}, {"code": "transcript_while_idle"}))
        assert fb.kind == FeedbackKind.VOID

    def test_unknown_request_kind(self, tiny):
        _, fb, _ = apply(AppState(dataset=tiny), req("frobnicate"))
        assert fb.kind == FeedbackKind.ERROR
        assert fb.code == "unsupported_interaction"


class TestAffordances:
    def test_idle_context_is_quiet(self, tiny):
        hints = affordances(AppState(dataset=tiny), FusionContext())
        assert hints.ink_pad_visible is False
        assert hints.highlighted_pills == ()

    def test_y_title_hold_disables_categoricals(self, tiny):
        ctx = FusionContext()
        zone = Zone(ZoneKind.Y_TITLE)
        ctx.holds[_zone_key(zone)] = zone
        hints = affordances(bound(tiny, x="Genre"), ctx)
        assert hints.ink_pad_visible is True
        assert "Gross" in hints.highlighted_pills
        disabled = dict(hints.disabled_pills)
        assert disabled["Rating"] == "CategoricalBothAxes"
        assert "Genre" in disabled

    def test_bound_pill_reported_as_duplicate(self, tiny):
        ctx = FusionContext()
        zone = Zone(ZoneKind.X_TITLE)
        ctx.holds[_zone_key(zone)] = zone
        hints = affordances(bound(tiny, x="Genre"), ctx)
        assert dict(hints.disabled_pills)["Genre"] == "already_bound"
