import pytest

from mmviz.fusion import FusionEngine, check_pattern_table, equivalence_gaps, load_patterns
from mmviz.gestures import Gesture, GestureKind, Zone, ZoneKind


@pytest.fixture()
def engine(lexicon):
    return FusionEngine(lexicon)


def g(kind, zone=None, **kw):
    return Gesture(kind, zone=zone, **kw)


MOD = Zone(ZoneKind.MODIFIER)
X_TITLE = Zone(ZoneKind.X_TITLE)
Y_TITLE = Zone(ZoneKind.Y_TITLE)
X_SCALE = Zone(ZoneKind.X_SCALE)
Y_SCALE = Zone(ZoneKind.Y_SCALE)


class TestPatternTable:
    def test_shipped_table_has_no_conflicts(self):
        assert check_pattern_table(load_patterns()) == []

    def test_injected_axis_drag_conflict_found_once(self):
        table = load_patterns()
        # the motivating clash: axis drag meaning both sort and select
        table["patterns"].extend([
            {"id": "J1", "instrument": "x_axis_scale", "gesture": "drag",
             "device": "any", "context": None, "operation": "sort",
             "modalities": ["touch"]},
            {"id": "J2", "instrument": "x_axis_scale", "gesture": "drag",
             "device": "any", "context": None, "operation": "select",
             "modalities": ["touch"]},
        ])
        conflicts = check_pattern_table(table)
        assert len(conflicts) == 1
        assert conflicts[0]["operations"] == ["select", "sort"]
        assert conflicts[0]["patterns"] == ["J1", "J2"]

    def test_device_split_is_not_a_conflict(self):
        table = {"patterns": [
            {"id": "A", "instrument": "scale", "gesture": "drag",
             "device": "touch", "operation": "details"},
            {"id": "B", "instrument": "scale", "gesture": "drag",
             "device": "pen", "operation": "select"},
        ]}
        assert check_pattern_table(table) == []

    def test_context_split_is_not_a_conflict(self):
        table = {"patterns": [
            {"id": "A", "instrument": "mark", "gesture": "tap",
             "device": "any", "context": None, "operation": "select"},
            {"id": "B", "instrument": "mark", "gesture": "tap",
             "device": "any", "context": "modifier_held", "operation": "select_compound"},
        ]}
        assert check_pattern_table(table) == []

    def test_equivalence_gaps_are_reported_not_fatal(self):
        gaps = equivalence_gaps(load_patterns())
        assert isinstance(gaps, list)
        assert all("operation" in entry for entry in gaps)


class TestPushToTalk:
    def test_hold_starts_recording(self, engine):
        engine.on_gesture(g(GestureKind.POINT_START, MOD))
        assert engine.ctx.recording

    def test_lift_finalizes(self, engine):
        engine.on_gesture(g(GestureKind.POINT_START, MOD))
        engine.on_gesture(g(GestureKind.POINT_END, MOD))
        assert engine.ctx.ptt == "finalizing"

    def test_transcript_without_hold_is_error(self, engine):
        out = engine.on_transcript("remove drama")
        assert out[0].kind == "input_error"
        assert out[0].params["code"] == "transcript_while_idle"

    def test_empty_transcript_is_void(self, engine):
        engine.on_gesture(g(GestureKind.POINT_START, MOD))
        engine.on_gesture(g(GestureKind.POINT_END, MOD))
        out = engine.on_transcript("   ")
        assert out[0].kind == "void"
        assert engine.ctx.ptt == "idle"

    def test_title_hold_supplies_channel(self, engine):
        engine.on_gesture(g(GestureKind.POINT_START, Y_TITLE))
        engine.on_gesture(g(GestureKind.POINT_END, Y_TITLE))
        out = engine.on_transcript("Worldwide gross and production budget")
        assert out[0].kind == "bind"
        assert out[0].target == {"channel": "y"}
        assert out[0].provenance == ("touch", "speech")

    def test_stale_silent_hold_yields_to_new_hold(self, engine):
        engine.on_gesture(g(GestureKind.POINT_START, X_TITLE))
        engine.on_gesture(g(GestureKind.POINT_END, X_TITLE))  # silence
        engine.on_gesture(g(GestureKind.POINT_START, Y_TITLE))
        engine.on_gesture(g(GestureKind.POINT_END, Y_TITLE))
        out = engine.on_transcript("worldwide gross")
        assert out[0].target == {"channel": "y"}

    def test_parse_failure_surfaces_reason(self, engine):
        engine.on_gesture(g(GestureKind.POINT_START, MOD))
        engine.on_gesture(g(GestureKind.POINT_END, MOD))
        out = engine.on_transcript("Remove under 1200")
        assert out[0].kind == "input_error"
        assert out[0].params["code"] == "parse_incomplete"


class TestGestureMapping:
    def test_tap_pill_while_title_held_binds(self, engine):
        engine.on_gesture(g(GestureKind.POINT_START, X_TITLE))
        out = engine.on_gesture(g(GestureKind.TAP, Zone(ZoneKind.PILL, "Major Genre"),
                                  device="touch"))
        assert out[0].kind == "bind"
        assert out[0].target == {"channel": "x"}
        assert out[0].params["attributes"] == ["Major Genre"]

    def test_tap_pill_without_hold_unsupported(self, engine):
        out = engine.on_gesture(g(GestureKind.TAP, Zone(ZoneKind.PILL, "Major Genre"),
                                  device="touch"))
        assert out[0].kind == "unsupported"

    def test_tap_mark_selects(self, engine):
        out = engine.on_gesture(g(GestureKind.TAP, Zone(ZoneKind.MARK, "pt:5"),
                                  device="touch"))
        assert out[0].kind == "select"
        assert out[0].target == {"marks": ["pt:5"]}
        assert out[0].params["compound"] is False

    def test_tap_mark_with_modifier_is_compound(self, engine):
        engine.on_gesture(g(GestureKind.POINT_START, MOD))
        out = engine.on_gesture(g(GestureKind.TAP, Zone(ZoneKind.MARK, "pt:5"),
                                  device="touch"))
        assert out[0].params["compound"] is True

    def test_tap_canvas_clears_selection(self, engine):
        out = engine.on_gesture(g(GestureKind.TAP, Zone(ZoneKind.CANVAS), device="touch"))
        assert out[0].kind == "clear_selection"

    @pytest.mark.parametrize("zone, direction, axis, expected", [
        (X_SCALE, "right", "x", "ascending"),
        (X_SCALE, "left", "x", "descending"),
        (Y_SCALE, "up", "y", "ascending"),
        (Y_SCALE, "down", "y", "descending"),
        (Y_TITLE, "down", "y", "descending"),
    ])
    def test_swipe_sort_directions(self, engine, zone, direction, axis, expected):
        out = engine.on_gesture(g(GestureKind.SWIPE, zone, device="touch",
                                  direction=direction))
        assert out[0].kind == "sort"
        assert out[0].target["axis"] == axis
        assert out[0].params["direction"] == expected

    def test_cross_axis_swipe_unsupported(self, engine):
        out = engine.on_gesture(g(GestureKind.SWIPE, Y_SCALE, device="touch",
                                  direction="left"))
        assert out[0].kind == "unsupported"

    def test_touch_scale_drag_streams_ruler_details(self, engine):
        out = engine.on_gesture(g(GestureKind.DRAG_MOVE, Y_SCALE, device="touch",
                                  path=((170, 300, 120e6),)))
        assert out[0].kind == "details"
        assert out[0].target["ruler"]["axis"] == "y"
        assert out[0].params["value"] == 120e6

    def test_pen_scale_drag_selects_range(self, engine):
        out = engine.on_gesture(g(GestureKind.DRAG_END, X_SCALE, device="pen",
                                  path=((200, 690, 10.0), (300, 690, 80.0), (250, 690, 40.0))))
        assert out[0].kind == "select"
        assert out[0].target["axis_range"]["lo"] == 10.0
        assert out[0].target["axis_range"]["hi"] == 80.0

    def test_touch_canvas_drag_pans(self, engine):
        out = engine.on_gesture(g(GestureKind.DRAG_END, Zone(ZoneKind.CANVAS),
                                  device="touch",
                                  path=((300, 300, (10.0, 5.0)), (350, 300, (14.0, 5.0)))))
        assert out[0].kind == "pan"
        assert out[0].params["delta"] == [4.0, 0.0]

    def test_pinch_zooms(self, engine):
        out = engine.on_gesture(g(GestureKind.PINCH, Zone(ZoneKind.CANVAS),
                                  device="touch", scale=1.5, center=(20.0, 30.0)))
        assert out[0].kind == "zoom"
        assert out[0].params == {"scale": 1.5, "center": [20.0, 30.0]}

    def test_lasso_selects_polygon(self, engine):
        path = ((0, 0, (0.0, 0.0)), (1, 0, (5.0, 0.0)), (1, 1, (5.0, 5.0)),
                (0, 0, (0.0, 0.0)))
        out = engine.on_gesture(g(GestureKind.LASSO, Zone(ZoneKind.CANVAS),
                                  device="pen", path=path))
        assert out[0].kind == "select"
        assert out[0].target["lasso"] == [[0.0, 0.0], [5.0, 0.0], [5.0, 5.0], [0.0, 0.0]]
        assert out[0].params["compound"] is False

    def test_erase_title_unbinds(self, engine):
        out = engine.on_gesture(g(GestureKind.ERASE, Y_TITLE,
                                  zones=(Zone(ZoneKind.Y_TITLE, "Production Budget"),)))
        assert out[0].kind == "unbind"
        assert out[0].target == {"channel": "y"}
        assert out[0].params["attribute"] == "Production Budget"

    def test_erase_marks_filters(self, engine):
        zones = (Zone(ZoneKind.MARK, "bar:Drama"), Zone(ZoneKind.MARK, "bar:Horror"))
        out = engine.on_gesture(g(GestureKind.ERASE, zones[0], zones=zones))
        assert out[0].kind == "filter"
        assert out[0].target == {"marks": ["bar:Drama", "bar:Horror"]}

    def test_erase_legend_items_filters(self, engine):
        zones = (Zone(ZoneKind.LEGEND_ITEM, "R"),)
        out = engine.on_gesture(g(GestureKind.ERASE, zones[0], zones=zones))
        assert out[0].target == {"legend_values": ["R"]}

    def test_pill_drop_on_y_appends(self, engine):
        out = engine.on_gesture(g(GestureKind.PILL_DROP, Zone(ZoneKind.PILL, "Worldwide Gross"),
                                  pill="Worldwide Gross", drop_zone=Y_TITLE))
        assert out[0].kind == "bind"
        assert out[0].target == {"channel": "y"}
        assert out[0].params["append"] is True

    def test_pill_drop_on_x_replaces(self, engine):
        out = engine.on_gesture(g(GestureKind.PILL_DROP, Zone(ZoneKind.PILL, "Worldwide Gross"),
                                  pill="Worldwide Gross", drop_zone=X_TITLE))
        assert out[0].params["append"] is False

    def test_input_error_passes_through(self, engine):
        out = engine.on_gesture(g(GestureKind.INPUT_ERROR, Zone(ZoneKind.PILL, "x"),
                                  device="pen", error="pen_in_panel"))
        assert out[0].kind == "input_error"
        assert out[0].params["code"] == "pen_in_panel"


class TestHandwriting:
    def test_write_without_hold_is_error(self, engine):
        requests, suggestions = engine.on_write_candidates(["budget"])
        assert requests[0].params["code"] == "write_without_target"
        assert suggestions == []

    def test_unique_exact_match_binds(self, engine):
        engine.on_gesture(g(GestureKind.POINT_START, X_TITLE))
        requests, suggestions = engine.on_write_candidates(["budget"])
        assert requests[0].kind == "bind"
        assert requests[0].target == {"channel": "x"}
        assert requests[0].params["attributes"] == ["Production Budget"]

    def test_ambiguous_text_returns_suggestions(self, engine):
        engine.on_gesture(g(GestureKind.POINT_START, X_TITLE))
        requests, suggestions = engine.on_write_candidates(["rating"])
        assert requests == []
        names = [n for n, _ in suggestions]
        assert "IMDB Rating" in names and "Content Rating" in names

    def test_fuzzy_text_returns_ranked_suggestions(self, engine):
        engine.on_gesture(g(GestureKind.POINT_START, X_TITLE))
        requests, suggestions = engine.on_write_candidates(["rotton tomatos"])
        assert requests == []
        assert suggestions[0][0] == "Rotten Tomatoes"
