"""Apply operation requests to application state, producing exactly one
Success/Void/Error feedback message per request, plus affordance hints."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

from .chartspec import (
    CategoryFilter,
    ChartSpec,
    ChartType,
    EMPTY_SELECTION,
    IdFilter,
    Invalid,
    RangeFilter,
    SORTABLE_TYPES,
    Selection,
    SortDirection,
    SortState,
    ValidationReason,
    ViewModel,
    compute_view,
    infer_chart_type_for,
    validate,
    visible_rows,
)
from .dataset import AttributeKind, Dataset
from .fusion import FusionContext, OperationRequest

DETAIL_RECORD_CAP = 50


class FeedbackKind(str, Enum):
    SUCCESS = "success"
    VOID = "void"
    ERROR = "error"


@dataclass(frozen=True)
class FeedbackMessage:
    kind: FeedbackKind
    text: str
    code: str = ""

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "text": self.text, "code": self.code}


@dataclass(frozen=True)
class AffordanceHints:
    highlighted_pills: tuple = ()
    disabled_pills: tuple = ()  # ((pill, reason), ...)
    ink_pad_visible: bool = False
    microphone_active: bool = False

    def to_dict(self) -> dict:
        return {
            "highlighted_pills": list(self.highlighted_pills),
            "disabled_pills": [list(p) for p in self.disabled_pills],
            "ink_pad_visible": self.ink_pad_visible,
            "microphone_active": self.microphone_active,
        }


@dataclass(frozen=True)
class AppState:
    dataset: Dataset
    spec: ChartSpec = field(default_factory=ChartSpec)
    selection: Selection = EMPTY_SELECTION
    viewport: dict = field(default_factory=dict)  # axis id -> (lo, hi)
    revision: int = 0

    def view(self) -> ViewModel:
        return compute_view(self.spec, self.dataset, self.selection, self.viewport)

    def snapshot(self) -> dict:
        return {
            "spec": self.spec.to_dict(self.dataset),
            "selection": self.selection.to_dict(),
            "viewport": {k: list(v) for k, v in sorted(self.viewport.items())},
            "revision": self.revision,
            "view": self.view().to_dict(),
            "dataset_hash": self.dataset.source_hash,
        }


def _ok(state: AppState, text: str, code: str = "success", detail=None):
    return replace(state, revision=state.revision + 1), FeedbackMessage(FeedbackKind.SUCCESS, text, code), detail


def _void(state: AppState, text: str, code: str = "void", detail=None):
    return state, FeedbackMessage(FeedbackKind.VOID, text, code), detail


def _err(state: AppState, text: str, code: str):
    return state, FeedbackMessage(FeedbackKind.ERROR, text, code), None


_UNABLE = "Unable to process that command. Please try a different one"

_ERROR_TEXTS = {
    "pen_in_panel": "The pen cannot be used in the panel area. Please use touch.",
    "drop_outside_target": "Drop the attribute on an axis or the color legend.",
    "parse_incomplete": _UNABLE,
    "parse_unrecognized": _UNABLE,
    "parse_ambiguous": _UNABLE,
    "write_without_target": "Point on an axis or legend title before writing.",
}

_INVALID_TEXTS = {
    ValidationReason.COLOR_WITHOUT_AXES: "Map an attribute to the X or Y axis before coloring.",
    ValidationReason.CATEGORICAL_BOTH_AXES: "Categorical attributes cannot be shown on both axes.",
    ValidationReason.DUPLICATE_BINDING: "That attribute is already mapped to this chart.",
    ValidationReason.SORT_ON_UNSORTABLE_CHART: "Sorting is not available for this chart.",
    ValidationReason.CATEGORICAL_MEASURE: "Only numerical attributes can be measured on the Y-axis.",
    ValidationReason.UNKNOWN_ATTRIBUTE: "That attribute is not in the dataset.",
    ValidationReason.BAD_TYPE_OVERRIDE: "That chart type does not fit the current mappings.",
}


def _invalid(state: AppState, problem: Invalid):
    return _err(state, _INVALID_TEXTS[problem.reason], f"invalid_operation:{problem.reason.value}")


def apply(state: AppState, request: OperationRequest):
    """Dispatch one request. Returns (state', FeedbackMessage, detail|None)."""
    handler = _HANDLERS.get(request.kind)
    if handler is None:
        return _err(state, "That interaction is not supported here.", "unsupported_interaction")
    return handler(state, request)


# -- bind/unbind -------------------------------------------------------------

def _resolve_attr(dataset: Dataset, name: str):
    if dataset.has_attribute(name):
        return dataset.attribute(name).name
    return None


def _finish_spec_change(state: AppState, new_spec: ChartSpec, text: str, code: str = "success"):
    new_type = new_spec.chart_type(state.dataset)
    if new_spec.sort is not None and (
            not isinstance(new_type, ChartType) or new_type not in SORTABLE_TYPES):
        # carried-over sort state is not user intent; drop it, don't reject
        new_spec = new_spec.with_(sort=None)
    problem = validate(new_spec, state.dataset)
    if problem is not None:
        return _invalid(state, problem)
    old_type = state.spec.chart_type(state.dataset)
    selection = state.selection
    viewport = state.viewport
    if old_type != new_type:
        # mark identity changes with the chart type
        selection = EMPTY_SELECTION
        viewport = {}
        new_spec = _drop_stale_sort(new_spec, state.dataset)
    if new_spec == state.spec and selection == state.selection and viewport == state.viewport:
        return _void(state, "That is already the current mapping.")
    new_state = replace(state, spec=new_spec, selection=selection, viewport=viewport,
                        revision=state.revision + 1)
    return new_state, FeedbackMessage(FeedbackKind.SUCCESS, text, code), None


def _drop_stale_sort(spec: ChartSpec, dataset: Dataset) -> ChartSpec:
    if spec.sort is None or spec.sort.by == "count":
        return spec
    bound = {n.casefold() for n in spec.bound_attributes}
    if spec.sort.by.casefold() not in bound:
        return spec.with_(sort=None)
    return spec


def _bind(state: AppState, request: OperationRequest):
    channel = request.target.get("channel")
    names = [_resolve_attr(state.dataset, a) for a in request.params.get("attributes", [])]
    if any(n is None for n in names) or not names:
        return _invalid(state, Invalid(ValidationReason.UNKNOWN_ATTRIBUTE))
    spec = state.spec
    if channel == "x":
        if spec.x == names[0]:
            return _void(state, f"{names[0]} is already on the X-axis.")
        new_spec = spec.with_(x=names[0])
        text = f"Mapped {names[0]} to the X-axis"
    elif channel == "color":
        if spec.color == names[0]:
            return _void(state, f"Already coloring by {names[0]}.")
        new_spec = spec.with_(color=names[0])
        text = f"Coloring by {names[0]}"
    elif channel == "y":
        if request.params.get("append"):
            added = [n for n in names if n not in spec.y]
            if not added:
                return _void(state, "Those attributes are already on the Y-axis.")
            new_spec = spec.with_(y=spec.y + tuple(added))
            text = f"Added {', '.join(added)} to the Y-axis"
        else:
            if tuple(names) == spec.y:
                return _void(state, "Those attributes are already on the Y-axis.")
            new_spec = spec.with_(y=tuple(names))
            text = f"Mapped {', '.join(names)} to the Y-axis"
    else:
        return _err(state, "That interaction is not supported here.", "unsupported_interaction")
    new_spec = new_spec.with_(type_override=None)
    return _finish_spec_change(state, new_spec, text)


def _unbind(state: AppState, request: OperationRequest):
    channel = request.target.get("channel")
    name = request.params.get("attribute")
    spec = state.spec
    if channel == "x":
        if spec.x is None or (name and spec.x.casefold() != name.casefold()):
            return _void(state, "Nothing to remove from the X-axis.")
        removed, new_spec = spec.x, spec.with_(x=None)
        text = f"Removed {removed} from the X-axis"
    elif channel == "color":
        if spec.color is None or (name and spec.color.casefold() != name.casefold()):
            return _void(state, "Nothing to remove from the color legend.")
        removed, new_spec = spec.color, spec.with_(color=None)
        text = f"Removed {removed} from the color legend"
    elif channel == "y":
        if name:
            keep = tuple(n for n in spec.y if n.casefold() != name.casefold())
            if keep == spec.y:
                return _void(state, "Nothing to remove from the Y-axis.")
            removed = next(n for n in spec.y if n.casefold() == name.casefold())
            new_spec = spec.with_(y=keep)
        elif spec.y:
            removed, new_spec = ", ".join(spec.y), spec.with_(y=())
        else:
            return _void(state, "Nothing to remove from the Y-axis.")
        text = f"Removed {removed} from the Y-axis"
    else:
        return _err(state, "That interaction is not supported here.", "unsupported_interaction")
    if new_spec.x is None and not new_spec.y and new_spec.color is not None:
        new_spec = new_spec.with_(color=None)  # unbinding the last axis drops color too
    new_spec = new_spec.with_(type_override=None)
    new_spec = _drop_stale_sort(new_spec, state.dataset)
    return _finish_spec_change(state, new_spec, text)


# -- sort --------------------------------------------------------------------

def _sort(state: AppState, request: OperationRequest):
    ct = state.spec.chart_type(state.dataset)
    if not isinstance(ct, ChartType) or ct not in SORTABLE_TYPES:
        return _invalid(state, Invalid(ValidationReason.SORT_ON_UNSORTABLE_CHART))
    direction = SortDirection(request.params.get("direction", "ascending"))
    axis = request.target.get("axis", "y")
    index = request.target.get("index")
    by = request.params.get("by")

    if ct == ChartType.PARALLEL_COORDINATES:
        attrs = ([state.spec.x] if state.spec.x else []) + list(state.spec.y)
        if by is None:
            if index is None or not (0 <= index < len(attrs)):
                return _err(state, "Swipe on one of the parallel axes to flip it.",
                            "unsupported_interaction")
            by = attrs[index]
        else:
            by = _resolve_attr(state.dataset, by) or by
            if by not in attrs:
                return _invalid(state, Invalid(ValidationReason.UNKNOWN_ATTRIBUTE))
        new_sort = SortState(by=by, direction=direction, axis="y")
        if state.spec.sort == new_sort:
            return _void(state, f"The {by} axis is already flipped that way.")
        new_spec = state.spec.with_(sort=new_sort)
        return _ok(replace(state, spec=new_spec), f"Flipped the {by} axis")

    if by is None:
        if axis == "x":
            by = state.spec.x
        elif not state.spec.y:
            by = "count"
        elif len(state.spec.y) == 1:
            by = state.spec.y[0]
        else:
            return _err(state, "Two attributes are on the Y-axis; say which one to sort by.",
                        "ambiguous_sort")
    elif by != "count":
        resolved = _resolve_attr(state.dataset, by)
        if resolved is None:
            return _invalid(state, Invalid(ValidationReason.UNKNOWN_ATTRIBUTE))
        by = resolved
    new_sort = SortState(by=by, direction=direction, axis=axis)
    if state.spec.sort == new_sort:
        return _void(
            state,
            f"Bars are already sorted in {direction.value} order by {by}",
            "void:already_sorted")
    new_spec = state.spec.with_(sort=new_sort)
    return _ok(replace(state, spec=new_spec),
               f"Sorted bars by {by} in {direction.value} order")


# -- filters -----------------------------------------------------------------

_COMPARATOR_RANGES = {
    "<": lambda b: dict(hi=b[0], hi_open=True),
    "<=": lambda b: dict(hi=b[0]),
    ">": lambda b: dict(lo=b[0], lo_open=True),
    ">=": lambda b: dict(lo=b[0]),
    "between": lambda b: dict(lo=min(b[0], b[1]), hi=max(b[0], b[1])),
}


def _append_filter(state: AppState, flt, text: str, clear_selection: bool = False):
    old_visible = visible_rows(state.spec.filters, state.dataset)
    new_filters = state.spec.filters + (flt,)
    new_visible = visible_rows(new_filters, state.dataset)
    if new_visible == old_visible:
        return _void(state, "No points meet that filtering criteria", "void:no_points")
    new_spec = state.spec.with_(filters=new_filters)
    selection = EMPTY_SELECTION if clear_selection else Selection(
        ids=state.selection.ids & new_visible, provenance=state.selection.provenance)
    return _ok(replace(state, spec=new_spec, selection=selection), text)


def _match_values(dataset: Dataset, attr: str, wanted: list) -> list:
    domain = dataset.distinct_values(attr)
    folded = {str(v).casefold(): v for v in domain}
    out = []
    for w in wanted:
        hit = folded.get(str(w).casefold())
        if hit is not None:
            out.append(hit)
    return out


def _filter(state: AppState, request: OperationRequest):
    target = request.target
    polarity = request.params.get("polarity", "remove")

    if "reference" in target:
        if not state.selection.ids:
            return _void(state, "Nothing is selected.", "void:empty_selection")
        ref = target["reference"]
        keep = (ref == "these") == (polarity == "keep")
        flt = IdFilter(ids=state.selection.ids, keep=keep)
        text = ("Keeping only the selected points" if keep
                else "Removed the selected points")
        return _append_filter(state, flt, text, clear_selection=True)

    if "range" in target:
        spec = target["range"]
        attr = _resolve_attr(state.dataset, spec["attribute"])
        if attr is None:
            return _invalid(state, Invalid(ValidationReason.UNKNOWN_ATTRIBUTE))
        if state.dataset.attribute(attr).kind == AttributeKind.CATEGORICAL:
            return _err(state, f"{attr} has no numeric range to filter on.",
                        "invalid_operation:CategoricalRange")
        maker = _COMPARATOR_RANGES.get(spec["comparator"])
        if maker is None or not spec.get("bounds"):
            return _err(state, _UNABLE, "parse_incomplete")
        flt = RangeFilter(attribute=attr, keep=polarity == "keep", **maker(spec["bounds"]))
        verb = "Keeping only" if polarity == "keep" else "Removed"
        text = f"{verb} points with {attr} {spec['comparator']} {spec['bounds'][0]:g}"
        if spec["comparator"] == "between":
            text = f"{verb} points with {attr} between {spec['bounds'][0]:g} and {spec['bounds'][1]:g}"
        return _append_filter(state, flt, text)

    if "categories" in target:
        spec = target["categories"]
        attr = _resolve_attr(state.dataset, spec["attribute"])
        if attr is None:
            return _invalid(state, Invalid(ValidationReason.UNKNOWN_ATTRIBUTE))
        values = _match_values(state.dataset, attr, spec.get("values", []))
        if not values:
            return _void(state, "No points meet that filtering criteria", "void:no_points")
        domain = set(state.dataset.distinct_values(attr))
        mentioned = set(values)
        remove_mentioned = (request.params.get("except_values", False) == (polarity == "keep"))
        excluded = mentioned if remove_mentioned else domain - mentioned
        flt = CategoryFilter(attribute=attr, excluded=frozenset(excluded))
        shown = ", ".join(str(v) for v in sorted(excluded, key=str)[:4])
        text = f"Removed {attr}: {shown}" + (" …" if len(excluded) > 4 else "")
        return _append_filter(state, flt, text)

    if "marks" in target or "legend_values" in target:
        return _filter_marks(state, request)

    return _err(state, _UNABLE, "parse_incomplete")


def _filter_marks(state: AppState, request: OperationRequest):
    view = state.view()
    if "legend_values" in request.target:
        values = request.target["legend_values"]
        if view.legend_attribute is None:
            # series legend entries are Y-axis attributes: erasing one unbinds it
            reqs = [n for n in values if any(n == y for y in state.spec.y)]
            if not reqs:
                return _void(state, "Nothing to remove.", "void:no_points")
            return _unbind(state, OperationRequest(
                "unbind", target={"channel": "y"}, params={"attribute": reqs[0]}))
        flt = CategoryFilter(attribute=view.legend_attribute,
                             excluded=frozenset(_match_values(state.dataset, view.legend_attribute, values)))
        if not flt.excluded:
            return _void(state, "Nothing to remove.", "void:no_points")
        shown = ", ".join(str(v) for v in sorted(flt.excluded, key=str))
        return _append_filter(state, flt, f"Removed {view.legend_attribute}: {shown}")

    mark_ids = request.target["marks"]
    ct = state.spec.chart_type(state.dataset)
    categories, row_ids, ranges = [], set(), []
    for mid in mark_ids:
        try:
            mark = view.mark(mid)
        except KeyError:
            continue
        ch = mark.channels
        if ct in (ChartType.BAR, ChartType.GROUPED_BAR, ChartType.STACKED_BAR):
            if ch.get("category") not in categories:
                categories.append(ch["category"])
        elif ct == ChartType.LINE and "x" in ch:
            if ch["x"] not in categories:
                categories.append(ch["x"])
        elif ct == ChartType.HISTOGRAM:
            ranges.append((ch["x0"], ch["x1"]))
        else:
            row_ids.update(mark.rows)
    if categories and ct == ChartType.LINE:
        flt = CategoryFilter(attribute=state.spec.x, excluded=frozenset(categories))
        return _append_filter(state, flt, f"Removed {state.spec.x}: "
                              + ", ".join(str(c) for c in categories))
    if categories:
        flt = CategoryFilter(attribute=state.spec.x, excluded=frozenset(categories))
        return _append_filter(state, flt, "Removed " + ", ".join(str(c) for c in sorted(categories, key=str)))
    if ranges:
        lo = min(r[0] for r in ranges)
        hi = max(r[1] for r in ranges)
        flt = RangeFilter(attribute=state.spec.x or state.spec.y[0],
                          lo=lo, hi=hi, hi_open=True, keep=False)
        return _append_filter(state, flt, f"Removed points between {lo:g} and {hi:g}")
    if row_ids:
        flt = IdFilter(ids=frozenset(row_ids), keep=False)
        return _append_filter(state, flt, f"Removed {len(row_ids)} points")
    return _void(state, "Nothing to remove.", "void:no_points")


# -- selection ---------------------------------------------------------------

def _point_in_polygon(x: float, y: float, polygon: list) -> bool:
    """Even-odd rule."""
    inside = False
    n = len(polygon)
    for i in range(n):
        x1, y1 = polygon[i]
        x2, y2 = polygon[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            xin = (x2 - x1) * (y - y1) / (y2 - y1) + x1
            if x < xin:
                inside = not inside
    return inside


def _axis_attribute(state: AppState, axis: str, index):
    spec = state.spec
    ct = spec.chart_type(state.dataset)
    if ct == ChartType.PARALLEL_COORDINATES:
        attrs = ([spec.x] if spec.x else []) + list(spec.y)
        if index is not None and 0 <= index < len(attrs):
            return attrs[index]
        return None
    if axis == "x":
        return spec.x
    return spec.y[0] if spec.y else None


def _select(state: AppState, request: OperationRequest):
    view = state.view()
    if view.chart_type is None:
        return _err(state, "Create a chart before selecting.", "invalid_operation:EmptyView")
    target = request.target
    compound = bool(request.params.get("compound"))
    visible = visible_rows(state.spec.filters, state.dataset)
    ids: set = set()
    provenance = state.selection.provenance

    if "marks" in target:
        for mid in target["marks"]:
            try:
                ids.update(view.mark(mid).rows)
            except KeyError:
                pass
        act = "mark_tap"
    elif "legend_value" in target:
        if view.legend_attribute is None:
            return _void(state, "That legend entry cannot be selected.", "void:series_legend")
        attr = view.legend_attribute
        ids = {r for r in visible
               if str(state.dataset.value(r, attr)).casefold() == str(target["legend_value"]).casefold()}
        act = "legend_tap"
    elif "axis_range" in target:
        rng = target["axis_range"]
        attr = _axis_attribute(state, rng.get("axis", "x"), rng.get("index"))
        if attr is None or state.dataset.attribute(attr).kind == AttributeKind.CATEGORICAL:
            return _void(state, "That axis has no value range to select.", "void:no_range")
        lo, hi = rng["lo"], rng["hi"]
        ids = {r for r in visible
               if (v := state.dataset.numeric(r, attr)) is not None and lo <= v <= hi}
        act = "axis_range"
    elif "lasso" in target:
        polygon = [tuple(p) for p in target["lasso"]]
        if len({p for p in polygon}) < 3:
            return _void(state, "Draw a larger lasso to select points.", "void:tiny_lasso")
        for mark in view.marks:
            ch = mark.channels
            if isinstance(ch.get("x"), (int, float)) and isinstance(ch.get("y"), (int, float)):
                if _point_in_polygon(ch["x"], ch["y"], polygon):
                    ids.update(mark.rows)
        act = "lasso"
    else:
        return _err(state, "That interaction is not supported here.", "unsupported_interaction")

    ids &= visible
    new_ids = (state.selection.ids | ids) if compound else frozenset(ids)
    new_sel = Selection(ids=frozenset(new_ids), provenance=provenance + (act,))
    if new_sel.ids == state.selection.ids:
        return _void(state, f"Selected {len(new_sel.ids)} points", "void:selection_unchanged")
    return _ok(replace(state, selection=new_sel), f"Selected {len(new_sel.ids)} points")


def _clear_selection(state: AppState, request: OperationRequest):
    if not state.selection.ids:
        return _void(state, "Nothing is selected.", "void:empty_selection")
    return _ok(replace(state, selection=EMPTY_SELECTION), "Cleared the selection")


# -- details -----------------------------------------------------------------

def _record(dataset: Dataset, row_id: int) -> dict:
    return {"row_id": row_id, **{a.name: dataset.rows[row_id].get(a.name) for a in dataset.attributes}}


def _details(state: AppState, request: OperationRequest):
    view = state.view()
    if view.chart_type is None:
        return _err(state, "Create a chart before asking for details.",
                    "invalid_operation:EmptyView")
    if "mark" in request.target:
        try:
            mark = view.mark(request.target["mark"])
        except KeyError:
            return _void(state, "No mark there.", "void:no_mark")
        records = [_record(state.dataset, r) for r in mark.rows[:DETAIL_RECORD_CAP]]
        detail = {"kind": "mark", "mark": mark.id, "records": records,
                  "truncated": len(mark.rows) > DETAIL_RECORD_CAP}
        return state, FeedbackMessage(FeedbackKind.SUCCESS, f"Showing details for {len(mark.rows)} points",
                                      "success:details"), detail
    ruler = request.target.get("ruler", {})
    value = request.params.get("value")
    axis_id = ruler.get("axis", "y")
    axis = next((a for a in view.axes if a.id == axis_id or (axis_id == "y" and a.id.startswith("y"))), None)
    if axis is None or value is None:
        return _void(state, "No value there.", "void:no_ruler")
    if axis.kind == AttributeKind.CATEGORICAL.value:
        return _void(state, "That axis has no value ruler.", "void:categorical_ruler")
    value = float(value)
    hits = []
    ct = view.chart_type
    for mark in view.marks:
        ch = mark.channels
        if "value" in ch and ch["value"] is not None:  # bars and line points
            if axis_id == "y" and ch["value"] >= value:
                hits.append(mark.id)
        elif "x" in ch and "y" in ch:  # scatter points within a tolerance band
            coord = ch["x"] if axis_id == "x" else ch["y"]
            lo, hi = axis.domain
            tol = (hi - lo) * 0.01
            if abs(coord - value) <= tol:
                hits.append(mark.id)
    detail = {"kind": "ruler", "axis": axis_id, "value": value, "marks": hits}
    return state, FeedbackMessage(FeedbackKind.SUCCESS, f"Value {value:g}", "success:details"), detail


# -- zoom & pan --------------------------------------------------------------

def _numeric_axes(state: AppState, view: ViewModel) -> list:
    return [a for a in view.axes
            if a.kind in (AttributeKind.QUANTITATIVE.value, AttributeKind.TEMPORAL.value, "count")
            and len(a.domain) == 2 and a.attribute is not None]


def _data_extent(state: AppState, attr: str) -> tuple:
    vals = [state.dataset.numeric(r, attr) for r in range(state.dataset.row_count)]
    vals = [v for v in vals if v is not None]
    if not vals:
        return (0.0, 1.0)
    lo, hi = min(vals), max(vals)
    return (float(lo), float(hi) if hi > lo else float(lo) + 1.0)


def _zoom(state: AppState, request: OperationRequest):
    scale = float(request.params.get("scale", 1.0))
    view = state.view()
    axes = _numeric_axes(state, view)
    if not axes:
        return _void(state, "This chart cannot be zoomed.", "void:no_zoom_axes")
    if scale == 1.0:
        return _void(state, "View unchanged.", "void:identity")
    center = request.params.get("center")
    new_viewport = dict(state.viewport)
    for i, axis in enumerate(axes[:2]):
        extent = _data_extent(state, axis.attribute)
        lo, hi = state.viewport.get(axis.id, extent)
        c = center[i] if center and i < len(center) and center[i] is not None else (lo + hi) / 2
        span = (hi - lo) / scale
        span = min(span, extent[1] - extent[0])
        new_lo = c - (c - lo) / scale
        new_lo = min(max(new_lo, extent[0]), extent[1] - span)
        new_viewport[axis.id] = (new_lo, new_lo + span)
    if all(abs(new_viewport[a.id][0] - state.viewport.get(a.id, _data_extent(state, a.attribute))[0]) < 1e-12
           and abs(new_viewport[a.id][1] - state.viewport.get(a.id, _data_extent(state, a.attribute))[1]) < 1e-12
           for a in axes[:2]):
        return _void(state, "View unchanged.", "void:identity")
    for a in axes[:2]:
        extent = _data_extent(state, a.attribute)
        if abs(new_viewport[a.id][0] - extent[0]) < 1e-12 and abs(new_viewport[a.id][1] - extent[1]) < 1e-12:
            new_viewport.pop(a.id, None)
    return _ok(replace(state, viewport=new_viewport), "Zoomed the view")


def _pan(state: AppState, request: OperationRequest):
    delta = request.params.get("delta") or []
    view = state.view()
    axes = _numeric_axes(state, view)
    if not axes:
        return _void(state, "This chart cannot be panned.", "void:no_zoom_axes")
    if not any(delta):
        return _void(state, "View unchanged.", "void:identity")
    new_viewport = dict(state.viewport)
    changed = False
    for i, axis in enumerate(axes[:2]):
        extent = _data_extent(state, axis.attribute)
        lo, hi = state.viewport.get(axis.id, extent)
        span = hi - lo
        d = -(delta[i] if i < len(delta) else 0.0)  # content follows the finger
        new_lo = min(max(lo + d, extent[0]), extent[1] - span)
        if abs(new_lo - lo) > 1e-12:
            changed = True
        if abs(new_lo - extent[0]) < 1e-12 and abs(span - (extent[1] - extent[0])) < 1e-12:
            new_viewport.pop(axis.id, None)
        else:
            new_viewport[axis.id] = (new_lo, new_lo + span)
    if not changed:
        return _void(state, "View unchanged.", "void:identity")
    return _ok(replace(state, viewport=new_viewport), "Panned the view")


# -- chart type --------------------------------------------------------------

def _chart_type(state: AppState, request: OperationRequest):
    wanted = ChartType(request.params["chart_type"])
    current = state.spec.chart_type(state.dataset)
    if current == wanted:
        return _void(state, f"Already showing a {wanted.value.replace('_', ' ')}.")
    inferred = infer_chart_type_for(state.spec, state.dataset)
    if inferred == wanted:
        return _finish_spec_change(state, state.spec.with_(type_override=None),
                                   f"Switched to a {wanted.value.replace('_', ' ')}")
    new_spec = state.spec.with_(type_override=wanted)
    problem = validate(new_spec, state.dataset)
    if problem is not None:
        return _invalid(state, problem)
    return _finish_spec_change(state, new_spec,
                               f"Switched to a {wanted.value.replace('_', ' ')}")


# -- errors and voids from fusion -------------------------------------------

def _input_error(state: AppState, request: OperationRequest):
    code = request.params.get("code", "input_error")
    if code == "transcript_while_idle":
        return _void(state, "Hold the microphone button while speaking.", code)
    text = _ERROR_TEXTS.get(code, _UNABLE)
    return _err(state, text, code)


def _void_request(state: AppState, request: OperationRequest):
    return _void(state, "Nothing to do.", request.params.get("code", "void"))


def _unsupported(state: AppState, request: OperationRequest):
    return _err(state, "That interaction is not supported here.", "unsupported_interaction")


_HANDLERS = {
    "bind": _bind,
    "unbind": _unbind,
    "sort": _sort,
    "filter": _filter,
    "select": _select,
    "clear_selection": _clear_selection,
    "details": _details,
    "zoom": _zoom,
    "pan": _pan,
    "chart_type": _chart_type,
    "input_error": _input_error,
    "void": _void_request,
    "unsupported": _unsupported,
}


# -- affordances -------------------------------------------------------------

def affordances(state: AppState, ctx: FusionContext) -> AffordanceHints:
    title = ctx.title_hold
    if title is None:
        return AffordanceHints(microphone_active=ctx.recording)
    channel = {"x_title": "x", "y_title": "y", "legend_title": "color"}[title.kind.value]
    highlighted, disabled = [], []
    for attr in state.dataset.attributes:
        spec = state.spec
        if channel == "x":
            candidate = spec.with_(x=attr.name)
            duplicate = spec.x == attr.name
        elif channel == "color":
            candidate = spec.with_(color=attr.name)
            duplicate = spec.color == attr.name
        else:
            duplicate = attr.name in spec.y
            candidate = spec.with_(y=spec.y + (attr.name,)) if not duplicate else spec
        if duplicate:
            disabled.append((attr.name, "already_bound"))
            continue
        problem = validate(candidate, state.dataset)
        if problem is None:
            highlighted.append(attr.name)
        else:
            disabled.append((attr.name, problem.reason.value))
    return AffordanceHints(
        highlighted_pills=tuple(highlighted),
        disabled_pills=tuple(disabled),
        ink_pad_visible=True,
        microphone_active=ctx.recording,
    )
