"""Chart specification model: encodings, filters, sort, selection, and the
abstract view (marks/axes/legend) computed from them."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

from .dataset import (
    COUNT,
    MEAN,
    AggregateTable,
    Attribute,
    AttributeKind,
    Dataset,
    DatasetError,
    aggregate,
    bin_values,
)


class ChartType(str, Enum):
    HISTOGRAM = "histogram"
    BAR = "bar"
    GROUPED_BAR = "grouped_bar"
    STACKED_BAR = "stacked_bar"
    LINE = "line"
    SCATTER = "scatter"
    PARALLEL_COORDINATES = "parallel_coordinates"


SORTABLE_TYPES = frozenset(
    {ChartType.BAR, ChartType.GROUPED_BAR, ChartType.STACKED_BAR, ChartType.PARALLEL_COORDINATES}
)


class ValidationReason(str, Enum):
    COLOR_WITHOUT_AXES = "ColorWithoutAxes"
    CATEGORICAL_BOTH_AXES = "CategoricalBothAxes"
    DUPLICATE_BINDING = "DuplicateBinding"
    SORT_ON_UNSORTABLE_CHART = "SortOnUnsortableChart"
    CATEGORICAL_MEASURE = "CategoricalMeasure"
    UNKNOWN_ATTRIBUTE = "UnknownAttribute"
    BAD_TYPE_OVERRIDE = "BadTypeOverride"


@dataclass(frozen=True)
class Invalid:
    reason: ValidationReason


VALID = None  # validate() returns None when the spec is valid


# -- filters -----------------------------------------------------------------

@dataclass(frozen=True)
class CategoryFilter:
    attribute: str
    excluded: frozenset

    def admits(self, value) -> bool:
        return value not in self.excluded

    def to_dict(self) -> dict:
        return {
            "type": "category",
            "attribute": self.attribute,
            "excluded": sorted(self.excluded, key=str),
        }


@dataclass(frozen=True)
class RangeFilter:
    attribute: str
    lo: float | None = None
    hi: float | None = None
    lo_open: bool = False
    hi_open: bool = False
    keep: bool = False  # keep rows inside the interval, else remove them

    def contains(self, value: float) -> bool:
        if self.lo is not None:
            if value < self.lo or (self.lo_open and value == self.lo):
                return False
        if self.hi is not None:
            if value > self.hi or (self.hi_open and value == self.hi):
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "type": "range",
            "attribute": self.attribute,
            "lo": self.lo,
            "hi": self.hi,
            "lo_open": self.lo_open,
            "hi_open": self.hi_open,
            "keep": self.keep,
        }


@dataclass(frozen=True)
class IdFilter:
    ids: frozenset
    keep: bool = True

    def to_dict(self) -> dict:
        return {"type": "ids", "ids": sorted(self.ids), "keep": self.keep}


Filter = CategoryFilter | RangeFilter | IdFilter


def filter_from_dict(d: dict) -> Filter:
    if d["type"] == "category":
        return CategoryFilter(d["attribute"], frozenset(d["excluded"]))
    if d["type"] == "range":
        return RangeFilter(d["attribute"], d["lo"], d["hi"], d["lo_open"], d["hi_open"], d["keep"])
    if d["type"] == "ids":
        return IdFilter(frozenset(d["ids"]), d["keep"])
    raise ValueError(f"unknown filter type {d['type']!r}")


def row_passes(flt: Filter, dataset: Dataset, row_id: int) -> bool:
    if isinstance(flt, CategoryFilter):
        return flt.admits(dataset.value(row_id, flt.attribute))
    if isinstance(flt, RangeFilter):
        v = dataset.numeric(row_id, flt.attribute)
        if v is None:
            return not flt.keep  # null never matches the interval
        inside = flt.contains(v)
        return inside if flt.keep else not inside
    if isinstance(flt, IdFilter):
        inside = row_id in flt.ids
        return inside if flt.keep else not inside
    raise TypeError(flt)


def visible_rows(filters: tuple, dataset: Dataset) -> frozenset:
    """Rows passing every filter (conjunction). Unknown attributes raise."""
    for flt in filters:
        if isinstance(flt, (CategoryFilter, RangeFilter)):
            dataset.attribute(flt.attribute)
    out = []
    for rid in range(dataset.row_count):
        if all(row_passes(f, dataset, rid) for f in filters):
            out.append(rid)
    return frozenset(out)


# -- sort & selection --------------------------------------------------------

class SortDirection(str, Enum):
    ASCENDING = "ascending"
    DESCENDING = "descending"


@dataclass(frozen=True)
class SortState:
    by: str  # attribute name, or "count"
    direction: SortDirection
    axis: str = "y"  # which axis carried the gesture/command

    def to_dict(self) -> dict:
        return {"by": self.by, "direction": self.direction.value, "axis": self.axis}


@dataclass(frozen=True)
class Selection:
    ids: frozenset = frozenset()
    provenance: tuple = ()  # ("mark_tap" | "legend_tap" | "axis_range" | "lasso", ...)

    def to_dict(self) -> dict:
        return {"ids": sorted(self.ids), "provenance": list(self.provenance)}


EMPTY_SELECTION = Selection()


# -- spec --------------------------------------------------------------------

@dataclass(frozen=True)
class ChartSpec:
    x: str | None = None
    y: tuple = ()
    color: str | None = None
    aggregate_fn: str = MEAN
    type_override: ChartType | None = None
    sort: SortState | None = None
    filters: tuple = ()

    def with_(self, **kw) -> "ChartSpec":
        return replace(self, **kw)

    @property
    def bound_attributes(self) -> tuple:
        out = []
        if self.x:
            out.append(self.x)
        out.extend(self.y)
        if self.color:
            out.append(self.color)
        return tuple(out)

    def to_dict(self, dataset: Dataset | None = None) -> dict:
        ct = self.chart_type(dataset) if dataset is not None else None
        return {
            "x": self.x,
            "y": list(self.y),
            "color": self.color,
            "aggregate_fn": self.aggregate_fn,
            "chart_type": ct.value if isinstance(ct, ChartType) else None,
            "type_override": self.type_override.value if self.type_override else None,
            "sort": self.sort.to_dict() if self.sort else None,
            "filters": [f.to_dict() for f in self.filters],
        }

    def chart_type(self, dataset: Dataset):
        inferred = infer_chart_type_for(self, dataset)
        if self.type_override is not None and isinstance(inferred, ChartType):
            if _override_allowed(inferred, self.type_override):
                return self.type_override
        return inferred


def _override_allowed(inferred: ChartType, override: ChartType) -> bool:
    if override == ChartType.STACKED_BAR:
        return inferred in (ChartType.GROUPED_BAR, ChartType.STACKED_BAR)
    if override == ChartType.GROUPED_BAR:
        return inferred in (ChartType.GROUPED_BAR, ChartType.STACKED_BAR)
    return override == inferred


def _kind(dataset: Dataset, name: str) -> AttributeKind:
    return dataset.attribute(name).kind


def infer_chart_type(x_kind, y_kinds: list, color_kind=None):
    """Decision table from encoding kinds to chart type.

    Returns a ChartType, None for the empty view, or Invalid.
    """
    q, c, t = AttributeKind.QUANTITATIVE, AttributeKind.CATEGORICAL, AttributeKind.TEMPORAL
    if x_kind is None and not y_kinds:
        return None
    if x_kind == c and any(k == c for k in y_kinds):
        return Invalid(ValidationReason.CATEGORICAL_BOTH_AXES)
    if any(k == c for k in y_kinds):
        return Invalid(ValidationReason.CATEGORICAL_MEASURE)
    if x_kind is None:
        if len(y_kinds) == 1:
            return {q: ChartType.HISTOGRAM, c: ChartType.BAR, t: ChartType.LINE}[y_kinds[0]]
        return ChartType.PARALLEL_COORDINATES
    if not y_kinds:
        return {q: ChartType.HISTOGRAM, c: ChartType.BAR, t: ChartType.LINE}[x_kind]
    if x_kind == c:
        return ChartType.BAR if len(y_kinds) == 1 else ChartType.GROUPED_BAR
    if x_kind == t:
        return ChartType.LINE
    # quantitative x with quantitative y's
    return ChartType.SCATTER if len(y_kinds) == 1 else ChartType.PARALLEL_COORDINATES


def infer_chart_type_for(spec: ChartSpec, dataset: Dataset):
    x_kind = _kind(dataset, spec.x) if spec.x else None
    y_kinds = [_kind(dataset, n) for n in spec.y]
    color_kind = _kind(dataset, spec.color) if spec.color else None
    return infer_chart_type(x_kind, y_kinds, color_kind)


def univariate_summary(attribute: Attribute) -> ChartSpec:
    """One-attribute overview: histogram / bar of counts / line of counts."""
    spec = ChartSpec(x=attribute.name, aggregate_fn=COUNT)
    return spec


def validate(spec: ChartSpec, dataset: Dataset):
    """Return None when valid, else Invalid(reason)."""
    for name in spec.bound_attributes:
        if not dataset.has_attribute(name):
            return Invalid(ValidationReason.UNKNOWN_ATTRIBUTE)
    seen_y = set()
    for name in spec.y:
        key = name.casefold()
        if key in seen_y or (spec.x and key == spec.x.casefold()):
            return Invalid(ValidationReason.DUPLICATE_BINDING)
        seen_y.add(key)
    if spec.color and spec.x is None and not spec.y:
        return Invalid(ValidationReason.COLOR_WITHOUT_AXES)
    inferred = infer_chart_type_for(spec, dataset)
    if isinstance(inferred, Invalid):
        return inferred
    if spec.type_override is not None and isinstance(inferred, ChartType):
        if not _override_allowed(inferred, spec.type_override):
            return Invalid(ValidationReason.BAD_TYPE_OVERRIDE)
    if spec.sort is not None:
        ct = spec.chart_type(dataset)
        if not isinstance(ct, ChartType) or ct not in SORTABLE_TYPES:
            return Invalid(ValidationReason.SORT_ON_UNSORTABLE_CHART)
    return VALID


# -- view model --------------------------------------------------------------

@dataclass(frozen=True)
class Mark:
    id: str
    rows: tuple
    channels: dict
    selected: bool = False

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "rows": list(self.rows),
            "channels": self.channels,
            "selected": self.selected,
        }


@dataclass(frozen=True)
class Axis:
    id: str  # "x", "y", or "y0".."yN" for parallel axes
    attribute: str | None
    kind: str  # AttributeKind value or "count"
    domain: tuple  # category order, or (lo, hi) numeric window
    descending: bool = False

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "attribute": self.attribute,
            "kind": self.kind,
            "domain": list(self.domain),
            "descending": self.descending,
        }


@dataclass(frozen=True)
class ViewModel:
    chart_type: str | None
    marks: tuple
    axes: tuple
    legend: tuple  # ordered legend values
    legend_attribute: str | None
    visible_count: int

    def to_dict(self) -> dict:
        return {
            "chart_type": self.chart_type,
            "marks": [m.to_dict() for m in self.marks],
            "axes": [a.to_dict() for a in self.axes],
            "legend": list(self.legend),
            "legend_attribute": self.legend_attribute,
            "visible_count": self.visible_count,
        }

    def mark(self, mark_id: str) -> Mark:
        for m in self.marks:
            if m.id == mark_id:
                return m
        raise KeyError(mark_id)


EMPTY_VIEW = ViewModel(None, (), (), (), None, 0)


def _numeric_domain(values: list) -> tuple:
    vals = [v for v in values if v is not None]
    if not vals:
        return (0.0, 1.0)
    lo, hi = min(vals), max(vals)
    if lo == hi:
        return (float(lo), float(lo) + 1.0)
    return (float(lo), float(hi))


def _category_order(dataset: Dataset, attr: str, visible, spec: ChartSpec, measure_of: dict) -> list:
    cats = sorted(
        {dataset.value(r, attr) for r in visible if dataset.value(r, attr) is not None},
        key=lambda v: (not isinstance(v, (int, float)), str(v), v if isinstance(v, (int, float)) else 0),
    )
    if spec.sort is not None and measure_of:
        def key(cat):
            v = measure_of.get(cat)
            return (v is None, v if v is not None else 0.0)
        cats.sort(key=key, reverse=spec.sort.direction == SortDirection.DESCENDING)
    return cats


def compute_view(spec: ChartSpec, dataset: Dataset, selection: Selection = EMPTY_SELECTION,
                 viewport: dict | None = None) -> ViewModel:
    """Compute the abstract scene for a valid spec.

    `viewport` maps axis ids to (lo, hi) zoom windows on quantitative or
    temporal axes; absent entries use the data extent.
    """
    problem = validate(spec, dataset)
    if problem is not None:
        raise DatasetError(f"cannot compute view of invalid spec: {problem.reason.value}")
    ct = spec.chart_type(dataset)
    if ct is None:
        return EMPTY_VIEW
    visible = sorted(visible_rows(spec.filters, dataset))
    viewport = viewport or {}
    sel = selection.ids

    def is_selected(rows) -> bool:
        return bool(sel) and any(r in sel for r in rows)

    marks: list[Mark] = []
    axes: list[Axis] = []
    legend: list = []
    legend_attr = spec.color

    def axis_domain(axis_id: str, values: list) -> tuple:
        if axis_id in viewport:
            return tuple(viewport[axis_id])
        return _numeric_domain(values)

    if ct == ChartType.HISTOGRAM:
        attr = spec.x or spec.y[0]
        pairs = [(r, dataset.numeric(r, attr)) for r in visible]
        pairs = [(r, v) for r, v in pairs if v is not None]
        if pairs:
            bins = bin_values(pairs)
            for i, b in enumerate(bins):
                rows = tuple(sorted(b.member_ids))
                marks.append(Mark(
                    id=f"bin:{i}",
                    rows=rows,
                    channels={"x0": b.lo, "x1": b.hi, "count": b.count},
                    selected=is_selected(rows),
                ))
            axes.append(Axis("x", attr, _kind(dataset, attr).value,
                             axis_domain("x", [bins[0].lo, bins[-1].hi])))
            axes.append(Axis("y", None, "count", (0.0, float(max(b.count for b in bins)))))
        else:
            axes.append(Axis("x", attr, _kind(dataset, attr).value, axis_domain("x", [])))
            axes.append(Axis("y", None, "count", (0.0, 1.0)))

    elif ct in (ChartType.BAR, ChartType.GROUPED_BAR, ChartType.STACKED_BAR):
        cat_attr = spec.x
        measures = [(n, MEAN) for n in spec.y] if spec.y else []
        table = aggregate(dataset, visible, [cat_attr], measures if measures else [("", COUNT)])
        per_cat: dict = {}
        measure_by_cat: dict = {}
        sort_by = spec.sort.by if spec.sort else None
        for g in table.groups:
            cat = g.key[0][1]
            per_cat[cat] = g
            if sort_by == "count" or not measures:
                measure_by_cat[cat] = float(len(g.member_row_ids))
            else:
                wanted = sort_by if sort_by in [n for n, _ in measures] else measures[0][0]
                for name, fn, val in g.measures:
                    if fn == MEAN and name == wanted:
                        measure_by_cat[cat] = val
        order = _category_order(dataset, cat_attr, visible, spec, measure_by_cat)
        max_val = 0.0
        for cat in order:
            g = per_cat.get(cat)
            if g is None:
                continue
            rows = tuple(sorted(g.member_row_ids))
            if not measures:
                val = float(len(rows))
                marks.append(Mark(f"bar:{cat}", rows, {"category": cat, "value": val, "series": None},
                                  is_selected(rows)))
                max_val = max(max_val, val)
            else:
                for name, fn, val in g.measures:
                    if fn != MEAN:
                        continue
                    series_rows = tuple(r for r in rows if dataset.numeric(r, name) is not None)
                    v = val if val is not None else 0.0
                    marks.append(Mark(f"bar:{cat}/{name}", series_rows,
                                      {"category": cat, "value": v, "series": name},
                                      is_selected(series_rows)))
                    max_val = max(max_val, v)
        axes.append(Axis("x", cat_attr, _kind(dataset, cat_attr).value, tuple(order)))
        y_attr = spec.y[0] if len(spec.y) == 1 else None
        axes.append(Axis("y", y_attr, "count" if not measures else AttributeKind.QUANTITATIVE.value,
                         axis_domain("y", [0.0, max_val])))
        if spec.color:
            legend = [v for v in dataset.distinct_values(spec.color)
                      if any(dataset.value(r, spec.color) == v for r in visible)]
        elif measures and len(measures) > 1:
            legend = [n for n, _ in measures]
            legend_attr = None

    elif ct == ChartType.LINE:
        t_attr = spec.x
        series_attrs = list(spec.y) if spec.y else []
        if not series_attrs:
            table = aggregate(dataset, visible, [t_attr], [("", COUNT)])
            pts = []
            for g in table.groups:
                tv = g.key[0][1]
                if tv is None:
                    continue
                rows = tuple(sorted(g.member_row_ids))
                marks.append(Mark(f"pt:{tv}", rows, {"x": tv, "value": float(len(rows)), "series": None},
                                  is_selected(rows)))
                pts.append((tv, float(len(rows))))
            axes.append(Axis("x", t_attr, AttributeKind.TEMPORAL.value,
                             axis_domain("x", [p[0] for p in pts])))
            axes.append(Axis("y", None, "count", axis_domain("y", [0.0] + [p[1] for p in pts])))
        else:
            table = aggregate(dataset, visible, [t_attr], [(n, MEAN) for n in series_attrs])
            ys = []
            xs = []
            for g in table.groups:
                tv = g.key[0][1]
                if tv is None:
                    continue
                xs.append(tv)
                rows = tuple(sorted(g.member_row_ids))
                for name, fn, val in g.measures:
                    if val is None:
                        continue
                    marks.append(Mark(f"pt:{tv}/{name}", rows, {"x": tv, "value": val, "series": name},
                                      is_selected(rows)))
                    ys.append(val)
            axes.append(Axis("x", t_attr, AttributeKind.TEMPORAL.value, axis_domain("x", xs)))
            axes.append(Axis("y", series_attrs[0] if len(series_attrs) == 1 else None,
                             AttributeKind.QUANTITATIVE.value, axis_domain("y", [0.0] + ys)))
            if len(series_attrs) > 1 and not spec.color:
                legend = list(series_attrs)
                legend_attr = None
        if spec.color:
            legend = [v for v in dataset.distinct_values(spec.color)
                      if any(dataset.value(r, spec.color) == v for r in visible)]

    elif ct == ChartType.SCATTER:
        x_attr, y_attr = spec.x, spec.y[0]
        xs, ys = [], []
        for r in visible:
            xv = dataset.numeric(r, x_attr)
            yv = dataset.numeric(r, y_attr)
            if xv is None or yv is None:
                continue
            ch = {"x": xv, "y": yv}
            if spec.color:
                ch["color"] = dataset.value(r, spec.color)
            marks.append(Mark(f"pt:{r}", (r,), ch, r in sel))
            xs.append(xv)
            ys.append(yv)
        axes.append(Axis("x", x_attr, AttributeKind.QUANTITATIVE.value, axis_domain("x", xs)))
        axes.append(Axis("y", y_attr, AttributeKind.QUANTITATIVE.value, axis_domain("y", ys)))
        if spec.color:
            legend = [v for v in dataset.distinct_values(spec.color)
                      if any(dataset.value(r, spec.color) == v for r in visible)]

    elif ct == ChartType.PARALLEL_COORDINATES:
        attrs = ([spec.x] if spec.x else []) + list(spec.y)
        flipped = spec.sort.by if spec.sort else None
        for i, name in enumerate(attrs):
            vals = [dataset.numeric(r, name) for r in visible]
            desc = (flipped == name and spec.sort is not None
                    and spec.sort.direction == SortDirection.DESCENDING)
            axes.append(Axis(f"y{i}", name, _kind(dataset, name).value,
                             axis_domain(f"y{i}", [v for v in vals if v is not None]),
                             descending=desc))
        for r in visible:
            values = {name: dataset.numeric(r, name) for name in attrs}
            if any(v is None for v in values.values()):
                continue
            ch = {"values": values}
            if spec.color:
                ch["color"] = dataset.value(r, spec.color)
            marks.append(Mark(f"line:{r}", (r,), ch, r in sel))
        if spec.color:
            legend = [v for v in dataset.distinct_values(spec.color)
                      if any(dataset.value(r, spec.color) == v for r in visible)]

    return ViewModel(
        chart_type=ct.value,
        marks=tuple(marks),
        axes=tuple(axes),
        legend=tuple(legend),
        legend_attribute=legend_attr if legend else None,
        visible_count=len(visible),
    )
