"""Tabular dataset loading, attribute typing, aggregation, and binning."""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass, field
from enum import Enum


class AttributeKind(str, Enum):
    QUANTITATIVE = "quantitative"
    CATEGORICAL = "categorical"
    TEMPORAL = "temporal"


@dataclass(frozen=True)
class Attribute:
    name: str
    kind: AttributeKind


class DatasetError(Exception):
    """Raised for malformed sources or bad queries against a dataset."""


_ISO_DATE = re.compile(r"^\d{4}-\d{2}-\d{2}$")
_YEAR_MIN, _YEAR_MAX = 1800, 2200


def _as_number(value):
    if isinstance(value, bool):
        return None
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(value.replace(",", ""))
        except ValueError:
            return None
    return None


def _is_year(value) -> bool:
    num = _as_number(value)
    if num is None or num != int(num):
        return False
    return _YEAR_MIN <= int(num) <= _YEAR_MAX and len(str(int(num))) == 4


def infer_attribute_kind(values: list) -> AttributeKind:
    """Infer the kind of a column from its non-null values.

    Temporal wins when every non-null value is a 4-digit year in
    [1800, 2200] or an ISO date; otherwise quantitative when every value
    is numeric; otherwise categorical. All-null columns fall back to
    categorical.
    """
    non_null = [v for v in values if v is not None and v != ""]
    if not non_null:
        return AttributeKind.CATEGORICAL
    if all(_is_year(v) or (isinstance(v, str) and _ISO_DATE.match(v)) for v in non_null):
        return AttributeKind.TEMPORAL
    if all(_as_number(v) is not None for v in non_null):
        return AttributeKind.QUANTITATIVE
    return AttributeKind.CATEGORICAL


@dataclass
class Dataset:
    """Immutable-after-load table: ordered attributes plus row records.

    Row ids are dense 0..n-1 and stable for the lifetime of the dataset.
    """

    attributes: list[Attribute]
    rows: list[dict]
    source_hash: str = ""
    _by_name: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._by_name = {a.name.casefold(): a for a in self.attributes}

    @property
    def row_count(self) -> int:
        return len(self.rows)

    @property
    def row_ids(self) -> frozenset:
        return frozenset(range(len(self.rows)))

    def attribute(self, name: str) -> Attribute:
        attr = self._by_name.get(name.casefold())
        if attr is None:
            raise DatasetError(f"unknown attribute: {name!r}")
        return attr

    def has_attribute(self, name: str) -> bool:
        return name.casefold() in self._by_name

    def value(self, row_id: int, name: str):
        return self.rows[row_id].get(self.attribute(name).name)

    def numeric(self, row_id: int, name: str):
        return _as_number(self.value(row_id, name))

    def distinct_values(self, name: str) -> list:
        seen, out = set(), []
        for row in self.rows:
            v = row.get(self.attribute(name).name)
            if v is not None and v not in seen:
                seen.add(v)
                out.append(v)
        return sorted(out, key=lambda v: (not isinstance(v, (int, float)), str(v), v if isinstance(v, (int, float)) else 0))


def _coerce_cell(raw: str, kind: AttributeKind):
    if raw is None or raw == "":
        return None
    if kind in (AttributeKind.QUANTITATIVE, AttributeKind.TEMPORAL):
        num = _as_number(raw)
        if num is not None:
            return int(num) if num == int(num) else num
    return raw


def load_dataset(source, fmt: str = "csv", kind_overrides: dict | None = None) -> Dataset:
    """Load a CSV (RFC 4180, header required) or JSON array-of-objects table.

    `kind_overrides` maps attribute names to AttributeKind, overriding
    inference (the dataset-manifest hook).
    """
    import hashlib

    if isinstance(source, bytes):
        text = source.decode("utf-8")
    else:
        text = source
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()

    if fmt == "csv":
        try:
            reader = csv.reader(io.StringIO(text))
            table = list(reader)
        except csv.Error as exc:
            raise DatasetError(f"malformed CSV: {exc}") from exc
        if not table or not table[0]:
            raise DatasetError("empty table: no header row")
        header = table[0]
        width = len(header)
        records = []
        for i, row in enumerate(table[1:], start=2):
            if not row:
                continue
            if len(row) != width:
                raise DatasetError(f"malformed CSV at row {i}: expected {width} cells, got {len(row)}")
            records.append(dict(zip(header, row)))
    elif fmt == "json":
        try:
            parsed = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DatasetError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
        if not isinstance(parsed, list) or not all(isinstance(r, dict) for r in parsed):
            raise DatasetError("JSON source must be an array of objects")
        if not parsed:
            raise DatasetError("empty table: no records")
        header = list(parsed[0].keys())
        records = [{k: r.get(k) for k in header} for r in parsed]
    else:
        raise DatasetError(f"unsupported format: {fmt!r}")

    if not records:
        raise DatasetError("empty table: no data rows")

    folded = [h.casefold() for h in header]
    if len(set(folded)) != len(folded):
        raise DatasetError("duplicate attribute names in header")
    if any(not h.strip() for h in header):
        raise DatasetError("empty attribute name in header")

    try:
        overrides = {k.casefold(): AttributeKind(v) for k, v in (kind_overrides or {}).items()}
    except ValueError as exc:
        raise DatasetError(f"unknown attribute kind in overrides: {exc}") from exc
    attributes = []
    for name in header:
        kind = overrides.get(name.casefold())
        if kind is None:
            kind = infer_attribute_kind([r.get(name) for r in records])
        attributes.append(Attribute(name, kind))

    kinds = {a.name: a.kind for a in attributes}
    rows = [{name: _coerce_cell(r.get(name), kinds[name]) for name in header} for r in records]
    return Dataset(attributes=attributes, rows=rows, source_hash=digest)


# -- aggregation -------------------------------------------------------------

COUNT = "count"
MEAN = "mean"


@dataclass(frozen=True)
class AggregateGroup:
    key: tuple  # ((attribute name, value), ...)
    measures: tuple  # ((attribute name or "", fn, numeric value), ...)
    member_row_ids: frozenset


@dataclass(frozen=True)
class AggregateTable:
    group_by: tuple
    groups: tuple


def _group_sort_key(key: tuple):
    parts = []
    for _, v in key:
        parts.append((v is None, not isinstance(v, (int, float)), str(v) if not isinstance(v, (int, float)) else "", v if isinstance(v, (int, float)) else 0.0))
    return parts


def aggregate(dataset: Dataset, row_ids, group_by: list[str], measures: list[tuple]) -> AggregateTable:
    """Group `row_ids` by the given attributes and compute count/mean measures.

    Nulls are excluded from means and never form implicit groups for the
    measured attribute. Group order is deterministic (sorted by key).
    """
    for name, fn in measures:
        if fn not in (COUNT, MEAN):
            raise DatasetError(f"unsupported aggregate: {fn!r}")
        if fn == MEAN and dataset.attribute(name).kind == AttributeKind.CATEGORICAL:
            raise DatasetError(f"cannot take mean of categorical attribute {name!r}")
    group_attrs = [dataset.attribute(n).name for n in group_by]

    buckets: dict[tuple, list[int]] = {}
    for rid in sorted(row_ids):
        key = tuple((a, dataset.rows[rid].get(a)) for a in group_attrs)
        buckets.setdefault(key, []).append(rid)

    groups = []
    for key in sorted(buckets, key=_group_sort_key):
        members = buckets[key]
        out = []
        for name, fn in measures:
            if fn == COUNT:
                out.append(("", COUNT, float(len(members))))
            else:
                vals = [dataset.numeric(r, name) for r in members]
                vals = [v for v in vals if v is not None]
                out.append((dataset.attribute(name).name, MEAN, sum(vals) / len(vals) if vals else None))
        groups.append(AggregateGroup(key=key, measures=tuple(out), member_row_ids=frozenset(members)))
    return AggregateTable(group_by=tuple(group_attrs), groups=tuple(groups))


# -- binning -----------------------------------------------------------------

@dataclass(frozen=True)
class Bin:
    lo: float
    hi: float
    count: int
    member_ids: frozenset


def _nice_step(raw: float) -> float:
    """Smallest multiple of 1, 2, or 5 times a power of ten that is >= raw."""
    if raw <= 0:
        return 1.0
    exp = math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        step = mult * 10.0 ** exp
        if step >= raw * (1 - 1e-12):
            return step
    return 10.0 ** (exp + 1)


def bin_values(values: list[tuple], target_bin_count: int = 10) -> list[Bin]:
    """Bin (id, value) pairs into contiguous equal-width nice intervals.

    Intervals are half-open [lo, hi) except the last, which is closed so
    the maximum lands in a bin. Identical values collapse to one bin.
    """
    if target_bin_count < 1:
        raise DatasetError("target_bin_count must be >= 1")
    pairs = [(i, float(v)) for i, v in values if v is not None]
    if not pairs:
        raise DatasetError("no non-null values to bin")
    lo = min(v for _, v in pairs)
    hi = max(v for _, v in pairs)
    if lo == hi:
        return [Bin(lo, hi, len(pairs), frozenset(i for i, _ in pairs))]
    step = _nice_step((hi - lo) / target_bin_count)
    start = math.floor(lo / step) * step
    nbins = int(math.ceil((hi - start) / step - 1e-12))
    nbins = max(nbins, 1)
    members: list[list[int]] = [[] for _ in range(nbins)]
    for rid, v in pairs:
        idx = int((v - start) / step)
        idx = min(max(idx, 0), nbins - 1)
        members[idx].append(rid)
    return [
        Bin(start + k * step, start + (k + 1) * step, len(members[k]), frozenset(members[k]))
        for k in range(nbins)
    ]
