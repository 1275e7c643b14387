"""Restricted keyword-based command parser over a dataset-derived lexicon."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources

from .dataset import AttributeKind, Dataset


class ParseFailureReason(str, Enum):
    UNRECOGNIZED = "unrecognized"
    INCOMPLETE = "incomplete"
    AMBIGUOUS = "ambiguous"


@dataclass(frozen=True)
class ParseFailure:
    reason: ParseFailureReason
    detail: str = ""


@dataclass
class ParsedCommand:
    op: str | None = None  # "bind" | "sort" | "filter" | "chart"
    channel_hint: str | None = None  # "x" | "y" | "color"
    append: bool = False  # bind via "add": extend rather than replace
    attributes: list = field(default_factory=list)
    values: list = field(default_factory=list)  # [(attribute, value), ...]
    comparator: str | None = None  # "<", "<=", ">", ">=", "between"
    bounds: tuple = ()
    polarity: str = "remove"
    except_values: bool = False
    reference: str | None = None  # "these" | "others"
    direction: str | None = None
    sort_by_count: bool = False
    chart_type: str | None = None
    residual: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "op": self.op,
            "channel_hint": self.channel_hint,
            "append": self.append,
            "attributes": list(self.attributes),
            "values": [list(v) for v in self.values],
            "comparator": self.comparator,
            "bounds": list(self.bounds),
            "polarity": self.polarity,
            "except_values": self.except_values,
            "reference": self.reference,
            "direction": self.direction,
            "sort_by_count": self.sort_by_count,
            "chart_type": self.chart_type,
            "residual": list(self.residual),
        }


class LexiconError(Exception):
    pass


def _fold(text: str) -> str:
    text = text.casefold()
    text = re.sub(r"[^a-z0-9.]+", " ", text)
    return re.sub(r"\s+", " ", text).strip()


def _tokens(text: str) -> list[str]:
    return [t.strip(".") if not re.match(r"^\d", t) else t for t in _fold(text).split() if t.strip(".")]


_NUM = re.compile(r"^(\d+(?:\.\d+)?)(m|k|b)?$")
_MAGNITUDE = {"m": 1e6, "million": 1e6, "k": 1e3, "thousand": 1e3, "b": 1e9, "billion": 1e9}


def _parse_number(token: str):
    m = _NUM.match(token)
    if not m:
        return None
    value = float(m.group(1))
    if m.group(2):
        value *= _MAGNITUDE[m.group(2)]
    return value


def load_keywords(path=None) -> dict:
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    with resources.files("mmviz.data").joinpath("keywords.json").open(encoding="utf-8") as fh:
        return json.load(fh)


@dataclass
class Lexicon:
    """Phrase table built from the dataset's attributes/values plus the
    operation keyword file."""

    attributes: list  # Attribute objects, dataset order
    phrases: dict  # token tuple -> (class, payload)
    variant_index: dict  # attribute name -> list of variant strings
    value_owners: dict  # folded value -> list of (attribute, value)
    keywords: dict
    max_len: int = 1

    def attribute_names(self) -> list:
        return [a.name for a in self.attributes]


def _word_variants(name: str) -> list[str]:
    folded = _fold(name)
    variants = [folded]
    words = folded.split()
    if len(words) > 1:
        variants.extend(words)
    return variants


def build_lexicon(dataset: Dataset, keywords: dict | None = None) -> Lexicon:
    """Construct the phrase table: attribute names and word variants,
    categorical values, and operation keywords."""
    kw = keywords if keywords is not None else load_keywords()
    phrases: dict = {}
    variant_index: dict = {}

    folded_names = [_fold(a.name) for a in dataset.attributes]
    if len(set(folded_names)) != len(folded_names):
        raise LexiconError("attribute names collide after case folding")

    # count how many attributes claim each variant; ambiguous single-word
    # variants are dropped from direct matching (still reachable via fuzzy)
    claim: dict = {}
    for attr in dataset.attributes:
        for v in _word_variants(attr.name):
            claim.setdefault(v, []).append(attr.name)
    for attr in dataset.attributes:
        mine = [v for v in _word_variants(attr.name) if len(claim[v]) == 1 or v == _fold(attr.name)]
        variant_index[attr.name] = mine
        for v in mine:
            phrases[tuple(v.split())] = ("attribute", attr.name)

    value_owners: dict = {}
    for attr in dataset.attributes:
        if attr.kind != AttributeKind.CATEGORICAL:
            continue
        for val in dataset.distinct_values(attr.name):
            folded = _fold(str(val))
            if not folded:
                continue
            value_owners.setdefault(folded, []).append((attr.name, val))
    for folded, owners in value_owners.items():
        key = tuple(folded.split())
        if key not in phrases:  # attribute names shadow equal value strings
            phrases[key] = ("value", folded)

    for cls in ("bind", "sort", "filter", "chart"):
        for phrase in kw.get(cls, []):
            phrases[tuple(_fold(phrase).split())] = (f"kw_{cls}", phrase)
    for phrase, direction in kw.get("directions", {}).items():
        phrases[tuple(_fold(phrase).split())] = ("direction", direction)
    for phrase, op in kw.get("comparators", {}).items():
        phrases[tuple(_fold(phrase).split())] = ("comparator", op)
    for phrase, ref in kw.get("references", {}).items():
        phrases[tuple(_fold(phrase).split())] = ("reference", ref)
    for phrase, ct in kw.get("chart_types", {}).items():
        phrases[tuple(_fold(phrase).split())] = ("chart_type", ct)
    for phrase, tag in kw.get("extras", {}).items():
        phrases[tuple(_fold(phrase).split())] = ("extra", tag)
    for word in kw.get("connectors", []):
        phrases.setdefault((word,), ("connector", word))

    max_len = max((len(k) for k in phrases), default=1)
    return Lexicon(
        attributes=list(dataset.attributes),
        phrases=phrases,
        variant_index=variant_index,
        value_owners=value_owners,
        keywords=kw,
        max_len=max_len,
    )


# -- fuzzy attribute matching ------------------------------------------------

def _levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def similarity(a: str, b: str) -> float:
    a, b = _fold(a), _fold(b)
    if not a or not b:
        return 0.0
    return 1.0 - _levenshtein(a, b) / max(len(a), len(b))


MATCH_THRESHOLD = 0.6


def match_attribute(text: str, lexicon: Lexicon) -> list:
    """Rank attributes by similarity of `text` to any variant.

    Exact variant hits score 1.0; below-threshold scores are dropped;
    ties keep dataset attribute order.
    """
    folded = _fold(text)
    scored = []
    for order, attr in enumerate(lexicon.attributes):
        variants = [_fold(attr.name)] + [v for v in _word_variants(attr.name)]
        best = 0.0
        for v in variants:
            if v == folded:
                best = 1.0
                break
            best = max(best, similarity(folded, v))
        if best >= MATCH_THRESHOLD:
            scored.append((order, attr.name, best))
    scored.sort(key=lambda s: (-s[2], s[0]))
    return [(name, score) for _, name, score in scored]


# -- parsing -----------------------------------------------------------------

def _scan(tokens: list[str], lexicon: Lexicon) -> list:
    """Greedy longest-match tokenization against the phrase table."""
    out = []
    i = 0
    while i < len(tokens):
        match = None
        for ln in range(min(lexicon.max_len, len(tokens) - i), 0, -1):
            key = tuple(tokens[i:i + ln])
            if key in lexicon.phrases:
                match = (lexicon.phrases[key], ln, " ".join(key))
                break
        if match:
            (cls, payload), ln, text = match
            out.append((cls, payload, text))
            i += ln
            continue
        num = _parse_number(tokens[i])
        if num is not None:
            if i + 1 < len(tokens) and tokens[i + 1] in _MAGNITUDE:
                num *= _MAGNITUDE[tokens[i + 1]]
                i += 1
            out.append(("number", num, tokens[i]))
        else:
            out.append(("residual", tokens[i], tokens[i]))
        i += 1
    return out


def parse(transcript: str, lexicon: Lexicon):
    """Parse a transcript into a ParsedCommand, or a ParseFailure."""
    tokens = _tokens(transcript)
    if not tokens:
        return ParseFailure(ParseFailureReason.UNRECOGNIZED, "empty transcript")
    items = _scan(tokens, lexicon)

    cmd = ParsedCommand()
    numbers: list[float] = []
    kw_classes: list[str] = []
    for cls, payload, text in items:
        if cls == "attribute":
            if payload not in cmd.attributes:
                cmd.attributes.append(payload)
        elif cls == "value":
            for owner in lexicon.value_owners[payload]:
                if owner not in cmd.values:
                    cmd.values.append(owner)
        elif cls == "number":
            numbers.append(payload)
        elif cls == "direction":
            cmd.direction = payload
        elif cls == "comparator":
            cmd.comparator = payload
        elif cls == "reference":
            cmd.reference = payload
        elif cls == "chart_type":
            cmd.chart_type = payload
            kw_classes.append("chart")
        elif cls == "extra" and payload == "except":
            cmd.except_values = True
        elif cls == "extra" and payload == "count":
            cmd.sort_by_count = True
        elif cls.startswith("kw_"):
            kw_classes.append(cls[3:])
            if payload in ("color by", "colour by"):
                cmd.channel_hint = "color"
            if payload == "add":
                cmd.append = True
            if payload in ("keep", "only"):
                cmd.polarity = "keep"
        elif cls == "residual":
            cmd.residual.append(text)

    # operation class: explicit keywords win; bare attribute lists bind
    if "filter" in kw_classes:
        cmd.op = "filter"
    elif "sort" in kw_classes:
        cmd.op = "sort"
    elif "chart" in kw_classes:
        cmd.op = "chart"
    elif "bind" in kw_classes:
        cmd.op = "bind"
    elif cmd.attributes:
        cmd.op = "bind"
    elif cmd.reference:
        cmd.op = None  # fusion resolves pure references in context
    else:
        return ParseFailure(ParseFailureReason.UNRECOGNIZED, "no operation or reference found")

    cmd.bounds = tuple(numbers)

    if cmd.op == "filter":
        has_range = cmd.comparator is not None and cmd.bounds
        if cmd.comparator == "between" and len(cmd.bounds) < 2:
            return ParseFailure(ParseFailureReason.INCOMPLETE, "'between' needs two bounds")
        if has_range and not cmd.attributes:
            return ParseFailure(
                ParseFailureReason.INCOMPLETE, "range filter without an attribute")
        if not has_range and not cmd.values and not cmd.reference and not cmd.attributes:
            return ParseFailure(ParseFailureReason.INCOMPLETE, "filter with nothing to filter on")
        if cmd.values and not cmd.attributes:
            owners = {attr for attr, _ in cmd.values}
            if len(owners) > 1:
                folded_groups = {}
                for attr, val in cmd.values:
                    folded_groups.setdefault(_fold(str(val)), set()).add(attr)
                if any(len(g) > 1 for g in folded_groups.values()):
                    return ParseFailure(
                        ParseFailureReason.AMBIGUOUS,
                        "value appears under multiple attributes")
                return ParseFailure(
                    ParseFailureReason.AMBIGUOUS, "values span multiple attributes")
            cmd.attributes = [next(iter(owners))]

    if cmd.op == "sort" and not cmd.attributes and not cmd.sort_by_count:
        cmd.sort_by_count = True  # bare "sort descending" sorts by the count/measure in view

    if cmd.op == "chart" and cmd.chart_type is None:
        return ParseFailure(ParseFailureReason.INCOMPLETE, "chart change without a chart type")

    if cmd.op == "bind" and not cmd.attributes:
        return ParseFailure(ParseFailureReason.INCOMPLETE, "bind without attributes")

    return cmd
