"""Multimodal fusion: combine gestures, active holds, and speech
transcripts into operation requests, and check the interaction pattern
table for consistency."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .gestures import Gesture, GestureKind, Zone, ZoneKind
from .nlparser import Lexicon, ParseFailure, ParseFailureReason, ParsedCommand, match_attribute, parse

PTT_ZONES = frozenset({ZoneKind.MODIFIER, ZoneKind.X_TITLE, ZoneKind.Y_TITLE, ZoneKind.LEGEND_TITLE})
_CHANNEL_OF_ZONE = {
    ZoneKind.X_TITLE: "x",
    ZoneKind.Y_TITLE: "y",
    ZoneKind.LEGEND_TITLE: "color",
}


@dataclass(frozen=True)
class OperationRequest:
    kind: str  # bind|unbind|sort|filter|details|chart_type|select|clear_selection|zoom|pan|unsupported|input_error
    target: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    provenance: tuple = ()
    pattern: str | None = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "target": self.target,
            "params": self.params,
            "provenance": list(self.provenance),
            "pattern": self.pattern,
        }


def load_patterns(path=None) -> dict:
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    with resources.files("mmviz.data").joinpath("patterns.json").open(encoding="utf-8") as fh:
        return json.load(fh)


def check_pattern_table(table: dict) -> list:
    """Report (instrument, gesture, context) cells whose device sets overlap
    and that map to two or more distinct operations."""
    cells: list = []
    for p in table.get("patterns", []):
        if not p.get("gesture"):
            continue
        devices = {"touch", "pen"} if p.get("device") in (None, "any") else {p["device"]}
        cells.append((p["instrument"], p["gesture"], p.get("context"), devices, p["operation"], p["id"]))
    conflicts = []
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            a, b = cells[i], cells[j]
            if a[0] == b[0] and a[1] == b[1] and a[2] == b[2] and (a[3] & b[3]) and a[4] != b[4]:
                conflicts.append({
                    "instrument": a[0],
                    "gesture": a[1],
                    "context": a[2],
                    "operations": sorted({a[4], b[4]}),
                    "patterns": sorted({a[5], b[5]}),
                })
    return conflicts


def equivalence_gaps(table: dict) -> list:
    """Informational: operations not reachable from every modality.

    These gaps are intentional (synergy over equivalence), so this is a
    report, not an error.
    """
    ops: dict = {}
    for p in table.get("patterns", []):
        if not p.get("executed", True):
            continue
        ops.setdefault(p["operation"], set()).update(p.get("modalities", []))
    gaps = []
    for op, mods in sorted(ops.items()):
        missing = sorted({"touch", "pen", "speech"} - mods)
        if missing:
            gaps.append({"operation": op, "missing_modalities": missing})
    return gaps


@dataclass
class FusionContext:
    """Session-local multimodal state: active holds and the push-to-talk
    lifecycle."""

    holds: dict = field(default_factory=dict)  # (kind, name, index) -> Zone
    ptt: str = "idle"  # idle | recording | finalizing
    ptt_trigger: Zone | None = None

    def hold_zone(self, *kinds: ZoneKind) -> Zone | None:
        for zone in self.holds.values():
            if zone.kind in kinds:
                return zone
        return None

    @property
    def modifier_held(self) -> bool:
        return self.hold_zone(ZoneKind.MODIFIER) is not None

    @property
    def title_hold(self) -> Zone | None:
        return self.hold_zone(ZoneKind.X_TITLE, ZoneKind.Y_TITLE, ZoneKind.LEGEND_TITLE)

    @property
    def recording(self) -> bool:
        return self.ptt == "recording"


def _zone_key(zone: Zone) -> tuple:
    return (zone.kind, zone.name, zone.index)


class FusionEngine:
    """Turn gesture/transcript streams into OperationRequests.

    State is session-local; callers must feed events in timestamp order.
    """

    def __init__(self, lexicon: Lexicon):
        self.lexicon = lexicon
        self.ctx = FusionContext()

    # -- gestures ----------------------------------------------------------

    def on_gesture(self, g: Gesture) -> list[OperationRequest]:
        ctx = self.ctx
        kind = g.kind
        if kind == GestureKind.POINT_START:
            ctx.holds[_zone_key(g.zone)] = g.zone
            out = []
            if g.zone.kind in PTT_ZONES and ctx.ptt != "recording":
                # a stale finalizing window (silent hold) yields to a new hold
                ctx.ptt = "recording"
                ctx.ptt_trigger = g.zone
            if g.zone.kind == ZoneKind.MARK:
                out.append(OperationRequest(
                    "details", target={"mark": g.zone.name},
                    provenance=(g.device or "touch",), pattern="I24"))
            return out
        if kind == GestureKind.POINT_END:
            ctx.holds.pop(_zone_key(g.zone), None)
            if ctx.ptt == "recording" and ctx.ptt_trigger is not None \
                    and _zone_key(ctx.ptt_trigger) == _zone_key(g.zone):
                ctx.ptt = "finalizing"
            return []
        if kind == GestureKind.TAP:
            return self._tap(g)
        if kind == GestureKind.SWIPE:
            return self._swipe(g)
        if kind in (GestureKind.DRAG_START, GestureKind.DRAG_MOVE):
            if g.device == "touch" and g.zone and g.zone.kind in (ZoneKind.X_SCALE, ZoneKind.Y_SCALE):
                value = g.path[-1][2] if g.path else None
                axis = "x" if g.zone.kind == ZoneKind.X_SCALE else "y"
                return [OperationRequest(
                    "details", target={"ruler": {"axis": axis, "index": g.zone.index}},
                    params={"value": value}, provenance=("touch",), pattern="I15")]
            return []
        if kind == GestureKind.DRAG_END:
            return self._drag_end(g)
        if kind == GestureKind.PINCH:
            return [OperationRequest("zoom", target={"view": True},
                                     params={"scale": g.scale, "center": list(g.center) if g.center else None},
                                     provenance=("touch",), pattern="Z1")]
        if kind == GestureKind.LASSO:
            polygon = [list(p[2]) for p in g.path if isinstance(p[2], tuple)]
            return [OperationRequest(
                "select", target={"lasso": polygon},
                params={"compound": self.ctx.modifier_held},
                provenance=("pen", "touch") if self.ctx.modifier_held else ("pen",),
                pattern="S5" if self.ctx.modifier_held else "S4")]
        if kind == GestureKind.ERASE:
            return self._erase(g)
        if kind == GestureKind.PILL_DROP:
            channel = _CHANNEL_OF_ZONE[g.drop_zone.kind]
            return [OperationRequest(
                "bind", target={"channel": channel},
                params={"attributes": [g.pill], "append": channel == "y"},
                provenance=("touch",), pattern="I1")]
        if kind == GestureKind.INPUT_ERROR:
            return [OperationRequest("input_error", params={"code": g.error},
                                     provenance=(g.device or "touch",))]
        return [self._unsupported(g)]

    def _unsupported(self, g: Gesture) -> OperationRequest:
        return OperationRequest(
            "unsupported",
            params={"gesture": g.kind.value, "zone": g.zone.kind.value if g.zone else None},
            provenance=(("touch",) if g.device == "touch" else ("pen",)) if g.device else ())

    def _tap(self, g: Gesture) -> list[OperationRequest]:
        zone = g.zone
        if zone.kind == ZoneKind.PILL:
            title = self.ctx.title_hold
            if title is not None:
                channel = _CHANNEL_OF_ZONE[title.kind]
                return [OperationRequest(
                    "bind", target={"channel": channel},
                    params={"attributes": [zone.name], "append": False},
                    provenance=("touch",), pattern="I2")]
            return [self._unsupported(g)]
        if zone.kind == ZoneKind.MARK:
            return [OperationRequest(
                "select", target={"marks": [zone.name]},
                params={"compound": self.ctx.modifier_held},
                provenance=(g.device or "touch",), pattern="S1")]
        if zone.kind == ZoneKind.LEGEND_ITEM:
            return [OperationRequest(
                "select", target={"legend_value": zone.name},
                params={"compound": self.ctx.modifier_held},
                provenance=(g.device or "touch",), pattern="S2")]
        if zone.kind == ZoneKind.CANVAS:
            return [OperationRequest("clear_selection", target={"view": True},
                                     provenance=(g.device or "touch",), pattern="C1")]
        return [self._unsupported(g)]

    def _swipe(self, g: Gesture) -> list[OperationRequest]:
        zone = g.zone
        if zone.kind in (ZoneKind.X_SCALE, ZoneKind.X_TITLE):
            axis, direction = "x", {"right": "ascending", "left": "descending"}.get(g.direction)
        elif zone.kind in (ZoneKind.Y_SCALE, ZoneKind.Y_TITLE):
            axis, direction = "y", {"up": "ascending", "down": "descending"}.get(g.direction)
        else:
            return [self._unsupported(g)]
        if direction is None:
            return [self._unsupported(g)]
        return [OperationRequest(
            "sort", target={"axis": axis, "index": zone.index},
            params={"direction": direction},
            provenance=("touch",) if g.device == "touch" else ("pen",), pattern="I17")]

    def _drag_end(self, g: Gesture) -> list[OperationRequest]:
        zone = g.zone
        if g.device == "pen" and zone and zone.kind in (ZoneKind.X_SCALE, ZoneKind.Y_SCALE):
            values = [p[2] for p in g.path if isinstance(p[2], (int, float))]
            if not values:
                return [self._unsupported(g)]
            axis = "x" if zone.kind == ZoneKind.X_SCALE else "y"
            return [OperationRequest(
                "select", target={"axis_range": {"axis": axis, "index": zone.index,
                                                 "lo": min(values), "hi": max(values)}},
                params={"compound": self.ctx.modifier_held},
                provenance=("pen", "touch") if self.ctx.modifier_held else ("pen",),
                pattern="S3")]
        if g.device == "touch" and zone and zone.kind in (ZoneKind.X_SCALE, ZoneKind.Y_SCALE):
            return []  # ruler details already streamed per move
        if g.device == "touch" and zone and zone.kind in (ZoneKind.CANVAS, ZoneKind.MARK):
            first = next((p[2] for p in g.path if isinstance(p[2], tuple)), None)
            last = next((p[2] for p in reversed(g.path) if isinstance(p[2], tuple)), None)
            if first is None or last is None:
                return [self._unsupported(g)]
            delta = tuple(b - a for a, b in zip(first, last))
            return [OperationRequest("pan", target={"view": True},
                                     params={"delta": list(delta)},
                                     provenance=("touch",), pattern="Z2")]
        return [self._unsupported(g)]

    def _erase(self, g: Gesture) -> list[OperationRequest]:
        out: list[OperationRequest] = []
        marks, legend_values = [], []
        for zone in g.zones:
            if zone.kind == ZoneKind.MARK:
                marks.append(zone.name)
            elif zone.kind == ZoneKind.LEGEND_ITEM:
                legend_values.append(zone.name)
            elif zone.kind in _CHANNEL_OF_ZONE:
                out.append(OperationRequest(
                    "unbind", target={"channel": _CHANNEL_OF_ZONE[zone.kind]},
                    params={"attribute": zone.name}, provenance=("pen",), pattern="X2"))
        if marks:
            out.append(OperationRequest("filter", target={"marks": marks},
                                        params={"polarity": "remove"},
                                        provenance=("pen",), pattern="I20"))
        if legend_values:
            out.append(OperationRequest("filter", target={"legend_values": legend_values},
                                        params={"polarity": "remove"},
                                        provenance=("pen",), pattern="I20"))
        if not out:
            out.append(self._unsupported(g))
        return out

    # -- speech ------------------------------------------------------------

    def on_transcript(self, text: str, alternatives: list | None = None) -> list[OperationRequest]:
        ctx = self.ctx
        if ctx.ptt != "finalizing":
            return [OperationRequest("input_error", params={"code": "transcript_while_idle"},
                                     provenance=("speech",))]
        trigger = ctx.ptt_trigger
        ctx.ptt = "idle"
        ctx.ptt_trigger = None
        if not text.strip():
            return [OperationRequest("void", params={"code": "empty_transcript"},
                                     provenance=("speech",))]
        cmd = parse(text, self.lexicon)
        if isinstance(cmd, ParseFailure):
            return [OperationRequest(
                "input_error",
                params={"code": f"parse_{cmd.reason.value}", "detail": cmd.detail},
                provenance=("speech",))]
        provenance = ("speech",) if trigger is None else ("touch", "speech")
        trigger_channel = _CHANNEL_OF_ZONE.get(trigger.kind) if trigger else None
        return self._fuse_command(cmd, trigger_channel, provenance)

    def _fuse_command(self, cmd: ParsedCommand, trigger_channel: str | None,
                      provenance: tuple) -> list[OperationRequest]:
        if cmd.op == "bind":
            channel = cmd.channel_hint or trigger_channel
            if channel is None:
                channel = "x" if len(cmd.attributes) == 1 else "y"
            return [OperationRequest(
                "bind", target={"channel": channel},
                params={"attributes": list(cmd.attributes), "append": cmd.append},
                provenance=provenance,
                pattern="X1" if trigger_channel is None else ("I6" if len(cmd.attributes) > 1 else "I4"))]
        if cmd.op == "sort":
            axis = trigger_channel if trigger_channel in ("x", "y") else "y"
            return [OperationRequest(
                "sort", target={"axis": axis, "index": None},
                params={
                    "direction": cmd.direction or "ascending",
                    "by": "count" if cmd.sort_by_count else (cmd.attributes[0] if cmd.attributes else None),
                },
                provenance=provenance, pattern="X3")]
        if cmd.op == "filter" or (cmd.op is None and cmd.reference):
            params: dict = {"polarity": cmd.polarity}
            target: dict = {}
            if cmd.reference:
                target["reference"] = cmd.reference
            elif cmd.comparator:
                target["range"] = {
                    "attribute": cmd.attributes[0],
                    "comparator": cmd.comparator,
                    "bounds": list(cmd.bounds),
                }
            elif cmd.values:
                target["categories"] = {
                    "attribute": cmd.attributes[0],
                    "values": [v for attr, v in cmd.values if attr == cmd.attributes[0]],
                }
                params["except_values"] = cmd.except_values
            else:
                return [OperationRequest(
                    "input_error", params={"code": "parse_incomplete"},
                    provenance=provenance)]
            return [OperationRequest("filter", target=target, params=params,
                                     provenance=provenance,
                                     pattern="I21" if cmd.reference else "X4")]
        if cmd.op == "chart":
            return [OperationRequest("chart_type", target={"view": True},
                                     params={"chart_type": cmd.chart_type},
                                     provenance=provenance, pattern="X5")]
        return [OperationRequest("input_error", params={"code": "parse_unrecognized"},
                                 provenance=provenance)]

    # -- handwriting -------------------------------------------------------

    def on_write_candidates(self, texts: list[str]) -> tuple:
        """Match handwriting candidates to the attribute lexicon.

        Returns (requests, suggestions): an unambiguous exact match binds
        directly; otherwise a ranked suggestion list goes back to the UI.
        """
        title = self.ctx.title_hold
        if title is None:
            return ([OperationRequest("input_error", params={"code": "write_without_target"},
                                      provenance=("pen",))], [])
        channel = _CHANNEL_OF_ZONE[title.kind]
        ranked: list = []
        seen = set()
        for text in texts:
            for name, score in match_attribute(text, self.lexicon):
                if name not in seen:
                    seen.add(name)
                    ranked.append((name, score))
        ranked.sort(key=lambda s: -s[1])
        exact = [name for name, score in ranked if score == 1.0]
        if len(exact) == 1:
            return ([OperationRequest(
                "bind", target={"channel": channel},
                params={"attributes": exact, "append": False},
                provenance=("pen", "touch"), pattern="I3")], [])
        return ([], ranked)
