"""Pointer-stream gesture recognition: tap, point(hold), swipe, drag,
pinch, lasso, erase strokes, and pill drag-and-drop."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class ZoneKind(str, Enum):
    PILL = "pill"
    X_TITLE = "x_title"
    Y_TITLE = "y_title"
    X_SCALE = "x_scale"
    Y_SCALE = "y_scale"
    LEGEND_TITLE = "legend_title"
    LEGEND_ITEM = "legend_item"
    MARK = "mark"
    CANVAS = "canvas"
    MODIFIER = "modifier"
    PANEL = "panel"


# zones where a pen contact is rejected outright (panel is touch-only)
PANEL_ZONES = frozenset({ZoneKind.PILL, ZoneKind.MODIFIER, ZoneKind.PANEL})
# zones an eraser stroke can unbind or filter
ERASABLE_ZONES = frozenset(
    {ZoneKind.MARK, ZoneKind.LEGEND_ITEM, ZoneKind.X_TITLE, ZoneKind.Y_TITLE, ZoneKind.LEGEND_TITLE}
)
DROP_TARGETS = frozenset({ZoneKind.X_TITLE, ZoneKind.Y_TITLE, ZoneKind.LEGEND_TITLE})


@dataclass(frozen=True)
class Zone:
    kind: ZoneKind
    name: str | None = None  # pill / legend value / mark id / axis label
    index: int | None = None  # parallel-coordinates axis index

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "name": self.name, "index": self.index}

    @staticmethod
    def from_dict(d: dict) -> "Zone":
        return Zone(ZoneKind(d["kind"]), d.get("name"), d.get("index"))


@dataclass(frozen=True)
class PointerEvent:
    contact: int
    device: str  # "touch" | "pen" | "pen_eraser"
    phase: str  # "down" | "move" | "up"
    x: float
    y: float
    zone: Zone
    t: float  # milliseconds, monotonic per session
    data: tuple | float | None = None  # data-space coordinate on scales/canvas

    def to_dict(self) -> dict:
        return {
            "contact": self.contact,
            "device": self.device,
            "phase": self.phase,
            "x": self.x,
            "y": self.y,
            "zone": self.zone.to_dict(),
            "t": self.t,
            "data": list(self.data) if isinstance(self.data, tuple) else self.data,
        }

    @staticmethod
    def from_dict(d: dict) -> "PointerEvent":
        data = d.get("data")
        if isinstance(data, list):
            data = tuple(data)
        return PointerEvent(
            d["contact"], d["device"], d["phase"], d["x"], d["y"],
            Zone.from_dict(d["zone"]), d["t"], data,
        )


class GestureKind(str, Enum):
    TAP = "tap"
    POINT_START = "point_start"
    POINT_END = "point_end"
    SWIPE = "swipe"
    DRAG_START = "drag_start"
    DRAG_MOVE = "drag_move"
    DRAG_END = "drag_end"
    PINCH = "pinch"
    LASSO = "lasso"
    ERASE = "erase"
    PILL_DROP = "pill_drop"
    INPUT_ERROR = "input_error"


@dataclass(frozen=True)
class Gesture:
    kind: GestureKind
    zone: Zone | None = None
    device: str | None = None
    t: float = 0.0
    direction: str | None = None  # swipe: up/down/left/right
    path: tuple = ()  # ((x, y, data), ...)
    scale: float = 1.0  # pinch: incremental scale factor
    center: tuple | None = None  # pinch: data-space center when available
    zones: tuple = ()  # erase stroke zones, in touch order
    pill: str | None = None  # pill drop source
    drop_zone: Zone | None = None
    error: str | None = None  # "pen_in_panel" | "drop_outside_target"


@dataclass(frozen=True)
class GestureConfig:
    tap_max_ms: float = 300.0
    tap_slop_px: float = 10.0
    hold_min_ms: float = 500.0
    hold_slop_px: float = 10.0
    swipe_min_px: float = 48.0
    swipe_max_ms: float = 250.0


class _Mode(Enum):
    PENDING = "pending"  # not yet classified
    HOLD = "hold"
    DRAG = "drag"  # streaming drag
    PINCH = "pinch"
    ERASE = "erase"
    LASSO = "lasso"  # pen on canvas, buffered
    PILL = "pill"  # pill drag, buffered
    DEAD = "dead"  # consumed by an error or cancel


@dataclass
class _Contact:
    down: PointerEvent
    last: PointerEvent
    mode: _Mode
    path: list = field(default_factory=list)
    max_disp: float = 0.0
    erase_zones: list = field(default_factory=list)
    pinch_peer: int | None = None
    pinch_dist: float = 0.0


def _disp(a: PointerEvent, b: PointerEvent) -> float:
    return ((a.x - b.x) ** 2 + (a.y - b.y) ** 2) ** 0.5


def _dir(down: PointerEvent, up: PointerEvent) -> str:
    dx, dy = up.x - down.x, up.y - down.y
    if abs(dx) >= abs(dy):
        return "right" if dx > 0 else "left"
    return "down" if dy > 0 else "up"  # view y grows downward


def _point(ev: PointerEvent) -> tuple:
    return (ev.x, ev.y, ev.data)


class GestureRecognizer:
    """Classify a well-bracketed pointer event stream into gestures.

    Purely event-driven: all timing uses event timestamps, so identical
    streams always produce identical gesture sequences.
    """

    def __init__(self, config: GestureConfig | None = None):
        self.config = config or GestureConfig()
        self._contacts: dict[int, _Contact] = {}

    def reset(self, contact: int) -> None:
        """Discard partial state for a contact (cancel). Unknown ids no-op."""
        state = self._contacts.pop(contact, None)
        if state and state.mode is _Mode.PINCH and state.pinch_peer in self._contacts:
            peer = self._contacts[state.pinch_peer]
            peer.mode = _Mode.DRAG
            peer.pinch_peer = None

    def advance(self, now: float) -> list[Gesture]:
        """Time-driven promotions (hold start, drag start) without a new event."""
        out: list[Gesture] = []
        for state in self._contacts.values():
            out.extend(self._promote(state, now))
        return out

    def ingest(self, event: PointerEvent) -> list[Gesture]:
        out = self.advance(event.t)
        handler = {"down": self._down, "move": self._move, "up": self._up}[event.phase]
        out.extend(handler(event))
        return out

    # -- promotion ---------------------------------------------------------

    def _hold_allowed(self, state: _Contact) -> bool:
        if state.mode is _Mode.PENDING:
            return True
        if state.mode is _Mode.LASSO:
            return state.down.zone.kind == ZoneKind.MARK
        return False

    def _promote(self, state: _Contact, now: float) -> list[Gesture]:
        cfg = self.config
        out: list[Gesture] = []
        elapsed = now - state.down.t
        if self._hold_allowed(state) and elapsed >= cfg.hold_min_ms and state.max_disp <= cfg.hold_slop_px:
            state.mode = _Mode.HOLD
            out.append(Gesture(GestureKind.POINT_START, zone=state.down.zone,
                               device=state.down.device, t=state.down.t + cfg.hold_min_ms))
        elif state.mode is _Mode.PENDING and elapsed > cfg.swipe_max_ms and state.max_disp > cfg.tap_slop_px:
            state.mode = _Mode.DRAG
            out.append(Gesture(GestureKind.DRAG_START, zone=state.down.zone,
                               device=state.down.device, t=state.down.t, path=(_point(state.down),)))
            for i, ev in enumerate(state.path[1:], start=2):
                out.append(Gesture(GestureKind.DRAG_MOVE, zone=ev.zone, device=ev.device,
                                   t=ev.t, path=tuple(_point(p) for p in state.path[:i])))
        return out

    # -- phases ------------------------------------------------------------

    def _down(self, ev: PointerEvent) -> list[Gesture]:
        if ev.device in ("pen", "pen_eraser") and ev.zone.kind in PANEL_ZONES:
            self._contacts[ev.contact] = _Contact(ev, ev, _Mode.DEAD)
            return [Gesture(GestureKind.INPUT_ERROR, zone=ev.zone, device=ev.device,
                            t=ev.t, error="pen_in_panel")]
        state = _Contact(ev, ev, _Mode.PENDING, path=[ev])
        if ev.device == "pen_eraser":
            state.mode = _Mode.ERASE
            if ev.zone.kind in ERASABLE_ZONES:
                state.erase_zones.append(ev.zone)
        elif ev.device == "pen" and ev.zone.kind in (ZoneKind.CANVAS, ZoneKind.MARK):
            state.mode = _Mode.LASSO
        elif ev.zone.kind == ZoneKind.PILL:
            state.mode = _Mode.PILL
        elif ev.device == "touch" and ev.zone.kind in (ZoneKind.CANVAS, ZoneKind.MARK):
            peer = self._find_canvas_touch(ev.contact)
            if peer is not None:
                self._start_pinch(peer, ev)
                return []
        self._contacts[ev.contact] = state
        return []

    def _find_canvas_touch(self, exclude: int) -> int | None:
        for cid, state in self._contacts.items():
            if cid == exclude:
                continue
            if (state.down.device == "touch"
                    and state.down.zone.kind in (ZoneKind.CANVAS, ZoneKind.MARK)
                    and state.mode in (_Mode.PENDING, _Mode.DRAG)):
                return cid
        return None

    def _start_pinch(self, peer_id: int, ev: PointerEvent) -> None:
        peer = self._contacts[peer_id]
        peer.mode = _Mode.PINCH
        peer.pinch_peer = ev.contact
        state = _Contact(ev, ev, _Mode.PINCH, path=[ev])
        state.pinch_peer = peer_id
        dist = max(_disp(peer.last, ev), 1e-9)
        peer.pinch_dist = state.pinch_dist = dist
        self._contacts[ev.contact] = state

    def _move(self, ev: PointerEvent) -> list[Gesture]:
        state = self._contacts.get(ev.contact)
        if state is None or state.mode is _Mode.DEAD:
            return []
        state.path.append(ev)
        state.max_disp = max(state.max_disp, _disp(state.down, ev))
        prev = state.last
        state.last = ev
        if state.mode is _Mode.ERASE:
            if ev.zone.kind in ERASABLE_ZONES and (not state.erase_zones or state.erase_zones[-1] != ev.zone):
                state.erase_zones.append(ev.zone)
            return []
        if state.mode is _Mode.PINCH:
            peer = self._contacts.get(state.pinch_peer)
            if peer is None:
                return []
            dist = max(_disp(peer.last, ev), 1e-9)
            factor = dist / state.pinch_dist
            state.pinch_dist = peer.pinch_dist = dist
            center = None
            if isinstance(ev.data, tuple) and isinstance(peer.last.data, tuple):
                center = tuple((a + b) / 2 for a, b in zip(ev.data, peer.last.data))
            return [Gesture(GestureKind.PINCH, zone=state.down.zone, device="touch",
                            t=ev.t, scale=factor, center=center)]
        if state.mode is _Mode.DRAG:
            return [Gesture(GestureKind.DRAG_MOVE, zone=ev.zone, device=ev.device, t=ev.t,
                            path=tuple(_point(p) for p in state.path))]
        if state.mode is _Mode.PENDING:
            return self._promote(state, ev.t)
        return []

    def _up(self, ev: PointerEvent) -> list[Gesture]:
        state = self._contacts.pop(ev.contact, None)
        if state is None:
            return []
        cfg = self.config
        state.path.append(ev)
        state.max_disp = max(state.max_disp, _disp(state.down, ev))
        duration = ev.t - state.down.t
        path = tuple(_point(p) for p in state.path)
        is_tap = duration <= cfg.tap_max_ms and state.max_disp <= cfg.tap_slop_px

        if state.mode is _Mode.DEAD:
            return []
        if state.mode is _Mode.ERASE:
            return [Gesture(GestureKind.ERASE, zone=state.down.zone, device="pen_eraser",
                            t=ev.t, zones=tuple(state.erase_zones), path=path)]
        if state.mode is _Mode.HOLD:
            return [Gesture(GestureKind.POINT_END, zone=state.down.zone,
                            device=state.down.device, t=ev.t)]
        if state.mode is _Mode.PINCH:
            peer = self._contacts.get(state.pinch_peer)
            if peer is not None:
                peer.mode = _Mode.DRAG
                peer.pinch_peer = None
                peer.down = peer.last  # continue as a fresh drag from here
                peer.path = [peer.last]
            return []
        if state.mode is _Mode.LASSO:
            if is_tap:
                return [Gesture(GestureKind.TAP, zone=state.down.zone, device="pen", t=ev.t)]
            closed = path + (path[0],) if path and path[-1][:2] != path[0][:2] else path
            return [Gesture(GestureKind.LASSO, zone=state.down.zone, device="pen",
                            t=ev.t, path=closed)]
        if state.mode is _Mode.PILL:
            if is_tap:
                return [Gesture(GestureKind.TAP, zone=state.down.zone,
                                device=state.down.device, t=ev.t)]
            if ev.zone.kind in DROP_TARGETS:
                return [Gesture(GestureKind.PILL_DROP, zone=state.down.zone,
                                device=state.down.device, t=ev.t,
                                pill=state.down.zone.name, drop_zone=ev.zone)]
            return [Gesture(GestureKind.INPUT_ERROR, zone=ev.zone, device=state.down.device,
                            t=ev.t, pill=state.down.zone.name, error="drop_outside_target")]
        if state.mode is _Mode.DRAG:
            return [Gesture(GestureKind.DRAG_END, zone=ev.zone, device=state.down.device,
                            t=ev.t, path=path)]
        # still pending at lift: tap, swipe, or a short completed drag
        if is_tap:
            return [Gesture(GestureKind.TAP, zone=state.down.zone,
                            device=state.down.device, t=ev.t)]
        if state.max_disp >= cfg.swipe_min_px and duration <= cfg.swipe_max_ms:
            return [Gesture(GestureKind.SWIPE, zone=state.down.zone, device=state.down.device,
                            t=ev.t, direction=_dir(state.down, ev))]
        out = [Gesture(GestureKind.DRAG_START, zone=state.down.zone,
                       device=state.down.device, t=state.down.t, path=(path[0],))]
        for i in range(1, len(path) - 1):
            out.append(Gesture(GestureKind.DRAG_MOVE, zone=state.path[i].zone,
                               device=state.down.device, t=state.path[i].t, path=path[: i + 1]))
        out.append(Gesture(GestureKind.DRAG_END, zone=ev.zone, device=state.down.device,
                           t=ev.t, path=path))
        return out
