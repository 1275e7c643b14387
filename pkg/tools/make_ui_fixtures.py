"""Generate frontend test fixtures from the engine.

Writes:
  frontend/tests/fixtures/snapshots.json  chart-type snapshots for the
                                          render/hit-test consistency suite
  frontend/tests/fixtures/roundtrip.json  a scripted pointer scenario with
                                          the client messages and operation
                                          requests the engine recorded

The pixel-to-zone mapping here mirrors frontend/src/layout.ts,
scales.ts, scene.ts and hittest.ts; the frontend test asserts its own
mapping produces byte-equal client messages, so any drift between the
two fails loudly.
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from mmviz import load_dataset  # noqa: E402
from mmviz.chartspec import ChartSpec, ChartType, Selection, SortDirection, SortState  # noqa: E402
from mmviz.executor import AppState  # noqa: E402
from mmviz.session import Session  # noqa: E402

OUT = ROOT / "frontend" / "tests" / "fixtures"

TINY_CSV = (
    "Year,Genre,Gross,Budget,Rating\n"
    "1998,Action,150,60,PG\n"
    "2001,Drama,40,25,R\n"
    "2005,Action,300,110,PG-13\n"
    "2005,Comedy,90,30,PG\n"
    "2010,Drama,,35,R\n"
    "2012,Comedy,220,80,PG-13\n"
)

# -- mirror of frontend/src/layout.ts ---------------------------------------

MODIFIER = (0, 0, 200, 60)
PANEL = (0, 60, 200, 600)
INK_PAD = (0, 660, 200, 108)
Y_TITLE = (200, 60, 30, 520)
Y_SCALE = (230, 60, 30, 520)
CANVAS = (260, 60, 600, 520)
LEGEND_TITLE = (860, 60, 164, 30)
X_SCALE = (260, 580, 600, 30)
X_TITLE = (260, 610, 600, 30)
PILL_X, PILL_Y0, PILL_W, PILL_H, PILL_STEP = 10, 70, 180, 36, 44
PLOT_X0, PLOT_X1 = CANVAS[0] + 20, CANVAS[0] + CANVAS[2] - 20
PLOT_YB, PLOT_YT = CANVAS[1] + CANVAS[3] - 20, CANVAS[1] + 20


def contains(r, x, y):
    return r[0] <= x < r[0] + r[2] and r[1] <= y < r[1] + r[3]


def invert(lo, hi, r0, r1, px):
    return lo + (px - r0) * (hi - lo) / (r1 - r0)


def scale_apply(lo, hi, r0, r1, v):
    return r0 + (v - lo) * (r1 - r0) / (hi - lo)


class SceneMirror:
    """Just enough of frontend/src/scene.ts + hittest.ts for the script."""

    def __init__(self, snapshot, pills):
        self.pills = pills
        view = snapshot["view"]
        spec = snapshot["spec"]
        self.x_title = spec["x"]
        self.y_titles = spec["y"]
        self.ct = view["chart_type"]
        self.x_scale = self.y_scale = None
        self.handles = []  # (mark id, rect)
        ct = self.ct
        if ct in ("bar", "grouped_bar", "stacked_bar"):
            lo, hi = view["axes"][1]["domain"]
            self.y_scale = (lo, hi, PLOT_YB, PLOT_YT)
        elif ct == "histogram":
            xlo, xhi = view["axes"][0]["domain"]
            clo, chi = view["axes"][1]["domain"]
            self.x_scale = (xlo, xhi, PLOT_X0, PLOT_X1)
            self.y_scale = (clo, chi, PLOT_YB, PLOT_YT)
        elif ct in ("scatter", "line"):
            xlo, xhi = view["axes"][0]["domain"]
            ylo, yhi = view["axes"][1]["domain"]
            self.x_scale = (xlo, xhi, PLOT_X0, PLOT_X1)
            self.y_scale = (ylo, yhi, PLOT_YB, PLOT_YT)
            for m in view["marks"]:
                vy = m["channels"]["value" if ct == "line" else "y"]
                cx = scale_apply(*self.x_scale, m["channels"]["x"])
                cy = scale_apply(*self.y_scale, vy)
                self.handles.append((m["id"], (cx - 4, cy - 4, 8, 8)))

    def hit(self, x, y):
        if contains(MODIFIER, x, y):
            return {"kind": "modifier", "name": None, "index": None}, None
        if contains(INK_PAD, x, y):
            return {"kind": "panel", "name": "ink_pad", "index": None}, None
        if contains(PANEL, x, y):
            for i, name in enumerate(self.pills):
                if contains((PILL_X, PILL_Y0 + i * PILL_STEP, PILL_W, PILL_H), x, y):
                    return {"kind": "pill", "name": name, "index": None}, None
            return {"kind": "panel", "name": None, "index": None}, None
        if contains(CANVAS, x, y):
            for mid, r in reversed(self.handles):
                if contains(r, x, y):
                    return {"kind": "mark", "name": mid, "index": None}, None
            data = None
            if self.x_scale and self.y_scale:
                data = [invert(*self.x_scale, x), invert(*self.y_scale, y)]
            return {"kind": "canvas", "name": None, "index": None}, data
        if contains(Y_SCALE, x, y):
            data = invert(*self.y_scale, y) if self.y_scale else None
            return {"kind": "y_scale", "name": None, "index": None}, data
        if contains(X_SCALE, x, y):
            data = invert(*self.x_scale, x) if self.x_scale else None
            return {"kind": "x_scale", "name": None, "index": None}, data
        if contains(Y_TITLE, x, y):
            name = self.y_titles[0] if len(self.y_titles) == 1 else None
            return {"kind": "y_title", "name": name, "index": None}, None
        if contains(X_TITLE, x, y):
            return {"kind": "x_title", "name": self.x_title, "index": None}, None
        return {"kind": "panel", "name": None, "index": None}, None


# -- chart-type snapshot fixtures -------------------------------------------

def make_snapshots(dataset):
    specs = {
        "empty": ChartSpec(),
        "bar": ChartSpec(x="Genre"),
        "bar_sorted": ChartSpec(x="Genre", sort=SortState("count", SortDirection.DESCENDING)),
        "grouped_bar": ChartSpec(x="Genre", y=("Gross", "Budget")),
        "stacked_bar": ChartSpec(x="Genre", y=("Gross", "Budget"),
                                 type_override=ChartType.STACKED_BAR),
        "histogram": ChartSpec(x="Gross"),
        "line": ChartSpec(x="Year"),
        "scatter": ChartSpec(x="Budget", y=("Gross",), color="Rating"),
        "parallel_coordinates": ChartSpec(y=("Gross", "Budget")),
    }
    out = {}
    for name, spec in specs.items():
        selection = Selection(ids=frozenset({0, 2})) if name == "scatter" else Selection()
        out[name] = AppState(dataset=dataset, spec=spec, selection=selection).snapshot()
    return out


# -- scripted round trip -----------------------------------------------------

class Script:
    def __init__(self, dataset, pills):
        self.session = Session(dataset)
        self.pills = pills
        self.steps = []
        self.requests = []
        self.mic = False
        self.next_contact = 1
        self.contacts = {}
        self.initial = self.session.state.snapshot()
        self.scene = SceneMirror(self.initial, pills)

    def _collect(self, out):
        for msg in out:
            if msg["type"] == "feedback":
                self.requests.append(msg["request"])
            elif msg["type"] == "snapshot":
                self.scene = SceneMirror(msg["state"], self.pills)
                self.steps.append({"kind": "snapshot", "state": msg["state"]})
            elif msg["type"] == "affordances":
                self.steps.append({"kind": "affordances", "hints": msg["hints"]})
                self._mic_edge(msg["hints"]["microphone_active"])

    def _mic_edge(self, active):
        if active == self.mic:
            return
        self.mic = active
        if not active:  # lift: the UI always posts a transcript, maybe empty
            text = self.pending_text
            self.pending_text = ""
            t = self.t_speech
            msg = {"type": "transcript", "t": t, "text": text}
            self.steps.append({"kind": "transcript", "expect": msg})
            self._collect(self.session.handle(msg))

    pending_text = ""
    t_speech = 0.0

    def pointer(self, ptype, pid, kind, x, y, t, eraser=False):
        if kind == "down" or pid not in self.contacts:
            self.contacts[pid] = self.next_contact
            self.next_contact += 1
        contact = self.contacts[pid]
        if kind == "up":
            del self.contacts[pid]
        zone, data = self.scene.hit(x, y)
        device = ("pen_eraser" if eraser else ptype) if ptype == "pen" else "touch"
        raw = {"type": f"pointer{kind}", "pointerId": pid, "pointerType": ptype,
               "x": x, "y": y, "eraser": eraser, "timeStamp": t}
        msg = {"type": "pointer", "t": t, "event": {
            "contact": contact, "device": device, "phase": kind,
            "x": x, "y": y, "zone": zone, "t": t, "data": data}}
        self.steps.append({"kind": "pointer", "raw": raw, "expect": msg})
        self._collect(self.session.handle(msg))

    def speak(self, text, t):
        self.pending_text = text
        self.t_speech = t

    def silence(self, t):
        self.pending_text = ""
        self.t_speech = t


def make_roundtrip(dataset, pills):
    s = Script(dataset, pills)
    pill_y = {name: PILL_Y0 + i * PILL_STEP + PILL_H / 2
              for i, name in enumerate(pills)}

    def tap_bind(attr, title_y, title_x, t0):
        s.silence(t0 + 950)
        s.pointer("touch", 9, "down", title_x, title_y, t0)
        s.pointer("touch", 9, "move", title_x + 1, title_y, t0 + 600)
        s.pointer("touch", 1, "down", 100, pill_y[attr], t0 + 700)
        s.pointer("touch", 1, "up", 100, pill_y[attr], t0 + 780)
        s.pointer("touch", 9, "up", title_x + 1, title_y, t0 + 900)

    # A: hold the X title and tap the Genre pill -> bar chart
    tap_bind("Genre", 625, 560, 1000)
    # B: swipe up along the Y scale -> sort ascending by count
    s.pointer("touch", 1, "down", 245, 400, 2500)
    s.pointer("touch", 1, "up", 245, 340, 2620)
    # C: rebind X to Budget, then Y to Gross -> scatterplot
    tap_bind("Budget", 625, 560, 3000)
    tap_bind("Gross", 320, 215, 4200)
    # D: pen lasso around the two mid-range points -> select
    s.pointer("pen", 1, "down", 480, 200, 6000)
    s.pointer("pen", 1, "move", 680, 200, 6100)
    s.pointer("pen", 1, "move", 680, 390, 6200)
    s.pointer("pen", 1, "move", 480, 390, 6300)
    s.pointer("pen", 1, "move", 480, 200, 6400)
    s.pointer("pen", 1, "up", 480, 200, 6500)
    # E: push-to-talk on the modifier -> spoken filter
    s.speak("exclude others", 7900)
    s.pointer("touch", 9, "down", 100, 30, 7000)
    s.pointer("touch", 9, "move", 101, 30, 7600)
    s.pointer("touch", 9, "up", 101, 30, 7800)

    return {
        "pills": pills,
        "initial": s.initial,
        "steps": s.steps,
        "requests": s.requests,
    }


def main():
    dataset = load_dataset(TINY_CSV)
    pills = [a.name for a in dataset.attributes]
    OUT.mkdir(parents=True, exist_ok=True)
    with open(OUT / "snapshots.json", "w", encoding="utf-8") as fh:
        json.dump({"pills": pills, "snapshots": make_snapshots(dataset)}, fh, indent=1)

    fixture = make_roundtrip(dataset, pills)
    kinds = [r["kind"] for r in fixture["requests"]]
    print("request kinds:", kinds)
    assert kinds == ["bind", "void", "sort", "bind", "void", "bind", "void",
                     "select", "filter"], kinds
    final = [st for st in fixture["steps"] if st["kind"] == "snapshot"][-1]["state"]
    assert final["view"]["chart_type"] == "scatter"
    assert final["view"]["visible_count"] == 2, final["view"]["visible_count"]
    with open(OUT / "roundtrip.json", "w", encoding="utf-8") as fh:
        json.dump(fixture, fh, indent=1)
    print("checks passed; fixtures written to", OUT)


if __name__ == "__main__":
    main()
