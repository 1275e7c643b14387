"""Build the committed walkthrough trace (data/golden_trace.jsonl) and its
frozen expectations (data/golden_expected.json).

The trace drives a live session through the full analysis walkthrough:
genre bar chart, sorting, grouped bars, ruler details, erasing, writing,
range and lasso selection, speech filters, and a final parallel
coordinates plot. A state_request marks each of the 14 checkpoints.

Expected visible-row counts are NOT taken from the engine: they come from
a naive row scan over the CSV, so the frozen file is an independent
oracle for replay tests.
"""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from mmviz import Session, load_dataset  # noqa: E402
from mmviz.session import write_trace  # noqa: E402

DATA = ROOT / "data"
MOD = {"kind": "modifier", "name": None, "index": None}


def zone(kind, name=None, index=None):
    return {"kind": kind, "name": name, "index": index}


class Driver:
    """Feed a session scripted pointer/speech messages on a moving clock."""

    def __init__(self, session: Session):
        self.s = session
        self.t = 1000.0
        self.next_contact = 1
        self.checkpoints = []

    def _cid(self) -> int:
        self.next_contact += 1
        return self.next_contact

    def send(self, msg: dict) -> list[dict]:
        return self.s.handle(msg)

    def ptr(self, contact, device, phase, x, y, z, data=None) -> list[dict]:
        return self.send({"type": "pointer", "t": self.t, "event": {
            "contact": contact, "device": device, "phase": phase,
            "x": x, "y": y, "zone": z, "t": self.t, "data": data}})

    def feedback(self, replies: list[dict]) -> list[dict]:
        return [m["message"] for m in replies if m.get("type") == "feedback"]

    def expect(self, replies: list[dict], kind: str, step: str) -> None:
        msgs = self.feedback(replies)
        assert msgs, f"{step}: no feedback"
        assert msgs[-1]["kind"] == kind, f"{step}: {msgs[-1]}"

    # -- gesture idioms ----------------------------------------------------

    def tap(self, z, x, y, device="touch") -> list[dict]:
        c = self._cid()
        out = self.ptr(c, device, "down", x, y, z)
        self.t += 80
        out += self.ptr(c, device, "up", x, y, z)
        self.t += 200
        return out

    def hold_start(self, z, x, y) -> tuple[int, list[dict]]:
        c = self._cid()
        out = self.ptr(c, "touch", "down", x, y, z)
        self.t += 600
        out += self.ptr(c, "touch", "move", x, y, z)
        self.t += 50
        return c, out

    def hold_end(self, contact, z, x, y) -> list[dict]:
        out = self.ptr(contact, "touch", "up", x, y, z)
        self.t += 200
        return out

    def swipe(self, z, x0, y0, x1, y1, device="touch") -> list[dict]:
        c = self._cid()
        out = self.ptr(c, device, "down", x0, y0, z)
        self.t += 120
        out += self.ptr(c, device, "up", x1, y1, z)
        self.t += 200
        return out

    def drag(self, z, points, device="touch") -> list[dict]:
        """points: [(x, y, data), ...]; paced so the stream becomes a drag."""
        c = self._cid()
        x, y, data = points[0]
        out = self.ptr(c, device, "down", x, y, z, data)
        self.t += 300
        for x, y, data in points[1:]:
            out += self.ptr(c, device, "move", x, y, z, data)
            self.t += 90
        out += self.ptr(c, device, "up", x, y, z, data)
        self.t += 200
        return out

    def lasso(self, corners) -> list[dict]:
        """corners: data-space rectangle corners [(dx, dy), ...]."""
        c = self._cid()
        canvas = zone("canvas")
        # view coords only need to clear the tap threshold
        coords = [(400, 400), (520, 400), (520, 500), (400, 500), (400, 400)]
        pts = list(corners) + [corners[0]]
        out = self.ptr(c, "pen", "down", *coords[0], canvas, list(pts[0]))
        self.t += 120
        for (vx, vy), d in zip(coords[1:], pts[1:]):
            out += self.ptr(c, "pen", "move", vx, vy, canvas, list(d))
            self.t += 90
        out += self.ptr(c, "pen", "up", *coords[0], canvas, list(pts[0]))
        self.t += 200
        return out

    def erase(self, zones) -> list[dict]:
        c = self._cid()
        out = self.ptr(c, "pen_eraser", "down", 500, 400, zones[0])
        for i, z in enumerate(zones[1:], start=1):
            self.t += 60
            out += self.ptr(c, "pen_eraser", "move", 500 + 5 * i, 400, z)
        self.t += 60
        out += self.ptr(c, "pen_eraser", "up", 500 + 5 * len(zones), 400, zones[-1])
        self.t += 200
        return out

    def speech(self, text, hold_zone=None, hold_xy=(75, 700)) -> list[dict]:
        z = hold_zone or MOD
        c, out = self.hold_start(z, *hold_xy)
        out += self.hold_end(c, z, *hold_xy)
        out += self.send({"type": "transcript", "t": self.t, "text": text})
        self.t += 300
        return out

    def checkpoint(self, label: str) -> dict:
        replies = self.send({"type": "state_request", "t": self.t})
        self.t += 100
        snap = replies[-1]["state"]
        self.checkpoints.append({"label": label, "state": snap})
        return snap


# -- independent visibility oracle -------------------------------------------

def load_rows(path: Path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        raw = list(csv.DictReader(fh))
    rows = []
    for r in raw:
        row = {}
        for k, v in r.items():
            if v == "":
                row[k] = None
            else:
                try:
                    row[k] = float(v) if "." in v else int(v)
                except ValueError:
                    row[k] = v
        rows.append(row)
    return rows


def naive_visible(rows: list[dict], filters: list[dict]) -> list[int]:
    out = []
    for rid, row in enumerate(rows):
        ok = True
        for f in filters:
            if f["type"] == "category":
                if row[f["attribute"]] in f["excluded"]:
                    ok = False
            elif f["type"] == "range":
                v = row[f["attribute"]]
                inside = v is not None
                if inside and f["lo"] is not None:
                    inside = v > f["lo"] if f["lo_open"] else v >= f["lo"]
                if inside and f["hi"] is not None:
                    inside = v < f["hi"] if f["hi_open"] else v <= f["hi"]
                if f["keep"] != inside:
                    ok = False
            elif f["type"] == "ids":
                if f["keep"] != (rid in set(f["ids"])):
                    ok = False
        if ok:
            out.append(rid)
    return out


# -- the walkthrough ----------------------------------------------------------

def build() -> None:
    csv_path = DATA / "movies.csv"
    dataset = load_dataset(csv_path.read_text(encoding="utf-8"))
    s = Session(dataset)
    d = Driver(s)
    x_title = lambda name=None: zone("x_title", name)  # noqa: E731
    y_title = lambda name=None: zone("y_title", name)  # noqa: E731

    # 1. bind Major Genre to X while holding the axis title -> bar chart
    c, _ = d.hold_start(x_title(), 550, 730)
    d.expect(d.tap(zone("pill", "Major Genre"), 60, 180), "success", "bind genre")
    d.hold_end(c, x_title(), 550, 730)
    d.checkpoint("genre_bar")

    # 2. swipe down on the Y axis -> sort bars descending by count
    d.expect(d.swipe(zone("y_scale"), 170, 280, 170, 380), "success", "sort by count")
    d.checkpoint("sorted_by_count")

    # 3. point on the Y title and name two measures -> grouped bars
    d.expect(d.speech("Worldwide gross and production budget",
                      y_title(), (40, 350)), "success", "bind measures")
    d.checkpoint("grouped_bar")

    # 4. point on the Y title and sort by one measure
    d.expect(d.speech("Sort by worldwide gross in descending order",
                      y_title("Worldwide Gross"), (40, 350)), "success", "sort by gross")
    d.checkpoint("sorted_by_gross")

    # 5. finger ruler along the Y scale -> per-position details
    replies = d.drag(zone("y_scale"), [
        (170, 200, 180e6), (170, 260, 150e6), (170, 320, 120e6), (170, 380, 100e6)])
    assert any(m.get("type") == "detail" for m in replies), "ruler: no details"
    d.checkpoint("ruler_details")

    # 6. erase the bars of genres whose mean gross is under the 100M ruler
    view = s.state.view()
    low = sorted({m.channels["category"] for m in view.marks
                  if m.channels["series"] == "Worldwide Gross"
                  and m.channels["value"] < 100e6})
    assert len(low) == 6, low
    d.expect(d.erase([zone("mark", f"bar:{g}/Worldwide Gross") for g in low]),
             "success", "erase low genres")
    d.checkpoint("high_gross_genres")

    # 7. erase Production Budget from the Y title, then write "budget" on X
    d.expect(d.erase([y_title("Production Budget")]), "success", "erase budget from y")
    c, _ = d.hold_start(x_title("Major Genre"), 550, 730)
    d.expect(d.send({"type": "write", "t": d.t, "texts": ["budget"]}),
             "success", "write budget")
    d.hold_end(c, x_title("Production Budget"), 550, 730)
    d.checkpoint("budget_scatter")

    # 8. pen range-select budgets under 100M, then keep only the selection
    d.expect(d.drag(zone("x_scale"), [
        (210, 690, 0.0), (420, 690, 40e6), (600, 690, 80e6), (700, 690, 99.995e6)],
        device="pen"), "success", "range select")
    d.expect(d.speech("exclude others"), "success", "exclude others")
    d.checkpoint("low_budget_only")

    # 9. speech range filter on gross
    d.expect(d.speech("Remove movies with worldwide gross under 200M"),
             "success", "remove low gross")
    d.checkpoint("high_gross_only")

    # 10. color the points by creative type
    d.expect(d.speech("Color by creative type"), "success", "color by creative type")
    d.checkpoint("colored_by_creative_type")

    # 11. erase every creative type but the top three from the legend
    keep = {"Contemporary Fiction", "Kids Fiction", "Science Fiction"}
    legend = list(s.state.view().legend)
    drop = [v for v in legend if v not in keep]
    assert drop and keep <= set(legend), legend
    d.expect(d.erase([zone("legend_item", v) for v in drop]), "success", "erase legend")
    assert set(s.state.view().legend) == keep
    d.checkpoint("three_creative_types")

    # 12. recolor by content rating and erase the R entry
    d.expect(d.speech("Color by content rating"), "success", "color by rating")
    d.expect(d.erase([zone("legend_item", "R")]), "success", "erase R")
    d.checkpoint("no_r_rated")

    # 13. modifier-held double lasso, then remove everything else
    marks = sorted(s.state.view().marks, key=lambda m: m.channels["x"])
    low_budget = marks[:6]
    top_gross = sorted(marks, key=lambda m: -m.channels["y"])[:3]

    def rect(ms):
        xs = [m.channels["x"] for m in ms]
        ys = [m.channels["y"] for m in ms]
        pad_x = (max(xs) - min(xs)) * 0.05 + 1e5
        pad_y = (max(ys) - min(ys)) * 0.05 + 1e5
        return [(min(xs) - pad_x, min(ys) - pad_y), (max(xs) + pad_x, min(ys) - pad_y),
                (max(xs) + pad_x, max(ys) + pad_y), (min(xs) - pad_x, max(ys) + pad_y)]

    c, _ = d.hold_start(MOD, 75, 700)
    d.expect(d.lasso(rect(low_budget)), "success", "lasso 1")
    d.expect(d.lasso(rect(top_gross)), "success", "lasso 2")
    d.hold_end(c, MOD, 75, 700)
    d.expect(d.send({"type": "transcript", "t": d.t, "text": "remove others"}),
             "success", "remove others")
    d.t += 300
    d.checkpoint("shortlist")

    # 14. erase the X binding and stack four more measures -> parallel coords
    d.expect(d.erase([x_title("Production Budget")]), "success", "erase x")
    d.expect(d.speech("Add budget, running time, rotten tomatoes and imdb rating",
                      y_title("Worldwide Gross"), (40, 350)), "success", "add measures")
    snap = d.checkpoint("parallel_coordinates")
    assert snap["view"]["chart_type"] == "parallel_coordinates", snap["view"]["chart_type"]

    # freeze expectations with the independent row scan
    rows = load_rows(csv_path)
    expected = []
    for cp in d.checkpoints:
        state = cp["state"]
        visible = naive_visible(rows, state["spec"]["filters"])
        assert len(visible) == state["view"]["visible_count"], cp["label"]
        expected.append({
            "label": cp["label"],
            "chart_type": state["view"]["chart_type"],
            "x": state["spec"]["x"],
            "y": state["spec"]["y"],
            "color": state["spec"]["color"],
            "sort": state["spec"]["sort"],
            "filters": state["spec"]["filters"],
            "visible_count": len(visible),
            "revision": state["revision"],
        })

    write_trace(s.trace, str(DATA / "golden_trace.jsonl"))
    with open(DATA / "golden_expected.json", "w", encoding="utf-8") as fh:
        json.dump({"dataset_hash": dataset.source_hash, "checkpoints": expected},
                  fh, indent=2)
        fh.write("\n")
    for e in expected:
        print(f"{e['label']:>24}  {e['chart_type']:>20}  visible={e['visible_count']}")


if __name__ == "__main__":
    build()
