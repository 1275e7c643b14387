"""Seeded generator of plausible client message streams, used by the
determinism tests: any generated stream must replay byte-identically."""

import random


def _zone(kind, name=None, index=None):
    return {"kind": kind, "name": name, "index": index}


UTTERANCES = [
    "Color by creative type",
    "Sort by worldwide gross in descending order",
    "Remove movies with an imdb rating under 8",
    "Remove all movies except action, adventure, and comedy",
    "exclude others",
    "remove others",
    "Worldwide gross and production budget",
    "Remove movies with worldwide gross under 200M",
    "keep imdb rating between 6 and 8",
    "Remove Drama",
    "switch to a stacked bar chart",
    "switch to a scatter plot",
    "Remove under 1200",
    "frobnicate the wibble",
    "",
]


class StreamBuilder:
    def __init__(self, rng: random.Random, attributes: list):
        self.rng = rng
        self.attributes = attributes
        self.t = 0.0
        self.msgs = []

    def _ptr(self, contact, device, phase, x, y, zone, data=None, dt=16.0):
        self.t += dt
        self.msgs.append({"type": "pointer", "t": self.t, "event": {
            "contact": contact, "device": device, "phase": phase,
            "x": x, "y": y, "zone": zone, "t": self.t, "data": data}})

    def tap(self, zone, device="touch"):
        x, y = self.rng.uniform(0, 800), self.rng.uniform(0, 600)
        self._ptr(1, device, "down", x, y, zone)
        self._ptr(1, device, "up", x, y, zone, dt=80.0)

    def hold(self, zone, device="touch"):
        x, y = self.rng.uniform(0, 800), self.rng.uniform(0, 600)
        self._ptr(9, device, "down", x, y, zone)
        self._ptr(9, device, "move", x + 1, y, zone, dt=600.0)
        return (9, device, x, y, zone)

    def release(self, grip):
        contact, device, x, y, zone = grip
        self._ptr(contact, device, "up", x, y, zone, dt=120.0)

    def speech(self, text):
        grip = self.hold(_zone("modifier"))
        self.release(grip)
        self.t += 400.0
        self.msgs.append({"type": "transcript", "t": self.t, "text": text})

    def bind_by_voice(self, channel):
        zone = {"x": _zone("x_title"), "y": _zone("y_title"),
                "color": _zone("legend_title")}[channel]
        grip = self.hold(zone)
        self.release(grip)
        self.t += 400.0
        attr = self.rng.choice(self.attributes)
        self.msgs.append({"type": "transcript", "t": self.t, "text": attr.lower()})

    def write(self):
        zone = self.rng.choice([_zone("x_title"), _zone("y_title")])
        grip = self.hold(zone)
        attr = self.rng.choice(self.attributes)
        self.t += 300.0
        self.msgs.append({"type": "write", "t": self.t, "texts": [attr.lower()]})
        self.release(grip)

    def swipe(self):
        zone, direction = self.rng.choice([
            (_zone("x_scale"), (60, 0)), (_zone("x_scale"), (-60, 0)),
            (_zone("y_scale"), (0, -60)), (_zone("y_scale"), (0, 60))])
        x, y = 300.0, 500.0
        self._ptr(1, "touch", "down", x, y, zone)
        self._ptr(1, "touch", "up", x + direction[0], y + direction[1], zone, dt=120.0)

    def scale_drag(self, device):
        zone = self.rng.choice([_zone("x_scale"), _zone("y_scale")])
        x, y = 200.0, 500.0
        v0 = self.rng.uniform(0, 5e8)
        v1 = v0 + self.rng.uniform(1e6, 5e8)
        self._ptr(1, device, "down", x, y, zone, data=v0)
        self._ptr(1, device, "move", x + 40, y, zone, data=(v0 + v1) / 2, dt=300.0)
        self._ptr(1, device, "move", x + 80, y, zone, data=v1, dt=90.0)
        self._ptr(1, device, "up", x + 80, y, zone, data=v1, dt=40.0)

    def lasso(self):
        cx = self.rng.uniform(0, 6e8)
        cy = self.rng.uniform(0, 10)
        pts = [(cx - 1e7, cy - 1), (cx + 1e7, cy - 1), (cx + 1e7, cy + 1),
               (cx - 1e7, cy + 1)]
        zone = _zone("canvas")
        self._ptr(1, "pen", "down", 100, 100, zone, data=list(pts[0]))
        for i, p in enumerate(pts[1:], start=1):
            self._ptr(1, "pen", "move", 100 + i * 30, 100, zone, data=list(p), dt=60.0)
        self._ptr(1, "pen", "up", 100, 100, zone, data=list(pts[0]), dt=60.0)

    def erase(self):
        kind, names = self.rng.choice([
            ("mark", ["bar:Drama", "bar:Comedy"]),
            ("mark", ["pt:3", "pt:7", "pt:11"]),
            ("legend_item", ["R"]),
            ("y_title", [self.rng.choice(self.attributes)]),
        ])
        zones = [_zone(kind, n) for n in names]
        self._ptr(1, "pen_eraser", "down", 50, 50, zones[0])
        for i, z in enumerate(zones[1:], start=1):
            self._ptr(1, "pen_eraser", "move", 50 + i * 10, 50, z, dt=40.0)
        self._ptr(1, "pen_eraser", "up", 90, 50, zones[-1], dt=40.0)

    def pinch(self):
        zone = _zone("canvas")
        self._ptr(1, "touch", "down", 300, 300, zone, data=[1e8, 5.0])
        self._ptr(2, "touch", "down", 400, 300, zone, data=[2e8, 5.0], dt=30.0)
        self._ptr(2, "touch", "move", 450, 300, zone, data=[2.5e8, 5.0], dt=60.0)
        self._ptr(1, "touch", "up", 300, 300, zone, data=[1e8, 5.0], dt=60.0)
        self._ptr(2, "touch", "up", 450, 300, zone, data=[2.5e8, 5.0], dt=30.0)

    def state_request(self):
        self.t += 50.0
        self.msgs.append({"type": "state_request", "t": self.t})


def random_client_messages(seed: int, attributes: list, steps: int = 12) -> list:
    rng = random.Random(seed)
    b = StreamBuilder(rng, list(attributes))
    b.bind_by_voice("x")  # give most later steps something to act on
    actions = [
        lambda: b.tap(_zone("pill", rng.choice(b.attributes))),
        lambda: b.tap(_zone("mark", rng.choice(["bar:Drama", "pt:2", "bin:0"]))),
        lambda: b.tap(_zone("canvas")),
        lambda: b.speech(rng.choice(UTTERANCES)),
        lambda: b.bind_by_voice(rng.choice(["x", "y", "color"])),
        b.write,
        b.swipe,
        lambda: b.scale_drag(rng.choice(["touch", "pen"])),
        b.lasso,
        b.erase,
        b.pinch,
        b.state_request,
    ]
    for _ in range(steps):
        rng.choice(actions)()
    b.state_request()
    return b.msgs
