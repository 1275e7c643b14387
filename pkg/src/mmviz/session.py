"""Session boundary: the per-session engine pipeline, the newline-delimited
JSON protocol, trace recording/replay, and outcome classification."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from . import canonical
from .dataset import Dataset, load_dataset
from .executor import AppState, affordances, apply
from .fusion import FusionEngine, load_patterns
from .gestures import GestureConfig, GestureRecognizer, PointerEvent
from .nlparser import build_lexicon, load_keywords

try:  # the server is optional; the library works without fastapi
    from fastapi import FastAPI, WebSocket, WebSocketDisconnect
except ImportError:  # pragma: no cover
    FastAPI = WebSocket = WebSocketDisconnect = None


@dataclass
class SessionConfig:
    dataset_path: str | None = None
    dataset_format: str = "csv"
    kind_overrides: dict = field(default_factory=dict)
    keywords_path: str | None = None
    patterns_path: str | None = None
    trace_dir: str | None = None
    gestures: GestureConfig = field(default_factory=GestureConfig)

    @staticmethod
    def from_file(path: str) -> "SessionConfig":
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        gestures = GestureConfig(**raw.get("gestures", {}))
        for key in raw:
            if key not in ("dataset_path", "dataset_format", "kind_overrides",
                           "keywords_path", "patterns_path", "trace_dir", "gestures"):
                raise ValueError(f"unknown config field: {key}")
        if "dataset_path" not in raw:
            raise ValueError("config missing required field: dataset_path")
        return SessionConfig(
            dataset_path=raw["dataset_path"],
            dataset_format=raw.get("dataset_format", "csv"),
            kind_overrides=raw.get("kind_overrides", {}),
            keywords_path=raw.get("keywords_path"),
            patterns_path=raw.get("patterns_path"),
            trace_dir=raw.get("trace_dir"),
            gestures=gestures,
        )

    def load(self) -> Dataset:
        text = Path(self.dataset_path).read_text(encoding="utf-8")
        return load_dataset(text, fmt=self.dataset_format, kind_overrides=self.kind_overrides)


class Session:
    """One engine pipeline: recognizer -> fusion -> executor.

    Messages must be handled in arrival order; sessions are independent.
    """

    def __init__(self, dataset: Dataset, config: SessionConfig | None = None):
        self.config = config or SessionConfig()
        self.dataset = dataset
        keywords = load_keywords(self.config.keywords_path)
        self.lexicon = build_lexicon(dataset, keywords)
        self.recognizer = GestureRecognizer(self.config.gestures)
        self.fusion = FusionEngine(self.lexicon)
        self.state = AppState(dataset=dataset)
        self.trace: list[dict] = []

    # -- protocol ----------------------------------------------------------

    def handle(self, msg: dict) -> list[dict]:
        """Process one client message; always returns >= 1 server message."""
        self.trace.append({"dir": "client", "t": msg.get("t", 0), "msg": msg})
        out = self._dispatch(msg)
        if not out:
            out = [self._affordances_msg()]
        for server_msg in out:
            self.trace.append({"dir": "server", "t": msg.get("t", 0), "msg": server_msg})
        return out

    def _dispatch(self, msg: dict) -> list[dict]:
        mtype = msg.get("type")
        if mtype == "pointer":
            return self._on_pointer(msg)
        if mtype == "transcript":
            return self._on_requests(
                self.fusion.on_transcript(msg.get("text", ""), msg.get("alternatives")))
        if mtype == "write":
            requests, suggestions = self.fusion.on_write_candidates(msg.get("texts", []))
            out = self._on_requests(requests)
            if requests or suggestions or not out:
                out.insert(0, {"type": "suggestions",
                               "attributes": [[n, s] for n, s in suggestions]})
            return out
        if mtype == "load_dataset":
            wanted = msg.get("hash")
            if wanted and wanted != self.dataset.source_hash:
                return [{"type": "error", "code": "dataset_mismatch",
                         "text": f"expected dataset {wanted}, have {self.dataset.source_hash}"}]
            return [self._snapshot_msg()]
        if mtype == "state_request":
            return [self._snapshot_msg()]
        return [{"type": "error", "code": "unknown_message_type",
                 "text": f"unknown message type {mtype!r}"}]

    def _on_pointer(self, msg: dict) -> list[dict]:
        event = PointerEvent.from_dict(msg["event"])
        out: list[dict] = []
        holds_before = dict(self.fusion.ctx.holds)
        ptt_before = self.fusion.ctx.ptt
        gestures = self.recognizer.ingest(event)
        for gesture in gestures:
            out.extend(self._on_requests(self.fusion.on_gesture(gesture)))
        if self.fusion.ctx.holds != holds_before or self.fusion.ctx.ptt != ptt_before:
            out.append(self._affordances_msg())
        return out

    def _on_requests(self, requests: list) -> list[dict]:
        out: list[dict] = []
        for request in requests:
            before = self.state.revision
            self.state, feedback, detail = apply(self.state, request)
            out.append({"type": "feedback", "message": feedback.to_dict(),
                        "request": request.to_dict()})
            if detail is not None:
                out.append({"type": "detail", "payload": detail})
            if self.state.revision != before:
                out.append(self._snapshot_msg())
        return out

    def _snapshot_msg(self) -> dict:
        return {"type": "snapshot", "state": self.state.snapshot()}

    def _affordances_msg(self) -> dict:
        return {"type": "affordances",
                "hints": affordances(self.state, self.fusion.ctx).to_dict()}


# -- traces ------------------------------------------------------------------

def write_trace(records: list[dict], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(canonical.dumps(record) + "\n")


def read_trace(path: str) -> list[dict]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for i, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise ValueError(f"malformed trace line {i}: {exc.msg}") from exc
    return records


@dataclass
class ReplayResult:
    snapshots: list  # every snapshot state emitted, in order
    server_messages: list
    divergences: list  # [{"index", "expected", "actual"}, ...]

    @property
    def final_snapshot(self) -> dict | None:
        return self.snapshots[-1] if self.snapshots else None


def replay(trace: list[dict], dataset: Dataset, config: SessionConfig | None = None) -> ReplayResult:
    """Re-run a trace's client messages and diff against recorded output."""
    session = Session(dataset, config)
    produced: list[dict] = []
    for record in trace:
        if record.get("dir") != "client":
            continue
        produced.extend(session.handle(record["msg"]))
    expected = [r["msg"] for r in trace if r.get("dir") == "server"]
    divergences = []
    for i in range(max(len(expected), len(produced))):
        exp = canonical.dumps(expected[i]) if i < len(expected) else None
        act = canonical.dumps(produced[i]) if i < len(produced) else None
        if expected and exp != act:
            divergences.append({"index": i, "expected": exp, "actual": act})
    snapshots = [m["state"] for m in produced if m.get("type") == "snapshot"]
    return ReplayResult(snapshots=snapshots, server_messages=produced,
                        divergences=divergences if expected else [])


_ERROR_BUCKETS = {
    "parse_incomplete": "incomplete_command",
    "pen_in_panel": "pen_in_panel",
    "transcript_while_idle": "transcript_while_idle",
    "drop_outside_target": "drop_outside_target",
    "unsupported_interaction": "unsupported_interaction",
}


def classify_trace(trace: list[dict], dataset: Dataset, config: SessionConfig | None = None) -> dict:
    """Count per-outcome feedback produced when replaying a trace."""
    result = replay(trace, dataset, config)
    counts = {
        "success": 0,
        "void": 0,
        "invalid_operation": 0,
        "unsupported_interaction": 0,
        "incomplete_command": 0,
        "pen_in_panel": 0,
        "transcript_while_idle": 0,
        "drop_outside_target": 0,
        "other_error": 0,
    }
    for msg in result.server_messages:
        if msg.get("type") != "feedback":
            continue
        kind = msg["message"]["kind"]
        code = msg["message"].get("code", "")
        if kind == "success":
            counts["success"] += 1
        elif kind == "void":
            if code == "transcript_while_idle":
                counts["transcript_while_idle"] += 1
            else:
                counts["void"] += 1
        else:
            if code.startswith("invalid_operation"):
                counts["invalid_operation"] += 1
            else:
                counts[_ERROR_BUCKETS.get(code, "other_error")] += 1
    return counts


# -- server ------------------------------------------------------------------

def create_app(config: SessionConfig):
    """FastAPI app exposing one websocket session per connection."""
    if FastAPI is None:
        raise RuntimeError("fastapi is required for the session server")

    dataset = config.load()
    app = FastAPI(title="mmviz session server")
    app.state.patterns = load_patterns(config.patterns_path)
    counter = {"n": 0}

    @app.get("/healthz")
    def healthz():
        return {"ok": True, "dataset_hash": dataset.source_hash}

    @app.websocket("/session")
    async def session_socket(ws: WebSocket):
        await ws.accept()
        session = Session(dataset, config)
        counter["n"] += 1
        session_id = counter["n"]
        try:
            while True:
                raw = await ws.receive_text()
                try:
                    msg = json.loads(raw)
                except json.JSONDecodeError:
                    await ws.send_text(canonical.dumps(
                        {"type": "error", "code": "bad_json", "text": "unparseable message"}))
                    continue
                for out in session.handle(msg):
                    await ws.send_text(canonical.dumps(out))
        except WebSocketDisconnect:
            pass
        finally:
            if config.trace_dir:
                Path(config.trace_dir).mkdir(parents=True, exist_ok=True)
                write_trace(session.trace,
                            str(Path(config.trace_dir) / f"session-{session_id}.jsonl"))

    return app
