"""Deterministic multimodal interaction engine for tablet-style visual
data analysis: gestures, speech commands, fusion, and a chart-spec state
machine behind a session protocol."""

from .chartspec import ChartSpec, ChartType, Selection, SortState, compute_view, validate
from .dataset import Attribute, AttributeKind, Dataset, load_dataset
from .executor import AppState, FeedbackMessage, apply
from .fusion import FusionEngine, OperationRequest, check_pattern_table, load_patterns
from .gestures import GestureConfig, GestureRecognizer, PointerEvent, Zone, ZoneKind
from .nlparser import Lexicon, ParsedCommand, ParseFailure, build_lexicon, parse
from .session import Session, SessionConfig, classify_trace, read_trace, replay, write_trace

__all__ = [
    "AppState", "Attribute", "AttributeKind", "ChartSpec", "ChartType",
    "Dataset", "FeedbackMessage", "FusionEngine", "GestureConfig",
    "GestureRecognizer", "Lexicon", "OperationRequest", "ParseFailure",
    "ParsedCommand", "PointerEvent", "Selection", "Session", "SessionConfig",
    "SortState", "Zone", "ZoneKind", "apply", "build_lexicon",
    "check_pattern_table", "classify_trace", "compute_view", "load_dataset",
    "load_patterns", "parse", "read_trace", "replay", "validate", "write_trace",
]

__version__ = "0.1.0"
