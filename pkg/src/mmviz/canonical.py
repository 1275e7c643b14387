"""Canonical JSON: sorted keys, compact separators, stable float text.

Snapshot equality is byte equality, so every float is rounded to 12
significant digits before serialization.
"""

from __future__ import annotations

import json
import math


def _stabilize(obj):
    if isinstance(obj, float):
        if math.isfinite(obj):
            if obj == int(obj) and abs(obj) < 1e15:
                return int(obj)
            return float(f"{obj:.12g}")
        raise ValueError("non-finite float in canonical payload")
    if isinstance(obj, dict):
        return {str(k): _stabilize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stabilize(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_stabilize(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def loads(text: str):
    return json.loads(text)
