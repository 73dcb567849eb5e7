"""Small shared helpers for deterministic numeric reporting."""

from __future__ import annotations

import json
from typing import Any


def round12(x: float) -> float:
    """Round to 12 significant digits (report-stable float formatting)."""
    return float(f"{float(x):.12g}")


def round_floats(obj: Any) -> Any:
    """Recursively round every float in a JSON-style structure."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return round12(obj)
    if isinstance(obj, dict):
        return {k: round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    return obj


def json_bytes(obj: Any) -> bytes:
    """Deterministic JSON encoding: sorted keys, rounded floats, no spaces."""
    return json.dumps(round_floats(obj), sort_keys=True, separators=(",", ":")).encode()
