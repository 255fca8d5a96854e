"""Deterministic JSON rendering for reports.

Reports serialize with sorted keys and floats rounded to 6 significant digits
so golden outputs are stable across platforms; raw mode skips the rounding.
"""
from __future__ import annotations

import json

__all__ = ["render", "round_floats"]

SIG_DIGITS = 6


def round_floats(value, sig: int = SIG_DIGITS):
    """Recursively round every float in a JSON-like structure to sig digits."""
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        return float(f"{value:.{sig}g}")
    if isinstance(value, dict):
        return {k: round_floats(v, sig) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_floats(v, sig) for v in value]
    return value


def render(payload: dict, raw: bool = False) -> str:
    body = payload if raw else round_floats(payload)
    return json.dumps(body, sort_keys=True, indent=2) + "\n"
