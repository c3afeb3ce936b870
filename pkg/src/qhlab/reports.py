"""Deterministic report envelopes and JSON/CSV emission.

JSON is the canonical format: keys are emitted in sorted order and every
float is printed with 17 significant digits, so serialize -> parse ->
serialize is byte-identical and doubles round-trip exactly.  CSV is a
flat projection of the payload for spreadsheet inspection.
"""

from __future__ import annotations

import dataclasses
import io
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np


def payload_of(obj):
    """Recursively convert report objects to plain JSON-able values."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {
            f.name: payload_of(getattr(obj, f.name))
            for f in dataclasses.fields(obj)
        }
    if isinstance(obj, dict):
        return {str(k): payload_of(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [payload_of(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [payload_of(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def format_float(x: float) -> str:
    """Canonical 17-significant-digit emission; non-finite become strings."""
    if math.isnan(x):
        return '"NaN"'
    if math.isinf(x):
        return '"Infinity"' if x > 0 else '"-Infinity"'
    return format(x, ".17g")


def dumps_canonical(obj) -> str:
    """Deterministic JSON: sorted keys, canonical float emission."""
    out = io.StringIO()
    _write(obj, out)
    return out.getvalue()


def _write(obj, out) -> None:
    if obj is None:
        out.write("null")
    elif obj is True:
        out.write("true")
    elif obj is False:
        out.write("false")
    elif isinstance(obj, float):
        out.write(format_float(obj))
    elif isinstance(obj, int):
        out.write(str(obj))
    elif isinstance(obj, str):
        out.write(json.dumps(obj))
    elif isinstance(obj, dict):
        out.write("{")
        for i, key in enumerate(sorted(obj)):
            if i:
                out.write(",")
            out.write(json.dumps(str(key)))
            out.write(":")
            _write(obj[key], out)
        out.write("}")
    elif isinstance(obj, (list, tuple)):
        out.write("[")
        for i, item in enumerate(obj):
            if i:
                out.write(",")
            _write(item, out)
        out.write("]")
    else:
        raise TypeError(f"cannot serialize object of type {type(obj).__name__}")


@dataclass(frozen=True)
class ReportEnvelope:
    """Versioned wrapper around one command's payload."""

    version: str
    config: dict
    timestamp: str
    payload: dict
    summary: dict = field(default_factory=dict)


def make_envelope(version: str, config: dict, payload, summary=None) -> ReportEnvelope:
    payload = payload_of(payload)
    return ReportEnvelope(
        version=version,
        config=payload_of(config),
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        payload=payload,
        summary=payload_of(summary) if summary is not None else _summarize(payload),
    )


def _collect_verdicts(node, out) -> None:
    if isinstance(node, dict):
        if "verdict" in node:
            out.append(str(node["verdict"]))
        for v in node.values():
            _collect_verdicts(v, out)
    elif isinstance(node, list):
        for v in node:
            _collect_verdicts(v, out)


def _summarize(payload) -> dict:
    verdicts = []
    _collect_verdicts(payload, verdicts)
    return {
        "verdicts": len(verdicts),
        "failures": sum(1 for v in verdicts if v == "FAIL"),
    }


def has_failure(envelope: ReportEnvelope) -> bool:
    return int(envelope.summary.get("failures", 0)) > 0


def _flat_rows(node, prefix=""):
    if isinstance(node, dict):
        for key in sorted(node):
            yield from _flat_rows(node[key], f"{prefix}{key}.")
    elif isinstance(node, list):
        for i, item in enumerate(node):
            yield from _flat_rows(item, f"{prefix}{i}.")
    else:
        yield prefix[:-1], node


def _csv_cell(value) -> str:
    if isinstance(value, float):
        text = format(value, ".17g")
    else:
        text = "" if value is None else str(value)
    if any(ch in text for ch in ',"\n'):
        text = '"' + text.replace('"', '""') + '"'
    return text


def emit_report(envelope: ReportEnvelope, fmt: str = "json") -> bytes:
    """Serialize an envelope; JSON canonical, CSV flat projection."""
    if fmt == "json":
        body = dumps_canonical(payload_of(envelope))
        return (body + "\n").encode("utf-8")
    if fmt == "csv":
        payload = envelope.payload
        lines = []
        steps = payload.get("steps") if isinstance(payload, dict) else None
        if isinstance(steps, list) and steps and isinstance(steps[0], dict):
            header = ["name", "anchor", "value", "verdict", "note"]
            lines.append(",".join(header))
            for step in steps:
                lines.append(
                    ",".join(_csv_cell(step.get(col)) for col in header)
                )
        else:
            lines.append("key,value")
            for key, value in _flat_rows(payload):
                lines.append(f"{_csv_cell(key)},{_csv_cell(value)}")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format: {fmt!r}")
