"""
Report writer for the CodeGauging System.
Serializes analysis results as deterministic JSON, CSV or plain text.
"""
import json
import logging
from fractions import Fraction
from typing import Any, Dict, List

import jsonschema
import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

REPORT_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": ["schema_version", "command", "result"],
    "properties": {
        "schema_version": {"type": "integer"},
        "command": {"type": "string"},
        "input": {"type": ["string", "null"]},
        "parameters": {"type": "object"},
        "result": {"type": "object"},
    },
}


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def emit_report(analysis: Dict[str, Any], indent: int = 2) -> str:
    """JSON text with sorted keys; identical input gives identical bytes."""
    return json.dumps(analysis, indent=indent, sort_keys=True, default=_jsonable) + "\n"


def validate_report(report: Dict[str, Any], schema: Dict[str, Any] = REPORT_SCHEMA) -> List[str]:
    """Messages from checking `report` against a Draft 7 JSON schema; empty when valid."""
    errors = jsonschema.Draft7Validator(schema).iter_errors(report)
    return [e.message for e in sorted(errors, key=lambda e: (tuple(map(str, e.absolute_path)), e.message))]


def emit_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, lineterminator="\n")


def _flatten(prefix: str, value: Any, out: List[str]) -> None:
    if isinstance(value, dict):
        for key in sorted(value):
            _flatten(f"{prefix}.{key}" if prefix else str(key), value[key], out)
    elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        for i, item in enumerate(value):
            _flatten(f"{prefix}[{i}]", item, out)
    else:
        out.append(f"{prefix}: {json.dumps(value, sort_keys=True, default=_jsonable)}")


def emit_text(report: Dict[str, Any]) -> str:
    """One "dotted.key: value" line per leaf, in sorted key order."""
    lines: List[str] = []
    _flatten("", report, lines)
    return "\n".join(lines) + "\n" if lines else ""
