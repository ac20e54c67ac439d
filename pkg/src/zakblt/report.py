"""CSV / JSON-lines emission with round-trip-exact float formatting."""
from __future__ import annotations

import json
import math

import numpy as np

FLOAT_FORMAT = ".17g"
TAIL_HEADER = ("R", "L", "time_tail", "freq_tail", "lhs", "normalized", "flags")


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, FLOAT_FORMAT)
    if isinstance(value, (tuple, list)):
        return "|".join(str(v) for v in value)
    return str(value)


def _json_value(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        # JSON has no inf/nan literals
        return json.dumps(fmt(v)) if not math.isfinite(v) else fmt(v)
    if isinstance(value, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{_json_value(v)}" for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_json_value(v) for v in value) + "]"
    return json.dumps(str(value))


def json_line(record: dict) -> str:
    return _json_value(record)


def csv_line(values) -> str:
    return ",".join(fmt(v) for v in values)


def csv_table(header, rows) -> str:
    lines = [",".join(header)]
    lines.extend(csv_line(r) for r in rows)
    return "\n".join(lines) + "\n"


def tail_rows(reports):
    for r in reports:
        yield (r.R, r.L, r.time_tail, r.freq_tail, r.lhs, r.normalized, r.flags)
