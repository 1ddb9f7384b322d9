"""Delimited-table and JSON output, plus the `key = value` config reader.

Numbers are rendered with %.17g so every float round-trips exactly; CSV uses
bare \\n line endings regardless of platform.
"""

from __future__ import annotations

import csv
import io
import json
import math


def fmt_float(x) -> str:
    return "%.17g" % float(x)


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int,)):
        return str(x)
    if isinstance(x, float):
        return fmt_float(x)
    return str(x)


def render_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(header))
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def write_csv(path, header, rows) -> None:
    text = render_csv(header, rows)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def render_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def write_json(path, obj) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(render_json(obj))


def rows_to_objects(header, rows) -> list:
    return [dict(zip(header, row)) for row in rows]


def parse_config_file(path) -> dict:
    """Read `key = value` lines; '#' starts a comment, blank lines are skipped.

    Values stay strings; typing happens at merge time where the key is known.
    """
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if not key:
                raise ValueError(f"{path}:{lineno}: empty key")
            out[key] = value
    return out


def coerce_float(key: str, value) -> float:
    try:
        x = float(value)
    except (TypeError, ValueError):
        raise ValueError(f"config key '{key}': cannot parse {value!r} as a number") from None
    if not math.isfinite(x):
        raise ValueError(f"config key '{key}': {value!r} is not finite")
    return x


def coerce_int(key: str, value) -> int:
    try:
        return int(str(value), 10)
    except (TypeError, ValueError):
        raise ValueError(f"config key '{key}': cannot parse {value!r} as an integer") from None


def coerce_bool(key: str, value) -> bool:
    s = str(value).strip().lower()
    if s in ("true", "1", "yes"):
        return True
    if s in ("false", "0", "no"):
        return False
    raise ValueError(f"config key '{key}': cannot parse {value!r} as true/false")


def parse_grid_spec(key: str, value) -> tuple:
    """MIN,MAX,N with MIN < MAX and N an integer point count."""
    parts = str(value).split(",")
    if len(parts) != 3:
        raise ValueError(f"config key '{key}': expected 'min,max,n', got {value!r}")
    lo = coerce_float(key, parts[0])
    hi = coerce_float(key, parts[1])
    n = coerce_int(key, parts[2])
    if not lo < hi:
        raise ValueError(f"config key '{key}': grid needs min < max")
    if n < 2:
        raise ValueError(f"config key '{key}': grid needs at least 2 points")
    return lo, hi, n
