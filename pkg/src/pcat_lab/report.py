"""Rendering of suite reports and command results as json, text tables or csv."""

from __future__ import annotations

import csv
import io
import json

FORMATS = ("json", "text-table", "csv")


class UnknownFormat(ValueError):
    pass


def parse_format(name: str) -> str:
    n = name.strip().lower()
    if n in ("text", "table", "text-table"):
        return "text-table"
    if n in FORMATS:
        return n
    raise UnknownFormat(f"unknown report format {name!r}; choose from {', '.join(FORMATS)}")


def _summary(data: dict) -> str:
    if "verdict" in data:
        return data["verdict"]
    if "error" in data:
        return "error: " + data["error"]
    if "zeta" in data:
        return f"zeta={data['zeta']} chi={data.get('chi', '')}"
    if "reason" in data:
        return data["reason"]
    if isinstance(data.get("violations"), list):
        return f"{len(data['violations'])} violations"
    return ""


def _table(header, rows) -> str:
    widths = [len(h) for h in header]
    for r in rows:
        widths = [max(w, len(str(c))) for w, c in zip(widths, r)]
    fmt_row = lambda r: "  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip()
    lines = [fmt_row(header), "  ".join("-" * w for w in widths)]
    lines += [fmt_row(r) for r in rows]
    return "\n".join(lines) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def render_suite(report, fmt: str = "json", timing: bool = True) -> str:
    fmt = parse_format(fmt)
    if fmt == "json":
        return json.dumps(report.as_dict(timing), separators=(",", ":"), sort_keys=False) + "\n"
    header = ["id", "status", "summary"] + (["wall_time"] if timing else [])
    rows = []
    for c in report.checks:
        row = [c.id, c.status, _summary(c.data)]
        if timing:
            row.append(f"{c.wall_time:.3f}")
        rows.append(row)
    if fmt == "csv":
        return _csv(header, rows)
    counts = report.counts()
    tail = ", ".join(f"{k}: {counts[k]}" for k in sorted(counts))
    return _table(header, rows) + (f"\n{len(rows)} checks ({tail})\n" if rows else "\n0 checks\n")


def render_records(header, rows, fmt: str = "json", extra: dict | None = None) -> str:
    """Flat records (e.g. Betti tables, weightings) in any format."""
    fmt = parse_format(fmt)
    if fmt == "json":
        doc = {"version": 1, **(extra or {}), "rows": [dict(zip(header, r)) for r in rows]}
        return json.dumps(doc, separators=(",", ":")) + "\n"
    if fmt == "csv":
        return _csv(header, rows)
    head = "".join(f"{k}: {v}\n" for k, v in (extra or {}).items())
    return head + _table(header, rows)
