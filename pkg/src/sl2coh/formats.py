"""Text, JSON and CSV renderings of engine results.

Weights are always written as decimal strings so that nothing downstream
has to guess about integer width.  JSON is emitted with sorted keys and a
fixed indent, which makes ``dumps(loads(out)) == out`` hold byte for byte.
"""

from __future__ import annotations

import csv
import io
import json

from .enumerate import CheckReport, ScanResult
from .families import ExpansionReport, render, symbolic_branches

FORMATS = ("text", "json", "csv")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _w(x) -> str:
    return str(int(x))


def _table(header, rows, align=None):
    cols = [header] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cols) for i in range(len(header))]
    align = align or [">"] * len(header)
    lines = []
    for r in cols:
        cells = [f"{c:{a}{w}}" for c, w, a in zip(r, widths, align)]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def _csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# -- ext ---------------------------------------------------------------------


def ext_to_obj(p, q, r, lam, dim):
    return {"p": p, "q": q, "r": _w(r), "lambda": _w(lam), "dim": dim}


def format_ext(p, q, r, lam, dim, fmt="text"):
    if fmt == "json":
        return dumps(ext_to_obj(p, q, r, lam, dim))
    if fmt == "csv":
        return _csv(["p", "q", "r", "lambda", "dim"], [[p, q, _w(r), _w(lam), dim]])
    return f"{dim}\n"


# -- scans -------------------------------------------------------------------


def scan_to_obj(scan: ScanResult):
    return {
        "p": scan.p,
        "q": scan.q,
        "bound": _w(scan.bound),
        "rows": [
            {"lambda": _w(r.lam), "dim": r.dim, "untwisted": r.untwisted}
            for r in scan.rows
        ],
    }


def format_scan(scan: ScanResult, fmt="text"):
    if fmt == "json":
        return dumps(scan_to_obj(scan))
    if fmt == "csv":
        return _csv(
            ["p", "q", "bound", "lambda", "dim", "untwisted"],
            [[scan.p, scan.q, _w(scan.bound), _w(r.lam), r.dim, int(r.untwisted)] for r in scan.rows],
        )
    head = f"p={scan.p} q={scan.q} bound={scan.bound} rows={len(scan.rows)}\n"
    body = _table(
        ["lambda", "dim", "untwisted"],
        [[_w(r.lam), r.dim, "yes" if r.untwisted else "no"] for r in scan.rows],
        [">", ">", "<"],
    )
    return head + body


# -- gamma -------------------------------------------------------------------


def gamma_to_obj(p, q, bound, best, argmax):
    return {
        "p": p,
        "q": q,
        "bound": _w(bound),
        "max_dim": best,
        "argmax": [_w(x) for x in argmax],
        "kind": "lower bound",
    }


def format_gamma(p, q, bound, best, argmax, fmt="text"):
    if fmt == "json":
        return dumps(gamma_to_obj(p, q, bound, best, argmax))
    if fmt == "csv":
        return _csv(["p", "q", "bound", "max_dim", "lambda"], [[p, q, _w(bound), best, _w(x)] for x in argmax])
    lines = [
        f"p={p} q={q} bound={bound}",
        f"max dim (lower bound for gamma_q): {best}",
        "attained at: " + (" ".join(_w(x) for x in argmax) if argmax else "-"),
    ]
    return "\n".join(lines) + "\n"


# -- check reports -------------------------------------------------------------


def report_to_obj(rep: CheckReport):
    return {
        "name": rep.name,
        "p": rep.p,
        "q": rep.q,
        "bound": _w(rep.bound),
        "status": rep.status,
        "expected": [_w(x) for x in sorted(rep.expected)],
        "actual": [_w(x) for x in sorted(rep.actual)],
        "dim_mismatches": [
            {"lambda": _w(lam), "expected_dim": e, "actual_dim": a}
            for lam, e, a in rep.dim_mismatches
        ],
    }


def reports_to_obj(p, bound, reports):
    return {
        "p": p,
        "bound": _w(bound),
        "status": "pass" if all(r.passed for r in reports) else "fail",
        "reports": [report_to_obj(r) for r in reports],
    }


def _preview(xs, limit=12):
    xs = [_w(x) for x in xs]
    more = f" ... (+{len(xs) - limit})" if len(xs) > limit else ""
    return " ".join(xs[:limit]) + more


def format_reports(p, bound, reports, fmt="text"):
    if fmt == "json":
        return dumps(reports_to_obj(p, bound, reports))
    if fmt == "csv":
        rows = []
        for r in reports:
            rows.append([
                r.name, r.p, r.q, _w(r.bound), r.status, len(r.expected), len(r.actual),
                " ".join(_w(x) for x in r.missing),
                " ".join(_w(x) for x in r.unexpected),
                " ".join(f"{lam}:{e}:{a}" for lam, e, a in r.dim_mismatches),
            ])
        return _csv(
            ["name", "p", "q", "bound", "status", "expected", "actual", "missing", "unexpected", "dim_mismatches"],
            rows,
        )
    out = [f"p={p} bound={bound}"]
    out.append(
        _table(
            ["check", "q", "status", "expected", "actual"],
            [[r.name, r.q, r.status, len(r.expected), len(r.actual)] for r in reports],
            ["<", ">", "<", ">", ">"],
        ).rstrip("\n")
    )
    for r in reports:
        if r.missing:
            out.append(f"{r.name}: missing {_preview(r.missing)}")
        if r.unexpected:
            out.append(f"{r.name}: unexpected {_preview(r.unexpected)}")
        for lam, e, a in r.dim_mismatches:
            out.append(f"{r.name}: lambda={lam} expected dim {e}, got {a}")
    return "\n".join(out) + "\n"


# -- families ------------------------------------------------------------------


def families_to_obj(q, families, expansion: ExpansionReport | None = None, p=None):
    obj = {
        "q": q,
        "families": [
            {
                "expr": str(e),
                "symbolic": [
                    {"conditions": dict(cond), "weight": render(s)}
                    for cond, s in symbolic_branches(e)
                ],
            }
            for e in families
        ],
    }
    if expansion is not None:
        obj["expansion"] = {
            "p": p,
            "bound": _w(expansion.truncated_at),
            "concrete": [_w(x) for x in expansion.concrete],
            "parameter_ranges": expansion.parameter_ranges,
        }
    return obj


def _cond_text(cond):
    if not cond:
        return "all parameters"
    return ", ".join(f"{k} = 0" if v == "0" else f"{k} >= 1" for k, v in cond.items())


def format_families(q, families, expansion=None, p=None, fmt="text"):
    if fmt == "json":
        return dumps(families_to_obj(q, families, expansion, p))
    if fmt == "csv":
        rows = [
            [q, str(e), _cond_text(cond), render(s)]
            for e in families
            for cond, s in symbolic_branches(e)
        ]
        text = _csv(["q", "family", "conditions", "weight"], rows)
        if expansion is not None:
            text += _csv(["p", "bound", "lambda"], [[p, _w(expansion.truncated_at), _w(x)] for x in expansion.concrete])
        return text
    out = [f"W{q}: {len(families)} families"]
    for e in families:
        out.append(str(e))
        for cond, s in symbolic_branches(e):
            out.append(f"    {render(s)}    [{_cond_text(cond)}]")
    if expansion is not None:
        out.append(f"p={p} bound={expansion.truncated_at}: {len(expansion.concrete)} weights")
        out.append(" ".join(_w(x) for x in expansion.concrete) or "-")
    return "\n".join(out) + "\n"
