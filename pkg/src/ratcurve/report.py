"""Deterministic report output: JSON, CSV samples, and a dependency-free SVG plot."""

import csv
import io
import json
from fractions import Fraction

from . import __version__
from .errors import IoError, TooFewSamples
from .numfield import FieldElement
from .ratfunc import INF

SCHEMA_VERSION = 1


def jsonable(obj):
    """Recursively convert library objects into JSON-friendly values."""
    if obj is INF:
        return "oo"
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, FieldElement):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in obj]
        return sorted(items, key=str) if isinstance(obj, (set, frozenset)) else items
    for attr in ("to_dict", "describe"):
        fn = getattr(obj, attr, None)
        if callable(fn):
            return jsonable(fn())
    return str(obj)


def make_report(command, inputs, results, seed=None, seconds=None):
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "ratcurve",
        "version": __version__,
        "command": command,
        "inputs": jsonable(inputs),
        "results": jsonable(results),
        "seed": seed,
        "timing": {"seconds": round(seconds, 3) if seconds is not None else None},
    }


def dumps(report):
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def canonical(report):
    """The report without its timing field (the part that must be byte-identical across runs)."""
    out = dict(report)
    out.pop("timing", None)
    return dumps(out)


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from None


def write_json(report, path):
    _write(path, dumps(report))


# ---------------------------------------------------------------------------
# samples


def _num(x):
    return format(x, ".12g")


def samples_csv(samples):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["param", "re", "im", "skipped"])
    for s in samples:
        param = "oo" if s.param is INF else str(s.param)
        if s.skipped:
            w.writerow([param, "", "", 1])
        else:
            re, im = s.point()
            w.writerow([param, _num(re), _num(im), 0])
    return buf.getvalue()


def write_csv(samples, path):
    _write(path, samples_csv(samples))


def svg_path_data(samples, closed=True):
    """Subpaths of the polyline; a skipped sample ends the current subpath."""
    runs, cur = [], []
    for s in samples:
        if s.skipped:
            if cur:
                runs.append(cur)
            cur = []
        else:
            cur.append(s.point())
    if cur:
        runs.append(cur)
    # the parameter runs around a circle, so an unbroken curve is closed
    wrap = closed and not any(s.skipped for s in samples)
    return runs, wrap


def samples_svg(samples, width=600, height=600, closed=True):
    pts = [s.point() for s in samples if not s.skipped]
    if len(pts) < 2:
        raise TooFewSamples("need at least two non-skipped samples to plot")
    runs, wrap = svg_path_data(samples, closed)
    xs = [p[0] for p in pts]
    ys = [-p[1] for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    m = 0.05 * span
    vb = (x0 - m, y0 - m, (x1 - x0) + 2 * m or 2 * m, (y1 - y0) + 2 * m or 2 * m)
    parts = []
    for run in runs:
        cmds = [f"M{_num(run[0][0])},{_num(-run[0][1])}"]
        cmds += [f"L{_num(x)},{_num(-y)}" for x, y in run[1:]]
        parts.append(" ".join(cmds))
    d = " ".join(parts) + (" Z" if wrap else "")
    stroke = _num(span / 400)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{" ".join(_num(v) for v in vb)}">\n'
        f'<path d="{d}" fill="none" stroke="black" stroke-width="{stroke}"/>\n'
        "</svg>\n"
    )


def emit_plot(samples, path, csv_path=None):
    """Write the SVG plot and its CSV sidecar (same stem, .csv unless given)."""
    svg = samples_svg(samples)
    _write(path, svg)
    if csv_path is None:
        csv_path = path[:-4] + ".csv" if path.lower().endswith(".svg") else path + ".csv"
    write_csv(samples, csv_path)
    return path, csv_path
