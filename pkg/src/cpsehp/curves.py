"""Plot-data container and its CSV/JSON writers."""

import csv
import io
import json
import os
import tempfile
from dataclasses import dataclass, field

import numpy as np


@dataclass
class PropertyCurve:
    """Sampled plot data: one abscissa column and one or more value columns."""

    x_name: str
    x: np.ndarray
    columns: dict = field(default_factory=dict)
    header: str = ""

    def __len__(self):
        return len(self.x)

    def names(self):
        return [self.x_name] + list(self.columns)

    def rows(self):
        cols = [np.asarray(self.x)] + [np.asarray(v) for v in self.columns.values()]
        for i in range(len(self.x)):
            yield [float(c[i]) for c in cols]


def format_float(x):
    """Shortest exact round-trip representation (at most 17 significant digits).

    Python's float repr never uses the locale, so the decimal point is '.'.
    """
    x = float(x)
    if np.isnan(x):
        return "nan"
    if np.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


def atomic_write(path, text):
    """Write ``text`` to ``path`` via a temporary file and a rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def curve_to_csv(curve):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(curve.names())
    for row in curve.rows():
        writer.writerow([format_float(v) for v in row])
    return buf.getvalue()


def curve_to_json(curve):
    names = curve.names()
    records = [dict(zip(names, row)) for row in curve.rows()]
    return records_to_json(records)


def records_to_json(records):
    # json.dumps uses repr for floats, which already round-trips exactly
    return json.dumps(records, indent=1, allow_nan=True) + "\n"


def emit_curve(curve, path, fmt="csv"):
    if fmt == "csv":
        text = curve_to_csv(curve)
    elif fmt == "json":
        text = curve_to_json(curve)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    atomic_write(path, text)
