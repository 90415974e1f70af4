"""Result tables and deterministic parallel mapping for parameter scans.

Every scan in this package returns a :class:`ScanTable`: an append-only
rectangular table whose cells are stored as strings the moment a row is
added.  Floats are rendered with ``repr``, the shortest decimal string that
round-trips to the same value, so writing a table out and parsing it back
loses nothing.  Rationals are rendered as ``num/den``.

Two output formats:

* CSV, RFC-4180 style: a header row followed by data rows, CRLF line
  endings, no metadata.  Identical inputs give byte-identical CSV.
* JSON: one object ``{"metadata", "columns", "rows"}`` where metadata
  records the generating command, its parameters, the package version and a
  UTC timestamp.

The thread count for parallel scans comes from the ``CYCLEZETA_THREADS``
environment variable, read once at import time; the default is the machine's
CPU count.  Results never depend on it: :func:`parallel_map` preserves input
order exactly, so threading can change wall time only.
"""

import csv
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__


def _thread_count() -> int:
    raw = os.environ.get("CYCLEZETA_THREADS", "").strip()
    if not raw:
        return os.cpu_count() or 1
    count = int(raw)
    if count < 1:
        raise ValueError("CYCLEZETA_THREADS must be a positive integer")
    return count


_THREADS = _thread_count()


def thread_count() -> int:
    """Worker count scans were configured with at import time."""
    return _THREADS


def parallel_map(fn, items):
    """Apply fn to every item, in order, returning a list.

    Runs on a thread pool when more than one worker is configured.  The
    output order always matches the input order, so the configured thread
    count cannot change any result.
    """
    items = list(items)
    if _THREADS == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=_THREADS) as pool:
        return list(pool.map(fn, items))


def format_cell(value) -> str:
    """Render one table cell as its canonical string.

    Strings pass through; bools become true/false; ints keep all digits;
    Fractions become num/den; floats use repr (shortest round-trip form).
    Complex values are rendered like repr but without the enclosing parens.
    """
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, complex):
        return repr(value).strip("()")
    raise TypeError(f"cannot put a {type(value).__name__} in a table cell")


class ScanTable:
    """Rectangular table of string cells with run metadata.

    Rows are formatted at append time, so a table holds exactly what its
    serialized forms will contain and nothing float-shaped survives to be
    re-rounded later.
    """

    def __init__(self, columns, command: str = "", parameters=None):
        self.columns = [str(c) for c in columns]
        if not self.columns:
            raise ValueError("a table needs at least one column")
        self.rows = []
        self.metadata = {
            "command": command,
            "parameters": {k: format_cell(v) for k, v in (parameters or {}).items()},
            "version": __version__,
            "timestamp": datetime.now(timezone.utc).isoformat(),
        }

    def append(self, values) -> None:
        row = tuple(format_cell(v) for v in values)
        if len(row) != len(self.columns):
            raise ValueError(
                f"row has {len(row)} cells, table has {len(self.columns)} columns"
            )
        self.rows.append(row)

    def extend(self, row_iterable) -> None:
        for values in row_iterable:
            self.append(values)

    def column(self, name):
        """All cells of one column, as stored strings."""
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def as_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\r\n")
        writer.writerow(self.columns)
        writer.writerows(self.rows)
        return out.getvalue()

    def as_json(self) -> str:
        payload = {
            "metadata": self.metadata,
            "columns": self.columns,
            "rows": [list(row) for row in self.rows],
        }
        return json.dumps(payload, indent=2) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.as_csv()
        if fmt == "json":
            return self.as_json()
        raise ValueError(f"unknown table format {fmt!r}")

    def write(self, path, fmt: str = "csv") -> None:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(self.render(fmt))
