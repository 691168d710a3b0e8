"""On-disk persistence for character and coefficient tables.

One text file per (kind, degree).  The header carries the format version and
degree; rows follow in canonical partition order as ``|``-separated fields,
integers in decimal::

    # symarw chars
    format-version: 1
    degree: 2
    [2]|[2]|1
    [2]|[1,1]|1
    ...

The directory is taken from :func:`set_cache_dir`, else from the
``SYMARW_CACHE_DIR`` environment variable.  With neither set, nothing is read
or written.
"""

from __future__ import annotations

import os
from collections import Counter
from pathlib import Path
from typing import Iterable, Sequence

from .partitions import format_partition, parse_partition

FORMAT_VERSION = 1
ENV_VAR = "SYMARW_CACHE_DIR"

# instrumentation, reported by the CLI --stats flag
STATS: Counter = Counter()

_cache_dir: Path | None = None
_disabled = False


class CacheFormatError(ValueError):
    pass


def set_cache_dir(path: str | os.PathLike | None) -> None:
    global _cache_dir, _disabled
    _cache_dir = Path(path) if path is not None else None
    _disabled = False


def disable() -> None:
    global _disabled
    _disabled = True


def cache_dir() -> Path | None:
    if _disabled:
        return None
    if _cache_dir is not None:
        return _cache_dir
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


def table_path(kind: str, degree: int, directory: Path | None = None) -> Path | None:
    directory = directory if directory is not None else cache_dir()
    if directory is None:
        return None
    return Path(directory) / f"{kind}-{degree:02d}.txt"


def render(kind: str, degree: int, rows: Iterable[tuple[Sequence[Sequence[int]], int]]) -> str:
    lines = [f"# symarw {kind}", f"format-version: {FORMAT_VERSION}", f"degree: {degree}"]
    for parts, value in rows:
        lines.append("|".join(format_partition(lam) for lam in parts) + f"|{value}")
    return "\n".join(lines) + "\n"


def write_table(kind: str, degree: int, rows, directory: Path | None = None) -> Path | None:
    path = table_path(kind, degree, directory)
    if path is None:
        return None
    path.parent.mkdir(parents=True, exist_ok=True)
    text = render(kind, degree, rows)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(text, encoding="ascii")
    os.replace(tmp, path)
    STATS[f"{kind}_tables_written"] += 1
    return path


def parse(text: str, kind: str, degree: int) -> list[tuple[tuple, int]]:
    lines = text.splitlines()
    if len(lines) < 3 or lines[0] != f"# symarw {kind}":
        raise CacheFormatError(f"bad header for {kind} table")
    if lines[1] != f"format-version: {FORMAT_VERSION}":
        raise CacheFormatError(f"unsupported cache version: {lines[1]!r}")
    if lines[2] != f"degree: {degree}":
        raise CacheFormatError(f"degree mismatch: {lines[2]!r}")
    rows = []
    for line in lines[3:]:
        *parts, value = line.split("|")
        rows.append((tuple(parse_partition(x) for x in parts), int(value)))
    return rows


def read_table(kind: str, degree: int, directory: Path | None = None):
    """Rows of a cached table, or None when absent, unreadable or stale."""
    path = table_path(kind, degree, directory)
    if path is None or not path.exists():
        return None
    try:
        rows = parse(path.read_text(encoding="ascii"), kind, degree)
    except (CacheFormatError, ValueError):
        STATS[f"{kind}_tables_rejected"] += 1
        return None
    STATS[f"{kind}_tables_loaded"] += 1
    return rows
