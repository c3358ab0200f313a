"""CSV trajectory logs and gnuplot data files.

Every CSV starts with two comment lines::

    # qagentlab-log schema=1 agent=bandit seed=7
    # config={"episodes": 100, "lr": 0.1, ...}

followed by the column header and one row per step. Floats are written with
``repr`` so a log round-trips bit-exactly.
"""
from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass
from pathlib import Path

from ..errors import LogParseError

SCHEMA_VERSION = 1
MAGIC = "qagentlab-log"

_HEADER = re.compile(rf"^# {MAGIC} schema=(\d+) agent=(\w+) seed=(-?\d+)\s*$")


def fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass
class TrajectoryLog:
    agent: str
    seed: int
    config: dict
    columns: list[str]
    rows: list[list[str]]
    row_lines: list[int]


def write_csv(path, agent: str, seed: int, columns, rows, config: dict | None = None) -> Path:
    path = Path(path)
    with open(path, "w", newline="") as fh:
        fh.write(f"# {MAGIC} schema={SCHEMA_VERSION} agent={agent} seed={seed}\n")
        fh.write(f"# config={json.dumps(config or {}, sort_keys=True)}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    return path


def read_log(path) -> TrajectoryLog:
    with open(path, newline="") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise LogParseError("empty log", 1)
    m = _HEADER.match(lines[0])
    if m is None:
        raise LogParseError(f"expected '# {MAGIC} schema=N agent=NAME seed=N'", 1)
    schema, agent, seed = int(m.group(1)), m.group(2), int(m.group(3))
    if schema != SCHEMA_VERSION:
        raise LogParseError(f"unsupported schema version {schema}", 1)
    if len(lines) < 2 or not lines[1].startswith("# config="):
        raise LogParseError("expected '# config={...}'", 2)
    try:
        config = json.loads(lines[1][len("# config="):])
    except json.JSONDecodeError as exc:
        raise LogParseError(f"bad config JSON: {exc.msg}", 2) from None
    if not isinstance(config, dict):
        raise LogParseError("config must be a JSON object", 2)
    if len(lines) < 3:
        raise LogParseError("missing column header", 3)
    columns = next(csv.reader([lines[2]]))
    rows, row_lines = [], []
    for lineno, line in enumerate(lines[3:], start=4):
        if not line.strip():
            continue
        row = next(csv.reader([line]))
        if len(row) != len(columns):
            raise LogParseError(f"expected {len(columns)} fields, got {len(row)}", lineno)
        rows.append(row)
        row_lines.append(lineno)
    return TrajectoryLog(agent, seed, config, columns, rows, row_lines)


def write_dat(path, title: str, columns, rows) -> Path:
    """Whitespace-separated columns with ``#`` comments, readable by gnuplot."""
    path = Path(path)
    with open(path, "w") as fh:
        fh.write(f"# {title}\n# {' '.join(columns)}\n")
        for row in rows:
            fh.write(" ".join(fmt(v) for v in row) + "\n")
    return path
