"""Edge-list text format, DOT export, and atomic file writes.

Edge-list format::

    n m mode        # mode is O (oriented) or D (general digraph)
    u v             # m lines, one edge each

ASCII decimal, single spaces, LF line endings.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .errors import GraphFormatError, InvalidGraph
from .graph import DIGRAPH, ORIENTED, OrientedGraph, from_edge_list

_MODE_CODES = {ORIENTED: "O", DIGRAPH: "D"}
_CODE_MODES = {v: k for k, v in _MODE_CODES.items()}


def dumps_edge_list(G: OrientedGraph) -> str:
    edges = list(G.edges())
    lines = [f"{G.n} {len(edges)} {_MODE_CODES[G.mode]}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def loads_edge_list(text: str) -> OrientedGraph:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise GraphFormatError("empty input")
    header = lines[0].split(" ")
    if len(header) != 3 or header[2] not in _CODE_MODES:
        raise GraphFormatError(f"bad header {lines[0]!r}; expected 'n m O|D'")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphFormatError(f"bad header {lines[0]!r}") from None
    if n < 0 or m < 0:
        raise GraphFormatError("negative counts in header")
    if len(lines) - 1 != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(lines) - 1} lines")
    edges = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(" ")
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    try:
        return from_edge_list(n, edges, _CODE_MODES[header[2]])
    except (InvalidGraph, IndexError) as exc:
        raise GraphFormatError(str(exc)) from exc


def read_edge_list(path) -> OrientedGraph:
    with open(path, "r", encoding="ascii", newline="") as fh:
        return loads_edge_list(fh.read())


def to_dot(G: OrientedGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    lines.extend(f"  {v};" for v in range(G.n))
    lines.extend(f"  {u} -> {v};" for u, v in G.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


def atomic_write(path, text: str) -> None:
    """Write via a temp file in the target directory, then rename over ``path``."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_edge_list(path, G: OrientedGraph) -> None:
    atomic_write(path, dumps_edge_list(G))


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
