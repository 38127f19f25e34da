"""Reader and writer for the ``.sg`` edge-list format.

One edge per line as ``u v s`` (whitespace separated) with ``s`` one of
``+1 -1 + - 1``.  Lines starting with ``#`` are comments, except an optional
``# nodes N`` header that fixes the node count (otherwise max id + 1).
"""

from __future__ import annotations

import io
import os
import re
from typing import IO, Iterable

from .errors import ParseError
from .graph import SignedGraph

_SIGNS = {"+1": 1, "+": 1, "1": 1, "-1": -1, "-": -1}
_HEADER = re.compile(r"^#\s*nodes\s+(\d+)\s*$", re.IGNORECASE)


def parse_sg(lines: Iterable[str], source: str | None = None) -> SignedGraph:
    node_count = None
    edges = []
    max_id, max_line = -1, None
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _HEADER.match(line)
            if m:
                node_count = int(m.group(1))
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"expected 'u v s', got {line!r}", lineno, source)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer node id in {line!r}", lineno, source) from None
        if parts[2] not in _SIGNS:
            raise ParseError(f"bad sign {parts[2]!r}", lineno, source)
        if u < 0 or v < 0:
            raise ParseError("negative node id", lineno, source)
        if u == v:
            raise ParseError(f"self-loop at node {u}", lineno, source)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {key}, first on line {seen[key]}", lineno, source)
        seen[key] = lineno
        edges.append((u, v, _SIGNS[parts[2]]))
        if max(u, v) > max_id:
            max_id, max_line = max(u, v), lineno
    if node_count is None:
        node_count = max_id + 1
    elif max_id >= node_count:
        raise ParseError(f"node id {max_id} exceeds declared node count {node_count}", max_line, source)
    try:
        return SignedGraph(node_count, edges)
    except ValueError as exc:
        raise ParseError(str(exc), None, source) from exc


def read_sg(path: str | os.PathLike | IO[str]) -> SignedGraph:
    if hasattr(path, "read"):
        return parse_sg(path)  # type: ignore[arg-type]
    with open(path, encoding="utf-8") as fh:
        return parse_sg(fh, source=os.fspath(path))


def format_sg(g: SignedGraph, comment: str | None = None) -> str:
    buf = io.StringIO()
    write_sg(g, buf, comment=comment)
    return buf.getvalue()


def write_sg(g: SignedGraph, path: str | os.PathLike | IO[str], comment: str | None = None) -> None:
    if hasattr(path, "write"):
        fh = path
        close = False
    else:
        fh = open(path, "w", encoding="utf-8")
        close = True
    try:
        if comment:
            for line in comment.splitlines():
                fh.write(f"# {line}\n")
        fh.write(f"# nodes {g.node_count}\n")
        u, v, s = g.arrays
        fh.writelines(
            f"{a} {b} {'+1' if sg > 0 else '-1'}\n"
            for a, b, sg in zip(u.tolist(), v.tolist(), s.tolist())
        )
    finally:
        if close:
            fh.close()
