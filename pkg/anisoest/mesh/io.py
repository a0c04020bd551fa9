"""Plain-text mesh dumps.

Format::

    nodes <n>
    <id> <x> <y> <boundary:0|1>
    triangles <m>
    <id> <v0> <v1> <v2>
"""

from __future__ import annotations

import io
from pathlib import Path
from typing import Iterable, List, Union

import numpy as np

from ..errors import InvalidParameterError
from .tensor import Mesh


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def dump_mesh(mesh: Mesh) -> str:
    buf = io.StringIO()
    buf.write(f"nodes {mesh.n_nodes}\n")
    for k, ((x, y), flag) in enumerate(zip(mesh.nodes.tolist(), mesh.boundary.tolist())):
        buf.write(f"{k} {_fmt(x)} {_fmt(y)} {int(flag)}\n")
    buf.write(f"triangles {mesh.n_triangles}\n")
    for k, (v0, v1, v2) in enumerate(mesh.triangles.tolist()):
        buf.write(f"{k} {v0} {v1} {v2}\n")
    return buf.getvalue()


def write_mesh(mesh: Mesh, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(dump_mesh(mesh), encoding="utf-8")
    return path


def _section(lines: List[str], pos: int, name: str) -> int:
    if pos >= len(lines):
        raise InvalidParameterError(f"mesh dump ends before the '{name}' header")
    head = lines[pos].split()
    if len(head) != 2 or head[0] != name:
        raise InvalidParameterError(f"expected '{name} <count>' at line {pos + 1}, got {lines[pos]!r}")
    try:
        count = int(head[1])
    except ValueError as exc:
        raise InvalidParameterError(f"malformed mesh dump: bad '{name}' count {head[1]!r}") from exc
    if count < 0:
        raise InvalidParameterError(f"malformed mesh dump: negative '{name}' count {count}")
    return count


def read_mesh(text: str) -> Mesh:
    """Parse a dump produced by :func:`dump_mesh`. Tensor provenance is not stored."""
    lines = [line for line in text.splitlines() if line.strip()]
    n = _section(lines, 0, "nodes")
    try:
        rows = [line.split() for line in lines[1 : 1 + n]]
        nodes = np.array([[float(r[1]), float(r[2])] for r in rows])
        boundary = np.array([r[3] == "1" for r in rows], dtype=bool)
        m = _section(lines, 1 + n, "triangles")
        tris = np.array([[int(v) for v in line.split()[1:4]] for line in lines[2 + n : 2 + n + m]], dtype=np.int64)
    except (IndexError, ValueError) as exc:
        raise InvalidParameterError(f"malformed mesh dump: {exc}") from exc
    if nodes.shape[0] != n or tris.shape[0] != m:
        raise InvalidParameterError("mesh dump is shorter than its headers claim")
    return Mesh(nodes=nodes.reshape(n, 2), triangles=tris.reshape(m, 3), boundary=boundary)


def dump_values(values: Iterable[float]) -> str:
    """`<node_id> <value>` lines for a nodal field."""
    return "".join(f"{k} {_fmt(v)}\n" for k, v in enumerate(values))
