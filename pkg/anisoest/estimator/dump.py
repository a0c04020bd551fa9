from __future__ import annotations

import csv
import io

import numpy as np

from ..mesh import GeomTables, Mesh, Topology
from .jumps import EdgeJump

EDGE_COLUMNS = ("edge", "a", "b", "x_mid", "y_mid", "length", "patch_diam", "patch_area", "short", "jump")


def edge_dump(mesh: Mesh, topo: Topology, geom: GeomTables, jumps: EdgeJump, short: np.ndarray) -> str:
    """CSV with one row per interior edge."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(EDGE_COLUMNS)
    mid = 0.5 * (mesh.nodes[topo.edges[:, 0]] + mesh.nodes[topo.edges[:, 1]])
    for e in np.flatnonzero(topo.interior_edges):
        writer.writerow(
            [
                int(e),
                int(topo.edges[e, 0]),
                int(topo.edges[e, 1]),
                repr(float(mid[e, 0])),
                repr(float(mid[e, 1])),
                repr(float(geom.edge_length[e])),
                repr(float(geom.edge_patch_diam[e])),
                repr(float(geom.edge_patch_area[e])),
                int(short[e]),
                repr(float(jumps.jump[e])),
            ]
        )
    return buf.getvalue()
