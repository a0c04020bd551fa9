from .grid import Grid1D, build_grid_1d
from .tensor import Mesh, build_tensor_mesh
from .topology import Topology, build_topology
from .geometry import GeomTables, compute_geometry

__all__ = [
    "Grid1D",
    "build_grid_1d",
    "Mesh",
    "build_tensor_mesh",
    "Topology",
    "build_topology",
    "GeomTables",
    "compute_geometry",
]
