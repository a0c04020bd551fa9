"""Element/edge subsets the estimators can be restricted to."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List

import numpy as np

from ..errors import InvalidParameterError
from ..mesh import Mesh, Topology


@dataclass(frozen=True, eq=False)
class Region:
    """An element set D and its interior edges (those with omega_S inside D unless partitioned)."""

    name: str
    elements: np.ndarray
    edges: np.ndarray

    @property
    def is_empty(self) -> bool:
        return not bool(self.elements.any())

    @classmethod
    def whole(cls, mesh: Mesh, topo: Topology) -> "Region":
        return cls("Omega", np.ones(mesh.n_triangles, dtype=bool), topo.interior_edges.copy())

    @classmethod
    def from_elements(cls, name: str, elements: np.ndarray, topo: Topology) -> "Region":
        elements = np.asarray(elements, dtype=bool)
        left = np.maximum(topo.edge_tris[:, 0], 0)
        right = np.maximum(topo.edge_tris[:, 1], 0)
        edges = topo.interior_edges & elements[left] & elements[right]
        return cls(name, elements, edges)

    @classmethod
    def partition(cls, parts: Dict[str, np.ndarray], topo: Topology) -> List["Region"]:
        """Disjoint regions covering the mesh; each interior edge goes with its left triangle."""
        masks = [np.asarray(mask, dtype=bool) for mask in parts.values()]
        cover = np.sum(masks, axis=0) if masks else np.zeros(0, dtype=int)
        if not masks or np.any(cover != 1):
            raise InvalidParameterError("partition masks must cover every element exactly once")
        left = topo.edge_tris[:, 0]
        owner = np.where(left >= 0, left, topo.edge_tris[:, 1])
        return [cls(name, mask, topo.interior_edges & mask[owner]) for name, mask in zip(parts, masks)]

    @classmethod
    def patch(cls, name: str, nodes: Iterable[int], mesh: Mesh, topo: Topology) -> "Region":
        """omega_P: every triangle touching one of ``nodes``."""
        marked = np.zeros(mesh.n_nodes, dtype=bool)
        marked[np.fromiter(nodes, dtype=np.int64)] = True
        return cls.from_elements(name, marked[mesh.triangles].any(axis=1), topo)
