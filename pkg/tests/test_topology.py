import numpy as np
import pytest

from anisoest.errors import TopologyError
from anisoest.mesh import Mesh, build_topology
from conftest import tensor_bundle


def test_edge_counts(table1_mesh):
    N, M, topo = table1_mesh.N, table1_mesh.M, table1_mesh.topo
    assert topo.n_edges == N * (M + 1) + M * (N + 1) + N * M
    assert topo.boundary_edges.sum() == 2 * (N + M)
    assert topo.interior_edges.sum() == topo.n_edges - 2 * (N + M)
    assert np.all(topo.edges[:, 0] < topo.edges[:, 1])


def test_left_triangle_runs_edge_counterclockwise(table1_mesh):
    mesh, topo = table1_mesh.mesh, table1_mesh.topo
    for e, (a, b) in enumerate(topo.edges):
        left, right = topo.edge_tris[e]
        assert left >= 0 or right >= 0
        if left >= 0:
            tri = list(mesh.triangles[left])
            assert (tri.index(b) - tri.index(a)) % 3 == 1
        if right >= 0:
            tri = list(mesh.triangles[right])
            assert (tri.index(a) - tri.index(b)) % 3 == 1


def test_tri_edges_are_opposite(table1_mesh):
    mesh, topo = table1_mesh.mesh, table1_mesh.topo
    for t, tri in enumerate(mesh.triangles):
        for k in range(3):
            edge = topo.edges[topo.tri_edges[t, k]]
            assert tri[k] not in edge
            assert set(edge) == set(tri) - {tri[k]}


def test_fan_sizes(table1_mesh, criss_cross_mesh):
    mesh, topo = table1_mesh.mesh, table1_mesh.topo
    interior = np.flatnonzero(~mesh.boundary)
    assert np.all(topo.fan_size[interior] == 6)
    assert np.all(topo.closed_fan[interior])
    assert not topo.closed_fan[mesh.boundary].any()
    assert topo.fan_size[mesh.node_id(0, 0)] == 2
    assert topo.fan_size[mesh.node_id(4, 0)] == 1

    cc = criss_cross_mesh
    centres = np.flatnonzero(cc.mesh.provenance[:, 0] == -1)
    assert np.all(cc.topo.fan_size[centres] == 4)
    assert cc.topo.fan_size[cc.mesh.node_id(2, 2)] == 8


def test_corner_nodes(table1_mesh):
    mesh, topo = table1_mesh.mesh, table1_mesh.topo
    corners = np.flatnonzero(topo.corner_nodes(mesh))
    expected = sorted(mesh.node_id(i, j) for i in (0, 4) for j in (0, 8))
    assert corners.tolist() == expected


def test_stars_are_anticlockwise(table1_mesh):
    mesh, topo = table1_mesh.mesh, table1_mesh.topo
    for z in np.flatnonzero(~mesh.boundary):
        edges, tris = topo.node_star(int(z))
        assert edges.size == tris.size == 6
        d = mesh.nodes[topo.neighbours(int(z))] - mesh.nodes[z]
        angles = np.arctan2(d[:, 1], d[:, 0])
        steps = np.mod(np.diff(np.append(angles, angles[0])), 2 * np.pi)
        assert np.all(steps > 0)
        assert steps.sum() == pytest.approx(2 * np.pi)
        # t_i lies between e_i and e_{i+1}
        for k, t in enumerate(tris):
            shared = set(topo.tri_edges[t])
            assert edges[k] in shared and edges[(k + 1) % 6] in shared


def test_boundary_star_starts_and_ends_on_boundary_edges(table1_mesh):
    mesh, topo = table1_mesh.mesh, table1_mesh.topo
    for z in np.flatnonzero(mesh.boundary):
        edges, tris = topo.node_star(int(z))
        assert edges.size == tris.size + 1
        assert topo.boundary_edges[edges[0]] and topo.boundary_edges[edges[-1]]
        assert not topo.boundary_edges[edges[1:-1]].any()


def test_edge_shared_by_three_triangles():
    nodes = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, 1.0], [0.5, -1.0], [0.5, 2.0]])
    tris = np.array([[0, 1, 2], [1, 0, 3], [0, 1, 4]])
    mesh = Mesh(nodes=nodes, triangles=tris, boundary=np.ones(5, dtype=bool))
    with pytest.raises(TopologyError):
        build_topology(mesh)


def test_single_triangle():
    nodes = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    topo = build_topology(Mesh(nodes=nodes, triangles=np.array([[0, 1, 2]]), boundary=np.ones(3, dtype=bool)))
    assert topo.n_edges == 3
    assert not topo.interior_edges.any()
    assert topo.fan_size.tolist() == [1, 1, 1]


def test_two_by_one_mesh():
    b = tensor_bundle(2, 1)
    mesh, topo = b.mesh, b.topo
    assert topo.n_edges == 2 * 2 + 1 * 3 + 2
    assert topo.fan_size[mesh.node_id(1, 0)] == 3
    assert topo.fan_size[mesh.node_id(0, 1)] == 1
    for z in range(mesh.n_nodes):
        edges, tris = topo.node_star(z)
        assert edges.size == tris.size + 1
        assert topo.boundary_edges[edges[0]] and topo.boundary_edges[edges[-1]]
        for k, t in enumerate(tris):
            shared = set(topo.tri_edges[t])
            assert edges[k] in shared and edges[k + 1] in shared
