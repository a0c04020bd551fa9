from types import SimpleNamespace

import pytest

from anisoest.experiments import make_problem, prepare_case
from anisoest.mesh import build_grid_1d, build_tensor_mesh, build_topology, compute_geometry


def tensor_bundle(N, M, diagonal="sw_ne", Ly=1.0):
    """Mesh, topology and geometry of an N x M tensor mesh of (0,1) x (0,Ly)."""
    gx = build_grid_1d("uniform", N)
    gy = build_grid_1d("uniform" if Ly == 1.0 else "scaled", M, Ly)
    mesh = build_tensor_mesh(gx, gy, diagonal)
    topo = build_topology(mesh)
    return SimpleNamespace(mesh=mesh, topo=topo, geom=compute_geometry(mesh, topo), N=N, M=M)


@pytest.fixture
def table1_mesh():
    """M = 2N, the first column group of Table 1: hx = 1/4, hy = 1/8."""
    return tensor_bundle(4, 8)


@pytest.fixture
def criss_cross_mesh():
    return tensor_bundle(4, 4, "criss_cross")


@pytest.fixture(scope="session")
def sine_state():
    state, stats = prepare_case(make_problem("sine", a=1.0), 8, 16)
    return state


@pytest.fixture(scope="session")
def sine():
    return make_problem("sine", a=1.0)
