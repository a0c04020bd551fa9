import math

import numpy as np
import pytest

from anisoest.errors import InvalidParameterError, NotApplicableError
from anisoest.estimator import (
    EstimatorReport,
    Region,
    bubble_bound_check,
    classify_nodes,
    edge_dump,
    edge_weight,
    edge_weights,
    extract_paths,
    jump_difference_check,
    jump_residuals,
    lower_estimator,
    normalized_jumps,
    short_edges,
    structured_line_path,
    upper_estimator,
    vertex_identity_residual,
    y_indicator,
)
from anisoest.experiments import estimate, make_problem, prepare_case
from anisoest.fem import DiscreteField
from anisoest.mesh import build_grid_1d, build_tensor_mesh, build_topology, compute_geometry
from anisoest.settings import AnisoSettings, SolverSettings

from conftest import tensor_bundle

HX, HY = 0.25, 0.125


def _vertical(bundle):
    ends = bundle.mesh.nodes[bundle.topo.edges]
    return bundle.topo.interior_edges & np.isclose(ends[:, 0, 0], ends[:, 1, 0])


def test_jump_across_single_diagonal():
    bundle = tensor_bundle(1, 1)
    mesh, topo = bundle.mesh, bundle.topo
    values = np.zeros(mesh.n_nodes)
    values[mesh.node_id(1, 0)] = 1.0
    jumps = jump_residuals(mesh, topo, DiscreteField(mesh, values))
    interior = np.flatnonzero(topo.interior_edges)
    assert interior.size == 1
    assert jumps.magnitude[interior[0]] == pytest.approx(math.sqrt(2.0))
    assert np.allclose(jumps.normal[interior[0]], np.array([1.0, -1.0]) / math.sqrt(2.0))
    assert np.all(jumps.jump[topo.boundary_edges] == 0.0)


def test_linear_field_has_no_jumps(table1_mesh):
    mesh, topo = table1_mesh.mesh, table1_mesh.topo
    u = DiscreteField(mesh, 2.0 * mesh.nodes[:, 0] - mesh.nodes[:, 1])
    assert np.allclose(jump_residuals(mesh, topo, u).jump, 0.0, atol=1e-12)


def test_edge_weights(table1_mesh):
    topo, geom = table1_mesh.topo, table1_mesh.geom
    vertical = _vertical(table1_mesh)
    uniform = edge_weights("uniform", geom, topo)
    bubble = edge_weights("bubble", geom, topo)
    squared = edge_weights("bubble_squared", geom, topo)
    assert np.all(uniform[topo.interior_edges] == 1.0)
    assert np.all(uniform[topo.boundary_edges] == 0.0)
    rho = HY / math.hypot(HX, HY)
    assert np.allclose(bubble[vertical], rho)
    assert np.allclose(squared, bubble**2)
    assert np.all(bubble <= 1.0)
    e = int(np.flatnonzero(vertical)[0])
    assert edge_weight(e, "bubble", geom, topo) == pytest.approx(rho)
    assert edge_weight(e, "uniform", geom, topo) == 1.0
    with pytest.raises(NotApplicableError):
        edge_weight(int(np.flatnonzero(topo.boundary_edges)[0]), "bubble", geom, topo)
    with pytest.raises(InvalidParameterError):
        edge_weights("cubic", geom, topo)


def test_short_edges_are_interior_verticals(table1_mesh):
    short = short_edges(table1_mesh.geom, table1_mesh.topo)
    assert np.array_equal(short, _vertical(table1_mesh))
    assert short.sum() == (table1_mesh.N - 1) * table1_mesh.M


def test_criss_cross_has_no_short_edges_or_anisotropic_nodes(criss_cross_mesh):
    cc = criss_cross_mesh
    assert not short_edges(cc.geom, cc.topo).any()
    classes = classify_nodes(cc.mesh, cc.topo, cc.geom)
    assert not classes.anisotropic[~cc.mesh.boundary].any()
    assert classes.regular.all()


def test_classification_of_table1_mesh(table1_mesh):
    mesh, topo, geom = table1_mesh.mesh, table1_mesh.topo, table1_mesh.geom
    classes = classify_nodes(mesh, topo, geom)
    interior = ~mesh.boundary
    assert classes.anisotropic[interior].all()
    assert np.allclose(classes.ratio[interior], 0.3)
    assert np.allclose(classes.area_ratio[interior], 1.0 / 6.0)
    assert np.allclose(classes.orientation_ratio[interior], 4.0 / 3.0)
    assert classes.c_uni == pytest.approx(1.0 / 12.0)
    assert np.allclose(classes.min_angle, math.degrees(math.atan(0.5)))
    assert classes.regular.all()
    strict = classify_nodes(mesh, topo, geom, c0=0.25)
    assert not strict.anisotropic[interior].any()
    assert strict.n_anisotropic == int(strict.anisotropic[mesh.boundary].sum())
    assert not classify_nodes(mesh, topo, geom, min_angle_deg=30.0).regular.any()


def test_paths_of_table1_mesh(table1_mesh):
    mesh, topo, geom = table1_mesh.mesh, table1_mesh.topo, table1_mesh.geom
    classes = classify_nodes(mesh, topo, geom)
    paths = extract_paths(mesh, topo, geom, classes, short_edges(geom, topo))
    assert len(paths) == table1_mesh.N - 1
    for i, path in enumerate(paths, start=1):
        assert path.interior_nodes.size == table1_mesh.M - 1
        assert path.boundary_ends == (True, True)
        assert not path.touches_corner
        assert np.allclose(path.xi, [1.0, 0.0])
        assert np.allclose(path.eta, [0.0, 1.0])
        line = structured_line_path(mesh, topo, geom, i)
        assert np.array_equal(path.nodes, line.nodes)
        assert np.array_equal(path.edges, line.edges)
        assert path.H_P == pytest.approx(geom.node_diam[path.nodes[0]])
        assert path.orientation_ratio == pytest.approx(4.0 / 3.0)


def test_no_paths_without_short_edges(criss_cross_mesh):
    cc = criss_cross_mesh
    classes = classify_nodes(cc.mesh, cc.topo, cc.geom)
    assert extract_paths(cc.mesh, cc.topo, cc.geom, classes, short_edges(cc.geom, cc.topo)) == []


def test_structured_line_path_range(table1_mesh):
    with pytest.raises(InvalidParameterError):
        structured_line_path(table1_mesh.mesh, table1_mesh.topo, table1_mesh.geom, 0)


def test_path_split_on_scale_jump():
    """A sharp change of H_z along a grid line breaks the chain."""
    gx = build_grid_1d("uniform", 4)
    gy = build_grid_1d("points", 0, points=np.concatenate([np.linspace(0, 0.5, 9), [0.75, 1.0]]))
    mesh = build_tensor_mesh(gx, gy)
    topo = build_topology(mesh)
    geom = compute_geometry(mesh, topo)
    classes = classify_nodes(mesh, topo, geom)
    short = short_edges(geom, topo)
    whole = extract_paths(mesh, topo, geom, classes, short, kappa_h=100.0)
    split = extract_paths(mesh, topo, geom, classes, short, kappa_h=1.01)
    whole_edges = set(np.concatenate([p.edges for p in whole]).tolist())
    split_edges = set(np.concatenate([p.edges for p in split]).tolist())
    assert split_edges < whole_edges
    for path in split:
        H = geom.node_diam[path.nodes]
        assert np.all(H <= 1.01 * path.H_P + 1e-15) and np.all(H >= path.H_P / 1.01 - 1e-15)


def test_lower_estimator(sine_state):
    s = sine_state
    bubble = lower_estimator(s.geom, s.topo, s.jumps, s.norms, "bubble", short=s.short)
    uniform = lower_estimator(s.geom, s.topo, s.jumps, s.norms, "uniform", short=s.short)
    for variant, rep in (("bubble", bubble), ("uniform", uniform)):
        assert rep.E[variant] ** 2 == pytest.approx(rep.E_jump[variant] ** 2 + rep.E_volume**2)
        assert 0.0 < rep.E0[variant] <= rep.E_jump[variant]
    assert bubble.E["bubble"] < uniform.E["uniform"]
    w = s.geom.edge_patch_area * s.jumps.jump**2
    assert uniform.E_jump["uniform"] ** 2 == pytest.approx(w[s.topo.interior_edges].sum())
    merged = bubble.merge(uniform)
    assert set(merged.E) == {"bubble", "uniform"}


def test_lower_estimator_on_regions(sine_state):
    s = sine_state
    whole = lower_estimator(s.geom, s.topo, s.jumps, s.norms, "uniform", short=s.short)
    left = s.mesh.nodes[s.mesh.triangles, 0].mean(axis=1) < 0.5
    parts = [
        lower_estimator(s.geom, s.topo, s.jumps, s.norms, "uniform", Region.from_elements(name, mask, s.topo), s.short)
        for name, mask in (("left", left), ("right", ~left))
    ]
    assert sum(p.E["uniform"] ** 2 for p in parts) <= whole.E["uniform"] ** 2 * (1 + 1e-12)
    assert parts[0].region == "left"

    empty = Region.from_elements("none", np.zeros(s.mesh.n_triangles, dtype=bool), s.topo)
    rep = lower_estimator(s.geom, s.topo, s.jumps, s.norms, "bubble", empty, s.short)
    assert rep.empty and rep.E["bubble"] == 0.0 and rep.E0["bubble"] == 0.0


def test_upper_estimators_and_y(sine_state):
    s = sine_state
    eq2 = upper_estimator(s.geom, s.topo, s.jumps, s.norms, "eq2")
    eq3 = upper_estimator(s.geom, s.topo, s.jumps, s.norms, "eq3")
    jump = eq2.upper_components["eq2_jump"]
    assert eq3.upper_components["eq3_jump"] == pytest.approx(jump)
    assert eq2.upper["eq2"] >= jump and eq3.upper["eq3"] >= jump
    assert eq2.upper_components["eq2_Hf"] >= eq3.upper_components["eq3_hf"]
    with pytest.raises(InvalidParameterError):
        upper_estimator(s.geom, s.topo, s.jumps, s.norms, "eq4")
    error = math.sqrt(s.local_error_sq.sum())
    Y = y_indicator(s.local_error_sq, s.norms)
    assert Y >= error
    assert Y == pytest.approx(error + s.norms.total("osc_f"))


def test_report_row_and_ratios():
    rep = EstimatorReport(error=0.1, Y=0.2, E={"bubble": 0.28}, E0={"bubble": 0.014})
    assert rep.effectivity("bubble") == pytest.approx(2.8)
    assert rep.ratio("bubble") == pytest.approx(0.05)
    row = rep.row()
    assert math.isnan(row["E_uniform"]) and math.isnan(row["eff_uniform"])
    assert row["region"] == "Omega"
    with pytest.raises(ValueError):
        rep.merge(EstimatorReport(region="Omega_1"))


@pytest.mark.parametrize("include_boundary", [False, True])
def test_vertex_identity_on_random_fields(table1_mesh, criss_cross_mesh, include_boundary):
    rng = np.random.default_rng(7)
    for bundle in (table1_mesh, criss_cross_mesh):
        for _ in range(20):
            u = DiscreteField(bundle.mesh, rng.standard_normal(bundle.mesh.n_nodes))
            res = vertex_identity_residual(bundle.mesh, bundle.topo, u, include_boundary)
            assert res.relative < 1e-12
            expected = bundle.mesh.n_nodes if include_boundary else int((~bundle.mesh.boundary).sum())
            assert res.nodes.size == expected


def test_jump_difference_along_paths(sine_state):
    s = sine_state
    est_classes = classify_nodes(s.mesh, s.topo, s.geom)
    paths = extract_paths(s.mesh, s.topo, s.geom, est_classes, s.short)
    assert len(paths) == 7
    for path in paths:
        rep = jump_difference_check(s.mesh, s.topo, s.geom, s.u_h, s.jumps, path)
        assert rep.nodes.size == path.nodes.size
        assert np.all(rep.numerator >= 0.0)
        assert np.isfinite(rep.max_ratio)
        assert rep.on_boundary[0] and rep.on_boundary[-1]
        assert rep.j_prime.size == path.edges.size
        # vertical path edges: nu is parallel to xi
        assert np.allclose(np.abs(rep.j_prime), s.jumps.magnitude[path.edges])
        assert np.allclose(
            normalized_jumps(s.topo, s.u_h, s.jumps, path.edges, path.xi), rep.j_prime
        )
    sub = jump_difference_check(s.mesh, s.topo, s.geom, s.u_h, s.jumps, paths[0], nodes=paths[0].nodes[2:4])
    assert sub.nodes.size == 2
    with pytest.raises(InvalidParameterError):
        jump_difference_check(s.mesh, s.topo, s.geom, s.u_h, s.jumps, paths[0], nodes=paths[1].nodes[:1])


def test_bubble_bound_constants(sine_state):
    s = sine_state
    c = bubble_bound_check(s.geom, s.topo, s.u_h, s.fI, s.jumps, s.norms, s.local_error_sq)
    assert c.C_f > 0.0
    assert 0.0 < c.C_J["bubble"] <= c.C_J["uniform"]
    assert c.anomalies == 0


def test_bubble_bound_on_short_edges(sine_state):
    s = sine_state
    c = bubble_bound_check(s.geom, s.topo, s.u_h, s.fI, s.jumps, s.norms, s.local_error_sq, short=s.short)
    assert set(c.C_J_short) == {"bubble", "uniform"}
    assert 0.0 < c.C_J_short["bubble"] < c.C_J_short["uniform"]
    for variant in ("bubble", "uniform"):
        assert c.C_J_short[variant] <= c.C_J[variant]


def test_bubble_bound_of_linear_solution():
    linear = make_problem("linear", alpha=1.0, beta=2.0)
    config = AnisoSettings(solver=SolverSettings(method="direct"))
    state, _ = prepare_case(linear, 4, 8, config=config)
    c = bubble_bound_check(state.geom, state.topo, state.u_h, state.fI, state.jumps, state.norms, state.local_error_sq)
    assert c.C_f == 0.0
    assert c.anomalies == 0


def test_edge_dump(sine_state):
    s = sine_state
    text = edge_dump(s.mesh, s.topo, s.geom, s.jumps, s.short)
    lines = text.strip().splitlines()
    assert lines[0].startswith("edge,a,b,x_mid,y_mid,length")
    assert len(lines) == 1 + int(s.topo.interior_edges.sum())
    shorts = sum(int(line.split(",")[8]) for line in lines[1:])
    assert shorts == int(s.short.sum())


def test_lower_estimator_is_additive_over_a_partition(sine_state):
    s = sine_state
    left = s.mesh.nodes[s.mesh.triangles, 0].mean(axis=1) < 0.5
    parts = Region.partition({"left": left, "right": ~left}, s.topo)
    owned = parts[0].edges.astype(int) + parts[1].edges.astype(int)
    assert np.array_equal(owned, s.topo.interior_edges.astype(int))
    for variant in ("bubble", "uniform"):
        whole = lower_estimator(s.geom, s.topo, s.jumps, s.norms, variant, short=s.short)
        pieces = [lower_estimator(s.geom, s.topo, s.jumps, s.norms, variant, p, s.short) for p in parts]
        assert sum(p.E[variant] ** 2 for p in pieces) == pytest.approx(whole.E[variant] ** 2, rel=1e-12)
        assert sum(p.E0[variant] ** 2 for p in pieces) == pytest.approx(whole.E0[variant] ** 2, rel=1e-12)


def test_partition_must_cover_each_element_once(sine_state):
    s = sine_state
    everything = np.ones(s.mesh.n_triangles, dtype=bool)
    with pytest.raises(InvalidParameterError):
        Region.partition({"a": everything, "b": everything}, s.topo)
    with pytest.raises(InvalidParameterError):
        Region.partition({"a": ~everything}, s.topo)


def test_amplitude_scales_estimators_and_keeps_effectivity(sine, sine_state):
    loud, _ = prepare_case(sine.amplified(4.0), 8, 16)
    base, scaled = estimate(sine_state), estimate(loud)
    assert scaled.error == pytest.approx(4.0 * base.error, rel=1e-12)
    for variant in ("bubble", "uniform"):
        assert scaled.E[variant] == pytest.approx(4.0 * base.E[variant], rel=1e-12)
        assert scaled.E0[variant] == pytest.approx(4.0 * base.E0[variant], rel=1e-12)
        assert scaled.effectivity(variant) == pytest.approx(base.effectivity(variant), rel=1e-12)


@pytest.mark.parametrize("n", [4, 8, 16])
@pytest.mark.parametrize("diagonal", ["sw_ne", "criss_cross"])
def test_bubble_weight_is_bounded_on_shape_regular_meshes(n, diagonal):
    b = tensor_bundle(n, n, diagonal)
    rho = edge_weights("bubble", b.geom, b.topo)[b.topo.interior_edges]
    assert (1.0 / rho).max() == pytest.approx(math.sqrt(2.0))
    stretched = tensor_bundle(n, 8 * n)
    rho = edge_weights("bubble", stretched.geom, stretched.topo)[stretched.topo.interior_edges]
    assert (1.0 / rho).max() == pytest.approx(math.hypot(1.0, 8.0))
