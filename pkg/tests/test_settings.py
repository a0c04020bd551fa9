from anisoest.settings import AnisoSettings, EstimatorSettings, SolverSettings


def test_defaults():
    config = AnisoSettings()
    assert config.solver.method == "auto"
    assert config.solver.tol == 1e-10
    assert config.estimator.c0 == 0.5
    assert config.estimator.c_short == 0.5
    assert config.estimator.c_uni is None
    assert config.estimator.diagonal == "sw_ne"
    assert config.desk_max_triangles == 1_000_000
    assert config.threads == 1


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("ANISOEST_SOLVER_TOL", "1e-8")
    monkeypatch.setenv("ANISOEST_SOLVER_METHOD", "direct")
    monkeypatch.setenv("ANISOEST_ESTIMATOR_C_SHORT", "0.25")
    monkeypatch.setenv("ANISOEST_THREADS", "4")
    assert SolverSettings().tol == 1e-8
    assert SolverSettings().method == "direct"
    assert EstimatorSettings().c_short == 0.25
    config = AnisoSettings()
    assert config.threads == 4
    assert config.solver.method == "direct"


def test_model_copy_keeps_other_fields():
    config = AnisoSettings()
    tuned = config.model_copy(update={"solver": config.solver.model_copy(update={"tol": 1e-6})})
    assert tuned.solver.tol == 1e-6
    assert tuned.solver.method == config.solver.method
    assert config.solver.tol == 1e-10
