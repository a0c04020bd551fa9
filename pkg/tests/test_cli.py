import pytest

from anisoest import cli
from anisoest.mesh.io import read_mesh
from anisoest.render import read_csv
from anisoest.settings import AnisoSettings, SolverSettings


def test_mesh_command(capsys, tmp_path):
    dump = tmp_path / "mesh.txt"
    assert cli.dispatch(["mesh", "--nx", "4", "--ny", "8", "--dump", str(dump)]) == 0
    out = capsys.readouterr().out
    assert "nodes 45 triangles 64" in out
    assert read_mesh(dump.read_text()).n_triangles == 64


def test_mesh_command_criss_cross(capsys):
    assert cli.dispatch(["mesh", "--nx", "2", "--ny", "2", "--diagonal", "criss_cross"]) == 0
    assert "nodes 13 triangles 16" in capsys.readouterr().out


def test_solve_prints_table1_values(capsys):
    argv = ["solve", "--problem", "sine", "--a", "1", "--nx", "20", "--ny", "40", "--estimator", "uniform"]
    assert cli.dispatch(argv + ["--format", "csv_full"]) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0].startswith("error 1.01e-1; E_uniform ")
    row = read_csv("\n".join(lines[2:]))[0]
    assert row["problem"] == "sine(a=1)"
    assert row["error"] == pytest.approx(1.01e-1, rel=0.03)
    assert row["E_uniform"] == pytest.approx(3.81e-1, rel=0.03)
    assert row["eff_uniform"] == pytest.approx(3.79, abs=0.05)


def test_solve_is_deterministic(capsys):
    argv = ["solve", "--problem", "layer", "--eps", "0.25", "--nx", "8", "--ny", "16", "--format", "csv"]
    assert cli.dispatch(argv) == 0
    first = capsys.readouterr().out
    assert cli.dispatch(argv) == 0
    assert capsys.readouterr().out == first


def test_solve_dumps(capsys, tmp_path):
    edges, field = tmp_path / "edges.csv", tmp_path / "field.txt"
    argv = ["solve", "--nx", "4", "--ny", "8", "--strips", "--dump-edges", str(edges), "--dump-field", str(field)]
    assert cli.dispatch(argv) == 0
    out = capsys.readouterr().out
    assert "Omega_0" in out and "Omega_4" in out
    assert edges.read_text().startswith("edge,a,b,")
    assert len(field.read_text().splitlines()) == 45


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--bogus"],
        ["solve", "--nx", "0"],
        ["solve", "--c0", "1.5"],
        ["solve", "--problem", "layer"],
        ["solve", "--problem", "cosine"],
        ["table", "--id", "7"],
        ["verify"],
    ],
)
def test_validation_failures_exit_1(argv):
    assert cli.dispatch(argv) == 1


def test_numerical_failure_exits_2(monkeypatch):
    monkeypatch.setattr(cli, "settings", AnisoSettings(solver=SolverSettings(method="cg", maxit=1)))
    assert cli.dispatch(["solve", "--nx", "8", "--ny", "16"]) == 2


def test_table_command_writes_files(monkeypatch, tmp_path, capsys):
    monkeypatch.setattr(cli, "settings", AnisoSettings(desk_max_triangles=2000))
    assert cli.dispatch(["table", "--id", "1", "--scale", "desk", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("a,N,M,error,hf_err")
    assert len(out.splitlines()) == 3
    rows = read_csv((tmp_path / "table1_desk.csv").read_text())
    assert [row["a"] for row in rows] == [1.0, 3.0]
    assert (tmp_path / "table1_desk.md").read_text().startswith("| a ")


def test_verify_identities(capsys):
    assert cli.dispatch(["verify", "--suite", "identities", "--max-n", "4"]) == 0
    out = capsys.readouterr().out
    assert "PASS identities: max vertex residual" in out
    assert "PASS linear reproduction" in out


def test_run_config_validation():
    with pytest.raises(ValueError):
        cli.RunConfig(command="solve", nx=-1)
    with pytest.raises(ValueError):
        cli.RunConfig(command="solve", c_short=0.0)
    config = cli.RunConfig(command="solve", c0=0.3, tol=1e-8, solver="direct").settings()
    assert config.estimator.c0 == 0.3
    assert config.solver.tol == 1e-8
    assert config.solver.method == "direct"
