import math

import numpy as np
import pytest

import semilab


def test_grid_nodes():
    g = semilab.Grid(-1.0, 1.0, 5)
    assert g.n == 5
    assert g.dx == pytest.approx(0.5)
    np.testing.assert_allclose(g.nodes(), [-1.0, -0.5, 0.0, 0.5, 1.0])


def test_sample_roundtrip():
    g = semilab.Grid(-4.0, 4.0, 81)
    f = semilab.sample("gauss(1)", g)
    x = g.nodes()
    np.testing.assert_allclose(f.values, np.exp(-x * x / 2.0), rtol=0, atol=1e-15)
    h = semilab.GridFunction(g, f.values)
    assert semilab.sup_norm(h) == semilab.sup_norm(f)
    assert f.to_csv().splitlines()[0] == "x,value"


def test_dilate_matches_naive():
    g = semilab.Grid(-4.0, 4.0, 401)
    rng = np.random.default_rng(7)
    f = semilab.GridFunction(g, rng.normal(size=g.n))
    for r in (0, 1, 5, 37, 500):
        a = semilab.dilate(f, r).values
        b = semilab.dilate_naive(f, r).values
        assert np.array_equal(a, b)


def test_dilation_semigroup_closed_form():
    g = semilab.Grid(-4.0, 4.0, 1601)
    S = semilab.DilationSemigroup(g)
    u = S.evolve(semilab.sample("ex43", g), 1.0).values
    x = g.nodes()
    inside = np.abs(x) <= 1.0
    exact = np.where(x >= 0, (x + 1) ** 2, (x - 1) ** 4)
    assert np.max(np.abs(u[inside] - exact[inside])) <= 1e-12


def test_gheat_schemes_agree_on_quadratic():
    g = semilab.Grid(-4.0, 4.0, 401)
    f = semilab.sample("quad(1)", g)
    cfg = semilab.GHeatConfig(0.5, 1.0, 0.5)
    fd = semilab.fd_evolve(f, 0.1, cfg).values
    ni = semilab.nisio_evolve(f, 0.1, 32, cfg).values
    mid = np.abs(g.nodes()) <= 2.0
    np.testing.assert_allclose(fd[mid], (f.values + 0.1)[mid], atol=1e-9)
    np.testing.assert_allclose(ni[mid], (f.values + 0.1)[mid], atol=1e-6)


def test_generator_probe_shift():
    g = semilab.Grid(-math.pi, math.pi, 2001, semilab.Extension.periodic)
    S = semilab.DilationSemigroup(g)
    f = semilab.sample("sin(1)", g)
    ref = semilab.GridFunction(g, np.abs(np.cos(g.nodes())))
    rep = semilab.generator_probe(S, f, [0.1 * 0.5**k for k in range(6)], ref, trim=0.01)
    assert rep["verdict"] == "converges"
    assert rep["limit_deviation"] <= 10 * g.dx


def test_run_scenario():
    ids = [s for s, _ in semilab.scenarios()]
    assert "example-4-3" in ids
    res = semilab.run_scenario("example-4-3")
    assert res["overall"]
    assert all(row["pass"] for row in res["rows"])


def test_run_scenario_writes_artifacts(tmp_path):
    res = semilab.run_scenario("example-4-3", [], str(tmp_path))
    assert res["overall"]
    assert (tmp_path / "example-4-3" / "result.csv").exists()


def test_errors():
    with pytest.raises(ValueError):
        semilab.Grid(1.0, -1.0, 5)
    g = semilab.Grid(-1.0, 1.0, 5)
    with pytest.raises(ValueError):
        semilab.GridFunction(g, np.zeros(3))
    with pytest.raises(ValueError):
        semilab.GHeatConfig(1.0, 0.5, 0.5)
    with pytest.raises(RuntimeError):
        semilab.run_scenario("no-such-scenario")
    with pytest.raises(RuntimeError):
        semilab.run_scenario("example-4-3", ["n=bogus"])
