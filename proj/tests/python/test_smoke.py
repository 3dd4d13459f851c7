"""Smoke tests for the python bindings: array round trips, a few closed
forms, and one tiny solver run."""

import math

import numpy as np
import pytest

import tlltorus as tll


def test_taylor_green_shape_and_energy():
    u = tll.taylor_green(32)
    assert u.shape == (2, 32, 32)
    cell = (2 * math.pi / 32) ** 2
    l2 = math.sqrt(np.sum(np.abs(u) ** 2) * cell)
    assert l2 == pytest.approx(math.pi * math.sqrt(2.0), rel=1e-12)
    assert tll.norm(u, dim=2, s=0.0) > 0.0


def test_lorentz_closed_form_on_constants():
    u = np.full((16, 16), 3.0)
    p, r = 2.5, 1.5
    expected = 3.0 * (2 * math.pi) ** (2 / p) * (p / r) ** (1 / r)
    assert tll.lorentz(u, dim=2, p=p, r=r) == pytest.approx(expected, rel=1e-12)

    values, step = tll.rearrangement(u, dim=2)
    assert step == pytest.approx((2 * math.pi / 16) ** 2, rel=1e-14)
    assert np.all(values == 3.0)


def test_projection_is_idempotent():
    u = tll.random_field(dim=2, comps=2, res=32, band=4, seed=5)
    pu = tll.project(u, dim=2)
    assert tll.relative_divergence(pu, dim=2) <= 1e-13
    assert np.max(np.abs(tll.project(pu, dim=2) - pu)) <= 1e-13

    sol, grad, _pot = tll.split(u, dim=2)
    assert np.max(np.abs((sol + grad) - u)) <= 1e-13 * np.max(np.abs(u))


def test_heat_matches_eigen_decay():
    x = 2 * math.pi * np.arange(16) / 16
    u = np.cos(x)[:, None] * np.ones(16)[None, :]  # single mode |xi| = 1
    flowed = tll.heat(u, dim=2, t=0.5)
    assert np.max(np.abs(flowed - math.exp(-0.5) * u)) <= 1e-12


def test_solver_completes_on_small_data():
    u0 = tll.taylor_green(16)
    out = tll.solve_nse(u0, dim=2, res=16, dt=1e-3, t_end=0.01)
    assert out["verdict"] == "completed"
    assert out["final_time"] == pytest.approx(0.01)
    assert out["final_state"].shape == (2, 16, 16)
    decay = out["samples"][-1]["l2"] / out["samples"][0]["l2"]
    assert decay == pytest.approx(math.exp(-0.02), rel=1e-6)


def test_suite_runs_quickly_and_passes():
    report = tll.run_suite("sobolev-time", resolutions=(16, 32), fields=3)
    assert report["name"] == "sobolev-time"
    assert report["passed"] is True
    assert len(report["per_res"]) == 2
    assert set(tll.suite_names()) >= {"norm-equivalences", "sobolev-time", "product"}


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        tll.lorentz(np.ones((8, 8)), dim=2, p=-1.0)
    with pytest.raises(ValueError):
        tll.project(np.ones((8, 8)), dim=2)  # scalar field has no divergence
    with pytest.raises(ValueError):
        tll.norm(np.ones((8, 7)), dim=2)  # ragged spatial axes


def test_field_io_round_trip(tmp_path):
    u = tll.random_field(dim=2, comps=1, res=16, band=4, seed=9)
    path = str(tmp_path / "field.tllf")
    tll.write_field(path, u, dim=2)
    back = tll.read_field(path)
    assert back.shape == (16, 16)
    assert np.max(np.abs(back - u)) == 0.0
