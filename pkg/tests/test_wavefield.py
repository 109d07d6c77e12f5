import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from conftest import rrho_block
from x2y2.errors import ContractViolation
from x2y2.rrho import SpectrumResult
from x2y2.wavefield import (
    FieldGrid,
    evaluate_state,
    export_grid,
    grid_axis,
    hermite_fn,
    hermite_table,
    parse_grid,
)

NMAX = 40

# (sigma_d: (x,y)->(y,x), sigma_v: (x,y)->(-x,y))
CHARACTERS = {"A1": (1, 1), "A2": (-1, -1), "B1": (-1, 1), "B2": (1, -1)}


def test_hermite_examples():
    assert hermite_fn(0, 0.0) == pytest.approx(math.pi**-0.25, abs=1e-15)
    assert hermite_fn(0, 0.0) == pytest.approx(0.7511255445, abs=1e-10)
    assert hermite_fn(1, 0.0) == 0
    val, _ = integrate.quad(lambda q: hermite_fn(3, q) ** 2, -np.inf, np.inf, epsabs=1e-13)
    assert val == pytest.approx(1.0, abs=1e-10)


def test_hermite_orthonormal_on_fine_grid():
    q = np.linspace(-20, 20, 8001)
    phi = hermite_table(60, q)
    gram = phi @ phi.T * (q[1] - q[0])
    np.testing.assert_allclose(gram, np.eye(61), atol=1e-10)


def test_hermite_large_n_finite():
    assert np.all(np.isfinite(hermite_table(200, np.linspace(-25, 25, 101))))


def test_grid_axis():
    ax = grid_axis(2.0, 5)
    assert list(ax) == [-2.0, -1.0, 0.0, 1.0, 2.0]
    np.testing.assert_array_equal(ax, -ax[::-1])
    with pytest.raises(ContractViolation):
        grid_axis(1.0, 4)


def _grid(species, state=0, L=6.0, N=61):
    return evaluate_state(rrho_block(species, NMAX), state, L, N)


@pytest.mark.parametrize("species", list(CHARACTERS))
@pytest.mark.parametrize("state", [0, 1])
def test_species_characters(species, state):
    v = _grid(species, state).values
    sd, sv = CHARACTERS[species]
    np.testing.assert_allclose(v.T, sd * v, atol=1e-8)
    np.testing.assert_allclose(v[:, ::-1], sv * v, atol=1e-8)


def test_e_components_parity():
    vx = _grid("Ex").values
    # Ex: even in x, odd in y
    np.testing.assert_allclose(vx[:, ::-1], vx, atol=1e-8)
    np.testing.assert_allclose(vx[::-1, :], -vx, atol=1e-8)
    vy = _grid("Ey").values
    np.testing.assert_allclose(vy, vx.T, atol=1e-8)


def test_ground_state_nodeless():
    g = _grid("A1")
    v = g.values
    c = g.N // 2
    assert v[c, c] > 0
    assert np.all(v[c, :] > 0) and np.all(v[:, c] > 0)
    assert np.abs(v).max() == pytest.approx(1.0)


def test_sign_convention():
    for sp in ("A1", "B1", "Ex"):
        v = _grid(sp).values.ravel()
        first = np.argmax(np.abs(v) > 0.5)
        assert v[first] > 0


def test_norm_consistent_between_resolutions():
    res = rrho_block("A1", NMAX)
    sums = []
    for N in (101, 201):
        g = evaluate_state(res, 0, 8.0, N)
        sums.append((g.values**2).sum() * g.spacing**2)
        assert sums[-1] == pytest.approx(1 / g.scale**2, abs=1e-4)
    assert sums[0] == pytest.approx(sums[1], abs=1e-4)


def test_missing_vectors():
    res = SpectrumResult("RRHO", "A1", 4, 6, [1.2])
    with pytest.raises(ContractViolation):
        evaluate_state(res, 0)
    with pytest.raises(ContractViolation):
        evaluate_state(rrho_block("A1", NMAX), 99)


def test_export_csv():
    g = _grid("A1", L=1.0, N=3)
    lines = export_grid(g, "csv").decode().splitlines()
    assert lines[0] == "x,y,psi"
    assert len(lines) == 10
    # row-major: y outer, x inner
    assert [l.split(",")[:2] for l in lines[1:4]] == [["-1", "-1"], ["0", "-1"], ["1", "-1"]]
    assert lines[5] == "0,0,1"


def test_export_json_roundtrip():
    g = _grid("B2", L=3.0, N=11)
    blob = export_grid(g, "json")
    back = parse_grid(blob, "json")
    assert back.N == g.N and back.L == g.L
    rounded = np.array([float(f"{v:.12g}") for v in g.values.ravel()]).reshape(g.N, g.N)
    np.testing.assert_array_equal(back.values, rounded)
    assert export_grid(back, "json") == blob
    assert set(json.loads(blob)) == {"L", "N", "values"}


def test_export_csv_roundtrip():
    g = _grid("A2", L=4.0, N=9)
    back = parse_grid(export_grid(g, "csv"), "csv")
    assert export_grid(back, "csv") == export_grid(g, "csv")


def test_export_bad_format():
    with pytest.raises(ContractViolation):
        export_grid(FieldGrid(1.0, 3, np.zeros((3, 3))), "png")


def test_export_deterministic():
    assert export_grid(_grid("B1"), "csv") == export_grid(_grid("B1"), "csv")


def test_e_exports_map_under_transpose():
    gx, gy = _grid("Ex", N=21), _grid("Ey", N=21)
    px = parse_grid(export_grid(gx, "json"), "json").values
    py = parse_grid(export_grid(gy, "json"), "json").values
    np.testing.assert_allclose(px, py.T, atol=1e-8)


@given(st.sampled_from(sorted(CHARACTERS)), st.integers(0, 3), st.sampled_from([5, 9, 21, 41]),
       st.floats(0.5, 7.0))
def test_characters_property(species, state, N, L):
    v = evaluate_state(rrho_block(species, 24), state, L, N).values
    sd, sv = CHARACTERS[species]
    np.testing.assert_allclose(v.T, sd * v, atol=1e-8)
    np.testing.assert_allclose(v[:, ::-1], sv * v, atol=1e-8)


def test_grid_on_nodal_lines_stays_finite():
    # a 3x3 grid hits only axes and diagonals, where A2 vanishes
    g = _grid("A2", L=2.0, N=3)
    assert np.all(np.isfinite(g.values))
    assert np.abs(g.values).max() < 1e-10
