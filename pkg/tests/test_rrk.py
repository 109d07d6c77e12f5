from fractions import Fraction

import mpmath
import pytest

from x2y2.errors import ContractViolation
from x2y2.moments import moments
from x2y2.rrho import solve_block
from x2y2.rrk import krylov_matrices, rrk_scan, rrk_spectrum
from x2y2.symmetry import SPECIES


def test_k1_is_rayleigh_quotient():
    res = rrk_spectrum("A1", 1, 1, 40)
    assert res.eigenvalues[0] == mpmath.mpf(33) / 16
    assert float(res.eigenvalues[0]) == 2.0625


def test_krylov_matrices_are_hankel():
    mu = moments("B1", 1, 7).mu
    H, S = krylov_matrices(mu, 4)
    assert S[1][2] == S[2][1] == S[0][3] == mu[3]
    assert H[0][0] == mu[1] and H[3][3] == mu[7]
    with pytest.raises(ContractViolation):
        krylov_matrices(mu, 5)


def test_argument_checks():
    with pytest.raises(ContractViolation):
        rrk_spectrum("A1", 1, 0, 60)
    with pytest.raises(ContractViolation):
        rrk_spectrum("A1", 1, 5, 20)
    with pytest.raises(ContractViolation):
        rrk_scan("A1", 1, [3, 2])


def test_two_beats_one():
    table = rrk_scan("A1", 1, [1, 2], 40)
    e1, e2 = (r.eigenvalues[0] for r in table.results)
    assert e2 <= e1
    assert table.monotone == [True]


@pytest.mark.parametrize("species", ["A1", "B2"])
def test_scan_decreases_towards_rrho(species):
    table = rrk_scan(species, 1, range(1, 16), 60, k=2)
    assert table.all_monotone
    best = solve_block(species, 60, 2).eigenvalues
    for res in table.results:
        for got, floor in zip(res.eigenvalues, best):
            assert float(got) >= floor - 1e-10


def test_ex_ey_scans_identical():
    tx = rrk_scan("Ex", 1, [2, 6, 10], 50, k=3)
    ty = rrk_scan("Ey", 1, [2, 6, 10], 50, k=3)
    for rx, ry in zip(tx.results, ty.results):
        assert rx.eigenvalues == ry.eigenvalues


def test_precision_sanity():
    lo = rrk_spectrum("A2", 1, 25, 60)
    hi = rrk_spectrum("A2", 1, 25, 120)
    for a, b in zip(lo.eigenvalues[:5], hi.eigenvalues[:5]):
        assert abs(a - b) < mpmath.mpf(10) ** -40


def test_truncates_instead_of_regularizing(caplog):
    res = rrk_spectrum("A1", 1, 60, 30)
    assert res.flags["truncated"]
    assert res.flags["requested_K"] == 60
    assert 25 < res.size_param < 60
    assert "positive definiteness" in caplog.text
    # the truncated answer is the genuine K' answer
    ref = rrk_spectrum("A1", 1, res.size_param, 30)
    assert ref.eigenvalues[0] == res.eigenvalues[0]


def test_other_exponent():
    # the reference exponent changes the path, not the limit
    half = rrk_spectrum("B2", Fraction(3, 2), 20, 60).eigenvalues[0]
    assert float(half) == pytest.approx(5.01127928154, abs=1e-5)
    assert float(half) >= 5.01127928154 - 1e-10
