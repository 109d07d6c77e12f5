from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from x2y2.errors import ContractViolation
from x2y2.moments import (
    GaussPoly,
    MomentTable,
    apply_h,
    connected_moments,
    krylov_functions,
    moments,
    reduced_inner,
    reference_function,
)
from x2y2.symmetry import SPECIES

x, y = sp.symbols("x y", real=True)


def to_sympy(f):
    a = sp.Rational(str(f.a))
    poly = sum(sp.Rational(str(c)) * x**i * y**j for (i, j), c in f.terms.items())
    return poly * sp.exp(-a * (x**2 + y**2))


def from_sympy(expr, a):
    a = sp.Rational(str(a))
    poly = sp.Poly(sp.expand(expr * sp.exp(a * (x**2 + y**2))), x, y)
    return GaussPoly(Fraction(str(a)), {k: Fraction(str(v)) for k, v in poly.terms()})


def h_sympy(expr):
    return -sp.diff(expr, x, 2) - sp.diff(expr, y, 2) + x**2 * y**2 * expr


def test_reference_functions():
    assert reference_function("A1", 1).terms == {(0, 0): 1}
    assert reference_function("A2", 1).terms == {(3, 1): 1, (1, 3): -1}
    assert reference_function("Ex", 1).terms == {(1, 0): 1}
    assert reference_function("B1", Fraction(1, 2)).a == Fraction(1, 2)


def test_exponent_must_be_positive():
    with pytest.raises(ContractViolation):
        GaussPoly(0, {(0, 0): 1})


def test_apply_h_examples():
    assert apply_h(reference_function("A1", 1)).terms == {(0, 0): 4, (2, 0): -4, (0, 2): -4, (2, 2): 1}
    assert apply_h(reference_function("Ex", 1)).terms == {(1, 0): 8, (3, 0): -4, (1, 2): -4, (3, 2): 1}


@pytest.mark.parametrize("species", SPECIES)
@pytest.mark.parametrize("a", [Fraction(1), Fraction(3, 4)])
def test_apply_h_matches_symbolic_derivative(species, a):
    f = reference_function(species, a)
    expr = to_sympy(f)
    for _ in range(3):
        f = apply_h(f)
        expr = sp.expand(h_sympy(expr))
        assert f == from_sympy(expr, a)


@pytest.mark.parametrize("species", SPECIES)
def test_parity_and_degree(species):
    fs = krylov_functions(species, 1, 8)
    parity = {(i % 2, j % 2) for i, j in fs[0].terms}
    for j, f in enumerate(fs):
        assert {(i % 2, k % 2) for i, k in f.terms} == parity
        assert f.degree == fs[0].degree + 4 * j


def test_reduced_inner_examples():
    g = reference_function("A1", 1)
    xg = reference_function("Ex", 1)
    assert reduced_inner(g, g) == 1
    assert reduced_inner(xg, xg) == Fraction(1, 4)
    assert reduced_inner(g, xg) == 0
    with pytest.raises(ContractViolation):
        reduced_inner(g, reference_function("A1", 2))


def test_reduced_inner_matches_symbolic_integral():
    a = Fraction(2, 3)
    f = apply_h(reference_function("B1", a))
    g = apply_h(apply_h(reference_function("B1", a)))
    exact = sp.integrate(sp.expand(to_sympy(f) * to_sympy(g)), (x, -sp.oo, sp.oo), (y, -sp.oo, sp.oo))
    want = sp.nsimplify(sp.simplify(exact / (sp.pi / (2 * sp.Rational(2, 3)))))
    assert reduced_inner(f, g) == Fraction(str(want))


@st.composite
def same_parity_pair(draw):
    px, py = draw(st.integers(0, 1)), draw(st.integers(0, 1))
    a = Fraction(draw(st.integers(1, 5)), draw(st.integers(1, 5)))
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=9)

    def poly():
        keys = draw(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=5))
        return GaussPoly(a, {(2 * i + px, 2 * j + py): draw(coeff) for i, j in keys})

    return poly(), poly()


@given(same_parity_pair())
def test_hermiticity(fg):
    f, g = fg
    assert reduced_inner(apply_h(f), g) == reduced_inner(f, apply_h(g))


@given(same_parity_pair())
def test_inner_symmetric_and_positive(fg):
    f, g = fg
    assert reduced_inner(f, g) == reduced_inner(g, f)
    if f.terms:
        assert reduced_inner(f, f) > 0


def test_moment_examples():
    assert moments("A1", 1, 1).mu == [1, Fraction(33, 16)]
    assert moments("B2", 1, 1).mu == [1, Fraction(105, 16)]
    for sp_ in SPECIES:
        assert moments(sp_, Fraction(5, 7), 0).mu == [1]


@given(st.fractions(min_value=Fraction(1, 10), max_value=5, max_denominator=20))
def test_first_moment_closed_forms(a):
    # A1: <T> = 2a, <x^2 y^2> = 1/(16 a^2); B2 picks up 3x for both.
    assert moments("A1", a, 1).mu[1] == 2 * a + Fraction(1, 16) / a**2
    assert moments("B2", a, 1).mu[1] == 6 * a + Fraction(9, 16) / a**2


def test_moments_use_both_even_and_odd_splits():
    # mu_3 from <f1|f2> must equal <f0|f3>
    fs = krylov_functions("B1", 1, 4)
    n = reduced_inner(fs[0], fs[0])
    mu = moments("B1", 1, 3).mu
    assert mu[3] == reduced_inner(fs[0], fs[3]) / n
    assert mu[2] == reduced_inner(fs[0], fs[2]) / n


@pytest.mark.parametrize("species", SPECIES)
def test_hankel_positive_definite_exact(species):
    mu = moments(species, 1, 18).mu
    K = 10
    A = [[mu[j + k] for k in range(K)] for j in range(K)]
    # exact LDL^T: all pivots must be positive
    for c in range(K):
        piv = A[c][c]
        assert piv > 0
        for r in range(c + 1, K):
            f = A[r][c] / piv
            for s in range(c, K):
                A[r][s] -= f * A[c][s]


def test_ex_ey_tables_identical():
    tx, ty = moments("Ex", 1, 12), moments("Ey", 1, 12)
    assert tx.mu == ty.mu
    assert tx.connected == ty.connected


def test_connected_moments_examples():
    m1, m2, m3 = Fraction(3, 2), Fraction(7, 3), Fraction(11, 4)
    assert connected_moments([1, m1]) == [m1]
    assert connected_moments([1, m1, m2]) == [m1, m2 - m1**2]
    # third cumulant
    assert connected_moments([1, m1, m2, m3])[2] == m3 - 3 * m1 * m2 + 2 * m1**3
    t = moments("A1", 1, 2)
    assert t.connected[1] == t.mu[2] - Fraction(33, 16) ** 2
    with pytest.raises(ContractViolation):
        connected_moments([2, 1])


def test_moment_table_json_roundtrip():
    t = moments("A2", Fraction(3, 4), 7)
    back = MomentTable.from_json(t.to_json())
    assert back == t
