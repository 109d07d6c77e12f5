"""Exact algebra on polynomial x Gaussian functions and Hamiltonian moments.

A :class:`GaussPoly` is ``sum c_ij x^i y^j exp(-a (x^2 + y^2))`` with
rational ``a`` and ``c_ij``.  Inner products are reported divided by
pi / (2a), the value of the Gaussian overlap itself, so every quantity here is
an exact rational.  That factor cancels in every moment ratio.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import json
from math import comb

from gmpy2 import mpq
import numpy as np

from x2y2.errors import ContractViolation
from x2y2.symmetry import check_species

_PREFACTORS = {
    "A1": {(0, 0): 1},
    "A2": {(3, 1): 1, (1, 3): -1},
    "B1": {(2, 0): 1, (0, 2): -1},
    "B2": {(1, 1): 1},
    "Ex": {(1, 0): 1},
    "Ey": {(0, 1): 1},
}


def to_rational(x):
    """Parse ints, Fractions, mpq or strings like '3/4' into an mpq."""
    if isinstance(x, str):
        return mpq(Fraction(x.strip()))
    if isinstance(x, float):
        return mpq(Fraction(x).limit_denominator(10**12)) if not x.is_integer() else mpq(int(x))
    return mpq(x)


def to_fraction(q):
    return Fraction(int(q.numerator), int(q.denominator))


def fraction_str(q):
    q = to_fraction(q)
    return f"{q.numerator}/{q.denominator}"


@dataclass
class GaussPoly:
    a: object
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.a = to_rational(self.a)
        if self.a <= 0:
            raise ContractViolation("Gaussian exponent a must be positive")
        self.terms = {k: mpq(v) for k, v in self.terms.items() if v != 0}

    @property
    def degree(self):
        return max((i + j for i, j in self.terms), default=0)

    def __eq__(self, other):
        return isinstance(other, GaussPoly) and self.a == other.a and self.terms == other.terms

    def __add__(self, other):
        _same_exponent(self, other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return GaussPoly(self.a, out)

    def scale(self, c):
        c = to_rational(c)
        return GaussPoly(self.a, {k: c * v for k, v in self.terms.items()})

    def swap_xy(self):
        return GaussPoly(self.a, {(j, i): v for (i, j), v in self.terms.items()})

    def __call__(self, x, y):
        """Numerical value at (x, y); accepts numpy arrays."""
        poly = sum(float(c) * x**i * y**j for (i, j), c in self.terms.items())
        return poly * np.exp(-float(self.a) * (x * x + y * y))


def _same_exponent(f, g):
    if f.a != g.a:
        raise ContractViolation(f"Gaussian exponents differ: {f.a} vs {g.a}")


def reference_function(species, a=1):
    """Gaussian reference of a species: prefactor times exp(-a r^2)."""
    return GaussPoly(a, dict(_PREFACTORS[check_species(species)]))


def apply_h(f):
    """(-d^2/dx^2 - d^2/dy^2 + x^2 y^2) f, exactly."""
    a = f.a
    two_a = 2 * a
    four_a2 = 4 * a * a
    out = {}

    def add(key, val):
        out[key] = out.get(key, 0) + val

    # d^2/dx^2 [x^i e^{-a x^2}] = [i(i-1) x^{i-2} - 2a(2i+1) x^i + 4a^2 x^{i+2}] e^{-a x^2}
    for (i, j), c in f.terms.items():
        if i >= 2:
            add((i - 2, j), -c * (i * (i - 1)))
        if j >= 2:
            add((i, j - 2), -c * (j * (j - 1)))
        add((i, j), c * two_a * (2 * i + 2 * j + 2))
        add((i + 2, j), -c * four_a2)
        add((i, j + 2), -c * four_a2)
        add((i + 2, j + 2), c)
    return GaussPoly(a, out)


def _weights(a, count):
    """w[r] = int x^{2r} e^{-2a x^2} dx / sqrt(pi/(2a)) = (2r-1)!!/(4a)^r."""
    w = [mpq(1)]
    for r in range(1, count):
        w.append(w[-1] * (2 * r - 1) / (4 * a))
    return w


def _parity_blocks(f):
    """Split terms by (i mod 2, j mod 2) into dense arrays over halved indices."""
    blocks = {}
    for (i, j), c in f.terms.items():
        blocks.setdefault((i % 2, j % 2), []).append((i // 2, j // 2, c))
    dense = {}
    for key, items in blocks.items():
        ni = max(r for r, _, _ in items) + 1
        nj = max(s for _, s, _ in items) + 1
        C = np.full((ni, nj), mpq(0), dtype=object)
        for r, s, c in items:
            C[r, s] = c
        dense[key] = C
    return dense


def _hankel(w, parity, rows, cols):
    # x^(2r+p) x^(2s+p) = x^(2(r+s+p))
    W = np.empty((rows, cols), dtype=object)
    for r in range(rows):
        for s in range(cols):
            W[r, s] = w[r + s + parity]
    return W


class _InnerProduct:
    """Reduced inner products with cached weight tables."""

    def __init__(self, a):
        self.a = to_rational(a)
        self.w = [mpq(1)]

    def weights(self, count):
        if len(self.w) < count:
            self.w = _weights(self.a, count)
        return self.w

    def __call__(self, f, g):
        if f.a != self.a or g.a != self.a:
            raise ContractViolation("Gaussian exponents differ")
        fb, gb = _parity_blocks(f), _parity_blocks(g)
        total = mpq(0)
        for key, C in fb.items():
            D = gb.get(key)
            if D is None:
                continue
            px, py = key
            w = self.weights(max(C.shape + D.shape) * 2 + 2)
            Wx = _hankel(w, px, C.shape[0], D.shape[0])
            Wy = _hankel(w, py, C.shape[1], D.shape[1])
            # sum_{ijkl} C_ij D_kl Wx_ik Wy_jl
            M = Wx.T.dot(C).dot(Wy)
            total += (M * D).sum()
        return total


def reduced_inner(f, g):
    """<f|g> divided by pi/(2a), as an exact rational."""
    _same_exponent(f, g)
    return _InnerProduct(f.a)(f, g)


@dataclass
class MomentTable:
    species: str
    a: Fraction
    mu: list
    connected: list

    def to_json(self):
        return json.dumps(
            {
                "species": self.species,
                "a": fraction_str(self.a),
                "mu": [fraction_str(m) for m in self.mu],
                "connected": [fraction_str(c) for c in self.connected],
            },
            indent=1,
        )

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls(
            d["species"],
            Fraction(d["a"]),
            [Fraction(s) for s in d["mu"]],
            [Fraction(s) for s in d["connected"]],
        )


def krylov_functions(species, a, count):
    """[phi, H phi, ..., H^(count-1) phi] for the species reference."""
    fs = [reference_function(species, a)]
    for _ in range(count - 1):
        fs.append(apply_h(fs[-1]))
    return fs


def moments(species, a=1, J=0):
    """Normalized moments mu_0..mu_J and connected moments I_1..I_J."""
    if J < 0:
        raise ContractViolation("J must be >= 0")
    a = to_rational(a)
    fs = krylov_functions(species, a, (J + 1) // 2 + 1)
    inner = _InnerProduct(a)
    norm = inner(fs[0], fs[0])
    mu = []
    for jk in range(J + 1):
        j = jk // 2
        mu.append(inner(fs[j], fs[jk - j]) / norm)
    return MomentTable(
        species=species,
        a=to_fraction(a),
        mu=[to_fraction(m) for m in mu],
        connected=connected_moments(mu),
    )


def connected_moments(mu):
    """Connected moments [I_1, ..., I_J] from mu = [1, mu_1, ..., mu_J].

    I_{k+1} = mu_{k+1} - sum_{m=0}^{k-1} C(k, m) I_{m+1} mu_{k-m}
    """
    if not mu or mu[0] != 1:
        raise ContractViolation("mu[0] must be exactly 1")
    mu = [mpq(m) for m in mu]
    I = []
    for k in range(len(mu) - 1):
        s = mu[k + 1]
        for m in range(k):
            s -= comb(k, m) * I[m] * mu[k - m]
        I.append(s)
    return [to_fraction(x) for x in I]
