"""C4v symmetry-adapted product functions.

The E representation is split into two components that never mix: ``Ex``
holds phi_m(x) phi_n(y) with m even, n odd and ``Ey`` the mirror images.
"""

from dataclasses import dataclass
import math

from x2y2.errors import ContractViolation
from x2y2.ho_basis import BasisPair, h2d_element

SPECIES = ("A1", "A2", "B1", "B2", "Ex", "Ey")

# (parity of m, parity of n, sign, strict m < n)
_RULES = {
    "A1": (0, 0, +1, False),
    "A2": (1, 1, -1, True),
    "B1": (0, 0, -1, True),
    "B2": (1, 1, +1, False),
    "Ex": (0, 1, 0, False),
    "Ey": (1, 0, 0, False),
}


def check_species(species):
    if species not in _RULES:
        raise ContractViolation(f"unknown species {species!r}; expected one of {SPECIES}")
    return species


@dataclass(frozen=True)
class SymFunction:
    species: str
    m: int
    n: int
    sign: int
    norm: float

    def expand(self):
        """Plain products making up this function, as [(BasisPair, coeff)]."""
        if self.sign == 0:
            return [(BasisPair(self.m, self.n), self.norm)]
        if self.m == self.n:
            # (phi_mm + phi_mm) / 2
            return [(BasisPair(self.m, self.n), 2 * self.norm)]
        return [
            (BasisPair(self.m, self.n), self.norm),
            (BasisPair(self.n, self.m), self.sign * self.norm),
        ]


def make_function(species, m, n):
    """Build the SymFunction for (m, n), validating the species rules."""
    pm, pn, sign, strict = _RULES[check_species(species)]
    if m < 0 or n < 0 or m % 2 != pm or n % 2 != pn:
        raise ContractViolation(f"({m}, {n}) has the wrong parity for {species}")
    if sign != 0 and (m > n or (strict and m == n)):
        raise ContractViolation(f"({m}, {n}) violates the index ordering for {species}")
    if sign == 0:
        norm = 1.0
    elif sign > 0:
        norm = 1.0 / math.sqrt(2.0 * (1 + (m == n)))
    else:
        norm = 1.0 / math.sqrt(2.0)
    return SymFunction(species, m, n, sign, norm)


def enumerate_block(species, nmax):
    """All functions of ``species`` with max(m, n) <= nmax.

    Ordered by m + n, then by m.
    """
    pm, pn, sign, strict = _RULES[check_species(species)]
    if nmax < 0:
        raise ContractViolation("nmax must be >= 0")
    out = []
    for total in range(2 * nmax + 1):
        for m in range(max(0, total - nmax), min(total, nmax) + 1):
            n = total - m
            if m % 2 != pm or n % 2 != pn:
                continue
            if sign != 0 and (m > n or (strict and m == n)):
                continue
            out.append(make_function(species, m, n))
    return out


def block_dimension(species, nmax):
    return len(enumerate_block(species, nmax))


def sym_element(f, g, omega=1.0):
    """<f| H |g> between two symmetry-adapted functions of the same species."""
    if f.species != g.species:
        raise ContractViolation(f"species mismatch: {f.species} vs {g.species}")
    return plain_element(f.expand(), g.expand(), omega)


def plain_element(left, right, omega=1.0):
    """<left| H |right> for linear combinations [(BasisPair, coeff)]."""
    total = 0.0
    for p, c in left:
        for q, d in right:
            total += c * d * h2d_element(p, q, omega)
    return total
