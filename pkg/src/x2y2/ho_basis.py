"""Harmonic-oscillator matrix elements.

The 1D basis is the eigenbasis of p^2 + omega^2 q^2 (omega = 1 unless
scaled); 2D functions are products phi_m(x) phi_n(y).
"""

from dataclasses import dataclass
import math


@dataclass(frozen=True, order=True)
class BasisPair:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError(f"quantum numbers must be >= 0, got ({self.m}, {self.n})")

    def swapped(self):
        return BasisPair(self.n, self.m)


def q2_element(m, n, omega=1.0):
    """<phi_m| q^2 |phi_n>."""
    if m == n:
        return (2 * n + 1) / (2 * omega)
    lo, hi = min(m, n), max(m, n)
    if hi == lo + 2:
        return math.sqrt((lo + 1) * (lo + 2)) / (2 * omega)
    return 0.0


def p2_element(m, n, omega=1.0):
    """<phi_m| p^2 |phi_n>, from p^2 = (p^2 + omega^2 q^2) - omega^2 q^2."""
    diag = (2 * n + 1) * omega if m == n else 0.0
    return diag - omega * omega * q2_element(m, n, omega)


def h2d_element(left, right, omega=1.0):
    """<phi_left| p_x^2 + p_y^2 + x^2 y^2 |phi_right> for two BasisPairs."""
    m, n = left.m, left.n
    mp, np_ = right.m, right.n
    dm, dn = abs(m - mp), abs(n - np_)
    if dm not in (0, 2) or dn not in (0, 2):
        return 0.0
    val = q2_element(m, mp, omega) * q2_element(n, np_, omega)
    if dn == 0:
        val += p2_element(m, mp, omega)
    if dm == 0:
        val += p2_element(n, np_, omega)
    return val
