"""Connected-moments expansion with the Knowles closed formula.

Order m:  E_m = I_1 - s^T S^{-1} s,  s_i = I_{i+1},  S_ij = I_{i+j+1},
i, j = 1..m-1, which consumes connected moments through I_{2m-1}.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from x2y2.errors import ContractViolation
from x2y2.linalg import precision, solve_symmetric
from x2y2.moments import moments, to_rational
from x2y2.symmetry import check_species

DEFAULT_ORDER = 12
DEFAULT_DIGITS = 60


@dataclass
class CMXResult:
    species: str
    a: Fraction
    digits: int
    estimates: list  # estimates[m-1] = E_m (mpf) or None if unavailable
    failures: dict = field(default_factory=dict)

    @property
    def available(self):
        """Highest order before the first failure."""
        n = 0
        for e in self.estimates:
            if e is None:
                break
            n += 1
        return n

    @property
    def accepted(self):
        n = self.available
        return self.estimates[n - 1] if n else None


def knowles_exact(I, m):
    """E_m in exact rationals (small m only; used as a cross-check)."""
    I = [Fraction(x) for x in I]
    if m == 1:
        return I[0]
    n = m - 1
    s = [I[i] for i in range(1, m)]  # I_{i+1}, i = 1..m-1
    S = [[I[i + j] for j in range(1, m)] for i in range(1, m)]  # I_{i+j+1}
    # Gauss-Jordan in rationals
    aug = [S[i][:] + [s[i]] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c] / aug[c][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    x = [aug[i][n] / aug[i][i] for i in range(n)]
    return I[0] - sum(si * xi for si, xi in zip(s, x))


def cmx_from_connected(I, M, digits=DEFAULT_DIGITS):
    """Orders 1..M from connected moments I = [I_1, I_2, ...]."""
    if M < 1:
        raise ContractViolation("M must be >= 1")
    if len(I) < 2 * M - 1:
        raise ContractViolation(f"order {M} needs I_1..I_{2 * M - 1}")
    estimates, failures = [], {}
    with precision(digits):
        Imp = [mpmath.mpf(x.numerator) / x.denominator for x in I[: 2 * M - 1]]
        for m in range(1, M + 1):
            if failures:
                estimates.append(None)
                continue
            if m == 1:
                estimates.append(Imp[0])
                continue
            s = [Imp[i] for i in range(1, m)]
            S = [[Imp[i + j] for j in range(1, m)] for i in range(1, m)]
            try:
                x = solve_symmetric(S, s, digits)
            except ZeroDivisionError as exc:
                failures[m] = str(exc)
                estimates.append(None)
                continue
            estimates.append(Imp[0] - mpmath.fsum(si * xi for si, xi in zip(s, x)))
    return estimates, failures


def cmx_energy(species, a=1, M=DEFAULT_ORDER, digits=DEFAULT_DIGITS, table=None):
    """CMX ground-state estimates of a species for orders 1..M."""
    check_species(species)
    a = to_rational(a)
    if table is None or len(table.connected) < 2 * M - 1:
        table = moments(species, a, 2 * M - 1)
    estimates, failures = cmx_from_connected(table.connected, M, digits)
    return CMXResult(species, table.a, digits, estimates, failures)
