"""Rayleigh-Ritz in the Krylov space {phi, H phi, H^2 phi, ...}.

Overlap and Hamiltonian matrices are Hankel matrices of the exact moments:
S_jk = mu_{j+k}, H_jk = mu_{j+k+1}.  They are converted to ``digits``-digit
floats only for the Cholesky reduction and the eigensolve.
"""

import logging

from x2y2.errors import ContractViolation, NotPositiveDefiniteError
from x2y2.linalg import cholesky, eigen_sym, precision, reduce_generalized
from x2y2.moments import moments, to_rational
from x2y2.rrho import ScanTable, SpectrumResult, settled_digits
from x2y2.symmetry import check_species

log = logging.getLogger(__name__)

DEFAULT_K = 25
DEFAULT_DIGITS = 60


def krylov_matrices(mu, K):
    """(H, S) as lists of rows of exact rationals."""
    if len(mu) < 2 * K:
        raise ContractViolation(f"need moments through mu_{2 * K - 1}, have {len(mu) - 1}")
    S = [[mu[j + k] for k in range(K)] for j in range(K)]
    H = [[mu[j + k + 1] for k in range(K)] for j in range(K)]
    return H, S


def _usable_order(S, digits):
    try:
        cholesky(S, digits)
        return len(S)
    except NotPositiveDefiniteError as exc:
        return exc.order


def rrk_spectrum(species, a=1, K=DEFAULT_K, digits=DEFAULT_DIGITS, table=None):
    """Krylov Rayleigh-Ritz eigenvalues (ascending) at dimension K.

    If the overlap stops being numerically positive definite at this
    precision, the largest usable K' < K is used instead and the result is
    flagged ``truncated``.
    """
    check_species(species)
    if K < 1:
        raise ContractViolation("K must be >= 1")
    if digits < 30:
        raise ContractViolation("digits must be >= 30")
    a = to_rational(a)
    if table is None or len(table.mu) < 2 * K:
        table = moments(species, a, 2 * K - 1)
    H, S = krylov_matrices(table.mu, K)
    used = _usable_order(S, digits)
    if used < 1:
        raise NotPositiveDefiniteError("overlap matrix not positive definite even at K = 1", order=0)
    if used < K:
        log.warning("%s: overlap loses positive definiteness at K = %d (%d digits); using K = %d",
                    species, used + 1, digits, used)
        H = [row[:used] for row in H[:used]]
        S = [row[:used] for row in S[:used]]
    with precision(digits):
        C, _ = reduce_generalized(H, S, digits)
        w = eigen_sym(C, digits=digits, method="householder")
    return SpectrumResult(
        method="RRK",
        species=species,
        size_param=used,
        dimension=used,
        eigenvalues=w,
        flags={"requested_K": K, "truncated": used < K, "digits": digits, "a": str(table.a)},
    )


def rrk_scan(species, a=1, K_list=(1, 5, 10, 15, 20, 25), digits=DEFAULT_DIGITS, k=1):
    """Lowest ``k`` RRK eigenvalues for each K, with monotonicity flags.

    Values may only go down with K, within 10^(-digits/2).
    """
    K_list = list(K_list)
    if any(y <= x for x, y in zip(K_list, K_list[1:])):
        raise ContractViolation("K_list must be increasing")
    table = moments(species, a, 2 * K_list[-1] - 1)
    results = []
    for K in K_list:
        res = rrk_spectrum(species, a, K, digits, table)
        res.eigenvalues = res.eigenvalues[:k]
        results.append(res)
        if res.flags["truncated"]:
            break
    with precision(digits):
        tol = 10 ** (-digits / 2)
        flags = []
        for prev, cur in zip(results, results[1:]):
            n = min(len(prev.eigenvalues), len(cur.eigenvalues))
            flags.append(all(cur.eigenvalues[i] <= prev.eigenvalues[i] + tol for i in range(n)))
    for prev, cur in zip(results, results[1:]):
        cur.settled_digits = [settled_digits(float(x), float(y))
                              for x, y in zip(prev.eigenvalues, cur.eigenvalues)]
    return ScanTable(results, flags)
