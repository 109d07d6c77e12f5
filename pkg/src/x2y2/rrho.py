"""Rayleigh-Ritz in the symmetry-adapted harmonic-oscillator basis."""

from dataclasses import dataclass, field
import math

import numpy as np

from x2y2.errors import ContractViolation, EmptyBlockError
from x2y2.ho_basis import BasisPair, h2d_element
from x2y2.linalg import eigen_sym
from x2y2.symmetry import check_species, enumerate_block

DEFAULT_GRID = tuple(range(8, 89, 8))
MONOTONE_TOL = 1e-12


@dataclass
class SpectrumResult:
    method: str  # RRHO, RRK or CMX
    species: str
    size_param: int
    dimension: int
    eigenvalues: list
    vectors: list = None
    settled_digits: list = field(default_factory=list)
    basis: list = None
    omega: float = 1.0
    flags: dict = field(default_factory=dict)

    def label(self, i):
        """Table-style state label, e.g. '2A1' for index 1 of A1."""
        sp = "E" if self.species in ("Ex", "Ey") else self.species
        return f"{i + 1}{sp}"


def _product_map(basis):
    pmap = {}
    for idx, f in enumerate(basis):
        for p, c in f.expand():
            pmap[p] = (idx, c)
    return pmap


def assemble_block(species, nmax, omega=1.0):
    """Dense Hamiltonian matrix over enumerate_block(species, nmax)."""
    basis = enumerate_block(check_species(species), nmax)
    if not basis:
        raise EmptyBlockError(f"empty block: no {species} functions with nmax = {nmax}")
    pmap = _product_map(basis)
    D = len(basis)
    H = np.zeros((D, D))
    # each product couples only to products shifted by 0 or +-2 in each index
    shifts = [(dm, dn) for dm in (-2, 0, 2) for dn in (-2, 0, 2)]
    for i, f in enumerate(basis):
        for p, c in f.expand():
            for dm, dn in shifts:
                m, n = p.m + dm, p.n + dn
                if m < 0 or n < 0:
                    continue
                q = BasisPair(m, n)
                hit = pmap.get(q)
                if hit is None:
                    continue
                j, d = hit
                H[i, j] += c * d * h2d_element(p, q, omega)
    return H


def solve_block(species, nmax, k=1, omega=1.0, want_vectors=True):
    """Lowest ``k`` eigenvalues of one symmetry block."""
    if k < 1:
        raise ContractViolation("k must be >= 1")
    H = assemble_block(species, nmax, omega)
    basis = enumerate_block(species, nmax)
    if want_vectors:
        w, V = eigen_sym(H, want_vectors=True)
        vecs = [V[:, i].copy() for i in range(min(k, len(w)))]
    else:
        w, vecs = eigen_sym(H), None
    return SpectrumResult(
        method="RRHO",
        species=species,
        size_param=nmax,
        dimension=len(basis),
        eigenvalues=[float(x) for x in w[:k]],
        vectors=vecs,
        basis=basis,
        omega=omega,
    )


def settled_digits(prev, cur):
    """Number of leading significant digits two estimates share."""
    if prev == cur:
        return 15
    scale = max(abs(prev), abs(cur))
    if scale == 0:
        return 15
    rel = abs(prev - cur) / scale
    return max(0, min(15, int(math.floor(-math.log10(rel)))))


def scan_flags(values_by_step, tol=MONOTONE_TOL):
    """Per consecutive pair, whether every tracked value went down (within tol)."""
    flags = []
    for prev, cur in zip(values_by_step, values_by_step[1:]):
        n = min(len(prev), len(cur))
        flags.append(all(cur[i] <= prev[i] + tol * max(1.0, abs(prev[i])) for i in range(n)))
    return flags


@dataclass
class ScanTable:
    results: list
    monotone: list

    @property
    def best(self):
        """Last result obeying the monotone-decrease rule relative to its predecessor."""
        best = self.results[0]
        for flag, res in zip(self.monotone, self.results[1:]):
            if not flag:
                break
            best = res
        return best

    @property
    def all_monotone(self):
        return all(self.monotone)


def convergence_scan(species, nmax_list, k=1, omega=1.0, want_vectors=False):
    """Solve at each nmax; flag monotone decrease and estimate settled digits."""
    nmax_list = list(nmax_list)
    if any(b <= a for a, b in zip(nmax_list, nmax_list[1:])):
        raise ContractViolation("nmax_list must be strictly increasing")
    results = []
    for nmax in nmax_list:
        try:
            results.append(solve_block(species, nmax, k, omega, want_vectors))
        except EmptyBlockError:
            continue
    if not results:
        raise EmptyBlockError(f"empty block for every nmax in {nmax_list}")
    table = ScanTable(results, scan_flags([r.eigenvalues for r in results]))
    for prev, cur in zip(results, results[1:]):
        cur.settled_digits = [
            settled_digits(a, b) for a, b in zip(prev.eigenvalues, cur.eigenvalues)
        ]
    return table
