"""Eigenvalues of the 2D anharmonic oscillator H = p_x^2 + p_y^2 + x^2 y^2.

Three independent routes: symmetry-adapted Rayleigh-Ritz in a harmonic
oscillator basis (:mod:`x2y2.rrho`), Rayleigh-Ritz in the Krylov space of a
Gaussian reference (:mod:`x2y2.rrk`) and the connected-moments expansion
(:mod:`x2y2.cmx`).
"""

from x2y2.errors import (
    ContractViolation,
    EmptyBlockError,
    NonConvergenceError,
    NotPositiveDefiniteError,
)
from x2y2.symmetry import SPECIES, SymFunction, enumerate_block
from x2y2.rrho import SpectrumResult, assemble_block, convergence_scan, solve_block
from x2y2.moments import GaussPoly, MomentTable, moments, reference_function
from x2y2.rrk import rrk_scan, rrk_spectrum
from x2y2.cmx import cmx_energy

__all__ = [
    "ContractViolation",
    "EmptyBlockError",
    "NonConvergenceError",
    "NotPositiveDefiniteError",
    "SPECIES",
    "SymFunction",
    "enumerate_block",
    "SpectrumResult",
    "assemble_block",
    "convergence_scan",
    "solve_block",
    "GaussPoly",
    "MomentTable",
    "moments",
    "reference_function",
    "rrk_scan",
    "rrk_spectrum",
    "cmx_energy",
]
