"""RRHO eigenfunctions on a square grid, exported as CSV or JSON."""

from dataclasses import dataclass
import csv
import io
import json
import math

import numpy as np

from x2y2.errors import ContractViolation

DEFAULT_L = 8.0
DEFAULT_N = 201
FORMATS = ("csv", "json")


def hermite_fn(n, q, omega=1.0):
    """Normalized oscillator eigenfunction phi_n(q) of p^2 + omega^2 q^2."""
    return hermite_table(n, q, omega)[n]


def hermite_table(nmax, q, omega=1.0):
    """Array of phi_0..phi_nmax at the points q, shape (nmax + 1,) + q.shape.

    Uses the normalized three-term recurrence, which stays finite for large n
    where the raw Hermite polynomials overflow.
    """
    q = np.asarray(q, dtype=float)
    s = math.sqrt(omega)
    t = s * q
    out = np.empty((nmax + 1,) + q.shape)
    out[0] = omega**0.25 * np.pi**-0.25 * np.exp(-t * t / 2)
    if nmax >= 1:
        out[1] = math.sqrt(2.0) * t * out[0]
    for n in range(2, nmax + 1):
        out[n] = math.sqrt(2.0 / n) * t * out[n - 1] - math.sqrt((n - 1) / n) * out[n - 2]
    return out


@dataclass
class FieldGrid:
    L: float
    N: int
    values: np.ndarray  # values[j, i] = psi(x_i, y_j)
    scale: float = 1.0  # max |psi| before rescaling to 1
    species: str = ""
    state: int = 0

    @property
    def axis(self):
        return grid_axis(self.L, self.N)

    @property
    def spacing(self):
        return 2 * self.L / (self.N - 1)


def grid_axis(L, N):
    """Uniform points on [-L, L], exactly antisymmetric so mirrors map onto grid points."""
    if N < 2 or N % 2 == 0:
        raise ContractViolation("N must be odd and >= 3 so the origin is a grid point")
    h = (N - 1) // 2
    return L * np.arange(-h, h + 1) / h


def _coefficient_matrix(result, state_index):
    vec = result.vectors[state_index]
    nmax = max(max(f.m, f.n) for f in result.basis)
    C = np.zeros((nmax + 1, nmax + 1))
    for c, f in zip(vec, result.basis):
        for p, w in f.expand():
            C[p.m, p.n] += c * w
    return C


def _fix_sign(values, transpose):
    """Make psi positive at the first point (row-major) with |psi| > max/2."""
    scan = values.T if transpose else values
    flat = scan.ravel()
    peak = np.abs(flat).max()
    idx = np.argmax(np.abs(flat) > 0.5 * peak)
    return values if flat[idx] > 0 else -values


def evaluate_state(result, state_index, L=DEFAULT_L, N=DEFAULT_N):
    """psi(x, y) of one RRHO eigenstate on the grid, rescaled to max |psi| = 1.

    A grid lying entirely on nodal lines is returned unscaled.

    ``state_index`` is 0-based.  For ``Ey`` the sign convention scans the
    transposed grid so that the Ey state is exactly the mirror image of the
    matching Ex state.
    """
    if not result.vectors or result.basis is None:
        raise ContractViolation("result carries no coefficient vectors")
    if not 0 <= state_index < len(result.vectors):
        raise ContractViolation(f"state index {state_index} out of range (have {len(result.vectors)})")
    axis = grid_axis(L, N)
    C = _coefficient_matrix(result, state_index)
    phi = hermite_table(C.shape[0] - 1, axis, result.omega)
    values = phi.T @ C.T @ phi  # [j, i] = sum_mn C_mn phi_m(x_i) phi_n(y_j)
    scale = float(np.abs(values).max())
    if scale <= 1e-12:  # grid sits on nodal lines only; leave the roundoff unscaled
        scale = 1.0
    values = _fix_sign(values / scale, transpose=result.species == "Ey")
    return FieldGrid(float(L), int(N), values, scale, result.species, state_index)


def export_grid(grid, fmt="csv"):
    """Serialize a grid; 12 significant digits, rows ordered by y then x."""
    if fmt not in FORMATS:
        raise ContractViolation(f"unsupported format {fmt!r}; expected one of {FORMATS}")
    axis = grid.axis
    if fmt == "csv":
        buf = io.StringIO()
        buf.write("x,y,psi\n")
        for j, y in enumerate(axis):
            for i, x in enumerate(axis):
                buf.write(f"{x:.12g},{y:.12g},{grid.values[j, i]:.12g}\n")
        return buf.getvalue().encode()
    payload = {
        "L": grid.L,
        "N": grid.N,
        "values": [float(f"{v:.12g}") for v in grid.values.ravel()],
    }
    return json.dumps(payload).encode()


def parse_grid(data, fmt="csv"):
    """Inverse of :func:`export_grid`."""
    if fmt not in FORMATS:
        raise ContractViolation(f"unsupported format {fmt!r}")
    text = data.decode() if isinstance(data, bytes) else data
    if fmt == "json":
        d = json.loads(text)
        N = int(d["N"])
        return FieldGrid(float(d["L"]), N, np.array(d["values"], dtype=float).reshape(N, N))
    rows = list(csv.reader(io.StringIO(text)))
    if rows[0] != ["x", "y", "psi"]:
        raise ContractViolation("bad CSV header")
    body = np.array(rows[1:], dtype=float)
    N = int(round(math.sqrt(len(body))))
    L = float(body[:, 0].max())
    return FieldGrid(L, N, body[:, 2].reshape(N, N))
