"""Dense symmetric eigensolver, Cholesky and the generalized problem.

Two arithmetic modes share one interface:

* ``digits=None``: machine doubles.  Matrices are numpy arrays and
  :func:`eigen_sym` goes through LAPACK (``numpy.linalg.eigh``) unless
  ``method="householder"`` is asked for explicitly.
* ``digits=d``: mpmath floats with ``d`` significant decimal digits.  Entries
  may be ints, Fractions, gmpy2 rationals or mpf; everything is converted at
  the working precision and the Householder + implicit QL code below does
  the work.
"""

import contextlib
import math

import mpmath
import numpy as np

from x2y2.errors import ContractViolation, NonConvergenceError, NotPositiveDefiniteError

MAX_SWEEPS = 50


class _FloatOps:
    eps = np.finfo(float).eps
    zero = 0.0
    one = 1.0

    @staticmethod
    def conv(x):
        return float(x)

    sqrt = staticmethod(math.sqrt)
    hypot = staticmethod(math.hypot)


class _MpOps:
    zero = mpmath.mpf(0)
    one = mpmath.mpf(1)

    @property
    def eps(self):
        return mpmath.mp.eps

    @staticmethod
    def conv(x):
        if isinstance(x, mpmath.mpf):
            return +x
        if isinstance(x, (int, float)):
            return mpmath.mpf(x)
        # Fraction, gmpy2.mpq, ...
        num, den = getattr(x, "numerator"), getattr(x, "denominator")
        return mpmath.mpf(int(num)) / int(den)

    sqrt = staticmethod(mpmath.sqrt)
    hypot = staticmethod(mpmath.hypot)


def precision(digits):
    """Context manager setting the mpmath working precision (no-op for None)."""
    if digits is None:
        return contextlib.nullcontext()
    return mpmath.workdps(digits)


def _ops(digits):
    return _FloatOps() if digits is None else _MpOps()


def to_rows(A, digits=None):
    """Copy a square matrix into a list of rows converted for the given mode."""
    ops = _ops(digits)
    if isinstance(A, mpmath.matrix):
        n = A.rows
        rows = [[ops.conv(A[i, j]) for j in range(n)] for i in range(n)]
    else:
        rows = [[ops.conv(x) for x in row] for row in A]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ContractViolation("expected a non-empty square matrix")
    return rows


def _check_symmetric(rows, ops):
    n = len(rows)
    scale = max((abs(x) for r in rows for x in r), default=ops.zero) or ops.one
    tol = 64 * ops.eps * scale
    for i in range(n):
        for j in range(i):
            if abs(rows[i][j] - rows[j][i]) > tol:
                raise ContractViolation(f"matrix is not symmetric at ({i}, {j})")


def _tridiagonalize(z, ops):
    """Householder reduction in place; returns (diag, offdiag), z becomes Q."""
    n = len(z)
    d = [ops.zero] * n
    e = [ops.zero] * n
    for i in range(n - 1, 0, -1):
        l = i - 1
        h = scale = ops.zero
        if l > 0:
            for k in range(i):
                scale += abs(z[i][k])
            if scale == 0:
                e[i] = z[i][l]
            else:
                for k in range(i):
                    z[i][k] /= scale
                    h += z[i][k] * z[i][k]
                f = z[i][l]
                g = -ops.sqrt(h) if f >= 0 else ops.sqrt(h)
                e[i] = scale * g
                h -= f * g
                z[i][l] = f - g
                f = ops.zero
                for j in range(i):
                    z[j][i] = z[i][j] / h
                    g = ops.zero
                    for k in range(j + 1):
                        g += z[j][k] * z[i][k]
                    for k in range(j + 1, i):
                        g += z[k][j] * z[i][k]
                    e[j] = g / h
                    f += e[j] * z[i][j]
                hh = f / (h + h)
                for j in range(i):
                    f = z[i][j]
                    e[j] = g = e[j] - hh * f
                    for k in range(j + 1):
                        z[j][k] -= f * e[k] + g * z[i][k]
        else:
            e[i] = z[i][l]
        d[i] = h
    d[0] = ops.zero
    e[0] = ops.zero
    for i in range(n):
        if d[i] != 0:
            for j in range(i):
                g = ops.zero
                for k in range(i):
                    g += z[i][k] * z[k][j]
                for k in range(i):
                    z[k][j] -= g * z[k][i]
        d[i] = z[i][i]
        z[i][i] = ops.one
        for j in range(i):
            z[j][i] = z[i][j] = ops.zero
    return d, e


def _implicit_ql(d, e, z, ops, max_sweeps):
    """Diagonalize the tridiagonal (d, e) in place, rotating the columns of z."""
    n = len(d)
    for i in range(1, n):
        e[i - 1] = e[i]
    e[n - 1] = ops.zero
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= ops.eps * dd:
                    break
                m += 1
            if m == l:
                break
            if sweeps == max_sweeps:
                raise NonConvergenceError(f"implicit QL: eigenvalue {l} not converged after {max_sweeps} sweeps")
            sweeps += 1
            g = (d[l + 1] - d[l]) / (2 * e[l])
            r = ops.hypot(g, ops.one)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0 else -r))
            s = c = ops.one
            p = ops.zero
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = ops.hypot(f, g)
                e[i + 1] = r
                if r == 0:
                    d[i + 1] -= p
                    e[m] = ops.zero
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                for k in range(n):
                    f = z[k][i + 1]
                    z[k][i + 1] = s * z[k][i] + c * f
                    z[k][i] = c * z[k][i] - s * f
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = ops.zero


def householder_ql(A, want_vectors=False, digits=None, max_sweeps=MAX_SWEEPS):
    """Eigen-decomposition by Householder tridiagonalization + implicit QL.

    Returns ascending eigenvalues (list) and, if asked, the eigenvectors as
    a list of columns.
    """
    ops = _ops(digits)
    with precision(digits):
        z = to_rows(A, digits)
        _check_symmetric(z, ops)
        d, e = _tridiagonalize(z, ops)
        _implicit_ql(d, e, z, ops, max_sweeps)
        order = sorted(range(len(d)), key=lambda i: d[i])
        w = [d[i] for i in order]
        if not want_vectors:
            return w
        vecs = [[z[k][i] for k in range(len(d))] for i in order]
        return w, vecs


def eigen_sym(A, want_vectors=False, digits=None, method=None):
    """Eigenvalues (ascending) of a symmetric matrix, optionally with vectors.

    In double precision the default ``method`` is LAPACK and the result is
    numpy arrays (vectors as columns of a 2D array).  With ``digits`` set, or
    ``method="householder"``, the in-house solver runs and returns lists.
    """
    if digits is None and method in (None, "lapack"):
        A = np.asarray(A, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
            raise ContractViolation("expected a non-empty square matrix")
        if not np.allclose(A, A.T, rtol=0, atol=64 * np.finfo(float).eps * max(np.abs(A).max(), 1.0)):
            raise ContractViolation("matrix is not symmetric")
        try:
            if want_vectors:
                return np.linalg.eigh(A)
            return np.linalg.eigvalsh(A)
        except np.linalg.LinAlgError as exc:
            raise NonConvergenceError(str(exc)) from exc
    if method not in (None, "householder"):
        raise ContractViolation(f"unknown eigensolver method {method!r}")
    return householder_ql(A, want_vectors, digits)


def cholesky(S, digits=None):
    """Lower-triangular L with L L^T = S (list of rows).

    Raises NotPositiveDefiniteError on the first non-positive pivot; its
    ``order`` attribute tells how many leading pivots were fine.
    """
    ops = _ops(digits)
    with precision(digits):
        a = to_rows(S, digits)
        _check_symmetric(a, ops)
        n = len(a)
        L = [[ops.zero] * n for _ in range(n)]
        for j in range(n):
            piv = a[j][j] - sum((L[j][k] * L[j][k] for k in range(j)), ops.zero)
            if not piv > 0:
                raise NotPositiveDefiniteError(f"non-positive pivot {piv} at position {j}", order=j)
            L[j][j] = ops.sqrt(piv)
            for i in range(j + 1, n):
                s = a[i][j] - sum((L[i][k] * L[j][k] for k in range(j)), ops.zero)
                L[i][j] = s / L[j][j]
        return L


def _forward_solve(L, B, ops):
    """Solve L X = B for lower-triangular L; B and X are lists of rows."""
    n = len(L)
    ncol = len(B[0])
    X = [[ops.zero] * ncol for _ in range(n)]
    for c in range(ncol):
        for i in range(n):
            s = B[i][c]
            for k in range(i):
                s -= L[i][k] * X[k][c]
            X[i][c] = s / L[i][i]
    return X


def reduce_generalized(H, S, digits=None):
    """Return C = L^-1 H L^-T (list of rows) and L, with L = cholesky(S)."""
    ops = _ops(digits)
    L = cholesky(S, digits)
    with precision(digits):
        h = to_rows(H, digits)
        if len(h) != len(L):
            raise ContractViolation("H and S differ in order")
        Y = _forward_solve(L, h, ops)  # L^-1 H
        Yt = [list(col) for col in zip(*Y)]
        C = _forward_solve(L, Yt, ops)  # L^-1 (L^-1 H)^T = L^-1 H L^-T
        n = len(C)
        for i in range(n):
            for j in range(i):
                C[i][j] = C[j][i] = (C[i][j] + C[j][i]) / 2
        return C, L


def solve_generalized(H, S, digits=None, want_vectors=False):
    """Eigenvalues of H v = lambda S v with S positive definite.

    Vectors, when requested, are in the original (non-orthogonal) basis.
    """
    C, L = reduce_generalized(H, S, digits)
    if not want_vectors:
        return eigen_sym(C, digits=digits, method="householder" if digits is not None else None)
    ops = _ops(digits)
    with precision(digits):
        w, y = householder_ql(C, True, digits)
        n = len(L)
        # back-substitute L^T v = y
        vecs = []
        for col in y:
            v = [ops.zero] * n
            for i in range(n - 1, -1, -1):
                s = col[i]
                for k in range(i + 1, n):
                    s -= L[k][i] * v[k]
                v[i] = s / L[i][i]
            vecs.append(v)
        return w, vecs


def _gauss_solve(A, b, ops, threshold):
    """Gaussian elimination with partial pivoting on copies of A and b."""
    n = len(A)
    a = [row[:] + [b[i]] for i, row in enumerate(A)]
    scale = max(abs(x) for row in A for x in row)
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        if abs(a[piv][col]) <= threshold * scale:
            raise ZeroDivisionError(f"singular matrix at column {col}")
        a[col], a[piv] = a[piv], a[col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, n + 1):
                    a[r][c] -= f * a[col][c]
    x = [ops.zero] * n
    for i in range(n - 1, -1, -1):
        s = a[i][n]
        for k in range(i + 1, n):
            s -= a[i][k] * x[k]
        x[i] = s / a[i][i]
    return x


def solve_symmetric(A, b, digits=None):
    """Solve A x = b for symmetric A.

    The system is first equilibrated with D = diag(|A_ii|^-1/2), then solved
    by Cholesky when positive definite, otherwise by pivoted Gaussian
    elimination; a pivot below 10^(10 - digits) relative to max|DAD| counts
    as singular and raises ZeroDivisionError.
    """
    ops = _ops(digits)
    with precision(digits):
        rows = to_rows(A, digits)
        n = len(rows)
        dscale = [ops.one / ops.sqrt(abs(rows[i][i])) if rows[i][i] != 0 else ops.one for i in range(n)]
        rows = [[dscale[i] * rows[i][j] * dscale[j] for j in range(n)] for i in range(n)]
        rhs = [dscale[i] * ops.conv(x) for i, x in enumerate(b)]
        try:
            L = cholesky(rows, digits)
        except NotPositiveDefiniteError:
            threshold = ops.conv(10) ** (10 - (digits or 15))
            y = _gauss_solve(rows, rhs, ops, threshold)
            return [dscale[i] * y[i] for i in range(n)]
        y = _forward_solve(L, [[v] for v in rhs], ops)
        x = [ops.zero] * n
        for i in range(n - 1, -1, -1):
            s = y[i][0]
            for k in range(i + 1, n):
                s -= L[k][i] * x[k]
            x[i] = s / L[i][i]
        return [dscale[i] * x[i] for i in range(n)]
