"""Complex linear-algebra and special-function primitives used across the package."""

import math

import numpy as np

RCOND_MIN = 1e-12


class SingularMatrixError(ValueError):
    """Least-squares system whose reciprocal condition estimate is below RCOND_MIN."""

    def __init__(self, rcond):
        self.rcond = float(rcond)
        super().__init__(
            "matrix is numerically singular "
            f"(reciprocal condition estimate {self.rcond:.3e} < {RCOND_MIN:g})"
        )


def dft_submatrix(n_points, n_cols, rows):
    """Selected rows of the first `n_cols` columns of the N-point DFT matrix.

    Entry (k, l) is exp(-2j*pi*k*l/N) / sqrt(N), with 0-based row index k and
    column index l.  Rows are returned in ascending order of `rows`; with all
    N rows selected the columns are orthonormal.
    """
    if not 1 <= n_cols <= n_points:
        raise ValueError(f"need 1 <= n_cols <= n_points, got {n_cols} and {n_points}")
    idx = np.sort(np.asarray(list(rows), dtype=np.int64))
    if idx.size == 0:
        raise ValueError("row index set is empty")
    if idx[0] < 0 or idx[-1] >= n_points:
        raise ValueError(f"row indices must lie in [0, {n_points - 1}]")
    if idx.size > 1 and np.any(np.diff(idx) == 0):
        raise ValueError("row indices must be distinct")
    phase = np.outer(idx, np.arange(n_cols, dtype=np.int64))
    return np.exp((-2j * np.pi / n_points) * phase) / math.sqrt(n_points)


def ls_solve(a, y):
    """Least-squares solution of an overdetermined complex system.

    Returns argmin ||a x - y||_2, equal to pinv(a) @ y for a full-column-rank
    matrix.  Solved through a reduced QR factorization; the singular values of
    the triangular factor provide the condition estimate that guards against
    rank deficiency.
    """
    a = np.asarray(a, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    m, n = a.shape
    if y.shape != (m,):
        raise ValueError(f"vector of length {y.size} does not match {m} rows")
    if m < n:
        raise ValueError(f"system is underdetermined ({m} rows < {n} columns)")
    q, r = np.linalg.qr(a, mode="reduced")
    sv = np.linalg.svd(r, compute_uv=False)
    rcond = 0.0 if sv[0] == 0.0 else float(sv[-1] / sv[0])
    if not rcond > RCOND_MIN:
        raise SingularMatrixError(rcond)
    return np.linalg.solve(r, q.conj().T @ y)


def bessel_j0(x):
    """Zero-order Bessel function of the first kind.

    Ascending power series below 12, Hankel asymptotic expansion beyond;
    absolute error stays under 1e-8 on [0, 100] (well under 1e-10 in practice).
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("argument must be finite")
    x = abs(x)  # J0 is even
    if x < 12.0:
        q = 0.25 * x * x
        term, total = 1.0, 1.0
        for k in range(1, 200):
            term *= -q / (k * k)
            total += term
            if abs(term) < 1e-17 * max(1.0, abs(total)):
                break
        return total
    # J0(x) = sqrt(2/(pi x)) (P cos w - Q sin w), w = x - pi/4.  Successive
    # expansion terms satisfy t_k = t_{k-1} (2k-1)^2 / (8 x k) with the even
    # ones feeding P and the odd ones Q, signs cycling -,-,+,+.
    p_sum, q_sum = 1.0, 0.0
    t = 1.0
    signs = (-1.0, -1.0, 1.0, 1.0)
    for k in range(1, 40):
        t_next = t * (2 * k - 1) ** 2 / (8.0 * x * k)
        if k > 1 and t_next >= t:
            break  # smallest term of the divergent tail reached
        t = t_next
        contrib = signs[(k - 1) % 4] * t
        if k % 2:
            q_sum += contrib
        else:
            p_sum += contrib
        if t < 1e-17:
            break
    w = x - 0.25 * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (p_sum * math.cos(w) - q_sum * math.sin(w))
