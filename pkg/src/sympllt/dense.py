"""Dense matrix kernels: deterministic products, norms, and spectral quantities.

Matrices are plain 2-D float64 numpy arrays in row-major order.  The
multiplication kernel fixes its accumulation order so repeated runs are
bit-identical and the standard rounding-error model for recursive
summation applies to every product formed by the library.
"""

import numpy as np

from .errors import DimensionError, InvalidEntryError, SingularError

# unit roundoff of IEEE binary64
EPS = 2.0 ** -53


def as_matrix(a):
    """Coerce ``a`` to a 2-D float64 array, validating the shape."""
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got ndim={m.ndim}")
    return np.ascontiguousarray(m)


def _require_finite(a, op):
    if not np.all(np.isfinite(a)):
        raise InvalidEntryError(f"{op}: input contains NaN or infinite entries")


def matmul(a, b):
    """Matrix product with a fixed summation order.

    Each entry is accumulated over the shared index k in ascending order
    (rank-1 updates), so results are deterministic across runs and exact
    whenever all products and partial sums are exactly representable.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"matmul: inner dimensions differ, {a.shape} x {b.shape}")
    out = np.zeros((a.shape[0], b.shape[1]))
    for k in range(a.shape[1]):
        out += a[:, k : k + 1] * b[k : k + 1, :]
    return out


def frobenius_norm(a):
    """Square root of the sum of squared entries."""
    a = as_matrix(a)
    return float(np.sqrt(np.sum(np.square(a))))


def is_bitwise_symmetric(a):
    a = as_matrix(a)
    return a.shape[0] == a.shape[1] and bool(np.array_equal(a, a.T))


def symmetric_eigenvalues(a):
    """Eigenvalues of a symmetric matrix, ascending."""
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionError("symmetric_eigenvalues: matrix must be square")
    return np.linalg.eigvalsh(a)


def spectral_norm(a):
    """Largest singular value.

    Symmetric inputs go straight through the symmetric eigensolver; other
    inputs via the explicitly formed Gram matrix a^T a.  Relative accuracy
    target 1e-12 (degrades for condition numbers beyond ~1e15).
    """
    a = as_matrix(a)
    if a.size == 0:
        raise DimensionError("spectral_norm: matrix is empty")
    _require_finite(a, "spectral_norm")
    if is_bitwise_symmetric(a):
        ev = np.linalg.eigvalsh(a)
        return float(max(abs(ev[0]), abs(ev[-1])))
    gram = matmul(a.T, a)
    ev = np.linalg.eigvalsh(gram)
    return float(np.sqrt(max(ev[-1], 0.0)))


def condition_number(a):
    """Spectral condition number ||a|| * ||a^-1||.

    Symmetric positive definite input uses the eigenvalue ratio from the
    symmetric eigensolver; anything else multiplies the spectral norms of
    the matrix and of its inverse obtained by factorization-based solves.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionError("condition_number: matrix must be square")
    _require_finite(a, "condition_number")
    if is_bitwise_symmetric(a):
        ev = np.linalg.eigvalsh(a)
        if ev[0] > 0.0:
            return float(ev[-1] / ev[0])
        if ev[0] == 0.0 or ev[-1] == 0.0:
            raise SingularError("condition_number: zero eigenvalue")
    try:
        inv = np.linalg.solve(a, np.eye(a.shape[0]))
    except np.linalg.LinAlgError as exc:
        raise SingularError(f"condition_number: {exc}") from exc
    kappa = spectral_norm(a) * spectral_norm(inv)
    if not np.isfinite(kappa):
        raise SingularError("condition_number: singular to working precision")
    return float(kappa)


def reverse_permute(a):
    """Conjugate by the reversal permutation: entry (i, j) -> (n-1-i, n-1-j)."""
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionError("reverse_permute: matrix must be square")
    return a[::-1, ::-1].copy()
