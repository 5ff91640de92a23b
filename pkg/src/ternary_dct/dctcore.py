"""Exact DCT matrices, ternary approximations, and the error-energy metric.

The orthonormal DCT-II and DCT-IV matrices are built from their cosine
definitions.  A candidate transform with entries restricted to {-1, 0, 1}
is compared against the exact matrix by total error energy: each row of
either matrix is read as the tap vector of an FIR filter and the squared
magnitude of the difference of the two transfer functions is integrated
over [0, pi].  For real taps that integral collapses to pi times the
squared Frobenius norm of the matrix difference (Parseval), which gives
a closed form used to cross-check the quadrature path.

A ternary candidate whose rows are mutually orthogonal is promoted to an
orthonormal transform by scaling each row with the reciprocal of its
Euclidean norm.  The scaling diagonal is what a codec folds into its
quantization tables, so the integer part stays multiplierless.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

QUAD_ABS_TOL = 1e-9
QUAD_LIMIT = 10_000

ERROR_METHODS = ("quadrature", "closed_form")


class TransformKind(str, enum.Enum):
    """The two transform families handled by this package."""

    DCT2 = "ii"
    DCT4 = "iv"


class NotOrthogonalizableError(ValueError):
    """Raised when candidate rows are not mutually orthogonal."""


class SingularRowError(ValueError):
    """Raised when a candidate contains an all-zero row."""


# Ternary approximations with mutually orthogonal rows.  Each needs only
# row additions to apply (no multiplications), see kernels.py.
TERNARY_DCT2 = np.array(
    [
        [1, 1, 1, 1],
        [1, 0, 0, -1],
        [1, -1, -1, 1],
        [0, -1, 1, 0],
    ],
    dtype=np.int64,
)

TERNARY_DCT4 = np.array(
    [
        [1, 1, 1, 0],
        [1, 0, -1, -1],
        [1, -1, 0, 1],
        [0, -1, 1, -1],
    ],
    dtype=np.int64,
)


def exact_dct_ii(n: int) -> np.ndarray:
    """Return the orthonormal n-point DCT-II matrix.

    Entry (k, t) is sqrt(2/n) * cos(k * (2t + 1) * pi / (2n)), with the
    k = 0 row divided by sqrt(2) so that rows are unit vectors.

    Args:
        n: transform size, must be >= 1.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"transform size must be a positive integer, got {n!r}")
    k = np.arange(n, dtype=np.float64)[:, None]
    t = np.arange(n, dtype=np.float64)[None, :]
    mat = np.sqrt(2.0 / n) * np.cos(k * (2.0 * t + 1.0) * np.pi / (2.0 * n))
    mat[0, :] /= np.sqrt(2.0)
    return mat


def exact_dct_iv(n: int) -> np.ndarray:
    """Return the orthonormal n-point DCT-IV matrix.

    Entry (k, t) is sqrt(2/n) * cos((2k + 1) * (2t + 1) * pi / (4n)).
    The matrix is symmetric and involutory up to transposition.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"transform size must be a positive integer, got {n!r}")
    k = np.arange(n, dtype=np.float64)[:, None]
    t = np.arange(n, dtype=np.float64)[None, :]
    return np.sqrt(2.0 / n) * np.cos((2.0 * k + 1.0) * (2.0 * t + 1.0) * np.pi / (4.0 * n))


def exact_matrix(kind: TransformKind | str, n: int = 4) -> np.ndarray:
    """Exact matrix for a transform kind ("ii" or "iv")."""
    kind = TransformKind(kind)
    if kind is TransformKind.DCT2:
        return exact_dct_ii(n)
    return exact_dct_iv(n)


def ternary_matrix(kind: TransformKind | str) -> np.ndarray:
    """Copy of the built-in 4-point ternary approximation for a kind."""
    kind = TransformKind(kind)
    if kind is TransformKind.DCT2:
        return TERNARY_DCT2.copy()
    return TERNARY_DCT4.copy()


def signed_dct(kind: TransformKind | str, n: int = 4) -> np.ndarray:
    """Entrywise sign of the exact matrix, as an integer matrix.

    This is the classic rounding-free baseline.  Its rows are not
    mutually orthogonal for the 4-point DCT-IV, so it cannot always be
    promoted to an orthonormal transform; see row_normalized.
    """
    return np.sign(exact_matrix(kind, n)).astype(np.int64)


def as_ternary(a) -> np.ndarray:
    """Validate and return a square matrix with entries in {-1, 0, 1}."""
    arr = np.asarray(a)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.issubdtype(arr.dtype, np.floating):
            raise ValueError("matrix entries must be integers")
        if not np.all(arr == np.round(arr)):
            raise ValueError("matrix entries must be integers")
    arr = arr.astype(np.int64)
    if not np.isin(arr, (-1, 0, 1)).all():
        raise ValueError("matrix entries must lie in {-1, 0, 1}")
    return arr


def _as_real_matrix(a, name: str) -> np.ndarray:
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def is_row_orthogonal(a) -> bool:
    """True when all distinct rows of the ternary matrix are orthogonal."""
    t = as_ternary(a)
    gram = t @ t.T
    off = gram - np.diag(np.diag(gram))
    return not np.any(off)


def orthogonalize(a) -> tuple[np.ndarray, np.ndarray]:
    """Promote a row-orthogonal ternary matrix to an orthonormal one.

    Returns (d, c) where d is the vector of per-row scale factors
    1 / ||row|| and c = diag(d) @ a satisfies c @ c.T = I.

    Raises:
        SingularRowError: some row is all zero, so no scale exists.
        NotOrthogonalizableError: rows are not mutually orthogonal.
    """
    t = as_ternary(a)
    gram = t @ t.T
    norms_sq = np.diag(gram)
    if np.any(norms_sq == 0):
        raise SingularRowError("matrix has an all-zero row")
    if np.any(gram - np.diag(norms_sq)):
        raise NotOrthogonalizableError("matrix rows are not mutually orthogonal")
    d = 1.0 / np.sqrt(norms_sq.astype(np.float64))
    return d, d[:, None] * t


def row_normalized(a) -> np.ndarray:
    """Scale each nonzero-row of a ternary matrix to unit norm.

    Unlike orthogonalize this does not require orthogonal rows, so it
    also applies to the signed DCT-IV baseline.  The result is only an
    orthonormal transform when the input rows were orthogonal.
    """
    t = as_ternary(a)
    norms_sq = (t * t).sum(axis=1)
    if np.any(norms_sq == 0):
        raise SingularRowError("matrix has an all-zero row")
    return t / np.sqrt(norms_sq.astype(np.float64))[:, None]


@dataclass(frozen=True)
class ErrorReport:
    """Total error energy of a candidate against an exact transform.

    value holds the number computed by the requested method, and both
    method results are kept so callers can check they agree.  per_row
    follows the requested method.  target is the detected transform
    kind of the reference matrix, or None if it matches neither.
    """

    method: str
    value: float
    quadrature_value: float
    closed_form_value: float
    per_row: tuple[float, ...]
    target: TransformKind | None


def _row_energy_quad(taps: np.ndarray) -> float:
    """Integral over [0, pi] of the squared DTFT magnitude of taps."""
    idx = np.arange(taps.size, dtype=np.float64)

    def integrand(w: float) -> float:
        re = float(np.dot(taps, np.cos(w * idx)))
        im = float(np.dot(taps, np.sin(w * idx)))
        return re * re + im * im

    value, _ = quad(integrand, 0.0, np.pi, epsabs=QUAD_ABS_TOL, epsrel=1e-10, limit=QUAD_LIMIT)
    return value


def _detect_target(target: np.ndarray) -> TransformKind | None:
    n = target.shape[0]
    if np.allclose(target, exact_dct_ii(n), atol=1e-12):
        return TransformKind.DCT2
    if np.allclose(target, exact_dct_iv(n), atol=1e-12):
        return TransformKind.DCT4
    return None


def total_error_energy(a, target, method: str = "closed_form") -> ErrorReport:
    """Total error energy between a candidate matrix and a target.

    Rows of both matrices are interpreted as FIR filter taps and the
    squared transfer-function differences are integrated over [0, pi],
    then summed over rows.  The candidate is normally a scaled ternary
    matrix but any real matrix of the target's shape is accepted.

    Args:
        a: candidate matrix, real, same shape as target.
        target: exact reference matrix, or a TransformKind / "ii" / "iv"
            shorthand for the built-in 4-point references.
        method: "quadrature" integrates numerically, "closed_form" uses
            pi times the squared Frobenius norm of the difference.
    """
    if method not in ERROR_METHODS:
        raise ValueError(f"method must be one of {ERROR_METHODS}, got {method!r}")
    if isinstance(target, (TransformKind, str)):
        target = exact_matrix(target)
    cand = _as_real_matrix(a, "candidate")
    ref = _as_real_matrix(target, "target")
    if cand.shape != ref.shape:
        raise ValueError(f"shape mismatch: candidate {cand.shape} vs target {ref.shape}")

    diff = cand - ref
    closed_rows = np.pi * (diff * diff).sum(axis=1)
    quad_rows = np.array([_row_energy_quad(diff[m]) for m in range(diff.shape[0])])
    per_row = quad_rows if method == "quadrature" else closed_rows
    value = float(per_row.sum())
    return ErrorReport(
        method=method,
        value=value,
        quadrature_value=float(quad_rows.sum()),
        closed_form_value=float(closed_rows.sum()),
        per_row=tuple(float(v) for v in per_row),
        target=_detect_target(ref),
    )
