"""Small dense SPD matrix toolbox.

Everything here takes and returns plain ``numpy`` arrays. Factorizations are
delegated to LAPACK through numpy/scipy; the functions add the error
semantics and the PSD repair used by the optimizer.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_triangular

from .exceptions import DimensionMismatch, NotPositiveDefinite

JITTER = 1e-12
SYMMETRY_RTOL = 1e-12


def _as_square(m) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    return a


def symmetrize(m) -> np.ndarray:
    a = _as_square(m)
    return (a + a.T) / 2


def is_symmetric(m, rtol: float = SYMMETRY_RTOL) -> bool:
    a = _as_square(m)
    scale = max(np.abs(a).max(initial=0.0), 1.0)
    return bool(np.abs(a - a.T).max(initial=0.0) <= rtol * scale)


def cholesky(m) -> np.ndarray:
    """Lower-triangular ``L`` with ``L @ L.T == m``.

    Raises
    ------
    NotPositiveDefinite
        If a pivot is not strictly positive. Callers holding a possibly
        indefinite matrix should pass it through :func:`ensure_spd` first.
    """
    a = _as_square(m)
    if not np.all(np.isfinite(a)):
        raise NotPositiveDefinite("matrix has non-finite entries")
    try:
        return np.linalg.cholesky(a)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(str(exc)) from exc


def inverse(m) -> np.ndarray:
    """Inverse of an SPD matrix through its Cholesky factor; result is symmetric."""
    L = cholesky(m)
    linv = solve_triangular(L, np.eye(L.shape[0]), lower=True)
    return symmetrize(linv.T @ linv)


def log_det(m) -> float:
    L = cholesky(m)
    return float(2.0 * np.sum(np.log(np.diag(L))))


def default_floor(eigenvalues: np.ndarray) -> float:
    return JITTER * (1.0 + float(np.abs(eigenvalues).max(initial=0.0)))


def ensure_spd(m, floor: float | None = None) -> np.ndarray:
    """Project ``m`` onto symmetric matrices with every eigenvalue >= ``floor``.

    The input is symmetrized, eigendecomposed and eigenvalues below the floor
    are clipped up to it. A matrix that already satisfies the floor comes back
    as ``(m + m.T) / 2`` with no further change, which makes the function
    idempotent. With ``floor=None`` the floor is ``1e-12 * (1 + max|eig|)``.
    """
    s = symmetrize(m)
    if not np.all(np.isfinite(s)):
        raise NotPositiveDefinite("matrix has non-finite entries")
    w, v = np.linalg.eigh(s)
    fl = default_floor(w) if floor is None else float(floor)
    if fl <= 0:
        raise ValueError("floor must be positive")
    # eigh round-off on a matrix we repaired earlier must not trigger a second repair
    slack = 64 * np.finfo(float).eps * float(np.abs(w).max(initial=0.0))
    if w.min() >= fl - slack:
        return s
    clipped = np.maximum(w, fl)
    return symmetrize((v * clipped) @ v.T)


def inverse_convexity_gap(m, n, lam: float) -> tuple[np.ndarray, float]:
    """Return ``G = (1-lam) m^-1 + lam n^-1 - ((1-lam) m + lam n)^-1`` and its
    smallest eigenvalue.

    Inversion is convex on SPD matrices, so ``G`` is PSD for every ``lam`` in
    [0, 1]; the smallest eigenvalue is nonnegative up to round-off.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lam must lie in [0, 1], got {lam}")
    a, b = _as_square(m), _as_square(n)
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    gap = (1 - lam) * inverse(a) + lam * inverse(b) - inverse((1 - lam) * a + lam * b)
    gap = symmetrize(gap)
    return gap, float(np.linalg.eigvalsh(gap).min())


def random_spd(p: int, rng: np.random.Generator) -> np.ndarray:
    """``A A^T + p I`` with ``A`` standard normal; well conditioned by construction."""
    a = rng.standard_normal((p, p))
    return symmetrize(a @ a.T + p * np.eye(p))
