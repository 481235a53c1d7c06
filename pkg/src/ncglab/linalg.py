"""Dense complex linear algebra: normalized Schatten norms, block-diagonal
composition, and the norm-preserving rewrites complex -> Hermitian -> real
symmetric.

All trace norms here are NORMALIZED: ||A||_S1 = d^-1 * sum of singular values.
The un-normalized variant is deliberately not exposed.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .config import HERMITIAN_TOL, SVD_RELATIVE_FLOOR


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite 2-d complex array."""
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def _require_square(m: np.ndarray) -> np.ndarray:
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


@dataclass
class SvdResult:
    """Factors of m = u @ diag(s) @ vh, with s non-negative and descending."""

    u: np.ndarray
    s: np.ndarray
    vh: np.ndarray

    def reconstruction_residual(self, m: np.ndarray) -> float:
        rebuilt = (self.u * self.s) @ self.vh
        scale = max(float(np.linalg.norm(m)), 1.0)
        return float(np.linalg.norm(rebuilt - m)) / scale

    def rank(self) -> int:
        if self.s.size == 0 or self.s[0] <= 0.0:
            return 0
        return int(np.count_nonzero(self.s > SVD_RELATIVE_FLOOR * self.s[0]))


def svd(m) -> SvdResult:
    m = as_matrix(m)
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    return SvdResult(u=u, s=s, vh=vh)


def schatten1_norm(m) -> float:
    """Normalized trace norm: the average of the singular values (square input)."""
    m = _require_square(as_matrix(m))
    s = np.linalg.svd(m, compute_uv=False)
    return float(s.sum()) / m.shape[0]


def schatten_inf_norm(m) -> float:
    """Largest singular value (any shape)."""
    m = as_matrix(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.svd(m, compute_uv=False)[0])


def block_diag(blocks) -> np.ndarray:
    """Direct sum of square blocks.

    For equal-size blocks the normalized trace norm of the result equals the
    mean of the blocks' normalized trace norms (for mixed sizes the identity
    holds with dimension weights instead).
    """
    blocks = [as_matrix(b) for b in blocks]
    if not blocks:
        raise ValueError("block_diag requires at least one block")
    for b in blocks:
        _require_square(b)
    return scipy.linalg.block_diag(*blocks).astype(np.complex128)


def embed_complex_as_hermitian(a) -> np.ndarray:
    """Map a square d x d matrix to the 2d x 2d Hermitian [[0, A], [A*, 0]].

    The result has eigenvalues +/- sigma_i(A).
    """
    a = _require_square(as_matrix(a))
    d = a.shape[0]
    out = np.zeros((2 * d, 2 * d), dtype=np.complex128)
    out[:d, d:] = a
    out[d:, :d] = a.conj().T
    return out


def embed_hermitian_as_real_symmetric(b) -> np.ndarray:
    """Map a Hermitian d x d matrix to the real symmetric 2d x 2d matrix
    [[Re B, Im B], [-Im B, Re B]], which has the same eigenvalues with
    doubled multiplicities.
    """
    b = _require_square(as_matrix(b))
    dev = float(np.abs(b - b.conj().T).max()) if b.size else 0.0
    if dev > HERMITIAN_TOL:
        raise ValueError(f"input is not Hermitian (max deviation {dev:.3e})")
    re, im = b.real, b.imag
    top = np.hstack([re, im])
    bottom = np.hstack([-im, re])
    return np.vstack([top, bottom])


def rho(a) -> np.ndarray:
    """Real-linear map d x d complex -> 4d x 4d real symmetric that preserves
    the normalized trace norm; singular values are quadrupled in multiplicity.
    """
    return embed_hermitian_as_real_symmetric(embed_complex_as_hermitian(a))


def polar_unitary(m) -> np.ndarray:
    """Unitary factor U = u @ vh of the SVD, maximizing Re Tr(U* M).

    The all-zero matrix is degenerate (any unitary is optimal); the identity
    is returned and a RuntimeWarning is emitted.
    """
    m = _require_square(as_matrix(m))
    f = svd(m)
    if f.rank() == 0:
        warnings.warn("polar_unitary of an all-zero matrix is degenerate; returning identity",
                      RuntimeWarning, stacklevel=2)
        return np.eye(m.shape[0], dtype=np.complex128)
    return f.u @ f.vh
