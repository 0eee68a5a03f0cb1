"""Dense complex matrix helpers and the Hermitian spectral toolkit.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Every function
here is pure: inputs are never modified.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Callable

import numpy as np

from .errors import CapExceededError, DimensionMismatchError, DomainError, NotHermitianError

HERMITIAN_TOL = 1e-10
PSD_CLAMP_TOL = 1e-10
RANK_TOL = 1e-10
DEFAULT_DIM_CAP = 4096


def as_matrix(a) -> np.ndarray:
    """Return `a` as a finite 2-D complex128 array (a copy when converted)."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def asymmetry(h: np.ndarray) -> float:
    """Largest entrywise deviation ``max |H - H^dagger|``."""
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise DimensionMismatchError(f"matrix is not square: {h.shape}")
    return float(np.max(np.abs(h - h.conj().T)))


def check_hermitian(h, tol: float = HERMITIAN_TOL) -> np.ndarray:
    h = as_matrix(h)
    asym = asymmetry(h)
    if asym > tol:
        raise NotHermitianError(asym)
    return h


def tensor_product(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def tensor_power(a, n: int, cap: int = DEFAULT_DIM_CAP) -> np.ndarray:
    """n-fold Kronecker power ``a ⊗ a ⊗ ... ⊗ a``.

    Raises
    ------
    CapExceededError
        If the row or column dimension of the result would exceed `cap`.
    """
    a = as_matrix(a)
    if int(n) != n or n < 1:
        raise ValueError(f"tensor power must be a positive integer, got {n}")
    n = int(n)
    required = max(a.shape) ** n
    if required > cap:
        raise CapExceededError("tensor-power dimension", required, cap)
    return reduce(np.kron, [a] * n)


@dataclass(frozen=True)
class HermitianSpectrum:
    """Eigenvalues in ascending order and the matching orthonormal eigenvectors.

    ``eigenvectors[:, i]`` belongs to ``eigenvalues[i]``. Inside a degenerate
    eigenspace the basis is arbitrary.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def hermitian_eig(h, tol: float = HERMITIAN_TOL) -> HermitianSpectrum:
    """Eigendecomposition of a Hermitian matrix.

    The input is symmetrised as ``(H + H^dagger)/2`` after the Hermiticity
    check, so the LAPACK driver only ever sees an exactly Hermitian matrix.
    """
    h = check_hermitian(h, tol)
    herm = 0.5 * (h + h.conj().T)
    w, v = np.linalg.eigh(herm)
    return HermitianSpectrum(eigenvalues=w, eigenvectors=v)


def eigvalsh(h, tol: float = HERMITIAN_TOL) -> np.ndarray:
    h = check_hermitian(h, tol)
    return np.linalg.eigvalsh(0.5 * (h + h.conj().T))


def _clamp_psd(w: np.ndarray) -> np.ndarray:
    bad = w < -PSD_CLAMP_TOL
    if np.any(bad):
        lam = float(w[bad].min())
        raise DomainError(
            f"matrix is not positive semidefinite: eigenvalue {lam:.3e}", lam)
    return np.where(w < 0, 0.0, w)


def mat_fn(h, f: Callable[[np.ndarray], np.ndarray], *,
           clamp_psd: bool = False) -> np.ndarray:
    """Apply a real scalar function through the spectrum: ``V f(Λ) V^dagger``.

    Parameters
    ----------
    h : array_like
        Hermitian matrix.
    f : callable
        Vectorised real function evaluated on the eigenvalue array.
    clamp_psd : bool
        Treat eigenvalues in ``[-1e-10, 0)`` as zero and reject anything more
        negative. Use this for functions only defined on ``[0, inf)``.

    Raises
    ------
    DomainError
        If `f` is not finite at some eigenvalue.
    """
    spec = hermitian_eig(h)
    w = _clamp_psd(spec.eigenvalues) if clamp_psd else spec.eigenvalues
    with np.errstate(all="ignore"):
        fw = np.asarray(f(w), dtype=np.float64)
    bad = ~np.isfinite(fw)
    if np.any(bad):
        lam = float(w[bad][0])
        raise DomainError(f"function undefined at eigenvalue {lam:.6g}", lam)
    v = spec.eigenvectors
    return (v * fw) @ v.conj().T


def sqrtm_psd(h) -> np.ndarray:
    """Principal square root of a positive semidefinite matrix."""
    return mat_fn(h, np.sqrt, clamp_psd=True)


def logm_support(h, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Natural log of a PSD matrix on its support, zero on the kernel."""
    spec = hermitian_eig(h)
    w = _clamp_psd(spec.eigenvalues)
    keep = w > rank_tol * max(float(w.max()), 0.0)
    lw = np.zeros_like(w)
    lw[keep] = np.log(w[keep])
    v = spec.eigenvectors
    return (v * lw) @ v.conj().T


def trace_norm(h) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(eigvalsh(h))))


def support_projector(h, rank_tol: float = RANK_TOL) -> np.ndarray:
    spec = hermitian_eig(h)
    w = spec.eigenvalues
    keep = w > rank_tol * max(float(w.max()), 0.0)
    v = spec.eigenvectors[:, keep]
    return v @ v.conj().T


def support_pinv_sqrt(h, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Inverse square root restricted to the support of a PSD matrix.

    Eigenvalues above ``rank_tol * λ_max`` map to ``λ^{-1/2}``; the rest map
    to zero. The zero matrix maps to the zero matrix.
    """
    spec = hermitian_eig(h)
    w = _clamp_psd(spec.eigenvalues)
    keep = w > rank_tol * float(w.max())
    iw = np.zeros_like(w)
    iw[keep] = 1.0 / np.sqrt(w[keep])
    v = spec.eigenvectors
    return (v * iw) @ v.conj().T
