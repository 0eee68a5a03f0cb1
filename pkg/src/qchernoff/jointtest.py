"""Optimal tests that measure all N copies jointly.

The central quantity is the minimum average error with equal priors,
``R = (1 - ||rho0^⊗N - rho1^⊗N||_1 / 2) / 2``. Exact values come from a full
eigensolve of the tensor-power difference and are therefore limited by the
dimension cap; fidelity and relative-entropy bounds are available at any N.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.special import gammaln, xlogy

from .divergence import fidelity, qrel_entropy
from .errors import CapExceededError, DimensionMismatchError
from .matcore import DEFAULT_DIM_CAP, hermitian_eig, tensor_power, trace_norm
from .states import Povm, as_prob_vector, as_pure_state, as_state_pair

DEFAULT_MOMENT_CAP = 12
DEFAULT_COMPOSITION_CAP = 10**6
COMMUTE_TOL = 1e-10
PURE_RANK_TOL = 1e-9
_ZERO_EIG_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class HelstromTest:
    """Projective measurement onto the eigenvectors of ``rho0 - rho1``.

    ``accept0_mask[i]`` is true when outcome ``i`` votes for ``rho0``.
    """

    measurement: Povm
    accept0_mask: np.ndarray
    eigenvalues: np.ndarray = field(repr=False)


def helstrom_test(rho0, rho1) -> HelstromTest:
    rho0, rho1 = as_state_pair(rho0, rho1)
    spec = hermitian_eig(rho0 - rho1)
    # zero eigenvalues go to rho1; with equal priors this does not change the error
    mask = spec.eigenvalues > _ZERO_EIG_TOL
    return HelstromTest(Povm.from_basis(spec.eigenvectors), mask, spec.eigenvalues)


def helstrom_error(rho0, rho1) -> float:
    rho0, rho1 = as_state_pair(rho0, rho1)
    return _error_from_trace_norm(trace_norm(rho0 - rho1))


def _error_from_trace_norm(tn: float) -> float:
    return float(min(0.5, max(0.0, 0.5 * (1.0 - 0.5 * tn))))


def joint_error_exact(rho0, rho1, n: int, cap: int = DEFAULT_DIM_CAP) -> float:
    """Minimum error of the optimal joint measurement on `n` copies."""
    rho0, rho1 = as_state_pair(rho0, rho1)
    a = tensor_power(rho0, n, cap)
    b = tensor_power(rho1, n, cap)
    return _error_from_trace_norm(trace_norm(a - b))


def pure_joint_error(psi0, psi1, n: int) -> float:
    """Closed form for two pure states: ``(1 - sqrt(1 - |<psi0|psi1>|^(2n))) / 2``."""
    psi0 = as_pure_state(psi0)
    psi1 = as_pure_state(psi1)
    if psi0.shape != psi1.shape:
        raise DimensionMismatchError(f"states have dimensions {psi0.size} and {psi1.size}")
    overlap2 = min(1.0, abs(np.vdot(psi0, psi1)) ** 2)
    return 0.5 * (1.0 - math.sqrt(1.0 - overlap2**n))


def pure_state_vector(rho) -> Optional[np.ndarray]:
    """Dominant eigenvector when `rho` is rank one, else None."""
    spec = hermitian_eig(rho)
    if abs(spec.eigenvalues[-1] - 1.0) > PURE_RANK_TOL:
        return None
    return spec.eigenvectors[:, -1]


@dataclass(frozen=True)
class ErrorReport:
    """Exact error (when affordable), fidelity bounds and asymptotic rates.

    Rates are per-copy natural logs of the error. ``upper_pure`` is set only
    when ``rho0`` is pure.
    """

    n: int
    exact_error: Optional[float]
    lower_fid: float
    upper_fid: float
    upper_pure: Optional[float]
    rate_lower_fid: float
    rate_upper_fid: float
    rate_lower_relent: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _log(x: float) -> float:
    return math.log(x) if x > 0 else -math.inf


def error_bounds(rho0, rho1, n: int, cap: int = DEFAULT_DIM_CAP) -> ErrorReport:
    rho0, rho1 = as_state_pair(rho0, rho1)
    f = fidelity(rho0, rho1)
    lower = 0.5 * (1.0 - math.sqrt(max(0.0, 1.0 - f ** (2 * n))))
    upper = 0.5 * f**n
    d = rho0.shape[0]
    exact = joint_error_exact(rho0, rho1, n, cap) if d**n <= cap else None
    psi0 = pure_state_vector(rho0)
    upper_pure = None
    if psi0 is not None:
        overlap = float(np.real(np.vdot(psi0, rho1 @ psi0)))
        upper_pure = 0.5 * min(1.0, max(0.0, overlap)) ** n
    d01 = qrel_entropy(rho0, rho1)
    d10 = qrel_entropy(rho1, rho0)
    return ErrorReport(
        n=int(n),
        exact_error=exact,
        lower_fid=lower,
        upper_fid=upper,
        upper_pure=upper_pure,
        rate_lower_fid=2.0 * _log(f),
        rate_upper_fid=_log(f),
        rate_lower_relent=-max(d01, d10),
    )


def moments_formula(rho0, rho1, n_moment: int, n_copies: int,
                    cap: int = DEFAULT_MOMENT_CAP) -> float:
    """Normalised n-th moment of the spectrum of ``rho0^⊗N - rho1^⊗N``.

    Expands the power over all ``2^n`` words in ``{rho0, rho1}`` and uses
    ``tr(A1^⊗N ... An^⊗N) = tr(A1 ... An)^N``, so the cost does not depend on
    the number of copies.
    """
    rho0, rho1 = as_state_pair(rho0, rho1)
    if n_moment < 1 or n_copies < 1:
        raise ValueError("moment order and copy count must be positive")
    if n_moment > cap:
        raise CapExceededError("moment order", n_moment, cap)
    d = rho0.shape[0]
    mats = (rho0, rho1)
    total = 0j
    for word in itertools.product((0, 1), repeat=n_moment):
        prod = mats[word[0]]
        for k in word[1:]:
            prod = prod @ mats[k]
        sign = -1 if sum(word) % 2 else 1
        total += sign * np.trace(prod) ** n_copies
    # d^-N computed in log space to stay finite for large N
    return float(total.real * math.exp(-n_copies * math.log(d)))


def compositions(n: int, k: int) -> np.ndarray:
    """All ``(x_1, ..., x_k)`` of non-negative integers summing to `n`.

    Rows are in colexicographic order: sorted by the last entry, then the one
    before it, and so on.
    """
    rows = []
    for bars in itertools.combinations(range(n + k - 1), k - 1):
        edges = (-1,) + bars + (n + k - 1,)
        rows.append([edges[i + 1] - edges[i] - 1 for i in range(k)])
    arr = np.array(rows, dtype=np.int64).reshape(-1, k)
    return arr[np.lexsort(arr.T)]


def classical_multinomial_error(p, q, n: int,
                                cap: int = DEFAULT_COMPOSITION_CAP) -> float:
    """Error of the optimal test between two multinomials of `n` draws.

    Enumerates every count vector, so the cost is ``C(n + k - 1, k - 1)``.
    The error is summed as ``sum min(P_n, Q_n) / 2`` rather than through
    ``1 - |P_n - Q_n|_1 / 2``; the two agree exactly in arithmetic, but the
    second cancels catastrophically once the error is small.
    """
    p = as_prob_vector(p)
    q = as_prob_vector(q)
    if p.shape != q.shape:
        raise DimensionMismatchError(f"distributions have lengths {p.size} and {q.size}")
    k = p.size
    count = math.comb(n + k - 1, k - 1)
    if count > cap:
        raise CapExceededError("composition count", count, cap)
    x = compositions(n, k)
    log_coef = gammaln(n + 1) - gammaln(x + 1).sum(axis=1)
    with np.errstate(divide="ignore"):
        pn = np.exp(log_coef + xlogy(x, p).sum(axis=1))
        qn = np.exp(log_coef + xlogy(x, q).sum(axis=1))
    return float(0.5 * np.minimum(pn, qn).sum())


def commuting_reduction(rho0, rho1, tol: float = COMMUTE_TOL):
    """Eigenvalue distributions of two commuting states in a shared eigenbasis.

    Returns ``None`` when the commutator's Frobenius norm exceeds `tol`.
    """
    rho0, rho1 = as_state_pair(rho0, rho1)
    comm = rho0 @ rho1 - rho1 @ rho0
    if np.linalg.norm(comm) > tol:
        return None
    # a generic combination splits every degeneracy the pair does not share
    mix = rho0 + (math.sqrt(2.0) - 0.5) * rho1
    v = hermitian_eig(0.5 * (mix + mix.conj().T)).eigenvectors
    p = np.real(np.einsum("ji,jk,ki->i", v.conj(), rho0, v))
    q = np.real(np.einsum("ji,jk,ki->i", v.conj(), rho1, v))
    return as_prob_vector(p), as_prob_vector(q)
