"""Classical and quantum distances between hypotheses.

All entropic quantities are in nats. Infinite values are returned as
``math.inf``, never as a large finite sentinel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import rel_entr

from .errors import DimensionMismatchError, NoSignChangeError
from .matcore import RANK_TOL, hermitian_eig, logm_support, sqrtm_psd
from .states import as_prob_vector, as_state_pair

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _pair(p, q):
    p = as_prob_vector(p)
    q = as_prob_vector(q)
    if p.shape != q.shape:
        raise DimensionMismatchError(f"distributions have lengths {p.size} and {q.size}")
    return p, q


def kl(s, p) -> float:
    """Kullback-Leibler divergence ``sum s_i ln(s_i / p_i)``.

    Uses ``0 ln(0/x) = 0``; returns ``inf`` when `s` puts mass where `p`
    has none.
    """
    s, p = _pair(s, p)
    return float(np.sum(rel_entr(s, p)))


def classical_fidelity(p, q) -> float:
    """Bhattacharyya coefficient ``sum sqrt(p_i q_i)``."""
    p, q = _pair(p, q)
    return float(min(1.0, np.sum(np.sqrt(p * q))))


def golden_section(f, lo: float, hi: float, tol: float = 1e-10,
                   max_iter: int = 200) -> tuple[float, float]:
    """Minimise a unimodal function on ``[lo, hi]``.

    Returns ``(x, f(x))`` where `x` is the best of the final bracket midpoint
    and the two endpoints, so minima sitting on the boundary are found
    exactly.
    """
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    mid = 0.5 * (a + b)
    candidates = [(f(mid), mid), (f(lo), lo), (f(hi), hi)]
    fx, x = min(candidates)
    return x, fx


class _LogSum:
    """``g(λ) = ln sum p_i^λ q_i^(1-λ)`` over the common support, with its slope.

    Indices where either probability is zero contribute nothing at any λ,
    which is the limit of ``p^λ q^(1-λ)`` from inside the interval.
    """

    def __init__(self, p: np.ndarray, q: np.ndarray):
        both = (p > 0) & (q > 0)
        self.empty = not np.any(both)
        self.lp = np.log(p[both])
        self.lq = np.log(q[both])
        self.llr = self.lp - self.lq

    def terms(self, lam: float) -> np.ndarray:
        return lam * self.lp + (1.0 - lam) * self.lq

    def __call__(self, lam: float) -> float:
        # log-sum-exp shift keeps tiny probabilities from underflowing
        e = self.terms(lam)
        m = e.max()
        return float(m + math.log(np.sum(np.exp(e - m))))

    def tilted(self, lam: float) -> np.ndarray:
        e = self.terms(lam)
        w = np.exp(e - e.max())
        return w / w.sum()

    def slope(self, lam: float) -> float:
        return float(np.dot(self.tilted(lam), self.llr))


@dataclass(frozen=True)
class ChernoffResult:
    lambda_star: float
    log_sum_min: float
    chernoff_info: float


def chernoff_classical(p, q) -> ChernoffResult:
    """Chernoff information ``-min_λ ln sum p_i^λ q_i^(1-λ)`` over ``λ ∈ [0, 1]``.

    Golden-section search locates the minimiser; when the minimum is interior
    it is refined by bisection on the slope of the log-sum over all of
    ``[0, 1]``. The slope is monotone because the log-sum is convex, and it
    stays well conditioned when the log-sum is nearly flat (``p ≈ q``), where
    comparing function values alone only pins ``λ`` to about 1e-5.
    """
    p, q = _pair(p, q)
    g = _LogSum(p, q)
    if g.empty:
        return ChernoffResult(0.5, -math.inf, math.inf)
    if np.max(np.abs(g.llr)) <= 1e-12 and abs(g(0.0)) <= 1e-12:
        return ChernoffResult(0.5, 0.0, 0.0)
    lam, val = golden_section(g, 0.0, 1.0, tol=1e-10)
    if 0.0 < lam < 1.0:
        lam = _polish_root(g.slope, 0.0, 1.0, lam)
        val = g(lam)
    val = min(val, 0.0)
    return ChernoffResult(float(lam), float(val), float(-val))


def _polish_root(fn, a: float, b: float, fallback: float) -> float:
    fa, fb = fn(a), fn(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0) == (fb > 0):
        return fallback
    for _ in range(200):
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = fn(m)
        if fm == 0.0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def tilted_distribution(p, q, lam: float) -> np.ndarray:
    """``s_i ∝ p_i^λ q_i^(1-λ)``, zero outside the common support."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    p, q = _pair(p, q)
    g = _LogSum(p, q)
    if g.empty:
        raise ValueError("tilted distribution undefined: p and q have disjoint supports")
    out = np.zeros_like(p)
    out[(p > 0) & (q > 0)] = g.tilted(lam)
    return out


def balance_lambda(p, q, tol: float = 1e-8) -> float:
    """The λ at which the tilted distribution is KL-equidistant from p and q.

    ``D(S_λ||p) - D(S_λ||q)`` equals minus the slope of the log-sum, so it is
    non-increasing in λ; the root is found by bisection.

    Raises
    ------
    NoSignChangeError
        If the difference keeps one sign on ``[0, 1]``, e.g. for ``p == q``.
    """
    p, q = _pair(p, q)
    g = _LogSum(p, q)
    if g.empty:
        raise NoSignChangeError("p and q have disjoint supports")

    def diff(lam):
        s = g.tilted(lam)
        return float(np.dot(s, -g.llr))

    a, b = 0.0, 1.0
    fa, fb = diff(a), diff(b)
    if fa == 0.0 and fb == 0.0:
        raise NoSignChangeError("distributions are equal on their common support")
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0) == (fb > 0):
        raise NoSignChangeError(
            f"D(S||P) - D(S||Q) does not change sign on [0, 1] ({fa:.3e}, {fb:.3e})")
    for _ in range(200):
        m = 0.5 * (a + b)
        fm = diff(m)
        if abs(fm) <= tol * 1e-3 or b - a <= 1e-15:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def fidelity(rho0, rho1) -> float:
    """Root fidelity ``tr sqrt(sqrt(rho0) rho1 sqrt(rho0))``.

    Evaluated as the nuclear norm of ``sqrt(rho0) sqrt(rho1)``, which is the
    same quantity but avoids a second square root of a near-singular matrix.
    """
    rho0, rho1 = as_state_pair(rho0, rho1)
    a = sqrtm_psd(rho0)
    b = sqrtm_psd(rho1)
    sv = np.linalg.svd(a @ b, compute_uv=False)
    return float(min(1.0, sv.sum()))


def qrel_entropy(rho0, rho1, rank_tol: float = RANK_TOL) -> float:
    """Quantum relative entropy ``tr rho0 (ln rho0 - ln rho1)`` in nats.

    Returns ``inf`` when the support of `rho0` is not contained in that of
    `rho1`.
    """
    rho0, rho1 = as_state_pair(rho0, rho1)
    spec1 = hermitian_eig(rho1)
    w1 = spec1.eigenvalues
    kernel = spec1.eigenvectors[:, w1 <= rank_tol * w1.max()]
    if kernel.shape[1]:
        leak = float(np.real(np.trace(kernel.conj().T @ rho0 @ kernel)))
        if leak > rank_tol:
            return math.inf
    d = np.trace(rho0 @ (logm_support(rho0, rank_tol) - logm_support(rho1, rank_tol)))
    return float(max(0.0, d.real))
