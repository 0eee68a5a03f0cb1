"""Separable strategies: one fixed measurement per copy, then a vote.

A :class:`Strategy` pairs a per-copy measurement with a decision rule on
outcome counts. :func:`simulate` estimates its average error by drawing
outcome samples; the analytic helpers give the values it should reproduce.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .divergence import chernoff_classical
from .errors import DimensionMismatchError
from .matcore import RANK_TOL, hermitian_eig, sqrtm_psd, support_pinv_sqrt
from .states import (Povm, as_density_matrix, as_pure_state, as_state_pair,
                     outcome_distribution, two_outcome_povm)

BLOCK_SIZE = 4096
_TIE_TOL = 1e-12

# decide(counts, n) -> 0 or 1 per row; counts has shape (..., n_outcomes)
DecisionRule = Callable[[np.ndarray, int], np.ndarray]


@dataclass(frozen=True, eq=False)
class Strategy:
    measurement: Povm
    decide: DecisionRule
    name: str = "custom"

    def decide_one(self, counts, n: int) -> int:
        counts = np.asarray(counts, dtype=np.int64)
        if counts.shape != (len(self.measurement),):
            raise ValueError(
                f"expected {len(self.measurement)} counts, got shape {counts.shape}")
        if counts.sum() != n:
            raise ValueError(f"counts sum to {counts.sum()}, expected {n}")
        return int(self.decide(counts[None, :], n)[0])


def pure_strategy(psi0) -> Strategy:
    """Accept ``|psi0>`` unless some copy lands outside it.

    Measures ``{|psi0><psi0|, I - |psi0><psi0|}`` on each copy and decides 1
    as soon as the second outcome appears at least once.
    """
    psi0 = as_pure_state(psi0)

    def decide(counts, n):
        return (counts[..., 1] > 0).astype(np.int8)

    return Strategy(two_outcome_povm(psi0), decide, name="pure")


def pure_strategy_error(psi0, rho1, n: int) -> float:
    """Exact average error of :func:`pure_strategy`: ``<psi0|rho1|psi0>^n / 2``."""
    psi0 = as_pure_state(psi0)
    rho1 = as_density_matrix(rho1)
    if rho1.shape[0] != psi0.size:
        raise DimensionMismatchError(
            f"state vector has dimension {psi0.size}, density matrix {rho1.shape[0]}")
    # Rayleigh quotient: dividing by the squared norm cancels the rounding
    # left over from normalising psi0 (e.g. 1/sqrt(2) entries)
    overlap = float(np.real(np.vdot(psi0, rho1 @ psi0)) / np.real(np.vdot(psi0, psi0)))
    return 0.5 * min(1.0, max(0.0, overlap)) ** n


def fidelity_optimal_measurement(rho0, rho1, rank_tol: float = RANK_TOL) -> Povm:
    """Projective measurement whose outcome statistics attain the fidelity.

    Measures in the eigenbasis of
    ``M = rho1^{-1/2} sqrt(rho1^{1/2} rho0 rho1^{1/2}) rho1^{-1/2}``.
    When `rho1` is singular the eigenbasis is taken inside its support and
    the projector onto its kernel is appended as one extra outcome.
    """
    rho0, rho1 = as_state_pair(rho0, rho1)
    spec1 = hermitian_eig(rho1)
    w = spec1.eigenvalues
    support = w > rank_tol * w.max()
    root1 = sqrtm_psd(rho1)
    inv_root1 = support_pinv_sqrt(rho1, rank_tol)
    m = inv_root1 @ sqrtm_psd(root1 @ rho0 @ root1) @ inv_root1
    vs = spec1.eigenvectors[:, support]
    ms = vs.conj().T @ m @ vs
    basis = vs @ hermitian_eig(0.5 * (ms + ms.conj().T), tol=1e-8).eigenvectors
    outcomes = [np.outer(basis[:, i], basis[:, i].conj()) for i in range(basis.shape[1])]
    if not np.all(support):
        vk = spec1.eigenvectors[:, ~support]
        outcomes.append(vk @ vk.conj().T)
    return Povm(tuple(outcomes))


def _loglikelihood_rule(p: np.ndarray, q: np.ndarray) -> DecisionRule:
    both = (p > 0) & (q > 0)
    llr = np.zeros_like(p)
    llr[both] = np.log(p[both]) - np.log(q[both])
    only_q = (p == 0) & (q > 0)
    only_p = (q == 0) & (p > 0)

    def decide(counts, n):
        counts = np.asarray(counts)
        score = counts @ llr
        out = (score < -_TIE_TOL).astype(np.int8)
        # an outcome impossible under one hypothesis settles the vote
        out[(counts[..., only_p] > 0).any(axis=-1)] = 0
        out[(counts[..., only_q] > 0).any(axis=-1)] = 1
        return out

    return decide


def likelihood_strategy(rho0, rho1) -> Strategy:
    """Maximum-likelihood vote over the fidelity-optimal measurement."""
    rho0, rho1 = as_state_pair(rho0, rho1)
    meas = fidelity_optimal_measurement(rho0, rho1)
    p = outcome_distribution(meas, rho0)
    q = outcome_distribution(meas, rho1)
    return Strategy(meas, _loglikelihood_rule(p, q), name="likelihood")


def separable_rate(rho0, rho1) -> float:
    """Per-copy log error of the likelihood test on the fidelity-optimal measurement.

    This is ``min_λ ln sum p_i^λ q_i^(1-λ)`` for the induced outcome
    distributions; ``-inf`` when they have disjoint supports.
    """
    rho0, rho1 = as_state_pair(rho0, rho1)
    meas = fidelity_optimal_measurement(rho0, rho1)
    p = outcome_distribution(meas, rho0)
    q = outcome_distribution(meas, rho1)
    return chernoff_classical(p, q).log_sum_min


@dataclass(frozen=True)
class SimReport:
    n: int
    trials: int
    err0: float
    err1: float
    avg_error: float
    std_err: float
    seed: int


def _block_errors(strategy: Strategy, cdf: np.ndarray, n: int, hyp: int,
                  seed: int, block: int, size: int) -> int:
    ss = np.random.SeedSequence(seed, spawn_key=(hyp, block))
    rng = np.random.Generator(np.random.Philox(ss))
    k = cdf.size
    u = rng.random((size, n))
    outcomes = np.minimum(np.searchsorted(cdf, u, side="right"), k - 1)
    rows = np.arange(size)[:, None] * k
    counts = np.bincount((rows + outcomes).ravel(), minlength=size * k).reshape(size, k)
    decisions = np.asarray(strategy.decide(counts, n))
    return int(np.count_nonzero(decisions != hyp))


def simulate(strategy: Strategy, rho0, rho1, n: int, trials: int, seed: int,
             workers: int = 1) -> SimReport:
    """Monte Carlo estimate of a strategy's error with equal priors.

    Each hypothesis runs `trials` independent trials of `n` copies. Trials
    are grouped in fixed blocks of ``BLOCK_SIZE`` and every block draws from
    its own Philox stream keyed by ``(seed, hypothesis, block index)``, so the
    report is identical for any `workers` value.
    """
    rho0, rho1 = as_state_pair(rho0, rho1)
    if rho0.shape[0] != strategy.measurement.dim:
        raise DimensionMismatchError(
            f"states have dimension {rho0.shape[0]}, measurement {strategy.measurement.dim}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if n < 1:
        raise ValueError("n must be at least 1")
    seed = int(seed)
    if seed < 0:
        raise ValueError("seed must be a non-negative integer")

    jobs = []
    for hyp, rho in ((0, rho0), (1, rho1)):
        cdf = np.cumsum(outcome_distribution(strategy.measurement, rho))
        cdf[-1] = 1.0
        for block, start in enumerate(range(0, trials, BLOCK_SIZE)):
            size = min(BLOCK_SIZE, trials - start)
            jobs.append((strategy, cdf, n, hyp, seed, block, size))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(lambda a: _block_errors(*a), jobs))
    else:
        counts = [_block_errors(*a) for a in jobs]

    wrong = [0, 0]
    for job, c in zip(jobs, counts):
        wrong[job[3]] += c
    err0 = wrong[0] / trials
    err1 = wrong[1] / trials
    std = math.sqrt(err0 * (1 - err0) / (4 * trials) + err1 * (1 - err1) / (4 * trials))
    return SimReport(n=int(n), trials=int(trials), err0=err0, err1=err1,
                     avg_error=0.5 * (err0 + err1), std_err=std, seed=seed)
