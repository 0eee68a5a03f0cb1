import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from oracles import (eig2x2, pure_joint_closed_form, random_commuting_pair,
                     sequence_error, spectral_moment)
from qchernoff.errors import CapExceededError, DimensionMismatchError
from qchernoff.jointtest import (classical_multinomial_error,
                                 commuting_reduction, compositions,
                                 error_bounds, helstrom_error, helstrom_test,
                                 joint_error_exact, moments_formula,
                                 pure_joint_error)
from qchernoff.states import (entanglement_pair, outcome_distribution,
                              pauli_pair, projector_of, random_density_matrix,
                              random_pure_state)

PAULI = pauli_pair(0.8, 0.8, math.pi / 2)


def overlap_half_pair():
    psi0 = np.array([1, 0], dtype=complex)
    psi1 = np.array([1, 1], dtype=complex) / math.sqrt(2)
    return psi0, psi1


class TestHelstromTest:
    def test_orthogonal_basis_states(self):
        t = helstrom_test(np.diag([1, 0]), np.diag([0, 1]))
        assert list(t.accept0_mask) == [False, True] or list(t.accept0_mask) == [True, False]
        # the outcome voting for rho0 is the projector onto |0>
        chosen = [m for m, keep in zip(t.measurement.outcomes, t.accept0_mask) if keep]
        assert len(chosen) == 1
        assert_allclose(chosen[0], np.diag([1, 0]), atol=1e-15)

    def test_equal_states_never_vote_for_rho0(self, rng):
        rho = random_density_matrix(3, rng)
        assert not helstrom_test(rho, rho).accept0_mask.any()

    def test_pauli_pair(self):
        t = helstrom_test(*PAULI)
        assert t.accept0_mask.sum() == 1
        lo, hi = eig2x2(PAULI[0] - PAULI[1])
        assert_allclose(sorted(t.eigenvalues), [lo, hi], atol=1e-12)
        for i, m in enumerate(t.measurement.outcomes):
            for j, n in enumerate(t.measurement.outcomes):
                assert_allclose(m @ n, m if i == j else 0 * m, atol=1e-9)

    def test_error_of_the_test_matches_formula(self, rng):
        a, b = random_density_matrix(3, rng), random_density_matrix(3, rng)
        t = helstrom_test(a, b)
        p = outcome_distribution(t.measurement, a)
        q = outcome_distribution(t.measurement, b)
        err = 0.5 * p[~t.accept0_mask].sum() + 0.5 * q[t.accept0_mask].sum()
        assert err == pytest.approx(helstrom_error(a, b), abs=1e-12)


class TestHelstromError:
    def test_equal(self, rng):
        rho = random_density_matrix(2, rng)
        assert helstrom_error(rho, rho) == pytest.approx(0.5)

    def test_orthogonal(self):
        assert helstrom_error(projector_of([1, 0]), projector_of([0, 1])) == pytest.approx(0.0)

    def test_pauli(self):
        lo, hi = eig2x2(PAULI[0] - PAULI[1])
        expected = 0.5 * (1 - 0.5 * (abs(lo) + abs(hi)))
        assert expected == pytest.approx(0.21715728752538, abs=1e-12)
        assert helstrom_error(*PAULI) == pytest.approx(expected, abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            helstrom_error(np.eye(2) / 2, np.eye(4) / 4)


class TestJointError:
    def test_one_copy_is_helstrom(self, rng):
        a, b = random_density_matrix(3, rng), random_density_matrix(3, rng)
        assert joint_error_exact(a, b, 1) == pytest.approx(helstrom_error(a, b), abs=1e-15)

    def test_pure_overlap_half(self):
        psi0, psi1 = overlap_half_pair()
        expected = pure_joint_closed_form(0.5, 3)
        assert expected == pytest.approx(0.032292826653257334, abs=1e-15)
        got = joint_error_exact(projector_of(psi0), projector_of(psi1), 3)
        assert got == pytest.approx(expected, abs=1e-10)
        assert pure_joint_error(psi0, psi1, 3) == pytest.approx(expected, abs=1e-15)

    def test_commuting_flip_pair(self):
        got = joint_error_exact(np.diag([0.9, 0.1]), np.diag([0.1, 0.9]), 2)
        assert got == pytest.approx(classical_multinomial_error([0.9, 0.1], [0.1, 0.9], 2), abs=1e-12)

    def test_cap(self):
        with pytest.raises(CapExceededError):
            joint_error_exact(np.eye(2) / 2, np.eye(2) / 2, 5, cap=16)

    @pytest.mark.parametrize("d", [2, 3])
    def test_non_increasing_in_n(self, rng, d):
        for _ in range(5):
            a, b = random_density_matrix(d, rng), random_density_matrix(d, rng)
            errs = [joint_error_exact(a, b, n) for n in range(1, 6 if d == 2 else 5)]
            assert all(y <= x + 1e-9 for x, y in zip(errs, errs[1:]))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.integers(1, 5))
    def test_pure_closed_form(self, seed, d, n):
        rng = np.random.default_rng(seed)
        if d**n > 256:
            n = 3
        a, b = random_pure_state(d, rng), random_pure_state(d, rng)
        got = joint_error_exact(projector_of(a), projector_of(b), n)
        assert got == pytest.approx(pure_joint_error(a, b, n), abs=1e-9)


class TestPureJointError:
    def test_equal(self, rng):
        psi = random_pure_state(3, rng)
        assert all(pure_joint_error(psi, psi, n) == pytest.approx(0.5) for n in (1, 4, 9))

    def test_orthogonal(self):
        assert pure_joint_error([1, 0], [0, 1], 3) == 0.0

    def test_asymptotic_quarter_overlap(self):
        psi0, psi1 = overlap_half_pair()
        n = 40
        assert pure_joint_error(psi0, psi1, n) / (0.25 * 0.5**n) == pytest.approx(1.0, rel=1e-6)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            pure_joint_error([1, 0], [1, 0, 0], 1)


class TestErrorBounds:
    def test_equal_states(self, rng):
        rho = random_density_matrix(2, rng)
        r = error_bounds(rho, rho, 4)
        assert r.lower_fid == pytest.approx(0.5)
        assert r.upper_fid == pytest.approx(0.5)
        assert r.exact_error == pytest.approx(0.5)

    def test_pure_lower_bound_binds(self, rng):
        a, b = random_pure_state(3, rng), random_pure_state(3, rng)
        r = error_bounds(projector_of(a), projector_of(b), 3)
        assert r.lower_fid == pytest.approx(r.exact_error, abs=1e-9)

    def test_entanglement_pair(self):
        r = error_bounds(*entanglement_pair(), 3)
        assert r.upper_pure == pytest.approx(0.0625, abs=1e-14)
        assert r.rate_lower_relent == -math.inf

    def test_upper_pure_only_for_pure_rho0(self):
        r0, r1 = PAULI
        assert error_bounds(r0, r1, 2).upper_pure is None

    def test_exact_omitted_above_cap(self):
        r = error_bounds(*PAULI, n=6, cap=32)
        assert r.exact_error is None
        assert r.lower_fid <= r.upper_fid

    def test_rates(self):
        r = error_bounds(*PAULI, n=1)
        f = math.sqrt(0.68)
        assert r.rate_upper_fid == pytest.approx(math.log(f))
        assert r.rate_lower_fid == pytest.approx(2 * math.log(f))
        assert r.rate_lower_fid <= r.rate_upper_fid <= 0
        assert r.rate_lower_relent <= 0

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(2, 3), st.integers(1, 4))
    def test_sandwich(self, seed, d, n):
        rng = np.random.default_rng(seed)
        a, b = random_density_matrix(d, rng), random_density_matrix(d, rng)
        r = error_bounds(a, b, n)
        assert 0 <= r.lower_fid <= r.upper_fid <= 0.5
        assert r.lower_fid - 1e-9 <= r.exact_error <= r.upper_fid + 1e-9

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(1, 5))
    def test_pure_rho0_tightening(self, seed, n):
        rng = np.random.default_rng(seed)
        rho0 = projector_of(random_pure_state(2, rng))
        rho1 = random_density_matrix(2, rng)
        r = error_bounds(rho0, rho1, n)
        assert r.upper_pure is not None
        assert r.exact_error <= r.upper_pure + 1e-9
        assert r.upper_pure <= r.upper_fid + 1e-12


class TestMoments:
    def test_first_moment_vanishes(self, rng):
        a, b = random_density_matrix(3, rng), random_density_matrix(3, rng)
        assert moments_formula(a, b, 1, 4) == pytest.approx(0.0, abs=1e-15)

    def test_equal_states(self, rng):
        rho = random_density_matrix(2, rng)
        assert moments_formula(rho, rho, 3, 2) == pytest.approx(0.0, abs=1e-15)

    def test_pauli_second_moment(self):
        expected = spectral_moment(*PAULI, 2, 2)
        assert expected == pytest.approx(0.2112, abs=1e-12)
        assert moments_formula(*PAULI, 2, 2) == pytest.approx(expected, abs=1e-10)

    def test_cap(self):
        with pytest.raises(CapExceededError):
            moments_formula(*PAULI, 13, 1)

    @pytest.mark.parametrize("d", [2, 3])
    def test_against_spectrum(self, rng, d):
        a, b = random_density_matrix(d, rng), random_density_matrix(d, rng)
        for k in range(1, 5):
            for n in range(1, 5):
                assert moments_formula(a, b, k, n) == pytest.approx(
                    spectral_moment(a, b, k, n), abs=1e-9)

    def test_large_copy_count_is_cheap(self):
        assert math.isfinite(moments_formula(*PAULI, 4, 500))


class TestMultinomial:
    def test_equal(self):
        assert classical_multinomial_error([0.3, 0.7], [0.3, 0.7], 5) == pytest.approx(0.5)

    def test_disjoint(self):
        assert classical_multinomial_error([1, 0], [0, 1], 1) == 0.0

    def test_flip_pair_three_draws(self):
        assert sequence_error([0.9, 0.1], [0.1, 0.9], 3) == pytest.approx(0.028, abs=1e-15)
        assert classical_multinomial_error([0.9, 0.1], [0.1, 0.9], 3) == pytest.approx(0.028, abs=1e-14)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.integers(1, 5))
    def test_against_sequence_enumeration(self, seed, k, n):
        rng = np.random.default_rng(seed)
        p, q = rng.dirichlet(np.ones(k)), rng.dirichlet(np.ones(k))
        assert classical_multinomial_error(p, q, n) == pytest.approx(sequence_error(p, q, n), abs=1e-12)

    @pytest.mark.parametrize("n", [40, 80, 200])
    def test_small_errors_keep_relative_accuracy(self, n):
        # exact rational binomial sum: (1/2) sum_k C(n,k) min(9^k, 9^(n-k)) / 10^n
        ref = Fraction(sum(math.comb(n, k) * min(9**k, 9 ** (n - k)) for k in range(n + 1)),
                       2 * 10**n)
        got = classical_multinomial_error([0.9, 0.1], [0.1, 0.9], n)
        assert got == pytest.approx(float(ref), rel=1e-11)

    def test_cap(self):
        with pytest.raises(CapExceededError, match="composition count"):
            classical_multinomial_error([0.5, 0.5], [0.5, 0.5], 20, cap=10)

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            classical_multinomial_error([0.5, 0.5], [1, 0, 0], 2)

    def test_compositions_colex(self):
        rows = compositions(2, 3).tolist()
        assert rows == [[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1], [0, 0, 2]]
        assert len(compositions(6, 3)) == math.comb(8, 2)


class TestCommutingReduction:
    def test_diagonal(self):
        p, q = commuting_reduction(np.diag([0.2, 0.8]), np.diag([0.6, 0.4]))
        assert_allclose(p, [0.2, 0.8])
        assert_allclose(q, [0.6, 0.4])

    def test_pauli_pair_does_not_commute(self):
        assert commuting_reduction(*PAULI) is None

    def test_conjugated_by_commuting_unitary(self, rng):
        rho = random_density_matrix(3, rng)
        w, v = np.linalg.eigh(rho)
        u = (v * np.exp(1j * rng.uniform(0, 2 * np.pi, 3))) @ v.conj().T
        p, q = commuting_reduction(rho, u @ rho @ u.conj().T)
        assert_allclose(p, q, atol=1e-12)

    def test_degenerate_rho0(self):
        # rho0 proportional to identity: the basis must come from rho1
        rng = np.random.default_rng(5)
        rho1 = random_density_matrix(3, rng)
        p, q = commuting_reduction(np.eye(3) / 3, rho1)
        assert_allclose(p, [1 / 3] * 3, atol=1e-12)
        assert_allclose(sorted(q), np.linalg.eigvalsh(rho1), atol=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(2, 3), st.integers(1, 4))
    def test_quantum_equals_classical(self, seed, d, n):
        rng = np.random.default_rng(seed)
        rho0, rho1, p, q = random_commuting_pair(d, rng)
        red = commuting_reduction(rho0, rho1)
        assert red is not None
        assert joint_error_exact(rho0, rho1, n) == pytest.approx(
            classical_multinomial_error(*red, n), abs=1e-9)
        # the reduced distributions are the sampled spectra up to a common permutation
        order = np.argsort(p)
        red_order = np.argsort(red[0])
        assert_allclose(red[0][red_order], p[order], atol=1e-10)
