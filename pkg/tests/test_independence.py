import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from paritylab.fermion import allowed_effect_basis, build_modes
from paritylab.independence import (
    IndependenceVerdict,
    TwirlGroup,
    bell_projector,
    bell_vector,
    counterexample_scenario,
    counterexample_state,
    independence_verdict,
    is_independently_preparable,
    is_operationally_independent,
    is_product,
    is_ssr_separable_two_modes,
    operational_independence_residual,
    parity_twirl_group,
    ppt_separable_2x2,
    product_residual,
    twirl,
)
from paritylab.linops import (
    QuantumState,
    partial_trace,
    partial_transpose,
    pauli_basis,
    paulis,
    project_to_state,
)

I2, SX, SY, SZ = paulis()
MS2 = build_modes(2)
PARITY_GROUP = parity_twirl_group(MS2)
BASIS_A = allowed_effect_basis(MS2, (0,))
BASIS_B = allowed_effect_basis(MS2, (1,))


def random_density(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


class TestBellConstructors:
    def test_vectors(self):
        v = bell_vector("phi+")
        np.testing.assert_allclose(v, [1, 0, 0, 1] / np.sqrt(2), atol=1e-15)
        assert abs(np.dot(bell_vector("psi+"), bell_vector("psi-"))) < 1e-15

    def test_projector_matches_outer_product(self):
        for kind in ("phi+", "phi-", "psi+", "psi-"):
            v = bell_vector(kind)
            np.testing.assert_allclose(bell_projector(kind), np.outer(v, v), atol=1e-15)

    def test_counterexample_state_entries(self):
        rho = counterexample_state()
        expected = (np.eye(4) + np.kron(SX, SX).real) / 4.0
        assert np.array_equal(rho.op.real, expected)
        assert np.array_equal(rho.op.imag, np.zeros((4, 4)))


class TestTwirlGroup:
    def test_parity_group_elements(self):
        assert len(PARITY_GROUP) == 4
        assert np.array_equal(PARITY_GROUP.elements[0], np.eye(4))
        assert np.array_equal(PARITY_GROUP.elements[2], np.diag([1.0, 1.0, -1.0, -1.0]))

    def test_rejects_non_unitary(self):
        with pytest.raises(ValueError, match="unitary"):
            TwirlGroup((np.eye(2), np.diag([1.0, 0.5])))

    def test_rejects_non_closed(self):
        theta = np.pi / 4.0
        rot = np.array(
            [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]]
        )
        with pytest.raises(ValueError, match="closed"):
            TwirlGroup((np.eye(2), rot))


class TestTwirl:
    def test_counterexample_twirls_to_maximally_mixed(self):
        out = twirl(counterexample_state(), PARITY_GROUP)
        # exact dyadic arithmetic: equality holds entry for entry
        assert np.array_equal(out.op, np.eye(4, dtype=complex) / 4.0)

    def test_invariant_state(self):
        mixed = QuantumState(np.eye(4, dtype=complex) / 4.0, (2, 2))
        assert np.array_equal(twirl(mixed, PARITY_GROUP).op, mixed.op)

    def test_bell_projector_four_term_oracle(self):
        rho = QuantumState(bell_projector("phi+").astype(complex), (2, 2))
        out = twirl(rho, PARITY_GROUP)
        # explicit four-term average
        acc = np.zeros((4, 4), dtype=complex)
        for u in PARITY_GROUP.elements:
            acc += u @ rho.op @ u.conj().T
        np.testing.assert_allclose(out.op, acc / 4.0, atol=0)
        expected = (bell_projector("phi+") + bell_projector("phi-")) / 2.0
        np.testing.assert_allclose(out.op, expected, atol=1e-15)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_idempotent_and_density_preserving(self, seed):
        rng = np.random.default_rng(seed)
        state = QuantumState(random_density(rng, 4), (2, 2))
        once = twirl(state, PARITY_GROUP)
        twice = twirl(once, PARITY_GROUP)
        assert np.max(np.abs(twice.op - once.op)) < 1e-12
        # QuantumState construction re-validates hermiticity, PSD, trace
        assert abs(np.trace(once.op) - 1.0) < 1e-12

    def test_dimension_mismatch(self):
        small = QuantumState(np.diag([0.5, 0.5]).astype(complex), (2,))
        with pytest.raises(ValueError):
            twirl(small, PARITY_GROUP)


class TestOperationalIndependence:
    def test_counterexample_under_allowed_effects(self):
        rho = counterexample_state()
        verdict = is_operationally_independent(rho, BASIS_A, BASIS_B)
        assert verdict.independent
        assert verdict.max_residual < 1e-12

    def test_counterexample_under_unrestricted_effects(self):
        rho = counterexample_state()
        unrestricted = pauli_basis(1)
        verdict = is_operationally_independent(rho, unrestricted, unrestricted)
        assert not verdict.independent
        assert verdict.witness == (1, 1)  # the (X, X) pair
        assert abs(verdict.max_residual - 1.0) < 1e-12
        # brute-force oracle over all 16 Pauli pairs
        best = 0.0
        for ea in unrestricted:
            for eb in unrestricted:
                joint = np.trace(np.kron(ea, eb) @ rho.op).real
                sep = (
                    np.trace(ea @ partial_trace(rho.op, (2, 2), 0)).real
                    * np.trace(eb @ partial_trace(rho.op, (2, 2), 1)).real
                )
                best = max(best, abs(joint - sep))
        assert abs(best - verdict.max_residual) < 1e-15

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_exact_products_always_independent(self, seed):
        rng = np.random.default_rng(seed)
        rho = QuantumState(
            np.kron(random_density(rng, 2), random_density(rng, 2)), (2, 2)
        )
        unrestricted = pauli_basis(1)
        verdict = is_operationally_independent(rho, unrestricted, unrestricted)
        assert verdict.independent

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_twirl_transfer_identity(self, seed):
        # testing against parity-commuting effects is the same as testing
        # the twirled state: residuals agree pair by pair, hence in the max
        rng = np.random.default_rng(seed)
        state = QuantumState(random_density(rng, 4), (2, 2))
        res_direct, _ = operational_independence_residual(
            state.op, (2, 2), BASIS_A, BASIS_B
        )
        twirled = twirl(state, PARITY_GROUP)
        marg_a = partial_trace(state.op, (2, 2), 0)
        marg_b = partial_trace(state.op, (2, 2), 1)
        res_twirl = 0.0
        for ea in BASIS_A:
            for eb in BASIS_B:
                joint = np.trace(np.kron(ea, eb).astype(complex) @ twirled.op).real
                sep = np.trace(ea @ marg_a).real * np.trace(eb @ marg_b).real
                res_twirl = max(res_twirl, abs(joint - sep))
        assert abs(res_direct - res_twirl) < 1e-12


class TestProduct:
    def test_maximally_mixed(self):
        assert is_product(QuantumState(np.eye(4, dtype=complex) / 4.0, (2, 2)))

    def test_counterexample_residual_frozen(self):
        # four off-diagonal entries of magnitude 1/4: norm sqrt(4/16) = 1/2
        rho = counterexample_state()
        assert abs(product_residual(rho.op, (2, 2)) - 0.5) < 1e-12
        assert not is_product(rho)

    def test_entangled_projector(self):
        rho = QuantumState(bell_projector("phi+").astype(complex), (2, 2))
        assert not is_product(rho)


class TestIndependentlyPreparable:
    def test_counterexample_not_preparable(self):
        assert not is_independently_preparable(MS2, counterexample_state())

    def test_diagonal_product_preparable(self):
        op = np.kron(np.diag([0.2, 0.8]), np.diag([0.6, 0.4])).astype(complex)
        assert is_independently_preparable(MS2, QuantumState(op, (2, 2)))

    def test_coherent_factor_not_preparable(self):
        plus = np.full((2, 2), 0.5)
        op = np.kron(plus, np.diag([0.6, 0.4])).astype(complex)
        assert not is_independently_preparable(MS2, QuantumState(op, (2, 2)))

    def test_invalid_partition(self):
        with pytest.raises(ValueError):
            is_independently_preparable(MS2, counterexample_state(), ((0,), (0, 1)))


class TestPpt:
    def test_counterexample_separable(self):
        assert ppt_separable_2x2(counterexample_state())

    def test_entangled_projector_fails(self):
        rho = QuantumState(bell_projector("phi+").astype(complex), (2, 2))
        assert not ppt_separable_2x2(rho)
        # partial transpose has the frozen eigenvalue -1/2
        pt = partial_transpose(rho.op, (2, 2), 1)
        assert abs(np.linalg.eigvalsh(pt)[0] + 0.5) < 1e-12

    def test_maximally_mixed(self):
        assert ppt_separable_2x2(QuantumState(np.eye(4, dtype=complex) / 4.0, (2, 2)))

    def test_rejects_other_dimensions(self):
        big = QuantumState(np.eye(8, dtype=complex) / 8.0, (2, 4))
        with pytest.raises(ValueError):
            ppt_separable_2x2(big)


class TestSsrSeparable:
    def test_counterexample_not_in_hull(self):
        assert not is_ssr_separable_two_modes(MS2, counterexample_state())

    def test_maximally_mixed_in_hull(self):
        assert is_ssr_separable_two_modes(
            MS2, QuantumState(np.eye(4, dtype=complex) / 4.0, (2, 2))
        )

    def test_classical_mixture_in_hull(self):
        op = np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex)
        assert is_ssr_separable_two_modes(MS2, QuantumState(op, (2, 2)))


class TestVerdict:
    def test_counterexample_triple(self):
        verdict = independence_verdict(MS2, counterexample_state())
        assert verdict.operationally_independent
        assert not verdict.product_state
        assert not verdict.independently_preparable
        assert verdict.max_residual < 1e-12

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_diagonal_products_fully_independent(self, seed):
        rng = np.random.default_rng(seed)
        pa = rng.random() * 0.9 + 0.05
        pb = rng.random() * 0.9 + 0.05
        op = np.kron(np.diag([pa, 1 - pa]), np.diag([pb, 1 - pb])).astype(complex)
        verdict = independence_verdict(MS2, QuantumState(op, (2, 2)))
        assert verdict.operationally_independent
        assert verdict.product_state
        assert verdict.independently_preparable

    def test_invariant_enforced(self):
        with pytest.raises(ValueError):
            IndependenceVerdict(
                operationally_independent=True,
                product_state=False,
                independently_preparable=True,
                max_residual=0.0,
            )


class TestCounterexampleScenario:
    def test_all_checks_pass_at_default_tolerance(self):
        report = counterexample_scenario()
        assert report.passed
        assert len(report.checks) == 8

    def test_twirl_check_survives_zero_tolerance(self):
        # the state entries are exact dyadic rationals
        report = counterexample_scenario(tol=0.0)
        assert report.check("twirl-maximally-mixed").passed

    def test_perturbation_breaks_operational_independence(self):
        rho = counterexample_state()
        bumped = project_to_state(rho.op + 0.01 * np.kron(SX, I2), (2, 2))
        verdict = is_operationally_independent(bumped, BASIS_A, BASIS_B)
        assert not verdict.independent
        # index oracle: with diagonal-unit bases the joint probabilities are
        # the diagonal entries of the state and the marginals their sums
        diag = np.diag(bumped.op).real
        best = 0.0
        for i in range(2):
            for j in range(2):
                joint = diag[2 * i + j]
                sep = (diag[2 * i] + diag[2 * i + 1]) * (diag[j] + diag[2 + j])
                best = max(best, abs(joint - sep))
        assert abs(best - verdict.max_residual) < 1e-15
        assert best > 1e-9


NUM_PROJECTORS = 10_000
LP_PRECISION = 1e-3


def _projector_pool():
    rng = np.random.default_rng(20240601)
    kets_a = rng.standard_normal((NUM_PROJECTORS, 2)) + 1j * rng.standard_normal(
        (NUM_PROJECTORS, 2)
    )
    kets_b = rng.standard_normal((NUM_PROJECTORS, 2)) + 1j * rng.standard_normal(
        (NUM_PROJECTORS, 2)
    )
    kets_a /= np.linalg.norm(kets_a, axis=1, keepdims=True)
    kets_b /= np.linalg.norm(kets_b, axis=1, keepdims=True)
    proj_a = np.einsum("ni,nj->nij", kets_a, kets_a.conj())
    proj_b = np.einsum("ni,nj->nij", kets_b, kets_b.conj())
    return np.einsum("nij,nkl->nikjl", proj_a, proj_b).reshape(NUM_PROJECTORS, 4, 4)


_UPPER = np.triu_indices(4, k=1)


def _hermitian_dof(mats: np.ndarray) -> np.ndarray:
    mats = np.asarray(mats)
    if mats.ndim == 2:
        mats = mats[None]
    return np.concatenate(
        [
            mats[:, range(4), range(4)].real,
            mats[:, _UPPER[0], _UPPER[1]].real,
            mats[:, _UPPER[0], _UPPER[1]].imag,
        ],
        axis=1,
    )


@pytest.mark.slow
def test_ppt_agrees_with_lp_separability_oracle():
    """Inclusion in the hull of 10^4 random product projectors, decided by a
    linear program at fixed precision, never contradicts the partial
    transpose verdict."""
    prods = _projector_pool()
    mat = _hermitian_dof(prods).T  # 16 x N
    a_ub = np.vstack([mat, -mat])
    a_eq = np.ones((1, NUM_PROJECTORS))

    def hull_member(rho):
        b = _hermitian_dof(rho)[0]
        res = linprog(
            np.zeros(NUM_PROJECTORS),
            A_ub=a_ub,
            b_ub=np.concatenate([b + LP_PRECISION, -b + LP_PRECISION]),
            A_eq=a_eq,
            b_eq=[1.0],
            bounds=(0, None),
            method="highs",
        )
        return res.status == 0

    rng = np.random.default_rng(99)
    conclusive = 0
    for _ in range(200):
        rho = random_density(rng, 4)
        state = QuantumState(rho, (2, 2))
        pt_min = float(np.linalg.eigvalsh(partial_transpose(rho, (2, 2), 1))[0])
        if hull_member(rho):
            conclusive += 1
            # membership certified at precision eps perturbs the partial
            # transpose spectrum by at most 4 * eps
            assert pt_min >= -4.0 * LP_PRECISION
            assert ppt_separable_2x2(state, tol=4.0 * LP_PRECISION)
    assert conclusive > 0
