import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diamond_min.min import (
    BlochForm,
    bloch_decompose,
    local_phase_rotation,
    measured_state,
    measurement_disturbance,
    min_bruteforce,
    min_hilbert_schmidt,
    min_trace,
    min_xstate,
)
from diamond_min.model import ModelParams
from diamond_min.selftest import random_params, random_xstate
from diamond_min.transfer import thermal_state

ZERO3 = np.zeros(3)


def _ket(*amps):
    v = np.array(amps, dtype=complex)
    v /= np.linalg.norm(v)
    return np.outer(v, v.conj())


def _werner(p):
    singlet = _ket(0, 1, -1, 0)
    return p * singlet + (1 - p) * np.eye(4) / 4


def _random_density(rng):
    A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = A @ A.conj().T
    return rho / np.trace(rho)


def _random_unbiased_state(rng):
    """General state with maximally mixed marginal on qubit a and a full T matrix."""
    from diamond_min.min import PAULI
    eye = np.eye(2)
    while True:
        y = rng.uniform(-0.3, 0.3, 3)
        T = rng.uniform(-0.4, 0.4, (3, 3))
        rho = np.eye(4, dtype=complex)
        for i in range(3):
            rho += y[i] * np.kron(eye, PAULI[i])
            for j in range(3):
                rho += T[i, j] * np.kron(PAULI[i], PAULI[j])
        rho /= 4
        if np.linalg.eigvalsh(rho).min() > 1e-6:
            return rho


def test_maximally_mixed_has_no_correlations():
    b = bloch_decompose(np.eye(4) / 4)
    np.testing.assert_allclose(b.x, ZERO3, atol=1e-15)
    np.testing.assert_allclose(b.y, ZERO3, atol=1e-15)
    np.testing.assert_allclose(b.Tmat, np.zeros((3, 3)), atol=1e-15)
    assert min_trace(b) == 0 and min_hilbert_schmidt(b) == 0


def test_product_state_components():
    b = bloch_decompose(np.diag([1.0, 0, 0, 0]))
    np.testing.assert_allclose(b.x, [0, 0, 1], atol=1e-15)
    np.testing.assert_allclose(b.c, [0, 0, 1], atol=1e-15)
    assert min_hilbert_schmidt(b) == pytest.approx(0.0, abs=1e-15)
    assert min_trace(b) == pytest.approx(0.0, abs=1e-15)


def test_round_trip_through_bloch_form():
    rng = np.random.default_rng(31)
    for k in range(200):
        rho = random_xstate(rng, degenerate=bool(k % 2))
        b = bloch_decompose(rho)
        U = local_phase_rotation(*b.phases)
        np.testing.assert_allclose(b.to_density(), U @ rho @ U.conj().T, atol=1e-12)


def test_non_x_state_rejected():
    rho = _random_density(np.random.default_rng(32))
    with pytest.raises(ValueError):
        bloch_decompose(rho)


def test_trace_formula_needs_diagonal_correlations():
    b = BlochForm(x=ZERO3, y=ZERO3, Tmat=np.array([[0.1, 0.2, 0], [0, 0, 0], [0, 0, 0]]),
                  c=np.array([0.1, 0, 0]))
    with pytest.raises(ValueError):
        min_trace(b)


def test_trace_formula_degenerate_branch_example():
    c = np.array([0.3, 0.5, 0.2])
    assert min_trace(BlochForm(x=ZERO3, y=ZERO3, Tmat=np.diag(c), c=c)) == 0.5


def test_bell_state_normalisation():
    bell = _ket(1, 0, 0, 1)
    b = bloch_decompose(bell)
    np.testing.assert_allclose(b.c, [1, -1, 1], atol=1e-15)
    assert min_hilbert_schmidt(b) == pytest.approx(0.5, abs=1e-15)
    assert min_trace(b) == pytest.approx(1.0, abs=1e-15)
    assert min_bruteforce(bell, "hilbert-schmidt") == pytest.approx(0.5, abs=1e-9)
    assert min_bruteforce(bell, "trace") == pytest.approx(1.0, abs=1e-9)


def test_werner_state_against_bruteforce():
    for p in (0.2, 0.55, 0.9):
        rho = _werner(p)
        b = bloch_decompose(rho)
        assert min_trace(b) == pytest.approx(p, abs=1e-14)
        assert min_bruteforce(rho, "trace", 256) == pytest.approx(min_trace(b), abs=1e-4)
        assert min_bruteforce(rho, "hilbert-schmidt", 256) == pytest.approx(
            min_hilbert_schmidt(b), abs=1e-4)


def test_thermal_state_values():
    st_ = thermal_state(ModelParams(J=1, J1=1, h=1, delta=2, D=0, T=0.1))
    res = min_xstate(st_)
    b = bloch_decompose(st_)
    assert res.n1 == pytest.approx(1.0, abs=0.02)
    assert min_trace(b) == pytest.approx(res.n1, abs=1e-12)
    assert min_hilbert_schmidt(b) == pytest.approx(res.n2, abs=1e-12)
    brute = min_bruteforce(st_, "trace")
    assert brute == pytest.approx(2 * abs(st_.rho23), abs=1e-12)


def test_hot_state_has_no_min():
    res = min_xstate(thermal_state(ModelParams(T=1e9)))
    assert res.n1 < 1e-8 and res.n2 < 1e-16


def test_degenerate_flag_follows_marginal():
    st_ = thermal_state(ModelParams(h=0.0, J1=0.0, T=0.5))
    assert min_xstate(st_).maximizer_degenerate
    assert not min_xstate(thermal_state(ModelParams(h=1.0, T=0.5))).maximizer_degenerate


def test_closed_forms_match_bruteforce_on_x_states():
    rng = np.random.default_rng(33)
    for k in range(100):
        rho = random_xstate(rng, degenerate=bool(k % 2))
        b = bloch_decompose(rho)
        assert min_trace(b) == pytest.approx(min_bruteforce(rho, "trace"), abs=1e-6)
        assert min_hilbert_schmidt(b) == pytest.approx(
            min_bruteforce(rho, "hilbert-schmidt"), abs=1e-6)


def test_hilbert_schmidt_matches_bruteforce_on_general_states():
    from diamond_min.min import bloch_components
    rng = np.random.default_rng(34)
    for k in range(40):
        rho = _random_unbiased_state(rng) if k % 2 else _random_density(rng)
        x, y, T = bloch_components(rho)
        if k % 2:
            x = np.zeros(3)
        b = BlochForm(x=x, y=y, Tmat=T, c=np.diag(T).copy())
        assert min_hilbert_schmidt(b) == pytest.approx(
            min_bruteforce(rho, "hilbert-schmidt"), abs=1e-6)


def test_disturbance_fast_path_matches_direct_eigensolve():
    rng = np.random.default_rng(35)
    for _ in range(100):
        rho = _random_density(rng)
        theta, phi = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
        diff = rho - measured_state(rho, theta, phi)
        direct_trace = np.abs(np.linalg.eigvalsh(diff)).sum()
        direct_hs = np.sum(np.abs(diff) ** 2)
        assert measurement_disturbance(rho, theta, phi) == pytest.approx(direct_trace, abs=1e-13)
        assert measurement_disturbance(rho, theta, phi, "hilbert-schmidt") == pytest.approx(
            direct_hs, abs=1e-13)


def test_measured_state_is_block_diagonal_and_keeps_marginal():
    rho = _random_density(np.random.default_rng(36))
    out = measured_state(rho, 0.0, 0.0)
    assert np.allclose(out[:2, 2:], 0) and np.allclose(out[2:, :2], 0)
    assert np.trace(out) == pytest.approx(1.0, abs=1e-14)


def test_bruteforce_argument_checks():
    with pytest.raises(ValueError):
        min_bruteforce(np.eye(4) / 4, "trace", 32)
    with pytest.raises(ValueError):
        measurement_disturbance(np.eye(4) / 4, 0.0, 0.0, "frobenius")


couplings = st.floats(-3, 3, allow_nan=False)


@settings(max_examples=200, deadline=None)
@given(J=couplings, J1=couplings, delta=couplings, D=couplings, h=couplings,
       T=st.floats(0.01, 10))
def test_model_min_properties(J, J1, delta, D, h, T):
    res = min_xstate(thermal_state(ModelParams(J=J, J1=J1, delta=delta, D=D, h=h, T=T)))
    assert 0.0 <= res.n1 <= 1.0 + 1e-12
    assert res.n2 == pytest.approx(res.n1**2 / 2, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(gamma=st.floats(-np.pi, np.pi), seed=st.integers(0, 2**32 - 1))
def test_local_phase_invariance(gamma, seed):
    rho = random_xstate(np.random.default_rng(seed))
    U = local_phase_rotation(0.0, gamma)
    rotated = U @ rho @ U.conj().T
    b0, b1 = bloch_decompose(rho), bloch_decompose(rotated)
    assert min_trace(b1) == pytest.approx(min_trace(b0), abs=1e-12)
    assert min_hilbert_schmidt(b1) == pytest.approx(min_hilbert_schmidt(b0), abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_random_model_state_closed_form_agrees(seed):
    rng = np.random.default_rng(seed)
    st_ = thermal_state(random_params(rng))
    b = bloch_decompose(st_)
    res = min_xstate(st_)
    assert min_trace(b) == pytest.approx(res.n1, abs=1e-12)
    assert min_hilbert_schmidt(b) == pytest.approx(res.n2, abs=1e-12)
