import math

import numpy as np
import pytest

from diamond_min.model import (
    ALL_PAIRS,
    IsingPair,
    ModelParams,
    block_hamiltonian,
    block_spectrum,
    dm_phase,
    spectrum_oracle,
)
from diamond_min.selftest import random_params

UP, DOWN = IsingPair(0.5, 0.5), IsingPair(0.5, -0.5)


def test_hamiltonian_example_up_up():
    H = block_hamiltonian(ModelParams(J=1, J1=1, delta=1, D=0, h=1), UP)
    np.testing.assert_allclose(np.linalg.eigvalsh(H), [-1.25, -0.25, -0.25, -0.25], atol=1e-12)


def test_hamiltonian_is_hermitian():
    rng = np.random.default_rng(11)
    for _ in range(20):
        H = block_hamiltonian(random_params(rng), ALL_PAIRS[rng.integers(4)])
        np.testing.assert_allclose(H, H.conj().T, atol=0)


def test_j1_term_drops_for_opposite_neighbours():
    p = ModelParams(J=0.7, J1=2.3, delta=-0.4, D=1.1, h=0.9)
    H1 = block_hamiltonian(p, DOWN)
    H2 = block_hamiltonian(p.with_(J1=-5.0), DOWN)
    np.testing.assert_allclose(H1, H2, atol=0)


def test_pure_xy_dimer():
    p = ModelParams(J=1, J1=0, delta=0, D=0, h=0)
    for pair in ALL_PAIRS:
        np.testing.assert_allclose(np.linalg.eigvalsh(block_hamiltonian(p, pair)),
                                   [-0.5, 0, 0, 0.5], atol=1e-12)


def test_closed_form_levels_in_fixed_order():
    spec = block_spectrum(ModelParams(J=1, J1=1, delta=1, D=0, h=1), UP)
    np.testing.assert_allclose(spec.lambdas, [-0.25, -1.25, -0.25, -0.25], atol=1e-15)


def test_phase_without_dm():
    eta, a, defined = dm_phase(1.0, 0.0)
    assert eta == 1.0 and a == pytest.approx(1.0, abs=1e-15) and defined


def test_phase_with_dm():
    eta, a, _ = dm_phase(1.0, 1.0)
    assert eta == pytest.approx(math.sqrt(2), abs=1e-15)
    assert abs(a) == pytest.approx(1.0, abs=1e-12)


def test_phase_undefined_limit_is_flagged():
    spec = block_spectrum(ModelParams(J=0, D=0), UP)
    assert spec.a == 1 and not spec.a_defined
    assert spec.lambdas[1] == spec.lambdas[2]


def test_multiset_agreement_random():
    rng = np.random.default_rng(12)
    for _ in range(300):
        p = random_params(rng)
        for pair in ALL_PAIRS:
            closed = np.sort(block_spectrum(p, pair).lambdas)
            np.testing.assert_allclose(closed, spectrum_oracle(p, pair).lambdas, atol=1e-10)


def test_multiset_agreement_with_level_crossing():
    p = ModelParams(J=1, J1=1, D=0, h=1, delta=0.0)
    lam = block_spectrum(p, UP).lambdas
    # lambda_1 - lambda_3 grows like J * delta / 2, so this delta closes the gap
    delta_star = 2.0 * (lam[2] - lam[0])
    p = p.with_(delta=delta_star)
    lam = block_spectrum(p, UP).lambdas
    assert lam[0] == pytest.approx(lam[2], abs=1e-12)
    np.testing.assert_allclose(np.sort(lam), spectrum_oracle(p, UP).lambdas, atol=1e-10)


def test_sum_of_levels_is_trace():
    rng = np.random.default_rng(13)
    for _ in range(200):
        p = random_params(rng)
        for pair in ALL_PAIRS:
            tr = np.trace(block_hamiltonian(p, pair)).real
            assert block_spectrum(p, pair).lambdas.sum() == pytest.approx(tr, abs=1e-12)


def test_ordering_and_swap_symmetry():
    rng = np.random.default_rng(14)
    for _ in range(200):
        p = random_params(rng)
        for pair in ALL_PAIRS:
            lam = block_spectrum(p, pair).lambdas
            assert lam[1] <= lam[2]
            swapped = block_spectrum(p, IsingPair(pair.mu_ip1, pair.mu_i)).lambdas
            np.testing.assert_array_equal(lam, swapped)


def test_eigenvectors_diagonalise_block():
    rng = np.random.default_rng(15)
    for _ in range(200):
        p = random_params(rng)
        for pair in ALL_PAIRS:
            spec = block_spectrum(p, pair)
            V = spec.vectors
            assert abs(spec.a) == pytest.approx(1.0, abs=1e-12)
            assert spec.eta >= abs(p.J) and spec.eta >= abs(p.D)
            np.testing.assert_allclose(V.conj().T @ V, np.eye(4), atol=1e-10)
            np.testing.assert_allclose(V.conj().T @ block_hamiltonian(p, pair) @ V,
                                       np.diag(spec.lambdas), atol=1e-10)


def test_oracle_vectors_diagonalise_block():
    rng = np.random.default_rng(16)
    p = random_params(rng)
    for pair in ALL_PAIRS:
        spec = spectrum_oracle(p, pair)
        V = spec.vectors
        D = V.conj().T @ block_hamiltonian(p, pair) @ V
        np.testing.assert_allclose(D, np.diag(spec.lambdas), atol=1e-10)


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(J=float("nan"))
    with pytest.raises(ValueError):
        IsingPair(0.5, 1.0)
