"""Transfer-matrix solution of the diamond chain.

All Boltzmann factors are evaluated relative to the lowest block level over
every Ising configuration, ``exp(-beta * (lambda - lambda_min))``.  The common
factor ``exp(-beta * lambda_min)`` is carried separately as ``log_scale`` and
cancels from every density-matrix ratio, so nothing overflows at small T.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .model import ISING_VALUES, IsingPair, ModelParams, block_eigenvalues, level_energies

# mu_i + mu_ip1 for the transfer-matrix entries, rows/cols ordered (+1/2, -1/2)
_MU_SUM = np.array([[ISING_VALUES[r] + ISING_VALUES[c] for c in range(2)] for r in range(2)])

X_PATTERN = ((1, 1), (2, 2), (3, 3), (4, 4), (2, 3), (3, 2))

MAX_ORACLE_SITES = 14


@dataclass(frozen=True)
class TransferMatrix:
    """Shifted Boltzmann weights and spectrum of the 2x2 transfer matrix.

    True weights are ``w * exp(log_scale)``; the eigenvalues scale the same way.
    """

    w_pp: float
    w_pm: float
    w_mm: float
    lambda_plus: float
    lambda_minus: float
    Q: float
    log_scale: float = 0.0

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.w_pp, self.w_pm], [self.w_pm, self.w_mm]])

    @property
    def ratio(self) -> float:
        """Lambda_- / Lambda_+, which controls finite-size corrections."""
        return self.lambda_minus / self.lambda_plus


@dataclass(frozen=True)
class ElementMatrix:
    """2x2 block ``P_ij`` of one two-qubit operator element over Ising spins.

    Shares the ``log_scale`` convention of :class:`TransferMatrix`.
    """

    i: int
    j: int
    p: np.ndarray
    log_scale: float = 0.0


@dataclass(frozen=True)
class ThermalState:
    """Reduced dimer density matrix in the basis |00>, |01>, |10>, |11>."""

    rho: np.ndarray

    @property
    def rho23(self) -> complex:
        return complex(self.rho[1, 2])


def _check_temperature(T) -> np.ndarray:
    T = np.asarray(T, dtype=float)
    if not np.all(T > 0):
        raise ValueError(f"T must be > 0, got {T.min() if T.ndim else float(T)!r}")
    return T


def _unpack(params: ModelParams) -> tuple:
    return params.J, params.J1, params.delta, params.D, params.h, params.T


def shifted_factors(J, J1, delta, D, h, T) -> tuple[np.ndarray, np.ndarray]:
    """exp(-beta (lambda_k - lambda_min)) on the 2x2 Ising grid.

    Parameters broadcast; the result has shape ``(..., 2, 2, 4)`` and
    ``log_scale = -beta * lambda_min`` has shape ``(...)``.
    """
    T = _check_temperature(T)
    args = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (J, J1, delta, D, h, T)))
    J, J1, delta, D, h, T = (v[..., None, None] for v in args)
    lam = level_energies(J, J1, delta, D, h, _MU_SUM)
    lam_min = lam.min(axis=(-3, -2, -1), keepdims=True)
    beta = (1.0 / T)[..., None]
    factors = np.exp(-beta * (lam - lam_min))
    log_scale = (-beta * lam_min)[..., 0, 0, 0]
    return factors, log_scale


def log_boltzmann_weight(params: ModelParams, pair: IsingPair) -> float:
    T = float(_check_temperature(params.T))
    return float(logsumexp(-block_eigenvalues(params, pair.total) / T))


def boltzmann_weight(params: ModelParams, pair: IsingPair) -> float:
    """Trace of exp(-beta H_i) for fixed Ising neighbours."""
    return math.exp(log_boltzmann_weight(params, pair))


def _tm_arrays(w: np.ndarray):
    """(w_pp, w_pm, w_mm, Q, Lambda_+, Lambda_-) from weights of shape (..., 2, 2)."""
    w_pp, w_pm, w_mm = w[..., 0, 0], w[..., 0, 1], w[..., 1, 1]
    Q = np.hypot(w_pp - w_mm, 2.0 * w_pm)
    lam_plus = 0.5 * (w_pp + w_mm + Q)
    # determinant route avoids cancellation in (w_pp + w_mm - Q)
    lam_minus = (w_pp * w_mm - w_pm * w_pm) / lam_plus
    return w_pp, w_pm, w_mm, Q, lam_plus, lam_minus


def transfer_matrix(params: ModelParams) -> TransferMatrix:
    factors, log_scale = shifted_factors(*_unpack(params))
    w_pp, w_pm, w_mm, Q, lam_plus, lam_minus = _tm_arrays(factors.sum(axis=-1))
    return TransferMatrix(float(w_pp), float(w_pm), float(w_mm),
                          float(lam_plus), float(lam_minus), float(Q), float(log_scale))


def log_partition_function(params: ModelParams, N: int) -> float:
    """log Z_N = log(Lambda_+^N + Lambda_-^N) for a periodic chain of N blocks."""
    if N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")
    tm = transfer_matrix(params)
    return (N * (math.log(tm.lambda_plus) + tm.log_scale)
            + math.log1p(tm.ratio ** N))


def partition_function(params: ModelParams, N: int) -> float:
    return math.exp(log_partition_function(params, N))


def _dm_phase_array(J, D) -> np.ndarray:
    eta = np.hypot(D, J)
    safe = np.where(eta == 0.0, 1.0, eta)
    # real and imaginary parts divided separately: complex division by a
    # subnormal eta overflows inside numpy
    return np.where(eta == 0.0, 1.0 + 0.0j, J / safe + 1j * (D / safe))


def _element_grid(i: int, j: int, factors: np.ndarray, a) -> np.ndarray:
    if (i, j) not in X_PATTERN:
        raise ValueError(f"element ({i}, {j}) lies outside the X pattern {X_PATTERN}")
    e1, e2, e3, e4 = np.moveaxis(factors, -1, 0)
    if (i, j) == (1, 1):
        return e1
    if (i, j) == (4, 4):
        return e4
    if i == j:
        return 0.5 * (e2 + e3)
    off = 0.5 * np.asarray(a)[..., None, None] * (e3 - e2)
    return off if (i, j) == (2, 3) else np.conj(off)


def element_matrix(params: ModelParams, i: int, j: int) -> ElementMatrix:
    """Operator element rho_ij(mu, mu') of exp(-beta H_i) for all four Ising pairs.

    Indices are 1-based in the |00>, |01>, |10>, |11> basis.
    """
    factors, log_scale = shifted_factors(*_unpack(params))
    a = _dm_phase_array(params.J, params.D)
    return ElementMatrix(i, j, _element_grid(i, j, factors, a), float(log_scale))


def thermal_elements(J, J1, delta, D, h, T) -> dict:
    """X-pattern elements of the infinite-chain dimer state, vectorised.

    Each element is the dominant-eigenvector expectation of its operator
    block, divided by Lambda_+.  Returns ``{(i, j): array}``.
    """
    factors, _ = shifted_factors(J, J1, delta, D, h, T)
    a = _dm_phase_array(*np.broadcast_arrays(np.asarray(J, float), np.asarray(D, float)))
    w_pp, w_pm, w_mm, Q, lam_plus, _ = _tm_arrays(factors.sum(axis=-1))
    # squared components of the dominant eigenvector, and twice their product;
    # Q = 0 only if w_pm underflowed, and then every P_pm vanishes as well
    ok = Q > 0
    Qs = np.where(ok, Q, 1.0)
    cos2 = np.where(ok, 0.5 * (1.0 + (w_pp - w_mm) / Qs), 0.5)
    sin2 = 1.0 - cos2
    cross = np.where(ok, 2.0 * w_pm / Qs, 0.0)
    out = {}
    for i, j in X_PATTERN:
        p = _element_grid(i, j, factors, a)
        out[i, j] = (p[..., 0, 0] * cos2 + p[..., 1, 1] * sin2 + p[..., 0, 1] * cross) / lam_plus
    return out


def _assemble(entries: dict) -> np.ndarray:
    rho = np.zeros((4, 4), dtype=complex)
    for (i, j), value in entries.items():
        rho[i - 1, j - 1] = value
    return rho


def thermal_state(params: ModelParams) -> ThermalState:
    """Dimer state of the infinite chain, projected on the dominant TM eigenvector."""
    return ThermalState(_assemble(thermal_elements(*_unpack(params))))


def finite_chain_oracle(params: ModelParams, N: int) -> tuple[float, ThermalState]:
    """Periodic chain of N blocks solved by summing over all 2^N Ising states.

    Z_N and every reduced element are computed twice, once by explicit
    enumeration and once as Tr(P W^(N-1)) / Tr(W^N); the two routes must
    agree.  Enumeration also checks that the reduced state does not depend on
    which bond is singled out.
    """
    if not 1 <= N <= MAX_ORACLE_SITES:
        raise ValueError(f"N must lie in [1, {MAX_ORACLE_SITES}], got {N!r}")
    factors, log_scale = shifted_factors(*_unpack(params))
    a = _dm_phase_array(params.J, params.D)
    W = factors.sum(axis=-1)

    configs = np.array(list(itertools.product((0, 1), repeat=N)))
    left, right = configs, np.roll(configs, -1, axis=1)
    bond_w = W[left, right]                      # (2^N, N)
    weight = bond_w.prod(axis=1)
    Z_enum = weight.sum()

    Wn1 = np.linalg.matrix_power(W, N - 1)
    Z_tm = np.trace(Wn1 @ W)
    if not math.isclose(Z_enum, Z_tm, rel_tol=1e-12):
        raise RuntimeError(f"enumeration Z={Z_enum!r} disagrees with Tr(W^N)={Z_tm!r}")

    entries = {}
    for i, j in X_PATTERN:
        P = _element_grid(i, j, factors, a)
        bond_p = P[left, right]
        per_bond = np.empty(N, dtype=complex)
        for r in range(N):
            # weight of every configuration with bond r replaced by the element
            terms = bond_p[:, r] * np.delete(bond_w, r, axis=1).prod(axis=1)
            per_bond[r] = terms.sum() / Z_enum
        via_tm = np.trace(P @ Wn1) / Z_tm
        scale = max(1.0, abs(via_tm))
        if np.max(np.abs(per_bond - per_bond[0])) > 1e-12 * scale:
            raise RuntimeError(f"element ({i}, {j}) depends on the bond index")
        if abs(per_bond[0] - via_tm) > 1e-12 * scale:
            raise RuntimeError(f"element ({i}, {j}): enumeration and Tr(P W^(N-1)) disagree")
        entries[i, j] = per_bond[0]
    rho = _assemble(entries)
    log_Z = math.log(Z_enum) + N * float(log_scale)
    return log_Z, ThermalState(rho)
