"""Block Hamiltonian of the Ising-XXZ diamond chain with z-axis DM coupling.

Each plaquette holds a Heisenberg dimer (spins a, b) sandwiched between two
classical Ising spins ``mu_i`` and ``mu_ip1``.  With the Ising spins frozen
the dimer Hamiltonian is a 4x4 matrix in the basis ``|00>, |01>, |10>, |11>``
(0 = spin up).  Units: hbar = k_B = 1 and S = sigma / 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

SPIN_UP = 0.5
SPIN_DOWN = -0.5

PARAM_NAMES = ("J", "J1", "delta", "D", "h", "T")

# single-spin operators, S = sigma / 2
SX = np.array([[0, 0.5], [0.5, 0]], dtype=complex)
SY = np.array([[0, -0.5j], [0.5j, 0]], dtype=complex)
SZ = np.array([[0.5, 0], [0, -0.5]], dtype=complex)
I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class ModelParams:
    """Couplings of one diamond plaquette plus the temperature.

    ``delta`` multiplies the zz part of the dimer exchange ``J``; ``D`` is the
    magnitude of the DM vector along z.
    """

    J: float = 1.0
    J1: float = 1.0
    delta: float = 1.0
    D: float = 0.0
    h: float = 1.0
    T: float = 0.2

    def __post_init__(self):
        for name in PARAM_NAMES:
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            # plain floats keep equality, hashing and emitted metadata uniform
            object.__setattr__(self, name, value)

    @property
    def beta(self) -> float:
        if self.T <= 0:
            raise ValueError("T must be > 0")
        return 1.0 / self.T

    def with_(self, **changes) -> "ModelParams":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in PARAM_NAMES}


@dataclass(frozen=True)
class IsingPair:
    mu_i: float
    mu_ip1: float

    def __post_init__(self):
        for mu in (self.mu_i, self.mu_ip1):
            if mu not in (SPIN_UP, SPIN_DOWN):
                raise ValueError(f"Ising spin must be +1/2 or -1/2, got {mu!r}")

    @property
    def total(self) -> float:
        return self.mu_i + self.mu_ip1


# row/column order of the transfer matrix: (+1/2, -1/2)
ISING_VALUES = (SPIN_UP, SPIN_DOWN)
ALL_PAIRS = tuple(IsingPair(m, n) for m in ISING_VALUES for n in ISING_VALUES)


@dataclass(frozen=True)
class BlockSpectrum:
    """Eigenpairs of one block, in the fixed labelling phi_1..phi_4.

    ``lambdas[k]`` belongs to ``vectors[:, k]``.  The labelling is
    |00>, antisymmetric-like, symmetric-like, |11>; values are not sorted.
    ``a_defined`` is False when J = D = 0, where ``a`` is set to 1.
    """

    lambdas: np.ndarray
    eta: float
    a: complex
    vectors: np.ndarray
    a_defined: bool = field(default=True)


def dm_phase(J: float, D: float) -> tuple[float, complex, bool]:
    """Return ``(eta, a, defined)`` with eta = sqrt(D^2 + J^2), a = i eta / (D + i J)."""
    eta = math.hypot(D, J)
    if eta == 0.0:
        return 0.0, 1.0 + 0.0j, False
    # i eta / (D + i J) simplifies to (J + i D) / eta, which stays unimodular
    return eta, complex(J / eta, D / eta), True


_SZ_TOT = np.kron(SZ, I2) + np.kron(I2, SZ)
_XY = np.kron(SX, SX) + np.kron(SY, SY)
_ZZ = np.kron(SZ, SZ)
# z component of S^a x S^b
_DM = np.kron(SX, SY) - np.kron(SY, SX)
_I4 = np.eye(4, dtype=complex)


def block_hamiltonian(params: ModelParams, pair: IsingPair) -> np.ndarray:
    """Dense 4x4 Hamiltonian of one dimer with frozen Ising neighbours."""
    mu = pair.total
    return (params.J * (_XY + params.delta * _ZZ)
            + (params.J1 * mu - params.h) * _SZ_TOT
            + params.D * _DM
            - 0.5 * params.h * mu * _I4)


def level_energies(J, J1, delta, D, h, mu_sum) -> np.ndarray:
    """Closed-form lambda_1..lambda_4; arguments broadcast as numpy arrays.

    The trailing axis of the result indexes the four levels.
    """
    J, J1, delta, D, h, s = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (J, J1, delta, D, h, mu_sum)))
    eta = np.hypot(D, J)
    jd = 0.25 * J * delta
    lam1 = jd - (0.5 * h - J1) * s - h
    lam2 = -0.5 * eta - 0.5 * h * s - jd
    lam3 = 0.5 * eta - 0.5 * h * s - jd
    lam4 = jd - (0.5 * h + J1) * s + h
    return np.stack([lam1, lam2, lam3, lam4], axis=-1)


def block_eigenvalues(params: ModelParams, mu_sum) -> np.ndarray:
    """lambda_1..lambda_4 of one block as a function of ``mu_i + mu_ip1``."""
    return level_energies(params.J, params.J1, params.delta, params.D, params.h, mu_sum)


def block_spectrum(params: ModelParams, pair: IsingPair) -> BlockSpectrum:
    eta, a, defined = dm_phase(params.J, params.D)
    r = 1.0 / math.sqrt(2.0)
    vectors = np.zeros((4, 4), dtype=complex)
    vectors[0, 0] = 1.0
    vectors[1, 1], vectors[2, 1] = -a * r, r
    vectors[1, 2], vectors[2, 2] = a * r, r
    vectors[3, 3] = 1.0
    return BlockSpectrum(
        lambdas=block_eigenvalues(params, pair.total),
        eta=eta,
        a=a,
        vectors=vectors,
        a_defined=defined,
    )


def spectrum_oracle(params: ModelParams, pair: IsingPair) -> BlockSpectrum:
    """Numerical diagonalisation of :func:`block_hamiltonian`.

    Eigenvalues come back sorted ascending, so compare with
    :func:`block_spectrum` as multisets.
    """
    H = block_hamiltonian(params, pair)
    values, vectors = np.linalg.eigh(H)
    eta, a, defined = dm_phase(params.J, params.D)
    return BlockSpectrum(lambdas=values, eta=eta, a=a, vectors=vectors, a_defined=defined)
