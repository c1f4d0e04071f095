"""Measurement-induced nonlocality of two-qubit states.

Two flavours are provided: the squared Hilbert-Schmidt distance ``N2`` and the
trace-norm distance ``N1`` between a state and its image under a local von
Neumann measurement on qubit ``a`` that leaves the marginal of ``a`` intact.

Conventions.  ``BlochForm`` stores bare Pauli expectation values,
``x_i = Tr rho (sigma_i x 1)``, ``y_j = Tr rho (1 x sigma_j)`` and
``t_ij = Tr rho (sigma_i x sigma_j)``.  In that normalisation the trace-norm
formula is used as is, while the Hilbert-Schmidt formula (written for the
orthonormal operator basis sigma / sqrt(2)) picks up an overall factor 1/4.
Both scalings were fixed against :func:`min_bruteforce`, which evaluates the
definition directly.  ``||x||`` in the trace-norm formula is the Euclidean
length of the Bloch vector.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .transfer import ThermalState

DEGENERATE_TOL = 1e-12

PAULI = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)
_I2 = np.eye(2, dtype=complex)
_X_MASK = np.array([
    [1, 0, 0, 1],
    [0, 1, 1, 0],
    [0, 1, 1, 0],
    [1, 0, 0, 1],
], dtype=bool)


@dataclass(frozen=True)
class BlochForm:
    """Bloch vectors, correlation matrix and local phases of a two-qubit state.

    ``c`` is the diagonal of ``Tmat``; it only carries the full correlation
    content when ``Tmat`` is diagonal.  ``phases`` records the z rotations
    (on a, on b) applied to make the X-state coherences real.
    """

    x: np.ndarray
    y: np.ndarray
    Tmat: np.ndarray
    c: np.ndarray
    phases: tuple[float, float] = (0.0, 0.0)

    @property
    def is_diagonal(self) -> bool:
        off = self.Tmat - np.diag(np.diag(self.Tmat))
        return bool(np.max(np.abs(off)) <= DEGENERATE_TOL)

    def to_density(self) -> np.ndarray:
        """Rebuild rho = (1 + x.s x 1 + 1 x y.s + sum t_ij s_i x s_j) / 4."""
        rho = np.kron(_I2, _I2).astype(complex)
        for i in range(3):
            rho += self.x[i] * np.kron(PAULI[i], _I2)
            rho += self.y[i] * np.kron(_I2, PAULI[i])
            for j in range(3):
                rho += self.Tmat[i, j] * np.kron(PAULI[i], PAULI[j])
        return rho / 4.0


@dataclass(frozen=True)
class MinResult:
    n1: float
    n2: float
    maximizer_degenerate: bool


def _as_matrix(state) -> np.ndarray:
    rho = state.rho if isinstance(state, ThermalState) else state
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    return rho


def bloch_components(rho) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(x, y, T) of an arbitrary two-qubit matrix, no phase fixing."""
    rho = _as_matrix(rho)
    x = np.array([np.trace(rho @ np.kron(s, _I2)).real for s in PAULI])
    y = np.array([np.trace(rho @ np.kron(_I2, s)).real for s in PAULI])
    T = np.array([[np.trace(rho @ np.kron(si, sj)).real for sj in PAULI] for si in PAULI])
    return x, y, T


def local_phase_rotation(phi_a: float, phi_b: float) -> np.ndarray:
    """diag(1, e^{i phi_a}) x diag(1, e^{i phi_b})."""
    return np.kron(np.diag([1.0, np.exp(1j * phi_a)]), np.diag([1.0, np.exp(1j * phi_b)]))


def bloch_decompose(state) -> BlochForm:
    """Bloch form of an X state after rotating its coherences onto the real axis.

    Local z rotations on both qubits make rho_23 and rho_14 real and
    nonnegative; MIN is invariant under local unitaries, and afterwards the
    correlation matrix is diagonal with
    ``c = (2(|rho_23| + |rho_14|), 2(|rho_23| - |rho_14|), rho_11 - rho_22 - rho_33 + rho_44)``.
    """
    rho = _as_matrix(state)
    if np.max(np.abs(rho[~_X_MASK])) > DEGENERATE_TOL:
        raise ValueError("state is not of X form")
    g23 = np.angle(rho[1, 2]) if rho[1, 2] != 0 else 0.0
    g14 = np.angle(rho[0, 3]) if rho[0, 3] != 0 else 0.0
    # rho_23 -> e^{i(phi_b - phi_a)} rho_23, rho_14 -> e^{-i(phi_a + phi_b)} rho_14
    phi_a = 0.5 * (g14 + g23)
    phi_b = 0.5 * (g14 - g23)
    U = local_phase_rotation(phi_a, phi_b)
    rotated = U @ rho @ U.conj().T
    x, y, T = bloch_components(rotated)
    # the rotation leaves only rounding noise off the X pattern
    x[:2] = 0.0
    y[:2] = 0.0
    T = np.diag(np.diag(T))
    return BlochForm(x=x, y=y, Tmat=T, c=np.diag(T).copy(), phases=(phi_a, phi_b))


def min_hilbert_schmidt(b: BlochForm) -> float:
    """Squared Hilbert-Schmidt MIN from the correlation matrix.

    For x != 0 the measurement basis is pinned to the Bloch vector; for x = 0
    the best basis removes the weakest principal correlation.
    """
    TT = b.Tmat @ b.Tmat.T
    norm_x = np.linalg.norm(b.x)
    if norm_x <= DEGENERATE_TOL:
        value = np.trace(TT) - np.linalg.eigvalsh(TT)[0]
    else:
        value = np.trace(TT) - b.x @ TT @ b.x / norm_x**2
    return float(max(value, 0.0) / 4.0)


def min_trace(b: BlochForm) -> float:
    """Trace-norm MIN for states with a diagonal correlation matrix."""
    if not b.is_diagonal:
        raise ValueError("trace-norm closed form needs a diagonal correlation matrix")
    c = np.asarray(b.c, dtype=float)
    x = np.asarray(b.x, dtype=float)
    norm_x = np.linalg.norm(x)
    if norm_x <= DEGENERATE_TOL:
        return float(np.max(np.abs(c)))
    c2, x2 = c**2, x**2
    # ||c||^2 ||x||^2 - sum c_i^2 x_i^2 written without the subtraction
    alpha = sum(x2[i] * (c2[(i + 1) % 3] + c2[(i + 2) % 3]) for i in range(3))
    beta = sum(x2[i] * c2[(i + 1) % 3] * c2[(i + 2) % 3] for i in range(3))
    chi_plus = alpha + 2.0 * math.sqrt(beta) * norm_x
    # alpha - 2 sqrt(beta)|x| cancels badly (it vanishes whenever |c1| = |c2| on
    # the X-state family), so chi_minus is taken from the product
    # chi_plus * chi_minus = alpha^2 - 4 beta |x|^2, expanded with
    # v_i = x_i^2 (c_j^2 - c_k^2) into 2 sum v_i^2 - (sum v_i)^2.
    v = x2 * np.array([c2[1] - c2[2], c2[2] - c2[0], c2[0] - c2[1]])
    disc = max(2.0 * np.dot(v, v) - v.sum() ** 2, 0.0)
    chi_minus = disc / chi_plus if chi_plus > 0 else 0.0
    return float((math.sqrt(chi_plus) + math.sqrt(chi_minus)) / (2.0 * norm_x))


def min_xstate(state: ThermalState) -> MinResult:
    """N1 = 2|rho_23| and N2 = 2|rho_23|^2 for the thermal X state of the chain."""
    rho = _as_matrix(state)
    r = abs(rho[1, 2])
    x3 = (rho[0, 0] + rho[1, 1] - rho[2, 2] - rho[3, 3]).real
    return MinResult(n1=2.0 * r, n2=2.0 * r * r, maximizer_degenerate=bool(abs(x3) <= DEGENERATE_TOL))


# --- definition-level oracle -------------------------------------------------

def _projectors(theta, phi) -> np.ndarray:
    """Rank-1 projectors (1 +/- n.sigma)/2 on qubit a, shape (..., 2, 2, 2)."""
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    n = np.stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], -1)
    ns = np.einsum("...k,kij->...ij", n, PAULI)
    eye = np.broadcast_to(_I2, ns.shape)
    return np.stack([(eye + ns) / 2, (eye - ns) / 2], axis=-3)


def measured_state(rho, theta, phi) -> np.ndarray:
    """Pi^a(rho) = sum_k (P_k x 1) rho (P_k x 1) for the measurement along (theta, phi)."""
    rho = _as_matrix(rho)
    proj = _projectors(theta, phi)
    big = np.einsum("...kab,cd->...kacbd", proj, _I2).reshape(proj.shape[:-2] + (4, 4))
    # projectors are Hermitian, so big_k^dagger = big_k
    return np.einsum("...kij,jl,...klm->...im", big, rho, big)


def _coherence_block(rho: np.ndarray, theta, phi) -> np.ndarray:
    """B = <u+|rho|u->_a, the 2x2 block that dephasing along (theta, phi) removes.

    In the basis {u+, u-} x 1, rho - Pi^a(rho) = [[0, B], [B^dagger, 0]].
    """
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    c, s, e = np.cos(theta / 2), np.sin(theta / 2), np.exp(1j * phi)
    u_plus = np.stack([c + 0j, e * s], -1)
    u_minus = np.stack([s + 0j, -e * c], -1)
    r = rho.reshape(2, 2, 2, 2)
    return np.einsum("...a,abcd,...c->...bd", u_plus.conj(), r, u_minus)


def measurement_disturbance(rho, theta, phi, norm: str = "trace") -> np.ndarray:
    """||rho - Pi(rho)|| for a projective measurement of qubit a along (theta, phi).

    Vectorised over the angle arrays.  ``norm="hilbert-schmidt"`` returns the
    squared Hilbert-Schmidt norm.  The eigenvalues of rho - Pi(rho) are plus
    and minus the singular values of the removed coherence block, so both
    norms follow from that 2x2 block without a 4x4 eigensolve.
    """
    rho = _as_matrix(rho)
    B = _coherence_block(rho, theta, phi)
    frob2 = np.einsum("...ij,...ij->...", B.conj(), B).real
    if norm == "trace":
        det = np.abs(B[..., 0, 0] * B[..., 1, 1] - B[..., 0, 1] * B[..., 1, 0])
        # sigma_1 + sigma_2 = sqrt(||B||_F^2 + 2 |det B|) for a 2x2 matrix
        return 2.0 * np.sqrt(frob2 + 2.0 * det)
    if norm == "hilbert-schmidt":
        return 2.0 * frob2
    raise ValueError(f"unknown norm {norm!r}; use 'trace' or 'hilbert-schmidt'")


def _golden_max(g, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Golden-section search for the maximum of ``g`` on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    gc, gd = g(c), g(d)
    while b - a > tol:
        if gc >= gd:
            b, d, gd = d, c, gc
            c = b - invphi * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + invphi * (b - a)
            gd = g(d)
    x = 0.5 * (a + b)
    return x, g(x)


def _golden_polish(f, theta0: float, phi0: float, h_theta: float, h_phi: float,
                   tol: float = 1e-8, sweeps: int = 20) -> tuple[float, float, float]:
    """Coordinate-wise golden-section maximisation around one grid cell."""
    theta, phi = theta0, phi0
    best = f(theta, phi)
    for _ in range(sweeps):
        start = best
        t, v = _golden_max(lambda t: f(t, phi), theta - h_theta, theta + h_theta, tol)
        if v > best:
            theta, best = t, v
        p, v = _golden_max(lambda p: f(theta, p), phi - h_phi, phi + h_phi, tol)
        if v > best:
            phi, best = p, v
        if best - start <= 1e-15:
            break
    return theta, phi, best


def min_bruteforce(state, norm: str = "trace", grid_resolution: int = 64) -> float:
    """MIN straight from its definition, maximising over measurement directions.

    A non-degenerate marginal of qubit a fixes the measurement to its own
    eigenbasis.  A degenerate marginal admits every direction: the sphere is
    scanned on a ``grid_resolution x 2*grid_resolution`` (theta, phi) grid and
    the best cell is polished by golden-section line searches.
    """
    if grid_resolution < 64:
        raise ValueError("grid_resolution must be at least 64")
    rho = _as_matrix(state)
    x, _, _ = bloch_components(rho)
    norm_x = np.linalg.norm(x)
    if norm_x > DEGENERATE_TOL:
        n = x / norm_x
        theta = math.acos(max(-1.0, min(1.0, n[2])))
        phi = math.atan2(n[1], n[0])
        return float(measurement_disturbance(rho, theta, phi, norm))

    # n and -n give the same measurement, so the upper hemisphere suffices
    h_theta = (math.pi / 2) / grid_resolution
    h_phi = (2 * math.pi) / (2 * grid_resolution)
    thetas = np.arange(grid_resolution + 1) * h_theta
    phis = np.arange(2 * grid_resolution) * h_phi
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    values = measurement_disturbance(rho, tt, pp, norm)
    k = np.unravel_index(np.argmax(values), values.shape)

    def f(t, p):
        return float(measurement_disturbance(rho, t, p, norm))

    _, _, best = _golden_polish(f, float(tt[k]), float(pp[k]), h_theta, h_phi)
    return max(best, float(values[k]))
