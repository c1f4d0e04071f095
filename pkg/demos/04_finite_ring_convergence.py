"""
Finite rings approach the infinite chain geometrically
======================================================

The reduced dimer state of a periodic ring of N blocks differs from the
infinite-chain state by roughly (Lambda_- / Lambda_+)^(N - 1).  When the two
transfer-matrix eigenvalues are close, twelve blocks are far from enough.
Deviations near 1e-16 are rounding noise and can sit above the bound.
"""

import numpy as np

from diamond_min import ModelParams, finite_chain_oracle, thermal_state, transfer_matrix

for p in (ModelParams(T=2.0), ModelParams(T=0.5), ModelParams(T=0.2)):
    r = abs(transfer_matrix(p).ratio)
    limit = thermal_state(p).rho
    print(f"T = {p.T:g}, |Lambda_-/Lambda_+| = {r:.3f}")
    for N in (2, 4, 8, 12):
        dev = np.abs(finite_chain_oracle(p, N)[1].rho - limit).max()
        bound = (1 + r) * r ** (N - 1) / (1 - r**N)
        print(f"  N = {N:2d}: deviation {dev:.2e}, bound {bound:.2e}")
