"""
One parameter point, end to end
===============================

Spectrum of a diamond block, the infinite-chain dimer state and its MIN,
each checked against an independent route.
"""

import numpy as np

from diamond_min import (
    IsingPair,
    ModelParams,
    bloch_decompose,
    block_spectrum,
    finite_chain_oracle,
    min_bruteforce,
    min_trace,
    min_xstate,
    spectrum_oracle,
    thermal_state,
)

np.set_printoptions(precision=6, suppress=True)
p = ModelParams(J=1, J1=1, delta=1.5, D=0.5, h=1, T=0.2)
print(p)

# %% the four levels for both neighbour sums, closed form next to eigh
for pair in (IsingPair(0.5, 0.5), IsingPair(0.5, -0.5), IsingPair(-0.5, -0.5)):
    closed = block_spectrum(p, pair)
    print(pair.total, closed.lambdas, np.sort(closed.lambdas) - spectrum_oracle(p, pair).lambdas)

# %% the dimer state; only the X pattern is populated
state = thermal_state(p)
print(state.rho)
print("trace", np.trace(state.rho).real, "eigenvalues", np.linalg.eigvalsh(state.rho))

# %% a periodic ring of 12 blocks is already close to the infinite chain
_, ring = finite_chain_oracle(p, 12)
print("max |rho_12 - rho_inf| =", np.abs(ring.rho - state.rho).max())

# %% three routes to the trace-norm MIN
res = min_xstate(state)
print("2|rho_23|       ", res.n1)
print("Bloch formula   ", min_trace(bloch_decompose(state)))
print("maximisation    ", min_bruteforce(state, "trace"))
print("Hilbert-Schmidt ", res.n2, "= N1^2/2:", np.isclose(res.n2, res.n1**2 / 2))
