"""Cross-checks of every closed form against an independent route.

Suites:

* ``spectrum``  closed-form levels vs numerical diagonalisation
* ``partition`` Lambda_+^N + Lambda_-^N vs summing all 2^N Ising states
* ``min``       closed-form MIN vs maximising over measurement directions
* ``identity``  N2 = N1^2 / 2 on model states

Setting ``DIAMOND_MIN_SELFTEST_FAULT`` to a suite name (or ``all``) perturbs
that suite's closed-form side so the failure path can be exercised.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass

import numpy as np

from .min import bloch_decompose, min_bruteforce, min_hilbert_schmidt, min_trace, min_xstate
from .model import ALL_PAIRS, ISING_VALUES, ModelParams, block_spectrum, spectrum_oracle
from .transfer import log_boltzmann_weight, log_partition_function, thermal_state

FAULT_ENV = "DIAMOND_MIN_SELFTEST_FAULT"
FAULT_SIZE = 1e-3


@dataclass
class SuiteResult:
    name: str
    max_deviation: float
    tolerance: float
    samples: int

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.name:<10} max deviation {self.max_deviation:.3e} "
                f"(tolerance {self.tolerance:.0e}, {self.samples} samples)")


def _fault(suite: str) -> float:
    flag = os.environ.get(FAULT_ENV, "")
    return FAULT_SIZE if flag in (suite, "all") else 0.0


def random_params(rng: np.random.Generator, lo: float = -3.0, hi: float = 3.0,
                  t_range=(0.05, 5.0)) -> ModelParams:
    J, J1, delta, D, h = rng.uniform(lo, hi, 5)
    return ModelParams(J=J, J1=J1, delta=delta, D=D, h=h, T=rng.uniform(*t_range))


def random_xstate(rng: np.random.Generator, degenerate: bool = False) -> np.ndarray:
    """Random physical X state; ``degenerate`` forces a maximally mixed marginal on a."""
    if degenerate:
        p12 = rng.dirichlet([1, 1]) * 0.5
        p34 = rng.dirichlet([1, 1]) * 0.5
        p = np.array([p12[0], p12[1], p34[0], p34[1]])
    else:
        p = rng.dirichlet([1, 1, 1, 1])
    r23 = rng.uniform(0, 1) * math.sqrt(p[1] * p[2]) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    r14 = rng.uniform(0, 1) * math.sqrt(p[0] * p[3]) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    rho = np.diag(p).astype(complex)
    rho[1, 2], rho[2, 1] = r23, np.conj(r23)
    rho[0, 3], rho[3, 0] = r14, np.conj(r14)
    return rho


def enumerate_log_z(params: ModelParams, N: int) -> float:
    """log Z_N summed over all 2^N periodic Ising configurations."""
    logw = {(p.mu_i, p.mu_ip1): log_boltzmann_weight(params, p) for p in ALL_PAIRS}
    terms = []
    for config in itertools.product(ISING_VALUES, repeat=N):
        terms.append(sum(logw[config[k], config[(k + 1) % N]] for k in range(N)))
    terms = np.array(terms)
    top = terms.max()
    return float(top + math.log(np.exp(terms - top).sum()))


def suite_spectrum(rng, draws: int = 1000) -> SuiteResult:
    worst = 0.0
    for _ in range(draws):
        params = random_params(rng)
        for pair in ALL_PAIRS:
            closed = np.sort(block_spectrum(params, pair).lambdas) + _fault("spectrum")
            numeric = spectrum_oracle(params, pair).lambdas
            worst = max(worst, float(np.max(np.abs(closed - numeric))))
    return SuiteResult("spectrum", worst, 1e-10, draws)


def suite_partition(rng, draws: int = 100, sizes=(4, 8, 10)) -> SuiteResult:
    worst = 0.0
    for _ in range(draws):
        params = random_params(rng)
        for N in sizes:
            diff = log_partition_function(params, N) + _fault("partition") - enumerate_log_z(params, N)
            worst = max(worst, abs(math.expm1(diff)))
    return SuiteResult("partition", worst, 1e-12, draws)


def suite_min(rng, draws: int = 200, grid_resolution: int = 64) -> SuiteResult:
    worst = 0.0
    for k in range(draws):
        rho = random_xstate(rng, degenerate=bool(k % 2))
        b = bloch_decompose(rho)
        for norm, closed in (("trace", min_trace(b)), ("hilbert-schmidt", min_hilbert_schmidt(b))):
            brute = min_bruteforce(rho, norm, grid_resolution)
            worst = max(worst, abs(closed + _fault("min") - brute))
    return SuiteResult("min", worst, 1e-6, draws)


def suite_identity(rng, draws: int = 2000) -> SuiteResult:
    worst = 0.0
    for _ in range(draws):
        res = min_xstate(thermal_state(random_params(rng)))
        worst = max(worst, abs(res.n2 + _fault("identity") - res.n1**2 / 2))
    return SuiteResult("identity", worst, 1e-12, draws)


SUITES = {
    "spectrum": suite_spectrum,
    "partition": suite_partition,
    "min": suite_min,
    "identity": suite_identity,
}


def run_selftest(seed: int = 0, suites=None, quick: bool = False) -> list[SuiteResult]:
    """Run the suites in a fixed order with one seeded generator each."""
    results = []
    for offset, name in enumerate(suites or SUITES):
        rng = np.random.default_rng([seed, offset])
        kwargs = {"draws": 20} if quick else {}
        results.append(SUITES[name](rng, **kwargs))
    return results
