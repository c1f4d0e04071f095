"""Thermal measurement-induced nonlocality of the Ising-XXZ diamond chain."""

__version__ = "0.1.0"

from .model import (  # noqa: E402
    BlockSpectrum,
    IsingPair,
    ModelParams,
    block_hamiltonian,
    block_spectrum,
    spectrum_oracle,
)
from .transfer import (  # noqa: E402
    ElementMatrix,
    ThermalState,
    TransferMatrix,
    boltzmann_weight,
    element_matrix,
    finite_chain_oracle,
    log_partition_function,
    partition_function,
    thermal_state,
    transfer_matrix,
)
from .min import (  # noqa: E402
    BlochForm,
    MinResult,
    bloch_decompose,
    min_bruteforce,
    min_hilbert_schmidt,
    min_trace,
    min_xstate,
)
from .analysis import (  # noqa: E402
    Axis,
    BoundaryCurve,
    CriticalPoint,
    NoCriticalPoint,
    SweepResult,
    SweepSpec,
    critical_point,
    derivative,
    sweep,
    threshold_boundary,
)
