"""Decoherence of an exchange-coupled two-spin swap gate at second order in the bath coupling."""

from ._backend import BACKEND
from .algebra import (
    EnergySpectrum,
    build_m_tensor,
    build_spin_operator,
    initial_state,
    mixed_up_state,
    singlet_state,
    spin_operators,
    validate_density_matrix,
)
from .bath import BathKernelTable, BathParams, kernel, markov_constants, tabulate_kernel
from .config import ScenarioConfig, dump_config, load_config, parse_config
from .errors import ConfigError, NumericalIntegrityError, QuadratureError, TclGateError
from .observables import (
    ObservableRecord,
    gate_fidelity,
    gate_purity,
    polarization,
    state_fidelity,
    state_purity,
    von_neumann_entropy,
)
from .propagator import (
    EvolutionSuperOp,
    GateSchedule,
    PTensor,
    apply,
    evolution_superop,
    evolve_series,
    make_integrator,
    p_tensor,
)

__all__ = [
    "BACKEND",
    "BathKernelTable",
    "BathParams",
    "ConfigError",
    "EnergySpectrum",
    "EvolutionSuperOp",
    "GateSchedule",
    "NumericalIntegrityError",
    "ObservableRecord",
    "PTensor",
    "QuadratureError",
    "ScenarioConfig",
    "TclGateError",
    "apply",
    "build_m_tensor",
    "build_spin_operator",
    "dump_config",
    "evolution_superop",
    "evolve_series",
    "gate_fidelity",
    "gate_purity",
    "initial_state",
    "kernel",
    "load_config",
    "make_integrator",
    "markov_constants",
    "mixed_up_state",
    "p_tensor",
    "parse_config",
    "polarization",
    "singlet_state",
    "spin_operators",
    "state_fidelity",
    "state_purity",
    "tabulate_kernel",
    "validate_density_matrix",
    "von_neumann_entropy",
]
