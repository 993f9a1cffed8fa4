"""Python bindings for the vacuum-kinetics C++ library."""

from ._core import (
    ConfigError,
    ConvergenceError,
    DomainError,
    acceptance,
    cavity_rates,
    evolve,
    noise_kernel,
    ratio_adiabatic,
    run,
    scenario_names,
    stationary_force,
    stationary_potential,
    steady_state,
    unruh_temperature,
)

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "acceptance",
    "cavity_rates",
    "evolve",
    "noise_kernel",
    "ratio_adiabatic",
    "run",
    "scenario_names",
    "stationary_force",
    "stationary_potential",
    "steady_state",
    "unruh_temperature",
]
