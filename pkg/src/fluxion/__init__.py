"""Diffusion in one-dimensional flow tubes as resistance-capacitance difference equations."""

from .discretize import Element, Mesh, build_mesh, nodal_position
from .errors import (
    DomainError,
    IllPosedError,
    InstabilityError,
    NoSteadyStateError,
    UnderdeterminedError,
)
from .geometry import (
    Cone,
    FlowTube,
    Material,
    Prism,
    RadialCylinder,
    RadialSphere,
    Tabulated,
    area,
    resistance_integral,
    volume_integral,
)
from .solver import (
    Dirichlet,
    Flux,
    Insulated,
    SolverConfig,
    ThermalState,
    flux,
    heat_content,
    interface_fluxes,
    run_transient,
    stable_dt,
    steady_solve,
    theta_step,
)

__version__ = "0.1.0"
