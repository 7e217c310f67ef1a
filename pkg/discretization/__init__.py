"""
Grids, delay problem families and whole-window subdomain solvers.
"""
from discretization.grid import Grid1D, build_grid, build_grid_from_spacing
from discretization.problem import (
    DelayFamily,
    DelayProblem,
    FamilyFactory,
    NeutralFamily,
    ParabolicFamily,
    WaveFamily,
)
from discretization.field import BoundaryKind, BoundarySpec, InterfaceTrace, SpaceTimeField
from discretization.tridiagonal import TridiagonalFactor, thomas_solve
from discretization.solver import (
    FluxScheme,
    extract_flux,
    monolithic_solve,
    robin_trace,
    solve_subdomain,
)

__all__ = [
    'Grid1D',
    'build_grid',
    'build_grid_from_spacing',
    'DelayFamily',
    'DelayProblem',
    'FamilyFactory',
    'NeutralFamily',
    'ParabolicFamily',
    'WaveFamily',
    'BoundaryKind',
    'BoundarySpec',
    'InterfaceTrace',
    'SpaceTimeField',
    'TridiagonalFactor',
    'thomas_solve',
    'FluxScheme',
    'extract_flux',
    'monolithic_solve',
    'robin_trace',
    'solve_subdomain',
]
