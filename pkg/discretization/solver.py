"""
Whole-window solves of one subdomain (or the full interval) and extraction
of interface fluxes.

Every level solves the tridiagonal system

    alpha * u_i - kappa * (u_{i-1} - 2 u_i + u_{i+1}) / dx^2 = rhs_i

where Dirichlet rows pin the boundary value and Neumann/Robin rows eliminate
a ghost node through the boundary condition. With the condition written as
``outward derivative + p*u = R`` the left ghost is
``u_{-1} = u_1 + 2 dx (R - p u_0)`` and the right ghost mirrors it.
"""
import math
from enum import Enum
from typing import Callable, Optional
import numpy as np
from discretization.field import BoundarySpec, InterfaceTrace, SpaceTimeField
from discretization.grid import Grid1D
from discretization.problem import DelayProblem
from discretization.tridiagonal import TridiagonalFactor
from utils.logger import get_logger
from utils.exceptions import GridMismatchError, LengthMismatch, ValidationError

logger = get_logger(__name__)

LEFT = "left"
RIGHT = "right"
SIDES = (LEFT, RIGHT)

# Relative tolerance when matching grid and problem time parameters.
TIME_RTOL = 1e-12


class FluxScheme(str, Enum):
    ONE_SIDED = "one_sided"
    CONSERVATIVE = "conservative"


def check_grid(problem: DelayProblem, grid: Grid1D) -> None:
    """
    Raises:
        GridMismatchError: If the grid's delay or horizon disagree with the problem
    """
    if not math.isclose(grid.tau, problem.tau, rel_tol=TIME_RTOL):
        raise GridMismatchError(
            f"grid delay {grid.delay_steps}*{grid.dt} does not match tau={problem.tau}", "delay_steps"
        )
    if not math.isclose(grid.nt * grid.dt, problem.T, rel_tol=TIME_RTOL):
        raise GridMismatchError(f"grid horizon {grid.nt}*{grid.dt} does not match T={problem.T}", "nt")


def sample_boundary(function: Callable[[float], float], grid: Grid1D) -> InterfaceTrace:
    """Sample a boundary function at the solution levels of a grid."""
    return InterfaceTrace([function(float(t)) for t in grid.times])


def _check_side(side: str) -> str:
    if side not in SIDES:
        raise ValidationError(f"side must be 'left' or 'right', got '{side}'", "side")
    return side


def _assemble(alpha: float, kappa: float, grid: Grid1D, left: BoundarySpec, right: BoundarySpec) -> TridiagonalFactor:
    nx, dx = grid.nx, grid.dx
    off = -kappa / dx ** 2
    center = alpha + 2.0 * kappa / dx ** 2

    diag = np.full(nx, center)
    sub = np.full(nx - 1, off)
    sup = np.full(nx - 1, off)

    if left.is_dirichlet:
        diag[0], sup[0] = 1.0, 0.0
    else:
        p, _ = left.robin_form(LEFT)
        diag[0] = center + 2.0 * kappa * p / dx
        sup[0] = 2.0 * off

    if right.is_dirichlet:
        diag[-1], sub[-1] = 1.0, 0.0
    else:
        p, _ = right.robin_form(RIGHT)
        diag[-1] = center + 2.0 * kappa * p / dx
        sub[-1] = 2.0 * off

    return TridiagonalFactor(sub, diag, sup)


def _ghost(
    problem: DelayProblem,
    grid: Grid1D,
    side: str,
    delayed: np.ndarray,
    delayed_level: int,
    spec: BoundarySpec,
) -> float:
    if delayed_level <= 0:
        x_ghost = grid.x_min - grid.dx if side == LEFT else grid.x_max + grid.dx
        return float(problem.sample_history(np.array([x_ghost]), grid.level_time(delayed_level))[0])
    p, data = spec.robin_form(side)
    r = data[delayed_level - 1]
    if side == LEFT:
        return delayed[1] + 2.0 * grid.dx * (r - p * delayed[0])
    return delayed[-2] + 2.0 * grid.dx * (r - p * delayed[-1])


def _delayed_d2(
    problem: DelayProblem,
    grid: Grid1D,
    delayed: np.ndarray,
    delayed_level: int,
    left: BoundarySpec,
    right: BoundarySpec,
) -> np.ndarray:
    dx2 = grid.dx ** 2
    d2 = np.zeros(grid.nx)
    d2[1:-1] = (delayed[:-2] - 2.0 * delayed[1:-1] + delayed[2:]) / dx2
    # Dirichlet boundary rows never read their entry
    if not left.is_dirichlet:
        ghost = _ghost(problem, grid, LEFT, delayed, delayed_level, left)
        d2[0] = (ghost - 2.0 * delayed[0] + delayed[1]) / dx2
    if not right.is_dirichlet:
        ghost = _ghost(problem, grid, RIGHT, delayed, delayed_level, right)
        d2[-1] = (delayed[-2] - 2.0 * delayed[-1] + ghost) / dx2
    return d2


def solve_subdomain(
    problem: DelayProblem,
    grid: Grid1D,
    left: BoundarySpec,
    right: BoundarySpec,
) -> SpaceTimeField:
    """
    Solve the problem's family on ``grid`` over the whole time window.

    Args:
        problem: Delay problem supplying family, history and forcing
        grid: Subdomain grid (its time lattice must match the problem)
        left: Boundary condition at grid.x_min
        right: Boundary condition at grid.x_max

    Returns:
        SpaceTimeField including the history slab

    Raises:
        GridMismatchError: If the grid's delay or horizon disagree with the problem
        LengthMismatch: If boundary data does not have one value per level
        ZeroPivot: If the level matrix is singular
    """
    check_grid(problem, grid)
    for side, spec in ((LEFT, left), (RIGHT, right)):
        if len(spec.data) != grid.nt:
            raise LengthMismatch(
                f"{side} boundary data has {len(spec.data)} values, grid has nt={grid.nt}",
                expected=grid.nt,
                actual=len(spec.data),
            )

    family = problem.family
    m, dt, dx, x = grid.delay_steps, grid.dt, grid.dx, grid.x
    alpha, kappa = family.implicit_coefficients(dt)
    factor = _assemble(alpha, kappa, grid, left, right)

    left_rhs = None if left.is_dirichlet else 2.0 * kappa * left.robin_form(LEFT)[1] / dx
    right_rhs = None if right.is_dirichlet else 2.0 * kappa * right.robin_form(RIGHT)[1] / dx

    values = np.empty((grid.total_rows, grid.nx))
    for row in range(grid.history_rows):
        values[row] = problem.sample_history(x, grid.level_time(row - m))

    for level in range(1, grid.nt + 1):
        row = level + m
        delayed = values[level]
        delayed_d2 = None
        if family.needs_delayed_d2:
            delayed_d2 = _delayed_d2(problem, grid, delayed, level - m, left, right)
        rhs = family.explicit_rhs(
            values[row - 1],
            values[row - 2],
            delayed,
            delayed_d2,
            problem.sample_forcing(x, grid.level_time(level)),
            dt,
        )

        if left_rhs is None:
            rhs[0] = left.data.values[level - 1]
        else:
            rhs[0] += left_rhs[level - 1]
        if right_rhs is None:
            rhs[-1] = right.data.values[level - 1]
        else:
            rhs[-1] += right_rhs[level - 1]

        values[row] = factor.solve(rhs)

    logger.debug(
        "subdomain_solved",
        family=family.name,
        x_min=grid.x_min,
        x_max=grid.x_max,
        nx=grid.nx,
        nt=grid.nt,
        left=left.kind.value,
        right=right.kind.value,
    )
    return SpaceTimeField(grid=grid, values=values, left=left, right=right)


def monolithic_solve(problem: DelayProblem, grid: Grid1D) -> SpaceTimeField:
    """Solve over the whole domain with the problem's physical Dirichlet data."""
    left = BoundarySpec.dirichlet(sample_boundary(problem.boundary_left, grid))
    right = BoundarySpec.dirichlet(sample_boundary(problem.boundary_right, grid))
    return solve_subdomain(problem, grid, left, right)


def one_sided_flux(field: SpaceTimeField, side: str) -> InterfaceTrace:
    u = field.solution
    dx = field.grid.dx
    if side == LEFT:
        return InterfaceTrace((-3.0 * u[:, 0] + 4.0 * u[:, 1] - u[:, 2]) / (2.0 * dx))
    return InterfaceTrace((3.0 * u[:, -1] - 4.0 * u[:, -2] + u[:, -3]) / (2.0 * dx))


def conservative_flux(problem: DelayProblem, field: SpaceTimeField, side: str) -> InterfaceTrace:
    """
    The d/dx u value for which the ghost-node row at the boundary node holds
    exactly for the computed field.

    A neighbouring subdomain that imposes this value through its ghost-node
    closure reproduces the same discrete equation at the shared node. Delayed
    second differences at the node use the ghost implied by the flux computed
    for the delayed level (history levels read the history function).
    """
    grid = field.grid
    family = problem.family
    m, dt, dx = grid.delay_steps, grid.dt, grid.dx
    alpha, kappa = family.implicit_coefficients(dt)
    values = field.values

    node, inner = (0, 1) if side == LEFT else (-1, -2)
    x_node = np.array([grid.x[node]])
    x_ghost = np.array([grid.x_min - dx if side == LEFT else grid.x_max + dx])
    flux = np.empty(grid.nt)

    for level in range(1, grid.nt + 1):
        row = level + m
        delayed = values[level]
        delayed_d2 = None
        if family.needs_delayed_d2:
            delayed_level = level - m
            if delayed_level >= 1:
                shift = 2.0 * dx * flux[delayed_level - 1]
                ghost = delayed[inner] - shift if side == LEFT else delayed[inner] + shift
            else:
                ghost = problem.sample_history(x_ghost, grid.level_time(delayed_level))[0]
            delayed_d2 = (ghost - 2.0 * delayed[node] + delayed[inner]) / dx ** 2
        rhs = family.explicit_rhs(
            values[row - 1, node],
            values[row - 2, node],
            delayed[node],
            delayed_d2,
            problem.sample_forcing(x_node, grid.level_time(level))[0],
            dt,
        )
        u_node, u_inner = values[row, node], values[row, inner]
        if side == LEFT:
            flux[level - 1] = (rhs - alpha * u_node + 2.0 * kappa * (u_inner - u_node) / dx ** 2) * dx / (2.0 * kappa)
        else:
            flux[level - 1] = (alpha * u_node - 2.0 * kappa * (u_inner - u_node) / dx ** 2 - rhs) * dx / (2.0 * kappa)

    return InterfaceTrace(flux)


def extract_flux(
    field: SpaceTimeField,
    side: str,
    problem: Optional[DelayProblem] = None,
    scheme: FluxScheme = FluxScheme.ONE_SIDED,
) -> InterfaceTrace:
    """
    Approximate d/dx u at one boundary of a field for every level in (0, T].

    Args:
        field: Computed subdomain field
        side: "left" or "right"
        problem: Problem the field was computed for (conservative scheme only)
        scheme: ONE_SIDED for the second-order three-point difference,
            CONSERVATIVE for the flux that closes the boundary row exactly

    Returns:
        InterfaceTrace of d/dx u (not the outward derivative) on both sides
    """
    _check_side(side)
    scheme = FluxScheme(scheme)
    if scheme is FluxScheme.CONSERVATIVE:
        if problem is None:
            raise ValidationError("the conservative flux needs the problem", "problem")
        return conservative_flux(problem, field, side)
    return one_sided_flux(field, side)


def robin_trace(field: SpaceTimeField, index: int, p: float, outward: str) -> InterfaceTrace:
    """
    Outward derivative plus p*u at node ``index`` of a field.

    ``outward`` names the direction of the receiving subdomain's outward
    normal ("right" means +x). Interior nodes use the central difference,
    end nodes the three-point one-sided difference.
    """
    _check_side(outward)
    u = field.solution
    nx, dx = field.grid.nx, field.grid.dx
    index = index % nx
    if 0 < index < nx - 1:
        derivative = (u[:, index + 1] - u[:, index - 1]) / (2.0 * dx)
    elif index == 0:
        derivative = one_sided_flux(field, LEFT).values
    else:
        derivative = one_sided_flux(field, RIGHT).values
    sign = 1.0 if outward == RIGHT else -1.0
    return InterfaceTrace(sign * derivative + p * u[:, index])
