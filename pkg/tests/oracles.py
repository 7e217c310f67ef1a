"""
Dense reference solvers used by the tests.

The space-time oracle writes every family in its original difference form,
collects all unknown levels into one linear system and solves it with
numpy.linalg.solve. It shares no code with the production solver.
"""
import numpy as np
from discretization.field import BoundaryKind, BoundarySpec
from discretization.grid import Grid1D
from discretization.problem import DelayProblem, NeutralFamily, ParabolicFamily, WaveFamily


def dense_space_time_solve(problem: DelayProblem, grid: Grid1D, left: BoundarySpec, right: BoundarySpec) -> np.ndarray:
    """Return the (total_rows, nx) lattice values including the history slab."""
    nx, nt, m = grid.nx, grid.nt, grid.delay_steps
    dx, dt = grid.dx, grid.dt
    x = np.linspace(grid.x_min, grid.x_max, nx)
    family = problem.family

    size = nt * nx
    matrix = np.zeros((size, size))
    rhs = np.zeros(size)

    def history(node_x, level):
        return float(np.broadcast_to(problem.history(np.array([node_x]), level * dt), (1,))[0])

    def unknown(level, node):
        return (level - 1) * nx + node

    def add(eq, level, node, coef):
        if level >= 1:
            matrix[eq, unknown(level, node)] += coef
        else:
            rhs[eq] -= coef * history(x[node], level)

    def add_ghost(eq, level, side, coef):
        # ghost value expressed through the boundary condition at ``level``
        spec = left if side == "left" else right
        node, inner = (0, 1) if side == "left" else (nx - 1, nx - 2)
        if level <= 0:
            x_ghost = x[0] - dx if side == "left" else x[-1] + dx
            rhs[eq] -= coef * history(x_ghost, level)
            return
        data = spec.data.values[level - 1]
        add(eq, level, inner, coef)
        if spec.kind is BoundaryKind.NEUMANN:
            rhs[eq] -= coef * (-2.0 * dx * data if side == "left" else 2.0 * dx * data)
        else:
            add(eq, level, node, -2.0 * dx * spec.robin_p * coef)
            rhs[eq] -= coef * 2.0 * dx * data

    def add_d2(eq, level, node, coef):
        c = coef / dx ** 2
        add(eq, level, node, -2.0 * c)
        for neighbour, side in ((node - 1, "left"), (node + 1, "right")):
            if 0 <= neighbour < nx:
                add(eq, level, neighbour, c)
            else:
                add_ghost(eq, level, side, c)

    for level in range(1, nt + 1):
        t = level * dt
        forcing = np.broadcast_to(np.asarray(problem.forcing(x, t), dtype=float), (nx,))
        for node in range(nx):
            eq = unknown(level, node)
            boundary = {0: left, nx - 1: right}.get(node)
            if boundary is not None and boundary.kind is BoundaryKind.DIRICHLET:
                matrix[eq, eq] = 1.0
                rhs[eq] = boundary.data.values[level - 1]
                continue

            rhs[eq] += forcing[node]
            if isinstance(family, ParabolicFamily):
                # (u^L - u^{L-1})/dt - nu^2 D2 u^L + a1 u^L + a2 u^{L-m} = f
                add(eq, level, node, 1.0 / dt + family.a1)
                add(eq, level - 1, node, -1.0 / dt)
                add_d2(eq, level, node, -family.nu ** 2)
                add(eq, level - m, node, family.a2)
            elif isinstance(family, WaveFamily):
                # (u^L - 2u^{L-1} + u^{L-2})/dt^2 - c^2 D2 u^L - lambda u^{L-m} = f
                add(eq, level, node, 1.0 / dt ** 2)
                add(eq, level - 1, node, -2.0 / dt ** 2)
                add(eq, level - 2, node, 1.0 / dt ** 2)
                add_d2(eq, level, node, -family.c ** 2)
                add(eq, level - m, node, -family.lam)
            elif isinstance(family, NeutralFamily):
                # (u^L - u^{L-1})/dt - mu^2 D2 u^L - mu^2 c^2 D2 u^{L-m} - r u^L - d u^{L-m} = f
                add(eq, level, node, 1.0 / dt - family.r)
                add(eq, level - 1, node, -1.0 / dt)
                add_d2(eq, level, node, -family.mu ** 2)
                add_d2(eq, level - m, node, -(family.mu * family.c) ** 2)
                add(eq, level - m, node, -family.d)
            else:
                raise TypeError(f"no oracle for {type(family).__name__}")

    solution = np.linalg.solve(matrix, rhs).reshape(nt, nx)
    history_rows = np.array([
        np.broadcast_to(np.asarray(problem.history(x, (row - m) * dt), dtype=float), (nx,))
        for row in range(m + 1)
    ])
    return np.vstack([history_rows, solution])


def dense_tridiagonal_solve(sub, diag, sup, rhs) -> np.ndarray:
    matrix = np.diag(np.asarray(diag, dtype=float))
    if len(diag) > 1:
        matrix += np.diag(np.asarray(sub, dtype=float), -1) + np.diag(np.asarray(sup, dtype=float), 1)
    return np.linalg.solve(matrix, np.asarray(rhs, dtype=float))
