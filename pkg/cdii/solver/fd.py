"""
Finite differences for div(gamma grad u) = g on the unit square with
Dirichlet data. Fluxes between neighbouring nodes use the harmonic mean
of gamma; the discrete operator is -div(gamma grad .), which is symmetric
positive definite whenever gamma > 0.
"""
import logging
from typing import Callable, Optional

import numpy as np
from scipy import sparse

from .. errors import DegenerateConductivity, SolverDiverged
from .. model.field import GridField, LinearSystem

log = logging.getLogger(__name__)

Function = Callable[[np.ndarray, np.ndarray], np.ndarray]

def _harmonic(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return 2.0 * a * b / (a + b)

def assemble(gamma: GridField, f: Function, g: Optional[Function] = None) -> LinearSystem:
    values = gamma.values
    bad = np.argwhere(values <= 0.0)
    if bad.size:
        j, i = bad[0]
        raise DegenerateConductivity(int(i), int(j), float(values[j, i]))
    x, y = gamma.coordinates()
    cx = _harmonic(values[:, :-1], values[:, 1:]) / gamma.hx ** 2
    cy = _harmonic(values[:-1, :], values[1:, :]) / gamma.hy ** 2
    west = cx[1:-1, :-1]
    east = cx[1:-1, 1:]
    south = cy[:-1, 1:-1]
    north = cy[1:, 1:-1]

    boundary = np.zeros_like(values)
    edge = np.ones_like(values, dtype=bool)
    edge[1:-1, 1:-1] = False
    boundary[edge] = np.broadcast_to(f(x, y), x.shape)[edge]

    rhs = (west * boundary[1:-1, :-2] + east * boundary[1:-1, 2:]
           + south * boundary[:-2, 1:-1] + north * boundary[2:, 1:-1])
    if g is not None:
        rhs = rhs - np.broadcast_to(g(x, y), x.shape)[1:-1, 1:-1]
    log.debug('assembled %dx%d system', gamma.nx, gamma.ny)
    return LinearSystem(west + east + south + north, -west, -east, -south, -north, rhs, boundary)

def matrix(system: LinearSystem) -> sparse.csr_matrix:
    """The interior operator; couplings to boundary nodes live in the RHS."""
    my, mx = system.diag.shape
    col = np.tile(np.arange(mx), my)
    west = np.where(col > 0, system.west.ravel(), 0.0)[1:]
    east = np.where(col < mx - 1, system.east.ravel(), 0.0)[:-1]
    south = system.south.ravel()[mx:]
    north = system.north.ravel()[:-mx]
    diagonals = [system.diag.ravel(), west, east]
    offsets = [0, -1, 1]
    if my > 1:
        diagonals += [south, north]
        offsets += [-mx, mx]
    return sparse.diags(diagonals, offsets, format='csr')

def solve_cg(system: LinearSystem, tol: float = 1e-10, max_iter: Optional[int] = None) -> GridField:
    a = matrix(system)
    b = system.rhs.ravel()
    n = b.size
    max_iter = max_iter if max_iter is not None else 10 * n
    x = np.zeros(n)
    r = b.copy()
    norm_b = np.linalg.norm(b)
    rr = r @ r
    iterations = 0
    if norm_b > 0.0:
        p = r.copy()
        while np.sqrt(rr) > tol * norm_b:
            if iterations >= max_iter:
                raise SolverDiverged(iterations, np.sqrt(rr) / norm_b)
            ap = a @ p
            alpha = rr / (p @ ap)
            x += alpha * p
            r -= alpha * ap
            rr_next = r @ r
            p = r + (rr_next / rr) * p
            rr = rr_next
            iterations += 1
    log.debug('conjugate gradient converged in %d iterations', iterations)
    out = system.boundary.copy()
    out[1:-1, 1:-1] = x.reshape(system.diag.shape)
    return GridField(out)

def solve(gamma: GridField, f: Function, g: Optional[Function] = None, tol: float = 1e-10) -> GridField:
    return solve_cg(assemble(gamma, f, g), tol)

def current_magnitude(gamma: GridField, u: GridField) -> GridField:
    """gamma |grad u| with second-order differences, one-sided on the boundary."""
    if gamma.shape != u.shape:
        raise ValueError('grids differ: %s vs %s' % (gamma, u))
    uy, ux = np.gradient(u.values, u.hy, u.hx, edge_order=2)
    return GridField(gamma.values * np.sqrt(ux * ux + uy * uy))
