from typing import Optional

import numpy as np

class GridField:
    """
    Scalar field on a uniform grid of the unit square. ``values[j, i]``
    holds node (i, j) at (x, y) = (i/(nx-1), j/(ny-1)), so the flat
    row-major order has x varying fastest.
    """
    __slots__ = ['nx', 'ny', 'values']

    def __init__(self, values: np.ndarray):
        values = np.asarray(values, dtype=float)
        if values.ndim != 2 or values.shape[0] < 3 or values.shape[1] < 3:
            raise ValueError('grid needs at least 3x3 nodes, got shape %s' % (values.shape,))
        if not np.all(np.isfinite(values)):
            raise ValueError('grid values must be finite')
        self.ny, self.nx = values.shape
        self.values = values

    @classmethod
    def from_function(cls, func, nx: int, ny: Optional[int] = None) -> 'GridField':
        x, y = coordinates(nx, ny or nx)
        return cls(np.broadcast_to(func(x, y), x.shape).astype(float))

    @property
    def shape(self):
        return self.values.shape

    @property
    def hx(self) -> float:
        return 1.0 / (self.nx - 1)

    @property
    def hy(self) -> float:
        return 1.0 / (self.ny - 1)

    def coordinates(self):
        return coordinates(self.nx, self.ny)

    def __eq__(self, other):
        return isinstance(other, GridField) and np.array_equal(self.values, other.values)

    def __repr__(self) -> str:
        return 'GridField[%dx%d]' % (self.nx, self.ny)

def coordinates(nx: int, ny: int):
    """Meshgrid of node coordinates, each of shape (ny, nx)."""
    return np.meshgrid(np.linspace(0.0, 1.0, nx), np.linspace(0.0, 1.0, ny))

class LinearSystem:
    """
    5-point stencil system for the interior unknowns. Each coefficient
    array has shape (ny-2, nx-2); ``west[j, i]`` couples interior node
    (i+1, j+1) to its left neighbour, and so on. ``boundary`` holds the
    Dirichlet values on the full grid.
    """
    __slots__ = ['diag', 'west', 'east', 'south', 'north', 'rhs', 'boundary']

    def __init__(self, diag, west, east, south, north, rhs, boundary: np.ndarray):
        self.diag = diag
        self.west = west
        self.east = east
        self.south = south
        self.north = north
        self.rhs = rhs
        self.boundary = boundary

    @property
    def shape(self):
        return self.boundary.shape

    def __repr__(self) -> str:
        ny, nx = self.shape
        return 'LinearSystem[%dx%d, %d unknowns]' % (nx, ny, self.diag.size)
