from pathlib import Path

import numpy as np

from .. common import read_float_csv, write_csv
from .. errors import DomainError, SchemaError
from .. model.field import GridField, coordinates

HEADER = ['x', 'y', 'value']

def interpolate(field: GridField, point) -> float:
    """Bilinear interpolation at a single point of the closed unit square."""
    return float(interpolate_many(field, np.asarray(point, dtype=float).reshape(1, 2))[0])

def interpolate_many(field: GridField, points: np.ndarray) -> np.ndarray:
    points = np.asarray(points, dtype=float)
    outside = ~np.all((points >= 0.0) & (points <= 1.0), axis=1)
    if np.any(outside):
        raise DomainError(points[np.argmax(outside)])
    fx = points[:, 0] * (field.nx - 1)
    fy = points[:, 1] * (field.ny - 1)
    i = np.minimum(np.floor(fx).astype(int), field.nx - 2)
    j = np.minimum(np.floor(fy).astype(int), field.ny - 2)
    tx = fx - i
    ty = fy - j
    v = field.values
    return ((1 - tx) * (1 - ty) * v[j, i] + tx * (1 - ty) * v[j, i + 1]
            + (1 - tx) * ty * v[j + 1, i] + tx * ty * v[j + 1, i + 1])

def resample(field: GridField, nx: int, ny: int = None) -> GridField:
    if (field.nx, field.ny) == (nx, ny or nx):
        return field
    x, y = coordinates(nx, ny or nx)
    points = np.column_stack([x.ravel(), y.ravel()])
    return GridField(interpolate_many(field, points).reshape(x.shape))

def write_grid(path, field: GridField):
    x, y = field.coordinates()
    write_csv(path, HEADER, zip(x.ravel(), y.ravel(), field.values.ravel()))

def read_grid(path) -> GridField:
    path = Path(path)
    data = read_float_csv(path, HEADER)
    if data.shape[0] < 9:
        raise SchemaError(path, 1, 'grid needs at least 3x3 nodes')
    # x varies fastest: count rows sharing the first y
    nx = int(np.argmax(data[:, 1] != data[0, 1])) or data.shape[0]
    ny = data.shape[0] // nx
    if nx * ny != data.shape[0] or nx < 3 or ny < 3:
        raise SchemaError(path, 1, 'rows do not form a rectangular grid')
    return GridField(data[:, 2].reshape(ny, nx))
