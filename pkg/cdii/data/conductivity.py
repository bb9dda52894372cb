"""Ground-truth conductivities of the three benchmark problems."""
import numpy as np

from .. model.base import ExampleKind
from .. model.data import ExampleId
from .. model.field import GridField
from .. solver.grid import interpolate_many

def four_mode(x, y):
    sx = 2.0 * x - 1.0
    sy = 2.0 * y - 1.0
    a = 0.3 * (1.0 - 3.0 * sx) ** 2 * np.exp(-9.0 * sx ** 2 - (6.0 * y - 2.0) ** 2)
    b = (3.0 * sx / 5.0 - 27.0 * sx ** 3 - (3.0 * sy) ** 5) * np.exp(-(9.0 * sx ** 2 + 9.0 * sy ** 2))
    c = np.exp(-(3.0 * sx + 1.0) ** 2 - 9.0 * sy ** 2)
    return 1.0 + 0.3 * (a - b - c)

def discontinuous(x, y):
    rho2 = (x - 0.5) ** 2 + (y - 0.5) ** 2
    return 1.0 + np.where(x > 0.5, np.exp(-2.0 * rho2), 0.0)

def disjoint_modes(x, y):
    dx, dy = x - 0.3, y - 0.7
    inside_1 = 100.0 * dx ** 2 + 36.0 * dy ** 2 - 72.0 * dx * dy < 1.0
    inside_2 = 36.0 * (x - 0.6) ** 2 + 36.0 * (y - 0.4) ** 2 < 1.0
    return 1.0 + inside_1.astype(float) - inside_2.astype(float)

FORMULAS = {
    ExampleKind.FOUR_MODE: four_mode,
    ExampleKind.DISCONTINUOUS: discontinuous,
    ExampleKind.DISJOINT_MODES: disjoint_modes,
}

def conductivity(example: ExampleId, x, y):
    """Vectorized gamma(x, y); scalars in, scalar out."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if example.kind is not ExampleKind.CUSTOM:
        return FORMULAS[example.kind](x, y)
    custom = example.custom
    if isinstance(custom, GridField):
        points = np.column_stack([np.ravel(x), np.ravel(y)])
        return interpolate_many(custom, points).reshape(np.shape(x))
    if callable(custom):
        return np.broadcast_to(custom(x, y), np.broadcast(x, y).shape).astype(float)
    return np.full(np.broadcast(x, y).shape, float(custom))

def eval_conductivity(example: ExampleId, point) -> float:
    return float(conductivity(example, point[0], point[1]))

def conductivity_grid(example: ExampleId, resolution: int) -> GridField:
    return GridField.from_function(lambda x, y: conductivity(example, x, y), resolution)
