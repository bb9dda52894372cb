"""
Sample points and measurement noise. All draws come from PCG64 generators
seeded through ``common.derive_seed``; see docs/formats.rst.
"""
import numpy as np

from .. common import rng
from .. model.base import NoiseKind
from .. model.data import NoiseSpec

def sample_interior(n: int, seed: int) -> np.ndarray:
    """n uniform points of the open square (0, 1)^2."""
    if n < 1:
        raise ValueError('need at least one point')
    gen = rng(seed)
    points = gen.random((n, 2))
    # random() may return exactly 0.0; redraw those coordinates
    zero = points == 0.0
    while np.any(zero):
        points[zero] = gen.random(int(zero.sum()))
        zero = points == 0.0
    return points

def sample_boundary(n: int, seed: int) -> np.ndarray:
    """Uniform on the perimeter: pick an edge, then a position along it."""
    if n < 1:
        raise ValueError('need at least one point')
    gen = rng(seed)
    edge = gen.integers(0, 4, size=n)
    t = gen.random(n)
    points = np.empty((n, 2))
    points[:, 0] = np.select([edge == 0, edge == 1, edge == 2], [t, 1.0, t], 0.0)
    points[:, 1] = np.select([edge == 0, edge == 1, edge == 2], [0.0, t, 1.0], t)
    return points

def noise_draws(spec: NoiseSpec, n: int) -> np.ndarray:
    return rng(spec.seed).standard_normal(n)

def apply_noise(a_true, spec: NoiseSpec, draw):
    if spec.kind is NoiseKind.ADDITIVE:
        return a_true + spec.level * draw
    return a_true * (1.0 + spec.level * draw)
