from typing import Callable, Optional, Union

import numpy as np

from . base import ExampleKind, NoiseKind
from . field import GridField

class NoiseSpec:
    __slots__ = ['kind', 'level', 'seed']

    def __init__(self, kind: NoiseKind = NoiseKind.MULTIPLICATIVE, level: float = 0.0, seed: int = 0):
        if level < 0:
            raise ValueError('noise level must be nonnegative, got %r' % level)
        self.kind = NoiseKind(kind)
        self.level = float(level)
        self.seed = int(seed)

    def to_dict(self) -> dict:
        return {'kind': self.kind.value, 'level': self.level, 'seed': self.seed}

    def __repr__(self) -> str:
        return '%s noise %g (seed %d)' % (self.kind.value, self.level, self.seed)

class ExampleId:
    """
    A benchmark conductivity, or a custom one given as a constant, a
    GridField or a vectorized callable ``gamma(x, y)``.
    """
    __slots__ = ['kind', 'custom']

    def __init__(self, kind: ExampleKind, custom: Union[None, float, GridField, Callable] = None):
        self.kind = ExampleKind(kind)
        if self.kind is ExampleKind.CUSTOM and custom is None:
            raise ValueError('a custom example needs a conductivity')
        self.custom = custom

    @classmethod
    def custom_of(cls, value) -> 'ExampleId':
        return cls(ExampleKind.CUSTOM, value)

    def to_dict(self) -> dict:
        out = {'id': self.kind.value}
        if isinstance(self.custom, (int, float)):
            out['value'] = float(self.custom)
        elif self.custom is not None:
            out['value'] = repr(self.custom)
        return out

    def __repr__(self) -> str:
        if self.kind is ExampleKind.CUSTOM:
            return 'custom(%r)' % (self.custom,)
        return self.kind.value

class Samples:
    """Points (n, 2) with one observed value each."""
    __slots__ = ['points', 'values']

    def __init__(self, points: np.ndarray, values: np.ndarray):
        points = np.asarray(points, dtype=float)
        values = np.asarray(values, dtype=float)
        if points.ndim != 2 or points.shape[1] != 2 or values.shape != points.shape[:1]:
            raise ValueError('expected (n, 2) points and n values, got %s and %s' % (points.shape, values.shape))
        self.points = points
        self.values = values

    def __len__(self) -> int:
        return self.values.shape[0]

    def take(self, index) -> 'Samples':
        return Samples(self.points[index], self.values[index])

    def split(self, parts: int):
        return [Samples(p, v) for p, v in zip(np.array_split(self.points, parts), np.array_split(self.values, parts))]

    @property
    def x(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.points[:, 1]

class GroundTruth:
    __slots__ = ['gamma', 'u', 'a']

    def __init__(self, gamma: GridField, u: GridField, a: GridField):
        self.gamma = gamma
        self.u = u
        self.a = a

class Dataset:
    __slots__ = ['interior', 'boundary', 'noise', 'provenance', 'truth']

    def __init__(self, interior: Samples, boundary: Samples, noise: NoiseSpec,
                 provenance: dict, truth: Optional[GroundTruth] = None):
        if len(interior) != len(boundary):
            raise ValueError('interior and boundary counts differ: %d vs %d' % (len(interior), len(boundary)))
        self.interior = interior
        self.boundary = boundary
        self.noise = noise
        self.provenance = provenance
        self.truth = truth

    @property
    def n(self) -> int:
        return len(self.interior)

    def __repr__(self) -> str:
        return 'Dataset[%s, n=%d, %r]' % (self.provenance.get('example'), self.n, self.noise)
