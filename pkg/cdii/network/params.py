import logging
import math
from typing import List, Optional, Sequence

import numpy as np

from .. common import rng

log = logging.getLogger(__name__)

class MlpParams:
    """
    Weights and biases of a tanh perceptron. ``weights[l]`` has shape
    (widths[l+1], widths[l]); every layer but the last is followed by tanh.
    ``shift`` is added to the output (the conductivity network uses it to
    start near a positive constant).
    """
    __slots__ = ['widths', 'weights', 'biases', 'seed', 'shift']

    def __init__(self, widths: Sequence[int], weights: List[np.ndarray], biases: List[np.ndarray],
                 seed: Optional[int] = None, shift: float = 0.0):
        self.widths = check_widths(widths)
        if len(weights) != len(self.widths) - 1 or len(biases) != len(weights):
            raise ValueError('expected %d layers, got %d weights and %d biases'
                             % (len(self.widths) - 1, len(weights), len(biases)))
        for layer, (w, b) in enumerate(zip(weights, biases)):
            shape = (self.widths[layer + 1], self.widths[layer])
            if w.shape != shape or b.shape != shape[:1]:
                raise ValueError('layer %d: weights %s and biases %s do not match widths %s'
                                 % (layer, w.shape, b.shape, shape))
        self.weights = [np.asarray(w, dtype=float) for w in weights]
        self.biases = [np.asarray(b, dtype=float) for b in biases]
        self.seed = seed
        self.shift = float(shift)

    @property
    def depth(self) -> int:
        """Number of hidden (tanh) layers."""
        return len(self.widths) - 2

    @property
    def size(self) -> int:
        return sum(w.size + b.size for w, b in zip(self.weights, self.biases))

    def copy(self) -> 'MlpParams':
        return MlpParams(self.widths, [w.copy() for w in self.weights],
                         [b.copy() for b in self.biases], self.seed, self.shift)

    def __eq__(self, other):
        return (isinstance(other, MlpParams) and self.widths == other.widths
                and self.shift == other.shift
                and all(np.array_equal(a, b) for a, b in zip(self.weights, other.weights))
                and all(np.array_equal(a, b) for a, b in zip(self.biases, other.biases)))

    def __repr__(self) -> str:
        return 'MlpParams[%s, %d parameters]' % ('-'.join(map(str, self.widths)), self.size)

def check_widths(widths: Sequence[int]) -> tuple:
    widths = tuple(int(w) for w in widths)
    if len(widths) < 2:
        raise ValueError('need at least an input and an output width')
    if widths[0] != 2 or widths[-1] != 1:
        raise ValueError('widths must start at 2 and end at 1, got %s' % (widths,))
    if any(w <= 0 for w in widths):
        raise ValueError('widths must be positive, got %s' % (widths,))
    return widths

def default_widths(width: int = 32, depth: int = 3) -> tuple:
    return (2,) + (width,) * depth + (1,)

def init_xavier(widths: Sequence[int], seed: int, shift: float = 0.0) -> MlpParams:
    """Uniform Glorot weights, zero biases, drawn layer by layer from PCG64."""
    widths = check_widths(widths)
    gen = rng(seed)
    weights, biases = [], []
    for n_in, n_out in zip(widths[:-1], widths[1:]):
        bound = math.sqrt(6.0 / (n_in + n_out))
        weights.append(gen.uniform(-bound, bound, size=(n_out, n_in)))
        biases.append(np.zeros(n_out))
    log.debug('xavier init %s with seed %d', widths, seed)
    return MlpParams(widths, weights, biases, seed, shift)

def flatten(params: MlpParams) -> np.ndarray:
    """Layer-major; within a layer the row-major weights, then the biases."""
    parts = []
    for w, b in zip(params.weights, params.biases):
        parts.append(w.ravel())
        parts.append(b)
    return np.concatenate(parts)

def unflatten(params: MlpParams, vector: np.ndarray) -> MlpParams:
    if vector.shape != (params.size,):
        raise ValueError('expected %d values, got %s' % (params.size, vector.shape))
    weights, biases = [], []
    pos = 0
    for w, b in zip(params.weights, params.biases):
        weights.append(vector[pos:pos + w.size].reshape(w.shape).copy())
        pos += w.size
        biases.append(vector[pos:pos + b.size].copy())
        pos += b.size
    return MlpParams(params.widths, weights, biases, params.seed, params.shift)
