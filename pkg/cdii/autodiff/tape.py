"""
Reverse-mode automatic differentiation on an explicit tape.

Nodes are referenced by their index on the tape. A node value is a float
or a numpy array: a lane holds the same scalar expression at every sample
of a batch, and a network layer is recorded as whole weight matrices.
Elementwise ops follow numpy broadcasting; an adjoint contribution is
broadcast up to, or summed down to, the shape of the parent it reaches.
Linear array ops (``matmul``, ``transpose``, ``take``) store their
vector-Jacobian product instead of a partial.
"""
import logging
from typing import Callable, Dict, List, Sequence, Tuple, Union

import numpy as np

from .. errors import TapeError
from .. model.base import BinaryOp, UnaryOp

log = logging.getLogger(__name__)

Value = Union[float, np.ndarray]
Partial = Union[Value, Callable[[Value], Value]]

class TapeNode:
    __slots__ = ['value', 'parents', 'partials']

    def __init__(self, value: Value, parents: Tuple[int, ...] = (), partials: Tuple[Partial, ...] = ()):
        self.value = value
        self.parents = parents
        self.partials = partials

    def __setattr__(self, name, value):
        if hasattr(self, 'partials'):
            raise AttributeError('tape nodes are immutable')
        object.__setattr__(self, name, value)

    def __repr__(self) -> str:
        return 'TapeNode[%r <- %s]' % (np.shape(self.value), self.parents)

class Tape:
    __slots__ = ['nodes', 'params']

    def __init__(self):
        self.nodes: List[TapeNode] = []
        self.params: List[int] = []

    @property
    def num_params(self) -> int:
        return len(self.params)

    def value(self, ref: int) -> Value:
        return self.nodes[ref].value

    def __len__(self) -> int:
        return len(self.nodes)

    def _append(self, value, parents=(), partials=()) -> int:
        ref = len(self.nodes)
        if not _finite(value):
            raise TapeError('non-finite value', ref)
        for partial in partials:
            if not callable(partial) and not _finite(partial):
                raise TapeError('non-finite partial', ref)
        self.nodes.append(TapeNode(value, tuple(parents), tuple(partials)))
        return ref

def _finite(value) -> bool:
    return bool(np.all(np.isfinite(value)))

def _as_value(value) -> Value:
    if np.ndim(value) == 0:
        return float(value)
    return np.asarray(value, dtype=float)

def _fit(contrib, shape: tuple) -> Value:
    """Broadcast ``contrib`` up to ``shape`` or sum it down to it."""
    contrib = np.asarray(contrib)
    if contrib.shape != shape:
        target = np.broadcast_shapes(contrib.shape, shape)
        if target != contrib.shape:
            contrib = np.broadcast_to(contrib, target)
        lead = contrib.ndim - len(shape)
        if lead:
            contrib = contrib.sum(axis=tuple(range(lead)))
        squeeze = tuple(i for i, n in enumerate(shape) if n == 1 and contrib.shape[i] != 1)
        if squeeze:
            contrib = contrib.sum(axis=squeeze, keepdims=True)
    return float(contrib) if not shape else contrib

def variable(tape: Tape, value: float) -> int:
    """Append a trainable scalar leaf."""
    if np.ndim(value) != 0:
        raise ValueError('variable takes a scalar, use parameter for arrays')
    ref = tape._append(float(value))
    tape.params.append(ref)
    return ref

def parameter(tape: Tape, value: np.ndarray) -> int:
    """Append a trainable array leaf (a weight matrix or a bias vector)."""
    value = np.array(value, dtype=float)
    ref = tape._append(value)
    tape.params.append(ref)
    return ref

def constant(tape: Tape, value: Value) -> int:
    """Append a non-trainable leaf, a scalar or an array of data."""
    return tape._append(_as_value(value))

def record_binary(tape: Tape, op: BinaryOp, a: int, b: int) -> int:
    va = tape.nodes[a].value
    vb = tape.nodes[b].value
    if op is BinaryOp.ADD:
        return tape._append(va + vb, (a, b), (1.0, 1.0))
    if op is BinaryOp.SUB:
        return tape._append(va - vb, (a, b), (1.0, -1.0))
    if op is BinaryOp.MUL:
        return tape._append(va * vb, (a, b), (vb, va))
    if op is BinaryOp.DIV:
        if np.any(vb == 0.0):
            raise TapeError('division by zero', b)
        return tape._append(va / vb, (a, b), (1.0 / vb, -va / (vb * vb)))
    raise ValueError('unknown binary op %r' % (op,))

def record_unary(tape: Tape, op: UnaryOp, a: int) -> int:
    va = tape.nodes[a].value
    if op is UnaryOp.TANH:
        t = np.tanh(va)
        return tape._append(_as_value(t), (a,), (_as_value(1.0 - t * t),))
    if op is UnaryOp.SQUARE:
        return tape._append(va * va, (a,), (2.0 * va,))
    if op is UnaryOp.SQRT:
        if np.any(va <= 0.0):
            raise TapeError('square root of a nonpositive value', a)
        root = np.sqrt(va)
        return tape._append(_as_value(root), (a,), (_as_value(0.5 / root),))
    if op is UnaryOp.NEG:
        return tape._append(-va, (a,), (-1.0,))
    raise ValueError('unknown unary op %r' % (op,))

def record_scale(tape: Tape, a: int, factor: Value) -> int:
    """Multiply by a constant (scalar or array) that is not on the tape."""
    factor = _as_value(factor)
    return tape._append(tape.nodes[a].value * factor, (a,), (factor,))

def record_shift(tape: Tape, a: int, offset: Value) -> int:
    return tape._append(tape.nodes[a].value + _as_value(offset), (a,), (1.0,))

def record_sum(tape: Tape, a: int) -> int:
    """Sum every entry of an array node into a scalar node."""
    va = tape.nodes[a].value
    return tape._append(float(np.sum(va)), (a,), (np.ones_like(va),))

def matmul(tape: Tape, a: int, b: int) -> int:
    """``a @ b`` for a matrix or vector ``a`` and a matrix ``b``."""
    va = tape.nodes[a].value
    vb = tape.nodes[b].value
    if np.ndim(vb) != 2 or np.ndim(va) not in (1, 2):
        raise ValueError('matmul takes a vector or matrix times a matrix, got %s @ %s'
                         % (np.shape(va), np.shape(vb)))

    def grad_b(g):
        return np.outer(va, g) if va.ndim == 1 else va.T @ g

    return tape._append(va @ vb, (a, b), (lambda g: g @ vb.T, grad_b))

def transpose(tape: Tape, a: int) -> int:
    return tape._append(np.ascontiguousarray(tape.nodes[a].value.T), (a,), (lambda g: g.T,))

def take(tape: Tape, a: int, index) -> int:
    """``a[index]`` for a basic (non-fancy) index."""
    va = tape.nodes[a].value

    def scatter(g):
        out = np.zeros_like(va)
        out[index] = g
        return out

    return tape._append(_as_value(va[index]), (a,), (scatter,))

def add(tape, a, b):
    return record_binary(tape, BinaryOp.ADD, a, b)

def sub(tape, a, b):
    return record_binary(tape, BinaryOp.SUB, a, b)

def mul(tape, a, b):
    return record_binary(tape, BinaryOp.MUL, a, b)

def div(tape, a, b):
    return record_binary(tape, BinaryOp.DIV, a, b)

def square(tape, a):
    return record_unary(tape, UnaryOp.SQUARE, a)

def sqrt(tape, a):
    return record_unary(tape, UnaryOp.SQRT, a)

def tanh(tape, a):
    return record_unary(tape, UnaryOp.TANH, a)

def neg(tape, a):
    return record_unary(tape, UnaryOp.NEG, a)

def total(tape: Tape, refs: Sequence[int]) -> int:
    """Left-to-right sum of several nodes."""
    acc = refs[0]
    for ref in refs[1:]:
        acc = add(tape, acc, ref)
    return acc

def backward(tape: Tape, root: int) -> Dict[int, Value]:
    """
    Single reverse sweep from ``root``. Returns d(root)/d(leaf) for every
    trainable leaf, shaped like the leaf; leaves the root does not depend
    on get zeros.
    """
    nodes = tape.nodes
    if not 0 <= root < len(nodes):
        raise IndexError('root %d is not on the tape' % root)
    adjoint: List = [None] * (root + 1)
    adjoint[root] = _fit(1.0, np.shape(nodes[root].value))
    for index in range(root, -1, -1):
        g = adjoint[index]
        if g is None:
            continue
        node = nodes[index]
        for parent, partial in zip(node.parents, node.partials):
            contrib = partial(g) if callable(partial) else g * partial
            contrib = _fit(contrib, np.shape(nodes[parent].value))
            prev = adjoint[parent]
            adjoint[parent] = contrib if prev is None else prev + contrib
    grads = {}
    for ref in tape.params:
        g = adjoint[ref] if ref <= root else None
        if g is None:
            g = np.zeros(np.shape(nodes[ref].value))
        grads[ref] = g if np.ndim(g) else float(g)
    log.debug('backward over %d nodes, %d parameter leaves', root + 1, len(tape.params))
    return grads

def gradient(tape: Tape, root: int, refs: Sequence[int]) -> np.ndarray:
    """Gradient with respect to ``refs`` as one flat vector, each leaf row-major."""
    grads = backward(tape, root)
    return np.concatenate([np.ravel(grads[r]) for r in refs]) if refs else np.zeros(0)
