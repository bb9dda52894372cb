"""
Networks on the tape. ``bind`` registers each weight matrix and bias
vector as a trainable array leaf; ``forward`` and ``forward_jet`` then
record the network value, and optionally its spatial gradient and
Hessian, for an input point or a lane of points.

A layer is a handful of array nodes over the whole batch. The jet is
pushed through each layer as (value, gradient, Hessian), one (m, width)
node per entry:

    affine:  z = h A^T + b,  dz = dh A^T,  d2z = d2h A^T
    tanh:    v = tanh(z),  dv = (1 - v^2) dz,
             d2v = -2 v (1 - v^2) dz dz + (1 - v^2) d2z

The first layer's gradient is a row of A^T shared by every sample and its
Hessian is structurally zero (carried as None, never recorded).
"""
from typing import List, Optional

import numpy as np

from .. autodiff import tape as ad
from .. autodiff.tape import Tape
from . params import MlpParams

PAIRS = ((0, 0), (0, 1), (1, 1))

class SpatialJet:
    """Value, gradient and Hessian nodes; ``hess[0][1] is hess[1][0]``."""
    __slots__ = ['val', 'grad', 'hess']

    def __init__(self, val: int, grad: List[int], hess: List[List[int]]):
        self.val = val
        self.grad = grad
        self.hess = hess

    def __repr__(self) -> str:
        return 'SpatialJet[val=%d grad=%s hess=%s]' % (self.val, self.grad, self.hess)

class BoundNet:
    """Parameters registered on one tape; ``refs`` is in ``flatten`` order."""
    __slots__ = ['params', 'tape', 'weights', 'biases', 'transposed', 'refs']

    def __init__(self, params: MlpParams, tape: Tape):
        self.params = params
        self.tape = tape
        self.weights = []
        self.biases = []
        self.refs = []
        for w, b in zip(params.weights, params.biases):
            self.weights.append(ad.parameter(tape, w))
            self.biases.append(ad.parameter(tape, b))
            self.refs.extend((self.weights[-1], self.biases[-1]))
        self.transposed = [ad.transpose(tape, w) for w in self.weights]

    def value(self, x, y) -> int:
        return forward(self, self.tape, (x, y))

    def jet(self, x, y) -> SpatialJet:
        return forward_jet(self, self.tape, (x, y))

def bind(params: MlpParams, tape: Tape) -> BoundNet:
    return BoundNet(params, tape)

def _bound(net, tape: Tape) -> BoundNet:
    if isinstance(net, MlpParams):
        return bind(net, tape)
    if net.tape is not tape:
        raise ValueError('network is bound to another tape')
    return net

def _points(x):
    """(m, 2) input array, and whether a single point was given."""
    xs, ys = np.asarray(x[0], dtype=float), np.asarray(x[1], dtype=float)
    single = xs.ndim == 0 and ys.ndim == 0
    xs, ys = np.broadcast_arrays(np.atleast_1d(xs), np.atleast_1d(ys))
    return np.column_stack([xs, ys]), single

def _affine(tape: Tape, h: int, wt: int, b: Optional[int] = None) -> int:
    z = ad.matmul(tape, h, wt)
    return z if b is None else ad.add(tape, z, b)

def _output(tape: Tape, ref: int, points: np.ndarray, single: bool) -> int:
    """Column 0 of the last layer, as a scalar or a lane over ``points``."""
    ref = ad.take(tape, ref, (Ellipsis, 0))
    if single and np.ndim(tape.value(ref)):
        ref = ad.take(tape, ref, 0)
    elif not single and not np.ndim(tape.value(ref)):
        ref = ad.record_shift(tape, ref, np.zeros(len(points)))
    return ref

def forward(net, tape: Tape, x) -> int:
    """Output node of the network at ``x = (x, y)``; coordinates may be lanes."""
    net = _bound(net, tape)
    points, single = _points(x)
    h = ad.constant(tape, points)
    last = len(net.weights) - 1
    for layer, (wt, b) in enumerate(zip(net.transposed, net.biases)):
        z = _affine(tape, h, wt, b)
        h = z if layer == last else ad.tanh(tape, z)
    out = _output(tape, h, points, single)
    if net.params.shift:
        out = ad.record_shift(tape, out, net.params.shift)
    return out

def forward_jet(net, tape: Tape, x) -> SpatialJet:
    net = _bound(net, tape)
    points, single = _points(x)
    h = ad.constant(tape, points)
    first = net.transposed[0]
    val = _affine(tape, h, first, net.biases[0])
    grad = [ad.take(tape, first, q) for q in (0, 1)]
    hess = {pq: None for pq in PAIRS}
    for wt, b in zip(net.transposed[1:], net.biases[1:]):
        v, dv, d2v = _activate(tape, val, grad, hess)
        val = _affine(tape, v, wt, b)
        grad = [_affine(tape, dq, wt) for dq in dv]
        hess = {pq: _affine(tape, d2v[pq], wt) for pq in PAIRS}
    out_val = _output(tape, val, points, single)
    if net.params.shift:
        out_val = ad.record_shift(tape, out_val, net.params.shift)
    g = [_output(tape, dq, points, single) for dq in grad]
    if hess[(0, 1)] is None:
        zero = ad.constant(tape, 0.0)
        h = [[zero, zero], [zero, zero]]
    else:
        h00, h01, h11 = (_output(tape, hess[pq], points, single) for pq in PAIRS)
        h = [[h00, h01], [h01, h11]]
    return SpatialJet(out_val, g, h)

def _activate(tape: Tape, z: int, dz: List[int], d2z: dict):
    v = ad.tanh(tape, z)
    s = ad.record_shift(tape, ad.neg(tape, ad.square(tape, v)), 1.0)
    s2 = ad.record_scale(tape, ad.mul(tape, v, s), -2.0)
    dv = [ad.mul(tape, s, dq) for dq in dz]
    d2v = {}
    for p, q in PAIRS:
        outer = ad.square(tape, dz[p]) if p == q else ad.mul(tape, dz[p], dz[q])
        term = ad.mul(tape, s2, outer)
        if d2z[(p, q)] is not None:
            term = ad.add(tape, term, ad.mul(tape, s, d2z[(p, q)]))
        d2v[(p, q)] = term
    return v, dv, d2v
