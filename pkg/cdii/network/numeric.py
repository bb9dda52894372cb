"""Tape-free evaluation of a network on many points, for reporting."""
import numpy as np

from . params import MlpParams

def evaluate(params: MlpParams, points: np.ndarray) -> np.ndarray:
    h = np.asarray(points, dtype=float)
    last = len(params.weights) - 1
    for layer, (w, b) in enumerate(zip(params.weights, params.biases)):
        h = h @ w.T + b
        if layer != last:
            h = np.tanh(h)
    return h[:, 0] + params.shift

def jet_values(params: MlpParams, points: np.ndarray):
    """Value (m,), gradient (m, 2) and Hessian (m, 2, 2) at each point."""
    points = np.asarray(points, dtype=float)
    m = points.shape[0]
    w0, b0 = params.weights[0], params.biases[0]
    val = points @ w0.T + b0
    grad = np.broadcast_to(w0, (m,) + w0.shape).copy()
    hess = np.zeros((m, w0.shape[0], 2, 2))
    for w, b in zip(params.weights[1:], params.biases[1:]):
        v = np.tanh(val)
        s = 1.0 - v * v
        s2 = -2.0 * v * s
        hess = s2[:, :, None, None] * grad[:, :, :, None] * grad[:, :, None, :] + s[:, :, None, None] * hess
        grad = s[:, :, None] * grad
        val = v @ w.T + b
        grad = np.einsum('ki,miq->mkq', w, grad)
        hess = np.einsum('ki,mipq->mkpq', w, hess)
    return val[:, 0] + params.shift, grad[:, 0, :], hess[:, 0, :, :]
