"""Finite-difference oracles and jet providers shared by the tests."""
import numpy as np

from cdii.autodiff import tape as ad
from cdii.model.field import GridField
from cdii.network.mlp import SpatialJet
from cdii.solver.grid import interpolate_many

def central_difference(func, theta: np.ndarray, step: float = 1e-5) -> np.ndarray:
    """Gradient of a scalar function of a parameter vector."""
    out = np.empty_like(theta)
    for k in range(theta.size):
        up = theta.copy()
        down = theta.copy()
        up[k] += step
        down[k] -= step
        out[k] = (func(up) - func(down)) / (2 * step)
    return out

def assert_gradients_match(analytic, numeric, rtol, atol):
    analytic = np.asarray(analytic)
    numeric = np.asarray(numeric)
    big = np.abs(numeric) > 1e-6
    assert np.all(np.abs(analytic[big] - numeric[big]) <= rtol * np.abs(numeric[big])), \
        'max relative gap %g' % np.max(np.abs(analytic[big] - numeric[big]) / np.abs(numeric[big]))
    assert np.all(np.abs(analytic[~big] - numeric[~big]) <= atol)

class FieldNet:
    """
    Stand-in for a bound network: value, gradient and Hessian come from
    plain numpy callables and are recorded as constants.
    """

    def __init__(self, tape, value, grad=None, hess=None):
        self.tape = tape
        self._value = value
        self._grad = grad or (lambda x, y: (0.0 * x, 0.0 * x))
        self._hess = hess or (lambda x, y: ((0.0 * x, 0.0 * x), (0.0 * x, 0.0 * x)))

    def value(self, x, y) -> int:
        return ad.constant(self.tape, self._value(x, y) + 0.0 * x)

    def jet(self, x, y) -> SpatialJet:
        gx, gy = self._grad(x, y)
        (hxx, hxy), (_, hyy) = self._hess(x, y)
        const = lambda v: ad.constant(self.tape, v + 0.0 * x)  # noqa: E731
        h01 = const(hxy)
        return SpatialJet(self.value(x, y), [const(gx), const(gy)],
                          [[const(hxx), h01], [h01, const(hyy)]])

def constant_net(tape, c: float) -> FieldNet:
    return FieldNet(tape, lambda x, y: c + 0.0 * x)

def linear_y_net(tape) -> FieldNet:
    """u(x, y) = y."""
    return FieldNet(tape, lambda x, y: y, lambda x, y: (0.0 * x, 1.0 + 0.0 * x))

def grid_net(tape, field: GridField) -> FieldNet:
    """Jets of a grid field by second-order differences and bilinear interpolation."""
    vy, vx = np.gradient(field.values, field.hy, field.hx, edge_order=2)
    vyy, vyx = np.gradient(vy, field.hy, field.hx, edge_order=2)
    _, vxx = np.gradient(vx, field.hy, field.hx, edge_order=2)
    parts = {name: GridField(v) for name, v in
             (('v', field.values), ('x', vx), ('y', vy), ('xx', vxx), ('xy', vyx), ('yy', vyy))}

    def at(name):
        return lambda x, y: interpolate_many(parts[name], np.column_stack([x, y]))

    return FieldNet(tape, at('v'), lambda x, y: (at('x')(x, y), at('y')(x, y)),
                    lambda x, y: ((at('xx')(x, y), at('xy')(x, y)), (at('xy')(x, y), at('yy')(x, y))))
