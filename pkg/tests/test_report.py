import json
import time

import numpy as np
import pytest

from cdii.autodiff import tape as ad
from cdii.autodiff.tape import Tape
from cdii.errors import CdiiError
from cdii.loss import grad_magnitude
from cdii.model.data import GroundTruth
from cdii.model.field import GridField
from cdii.network.mlp import bind
from cdii.network.numeric import evaluate
from cdii.network.params import MlpParams, init_xavier
from cdii.report import evaluate_model, evaluate_on_grid, recovered_data_field, relative_l2_error, write_report

def _zero_net(widths=(2, 3, 1), shift=0.0):
    return MlpParams(widths, [np.zeros((o, i)) for i, o in zip(widths[:-1], widths[1:])],
                     [np.zeros(o) for o in widths[1:]], shift=shift)

def test_zero_network_grid():
    grid = evaluate_on_grid(_zero_net(), 9)
    np.testing.assert_array_equal(grid.values, 0.0)

def test_grid_matches_pointwise_evaluation():
    net = init_xavier((2, 5, 5, 1), 3, shift=0.5)
    grid = evaluate_on_grid(net, 5)
    # node (i, j) = (3, 1) lies at (0.75, 0.25)
    assert grid.values[1, 3] == pytest.approx(evaluate(net, np.array([[0.75, 0.25]]))[0], rel=1e-15)

def test_relative_error():
    truth = GridField.from_function(lambda x, y: 1 + x * y, 17)
    assert relative_l2_error(truth, truth) == 0.0
    assert relative_l2_error(GridField(2 * truth.values), truth) == pytest.approx(1.0)
    with pytest.raises(CdiiError):
        relative_l2_error(truth, GridField(np.zeros((17, 17))))
    with pytest.raises(ValueError):
        relative_l2_error(truth, GridField(np.ones((9, 9))))

def test_trapezoidal_weights():
    # a field that is nonzero on one corner node only carries weight 1/4 h^2
    truth = GridField(np.ones((5, 5)))
    pred = truth.values.copy()
    pred[0, 0] += 1.0
    assert relative_l2_error(GridField(pred), truth) == pytest.approx(np.sqrt(0.25 / 16))

def test_recovered_data_of_affine_voltage():
    gamma = _zero_net(shift=2.0)
    u = MlpParams((2, 1), [np.array([[0.0, 1.0]])], [np.zeros(1)])
    np.testing.assert_allclose(recovered_data_field(gamma, u, 9).values, 2.0)

def test_evaluate_and_write(tmp_path):
    gamma = _zero_net(shift=1.0)
    u = MlpParams((2, 1), [np.array([[0.0, 1.0]])], [np.zeros(1)])
    truth = GroundTruth(GridField(np.ones((33, 33))), GridField.from_function(lambda x, y: y, 33),
                        GridField(np.ones((33, 33))))
    report = evaluate_model(gamma, u, truth, resolution=17, config={'seed': 3})
    assert report.err_gamma == pytest.approx(0.0, abs=1e-15)
    assert report.err_u == pytest.approx(0.0, abs=1e-15)
    assert report.err_a == pytest.approx(0.0, abs=1e-15)
    write_report(report, tmp_path)
    metrics = json.loads((tmp_path / 'metrics.json').read_text())
    assert metrics['seed'] == 3
    assert set(metrics) == {'seed', 'err_gamma', 'err_u', 'err_a'}
    for name in ('gamma_hat', 'u_hat', 'a_hat', 'gamma_abs_err', 'u_abs_err'):
        assert (tmp_path / ('%s.csv' % name)).read_text().startswith('x,y,value\n')

@pytest.mark.parametrize('c', [0.0, 0.5, 3.0, -1.0])
def test_scaled_truth_error(c):
    truth = GridField.from_function(lambda x, y: 1 + np.sin(3 * x) * y, 17)
    assert relative_l2_error(GridField(c * truth.values), truth) == pytest.approx(abs(c - 1), rel=1e-12, abs=1e-15)

def test_error_triangle_inequality():
    gen = np.random.default_rng(4)
    truth = GridField.from_function(lambda x, y: 2 + x - y, 9)
    first = truth.values + gen.normal(scale=0.1, size=truth.shape)
    second = truth.values + gen.normal(scale=0.1, size=truth.shape)
    gap = relative_l2_error(GridField(truth.values + first - second), truth)
    assert relative_l2_error(GridField(first), truth) <= relative_l2_error(GridField(second), truth) + gap + 1e-15

def test_recovered_data_matches_misfit_prediction():
    gamma = init_xavier((2, 6, 6, 1), 1, shift=1.0)
    u = init_xavier((2, 6, 6, 1), 2)
    field = recovered_data_field(gamma, u, 9)
    x, y = field.coordinates()
    t = Tape()
    u_jet = bind(u, t).jet(x.ravel(), y.ravel())
    predicted = ad.mul(t, bind(gamma, t).value(x.ravel(), y.ravel()), grad_magnitude(t, u_jet, eps_mag=0.0))
    np.testing.assert_allclose(field.values.ravel(), t.value(predicted), rtol=1e-12)

def test_fine_grid_evaluation_is_fast():
    net = init_xavier((2, 32, 32, 32, 1), 0)
    start = time.perf_counter()
    grid = evaluate_on_grid(net, 257)
    assert time.perf_counter() - start < 5.0
    assert grid.shape == (257, 257)
