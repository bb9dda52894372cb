import logging
from pathlib import Path
from typing import Optional

import numpy as np

from . common import write_json
from . errors import CdiiError
from . model.data import GroundTruth
from . model.field import GridField, coordinates
from . network.numeric import evaluate, jet_values
from . network.params import MlpParams
from . solver.grid import resample, write_grid

log = logging.getLogger(__name__)

class EvalReport:
    __slots__ = ['err_gamma', 'err_u', 'err_a', 'grids', 'config']

    def __init__(self, err_gamma: float, err_u: float, err_a: float, grids: dict, config: dict):
        self.err_gamma = err_gamma
        self.err_u = err_u
        self.err_a = err_a
        self.grids = grids
        self.config = config

    def metrics(self) -> dict:
        out = dict(self.config)
        out.update({'err_gamma': self.err_gamma, 'err_u': self.err_u, 'err_a': self.err_a})
        return out

    def __repr__(self) -> str:
        return 'err(gamma)=%.3e err(u)=%.3e err(a)=%.3e' % (self.err_gamma, self.err_u, self.err_a)

def _nodes(resolution: int) -> np.ndarray:
    if resolution < 3:
        raise ValueError('resolution must be at least 3')
    x, y = coordinates(resolution, resolution)
    return np.column_stack([x.ravel(), y.ravel()])

def evaluate_on_grid(net: MlpParams, resolution: int) -> GridField:
    return GridField(evaluate(net, _nodes(resolution)).reshape(resolution, resolution))

def recovered_data_field(gamma: MlpParams, u: MlpParams, resolution: int, eps_mag: float = 0.0) -> GridField:
    points = _nodes(resolution)
    g = evaluate(gamma, points)
    _, grad, _ = jet_values(u, points)
    magnitude = np.sqrt(grad[:, 0] ** 2 + grad[:, 1] ** 2 + eps_mag)
    return GridField((g * magnitude).reshape(resolution, resolution))

def _trapezoid_norm(values: np.ndarray) -> float:
    ny, nx = values.shape
    wx = np.full(nx, 1.0 / (nx - 1))
    wx[[0, -1]] *= 0.5
    wy = np.full(ny, 1.0 / (ny - 1))
    wy[[0, -1]] *= 0.5
    return float(np.sqrt(wy @ (values * values) @ wx))

def relative_l2_error(pred: GridField, truth: GridField) -> float:
    if pred.shape != truth.shape:
        raise ValueError('grids differ: %s vs %s' % (pred, truth))
    norm = _trapezoid_norm(truth.values)
    if norm == 0.0:
        raise CdiiError('reference field has zero norm')
    return _trapezoid_norm(pred.values - truth.values) / norm

def evaluate_model(gamma: MlpParams, u: MlpParams, truth: GroundTruth, resolution: int = 257,
                   config: Optional[dict] = None) -> EvalReport:
    gamma_true = resample(truth.gamma, resolution)
    u_true = resample(truth.u, resolution)
    a_true = resample(truth.a, resolution)
    gamma_hat = evaluate_on_grid(gamma, resolution)
    u_hat = evaluate_on_grid(u, resolution)
    a_hat = recovered_data_field(gamma, u, resolution)
    grids = {
        'gamma_hat': gamma_hat,
        'u_hat': u_hat,
        'a_hat': a_hat,
        'gamma_abs_err': GridField(np.abs(gamma_hat.values - gamma_true.values)),
        'u_abs_err': GridField(np.abs(u_hat.values - u_true.values)),
    }
    report = EvalReport(relative_l2_error(gamma_hat, gamma_true), relative_l2_error(u_hat, u_true),
                        relative_l2_error(a_hat, a_true), grids, config or {})
    log.info('Evaluation: %r', report)
    return report

def write_report(report: EvalReport, out_dir):
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_json(out_dir / 'metrics.json', report.metrics())
    for name, grid in report.grids.items():
        write_grid(out_dir / ('%s.csv' % name), grid)
    log.info('Report written to %s', out_dir)
