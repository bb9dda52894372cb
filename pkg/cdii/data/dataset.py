import logging
from pathlib import Path
from typing import Optional

import numpy as np

from .. common import derive_seed, read_float_csv, read_json, write_csv, write_json
from .. errors import SchemaError
from .. model.base import ExampleKind, NoiseKind
from .. model.data import Dataset, ExampleId, GroundTruth, NoiseSpec, Samples
from .. model.field import GridField
from .. solver import fd
from .. solver.grid import interpolate_many, read_grid, write_grid
from . conductivity import conductivity_grid
from . sampling import apply_noise, noise_draws, sample_boundary, sample_interior

log = logging.getLogger(__name__)

INTERIOR_HEADER = ['x', 'y', 'a_obs']
BOUNDARY_HEADER = ['x', 'y', 'f']

def boundary_voltage(x, y):
    """Dirichlet data: the trace of the harmonic function u(x, y) = y."""
    return y + 0.0 * x

def forward_fields(example: ExampleId, grid_res: int, gamma_floor: Optional[float] = 0.1,
                   tol: float = 1e-12) -> GroundTruth:
    """gamma (as written by the formula), u and a on the grid."""
    gamma = conductivity_grid(example, grid_res)
    solve_gamma = gamma
    if gamma_floor is not None:
        floored = np.maximum(gamma.values, gamma_floor)
        if np.any(floored != gamma.values):
            log.warning('conductivity floored at %g on %d nodes', gamma_floor,
                        int(np.count_nonzero(floored != gamma.values)))
        solve_gamma = GridField(floored)
    u = fd.solve(solve_gamma, boundary_voltage, tol=tol)
    a = fd.current_magnitude(solve_gamma, u)
    return GroundTruth(gamma, u, a)

def build_dataset(example: ExampleId, n: int, spec: NoiseSpec, grid_res: int, seed: int,
                  gamma_floor: Optional[float] = 0.1) -> Dataset:
    if n < 1:
        raise ValueError('need at least one sample')
    if grid_res < 33:
        raise ValueError('grid resolution must be at least 33, got %d' % grid_res)
    truth = forward_fields(example, grid_res, gamma_floor)
    x_in = sample_interior(n, derive_seed(seed, 'interior'))
    a_in = interpolate_many(truth.a, x_in)
    y_in = apply_noise(a_in, spec, noise_draws(spec, n))
    x_bd = sample_boundary(n, derive_seed(seed, 'boundary'))
    f_bd = x_bd[:, 1].copy()
    provenance = {
        'example': example.kind.value,
        'n': n,
        'noise': spec.to_dict(),
        'grid_res': grid_res,
        'gamma_floor': gamma_floor,
        'seed': seed,
    }
    if example.kind is ExampleKind.CUSTOM:
        provenance['custom'] = example.to_dict().get('value')
    log.info('Built %s dataset with %d samples on a %d grid', example, n, grid_res)
    return Dataset(Samples(x_in, y_in), Samples(x_bd, f_bd), spec, provenance, truth)

def write_dataset(dataset: Dataset, out_dir):
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_csv(out_dir / 'interior.csv', INTERIOR_HEADER,
              zip(dataset.interior.x, dataset.interior.y, dataset.interior.values))
    write_csv(out_dir / 'boundary.csv', BOUNDARY_HEADER,
              zip(dataset.boundary.x, dataset.boundary.y, dataset.boundary.values))
    write_json(out_dir / 'provenance.json', dataset.provenance)
    if dataset.truth is not None:
        write_grid(out_dir / 'gamma_true.csv', dataset.truth.gamma)
        write_grid(out_dir / 'u_true.csv', dataset.truth.u)
        write_grid(out_dir / 'a_true.csv', dataset.truth.a)
    log.info('Dataset written to %s', out_dir)

def _samples(path, header, check) -> Samples:
    data = read_float_csv(path, header)
    if data.shape[0] == 0:
        raise SchemaError(path, 2, 'no samples')
    bad = np.flatnonzero(~check(data[:, 0], data[:, 1]))
    if bad.size:
        raise SchemaError(path, int(bad[0]) + 2, 'point outside its domain')
    return Samples(data[:, :2], data[:, 2])

def _inside(x, y):
    return (x > 0) & (x < 1) & (y > 0) & (y < 1)

def _on_edge(x, y):
    inside = (x >= 0) & (x <= 1) & (y >= 0) & (y <= 1)
    return inside & (np.minimum(np.minimum(x, 1 - x), np.minimum(y, 1 - y)) == 0)

def read_dataset(in_dir) -> Dataset:
    in_dir = Path(in_dir)
    interior = _samples(in_dir / 'interior.csv', INTERIOR_HEADER, _inside)
    boundary = _samples(in_dir / 'boundary.csv', BOUNDARY_HEADER, _on_edge)
    provenance = read_json(in_dir / 'provenance.json')
    try:
        noise = NoiseSpec(NoiseKind(provenance['noise']['kind']), provenance['noise']['level'],
                          provenance['noise']['seed'])
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(in_dir / 'provenance.json', 1, 'bad noise record: %s' % exc)
    truth = None
    names = ('gamma_true.csv', 'u_true.csv', 'a_true.csv')
    if all((in_dir / name).exists() for name in names):
        truth = GroundTruth(*(read_grid(in_dir / name) for name in names))
    try:
        return Dataset(interior, boundary, noise, provenance, truth)
    except ValueError as exc:
        raise SchemaError(in_dir / 'boundary.csv', 1, str(exc))
