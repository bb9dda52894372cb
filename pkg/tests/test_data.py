import math

import numpy as np
import pytest

from cdii.data.conductivity import conductivity, conductivity_grid, eval_conductivity
from cdii.data.dataset import build_dataset, forward_fields, read_dataset, write_dataset
from cdii.data.sampling import apply_noise, noise_draws, sample_boundary, sample_interior
from cdii.errors import SchemaError
from cdii.model.base import ExampleKind, NoiseKind
from cdii.model.data import ExampleId, NoiseSpec
from cdii.model.field import GridField
from cdii.solver.grid import interpolate_many

FOUR_MODE = ExampleId(ExampleKind.FOUR_MODE)
DISCONTINUOUS = ExampleId(ExampleKind.DISCONTINUOUS)
DISJOINT = ExampleId(ExampleKind.DISJOINT_MODES)

def test_discontinuous_values():
    assert eval_conductivity(DISCONTINUOUS, (0.25, 0.5)) == 1.0
    assert eval_conductivity(DISCONTINUOUS, (0.75, 0.5)) == pytest.approx(1.0 + math.exp(-0.125), abs=1e-15)
    assert eval_conductivity(DISCONTINUOUS, (0.75, 0.5)) == pytest.approx(1.8825, abs=5e-5)

def test_four_mode_at_centre():
    expected = 1.0 + 0.3 * (0.3 * math.exp(-1.0) - math.exp(-1.0))
    assert eval_conductivity(FOUR_MODE, (0.5, 0.5)) == pytest.approx(expected, rel=1e-15)
    assert eval_conductivity(FOUR_MODE, (0.5, 0.5)) == pytest.approx(0.9227454, abs=1e-7)

def test_disjoint_modes():
    assert eval_conductivity(DISJOINT, (0.6, 0.4)) == 0.0
    assert eval_conductivity(DISJOINT, (0.3, 0.7)) == 2.0
    assert eval_conductivity(DISJOINT, (0.9, 0.9)) == 1.0

def test_custom_conductivities():
    x = np.array([0.2, 0.8])
    y = np.array([0.5, 0.1])
    np.testing.assert_array_equal(conductivity(ExampleId.custom_of(2.5), x, y), [2.5, 2.5])
    np.testing.assert_allclose(conductivity(ExampleId.custom_of(lambda x, y: 1 + y), x, y), 1 + y)
    grid = GridField.from_function(lambda x, y: 1 + x, 9)
    np.testing.assert_allclose(conductivity(ExampleId.custom_of(grid), x, y), 1 + x, rtol=1e-14)
    with pytest.raises(ValueError):
        ExampleId(ExampleKind.CUSTOM)

def test_conductivity_grid_orientation():
    grid = conductivity_grid(DISCONTINUOUS, 33)
    assert grid.values[16, 0] == 1.0
    assert grid.values[16, -1] > 1.0

def test_interior_samples():
    points = sample_interior(10 ** 6, 4)
    assert np.all((points > 0) & (points < 1))
    bound = 3 * (1 / math.sqrt(12)) / math.sqrt(points.shape[0])
    assert np.all(np.abs(points.mean(axis=0) - 0.5) <= bound)
    np.testing.assert_array_equal(sample_interior(50, 4), sample_interior(50, 4))

def test_boundary_samples():
    points = sample_boundary(10 ** 5, 8)
    x, y = points[:, 0], points[:, 1]
    assert np.all(np.minimum(np.minimum(x, 1 - x), np.minimum(y, 1 - y)) == 0.0)
    edges = [np.mean(y == 0.0), np.mean(x == 1.0), np.mean(y == 1.0), np.mean(x == 0.0)]
    assert all(abs(f - 0.25) <= 0.01 for f in edges)
    np.testing.assert_array_equal(sample_boundary(50, 8), sample_boundary(50, 8))

def test_apply_noise():
    spec = NoiseSpec(NoiseKind.MULTIPLICATIVE, 0.1)
    assert apply_noise(2.0, spec, 1.0) == pytest.approx(2.2)
    assert apply_noise(2.0, NoiseSpec(NoiseKind.ADDITIVE, 0.1), 1.0) == pytest.approx(2.1)
    assert apply_noise(2.0, NoiseSpec(NoiseKind.MULTIPLICATIVE, 0.0), 5.0) == 2.0
    draws = noise_draws(NoiseSpec(NoiseKind.MULTIPLICATIVE, 0.1, seed=3), 10 ** 6)
    noisy = apply_noise(np.full(draws.size, 2.0), spec, draws)
    assert np.std(noisy) == pytest.approx(0.1 * 2.0, rel=0.01)

def test_additive_noise_is_centred():
    spec = NoiseSpec(NoiseKind.ADDITIVE, 0.1, seed=5)
    n = 10 ** 6
    noisy = apply_noise(np.full(n, 1.5), spec, noise_draws(spec, n))
    assert abs(np.mean(noisy - 1.5)) <= 3 * 0.1 / math.sqrt(n)
    assert np.std(noisy) == pytest.approx(0.1, rel=0.01)

def test_negative_noise_level_rejected():
    with pytest.raises(ValueError):
        NoiseSpec(NoiseKind.ADDITIVE, -0.1)

def test_unit_conductivity_dataset_is_exact():
    dataset = build_dataset(ExampleId.custom_of(1.0), 500, NoiseSpec(level=0.0), 33, seed=2)
    np.testing.assert_allclose(dataset.interior.values, 1.0, atol=1e-8)
    np.testing.assert_array_equal(dataset.boundary.values, dataset.boundary.y)
    assert dataset.provenance['gamma_floor'] == 0.1
    assert dataset.provenance['custom'] == 1.0

def test_multiplicative_noise_level():
    spec = NoiseSpec(NoiseKind.MULTIPLICATIVE, 0.01, seed=1)
    dataset = build_dataset(FOUR_MODE, 10 ** 5, spec, 65, seed=0)
    a_true = interpolate_many(dataset.truth.a, dataset.interior.points)
    ratio = np.mean(np.abs(dataset.interior.values - a_true) / a_true)
    assert ratio == pytest.approx(0.01 * math.sqrt(2 / math.pi), rel=0.05)

def test_dataset_is_deterministic():
    spec = NoiseSpec(NoiseKind.ADDITIVE, 0.05, seed=9)
    one = build_dataset(DISCONTINUOUS, 200, spec, 33, seed=5)
    two = build_dataset(DISCONTINUOUS, 200, spec, 33, seed=5)
    np.testing.assert_array_equal(one.interior.points, two.interior.points)
    np.testing.assert_array_equal(one.interior.values, two.interior.values)
    other = build_dataset(DISCONTINUOUS, 200, spec, 33, seed=6)
    assert not np.array_equal(one.interior.points, other.interior.points)

def test_disjoint_modes_floor():
    truth = forward_fields(DISJOINT, 65)
    assert truth.gamma.values.min() == 0.0
    assert np.all(truth.a.values >= 0.0)

def test_invalid_dataset_arguments():
    with pytest.raises(ValueError):
        build_dataset(FOUR_MODE, 0, NoiseSpec(), 33, seed=0)
    with pytest.raises(ValueError):
        build_dataset(FOUR_MODE, 10, NoiseSpec(), 17, seed=0)

def test_dataset_files(tmp_path):
    dataset = build_dataset(FOUR_MODE, 40, NoiseSpec(level=0.01, seed=2), 33, seed=1)
    write_dataset(dataset, tmp_path)
    interior = (tmp_path / 'interior.csv').read_text().splitlines()
    assert interior[0] == 'x,y,a_obs'
    assert len(interior) == 41
    assert (tmp_path / 'boundary.csv').read_text().startswith('x,y,f\n')
    loaded = read_dataset(tmp_path)
    np.testing.assert_array_equal(loaded.interior.points, dataset.interior.points)
    np.testing.assert_array_equal(loaded.boundary.values, dataset.boundary.values)
    assert loaded.truth.gamma == dataset.truth.gamma
    assert loaded.provenance == dataset.provenance

def test_dataset_schema_errors(tmp_path):
    dataset = build_dataset(FOUR_MODE, 10, NoiseSpec(), 33, seed=1)
    write_dataset(dataset, tmp_path)
    path = tmp_path / 'interior.csv'
    lines = path.read_text().splitlines()
    lines[4] = '0.5,1.5,1.0'
    path.write_text('\n'.join(lines) + '\n')
    with pytest.raises(SchemaError) as info:
        read_dataset(tmp_path)
    assert info.value.line == 5

    lines[4] = '0.5,0.5'
    path.write_text('\n'.join(lines) + '\n')
    with pytest.raises(SchemaError) as info:
        read_dataset(tmp_path)
    assert info.value.line == 5
