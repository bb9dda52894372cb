import json

import pytest

from cdii.config import DEFAULTS, PRESETS, SEED_ENV, load_config, merge, parse_override
from cdii.errors import ConfigError
from cdii.model.base import ExampleKind, NoiseKind, RegularizerKind

def test_defaults():
    config = load_config(environ={})
    assert config.example.kind is ExampleKind.FOUR_MODE
    assert config.noise.kind is NoiseKind.MULTIPLICATIVE
    assert config.train.widths_gamma == (2, 32, 32, 32, 1)
    assert config.train.reg.kind is RegularizerKind.L2
    assert config.train.gamma_shift == 1.0
    assert config.gamma_floor == 0.1
    assert config.document == DEFAULTS

def test_presets():
    tv = load_config(preset='disjoint_modes_tv', environ={})
    assert tv.example.kind is ExampleKind.DISJOINT_MODES
    assert tv.train.reg.kind is RegularizerKind.TV_HUBER
    assert tv.train.reg.alpha == 1e-3
    assert tv.noise.level == 0.1
    assert load_config(preset='disjoint_modes_l2', environ={}).train.reg.alpha == 1e-3
    assert set(PRESETS) >= {'four_mode', 'discontinuous', 'disjoint_modes_l2', 'disjoint_modes_tv'}
    with pytest.raises(ConfigError):
        load_config(preset='nope', environ={})

def test_full_scale_parameters_accepted():
    config = load_config(preset='full_scale', environ={})
    assert (config.n, config.train.epochs, config.train.batch_size) == (100000, 50000, 2048)

def test_layering(tmp_path):
    path = tmp_path / 'run.json'
    path.write_text(json.dumps({'train': {'epochs': 7, 'lr': 0.01}, 'seed': 3}))
    config = load_config(path, 'discontinuous', ['train.epochs=9', 'network.gamma_output=raw'],
                         environ={SEED_ENV: '11'})
    assert config.example.kind is ExampleKind.DISCONTINUOUS
    assert config.train.epochs == 9
    assert config.train.lr == 0.01
    assert config.train.gamma_shift == 0.0
    assert config.seed == config.train.seed == 11

def test_parse_override():
    assert parse_override('a.b=3') == {'a': {'b': 3}}
    assert parse_override('output_dir=runs/x') == {'output_dir': 'runs/x'}
    assert parse_override('x=null') == {'x': None}
    with pytest.raises(ConfigError):
        parse_override('novalue')

@pytest.mark.parametrize('override,path', [
    ('train.epochs=0', 'train.epochs'),
    ('train.epoch=5', 'train.epoch'),
    ('train.lr="fast"', 'train.lr'),
    ('noise.kind=gaussian', 'noise.kind'),
    ('train.beta1=1.5', 'train'),
    ('reg.zeta=0', 'reg'),
    ('example.id=custom', 'example.value'),
    ('data.grid_res=17', 'data.grid_res'),
    ('train=3', 'train'),
    ('train.eps_mag=0', 'train.eps_mag'),
])
def test_invalid_values_name_their_path(override, path):
    with pytest.raises(ConfigError) as info:
        load_config(overrides=[override], environ={})
    assert info.value.path == path

def test_custom_example():
    config = load_config(overrides=['example.id=custom', 'example.value=2.5'], environ={})
    assert config.example.custom == 2.5

def test_bad_seed_environment():
    with pytest.raises(ConfigError) as info:
        load_config(environ={SEED_ENV: 'abc'})
    assert info.value.path == SEED_ENV

def test_merge_keeps_base():
    base = {'a': {'b': 1}}
    assert merge(base, {'a': {'b': 2}}) == {'a': {'b': 2}}
    assert base == {'a': {'b': 1}}

def test_summary():
    summary = load_config(preset='disjoint_modes_tv', environ={}).summary()
    assert summary['reg'] == {'kind': 'tv_huber', 'alpha': 1e-3, 'zeta': 1e-3}
    assert summary['noise'] == {'kind': 'multiplicative', 'level': 0.1}
    assert summary['widths'] == [2, 32, 32, 32, 1]
