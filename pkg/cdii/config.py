"""
Experiment configuration: one JSON document, layered as

    defaults <- preset <- config file <- --set overrides <- CDII_SEED

Unknown keys and ill-typed values raise ConfigError naming the dotted
path. The fully materialized document is echoed next to every output.
"""
import copy
import json
import logging
import os
from typing import Iterable, Mapping, Optional

from . common import read_json
from . errors import ConfigError
from . model.base import ExampleKind, GammaOutput, NoiseKind, RegularizerKind
from . model.data import ExampleId, NoiseSpec
from . model.training import RegularizerSpec, TrainConfig
from . network.params import default_widths

log = logging.getLogger(__name__)

SEED_ENV = 'CDII_SEED'

DEFAULTS = {
    'seed': 0,
    'example': {'id': 'four_mode', 'value': None},
    'noise': {'kind': 'multiplicative', 'level': 0.01, 'seed': 1},
    'data': {'n': 10000, 'grid_res': 257, 'gamma_floor': 0.1},
    'network': {'width': 32, 'depth': 3, 'gamma_output': 'shift', 'gamma_shift': 1.0},
    'train': {
        'epochs': 5000, 'batch_size': 512, 'lr': 1e-3, 'beta1': 0.9, 'beta2': 0.999, 'eps_adam': 1e-8,
        'steps_per_epoch': None, 'log_every': 100, 'checkpoint_every': 0, 'eps_mag': 1e-12,
    },
    'reg': {'kind': 'l2', 'alpha': 1e-5, 'zeta': 1e-3},
    'loss': {'lambda_pde': 1.0, 'lambda_bc': 1.0},
    'eval': {'resolution': 257},
    'output_dir': 'runs/default',
    'threads': 1,
}

PRESETS = {
    'four_mode': {'example': {'id': 'four_mode'}, 'reg': {'kind': 'l2', 'alpha': 1e-5}},
    'discontinuous': {'example': {'id': 'discontinuous'}, 'reg': {'kind': 'l2', 'alpha': 1e-5}},
    'disjoint_modes_l2': {
        'example': {'id': 'disjoint_modes'}, 'noise': {'level': 0.1},
        'reg': {'kind': 'l2', 'alpha': 1e-3},
    },
    'disjoint_modes_tv': {
        'example': {'id': 'disjoint_modes'}, 'noise': {'level': 0.1},
        'reg': {'kind': 'tv_huber', 'alpha': 1e-3, 'zeta': 1e-3},
    },
    'full_scale': {
        'data': {'n': 100000}, 'train': {'epochs': 50000, 'batch_size': 2048},
    },
}

def merge(base: dict, update: Mapping, path: str = '') -> dict:
    """Recursive update that refuses keys absent from ``base``."""
    out = copy.deepcopy(base)
    for key, value in update.items():
        where = '%s.%s' % (path, key) if path else key
        if key not in out:
            raise ConfigError(where, 'unknown key')
        if isinstance(out[key], dict):
            if not isinstance(value, Mapping):
                raise ConfigError(where, 'expected an object')
            out[key] = merge(out[key], value, where)
        else:
            out[key] = value
    return out

def parse_override(text: str) -> dict:
    """``a.b=value`` to a nested dict; the value is JSON or a bare string."""
    if '=' not in text:
        raise ConfigError(text, 'override must look like key=value')
    key, raw = text.split('=', 1)
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    out = value
    for part in reversed(key.strip().split('.')):
        out = {part: out}
    return out

class ExperimentConfig:
    __slots__ = ['document', 'example', 'noise', 'n', 'grid_res', 'gamma_floor', 'train',
                 'resolution', 'output_dir', 'threads', 'seed']

    def __init__(self, document: dict):
        self.document = document
        self.seed = _int(document, 'seed', minimum=0)
        self.threads = _int(document, 'threads', minimum=1)
        self.output_dir = _get(document, 'output_dir', str)
        self.example = _example(document)
        self.noise = _build('noise', lambda: NoiseSpec(
            _enum(document, 'noise.kind', NoiseKind), _float(document, 'noise.level', minimum=0.0),
            _int(document, 'noise.seed', minimum=0)))
        self.n = _int(document, 'data.n', minimum=1)
        self.grid_res = _int(document, 'data.grid_res', minimum=33)
        floor = _get(document, 'data.gamma_floor', (int, float, type(None)))
        self.gamma_floor = None if floor is None else float(floor)
        self.resolution = _int(document, 'eval.resolution', minimum=3)
        self.train = self._train(document)

    def _train(self, document: dict) -> TrainConfig:
        width = _int(document, 'network.width', minimum=1)
        depth = _int(document, 'network.depth', minimum=1)
        output = _enum(document, 'network.gamma_output', GammaOutput)
        shift = _float(document, 'network.gamma_shift') if output is GammaOutput.SHIFT else 0.0
        reg = _build('reg', lambda: RegularizerSpec(
            _enum(document, 'reg.kind', RegularizerKind), _float(document, 'reg.alpha', minimum=0.0),
            _float(document, 'reg.zeta')))
        steps = _get(document, 'train.steps_per_epoch', (int, type(None)))
        if steps is not None and steps < 1:
            raise ConfigError('train.steps_per_epoch', 'must be positive or null')
        if not _float(document, 'train.eps_mag') > 0:
            raise ConfigError('train.eps_mag', 'must be positive')
        return _build('train', lambda: TrainConfig(
            epochs=_int(document, 'train.epochs', minimum=1),
            batch_size=_int(document, 'train.batch_size', minimum=1),
            lr=_float(document, 'train.lr', minimum=0.0),
            beta1=_float(document, 'train.beta1', minimum=0.0),
            beta2=_float(document, 'train.beta2', minimum=0.0),
            eps_adam=_float(document, 'train.eps_adam', minimum=0.0),
            seed=self.seed, reg=reg,
            widths_gamma=default_widths(width, depth), widths_u=default_widths(width, depth),
            gamma_shift=shift,
            log_every=_int(document, 'train.log_every', minimum=1),
            checkpoint_every=_int(document, 'train.checkpoint_every', minimum=0),
            steps_per_epoch=steps,
            eps_mag=_float(document, 'train.eps_mag'),
            lambda_pde=_float(document, 'loss.lambda_pde', minimum=0.0),
            lambda_bc=_float(document, 'loss.lambda_bc', minimum=0.0),
            threads=self.threads))

    def widths(self) -> dict:
        return {'gamma': self.train.widths_gamma, 'u': self.train.widths_u}

    def summary(self) -> dict:
        """The run description recorded in metrics.json."""
        return {
            'example': self.example.kind.value,
            'noise': {'kind': self.noise.kind.value, 'level': self.noise.level},
            'reg': self.train.reg.to_dict(),
            'epochs': self.train.epochs,
            'n': self.n,
            'widths': list(self.train.widths_gamma),
            'seed': self.seed,
        }

def _get(document: dict, path: str, types):
    value = document
    for part in path.split('.'):
        value = value[part]
    if isinstance(value, bool) or not isinstance(value, types):
        raise ConfigError(path, 'unexpected value %r' % (value,))
    return value

def _int(document, path, minimum=None) -> int:
    value = _get(document, path, int)
    if minimum is not None and value < minimum:
        raise ConfigError(path, 'must be at least %d' % minimum)
    return value

def _float(document, path, minimum=None) -> float:
    value = float(_get(document, path, (int, float)))
    if minimum is not None and value < minimum:
        raise ConfigError(path, 'must be at least %g' % minimum)
    return value

def _enum(document, path, enum):
    value = _get(document, path, str)
    try:
        return enum(value)
    except ValueError:
        raise ConfigError(path, 'expected one of %s' % ', '.join(e.value for e in enum))

def _build(path, factory):
    try:
        return factory()
    except (ValueError, TypeError) as exc:
        raise ConfigError(path, str(exc))

def _example(document) -> ExampleId:
    kind = _enum(document, 'example.id', ExampleKind)
    if kind is ExampleKind.CUSTOM:
        value = _get(document, 'example.value', (int, float, type(None)))
        if value is None:
            raise ConfigError('example.value', 'a custom example needs a constant conductivity')
        if value <= 0:
            raise ConfigError('example.value', 'conductivity must be positive')
        return ExampleId(kind, float(value))
    return ExampleId(kind)

def load_config(path=None, preset: Optional[str] = None, overrides: Iterable[str] = (),
                environ: Optional[Mapping[str, str]] = None) -> ExperimentConfig:
    environ = os.environ if environ is None else environ
    document = copy.deepcopy(DEFAULTS)
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError('preset', 'unknown preset %r, expected one of %s' % (preset, ', '.join(PRESETS)))
        document = merge(document, PRESETS[preset])
    if path is not None:
        payload = read_json(path)
        if not isinstance(payload, dict):
            raise ConfigError(str(path), 'expected a JSON object')
        document = merge(document, payload)
    for text in overrides:
        document = merge(document, parse_override(text))
    if environ.get(SEED_ENV):
        try:
            document['seed'] = int(environ[SEED_ENV])
        except ValueError:
            raise ConfigError(SEED_ENV, 'not an integer: %r' % environ[SEED_ENV])
    config = ExperimentConfig(document)
    log.debug('configuration: %s', document)
    return config
