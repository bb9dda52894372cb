"""
Parameter checkpoints: ``<stem>.csv`` holds one row per weight
(``net,layer,kind,row,col,value``, layer-major and row-major, weights
before biases), ``<stem>.json`` the widths, seed and output shift of each
network. Values use 17 significant digits and re-read bit-exactly.
"""
import logging
from pathlib import Path
from typing import Dict, Mapping, Optional, Sequence

import numpy as np

from .. common import read_csv, read_json, write_csv, write_json
from .. errors import SchemaError
from . params import MlpParams

log = logging.getLogger(__name__)

HEADER = ['net', 'layer', 'kind', 'row', 'col', 'value']

def _rows(name: str, params: MlpParams):
    for layer, (w, b) in enumerate(zip(params.weights, params.biases)):
        for i in range(w.shape[0]):
            for j in range(w.shape[1]):
                yield (name, str(layer), 'weight', str(i), str(j), w[i, j])
        for i in range(b.shape[0]):
            yield (name, str(layer), 'bias', str(i), '0', b[i])

def save_checkpoint(stem, nets: Mapping[str, MlpParams], meta: Optional[dict] = None):
    stem = Path(stem)
    stem.parent.mkdir(parents=True, exist_ok=True)
    rows = (row for name, params in nets.items() for row in _rows(name, params))
    write_csv(stem.with_suffix('.csv'), HEADER, rows)
    sidecar = {
        'nets': {name: {'widths': list(p.widths), 'seed': p.seed, 'shift': p.shift}
                 for name, p in nets.items()},
        'meta': meta or {},
    }
    write_json(stem.with_suffix('.json'), sidecar)
    log.info('Checkpoint written to %s', stem)

def load_checkpoint(stem, expected: Optional[Mapping[str, Sequence[int]]] = None) -> Dict[str, MlpParams]:
    stem = Path(stem)
    json_path, csv_path = stem.with_suffix('.json'), stem.with_suffix('.csv')
    sidecar = read_json(json_path)
    nets = {}
    for name, spec in sidecar.get('nets', {}).items():
        widths = tuple(spec['widths'])
        if expected is not None and name in expected and tuple(expected[name]) != widths:
            raise SchemaError(json_path, 1, 'network %s has widths %s, configuration expects %s'
                              % (name, widths, tuple(expected[name])))
        weights = [np.zeros((o, i)) for i, o in zip(widths[:-1], widths[1:])]
        biases = [np.zeros(o) for o in widths[1:]]
        nets[name] = (widths, weights, biases, spec.get('seed'), spec.get('shift', 0.0))
    seen = {name: 0 for name in nets}
    for line, row in enumerate(read_csv(csv_path, HEADER), start=2):
        name, layer, kind, i, j, value = row
        if name not in nets:
            raise SchemaError(csv_path, line, 'unknown network %r' % name)
        try:
            layer, i, j, value = int(layer), int(i), int(j), float(value)
            _, weights, biases, _, _ = nets[name]
            if kind == 'weight':
                weights[layer][i, j] = value
            elif kind == 'bias':
                biases[layer][i] = value
            else:
                raise ValueError(kind)
        except (ValueError, IndexError):
            raise SchemaError(csv_path, line, 'bad checkpoint row %s' % ','.join(row))
        seen[name] += 1
    out = {}
    for name, (widths, weights, biases, seed, shift) in nets.items():
        params = MlpParams(widths, weights, biases, seed, shift)
        if seen[name] != params.size:
            raise SchemaError(csv_path, 1, 'network %s has %d rows, expected %d' % (name, seen[name], params.size))
        out[name] = params
    return out

def checkpoint_meta(stem) -> dict:
    return read_json(Path(stem).with_suffix('.json')).get('meta', {})
