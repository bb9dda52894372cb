import csv
import json
from pathlib import Path
from typing import Iterable, List, Sequence

import numpy as np

from . errors import SchemaError

DIGITS = 17

def fmt(value: float) -> str:
    return '%.*g' % (DIGITS, value)

def derive_seed(seed: int, *keys) -> int:
    """Independent stream seed for a named sub-task of a seeded run."""
    entropy = [int(seed)] + [_key(k) for k in keys]
    return int(np.random.SeedSequence(entropy).generate_state(1)[0])

def _key(key) -> int:
    if isinstance(key, int):
        return key
    return int.from_bytes(str(key).encode(), 'little') % (2 ** 32)

def rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))

def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]):
    path = Path(path)
    with path.open('w', newline='') as fd:
        fd.write(','.join(header) + '\n')
        for row in rows:
            fd.write(','.join(v if isinstance(v, str) else fmt(v) for v in row) + '\n')

def read_csv(path, header: Sequence[str]) -> List[List[str]]:
    path = Path(path)
    with path.open(newline='') as fd:
        reader = csv.reader(fd)
        try:
            found = next(reader)
        except StopIteration:
            raise SchemaError(path, 1, 'empty file')
        if found != list(header):
            raise SchemaError(path, 1, 'expected header %s, got %s' % (','.join(header), ','.join(found)))
        rows = []
        for line, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise SchemaError(path, line, 'expected %d columns, got %d' % (len(header), len(row)))
            rows.append(row)
        return rows

def read_float_csv(path, header: Sequence[str]) -> np.ndarray:
    rows = read_csv(path, header)
    out = np.empty((len(rows), len(header)))
    for k, row in enumerate(rows):
        try:
            out[k] = [float(v) for v in row]
        except ValueError:
            raise SchemaError(path, k + 2, 'not a number: %s' % ','.join(row))
    return out

def write_json(path, payload: dict):
    with Path(path).open('w') as fd:
        json.dump(payload, fd, indent=2, sort_keys=True)
        fd.write('\n')

def read_json(path) -> dict:
    path = Path(path)
    try:
        with path.open() as fd:
            return json.load(fd)
    except json.JSONDecodeError as exc:
        raise SchemaError(path, exc.lineno, exc.msg)
