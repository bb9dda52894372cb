"""
Command line: ``cdii generate|train|evaluate|full|sweep|size``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 I/O or file format error.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from . common import write_csv, write_json
from . config import PRESETS, ExperimentConfig, load_config, merge
from . data.dataset import build_dataset, read_dataset, write_dataset
from . errors import EXIT_IO, CdiiError, SchemaError
from . network.checkpoint import checkpoint_meta, load_checkpoint
from . report import evaluate_model, write_report
from . sizing import SizingInput, prescribe
from . trainer import train

log = logging.getLogger(__name__)

def _paths(config: ExperimentConfig, args) -> dict:
    root = Path(config.output_dir)
    data = Path(args.data) if getattr(args, 'data', None) else root / 'data'
    return {'root': root, 'data': data, 'train': root / 'train', 'eval': root / 'eval'}

def _echo(config: ExperimentConfig, directory: Path):
    directory.mkdir(parents=True, exist_ok=True)
    write_json(directory / 'config.json', config.document)

def cmd_generate(config: ExperimentConfig, data_dir: Path):
    dataset = build_dataset(config.example, config.n, config.noise, config.grid_res, config.seed,
                            config.gamma_floor)
    write_dataset(dataset, data_dir)
    _echo(config, data_dir)
    return dataset

def cmd_train(config: ExperimentConfig, data_dir: Path, out_dir: Path):
    dataset = read_dataset(data_dir)
    _echo(config, out_dir)
    return train(dataset, config.train, out_dir)

def cmd_evaluate(config: ExperimentConfig, checkpoint, data_dir: Path, out_dir: Path):
    nets = load_checkpoint(checkpoint, config.widths())
    log.info('Evaluating %s from epoch %s', checkpoint, checkpoint_meta(checkpoint).get('epoch', '?'))
    dataset = read_dataset(data_dir)
    if dataset.truth is None:
        raise SchemaError(data_dir / 'gamma_true.csv', 1, 'ground-truth grids are missing')
    report = evaluate_model(nets['gamma'], nets['u'], dataset.truth, config.resolution, config.summary())
    write_report(report, out_dir)
    _echo(config, out_dir)
    return report

def cmd_size(n: float, d: int, s: float, mu: float) -> dict:
    return prescribe(SizingInput(n, d, s, mu)).to_dict()

def cmd_full(config: ExperimentConfig, paths: dict):
    cmd_generate(config, paths['data'])
    cmd_train(config, paths['data'], paths['train'])
    return cmd_evaluate(config, paths['train'] / 'ckpt_final', paths['data'], paths['eval'])

def cmd_sweep(config: ExperimentConfig, levels: List[float]):
    """generate + train + evaluate at several noise levels."""
    root = Path(config.output_dir)
    rows = []
    for level in levels:
        sub = ExperimentConfig(merge(config.document, {
            'noise': {'level': level}, 'output_dir': str(root / ('noise_%g' % level))}))
        paths = _paths(sub, argparse.Namespace())
        report = cmd_full(sub, paths)
        rows.append((level, report.err_gamma, report.err_u, report.err_a))
        log.info('noise %g: %r', level, report)
    root.mkdir(parents=True, exist_ok=True)
    write_csv(root / 'sweep.csv', ['level', 'err_gamma', 'err_u', 'err_a'], rows)
    return rows

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='cdii', description=__doc__.strip().splitlines()[0])
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    verbosity.add_argument('-q', '--quiet', action='store_true', help='warnings and errors only')
    sub = parser.add_subparsers(dest='command', required=True)

    def experiment(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument('--config', help='JSON configuration file')
        p.add_argument('--preset', choices=sorted(PRESETS), help='named parameter preset')
        p.add_argument('--set', dest='overrides', action='append', default=[], metavar='KEY=VALUE',
                       help='override a configuration entry, e.g. train.epochs=10 (repeatable)')
        p.add_argument('--threads', type=int, help='loss evaluation shards (default 1)')
        p.add_argument('--output', help='output directory (overrides output_dir)')
        return p

    p = experiment('generate', 'build a synthetic dataset')
    p.add_argument('--data', help='dataset directory (default OUTPUT/data)')
    p = experiment('train', 'train both networks on a dataset')
    p.add_argument('--data', help='dataset directory (default OUTPUT/data)')
    p = experiment('evaluate', 'compare a checkpoint against the ground truth')
    p.add_argument('--data', help='dataset directory (default OUTPUT/data)')
    p.add_argument('--checkpoint', help='checkpoint stem (default OUTPUT/train/ckpt_final)')
    experiment('full', 'generate, train and evaluate')
    p = experiment('sweep', 'full pipeline at several noise levels')
    p.add_argument('--levels', type=float, nargs='+', default=[0.01, 0.1, 0.2])

    p = sub.add_parser('size', help='network sizes and rate from the error analysis')
    p.add_argument('--n', type=float, required=True, help='number of samples')
    p.add_argument('--d', type=int, default=2, help='dimension')
    p.add_argument('--s', type=float, default=1.0, help='smoothness index')
    p.add_argument('--mu', type=float, default=0.5, help='slack')
    return parser

def _config(args) -> ExperimentConfig:
    overrides = list(args.overrides)
    if args.threads is not None:
        overrides.append('threads=%d' % args.threads)
    if args.output is not None:
        overrides.append('output_dir=%s' % json.dumps(args.output))
    return load_config(args.config, args.preset, overrides)

def run(args) -> int:
    if args.command == 'size':
        try:
            payload = cmd_size(args.n, args.d, args.s, args.mu)
        except ValueError as exc:
            log.error('%s', exc)
            return 2
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0
    config = _config(args)
    paths = _paths(config, args)
    if args.command == 'generate':
        cmd_generate(config, paths['data'])
    elif args.command == 'train':
        cmd_train(config, paths['data'], paths['train'])
    elif args.command == 'evaluate':
        checkpoint = args.checkpoint or paths['train'] / 'ckpt_final'
        print(cmd_evaluate(config, checkpoint, paths['data'], paths['eval']))
    elif args.command == 'full':
        print(cmd_full(config, paths))
    elif args.command == 'sweep':
        for level, err_gamma, err_u, err_a in cmd_sweep(config, args.levels):
            print('%g\t%.3e\t%.3e\t%.3e' % (level, err_gamma, err_u, err_a))
    return 0

def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    try:
        return run(args)
    except CdiiError as exc:
        log.error('%s', exc)
        return exc.exit_code
    except OSError as exc:
        log.error('%s', exc)
        return EXIT_IO

if __name__ == '__main__':
    sys.exit(main())
