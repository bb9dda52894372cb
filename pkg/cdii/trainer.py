"""
Mini-batch ADAM over the joint parameter vector of the conductivity and
voltage networks. Each step records the loss on a fresh tape.
"""
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from . autodiff import tape as ad
from . common import derive_seed, rng, write_csv
from . errors import OptimizerAbort, TapeError
from . loss import component_sums, weighted_total
from . model.data import Dataset, Samples
from . model.training import AdamState, LossBreakdown, TrainConfig, TrainHistory
from . network.checkpoint import save_checkpoint
from . network.mlp import bind
from . network.params import MlpParams, flatten, init_xavier, unflatten

log = logging.getLogger(__name__)

def adam_step(state: AdamState, params: np.ndarray, grads: np.ndarray, config: TrainConfig,
              epoch: Optional[int] = None) -> Tuple[AdamState, np.ndarray]:
    bad = np.flatnonzero(~np.isfinite(grads))
    if bad.size:
        raise OptimizerAbort(epoch, int(bad[0]), float(grads[bad[0]]))
    state.t += 1
    state.m = config.beta1 * state.m + (1.0 - config.beta1) * grads
    state.v = config.beta2 * state.v + (1.0 - config.beta2) * grads * grads
    m_hat = state.m / (1.0 - config.beta1 ** state.t)
    v_hat = state.v / (1.0 - config.beta2 ** state.t)
    return state, params - config.lr * m_hat / (np.sqrt(v_hat) + config.eps_adam)

def make_batches(n: int, batch_size: int, epoch_seed: int) -> List[np.ndarray]:
    order = rng(epoch_seed).permutation(n)
    return [order[i:i + batch_size] for i in range(0, n, batch_size)]

def epoch_batches(dataset: Dataset, config: TrainConfig, epoch: int):
    """Paired interior/boundary index sets, permuted with independent seeds."""
    epoch_seed = derive_seed(config.seed, 'epoch', epoch)
    inner = make_batches(dataset.n, config.batch_size, derive_seed(epoch_seed, 'interior'))
    outer = make_batches(dataset.n, config.batch_size, derive_seed(epoch_seed, 'boundary'))
    return list(zip(inner, outer))[:steps_per_epoch(dataset.n, config)]

class Model:
    """Both networks plus the conversion to and from the joint vector."""
    __slots__ = ['gamma', 'u']

    def __init__(self, gamma: MlpParams, u: MlpParams):
        self.gamma = gamma
        self.u = u

    @classmethod
    def initial(cls, config: TrainConfig) -> 'Model':
        return cls(init_xavier(config.widths_gamma, derive_seed(config.seed, 'gamma'), config.gamma_shift),
                   init_xavier(config.widths_u, derive_seed(config.seed, 'u')))

    def vector(self) -> np.ndarray:
        return np.concatenate([flatten(self.gamma), flatten(self.u)])

    def with_vector(self, vector: np.ndarray) -> 'Model':
        k = self.gamma.size
        return Model(unflatten(self.gamma, vector[:k]), unflatten(self.u, vector[k:]))

    def nets(self) -> dict:
        return {'gamma': self.gamma, 'u': self.u}

def _shard(model: Model, interior: Samples, boundary: Samples, config: TrainConfig,
           n_interior: int, n_boundary: int):
    tape = ad.Tape()
    # overflow surfaces as a TapeError on the first non-finite node
    with np.errstate(over='ignore', invalid='ignore'):
        gamma = bind(model.gamma, tape)
        u = bind(model.u, tape)
        sums = component_sums(interior, boundary, gamma, u, config.reg, tape, config.eps_mag)
        root = weighted_total(tape, sums, n_interior, n_boundary, config.reg, config.lambda_pde, config.lambda_bc)
        grads = ad.gradient(tape, root, gamma.refs + u.refs)
    return np.array([tape.value(s) for s in sums]), grads

def loss_and_grad(model: Model, interior: Samples, boundary: Samples, config: TrainConfig,
                  executor: Optional[ThreadPoolExecutor] = None) -> Tuple[LossBreakdown, np.ndarray]:
    """Loss breakdown and joint gradient; shards are merged in shard order."""
    n_in, n_bd = len(interior), len(boundary)
    parts = min(config.threads, n_in, n_bd)
    if parts <= 1 or executor is None:
        results = [_shard(model, interior, boundary, config, n_in, n_bd)]
    else:
        jobs = [executor.submit(_shard, model, i, b, config, n_in, n_bd)
                for i, b in zip(interior.split(parts), boundary.split(parts))]
        results = [job.result() for job in jobs]
    sums = results[0][0]
    grads = results[0][1]
    for s, g in results[1:]:
        sums = sums + s
        grads = grads + g
    misfit, reg, pde, bc = sums[0] / n_in, sums[1] / n_in, sums[2] / n_in, sums[3] / n_bd
    total = misfit + config.reg.alpha * reg + config.lambda_pde * pde + config.lambda_bc * bc
    return LossBreakdown(misfit, reg, pde, bc, total), grads

def monitor_batch(dataset: Dataset, config: TrainConfig) -> Tuple[Samples, Samples]:
    """Fixed samples on which logged losses are measured."""
    k = min(config.batch_size, dataset.n)
    return dataset.interior.take(slice(0, k)), dataset.boundary.take(slice(0, k))

def write_history(history: TrainHistory, path):
    write_csv(path, TrainHistory.HEADER, history.rows())

def train(dataset: Dataset, config: TrainConfig, out_dir=None, model: Optional[Model] = None):
    """Returns (gamma params, u params, history)."""
    out_dir = Path(out_dir) if out_dir is not None else None
    model = model or Model.initial(config)
    theta = model.vector()
    state = AdamState(theta.size)
    history = TrainHistory()
    watch_in, watch_bd = monitor_batch(dataset, config)
    executor = ThreadPoolExecutor(config.threads) if config.threads > 1 else None
    if executor is not None:
        log.warning('training with %d threads: results are reproducible only for the same thread count',
                    config.threads)
    start = time.perf_counter()

    def record(epoch: int):
        loss, _ = loss_and_grad(model, watch_in, watch_bd, config, executor)
        history.append(epoch, loss, time.perf_counter() - start)
        log.info('epoch %d: %r', epoch, loss)

    epoch = 0
    try:
        record(0)
        if out_dir is not None:
            save_checkpoint(out_dir / 'ckpt_0', model.nets(), {'epoch': 0})
        for epoch in range(1, config.epochs + 1):
            for inner, outer in epoch_batches(dataset, config, epoch):
                loss, grads = loss_and_grad(model, dataset.interior.take(inner), dataset.boundary.take(outer),
                                            config, executor)
                log.debug('epoch %d step %d: %r', epoch, state.t + 1, loss)
                state, theta = adam_step(state, theta, grads, config, epoch)
                model = model.with_vector(theta)
            if epoch % config.log_every == 0:
                record(epoch)
            if out_dir is not None and config.checkpoint_every and epoch % config.checkpoint_every == 0:
                save_checkpoint(out_dir / ('ckpt_%d' % epoch), model.nets(), {'epoch': epoch})
    except (OptimizerAbort, TapeError) as error:
        log.error('Training aborted at epoch %d step %d: %s', epoch, state.t, error)
        if out_dir is not None:
            save_checkpoint(out_dir / 'ckpt_abort', model.nets(), {'epoch': epoch, 'step': state.t})
            write_history(history, out_dir / 'loss_history.csv')
        if isinstance(error, TapeError):
            raise OptimizerAbort(epoch, error.node, float('nan'), 'loss evaluation failed: %s' % error) from error
        raise
    finally:
        if executor is not None:
            executor.shutdown()
    if out_dir is not None:
        save_checkpoint(out_dir / 'ckpt_final', model.nets(), {'epoch': config.epochs})
        write_history(history, out_dir / 'loss_history.csv')
    log.info('Training finished after %d epochs in %.1fs', config.epochs, time.perf_counter() - start)
    return model.gamma, model.u, history

def steps_per_epoch(n: int, config: TrainConfig) -> int:
    steps = math.ceil(n / config.batch_size)
    return min(steps, config.steps_per_epoch) if config.steps_per_epoch else steps
