from typing import List, Optional, Sequence

import numpy as np

from . base import RegularizerKind

class RegularizerSpec:
    __slots__ = ['kind', 'alpha', 'zeta']

    def __init__(self, kind: RegularizerKind = RegularizerKind.L2, alpha: float = 1e-5, zeta: float = 1e-3):
        if alpha < 0:
            raise ValueError('alpha must be nonnegative, got %r' % alpha)
        if zeta <= 0:
            raise ValueError('zeta must be positive, got %r' % zeta)
        self.kind = RegularizerKind(kind)
        self.alpha = float(alpha)
        self.zeta = float(zeta)

    def to_dict(self) -> dict:
        out = {'kind': self.kind.value, 'alpha': self.alpha}
        if self.kind is RegularizerKind.TV_HUBER:
            out['zeta'] = self.zeta
        return out

    def __repr__(self) -> str:
        return '%s(alpha=%g)' % (self.kind.value, self.alpha)

class LossBreakdown:
    """Detached component values plus the tape node of the total."""
    __slots__ = ['misfit', 'regularizer', 'pde_residual', 'boundary', 'total', 'root']

    FIELDS = ('misfit', 'regularizer', 'pde_residual', 'boundary', 'total')

    def __init__(self, misfit: float, regularizer: float, pde_residual: float, boundary: float,
                 total: float, root: Optional[int] = None):
        self.misfit = misfit
        self.regularizer = regularizer
        self.pde_residual = pde_residual
        self.boundary = boundary
        self.total = total
        self.root = root

    def row(self) -> List[float]:
        return [getattr(self, f) for f in self.FIELDS]

    def __repr__(self) -> str:
        return ('total %.6e (misfit %.3e, reg %.3e, pde %.3e, bc %.3e)'
                % (self.total, self.misfit, self.regularizer, self.pde_residual, self.boundary))

class TrainConfig:
    __slots__ = ['epochs', 'batch_size', 'lr', 'beta1', 'beta2', 'eps_adam', 'seed', 'reg',
                 'widths_gamma', 'widths_u', 'gamma_shift', 'log_every', 'checkpoint_every',
                 'steps_per_epoch', 'eps_mag', 'lambda_pde', 'lambda_bc', 'threads']

    def __init__(self, epochs: int = 5000, batch_size: int = 512, lr: float = 1e-3,
                 beta1: float = 0.9, beta2: float = 0.999, eps_adam: float = 1e-8, seed: int = 0,
                 reg: Optional[RegularizerSpec] = None,
                 widths_gamma: Sequence[int] = (2, 32, 32, 32, 1),
                 widths_u: Sequence[int] = (2, 32, 32, 32, 1),
                 gamma_shift: float = 1.0, log_every: int = 100, checkpoint_every: int = 0,
                 steps_per_epoch: Optional[int] = None, eps_mag: float = 1e-12,
                 lambda_pde: float = 1.0, lambda_bc: float = 1.0, threads: int = 1):
        if epochs < 1:
            raise ValueError('epochs must be at least 1')
        if batch_size < 1:
            raise ValueError('batch_size must be at least 1')
        if lr < 0:
            raise ValueError('learning rate must be nonnegative')
        if not (0 <= beta1 < 1 and 0 <= beta2 < 1):
            raise ValueError('adam betas must lie in [0, 1)')
        if not eps_mag > 0:
            raise ValueError('eps_mag must be positive')
        self.epochs = int(epochs)
        self.batch_size = int(batch_size)
        self.lr = float(lr)
        self.beta1 = float(beta1)
        self.beta2 = float(beta2)
        self.eps_adam = float(eps_adam)
        self.seed = int(seed)
        self.reg = reg or RegularizerSpec()
        self.widths_gamma = tuple(widths_gamma)
        self.widths_u = tuple(widths_u)
        self.gamma_shift = float(gamma_shift)
        self.log_every = max(1, int(log_every))
        self.checkpoint_every = int(checkpoint_every)
        self.steps_per_epoch = steps_per_epoch
        self.eps_mag = float(eps_mag)
        self.lambda_pde = float(lambda_pde)
        self.lambda_bc = float(lambda_bc)
        self.threads = max(1, int(threads))

class AdamState:
    __slots__ = ['m', 'v', 't']

    def __init__(self, size: int):
        self.m = np.zeros(size)
        self.v = np.zeros(size)
        self.t = 0

class TrainHistory:
    __slots__ = ['epochs', 'losses', 'wall_times']

    HEADER = ['epoch', 'misfit', 'regularizer', 'pde_residual', 'boundary', 'total']

    def __init__(self):
        self.epochs: List[int] = []
        self.losses: List[LossBreakdown] = []
        self.wall_times: List[float] = []

    def append(self, epoch: int, loss: LossBreakdown, wall_time: float):
        if self.epochs and epoch <= self.epochs[-1]:
            raise ValueError('epoch %d logged after %d' % (epoch, self.epochs[-1]))
        self.epochs.append(epoch)
        self.losses.append(loss)
        self.wall_times.append(wall_time)

    def rows(self):
        for epoch, loss in zip(self.epochs, self.losses):
            yield [str(epoch)] + loss.row()

    def __len__(self) -> int:
        return len(self.epochs)
