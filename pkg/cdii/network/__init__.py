__all__ = ['params', 'mlp', 'numeric', 'checkpoint']
from . import params, mlp, numeric, checkpoint
