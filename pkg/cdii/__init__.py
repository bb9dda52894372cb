__all__ = ['autodiff', 'network', 'solver', 'data', 'model', 'loss', 'trainer', 'sizing', 'report', 'config',
           'common', 'errors']
from . import autodiff, network, solver, data, model, loss, trainer, sizing, report, config, common, errors
