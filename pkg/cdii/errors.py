"""
Exceptions raised by the library. Each one carries the context needed
to report it and an exit code used by the command line.
"""

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

class CdiiError(Exception):
    exit_code = 1

class TapeError(CdiiError):
    exit_code = EXIT_NUMERICAL

    def __init__(self, message: str, node: int):
        super().__init__('%s (node %d)' % (message, node))
        self.node = node

class DegenerateConductivity(CdiiError):
    exit_code = EXIT_NUMERICAL

    def __init__(self, i: int, j: int, value: float):
        super().__init__('conductivity %r at node (%d, %d) is not positive' % (value, i, j))
        self.i = i
        self.j = j
        self.value = value

class SolverDiverged(CdiiError):
    exit_code = EXIT_NUMERICAL

    def __init__(self, iterations: int, residual: float):
        super().__init__('conjugate gradient stopped after %d iterations, relative residual %.3e'
                         % (iterations, residual))
        self.iterations = iterations
        self.residual = residual

class OptimizerAbort(CdiiError):
    exit_code = EXIT_NUMERICAL

    def __init__(self, epoch, index: int, value: float, reason: str = None):
        reason = reason or 'non-finite gradient %r for parameter %d' % (value, index)
        super().__init__('%s at epoch %s' % (reason, epoch))
        self.epoch = epoch
        self.index = index
        self.value = value

class ConfigError(CdiiError):
    exit_code = EXIT_CONFIG

    def __init__(self, path: str, message: str):
        super().__init__('%s: %s' % (path, message))
        self.path = path
        self.message = message

class SchemaError(CdiiError):
    exit_code = EXIT_IO

    def __init__(self, path, line: int, message: str):
        super().__init__('%s:%d: %s' % (path, line, message))
        self.path = path
        self.line = line
        self.message = message

class DomainError(CdiiError):
    exit_code = EXIT_NUMERICAL

    def __init__(self, point):
        super().__init__('point %r lies outside the unit square' % (tuple(point),))
        self.point = point
