__all__ = ['grid', 'fd']
from . import grid, fd
