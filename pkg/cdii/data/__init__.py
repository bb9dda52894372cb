__all__ = ['conductivity', 'sampling', 'dataset']
from . import conductivity, sampling, dataset
