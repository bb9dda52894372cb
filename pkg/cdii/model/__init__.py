__all__ = ['base', 'field', 'data', 'training']
from . import base, field, data, training
