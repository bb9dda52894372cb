__all__ = ['tape']
from . import tape
