"""
Network sizes and convergence rate prescribed by the error analysis, as a
function of the sample count n, dimension d, smoothness s and slack mu:

    S    = n^(1 / (6 (4d+s+1) L))
    B    = n^((s+7d) / (3d (4d+s+1) L))
    rate = n^(-(s-mu) / (7d (4d+s+1) L)),      L = ln^3(d+s+1)

Depth is a constant depending on (d, s, mu) only and is left unspecified.
"""
import logging
import math
from typing import Iterable, List, Tuple

log = logging.getLogger(__name__)

DEPTH_NOTE = 'depth D = C(d, s, mu, U): independent of n, constant not specified'

class SizingInput:
    __slots__ = ['n', 'd', 's', 'mu']

    def __init__(self, n: float, d: int = 2, s: float = 1, mu: float = 0.5):
        if n < 1 or d < 1 or s < 1:
            raise ValueError('n, d and s must be at least 1')
        if mu <= 0:
            raise ValueError('mu must be positive')
        self.n = n
        self.d = d
        self.s = s
        self.mu = mu

class SizingOutput:
    __slots__ = ['S', 'B', 'D_note', 'rate_exponent']

    def __init__(self, S: float, B: float, D_note: str, rate_exponent: float):
        self.S = S
        self.B = B
        self.D_note = D_note
        self.rate_exponent = rate_exponent

    def to_dict(self) -> dict:
        return {'S': self.S, 'B': self.B, 'D': self.D_note, 'rate_exponent': self.rate_exponent,
                'log_base': 'natural'}

    def __repr__(self) -> str:
        return 'S=%g B=%g rate=n^%g' % (self.S, self.B, self.rate_exponent)

def _exponents(d, s, mu):
    common = (4 * d + s + 1) * math.log(d + s + 1) ** 3
    return 1.0 / (6 * common), (s + 7 * d) / (3 * d * common), -(s - mu) / (7 * d * common)

def prescribe(inp: SizingInput) -> SizingOutput:
    e_s, e_b, e_rate = _exponents(inp.d, inp.s, inp.mu)
    if inp.s <= inp.mu:
        log.warning('s=%g <= mu=%g: the rate exponent %g is not negative, the bound is vacuous',
                    inp.s, inp.mu, e_rate)
    return SizingOutput(inp.n ** e_s, inp.n ** e_b, DEPTH_NOTE, e_rate)

def rate_curve(inp: SizingInput, ns: Iterable[float]) -> List[Tuple[float, float]]:
    """Predicted excess-risk scale n^rate for each n (the constant is dropped)."""
    _, _, e_rate = _exponents(inp.d, inp.s, inp.mu)
    return [(n, n ** e_rate) for n in ns]
