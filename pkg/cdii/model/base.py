import enum

class BinaryOp(enum.Enum):
    ADD = 'add'
    SUB = 'sub'
    MUL = 'mul'
    DIV = 'div'

class UnaryOp(enum.Enum):
    TANH = 'tanh'
    SQUARE = 'square'
    SQRT = 'sqrt'
    NEG = 'neg'

class ExampleKind(enum.Enum):
    FOUR_MODE = 'four_mode'
    DISCONTINUOUS = 'discontinuous'
    DISJOINT_MODES = 'disjoint_modes'
    CUSTOM = 'custom'

class NoiseKind(enum.Enum):
    ADDITIVE = 'additive'
    MULTIPLICATIVE = 'multiplicative'

class RegularizerKind(enum.Enum):
    NONE = 'none'
    L2 = 'l2'
    TV_HUBER = 'tv_huber'

class GammaOutput(enum.Enum):
    RAW = 'raw'
    SHIFT = 'shift'
