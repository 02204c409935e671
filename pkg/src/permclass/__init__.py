"""Pattern machinery, enumeration, word codec and generating functions for
the permutation class Av(4231, 35142, 42513, 351624)."""

from .perm import (
    DEFAULT_BASIS,
    PatternSet,
    Perm,
    avoids_all,
    contains,
    decompose,
    extreme_pattern,
    inflate,
    inverse,
    is_simple,
    parse_perm,
    pattern_of,
    reverse_complement,
)

__version__ = "0.1.0"
