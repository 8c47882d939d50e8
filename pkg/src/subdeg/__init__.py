"""subdeg: exact subgroup-degree functions of finite groups.

Two independent computation routes with a shared exact-rational value type:
a closed-form catalog (:mod:`subdeg.formulas`) and a brute-force subgroup
lattice census over concrete Cayley tables (:mod:`subdeg.groupcore`), plus a
greedy density explorer for cyclicity-degree products (:mod:`subdeg.density`).
"""

from .errors import (
    DomainError,
    ResourceLimitError,
    SpecSyntaxError,
    SubdegError,
    TableFormatError,
)
from .numtheory import ExactRational

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "ExactRational",
    "ResourceLimitError",
    "SpecSyntaxError",
    "SubdegError",
    "TableFormatError",
    "__version__",
]
