"""Exact integer Caratheodory decomposition over totally unimodular systems.

Solves monoid membership/decomposition for ``S = {x in Z^d : Ax <= b}`` with
``A`` totally unimodular, and the huge-count applications built on it, where
the number of layers, consumers or bricks is binary-encoded.  Every positive answer is a
compact multiplicity certificate that can be re-checked with integer
arithmetic alone.
"""

from .errors import (
    CapExceeded,
    IntegralityViolation,
    UnicaraError,
    UnsupportedUnboundedInput,
    UsageError,
)
from .polyhedron import HPolyhedron
from .monoid import (
    MonoidCertificate,
    NotInMonoid,
    decompose_multiple,
    monoid_decompose,
    monoid_decompose_projection,
)
from .tables import HugeTableInstance, LayerType, solve_huge_table

__all__ = [
    "CapExceeded",
    "HPolyhedron",
    "HugeTableInstance",
    "IntegralityViolation",
    "LayerType",
    "MonoidCertificate",
    "NotInMonoid",
    "UnicaraError",
    "UnsupportedUnboundedInput",
    "UsageError",
    "decompose_multiple",
    "monoid_decompose",
    "monoid_decompose_projection",
    "solve_huge_table",
]

__version__ = "0.1.0"
