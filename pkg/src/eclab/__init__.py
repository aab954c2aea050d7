"""Exact arithmetic on projective elliptic curve models, with operation counts."""
from .ffield import (
    BinaryField,
    CountingContext,
    FieldElement,
    OpCounter,
    PrimeField,
    SeedStream,
    field_from_selector,
)

__all__ = [
    "BinaryField",
    "CountingContext",
    "FieldElement",
    "OpCounter",
    "PrimeField",
    "SeedStream",
    "field_from_selector",
]
__version__ = "0.1.0"
