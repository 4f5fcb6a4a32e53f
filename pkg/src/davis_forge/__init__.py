"""Finite Davis-complex quotients, equivariant flag complexes and exact homology."""

from .errors import CapExceeded, DavisForgeError, InputError, VerificationError

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "DavisForgeError",
    "InputError",
    "VerificationError",
]
