"""Symmetry-adapted tensor-operator bases and droplet visualization tools."""

__version__ = "0.1.0"

from .spincore import HalfInteger, Operator, SpinSystem, half, hs_inner, tensor_product

__all__ = [
    "HalfInteger",
    "Operator",
    "SpinSystem",
    "half",
    "hs_inner",
    "tensor_product",
    "__version__",
]
