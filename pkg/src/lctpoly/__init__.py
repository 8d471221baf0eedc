"""Exact LCT-polytope computations, derived coefficient sets and polytope chains."""

from lctpoly.errors import LctpolyError, PreconditionError, SchemaError

__version__ = "0.1.0"

__all__ = ["LctpolyError", "PreconditionError", "SchemaError", "__version__"]
