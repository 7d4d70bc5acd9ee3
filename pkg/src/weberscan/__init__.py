"""Scanner for the p-torsion and genus parts of the layers of cyclotomic Z_l-extensions."""
from __future__ import annotations

from .kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
