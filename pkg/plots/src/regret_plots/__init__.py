"""Publication-style figures from the bandit harness CSV files.

The only interface to the simulation package is its documented CSV output;
nothing here recomputes algorithms or touches an RNG.
"""

from .figures import KINDS, FigureSpec, render
from .schemas import SchemaError, read_table

__version__ = "0.1.0"

__all__ = ["KINDS", "FigureSpec", "render", "SchemaError", "read_table", "__version__"]
