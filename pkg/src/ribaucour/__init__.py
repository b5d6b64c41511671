"""Discrete R-congruences and their Ribaucour families in Lie sphere geometry."""

from .backend import BACKEND
from .config import DEFAULT, Tolerances

__version__ = "0.1.0"

__all__ = ["BACKEND", "DEFAULT", "Tolerances", "__version__"]
