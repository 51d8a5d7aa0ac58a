"""Exact verification of Lie-like multi-bracket algebras and superalgebras."""

from liekit.algebra import Kind, MultiAlgebra
from liekit.axioms import verify
from liekit.config import get_settings
from liekit.field import FieldSpec
from utils.logging import setup_logging

__version__ = "0.1.0"

setup_logging()

__all__ = ["FieldSpec", "Kind", "MultiAlgebra", "get_settings", "setup_logging", "verify", "__version__"]
