"""Finite permutation groups, automorphisms and saturated fusion systems."""

from .config import CAPS, Caps, caps
from .perm import Perm, PermGroup, perm_parse, perm_print

__all__ = ["CAPS", "Caps", "caps", "Perm", "PermGroup", "perm_parse", "perm_print"]
__version__ = "0.1.0"
