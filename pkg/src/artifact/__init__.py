"""Finite computational algebra for crossed modules, PB groupoids and bundle gerbes."""
from .algebra import FiniteGroup, GroupAction, GroupHom
from .groupoid import FiniteGroupoid, GroupoidFunctor
from .report import ValidationReport
from .twogroup import CrossedModule, TwoGroup

__all__ = ["FiniteGroup", "GroupAction", "GroupHom", "FiniteGroupoid", "GroupoidFunctor",
           "ValidationReport", "CrossedModule", "TwoGroup"]
__version__ = "0.1.0"
