"""chartwist: exact character tables, rigid semirings, table isomorphisms,
and Drinfel'd twists of finite group algebras."""

from .config import Config, DEFAULT
from .cyclotomic import Cyclotomic, cyc, zeta

__all__ = ["Config", "DEFAULT", "Cyclotomic", "cyc", "zeta"]
__version__ = "0.1.0"
