"""Exact finite-dimensional verification of heaps, herds, torsors and Hopf monoids."""

from . import coalg, kernels, linalg, reconstruct, setcore, tannaka, vflock
from .coalg import Bimonoid, Comonoid, Herd, HopfMonoid, Monoid
from .linalg import RatMat
from .report import Check, CheckReport
from .setcore import GroupTable, HeapTable

__version__ = "0.1.0"

__all__ = [
    "Bimonoid",
    "Check",
    "CheckReport",
    "Comonoid",
    "GroupTable",
    "HeapTable",
    "Herd",
    "HopfMonoid",
    "Monoid",
    "RatMat",
    "coalg",
    "kernels",
    "linalg",
    "reconstruct",
    "setcore",
    "tannaka",
    "vflock",
]
