"""Exact group rings, factor systems and crossed products, with brute-force
oracles for the Kaplansky conjectures on small windows."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:
    __version__ = "0.1.0"

from .crossed_product import CrossedProductElement, cp_mul, cp_phi, cp_phi_inv
from .factor_systems import FactorSystem, lift_to_crossed_system, validate_factor_system
from .group_ring import GroupRingElement
from .groups import ExtensionGroup, FiniteCyclic, FreeAbelian, heisenberg_central, heisenberg_semidirect
from .scalars import Cyc

__all__ = [
    "CrossedProductElement",
    "Cyc",
    "ExtensionGroup",
    "FactorSystem",
    "FiniteCyclic",
    "FreeAbelian",
    "GroupRingElement",
    "cp_mul",
    "cp_phi",
    "cp_phi_inv",
    "heisenberg_central",
    "heisenberg_semidirect",
    "lift_to_crossed_system",
    "validate_factor_system",
]
