"""Genus and extended genus fields of Kummer extensions of F_q(T)."""

from .fq_arith import FieldParams, FqElem, make_field, power_class
from .genus_core import ComponentSpec, ExtensionSpec, analyze_component, bookkeeping
from .kummer_lattice import KummerSubgroup, RadicalGenerator, lattice_of
from .rt_poly import IrreduciblePoly, Poly, enumerate_monic_irreducibles

__all__ = [
    "ComponentSpec",
    "ExtensionSpec",
    "FieldParams",
    "FqElem",
    "IrreduciblePoly",
    "KummerSubgroup",
    "Poly",
    "RadicalGenerator",
    "analyze_component",
    "bookkeeping",
    "enumerate_monic_irreducibles",
    "lattice_of",
    "make_field",
    "power_class",
]
