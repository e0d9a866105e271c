"""Computer algebra for the mod-2 Steenrod algebra and its applications.

Modules by topic:

    f2         exact linear and polynomial algebra over the two-element field
    algebra    the Steenrod algebra in the admissible basis
    dual       the Milnor dual, the pairing, sub-Hopf algebras
    action     Steenrod actions on presented polynomial rings
    modules    finite A(1)- and E(1)-modules, Margolis homology, stable types
    charclass  Stiefel-Whitney symmetric functions and primitives
    bundles    the two homogeneous-space bundles and fiber integration
    verify     the named verification suites
    cli        the command-line front end
"""

from .algebra import SteenrodElement, basis, parse_element
from .dual import DualElement, milnor_primitive, pair, parse_dual
from .f2 import F2Matrix, F2Poly, F2Vector, PoincareSeries, WeightedPolyRing

__all__ = [
    "SteenrodElement",
    "DualElement",
    "F2Matrix",
    "F2Poly",
    "F2Vector",
    "PoincareSeries",
    "WeightedPolyRing",
    "basis",
    "milnor_primitive",
    "pair",
    "parse_dual",
    "parse_element",
]

__version__ = "0.1.0"
