"""Exact computations for Curtis-Tits amalgams with twisted edges.

The library works with the torus ``(F_q^*)^n`` written additively as
``(Z/(q-1))^n``: central torus elements are the kernel of a generalized
Cartan operator, and the fixed-point condition for non-orientable twists is
a quotient of subgroups of the double-cover torus.
"""

from .amalgam import AmalgamSpec, ZVectorSpace, closure, decide, injects_into_completion
from .cartan import build_cartan, center_report, kernel
from .covering import build_double_cover, lift_omega
from .diagram import Diagram, Partition, sim0, spanning_tree, validate
from .errors import CTError, PreconditionError, SpecError
from .fixed_points import condition_D_quotient
from .specfile import load_spec, parse_spec
from .torus import TorusSubgroup
from .twist import FieldSpec, Twist, parse_twist

__version__ = "0.1.0"

__all__ = [
    "AmalgamSpec",
    "CTError",
    "Diagram",
    "FieldSpec",
    "Partition",
    "PreconditionError",
    "SpecError",
    "TorusSubgroup",
    "Twist",
    "ZVectorSpace",
    "build_cartan",
    "build_double_cover",
    "center_report",
    "closure",
    "condition_D_quotient",
    "decide",
    "injects_into_completion",
    "kernel",
    "lift_omega",
    "load_spec",
    "parse_spec",
    "parse_twist",
    "sim0",
    "spanning_tree",
    "validate",
]
