"""Co-rank and first Betti number calculus for connected sums and products of manifolds."""

from .expr import (
    ConnSum,
    Harvey,
    InvalidExpression,
    NonorientableSurface,
    OrientableSurface,
    ParseError,
    Point,
    Product,
    Sphere,
    normalize,
    parse,
    render,
    validate,
)
from .foliation import FoliationKind, FoliationTarget, Verdict, compare_bounds, feasible_foliation, plan
from .invariants import InvariantRecord, invariants, surface_canonical
from .presentation import betti_from_presentation, presentation_of, smith_normal_form
from .synth import SynthesisTarget, construct, feasible

__version__ = "0.1.0"
