from fractions import Fraction

from .errors import (
    AxiomError,
    InputError,
    InternalError,
    ResourceError,
    StructuralError,
    ToolkitError,
    UnsupportedError,
)
from .parser import parse_poly, parse_variables
from .poly import (
    Poly,
    PowerSeries,
    format_rational,
    poly_arith,
    poly_order,
    poly_order_in,
    substitute,
    to_fraction,
)

Rat = Fraction
