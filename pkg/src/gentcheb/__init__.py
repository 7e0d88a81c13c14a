"""Generalized Tchebyshev triangulations and the polynomial families they produce."""

from .polynomials import BiPoly, UniPoly
from .simplicial_core import SimplicialComplex
from .templates import Template, TemplateError, validate_template
from .triangulate import SubdivisionPlan, tchebyshev_triangulation
from .tch import TchFamily

__all__ = [
    "BiPoly",
    "SimplicialComplex",
    "SubdivisionPlan",
    "TchFamily",
    "Template",
    "TemplateError",
    "UniPoly",
    "tchebyshev_triangulation",
    "validate_template",
]
__version__ = "0.1.0"
