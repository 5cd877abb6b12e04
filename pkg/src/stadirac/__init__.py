"""Dirac fields as multivectors in the spacetime algebra Cl(1,3)."""

from .algebra import GAMMA, I, ONE, Multivector, geometric_product, grade_project, wedge
from .complexified import ComplexMultivector, DiracFieldValue, J, charge_conjugate
from .errors import ConsistencyError, DomainError, NumericalError

__version__ = "0.1.0"

__all__ = [
    "ComplexMultivector",
    "ConsistencyError",
    "DiracFieldValue",
    "DomainError",
    "GAMMA",
    "I",
    "J",
    "Multivector",
    "NumericalError",
    "ONE",
    "charge_conjugate",
    "geometric_product",
    "grade_project",
    "wedge",
]
