"""Exact construction and verification of BC-graded Lie algebras from coordinate quadruples."""
from .coords import catalog, catalog_names, validate_quadruple
from .errors import RootGradeError

__all__ = ["catalog", "catalog_names", "validate_quadruple", "RootGradeError"]
__version__ = "0.1.0"
