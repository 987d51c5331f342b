"""Graded multiplicities in minimal tilting complexes.

Symbolic engine for ordinary, parabolic and inverse Kazhdan-Lusztig
polynomials of finite and affine Weyl groups, closed formulas for the graded
multiplicities of indecomposable tilting objects in minimal tilting complexes
of standard and simple objects (category O, affine Kac-Moody categories at
negative and positive level, quantum groups at roots of unity), and an exact
homological oracle on a quiver presentation of a regular block that verifies
the formulas from first principles.
"""

from .laurent import LaurentPoly, EmptySupportError

__version__ = "0.1.0"

__all__ = ["LaurentPoly", "EmptySupportError", "__version__"]
