"""Exact computations around Lie algebras of generalized Jacobi matrices of types B, C and D.

Modules: ``algebra`` (involutive algebras), ``jmat`` (banded Z x Z matrices),
``lie`` (finite classical Lie algebras over R), ``cecomplex`` (Lie algebra
homology), ``dihedral`` (Hochschild, cyclic and dihedral homology),
``ftiso`` (block isomorphisms), ``shiftmap``, ``cocycle`` and ``fock``.
"""

from .algebra import CATALOG_NAMES, InvolutiveAlgebra, catalog, load_algebra
from .jmat import JMat

__version__ = "0.1.0"

__all__ = ["CATALOG_NAMES", "InvolutiveAlgebra", "JMat", "catalog", "load_algebra", "__version__"]
