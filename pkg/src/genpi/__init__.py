"""genpi: exact computation with finite-dimensional algebras carrying
coefficient-algebra actions given by multiplier pairs.

Core surfaces: exact rational linear algebra, structure-constant algebras,
multiplier algebras, Wedderburn-Malcev structure theory, actions and
semidirect products, generalized polynomials and the codimension engine.
"""

from .linalg import RatMatrix, Subspace, rank, left_kernel_basis, subspace_ops

__version__ = "0.1.0"

__all__ = [
    "RatMatrix",
    "Subspace",
    "rank",
    "left_kernel_basis",
    "subspace_ops",
    "__version__",
]
