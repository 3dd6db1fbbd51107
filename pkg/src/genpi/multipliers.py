"""Multiplier algebras: pairs (R, L) of right/left multiplication-like
operators, the canonical embedding of an algebra into its multipliers,
the inner ideal, and permutability.

A multiplier of A is (R, L) with R(ab) = aR(b), L(ab) = L(a)b and
R(a)b = aL(b) for all a, b; the full multiplier algebra is the solution
space of this homogeneous linear system over operator pairs.  The product
composes the R components in the opposite order:
(R1, L1) * (R2, L2) = (R2 R1, L1 L2), with unit (id, id).
"""

from __future__ import annotations

from fractions import Fraction

from .algebras import AlgElement, LinOp, StructureAlgebra
from .errors import DimensionMismatch, InternalError
from .linalg import IntRowEchelon, RatMatrix, Subspace, _row_to_int, solve_right

_ZERO = Fraction(0)
_ONE = Fraction(1)

# constraint family tags used in witnesses
RIGHT_LAW = "R(ab)=aR(b)"
LEFT_LAW = "L(ab)=L(a)b"
LINK_LAW = "R(a)b=aL(b)"


class Multiplier:
    """An operator pair (R, L) on a fixed algebra."""

    __slots__ = ("parent", "R", "L")

    def __init__(self, parent: StructureAlgebra, R: LinOp, L: LinOp):
        if R.dim != parent.dim or L.dim != parent.dim:
            raise DimensionMismatch("operator size does not match algebra dimension")
        self.parent = parent
        self.R = R
        self.L = L

    @classmethod
    def identity(cls, parent) -> "Multiplier":
        return cls(parent, LinOp.identity(parent.dim), LinOp.identity(parent.dim))

    @classmethod
    def inner(cls, a: AlgElement) -> "Multiplier":
        A = a.parent
        return cls(A, LinOp(A.right_mult_matrix(a.coords)), LinOp(A.left_mult_matrix(a.coords)))

    def mul(self, other: "Multiplier") -> "Multiplier":
        """(R1,L1)(R2,L2) = (R2 R1, L1 L2): R composes oppositely."""
        return Multiplier(self.parent, other.R.compose(self.R), self.L.compose(other.L))

    def add(self, other: "Multiplier") -> "Multiplier":
        return Multiplier(self.parent, self.R.add(other.R), self.L.add(other.L))

    def scale(self, c) -> "Multiplier":
        return Multiplier(self.parent, self.R.scale(c), self.L.scale(c))

    def flatten(self):
        """Coordinates in operator-pair space: R row-major, then L."""
        return self.R.flatten() + self.L.flatten()

    def is_zero(self):
        return self.R.is_zero() and self.L.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, Multiplier)
            and self.parent is other.parent
            and self.R == other.R
            and self.L == other.L
        )

    def __repr__(self):
        return f"<multiplier pair on dim {self.parent.dim}>"


def multiplier_violation(A: StructureAlgebra, R: LinOp, L: LinOp):
    """First violated constraint as (law, i, j) in basis-label order, or
    None when (R, L) is a multiplier."""
    if R.dim != A.dim or L.dim != A.dim:
        raise DimensionMismatch("operator size does not match algebra dimension")
    for i in range(A.dim):
        for j in range(A.dim):
            prod = A.multiply_coords(A._unit_vec(i), A._unit_vec(j))
            bi = A._unit_vec(i)
            bj = A._unit_vec(j)
            if R.apply(prod) != A.multiply_coords(bi, R.apply(bj)):
                return (RIGHT_LAW, i, j)
            if L.apply(prod) != A.multiply_coords(L.apply(bi), bj):
                return (LEFT_LAW, i, j)
            if A.multiply_coords(R.apply(bi), bj) != A.multiply_coords(bi, L.apply(bj)):
                return (LINK_LAW, i, j)
    return None


def is_multiplier(A: StructureAlgebra, R: LinOp, L: LinOp) -> bool:
    return multiplier_violation(A, R, L) is None


def _constraint_matrix(A: StructureAlgebra) -> RatMatrix:
    """Homogeneous system whose right kernel is the multiplier pair space.

    Unknowns: R[m,k] at m*d+k, then L[m,k] at d*d + m*d + k.
    """
    d = A.dim
    Lmats = [A.left_mult_matrix(A._unit_vec(i)) for i in range(d)]
    Rmats = [A.right_mult_matrix(A._unit_vec(i)) for i in range(d)]
    rows = []
    for i in range(d):
        for j in range(d):
            prod = A.multiply_coords(A._unit_vec(i), A._unit_vec(j))
            for r in range(d):
                # R(b_i b_j) - b_i R(b_j) = 0
                row: dict = {}
                for k, c in enumerate(prod):
                    if c:
                        row[r * d + k] = row.get(r * d + k, _ZERO) + c
                for m in range(d):
                    c = Lmats[i].entry(r, m)
                    if c:
                        row[m * d + j] = row.get(m * d + j, _ZERO) - c
                rows.append({k: v for k, v in row.items() if v != 0})
                # L(b_i b_j) - L(b_i) b_j = 0
                row = {}
                for k, c in enumerate(prod):
                    if c:
                        row[d * d + r * d + k] = row.get(d * d + r * d + k, _ZERO) + c
                for m in range(d):
                    c = Rmats[j].entry(r, m)
                    if c:
                        row[d * d + m * d + i] = row.get(d * d + m * d + i, _ZERO) - c
                rows.append({k: v for k, v in row.items() if v != 0})
                # R(b_i) b_j - b_i L(b_j) = 0
                row = {}
                for m in range(d):
                    c = Rmats[j].entry(r, m)
                    if c:
                        row[m * d + i] = row.get(m * d + i, _ZERO) + c
                for m in range(d):
                    c = Lmats[i].entry(r, m)
                    if c:
                        row[d * d + m * d + j] = row.get(d * d + m * d + j, _ZERO) - c
                rows.append({k: v for k, v in row.items() if v != 0})
    return RatMatrix(3 * d * d * d if d else 0, 2 * d * d, rows)


def _unflatten(A: StructureAlgebra, vec) -> Multiplier:
    d = A.dim
    Rrows = [{j: vec[m * d + j] for j in range(d) if vec[m * d + j] != 0} for m in range(d)]
    Lrows = [
        {j: vec[d * d + m * d + j] for j in range(d) if vec[d * d + m * d + j] != 0}
        for m in range(d)
    ]
    return Multiplier(A, LinOp(RatMatrix(d, d, Rrows)), LinOp(RatMatrix(d, d, Lrows)))


class MultiplierAlgebra:
    """The full multiplier algebra M(A) with a canonical basis.

    The basis is the reduced-echelon basis of the constraint solution space
    in operator-pair coordinates, so it is deterministic; the product table
    is verified to close exactly over the basis.
    """

    def __init__(self, parent: StructureAlgebra):
        self.parent = parent
        d = parent.dim
        sols = _constraint_matrix(parent).right_kernel_basis()
        self.basis = [_unflatten(parent, list(v)) for v in sols.basis]
        self.pair_space = sols  # Subspace of Q^(2 d^2)
        self._ech = IntRowEchelon()
        for v in sols.basis:
            self._ech.add_row(_row_to_int({i: x for i, x in enumerate(v) if x != 0}))
        self._basis_matrix = RatMatrix.from_rows(
            [[v[r] for v in sols.basis] for r in range(2 * d * d)]
        ) if self.basis else RatMatrix.zeros(2 * d * d, 0)
        self.unit_coords = self.coordinates(Multiplier.identity(parent))
        if self.unit_coords is None:
            raise InternalError("identity pair is not a multiplier")
        self.product_table = {}
        for i, mi in enumerate(self.basis):
            for j, mj in enumerate(self.basis):
                coords = self.coordinates(mi.mul(mj))
                if coords is None:
                    raise InternalError(
                        f"multiplier product of basis pairs {i},{j} left the solution space"
                    )
                self.product_table[(i, j)] = coords

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, m: Multiplier):
        """Coordinates of a pair in the canonical basis, or None."""
        return solve_right(self._basis_matrix, m.flatten())

    def contains(self, m: Multiplier) -> bool:
        return self.coordinates(m) is not None

    def as_structure_algebra(self) -> StructureAlgebra:
        table = {}
        for (i, j), coords in self.product_table.items():
            terms = [(k, c) for k, c in enumerate(coords) if c != 0]
            if terms:
                table[(i, j)] = terms
        return StructureAlgebra(
            self.dim,
            [f"m{i}" for i in range(self.dim)],
            table,
            unit=self.unit_coords,
            name=f"M({self.parent.name or 'A'})",
        )


def multiplier_algebra(A: StructureAlgebra) -> MultiplierAlgebra:
    return MultiplierAlgebra(A)


def inner_multiplier_map(A: StructureAlgebra, MA: MultiplierAlgebra | None = None):
    """The canonical map m -> (R_m, L_m) into M(A).

    Returns (matrix, kernel, injective, surjective): matrix columns are the
    images of the basis of A in the canonical M(A) basis, kernel is
    {m : R_m = L_m = 0} as a subspace of A.
    """
    if MA is None:
        MA = multiplier_algebra(A)
    cols = []
    for i in range(A.dim):
        m = Multiplier.inner(A.basis_element(i))
        coords = MA.coordinates(m)
        if coords is None:
            raise InternalError("inner pair is not in the multiplier algebra")
        cols.append(coords)
    matrix = RatMatrix.from_rows(
        [[cols[j][r] for j in range(A.dim)] for r in range(MA.dim)]
    ) if A.dim else RatMatrix.zeros(MA.dim, 0)
    kernel = matrix.right_kernel_basis() if A.dim else Subspace.zero(0)
    rank = matrix.rank()
    return matrix, kernel, kernel.dim == 0, rank == MA.dim


def inner_ideal_check(A: StructureAlgebra, MA: MultiplierAlgebra | None = None):
    """True iff the image of the canonical map is a two-sided ideal of
    M(A); returns (bool, witness) with witness (basis_index, alg_index,
    side) on failure."""
    if MA is None:
        MA = multiplier_algebra(A)
    inner_ech = IntRowEchelon()
    inners = []
    for i in range(A.dim):
        m = Multiplier.inner(A.basis_element(i))
        inners.append(m)
        inner_ech.add_row(_row_to_int({k: x for k, x in enumerate(m.flatten()) if x != 0}))
    for bi, psi in enumerate(MA.basis):
        for ai, mu in enumerate(inners):
            for side, prod in (("left", psi.mul(mu)), ("right", mu.mul(psi))):
                row = _row_to_int({k: x for k, x in enumerate(prod.flatten()) if x != 0})
                if not inner_ech.contains_row(row):
                    return False, (bi, ai, side)
    return True, None


def permutability_check(A: StructureAlgebra, MA: MultiplierAlgebra | None = None):
    """True iff R' L = L R' for all basis pairs (R,L), (R',L') of M(A);
    witness is the first failing basis index pair."""
    if MA is None:
        MA = multiplier_algebra(A)
    for i, mi in enumerate(MA.basis):
        for j, mj in enumerate(MA.basis):
            if mj.R.compose(mi.L) != mi.L.compose(mj.R):
                return False, (i, j)
    return True, None
