"""Finite-dimensional associative algebras given by structure constants.

An algebra is a labelled basis b_0..b_{d-1} with a sparse product table
b_i b_j = sum_k c_ijk b_k over exact rationals, plus an optional unit
vector.  Product tables may be given explicitly or as a rule computed on
demand (used by the larger Grassmann algebras, where the dense table would
dominate memory).

Associativity is checked exhaustively over basis triples up to dimension
EXHAUSTIVE_DIM and by seeded random triples beyond that; unit axioms are
always checked exhaustively.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from itertools import combinations

from .errors import (
    BadUnit,
    DimensionMismatch,
    NotAssociative,
    NotClosed,
    ParentMismatch,
    UnsupportedName,
)
from .linalg import IntRowEchelon, RatMatrix, Subspace, rat, solve_right, _row_to_int

# Largest dimension for which associativity is verified on every basis
# triple; beyond it (Grassmann truncations) a seeded random sample is used.
EXHAUSTIVE_DIM = 64
_RANDOM_TRIPLES = 2000
_ZERO = Fraction(0)
_ONE = Fraction(1)


class StructureAlgebra:
    """Associative algebra over Q with a distinguished basis."""

    def __init__(self, dim, labels, products, unit=None, *, validate=True, name=None):
        if dim < 0:
            raise DimensionMismatch("negative dimension")
        if len(labels) != dim:
            raise DimensionMismatch("label count != dim")
        self.dim = dim
        self.labels = list(labels)
        self.name = name
        if callable(products):
            self._rule = products
            self._table: dict = {}
        else:
            self._rule = None
            self._table = {
                key: tuple((k, rat(v)) for k, v in terms if rat(v) != 0)
                for key, terms in products.items()
            }
            self._table = {key: t for key, t in self._table.items() if t}
        self.unit = tuple(rat(x) for x in unit) if unit is not None else None
        if self.unit is not None and len(self.unit) != dim:
            raise DimensionMismatch("unit vector length != dim")
        if validate:
            self.validate()

    # -- products ----------------------------------------------------------

    def product_basis(self, i: int, j: int):
        """b_i * b_j as a tuple of (k, coeff) pairs."""
        key = (i, j)
        hit = self._table.get(key)
        if hit is None and self._rule is not None:
            hit = tuple((k, rat(v)) for k, v in self._rule(i, j) if rat(v) != 0)
            self._table[key] = hit
        return hit or ()

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        for kk, v in self.product_basis(i, j):
            if kk == k:
                return v
        return _ZERO

    def multiply_coords(self, u, v):
        out = [_ZERO] * self.dim
        for i, ci in enumerate(u):
            if ci == 0:
                continue
            for j, cj in enumerate(v):
                if cj == 0:
                    continue
                c = ci * cj
                for k, w in self.product_basis(i, j):
                    out[k] += c * w
        return out

    def iter_nonzero_constants(self):
        for i in range(self.dim):
            for j in range(self.dim):
                for k, v in self.product_basis(i, j):
                    yield i, j, k, v

    # -- elements ----------------------------------------------------------

    def element(self, coords) -> "AlgElement":
        coords = tuple(rat(x) for x in coords)
        if len(coords) != self.dim:
            raise DimensionMismatch("coordinate length != dim")
        return AlgElement(self, coords)

    def basis_element(self, i: int) -> "AlgElement":
        return AlgElement(self, tuple(_ONE if k == i else _ZERO for k in range(self.dim)))

    def basis_elements(self):
        return [self.basis_element(i) for i in range(self.dim)]

    def zero(self) -> "AlgElement":
        return AlgElement(self, (_ZERO,) * self.dim)

    def unit_element(self) -> "AlgElement":
        if self.unit is None:
            raise BadUnit(-1)
        return AlgElement(self, self.unit)

    def describe(self, coords) -> str:
        terms = []
        for i, c in enumerate(coords):
            if c == 0:
                continue
            if c == 1:
                terms.append(self.labels[i])
            elif c == -1:
                terms.append("-" + self.labels[i])
            else:
                terms.append(f"{c}*{self.labels[i]}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    # -- validation --------------------------------------------------------

    def validate(self):
        triples = None
        if self.dim <= EXHAUSTIVE_DIM:
            triples = (
                (i, j, k)
                for i in range(self.dim)
                for j in range(self.dim)
                for k in range(self.dim)
            )
        else:
            rng = random.Random(0xA55)
            triples = (
                (rng.randrange(self.dim), rng.randrange(self.dim), rng.randrange(self.dim))
                for _ in range(_RANDOM_TRIPLES)
            )
        for i, j, k in triples:
            left = {}
            for m, v in self.product_basis(i, j):
                for n, w in self.product_basis(m, k):
                    left[n] = left.get(n, _ZERO) + v * w
            right = {}
            for m, v in self.product_basis(j, k):
                for n, w in self.product_basis(i, m):
                    right[n] = right.get(n, _ZERO) + v * w
            left = {n: v for n, v in left.items() if v != 0}
            right = {n: v for n, v in right.items() if v != 0}
            if left != right:
                raise NotAssociative(i, j, k)
        if self.unit is not None:
            for i in range(self.dim):
                e = [_ZERO] * self.dim
                e[i] = _ONE
                if self.multiply_coords(self.unit, e) != e or self.multiply_coords(e, self.unit) != e:
                    raise BadUnit(i)
        return self

    # -- regular representations -------------------------------------------

    def left_mult_matrix(self, coords) -> RatMatrix:
        """Matrix of x -> a*x on coordinate columns."""
        entries = []
        for j in range(self.dim):
            col = self.multiply_coords(coords, self._unit_vec(j))
            for i, v in enumerate(col):
                if v != 0:
                    entries.append((i, j, v))
        return RatMatrix.from_entries(self.dim, self.dim, entries)

    def right_mult_matrix(self, coords) -> RatMatrix:
        """Matrix of x -> x*a on coordinate columns."""
        entries = []
        for j in range(self.dim):
            col = self.multiply_coords(self._unit_vec(j), coords)
            for i, v in enumerate(col):
                if v != 0:
                    entries.append((i, j, v))
        return RatMatrix.from_entries(self.dim, self.dim, entries)

    def _unit_vec(self, i):
        e = [_ZERO] * self.dim
        e[i] = _ONE
        return e

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        sc = [
            [i, j, k, str(v)]
            for i, j, k, v in self.iter_nonzero_constants()
        ]
        return {
            "dim": self.dim,
            "labels": list(self.labels),
            "unit": [str(x) for x in self.unit] if self.unit is not None else None,
            "sc": sc,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "StructureAlgebra":
        dim = data["dim"]
        table: dict = {}
        for i, j, k, v in data["sc"]:
            table.setdefault((i, j), []).append((k, rat(v)))
        unit = data.get("unit")
        return cls(dim, data["labels"], table, unit=unit)

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh)

    @classmethod
    def load(cls, path) -> "StructureAlgebra":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def __repr__(self):
        nm = self.name or "algebra"
        return f"<{nm}: dim {self.dim}>"


class AlgElement:
    """An element of a StructureAlgebra in basis coordinates."""

    __slots__ = ("parent", "coords")

    def __init__(self, parent: StructureAlgebra, coords: tuple):
        self.parent = parent
        self.coords = coords

    def _same_parent(self, other):
        if self.parent is not other.parent:
            raise ParentMismatch("elements of different algebras")

    def __add__(self, other):
        self._same_parent(other)
        return AlgElement(self.parent, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._same_parent(other)
        return AlgElement(self.parent, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            self._same_parent(other)
            return AlgElement(self.parent, tuple(self.parent.multiply_coords(self.coords, other.coords)))
        return AlgElement(self.parent, tuple(a * rat(other) for a in self.coords))

    def __rmul__(self, scalar):
        return AlgElement(self.parent, tuple(rat(scalar) * a for a in self.coords))

    def __neg__(self):
        return AlgElement(self.parent, tuple(-a for a in self.coords))

    def __eq__(self, other):
        return (
            isinstance(other, AlgElement)
            and self.parent is other.parent
            and self.coords == other.coords
        )

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __repr__(self):
        return f"<{self.parent.describe(self.coords)}>"


class LinOp:
    """A linear operator on an algebra's coordinate space."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: RatMatrix):
        if matrix.nrows != matrix.ncols:
            raise DimensionMismatch("operator matrix must be square")
        self.matrix = matrix

    @classmethod
    def identity(cls, dim):
        return cls(RatMatrix.identity(dim))

    @classmethod
    def zero(cls, dim):
        return cls(RatMatrix.zeros(dim, dim))

    @property
    def dim(self):
        return self.matrix.nrows

    def apply(self, coords):
        return self.matrix.matvec(list(coords))

    def compose(self, other: "LinOp") -> "LinOp":
        """self after other."""
        return LinOp(self.matrix.matmul(other.matrix))

    def add(self, other: "LinOp") -> "LinOp":
        out = [dict(r) for r in self.matrix.iter_rows()]
        for i, r in enumerate(other.matrix.iter_rows()):
            for j, v in r.items():
                nv = out[i].get(j, _ZERO) + v
                if nv:
                    out[i][j] = nv
                else:
                    out[i].pop(j, None)
        return LinOp(RatMatrix(self.dim, self.dim, out))

    def scale(self, c) -> "LinOp":
        c = rat(c)
        return LinOp(
            RatMatrix(self.dim, self.dim, [{j: c * v for j, v in r.items()} for r in self.matrix.iter_rows()] if c else [dict() for _ in range(self.dim)])
        )

    def is_zero(self):
        return self.matrix.is_zero()

    def __eq__(self, other):
        return isinstance(other, LinOp) and self.matrix == other.matrix

    def flatten(self):
        """Row-major entry list of length dim^2 (operator-space coordinates)."""
        out = [_ZERO] * (self.dim * self.dim)
        for i, r in enumerate(self.matrix.iter_rows()):
            for j, v in r.items():
                out[i * self.dim + j] = v
        return out


# -- construction surface ----------------------------------------------------


def construct_algebra(dim, labels, structure_constants, unit=None) -> StructureAlgebra:
    """Build and exhaustively validate an algebra from dense constants
    c[i][j][k] or an iterable of (i, j, k, value) quadruples."""
    table: dict = {}
    if isinstance(structure_constants, (list, tuple)):
        if len(structure_constants) != dim:
            raise DimensionMismatch("structure constants must have shape dim^3")
        for i in range(dim):
            if len(structure_constants[i]) != dim:
                raise DimensionMismatch("structure constants must have shape dim^3")
            for j in range(dim):
                row = structure_constants[i][j]
                if len(row) != dim:
                    raise DimensionMismatch("structure constants must have shape dim^3")
                terms = [(k, rat(v)) for k, v in enumerate(row) if rat(v) != 0]
                if terms:
                    table[(i, j)] = terms
    else:
        for i, j, k, v in structure_constants:
            table.setdefault((i, j), []).append((k, rat(v)))
    return StructureAlgebra(dim, labels, table, unit=unit)


def _matrix_unit_algebra(positions, n, name):
    """Algebra spanned by matrix units e_pq at the given positions."""
    index = {pq: i for i, pq in enumerate(positions)}
    labels = [f"e{p + 1}{q + 1}" for p, q in positions]
    table = {}
    for (a, b), i in index.items():
        for (c, d), j in index.items():
            if b == c:
                k = index.get((a, d))
                if k is None:
                    raise NotClosed(f"matrix-unit set not closed at {(a, b)}x{(c, d)}")
                table[(i, j)] = [(k, _ONE)]
    unit = None
    if all((p, p) in index for p in range(n)):
        u = [_ZERO] * len(positions)
        for p in range(n):
            u[index[(p, p)]] = _ONE
        unit = u
    return StructureAlgebra(len(positions), labels, table, unit=unit, name=name)


def _merge_sign(u: tuple, v: tuple):
    """Concatenate two strictly increasing index words; None if they meet,
    else (sorted word, sign of the merge permutation)."""
    if set(u) & set(v):
        return None
    inv = 0
    for x in u:
        inv += sum(1 for y in v if y < x)
    word = tuple(sorted(u + v))
    return word, (-1) ** inv


def _grassmann_words(m: int, unital: bool):
    words = []
    if unital:
        words.append(())
    for size in range(1, m + 1):
        words.extend(combinations(range(1, m + 1), size))
    return words


def _grassmann_label(word: tuple) -> str:
    if not word:
        return "1"
    if len(word) == 1:
        return f"e{word[0]}"
    return "g{" + ",".join(str(i) for i in word) + "}"


def grassmann_algebra(m: int, unital: bool = True) -> StructureAlgebra:
    """Exterior algebra on m anticommuting generators, basis ordered by
    word length then lexicographically; the empty word (unit) first."""
    if m < 0:
        raise UnsupportedName("grassmann truncation level must be >= 0")
    words = _grassmann_words(m, unital)
    index = {w: i for i, w in enumerate(words)}
    labels = [_grassmann_label(w) for w in words]

    def rule(i, j):
        merged = _merge_sign(words[i], words[j])
        if merged is None:
            return ()
        word, sign = merged
        k = index.get(word)
        if k is None:  # happens only in the non-unital algebra for 1*1
            return ()
        return ((k, Fraction(sign)),)

    unit = None
    if unital:
        u = [_ZERO] * len(words)
        u[0] = _ONE
        unit = u
    name = f"grassmann_unital({m})" if unital else f"grassmann({m})"
    return StructureAlgebra(len(words), labels, rule, unit=unit, name=name)


def builtin(name: str) -> StructureAlgebra:
    """Named constructors: ut(n), mat(n), block_ut(t1,..,tk), grassmann(M),
    grassmann_unital(M), zero_mult(d), diag_D, sub_C.  Accepts ut(2), ut:2
    and plain names."""
    base, args = _parse_name(name)
    if base == "ut":
        (n,) = args
        if n < 1:
            raise UnsupportedName("ut(n) needs n >= 1")
        positions = [(i, i) for i in range(n)]
        positions += sorted(
            ((i, j) for i in range(n) for j in range(i + 1, n)), key=lambda p: (p[1] - p[0], p[0])
        )
        return _matrix_unit_algebra(positions, n, f"ut({n})")
    if base == "mat":
        (n,) = args
        if n < 1:
            raise UnsupportedName("mat(n) needs n >= 1")
        positions = [(i, j) for i in range(n) for j in range(n)]
        return _matrix_unit_algebra(positions, n, f"mat({n})")
    if base == "block_ut":
        if not args or any(t < 1 for t in args):
            raise UnsupportedName("block_ut needs positive block sizes")
        n = sum(args)
        bounds = []
        start = 0
        for t in args:
            bounds.append((start, start + t))
            start += t
        block_of = {}
        for bi, (lo, hi) in enumerate(bounds):
            for p in range(lo, hi):
                block_of[p] = bi
        positions = [(i, i) for i in range(n)]
        positions += sorted(
            (
                (i, j)
                for i in range(n)
                for j in range(n)
                if i != j and block_of[i] <= block_of[j]
            )
        )
        label = ",".join(str(t) for t in args)
        return _matrix_unit_algebra(positions, n, f"block_ut({label})")
    if base == "grassmann":
        (m,) = args
        return grassmann_algebra(m, unital=False)
    if base == "grassmann_unital":
        (m,) = args
        return grassmann_algebra(m, unital=True)
    if base == "zero_mult":
        (d,) = args
        if d < 1:
            raise UnsupportedName("zero_mult(d) needs d >= 1")
        return StructureAlgebra(d, [f"z{i + 1}" for i in range(d)], {}, name=f"zero_mult({d})")
    if base == "diag_d":
        table = {(0, 0): [(0, _ONE)], (0, 1): [(1, _ONE)], (1, 0): [(1, _ONE)], (1, 1): [(1, _ONE)]}
        return StructureAlgebra(2, ["1", "e22"], table, unit=[1, 0], name="diag_D")
    if base == "sub_c":
        table = {(0, 0): [(0, _ONE)], (0, 1): [(1, _ONE)], (1, 0): [(1, _ONE)]}
        return StructureAlgebra(2, ["1", "e12"], table, unit=[1, 0], name="sub_C")
    raise UnsupportedName(f"unknown builtin algebra {name!r}")


def _parse_name(name: str):
    name = name.strip()
    if "(" in name and name.endswith(")"):
        base, rest = name.split("(", 1)
        argstr = rest[:-1]
    elif ":" in name:
        base, argstr = name.split(":", 1)
    else:
        base, argstr = name, ""
    base = base.strip().lower()
    args = tuple(int(a) for a in argstr.split(",") if a.strip()) if argstr.strip() else ()
    return base, args


def load_algebra(spec: str) -> StructureAlgebra:
    """Resolve a CLI-style algebra reference: builtin name or JSON path."""
    if spec.endswith(".json"):
        return StructureAlgebra.load(spec)
    return builtin(spec)


# -- operations ---------------------------------------------------------------


def multiply(a: AlgElement, b: AlgElement) -> AlgElement:
    return a * b


def regular_reps(a: AlgElement):
    """(R_a, L_a): right and left multiplication operators by a."""
    A = a.parent
    return LinOp(A.right_mult_matrix(a.coords)), LinOp(A.left_mult_matrix(a.coords))


def generated_ideal(A: StructureAlgebra, gens) -> Subspace:
    """Smallest subspace containing gens closed under one-sided products
    with all basis elements (closure iteration to a fixed point)."""
    vectors = []
    for g in gens:
        if isinstance(g, AlgElement):
            if g.parent is not A:
                raise ParentMismatch("generator from a different algebra")
            vectors.append(list(g.coords))
        else:
            vectors.append([rat(x) for x in g])
    ech = IntRowEchelon()
    work = []
    for v in vectors:
        row = {i: x for i, x in enumerate(v) if x != 0}
        if ech.add_row(_row_to_int(row)):
            work.append(v)
    while work:
        v = work.pop()
        for i in range(A.dim):
            e = A._unit_vec(i)
            for prod in (A.multiply_coords(e, v), A.multiply_coords(v, e)):
                row = {k: x for k, x in enumerate(prod) if x != 0}
                if row and ech.add_row(_row_to_int(row)):
                    work.append(prod)
    return Subspace._from_echelon(A.dim, ech)


def subspace_product(A: StructureAlgebra, u: Subspace, v: Subspace) -> Subspace:
    """span{ x*y : x in u, y in v } from basis pair products."""
    vecs = []
    for x in u.basis:
        for y in v.basis:
            vecs.append(A.multiply_coords(list(x), list(y)))
    return Subspace.from_vectors(A.dim, vecs)


def center_subspace(A: StructureAlgebra) -> Subspace:
    """{x : xb = bx for all basis b}."""
    rows = []
    for i in range(A.dim):
        e = A._unit_vec(i)
        L = A.left_mult_matrix(e)
        R = A.right_mult_matrix(e)
        for r in range(A.dim):
            rows.append([L.entry(r, c) - R.entry(r, c) for c in range(A.dim)])
    return RatMatrix.from_rows(rows).right_kernel_basis() if rows else Subspace.full(A.dim)


def predicates(A: StructureAlgebra, kind: str) -> bool:
    if kind == "non_degenerate":
        rows = []
        for i in range(A.dim):
            e = A._unit_vec(i)
            for m in (A.left_mult_matrix(e), A.right_mult_matrix(e)):
                rows.extend(m.to_lists())
        stacked = RatMatrix.from_rows(rows)
        return stacked.right_kernel_basis().dim == 0
    if kind == "idempotent":
        vecs = []
        for i in range(A.dim):
            for j in range(A.dim):
                row = [_ZERO] * A.dim
                for k, v in A.product_basis(i, j):
                    row[k] = v
                vecs.append(row)
        return Subspace.from_vectors(A.dim, vecs).dim == A.dim
    if kind == "has_unit":
        if A.unit is not None:
            return True
        return _find_unit(A) is not None
    if kind == "split_simple":
        from .structure import jacobson_radical

        if jacobson_radical(A).dim != 0:
            return False
        return center_subspace(A).dim == 1
    raise ValueError(f"unknown predicate {kind!r}")


def _find_unit(A: StructureAlgebra):
    """Solve u*b_i = b_i = b_i*u; returns coords or None."""
    rows = []
    rhs = []
    for i in range(A.dim):
        e = A._unit_vec(i)
        R = A.right_mult_matrix(e)  # u -> u*b_i
        L = A.left_mult_matrix(e)   # u -> b_i*u
        for r in range(A.dim):
            rows.append([R.entry(r, c) for c in range(A.dim)])
            rhs.append(e[r])
        for r in range(A.dim):
            rows.append([L.entry(r, c) for c in range(A.dim)])
            rhs.append(e[r])
    m = RatMatrix.from_rows(rows)
    return solve_right(m, rhs)


def subalgebra_presentation(A: StructureAlgebra, vectors, labels=None):
    """Present span(vectors) as an abstract algebra; NotClosed if the span
    is not multiplicatively closed.  Returns (algebra, basis_matrix) with
    basis_matrix columns the chosen basis vectors in A coordinates."""
    coords = []
    for v in vectors:
        coords.append(list(v.coords) if isinstance(v, AlgElement) else [rat(x) for x in v])
    span = Subspace.from_vectors(A.dim, coords)
    if span.dim != len(coords):
        raise NotClosed("subalgebra basis vectors are linearly dependent")
    basis_matrix = RatMatrix.from_rows([[coords[i][r] for i in range(len(coords))] for r in range(A.dim)])
    table = {}
    for i, u in enumerate(coords):
        for j, v in enumerate(coords):
            prod = A.multiply_coords(u, v)
            sol = solve_right(basis_matrix, prod)
            if sol is None:
                raise NotClosed(
                    f"product of basis vectors {i} and {j} leaves the span"
                )
            terms = [(k, c) for k, c in enumerate(sol) if c != 0]
            if terms:
                table[(i, j)] = terms
    if labels is None:
        labels = [f"b{i}" for i in range(len(coords))]
    unit = None
    if A.unit is not None:
        sol = solve_right(basis_matrix, list(A.unit))
        if sol is not None:
            unit = sol
    sub = StructureAlgebra(len(coords), labels, table, unit=unit)
    if unit is None:
        u = _find_unit(sub)
        if u is not None:
            sub = StructureAlgebra(len(coords), labels, table, unit=u)
    return sub, basis_matrix


def quotient_algebra(A: StructureAlgebra, ideal: Subspace):
    """(A/ideal, projection, lift): projection maps A coordinates onto the
    complement coordinates (non-pivot columns of the ideal's echelon basis),
    lift sends quotient basis vectors to coset representatives in A."""
    if ideal.ambient_dim != A.dim:
        raise DimensionMismatch("ideal lives in a different ambient space")
    pivots = []
    for vec in ideal.basis:
        lead = next(i for i, x in enumerate(vec) if x != 0)
        pivots.append(lead)
    comp = [i for i in range(A.dim) if i not in pivots]

    def reduce_coords(v):
        v = list(v)
        for vec, p in zip(ideal.basis, pivots):
            c = v[p]
            if c != 0:
                for i, x in enumerate(vec):
                    if x != 0:
                        v[i] -= c * x
        return v

    qdim = len(comp)
    labels = [A.labels[c] for c in comp]
    table = {}
    for a, i in enumerate(comp):
        for b, j in enumerate(comp):
            prod = reduce_coords(A.multiply_coords(A._unit_vec(i), A._unit_vec(j)))
            terms = [(q, prod[c]) for q, c in enumerate(comp) if prod[c] != 0]
            if terms:
                table[(a, b)] = terms
    unit = None
    if A.unit is not None:
        red = reduce_coords(list(A.unit))
        unit = [red[c] for c in comp]
    quot = StructureAlgebra(qdim, labels, table, unit=unit)
    proj_entries = []
    for j in range(A.dim):
        red = reduce_coords(A._unit_vec(j))
        for q, c in enumerate(comp):
            if red[c] != 0:
                proj_entries.append((q, j, red[c]))
    proj = RatMatrix.from_entries(qdim, A.dim, proj_entries)
    lift = RatMatrix.from_entries(A.dim, qdim, [(c, q, _ONE) for q, c in enumerate(comp)])
    return quot, proj, lift
