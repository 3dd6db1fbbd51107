"""Exact rational linear algebra: matrices, rank, kernels, subspace arithmetic.

All computations are fraction-free: rows are scaled to integers once and
elimination uses cross-multiplication followed by gcd reduction, so no
rational arithmetic happens in inner loops and results are exact.  Pivoting
is deterministic (first nonzero entry in column order), hence every derived
object (echelon forms, canonical subspace bases) is reproducible bit for bit.

Subspaces are stored in reduced row echelon form with leading entries 1, so
equal subspaces compare equal structurally.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DimensionMismatch

# Matrices with at most this many entries are stored densely; larger ones
# sparsely.  Constraint systems in this package are small and dense-ish,
# evaluation matrices are large and very sparse.
DENSE_LIMIT = 4096


def rat(x) -> Fraction:
    """Coerce ints, strings like '3/4' and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _row_to_int_scaled(row: dict) -> tuple[dict, Fraction]:
    """Scale a {col: Fraction} row to coprime integers; returns the integer
    row and the positive scale s with introw = s * row."""
    if not row:
        return {}, Fraction(1)
    denom_lcm = 1
    for v in row.values():
        d = v.denominator
        denom_lcm = denom_lcm * d // gcd(denom_lcm, d)
    ints = {c: int(v * denom_lcm) for c, v in row.items() if v != 0}
    if not ints:
        return {}, Fraction(1)
    g = 0
    for v in ints.values():
        g = gcd(g, abs(v))
    if g > 1:
        ints = {c: v // g for c, v in ints.items()}
    else:
        g = 1
    return ints, Fraction(denom_lcm, g)


def _row_to_int(row: dict) -> dict:
    return _row_to_int_scaled(row)[0]


def _normalize_int_row(row: dict) -> dict:
    row = {c: v for c, v in row.items() if v != 0}
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, abs(v))
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


class IntRowEchelon:
    """Incremental echelon form over the integers (row space over Q).

    Rows are fed one at a time; the internal basis is kept fully reduced
    (zeros above and below pivots, rows gcd-normalized with positive pivot).
    Optionally tracks the expressing combination of each fed row so left
    kernels can be read off.
    """

    def __init__(self, track_combos: bool = False):
        self.rows: list[dict] = []          # reduced rows, pivot order by insertion
        self.pivots: dict[int, int] = {}    # pivot column -> index into rows
        self.track = track_combos
        self.combos: list[dict] = []        # combo for rows[i] over fed-row indices
        self.kernel_combos: list[dict] = []  # combos of fed rows reducing to zero
        self.n_fed = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict, combo: dict | None = None):
        """Reduce a row against the basis; returns (row, combo) remainders."""
        row = dict(row)
        combo = dict(combo) if combo is not None else None
        while row:
            hits = [c for c in row if c in self.pivots]
            if not hits:
                break
            c = min(hits)
            idx = self.pivots[c]
            piv = self.rows[idx]
            a, b = piv[c], row[c]
            # row <- a*row - b*piv  (kills column c, stays integral)
            row = {col: a * v for col, v in row.items()}
            for col, v in piv.items():
                nv = row.get(col, 0) - b * v
                if nv:
                    row[col] = nv
                else:
                    row.pop(col, None)
            if combo is not None:
                pc = self.combos[idx]
                new = {}
                for k, v in combo.items():
                    new[k] = a * v
                for k, v in pc.items():
                    nv = new.get(k, 0) - b * v
                    if nv:
                        new[k] = nv
                    else:
                        new.pop(k, None)
                combo = new
            row, combo = self._joint_normalize(row, combo)
        return row, combo

    @staticmethod
    def _joint_normalize(row, combo):
        if not row:
            return row, combo
        g = 0
        for v in row.values():
            g = gcd(g, abs(v))
        if combo is not None:
            for v in combo.values():
                g = gcd(g, abs(v))
        if g > 1:
            row = {c: v // g for c, v in row.items()}
            if combo is not None:
                combo = {c: v // g for c, v in combo.items()}
        return row, combo

    def add_row(self, row: dict) -> bool:
        """Feed one integer row; returns True if the rank grew."""
        combo = {self.n_fed: 1} if self.track else None
        self.n_fed += 1
        row, combo = self.reduce(row, combo)
        if not row:
            if self.track:
                self.kernel_combos.append(combo if combo is not None else {})
            return False
        c = min(row)
        if row[c] < 0:
            row = {k: -v for k, v in row.items()}
            if combo is not None:
                combo = {k: -v for k, v in combo.items()}
        # clear the new pivot column from existing rows to stay fully reduced
        for i, other in enumerate(self.rows):
            b = other.get(c)
            if b:
                a = row[c]
                merged = {col: a * v for col, v in other.items()}
                for col, v in row.items():
                    nv = merged.get(col, 0) - b * v
                    if nv:
                        merged[col] = nv
                    else:
                        merged.pop(col, None)
                oc = None
                if self.track:
                    oc = {k: a * v for k, v in self.combos[i].items()}
                    for k, v in combo.items():
                        nv = oc.get(k, 0) - b * v
                        if nv:
                            oc[k] = nv
                        else:
                            oc.pop(k, None)
                merged, oc = self._joint_normalize(merged, oc)
                self.rows[i] = merged
                if self.track:
                    self.combos[i] = oc
        self.pivots[c] = len(self.rows)
        self.rows.append(row)
        if self.track:
            self.combos.append(combo)
        return True

    def contains_row(self, row: dict) -> bool:
        rem, _ = self.reduce(row)
        return not rem


def echelon_from_fraction_rows(rows, track_combos=False):
    """Feed {col: Fraction} rows into an integer echelon.  Returns the
    echelon and the per-row scales (introw_i = scale_i * row_i); tracked
    combos refer to the scaled rows."""
    ech = IntRowEchelon(track_combos=track_combos)
    scales = []
    for row in rows:
        introw, s = _row_to_int_scaled(row)
        scales.append(s)
        ech.add_row(introw)
    return ech, scales


class Subspace:
    """A subspace of Q^n held as a canonical reduced-echelon basis.

    Two Subspace objects are equal iff they are the same subspace: the
    stored basis is the unique RREF basis (leading entries 1, zeros above
    and below pivots, pivot columns increasing).
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: tuple):
        self.ambient_dim = ambient_dim
        self.basis = basis  # tuple of tuples of Fraction, canonical

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors) -> "Subspace":
        ech = IntRowEchelon()
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(
                    f"vector of length {len(v)} in ambient dimension {ambient_dim}"
                )
            row = {i: rat(x) for i, x in enumerate(v) if rat(x) != 0}
            ech.add_row(_row_to_int(row))
        return cls._from_echelon(ambient_dim, ech)

    @classmethod
    def _from_echelon(cls, ambient_dim: int, ech: IntRowEchelon) -> "Subspace":
        order = sorted(ech.pivots)
        basis = []
        for c in order:
            row = ech.rows[ech.pivots[c]]
            lead = row[c]
            vec = [Fraction(0)] * ambient_dim
            for col, v in row.items():
                vec[col] = Fraction(v, lead)
            basis.append(tuple(vec))
        return cls(ambient_dim, tuple(basis))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.from_vectors(
            ambient_dim,
            [[1 if i == j else 0 for j in range(ambient_dim)] for i in range(ambient_dim)],
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _check_ambient(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.from_vectors(self.ambient_dim, list(self.basis) + list(other.basis))

    def intersection(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: echelonize [U|U; V|0]; rows with zero left block give
        right-block vectors spanning the intersection."""
        self._check_ambient(other)
        n = self.ambient_dim
        ech = IntRowEchelon()
        for v in self.basis:
            row = {i: x for i, x in enumerate(v) if x != 0}
            row.update({n + i: x for i, x in enumerate(v) if x != 0})
            ech.add_row(_row_to_int(row))
        for v in other.basis:
            row = {i: x for i, x in enumerate(v) if x != 0}
            ech.add_row(_row_to_int(row))
        inter = []
        for row in ech.rows:
            if all(c >= n for c in row):
                vec = [Fraction(0)] * n
                for c, v in row.items():
                    vec[c - n] = Fraction(v)
                inter.append(vec)
        return Subspace.from_vectors(n, inter)

    def contains(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        ech = IntRowEchelon()
        for v in self.basis:
            ech.add_row(_row_to_int({i: x for i, x in enumerate(v) if x != 0}))
        for v in other.basis:
            if not ech.contains_row(_row_to_int({i: x for i, x in enumerate(v) if x != 0})):
                return False
        return True

    def contains_vector(self, vec) -> bool:
        return self.contains(Subspace.from_vectors(self.ambient_dim, [vec]))


def subspace_ops(a: Subspace, b: Subspace, kind: str):
    """Dispatcher mirroring the subspace arithmetic surface: 'sum',
    'intersection' return a Subspace, 'contains' returns bool (b inside a)."""
    if kind == "sum":
        return a.sum(b)
    if kind == "intersection":
        return a.intersection(b)
    if kind == "contains":
        return a.contains(b)
    raise ValueError(f"unknown subspace operation {kind!r}")


class RatMatrix:
    """An exact rational matrix, dense or sparse by size.

    Entries are Fractions; construction accepts ints and 'p/q' strings.
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, rows: list[dict]):
        if nrows < 0 or ncols < 0:
            raise DimensionMismatch("negative matrix dimension")
        self.nrows = nrows
        self.ncols = ncols
        self._rows = rows  # list of {col: Fraction}, zero entries absent

    @classmethod
    def from_rows(cls, rows) -> "RatMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        data = []
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
            data.append({j: rat(v) for j, v in enumerate(r) if rat(v) != 0})
        return cls(nrows, ncols, data)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries) -> "RatMatrix":
        data = [dict() for _ in range(nrows)]
        for i, j, v in entries:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise DimensionMismatch(f"entry ({i},{j}) outside {nrows}x{ncols}")
            if (w := rat(v)) != 0:
                if j in data[i]:
                    raise DimensionMismatch(f"duplicate entry at ({i},{j})")
                data[i][j] = w
        return cls(nrows, ncols, data)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [{i: Fraction(1)} for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RatMatrix":
        return cls(nrows, ncols, [dict() for _ in range(nrows)])

    @property
    def is_dense_sized(self) -> bool:
        return self.nrows * self.ncols <= DENSE_LIMIT

    def entry(self, i: int, j: int) -> Fraction:
        return self._rows[i].get(j, Fraction(0))

    def row_dict(self, i: int) -> dict:
        return dict(self._rows[i])

    def iter_rows(self):
        for r in self._rows:
            yield r

    def to_lists(self) -> list[list[Fraction]]:
        return [
            [r.get(j, Fraction(0)) for j in range(self.ncols)] for r in self._rows
        ]

    def transpose(self) -> "RatMatrix":
        data = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                data[j][i] = v
        return RatMatrix(self.ncols, self.nrows, data)

    def matvec(self, vec) -> list[Fraction]:
        if len(vec) != self.ncols:
            raise DimensionMismatch("matvec length mismatch")
        vec = [rat(v) for v in vec]
        return [sum((v * vec[j] for j, v in r.items()), Fraction(0)) for r in self._rows]

    def vecmat(self, vec) -> list[Fraction]:
        if len(vec) != self.nrows:
            raise DimensionMismatch("vecmat length mismatch")
        out = [Fraction(0)] * self.ncols
        for i, r in enumerate(self._rows):
            c = rat(vec[i])
            if c:
                for j, v in r.items():
                    out[j] += c * v
        return out

    def matmul(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch("matmul shape mismatch")
        data = []
        for r in self._rows:
            acc: dict = {}
            for k, v in r.items():
                for j, w in other._rows[k].items():
                    acc[j] = acc.get(j, Fraction(0)) + v * w
            data.append({j: v for j, v in acc.items() if v != 0})
        return RatMatrix(self.nrows, other.ncols, data)

    def __eq__(self, other):
        return (
            isinstance(other, RatMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self._rows == other._rows
        )

    def __repr__(self):
        return f"RatMatrix({self.nrows}x{self.ncols})"

    def is_zero(self) -> bool:
        return all(not r for r in self._rows)

    def rank(self) -> int:
        ech, _ = echelon_from_fraction_rows(self._rows)
        return ech.rank

    def left_kernel_basis(self) -> Subspace:
        """Canonical basis of {v : v . M = 0}; dim = nrows - rank."""
        ech, scales = echelon_from_fraction_rows(self._rows, track_combos=True)
        vectors = []
        for combo in ech.kernel_combos:
            vec = [Fraction(0)] * self.nrows
            for i, c in combo.items():
                vec[i] = c * scales[i]
            vectors.append(vec)
        return Subspace.from_vectors(self.nrows, vectors)

    def right_kernel_basis(self) -> Subspace:
        return self.transpose().left_kernel_basis()


def rank(m: RatMatrix) -> int:
    return m.rank()


def left_kernel_basis(m: RatMatrix) -> Subspace:
    return m.left_kernel_basis()


def solve_right(m: RatMatrix, target) -> list[Fraction] | None:
    """One solution x of M x = target, or None.  Used for re-expressing
    vectors in spanning sets; deterministic."""
    t = [rat(v) for v in target]
    if len(t) != m.nrows:
        raise DimensionMismatch("target length mismatch")
    # dense Gauss-Jordan on the augmented system; systems here are small
    # (re-expressing products in a basis), exact Fractions are fine.
    aug = [[m.entry(i, j) for j in range(m.ncols)] + [t[i]] for i in range(m.nrows)]
    ncols = m.ncols
    pivots = []
    row_i = 0
    for col in range(ncols):
        sel = None
        for i in range(row_i, len(aug)):
            if aug[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        aug[row_i], aug[sel] = aug[sel], aug[row_i]
        pv = aug[row_i][col]
        aug[row_i] = [x / pv for x in aug[row_i]]
        for i in range(len(aug)):
            if i != row_i and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[row_i])]
        pivots.append(col)
        row_i += 1
        if row_i == len(aug):
            break
    for i in range(row_i, len(aug)):
        if aug[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        x[col] = aug[r][ncols]
    return x
