"""Codimension engine for generalized identities.

The degree-n multilinear monomials of an action with s listed coefficient
basis elements are the n! * s^(n+1) words w_{i0} x_{sigma(1)} w_{i1} ...
x_{sigma(n)} w_{in}.  Their evaluations at basis tuples of A form the
evaluation matrix; its rank is the n-th codimension and its left kernel is
the space of multilinear identities of degree n.

Consequence spans realize the multilinear degree-n part of the ideal
generated by a set of identities under substitutions, two-sided monomial
multiplication and coefficient multiplication; generating-set verification
compares that span with the identity kernel.  The degree-1 operator
relations of an action (its structural identities) are always counted as
available generators during verification, matching how the source theorems
treat coefficient rewriting as free.

Truncated exterior algebras get a dedicated assembler: columns of the
evaluation matrix fall into orbits of index relabelings that change all
rows by one common sign, so one representative column per orbit preserves
the rank while the truncation dimension stays exponential.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from math import gcd

import numpy as np

from ._fastrank import FastIntRowSpace, IntOverflow
from .actions import Action, grassmann_action
from .algebras import StructureAlgebra
from .errors import BasisMismatch, BudgetExceeded, InternalError
from .linalg import IntRowEchelon, Subspace, _row_to_int, echelon_from_fraction_rows
from .polynomials import (
    GenMonomial,
    _perm_rank,
    basis_size,
    enumerate_basis,
    is_identity,
    multilinearize,
    parse,
    resolved_words,
    variables_of,
)
from .structure import pi_exponent

_ZERO = Fraction(0)
_ONE = Fraction(1)

DEFAULT_MAX_ROWS = 2_000_000
MAX_DENSE_COLUMNS = 200_000  # width guard for materialized matrices


def row_budget() -> int:
    env = os.environ.get("GENPI_MAX_ROWS")
    return int(env) if env else DEFAULT_MAX_ROWS


def _check_budget(rows: int, cols: int):
    budget = row_budget()
    if rows > budget or cols > MAX_DENSE_COLUMNS:
        raise BudgetExceeded(rows, cols, budget)


# -- evaluation matrix ----------------------------------------------------------


@dataclass
class EvaluationMatrix:
    """Sparse evaluation matrix in deterministic (perm, coeffs) row order.

    Columns are indexed by (basis tuple rank, output coordinate); entries
    are integers after per-row denominator clearing is NOT applied: the raw
    rational entries are stored exactly (int-valued for all builtin
    algebras)."""

    action: Action
    n: int
    rows: int
    cols: int
    row_data: list  # list of {col: Fraction}

    def row(self, i: int) -> dict:
        return self.row_data[i]


def _composite_ops(h: Action, coeffs):
    """Left-to-right transfer operators of a monomial with the given
    coefficient slots: D_1 = lambda_{i0} o rho_{i1}, D_t = rho_{it}."""
    mats = [h.pairs[coeffs[0]].L.matrix.matmul(h.pairs[coeffs[1]].R.matrix)]
    for t in range(2, len(coeffs)):
        mats.append(h.pairs[coeffs[t]].R.matrix)
    return mats


def _master_row(h: Action, n: int, coeffs) -> dict:
    """Evaluation row of the identity-permutation monomial with the given
    coefficients: {(tuple_rank, out_coord) as flat col: value}."""
    A = h.A
    dim = A.dim
    mats = _composite_ops(h, coeffs)
    transformed = []
    for t in range(n):
        cols = []
        for j in range(dim):
            vec = mats[t].matvec(A._unit_vec(j))
            cols.append([(kk, v) for kk, v in enumerate(vec) if v != 0])
        transformed.append(cols)
    out: dict = {}

    def rec(pos, prefix_rank, value):
        if pos == n:
            base = prefix_rank * dim
            for kk, v in value:
                out[base + kk] = v
            return
        for j in range(dim):
            tv = transformed[pos][j]
            if not tv:
                continue
            if pos == 0:
                nxt = tv
            else:
                acc: dict = {}
                for k1, v1 in value:
                    for k2, v2 in tv:
                        for k3, v3 in A.product_basis(k1, k2):
                            nv = acc.get(k3, _ZERO) + v1 * v2 * v3
                            if nv:
                                acc[k3] = nv
                            else:
                                acc.pop(k3, None)
                nxt = list(acc.items())
                if not nxt:
                    continue
            rec(pos + 1, prefix_rank * dim + j, nxt)

    rec(0, 0, [])
    return out


def _tuple_perm_maps(dim: int, n: int):
    """For each permutation (in lex order) the map of tuple ranks induced
    by permuting tuple positions."""
    maps = []
    tuples = list(product(range(dim), repeat=n))
    rank_of = {t: i for i, t in enumerate(tuples)}
    for perm in permutations(range(1, n + 1)):
        arr = np.empty(len(tuples), dtype=np.int64)
        for i, t in enumerate(tuples):
            # row evaluates x_{perm(t)} at position t: entry at assignment
            # tuple u equals master at (u_{perm(1)}, ..., u_{perm(n)})
            arr[i] = rank_of[tuple(t[p - 1] for p in perm)]
        maps.append(arr)
    return maps


def _iter_rows(h: Action, n: int):
    """Yield evaluation rows in enumeration order as {flat_col: Fraction}."""
    A = h.A
    dim = A.dim
    s = h.s
    masters = {}
    inv_maps = None
    tuples = list(product(range(dim), repeat=n))
    rank_of = {t: i for i, t in enumerate(tuples)}
    for perm in permutations(range(1, n + 1)):
        # inverse map: master rank r (position-ordered tuple) appears at
        # assignment rank of the tuple read off by the permutation
        remap = np.empty(len(tuples), dtype=np.int64)
        for i, t in enumerate(tuples):
            remap[rank_of[tuple(t[p - 1] for p in perm)]] = i
        for coeffs in product(range(s), repeat=n + 1):
            m = masters.get(coeffs)
            if m is None:
                m = _master_row(h, n, coeffs)
                masters[coeffs] = m
            if perm == tuple(range(1, n + 1)):
                yield m
            else:
                yield {
                    int(remap[c // dim]) * dim + (c % dim): v for c, v in m.items()
                }


def evaluation_matrix(h: Action, n: int) -> EvaluationMatrix:
    """Materialized evaluation matrix (budget-guarded)."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    rows = basis_size(n, h.s)
    cols = h.A.dim ** n * h.A.dim
    _check_budget(rows, cols)
    data = list(_iter_rows(h, n))
    return EvaluationMatrix(h, n, rows, cols, data)


def _iter_rows_int(h: Action, n: int, col_offset: int = 0):
    """Evaluation rows in enumeration order as (cols, vals) int64 arrays;
    rows are scaled to integers (rank-neutral)."""
    dim = h.A.dim
    s = h.s
    masters: dict = {}
    tuples = list(product(range(dim), repeat=n))
    rank_of = {t: i for i, t in enumerate(tuples)}
    ident = tuple(range(1, n + 1))
    for perm in permutations(range(1, n + 1)):
        if perm == ident:
            remap = None
        else:
            remap = np.empty(len(tuples), dtype=np.int64)
            for i, t in enumerate(tuples):
                remap[rank_of[tuple(t[p - 1] for p in perm)]] = i
        for coeffs in product(range(s), repeat=n + 1):
            m = masters.get(coeffs)
            if m is None:
                introw = _row_to_int(_master_row(h, n, coeffs))
                cols = np.fromiter(introw.keys(), dtype=np.int64, count=len(introw))
                vals = np.fromiter(introw.values(), dtype=np.int64, count=len(introw))
                m = (cols, vals)
                masters[coeffs] = m
            cols, vals = m
            if remap is not None:
                cols = remap[cols // dim] * dim + cols % dim
            if col_offset:
                cols = cols + col_offset
            yield cols, vals


def _rank_of_row_arrays(factory, ncols: int, batch: int = 4096) -> int:
    """Exact rank of streamed (cols, vals) rows; duplicate rows are skipped,
    numpy fast path with a pure rational fallback on overflow.  factory()
    restarts the stream."""
    try:
        space = FastIntRowSpace(ncols)
        seen = set()
        buf = np.zeros((batch, ncols), dtype=np.int64)
        fill = 0
        for cols, vals in factory():
            key = (cols.tobytes(), vals.tobytes())
            if key in seen:
                continue
            seen.add(key)
            buf[fill, cols] = vals
            fill += 1
            if fill == batch:
                space.add_rows(buf[:fill])
                buf[:] = 0
                fill = 0
        if fill:
            space.add_rows(buf[:fill])
        return space.rank
    except IntOverflow:
        ech = IntRowEchelon()
        for cols, vals in factory():
            ech.add_row({int(c): int(v) for c, v in zip(cols, vals)})
        return ech.rank


def codimension(h: Action, n: int) -> int:
    """Rank of the degree-n evaluation matrix."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    rows = basis_size(n, h.s)
    cols = h.A.dim ** n * h.A.dim
    _check_budget(rows, cols)
    return _rank_of_row_arrays(lambda: _iter_rows_int(h, n), cols)


def identity_kernel_basis(h: Action, n: int) -> Subspace:
    """Canonical basis of the multilinear identities of degree n, as
    coefficient vectors over the monomial basis."""
    rows = basis_size(n, h.s)
    cols = h.A.dim ** n * h.A.dim
    _check_budget(rows, cols)
    ech, scales = echelon_from_fraction_rows(_iter_rows(h, n), track_combos=True)
    vectors = []
    for combo in ech.kernel_combos:
        vec = [_ZERO] * rows
        for i, c in combo.items():
            vec[i] = c * scales[i]
        vectors.append(vec)
    return Subspace.from_vectors(rows, vectors)


def identity_kernel_polynomials(h: Action, n: int):
    """Kernel basis rendered as readable monomial combinations."""
    sub = identity_kernel_basis(h, n)
    mons = list(enumerate_basis(n, h.s))
    out = []
    for vec in sub.basis:
        terms = []
        for i, c in enumerate(vec):
            if c != 0:
                terms.append((c, mons[i].label(h)))
        out.append(terms)
    return out


# -- structural identities -------------------------------------------------------


def structural_identities(h: Action):
    """Degree-1 identities of the action (operator relations among the
    composites lambda_i rho_j), as multilinear word polynomials."""
    sub = identity_kernel_basis(h, 1)
    mons = list(enumerate_basis(1, h.s))
    gens = []
    for vec in sub.basis:
        words = {}
        for i, c in enumerate(vec):
            if c != 0:
                m = mons[i]
                words[(-(m.coeffs[0] + 1), 1, -(m.coeffs[1] + 1))] = c
        gens.append(words)
    return gens


# -- consequence spans -----------------------------------------------------------


def _generator_words(g, h: Action):
    """Normalize one generator to (degree, [(coeff, word)]) with variables
    renumbered 1..d; None for generators that vanish in coordinates."""
    if isinstance(g, str):
        g = parse(g)
    if isinstance(g, dict):
        words = dict(g)
    else:
        comps = multilinearize(g)
        if len(comps) != 1:
            raise ValueError("generators must be multilinear (one component)")
        words = resolved_words(comps[0], h)
    s = h.s
    words = {
        w: c
        for w, c in words.items()
        if not any(sym < 0 and -(sym + 1) >= s for sym in w)
    }
    if not words:
        return None
    vars_seen = sorted({sym for w in words for sym in w if sym > 0})
    ren = {v: i + 1 for i, v in enumerate(vars_seen)}
    out = []
    for w, c in words.items():
        got = [sym for sym in w if sym > 0]
        if sorted(got) != vars_seen:
            raise ValueError("generator is not multilinear")
        out.append((c, tuple(ren[sym] if sym > 0 else sym for sym in w)))
    return len(vars_seen), out


def _compositions(total: int, parts: int, minimums):
    """All tuples of the given length with entries >= minimums summing to
    total, in lexicographic order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    lo = minimums[0]
    rest_min = sum(minimums[1:])
    for first in range(lo, total - rest_min + 1):
        for tail in _compositions(total - first, parts - 1, minimums[1:]):
            yield (first,) + tail


def _instance_structures(gens, h: Action, n: int):
    """Substitution skeletons: for every generator, composition and
    variable arrangement, the per-term splice plans with memoized
    coefficient-slot folding."""
    W = h.W
    s = h.s
    if W.unit is None:
        raise InternalError("consequence spans need a unital coefficient algebra")
    prod_table = {}
    all_int = True
    for i in range(s):
        for j in range(s):
            terms = list(W.product_basis(i, j))
            all_int = all_int and all(v.denominator == 1 for _, v in terms)
            prod_table[(i, j)] = terms
    normalized = []
    for g in gens:
        gw = _generator_words(g, h)
        if gw is not None and gw[0] <= n:
            if all_int and all(c.denominator == 1 for c, _ in gw[1]):
                gw = (gw[0], [(int(c), w) for c, w in gw[1]])
            normalized.append(gw)
    if all_int:
        prod_table = {
            key: [(k, int(v)) for k, v in terms] for key, terms in prod_table.items()
        }
    structures = []
    for d, terms in normalized:
        mins = [0] + [1] * d + [0]
        n_slots = n + d + 2  # enumerated coefficient positions
        for comp in _compositions(n, d + 2, mins):
            a, ks = comp[0], comp[1 : 1 + d]
            for arrangement in permutations(range(1, n + 1)):
                u0_vars = arrangement[:a]
                blocks = []
                pos = a
                for kk in ks:
                    blocks.append(arrangement[pos : pos + kk])
                    pos += kk
                u1_vars = arrangement[pos:]
                piece_u0, cpos = _piece(u0_vars, 0)
                block_pieces = []
                for b in blocks:
                    pb, cpos = _piece(b, cpos)
                    block_pieces.append(pb)
                piece_u1, cpos = _piece(u1_vars, cpos)
                slot_specs: dict = {}
                plans = []
                for coef, gword in terms:
                    word = list(piece_u0)
                    for sym in gword:
                        if sym > 0:
                            word.extend(block_pieces[sym - 1])
                        else:
                            word.append(("k", -(sym + 1)))
                    word.extend(piece_u1)
                    perm = tuple(sym for kind, sym in word if kind == "v")
                    slots = []
                    cur = []
                    for kind, val in word:
                        if kind == "v":
                            slots.append(tuple(cur))
                            cur = []
                        else:
                            cur.append((kind, val))
                    slots.append(tuple(cur))
                    slot_ids = []
                    for slot in slots:
                        sid = slot_specs.setdefault(slot, len(slot_specs))
                        positions = tuple(val for kind, val in slot if kind == "c")
                        slot_ids.append((sid, positions, slot))
                    plans.append((coef, _perm_rank(perm) * s ** (n + 1), slot_ids))
                structures.append((n_slots, plans, {}))
    return structures, prod_table


def _consequence_instances(gens, h: Action, n: int):
    """Yield the degree-n consequence vectors of the generators, sparse
    over monomial ranks.

    Every instance is u0 * g(v_1..v_d) * u1 with the v_i monomial
    substitutions on disjoint nonempty variable blocks, u0/u1 boundary
    monomials on the remaining variables (possibly variable-free), and
    every coefficient slot running over the listed basis; adjacent
    coefficients merge through the coefficient algebra product.  The
    enumeration is deterministic and interleaves coefficient assignments
    across skeletons so that diverse directions appear early.
    """
    W = h.W
    s = h.s
    structures, prod_table = _instance_structures(gens, h, n)
    if not structures:
        return
    max_count = max(s ** ns for ns, _, _ in structures)
    for idx in range(max_count):
        for ns, plans, memo in structures:
            if idx >= s ** ns:
                continue
            assign = []
            rem = idx
            for _ in range(ns):
                assign.append(rem % s)
                rem //= s
            vec: dict = {}
            for coef, base, slot_ids in plans:
                expos = [(0, coef)]  # folding stays in ints when W allows
                for sid, positions, slot in slot_ids:
                    key = (sid,) + tuple(assign[p] for p in positions)
                    folded = memo.get(key)
                    if folded is None:
                        folded = _fold_slot(slot, assign, prod_table, W)
                        memo[key] = folded
                    if not folded:
                        expos = []
                        break
                    expos = [
                        (m * s + k2, c1 * c2)
                        for m, c1 in expos
                        for k2, c2 in folded
                    ]
                for m, c in expos:
                    r = base + m
                    nc = vec.get(r, 0) + c
                    if nc:
                        vec[r] = nc
                    else:
                        vec.pop(r, None)
            if vec:
                yield vec


def _piece(vars_tuple, cpos):
    """Symbolic word of a boundary/substitution monomial: alternating
    enumerated coefficient positions and variables."""
    out = [("c", cpos)]
    cpos += 1
    for v in vars_tuple:
        out.append(("v", v))
        out.append(("c", cpos))
        cpos += 1
    return out, cpos


def _fold_slot(slot, assign, prod_table, W):
    """Product of the coefficient sources of one slot, expanded over the
    listed basis as [(index, coeff)]."""
    terms = None
    for kind, val in slot:
        k = assign[val] if kind == "c" else val
        if terms is None:
            terms = [(k, 1)]
            continue
        nxt: dict = {}
        for k1, c1 in terms:
            for k2, c2 in prod_table[(k1, k)]:
                nc = nxt.get(k2, 0) + c1 * c2
                if nc:
                    nxt[k2] = nc
                else:
                    nxt.pop(k2, None)
        terms = list(nxt.items())
        if not terms:
            return []
    if terms is None:  # empty slot: the unit of W
        return [(k, c) for k, c in enumerate(W.unit) if c != 0]
    return terms


def _canonical_int_vec(vec: dict):
    """Scale a sparse rational vector to coprime integers with positive
    leading entry; hashable canonical key."""
    if not vec:
        return ()
    denom_lcm = 1
    for v in vec.values():
        denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
    items = sorted((k, int(v * denom_lcm)) for k, v in vec.items())
    g = 0
    for _, v in items:
        g = gcd(g, abs(v))
    if g > 1:
        items = [(k, v // g) for k, v in items]
    if items[0][1] < 0:
        items = [(k, -v) for k, v in items]
    return tuple(items)


def _stream_span_rank(vectors, ncols: int, target: int | None, batch: int = 1024):
    """Rank of the span of streamed sparse vectors with deduplication and
    early stop at the target rank."""
    space = FastIntRowSpace(ncols, target_rank=target)
    seen = set()
    buf = np.zeros((batch, ncols), dtype=np.int64)
    fill = 0
    try:
        for vec in vectors:
            key = _canonical_int_vec(vec)
            if not key or key in seen:
                continue
            seen.add(key)
            for c, v in key:
                buf[fill, c] = v
            fill += 1
            if fill == batch:
                space.add_rows(buf[:fill])
                buf[:] = 0
                fill = 0
                if space.saturated:
                    return space.rank
        if fill:
            space.add_rows(buf[:fill])
        return space.rank
    except IntOverflow:
        ech = IntRowEchelon()
        for key in seen:
            ech.add_row(dict(key))
        for vec in vectors:
            ech.add_row(_row_to_int(vec))
            if target is not None and ech.rank >= target:
                break
        return ech.rank


def consequences_span(generators, h: Action, n: int) -> Subspace:
    """Canonical basis of the degree-n multilinear consequences of the
    generators (empty generator list gives the zero subspace)."""
    rows = basis_size(n, h.s)
    _check_budget(rows, 1)
    ech = IntRowEchelon()
    for vec in _consequence_instances(list(generators), h, n):
        ech.add_row(_row_to_int(vec))
    return Subspace._from_echelon(rows, ech)


def in_consequence_span(poly, generators, h: Action, n: int) -> bool:
    """Membership of one multilinear polynomial in the consequence span,
    decided by streaming the span and reducing the target vector."""
    from .polynomials import vectorize

    from .polynomials import renumber_variables

    if isinstance(poly, str):
        poly = parse(poly)
    comps = multilinearize(poly)
    if len(comps) != 1:
        raise ValueError("membership needs a single multilinear component")
    target = vectorize(renumber_variables(comps[0]), h, n)
    if not target:
        return True
    rows = basis_size(n, h.s)
    space = FastIntRowSpace(rows)
    tvec = np.zeros((1, rows), dtype=np.int64)
    for c, v in _row_to_int(target).items():
        tvec[0, c] = v
    seen = set()
    buf = np.zeros((256, rows), dtype=np.int64)
    fill = 0

    def member() -> bool:
        red = space.reduce_rows(tvec.copy())
        return not red.any()

    for vec in _consequence_instances(list(generators), h, n):
        key = _canonical_int_vec(vec)
        if not key or key in seen:
            continue
        seen.add(key)
        for c, v in key:
            buf[fill, c] = v
        fill += 1
        if fill == buf.shape[0]:
            added = space.add_rows(buf[:fill])
            buf[:] = 0
            fill = 0
            if added and member():
                return True
    if fill:
        space.add_rows(buf[:fill])
    return member()


def verify_generating_set(generators, h: Action, n: int, codim_value: int | None = None) -> bool:
    """True iff the consequence span of the generators together with the
    action's structural identities equals the degree-n identity kernel.

    Generators that are not identities fail immediately.  The kernel is
    never materialized: the span is contained in it once every generator is
    an identity, so equality is a rank comparison against
    rows - codimension; pass codim_value to pin a stabilized codimension.
    """
    gens = [parse(g) if isinstance(g, str) else g for g in generators]
    for g in gens:
        if isinstance(g, dict):
            continue
        comps = multilinearize(g)
        for comp in comps:
            if len(variables_of(comp)) <= n:
                ok, _ = is_identity(comp, h)
                if not ok:
                    return False
    rows = basis_size(n, h.s)
    if codim_value is None:
        codim_value = codimension(h, n)
    target = rows - codim_value
    all_gens = list(gens) + structural_identities(h)
    rank = _stream_span_rank(_consequence_instances(all_gens, h, n), rows, target)
    if rank > target:
        raise InternalError("consequence span escaped the identity kernel")
    return rank == target


# -- variety containment -----------------------------------------------------------


def _same_coefficient_presentation(hA: Action, hB: Action) -> bool:
    WA, WB = hA.W, hB.W
    if WA.dim != WB.dim or WA.labels != WB.labels:
        return False
    for i in range(WA.dim):
        for j in range(WA.dim):
            if WA.product_basis(i, j) != WB.product_basis(i, j):
                return False
    return True


def variety_contains(hA: Action, hB: Action, n: int) -> bool:
    """Degreewise necessary condition for membership of the second action's
    algebra in the variety of the first: every multilinear identity of the
    first of degree <= n is an identity of the second, decided by
    rank([E_A | E_B]) = rank(E_A) per degree."""
    if not _same_coefficient_presentation(hA, hB):
        raise BasisMismatch(
            "variety comparison needs one shared coefficient presentation"
        )
    for m in range(1, n + 1):
        rows = basis_size(m, hA.s)
        colsA = hA.A.dim ** m * hA.A.dim
        colsB = hB.A.dim ** m * hB.A.dim
        _check_budget(rows, colsA + colsB)
        rank_a = _rank_of_row_arrays(lambda: _iter_rows_int(hA, m), colsA)

        def stacked():
            # the two halves of one row must be scaled jointly, so merge
            # the exact rational rows before integer scaling
            for ra, rb in zip(_iter_rows(hA, m), _iter_rows(hB, m)):
                row = dict(ra)
                for c, v in rb.items():
                    row[colsA + c] = v
                introw = _row_to_int(row)
                cols = np.fromiter(introw.keys(), dtype=np.int64, count=len(introw))
                vals = np.fromiter(introw.values(), dtype=np.int64, count=len(introw))
                yield cols, vals

        rank_ab = _rank_of_row_arrays(stacked, colsA + colsB)
        if rank_ab != rank_a:
            return False
    return True


# -- truncated exterior algebras -----------------------------------------------------


def _word_masks(A: StructureAlgebra):
    masks = []
    for lab in A.labels:
        if lab == "1":
            masks.append(0)
            continue
        idxs = lab.replace("e", "").replace("g{", "").replace("}", "").split(",")
        m = 0
        for i in idxs:
            m |= 1 << (int(i) - 1)
        masks.append(m)
    return masks


def _merge_mask(u: int, v: int):
    """(mask, sign) of the product of two index words, or None."""
    if u & v:
        return None
    sign = 1
    x = u
    while x:
        low = x & -x
        below = v & (low - 1)
        if bin(below).count("1") % 2:
            sign = -sign
        x ^= low
    return u | v, sign


def _grassmann_reduced_rows(k: int, m: int, n: int):
    """Rows of the degree-n evaluation matrix of the k-generator action on
    the m-generator truncation, over one representative column per
    relabeling orbit.  Dropping the orbit mates preserves both the rank and
    the left kernel: they are duplicate columns up to one global sign."""
    h = grassmann_action(k, m)
    s = h.s
    rows = basis_size(n, s)
    _check_budget(rows, 1)
    wmask = _word_masks(h.W)
    small = list(range(1, k + 1))
    large = m - k
    # representative assignments: small indices to a slot (1..n) or unused
    # (0); large index counts per slot and unused packed in order
    reps = []
    for small_assign in product(range(n + 1), repeat=k):
        for counts in _compositions(large, n + 1, [0] * (n + 1)):
            words = [[] for _ in range(n)]
            for idx, slot in zip(small, small_assign):
                if slot >= 1:
                    words[slot - 1].append(idx)
            nxt = k + 1
            for slot in range(n):
                for _ in range(counts[slot]):
                    words[slot].append(nxt)
                    nxt += 1
            masks = []
            for w in words:
                mask = 0
                for i in w:
                    mask |= 1 << (i - 1)
                masks.append(mask)
            reps.append(tuple(masks))
    mons = list(enumerate_basis(n, s))
    col_index: dict = {}
    rows_data = [dict() for _ in mons]
    for ci, masks in enumerate(reps):
        for ri, mon in enumerate(mons):
            seq = [wmask[mon.coeffs[0]]]
            signs = 1
            dead = False
            acc = wmask[mon.coeffs[0]]
            # product in monomial order: w_{i0} g_{sigma(1)} w_{i1} ...
            for t in range(n):
                g = masks[mon.perm[t] - 1]
                r1 = _merge_mask(acc, g)
                if r1 is None:
                    dead = True
                    break
                acc, sg = r1
                signs *= sg
                r2 = _merge_mask(acc, wmask[mon.coeffs[t + 1]])
                if r2 is None:
                    dead = True
                    break
                acc, sg = r2
                signs *= sg
            if dead:
                continue
            key = (ci, acc)
            col = col_index.setdefault(key, len(col_index))
            rows_data[ri][col] = Fraction(signs)
    return rows_data


def _grassmann_reduced_rank(k: int, m: int, n: int) -> int:
    ech = IntRowEchelon()
    for row in _grassmann_reduced_rows(k, m, n):
        ech.add_row(_row_to_int(row))
    return ech.rank


def _grassmann_stabilized(k: int, n: int):
    """(codimension, truncation level) once two consecutive levels agree."""
    if k < 1 or n < 1:
        raise ValueError("need k >= 1 and n >= 1")
    m = 2 * n + k
    prev = _grassmann_reduced_rank(k, m, n)
    for step in range(8):
        cur = _grassmann_reduced_rank(k, m + 1 + step, n)
        if cur == prev:
            return cur, m + step
        prev = cur
    raise BudgetExceeded(basis_size(n, 2 ** k), 2 ** (m + 8), row_budget())


def grassmann_codim_stabilized(k: int, n: int) -> int:
    """Codimension of the k-generator action on truncations of increasing
    level, returned once two consecutive levels agree."""
    return _grassmann_stabilized(k, n)[0]


def _grassmann_structural_identities(k: int, m: int):
    """Degree-1 identities of the truncated action, from the left kernel
    of the orbit-reduced evaluation matrix (same kernel as the full one)."""
    ech, scales = echelon_from_fraction_rows(
        _grassmann_reduced_rows(k, m, 1), track_combos=True
    )
    s = 2 ** k
    mons = list(enumerate_basis(1, s))
    gens = []
    for combo in ech.kernel_combos:
        words = {}
        for i, c in combo.items():
            mon = mons[i]
            words[(-(mon.coeffs[0] + 1), 1, -(mon.coeffs[1] + 1))] = c * scales[i]
        if words:
            gens.append(words)
    return gens


def _grassmann_is_identity(poly, h: Action, rows_by_degree, k: int, m: int):
    """Identity test against the truncation via the reduced rows: the
    vectorization must combine the reduced evaluation rows to zero."""
    from .polynomials import vectorize

    comps = multilinearize(poly) if not isinstance(poly, dict) else [poly]
    for comp in comps:
        if isinstance(comp, dict):
            vec = {}
            s = h.s
            mons = list(enumerate_basis(1, s))
            for w, c in comp.items():
                mon = GenMonomial(1, (1,), (-(w[0] + 1), -(w[2] + 1)))
                vec[mon.rank(s)] = c
            d = 1
        else:
            d = len(variables_of(comp))
            if d == 0:
                continue
            vec = vectorize(comp, h, d)
        if d not in rows_by_degree:
            rows_by_degree[d] = _grassmann_reduced_rows(k, m, d)
        rows_data = rows_by_degree[d]
        acc: dict = {}
        for r, c in vec.items():
            for col, v in rows_data[r].items():
                nv = acc.get(col, _ZERO) + c * v
                if nv:
                    acc[col] = nv
                else:
                    acc.pop(col, None)
        if acc:
            return False
    return True


def grassmann_generators(k: int):
    gens = ["[x1,x2,x3]"]
    gens += [f"[e{i},x1,x2]" for i in range(1, k + 1)]
    gens += [f"e{k + 1}*x1", f"x1*e{k + 1}"]
    return gens


def verify_grassmann_generating_set(k: int, n: int, generators=None) -> bool:
    """Generating-set certificate for the k-generator action at degree n,
    with the identity kernel taken at the stabilized truncation level."""
    if generators is None:
        generators = grassmann_generators(k)
    return _verify_grassmann(k, n, list(generators))


def _verify_grassmann(k: int, n: int, generators) -> bool:
    cn, m = _grassmann_stabilized(k, n)
    h = grassmann_action(k, k)  # coefficient structure only; A unused below
    h_trunc = grassmann_action(k, m)
    rows_by_degree: dict = {}
    gens = [parse(g) if isinstance(g, str) else g for g in generators]
    for g in gens:
        if isinstance(g, dict):
            continue
        comps = multilinearize(g)
        for comp in comps:
            if 0 < len(variables_of(comp)) <= n:
                if not _grassmann_is_identity(comp, h_trunc, rows_by_degree, k, m):
                    return False
    rows = basis_size(n, h.s)
    target = rows - cn
    all_gens = list(gens) + _grassmann_structural_identities(k, m)
    rank = _stream_span_rank(_consequence_instances(all_gens, h, n), rows, target)
    if rank > target:
        raise InternalError("consequence span escaped the identity kernel")
    return rank == target


# -- growth reports ----------------------------------------------------------------


@dataclass
class GrowthReport:
    degrees: list
    values: list          # codimension per degree, None when skipped
    ratios: list          # successive ratios as Fractions (None at gaps)
    roots: list           # n-th roots, floats for display
    exponent: int | None  # block-linking exponent when available

    def to_dict(self):
        return {
            "degrees": self.degrees,
            "codimensions": self.values,
            "ratios": [None if r is None else [r.numerator, r.denominator] for r in self.ratios],
            "roots": self.roots,
            "exponent": self.exponent,
        }


def growth_report(h: Action, n_max: int) -> GrowthReport:
    degrees = list(range(1, n_max + 1))
    values = []
    for n in degrees:
        try:
            values.append(codimension(h, n))
        except BudgetExceeded:
            values.append(None)
    ratios = []
    roots = []
    for i, n in enumerate(degrees):
        v = values[i]
        prev = values[i - 1] if i else None
        if v is None or (i and prev in (None, 0)):
            ratios.append(None)
        elif i:
            ratios.append(Fraction(v, prev))
        else:
            ratios.append(None)
        roots.append(None if v is None else float(v) ** (1.0 / n))
    exponent = None
    if h.A.unit is not None:
        try:
            exponent = pi_exponent(h.A)
        except Exception:
            exponent = None
    return GrowthReport(degrees, values, ratios, roots, exponent)


# -- preset generating sets ----------------------------------------------------------


PRESET_GENERATORS = {
    "ut2F": ("w1*x1", "x1*w1", "[x1,x2]*[x3,x4]"),
    "ut2D": ("w2*x1", "x1*w2", "[x1,x2]-[x1,x2,w1]"),
    "ut2C": ("w2*x1", "x1*w2", "[x1,x2]*[x3,x4]", "w1*[x1,x2]", "[x1,x2]*w1"),
    "ut2full": ("w3*x1", "x1*w3", "[x1,x2]-[x1,x2,w1]"),
}


def preset_generators(name: str):
    """Published generating sets for the named actions; tail families are
    represented by their first member (w_i with the smallest index acting
    as zero)."""
    if name in PRESET_GENERATORS:
        return list(PRESET_GENERATORS[name])
    low = name.strip().lower()
    if low.startswith("grassmann_ek"):
        args = name[name.index("(") + 1 : -1] if "(" in name else name.split(":", 1)[1]
        k = int(args.split(",")[0])
        gens = ["[x1,x2,x3]"]
        gens += [f"[e{i},x1,x2]" for i in range(1, k + 1)]
        gens += [f"e{k + 1}*x1", f"x1*e{k + 1}"]
        return gens
    raise KeyError(f"no published generating set for {name!r}")
