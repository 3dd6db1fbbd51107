"""Evaluation matrices, codimensions, kernels, consequence spans."""

import random
from fractions import Fraction

import pytest

from genpi.actions import grassmann_action, preset_action, shared_family_presentations
from genpi.algebras import builtin
from genpi.errors import BasisMismatch, BudgetExceeded
from genpi.codim import (
    _grassmann_reduced_rank,
    codimension,
    consequences_span,
    evaluation_matrix,
    grassmann_codim_stabilized,
    growth_report,
    identity_kernel_basis,
    identity_kernel_polynomials,
    in_consequence_span,
    preset_generators,
    structural_identities,
    variety_contains,
    verify_generating_set,
    verify_grassmann_generating_set,
)
from genpi.polynomials import GenMonomial, basis_size, enumerate_basis, parse, vectorize


def sympy_rank(rows_dicts, ncols):
    """Independent oracle for small evaluation matrices."""
    import sympy

    m = sympy.zeros(len(rows_dicts), ncols)
    for i, row in enumerate(rows_dicts):
        for c, v in row.items():
            m[i, c] = sympy.Rational(v.numerator, v.denominator)
    return m.rank()


def test_matrix_shapes():
    em = evaluation_matrix(preset_action("ut2F"), 1)
    assert (em.rows, em.cols) == (1, 9)
    em = evaluation_matrix(preset_action("ut2D"), 1)
    assert (em.rows, em.cols) == (4, 9)
    em = evaluation_matrix(preset_action("ut2full"), 2)
    assert (em.rows, em.cols) == (54, 27)


def test_codimension_small_values():
    assert codimension(preset_action("ut2F"), 3) == 6
    assert codimension(preset_action("ut2D"), 2) == 6
    assert codimension(preset_action("ut2full"), 1) == 5


def test_codimension_matches_sympy_oracle():
    for name, n in (("ut2D", 1), ("ut2D", 2), ("ut2full", 1), ("ut2C", 2)):
        h = preset_action(name)
        em = evaluation_matrix(h, n)
        assert codimension(h, n) == sympy_rank(em.row_data, em.cols), (name, n)


def test_rank_plus_kernel_is_rows():
    for name in ("ut2F", "ut2D", "ut2C", "ut2full"):
        h = preset_action(name)
        for n in (1, 2):
            rows = basis_size(n, h.s)
            assert codimension(h, n) + identity_kernel_basis(h, n).dim == rows


def test_kernel_examples():
    assert identity_kernel_basis(preset_action("ut2D"), 1).dim == 1
    assert identity_kernel_basis(preset_action("ut2F"), 2).dim == 0
    # the sandwiched-generator relation shows up at degree 1
    h = grassmann_action(1, 4)
    kernel = identity_kernel_basis(h, 1)
    vec = [Fraction(0)] * 4
    vec[GenMonomial(1, (1,), (1, 1)).rank(2)] = Fraction(1)  # e1 x1 e1
    from genpi.linalg import Subspace

    assert kernel.contains(Subspace.from_vectors(4, [vec]))


def test_kernel_polynomials_render():
    polys = identity_kernel_polynomials(preset_action("ut2D"), 1)
    assert len(polys) == 1
    labels = {label for _, label in polys[0]}
    assert labels == {"e22*x1", "e22*x1*e22"}


def test_structural_identities_degree1():
    h = preset_action("ut2D")
    gens = structural_identities(h)
    assert len(gens) == 1
    h = preset_action("ut2full")
    assert len(structural_identities(h)) == 4


def test_consequences_span_examples():
    h = preset_action("ut2D")
    span = consequences_span(preset_generators("ut2D"), h, 3)
    assert span.dim == 96 - 14
    assert consequences_span([], h, 2).dim == 0


def test_consequences_sound():
    # every consequence of identities is an identity: span inside kernel
    h = preset_action("ut2D")
    span = consequences_span(preset_generators("ut2D"), h, 2)
    kernel = identity_kernel_basis(h, 2)
    assert kernel.contains(span)


def test_verify_generating_sets_small_degrees():
    for name in ("ut2F", "ut2D", "ut2C", "ut2full"):
        h = preset_action(name)
        for n in (1, 2, 3):
            assert verify_generating_set(preset_generators(name), h, n), (name, n)


def test_verify_rejects_incomplete_set():
    h = preset_action("ut2D")
    assert verify_generating_set(["[x1,x2]*[x3,x4]"], h, 2) is False


def test_verify_rejects_non_identity():
    h = preset_action("ut2D")
    assert verify_generating_set(["[x1,x2]"], h, 2) is False


def test_classical_consequence():
    # the left-normed triple commutator yields the symmetric product pair
    h = preset_action("ut2F")
    assert in_consequence_span(
        "[x1,x2]*[x3,x4]+[x1,x4]*[x3,x2]", ["[x1,x2,x3]"], h, 4
    )


def test_variety_contains_instances():
    hA, hB = shared_family_presentations("ut2full", "ut2D")
    assert variety_contains(hA, hB, 3)
    hA, hB = shared_family_presentations("ut2C", "ut2F")
    assert variety_contains(hA, hB, 3)
    hA, hB = shared_family_presentations("ut2F", "ut2D")
    assert not variety_contains(hA, hB, 3)


def test_variety_contains_reflexive_and_transitive_instance():
    h = preset_action("ut2D")
    assert variety_contains(h, h, 3)
    hA, hB = shared_family_presentations("ut2full", "ut2D")
    assert variety_contains(hA, hB, 2) and variety_contains(hB, hB, 2)
    assert variety_contains(hA, hB, 2)


def test_variety_contains_needs_shared_coefficients():
    with pytest.raises(BasisMismatch):
        variety_contains(preset_action("ut2full"), preset_action("ut2D"), 2)


def test_grassmann_reduced_matches_brute_force():
    for k, m, n in ((1, 3, 1), (1, 3, 2), (2, 3, 1), (1, 4, 2)):
        h = grassmann_action(k, m)
        assert codimension(h, n) == _grassmann_reduced_rank(k, m, n), (k, m, n)


def test_grassmann_stabilized_small():
    assert grassmann_codim_stabilized(1, 1) == 3
    assert grassmann_codim_stabilized(2, 1) == 7
    assert grassmann_codim_stabilized(1, 2) == 6


def test_grassmann_monotone_in_truncation():
    for k, n in ((1, 1), (1, 2), (2, 1)):
        values = [_grassmann_reduced_rank(k, m, n) for m in range(max(k, n), 2 * n + k + 2)]
        assert all(a <= b for a, b in zip(values, values[1:])), (k, n, values)


def test_full_action_degree1_growth():
    # the m-generator action at stabilized truncation follows the closed
    # form and grows without bound in the acting part
    values = [grassmann_codim_stabilized(m, 1) for m in (1, 2, 3)]
    assert values == [2 ** (m + 1) - 1 for m in (1, 2, 3)]
    assert values[0] < values[1] < values[2]
    # acting on the truncation of the same level loses exactly the fresh
    # support the independence argument needs, one dimension each time
    literal = [codimension(grassmann_action(m, m, full=True), 1) for m in (1, 2, 3)]
    assert literal == [v - 1 for v in values]
    assert literal[0] < literal[1] < literal[2]


def test_verify_grassmann_generating_set_degree1():
    assert verify_grassmann_generating_set(1, 1)


def test_growth_report():
    rep = growth_report(preset_action("ut2F"), 4)
    assert rep.values == [1, 2, 6, 18]
    assert rep.exponent == 2
    assert rep.ratios[1] == Fraction(2, 1)
    d = rep.to_dict()
    assert d["codimensions"] == [1, 2, 6, 18]


def test_budget_error():
    import os

    os.environ["GENPI_MAX_ROWS"] = "10"
    try:
        with pytest.raises(BudgetExceeded) as e:
            codimension(preset_action("ut2D"), 3)
        assert e.value.rows == 96
    finally:
        del os.environ["GENPI_MAX_ROWS"]


def test_evaluation_row_matches_direct_evaluation():
    # entry spot check: row of a monomial equals its evaluation outputs
    h = preset_action("ut2D")
    em = evaluation_matrix(h, 2)
    rng = random.Random(8)
    mons = list(enumerate_basis(2, 2))
    from genpi.polynomials import evaluate

    for _ in range(12):
        ri = rng.randrange(len(mons))
        mon = mons[ri]
        t1, t2 = rng.randrange(3), rng.randrange(3)
        node = parse(mon.label(h).replace("e22", "w1"))
        val = evaluate(node, h, {1: h.A.basis_element(t1), 2: h.A.basis_element(t2)})
        tuple_rank = t1 * 3 + t2
        got = [em.row_data[ri].get(tuple_rank * 3 + k, Fraction(0)) for k in range(3)]
        assert got == list(val.coords)


def test_vectorize_round_trip_with_kernel():
    # a vectorized identity combines evaluation rows to zero
    h = preset_action("ut2D")
    em = evaluation_matrix(h, 2)
    vec = vectorize(parse("[x1,x2]-[x1,x2,w1]"), h, 2)
    acc = {}
    for r, c in vec.items():
        for col, v in em.row_data[r].items():
            acc[col] = acc.get(col, Fraction(0)) + c * v
    assert all(v == 0 for v in acc.values())
