"""Automorphism lifting over the minus-type 2^{1+6}."""

import pytest
from hypothesis import given, settings, strategies as st

from solvlen import atlas
from solvlen.atlas import Extraspecial2Model, model_handle
from solvlen.errors import NotOrthogonal, SearchExhausted, SearchFailed
from solvlen.fpmat import FpMatrix, all_f2_vectors
from solvlen.lift import (AutPair, _f2_nullspace, _form_from_function,
                          f4_model_generators, invariant_quadratic_form,
                          lift_generators, quadratic_correction,
                          two_generator_reduction)

F4_GENS = f4_model_generators()
# the F4 matrices preserve the computed invariant form, not the default
# minus-type cocycle, so build the model exactly as the pipeline does
MODEL = Extraspecial2Model(
    3, "-", cocycle=invariant_quadratic_form(F4_GENS).coeffs)
DEFAULT_MODEL = Extraspecial2Model(3, "-")


def corrected_pairs():
    return [quadratic_correction(a, MODEL) for a in F4_GENS]


def test_quadratic_correction_satisfies_the_law():
    for pair in corrected_pairs():
        assert pair.verify(MODEL)
        # the correction acts as a genuine automorphism on the group
        h = model_handle(MODEL, "e128")
        for x in h.elements()[:40]:
            for y in h.elements()[:10]:
                assert pair.apply(h.mul(x, y)) == \
                    h.mul(pair.apply(x), pair.apply(y))


def test_compose_matches_pointwise_application():
    pairs = corrected_pairs()
    a, b = pairs[0], pairs[3]
    ab = a.compose(b)
    h = model_handle(MODEL, "e128")
    for e in h.elements():
        assert ab.apply(e) == b.apply(a.apply(e))
    ident = AutPair.identity(6)
    for e in h.elements():
        assert ident.apply(e) == e
    assert a.compose(ident).a == a.a
    assert a.compose(ident).q.coeffs == a.q.coeffs


def test_compose_is_associative_on_sample():
    pairs = corrected_pairs()
    a, b, c = pairs[0], pairs[1], pairs[4]
    lhs = a.compose(b).compose(c)
    rhs = a.compose(b.compose(c))
    assert lhs.a == rhs.a and lhs.q.coeffs == rhs.q.coeffs


def test_not_orthogonal_exhibit():
    # a symplectic transvection along a direction of square 1 preserves
    # the polarization but moves the squaring form
    model = DEFAULT_MODEL
    v = (0, 1, 0, 0, 0, 0)
    rows = []
    for i in range(6):
        e = tuple(int(j == i) for j in range(6))
        b = model.polarization(e, v)
        rows.append(tuple(e[j] ^ (b & v[j]) for j in range(6)))
    t = FpMatrix.from_rows(rows, 2)
    # it does preserve the alternating form ...
    for x in all_f2_vectors(6)[:32]:
        for y in all_f2_vectors(6)[:8]:
            assert model.polarization(t.apply(x), t.apply(y)) == \
                model.polarization(x, y)
    # ... but admits no quadratic correction
    with pytest.raises(NotOrthogonal):
        quadratic_correction(t, model)


def test_form_from_function_reads_off_coefficients():
    pair = corrected_pairs()[3]
    q = pair.q
    q2 = _form_from_function(q, 6)
    assert q2.coeffs == q.coeffs


def test_lift_identity_and_unreachable_target():
    ident = FpMatrix.identity(6, 2)
    pairs = lift_generators([ident], MODEL, target_order=2 ** 7)
    assert len(pairs) == 1
    assert pairs[0].a == ident
    with pytest.raises(SearchExhausted):
        lift_generators([ident], MODEL, target_order=3 * 2 ** 7)
    with pytest.raises(SearchExhausted):
        lift_generators([ident], MODEL, target_order=2 ** 7 + 1)


def test_invariant_form_is_invariant_and_minus_type():
    q = invariant_quadratic_form(F4_GENS)
    assert q.arf() == 1
    for a in F4_GENS:
        for v in all_f2_vectors(6):
            assert q(a.apply(v)) == q(v)


def test_invariant_form_failure_path():
    # the full GL_6(2) generators admit no invariant quadratic form
    g = atlas.gl(6, 2)
    with pytest.raises(SearchFailed):
        invariant_quadratic_form(list(g.generators))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_f2_nullspace_oracle(data):
    ncols = data.draw(st.integers(1, 8))
    rows = data.draw(st.lists(
        st.lists(st.integers(0, 1), min_size=ncols, max_size=ncols),
        min_size=0, max_size=10))
    basis = _f2_nullspace(rows, ncols)
    # every basis vector annihilates every row
    for vec in basis:
        for row in rows:
            assert sum(a & b for a, b in zip(row, vec)) % 2 == 0
    # rank-nullity against an independent rank computation
    from solvlen.fpmat import _row_reduce
    rank = len(_row_reduce(rows, 2))
    assert len(basis) == ncols - rank
    # basis vectors are linearly independent (distinct free columns)
    from solvlen.fpmat import _row_reduce as rr
    assert len(rr(basis, 2)) == len(basis)


def test_two_generator_reduction_small():
    s4 = atlas.sym(4)
    g1, g2 = two_generator_reduction(s4, 24)
    h = atlas.perm_handle([g1, g2], 4, "pair")
    assert h.order() == 24
    # ranking prefers elements of maximal order first
    assert s4.element_order(g1) == 4
    with pytest.raises(SearchFailed):
        two_generator_reduction(s4, 25)


def test_f4_restriction_of_scalars():
    qbar = atlas.matrix_handle(F4_GENS, "qbar")
    assert qbar.order() == 1296
    # the scalar w embeds as a 6x6 matrix of order 3
    from solvlen.lift import W, ZERO, _f4_matrix_to_gl6
    wmat = _f4_matrix_to_gl6([[W, ZERO, ZERO], [ZERO, W, ZERO],
                              [ZERO, ZERO, W]])
    assert not wmat.is_identity()
    assert (wmat * wmat * wmat).is_identity()


def test_d8_pipeline(d8data):
    h, report = d8data
    assert h.order() == 165888
    assert report.orders == (165888, 82944, 27648, 6912, 3456, 384, 128,
                             2, 1)
    assert report.d == 8 and report.c == 15
    assert report.n == (1, 1, 2, 1, 2, 1, 6, 1)
