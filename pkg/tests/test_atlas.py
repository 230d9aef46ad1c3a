"""Builder-level checks: orders, structure constants, error paths."""

import pytest

from solvlen import atlas, grp
from solvlen.atlas import (Extraspecial2Model, ExtraspecialOddModel,
                           binary_octahedral, cyclic, direct, extraspecial,
                           exterior_square_group, gl, gl_order, gsp_extension,
                           holomorph_perm, metacyclic, natural_semidirect,
                           qutrit_normalizer, regular, s3mat,
                           semidirect_series_orders, sl, sym,
                           upper_triangular, wreath)
from solvlen.errors import (BadCongruence, BadParameter, CapExceeded,
                            KindMismatch, NotAutomorphism)
from solvlen.fpmat import spin_all_lines


def involution_count(h):
    return sum(1 for x in h.elements()
               if x != h.identity and h.mul(x, x) == h.identity)


def test_basic_orders():
    assert cyclic(1).order() == 1
    assert cyclic(12).order() == 12
    assert sym(5).order() == 120
    for n, p in ((2, 3), (2, 5), (3, 2), (3, 3)):
        assert gl(n, p).order() == gl_order(n, p), (n, p)
        assert sl(n, p).order() == gl_order(n, p) // (p - 1), (n, p)
    for n, p in ((2, 3), (3, 3), (3, 5)):
        assert upper_triangular(n, p).order() == \
            (p - 1) ** n * p ** (n * (n - 1) // 2)
    assert s3mat(5).order() == 6
    assert s3mat(7).order() == 6


def test_regular_representation():
    m = metacyclic(2, 3)
    r = regular(m)
    assert r.degree == 6
    assert r.order() == 6
    assert grp.derived_series(r).orders == (6, 3, 1)


def test_metacyclic():
    h = metacyclic(3, 7)
    assert h.order() == 21
    rep = grp.derived_series(h)
    assert rep.orders == (21, 7, 1)
    with pytest.raises(BadCongruence):
        metacyclic(3, 5)
    with pytest.raises(BadParameter):
        metacyclic(4, 5)


def test_extraspecial_models():
    q8 = extraspecial(2, 1, "-")
    d8 = extraspecial(2, 1, "+")
    assert q8.order() == 8 and d8.order() == 8
    assert involution_count(q8) == 1   # quaternion: only -1
    assert involution_count(d8) == 5   # dihedral: reflections + r^2
    e27 = extraspecial(3, 1)
    assert e27.order() == 27
    assert all(e27.power(x, 3) == e27.identity for x in e27.elements())
    big = extraspecial(2, 3, "-")
    assert big.order() == 2 ** 7
    assert grp.center(big).order == 2
    with pytest.raises(BadParameter):
        extraspecial(2, 1)
    with pytest.raises(BadParameter):
        extraspecial(2, 1, "x")


def test_extraspecial2_model_cocycle_algebra():
    model = Extraspecial2Model(2, "-")
    vecs = [(1, 0, 0, 0), (0, 1, 1, 0), (1, 1, 1, 1)]
    for v in vecs:
        for w in vecs:
            assert model.polarization(v, w) == \
                model.bform(v, w) ^ model.bform(w, v)
    # inverse law
    h = atlas.model_handle(model, "t")
    for x in h.elements():
        assert h.mul(x, model.inv(x)) == h.identity


def test_odd_model_symplectic_twist():
    model = ExtraspecialOddModel(5, 1)
    assert model.pair((1, 0), (0, 1)) == 1
    assert model.pair((0, 1), (1, 0)) == 4
    a, b = (1, 0, 0), (0, 1, 0)
    ab = model.mul(a, b)
    ba = model.mul(b, a)
    # commutator lands in the center with the symplectic value
    assert ab[:-1] == ba[:-1]
    assert (ab[-1] - ba[-1]) % 5 == model.pair((1, 0), (0, 1))


def test_wreath_and_direct():
    w = wreath(sym(3), cyclic(2))
    assert w.degree == 6
    assert w.order() == 72
    d = direct(sym(4), cyclic(5))
    assert d.degree == 9
    assert d.order() == 120
    with pytest.raises(KindMismatch):
        wreath(gl(2, 3), cyclic(2))
    with pytest.raises(KindMismatch):
        direct(sym(3), gl(2, 3))


def test_natural_semidirect():
    h = natural_semidirect(s3mat(5), 2)
    assert h.degree == 25
    assert h.order() == 150
    rep = grp.derived_series(h)
    assert rep.orders == (150, 75, 25, 1)
    assert rep.n == (1, 1, 2)
    # the d = 5 cross-witness
    h2 = natural_semidirect(gl(2, 3), 2)
    rep2 = grp.derived_series(h2)
    assert h2.order() == 48 * 9
    assert rep2.d == 5 and rep2.c == 7
    with pytest.raises(KindMismatch):
        natural_semidirect(sym(3), 2)
    with pytest.raises(BadParameter):
        natural_semidirect(s3mat(5), 3)


def test_gsp_extension():
    h = gsp_extension(gl(2, 3), 3, 1)
    assert h.order() == 1296
    rep = grp.derived_series(h)
    assert rep.orders == (1296, 648, 216, 54, 27, 3, 1)
    assert rep.n == (1, 1, 2, 1, 2, 1)
    assert rep.quotient_orders == (2, 3, 4, 2, 9, 3)
    with pytest.raises(BadParameter):
        gsp_extension(gl(2, 3), 2, 1)


def test_holomorph_rejects_non_automorphisms():
    e27 = extraspecial(3, 1)

    def bogus(e):  # swaps two coordinates without fixing the cocycle
        return (e[1], e[0], e[2])

    with pytest.raises(NotAutomorphism) as exc:
        holomorph_perm(e27, [bogus])
    assert exc.value.witness is not None


def test_holomorph_cap():
    with pytest.raises(CapExceeded):
        holomorph_perm(atlas.cyclic(2 ** 18), [])


def test_qutrit_normalizer():
    h = qutrit_normalizer(7)
    assert h.order() == 648
    assert h.omega == 2  # smallest cube root of unity mod 7
    irr, _ = spin_all_lines(h.generators)
    assert irr
    rep = grp.derived_series(h)
    assert rep.orders == (648, 216, 54, 27, 3, 1)
    assert rep.n == (1, 2, 1, 2, 1)
    with pytest.raises(BadCongruence):
        qutrit_normalizer(5)
    with pytest.raises(BadParameter):
        qutrit_normalizer(37)


def test_qutrit_normalizer_other_primes():
    for p in (13, 19):
        assert qutrit_normalizer(p).order() == 648


def test_binary_octahedral():
    bo = binary_octahedral()
    assert bo.order() == 48
    assert involution_count(bo) == 1
    g = gl(2, 3)
    assert involution_count(g) == 13  # same order, different group
    rep = grp.derived_series(bo)
    assert rep.orders == (48, 24, 8, 2, 1)
    assert rep.n == (1, 1, 2, 1)


def test_exterior_square_group():
    h = exterior_square_group(3)
    assert h.order() == 3 ** 6
    rep = grp.derived_series(h)
    # derived subgroup is exactly Lambda^2 V
    assert rep.orders == (729, 27, 1)
    assert all(h.power(x, 3) == h.identity for x in h.elements())


def test_semidirect_series_orders():
    # the structural route for the qutrit normalizer acting on the p^6
    # exterior-square group: the P-part stays full while K^(i) is
    # nontrivial, then drops through Lambda^2 V to 1
    k = qutrit_normalizer(7)
    hints = semidirect_series_orders(k, 7)
    p6 = 7 ** 6
    assert hints == (648 * p6, 216 * p6, 54 * p6, 27 * p6, 3 * p6, p6,
                     7 ** 3, 1)


def test_semidirect_series_orders_refuses_unsupported_shapes():
    # permutation matrices of S3 move only the augmentation subspace of V
    # (v-rank 2); the routine must refuse rather than guess
    from solvlen.errors import SearchFailed
    from solvlen.fpmat import FpMatrix
    rot = FpMatrix.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]], 7)
    swap = FpMatrix.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]], 7)
    k = atlas.matrix_handle([rot, swap], "s3perm")
    with pytest.raises(SearchFailed):
        semidirect_series_orders(k, 7)


def test_prop8_congruence_guards():
    with pytest.raises(BadCongruence):
        atlas.prop8_group(5)
    with pytest.raises(BadParameter):
        atlas.prop8_group(13)
