"""Char-2 automorphism lifting and the derived-length-8 witness.

Over F_2 a matrix A preserving the polarization of an extraspecial model
2^{1+2n} does not automatically act on the group: the cocycle picks up a
quadratic defect.  quadratic_correction solves for a form q so that
(v, z) -> (vA, z + q(v)) multiplies correctly, which is possible exactly
when A also preserves the squaring form.  The corrections are unique up to
a linear functional, and lift_generators searches those offsets for the
combination generating a split extension of the right order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (BadParameter, NotOrthogonal, SearchExhausted,
                     SearchFailed, Singular)
from .fpmat import FpMatrix, QuadraticFormF2, all_f2_vectors, mat_invert
from .grp import derived_series
from .atlas import (Extraspecial2Model, holomorph_perm, matrix_handle,
                    model_handle)

F4_MUL = {}  # (a1, b1, a2, b2) -> product in F_4 = F_2[w]/(w^2+w+1)
for a1 in (0, 1):
    for b1 in (0, 1):
        for a2 in (0, 1):
            for b2 in (0, 1):
                F4_MUL[(a1, b1, a2, b2)] = ((a1 & a2) ^ (b1 & b2),
                                            (a1 & b2) ^ (a2 & b1) ^ (b1 & b2))


@dataclass(frozen=True)
class AutPair:
    """Automorphism (v, z) -> (vA, z + q(v)) of an Extraspecial2Model."""

    a: FpMatrix
    q: QuadraticFormF2

    def __post_init__(self):
        if self.a.p != 2 or self.a.n != self.q.dim:
            raise BadParameter("matrix and form dimensions differ")

    def apply(self, e):
        v = self.a.apply(e[:-1])
        return v + (e[-1] ^ self.q(e[:-1]),)

    def compose(self, other):
        """self applied first, then other."""
        a = self.a * other.a

        def total(v):
            return self.q(v) ^ other.q(self.a.apply(v))

        return AutPair(a, _form_from_function(total, self.q.dim))

    @staticmethod
    def identity(dim):
        return AutPair(FpMatrix.identity(dim, 2),
                       QuadraticFormF2.from_upper([[0] * dim
                                                   for _ in range(dim)]))

    def verify(self, model: Extraspecial2Model):
        """Exhaustive automorphism-law check (4096 pairs for 2n = 6)."""
        for v1 in all_f2_vectors(self.q.dim):
            av1 = self.a.apply(v1)
            for v2 in all_f2_vectors(self.q.dim):
                lhs = self.q(tuple(x ^ y for x, y in zip(v1, v2))) \
                    ^ self.q(v1) ^ self.q(v2)
                rhs = model.bform(av1, self.a.apply(v2)) ^ model.bform(v1, v2)
                if lhs != rhs:
                    return False
        return True


def _form_from_function(f, dim):
    """The unique quadratic form agreeing with f on F_2^dim (f must be
    quadratic with f(0) = 0; coefficients read off basis values)."""
    basis = [tuple(int(i == k) for k in range(dim)) for i in range(dim)]
    coeffs = [[0] * dim for _ in range(dim)]
    for i in range(dim):
        coeffs[i][i] = f(basis[i])
    for i in range(dim):
        for j in range(i + 1, dim):
            vij = tuple(x ^ y for x, y in zip(basis[i], basis[j]))
            coeffs[i][j] = f(vij) ^ f(basis[i]) ^ f(basis[j])
    return QuadraticFormF2.from_upper(coeffs)


def quadratic_correction(a: FpMatrix, model: Extraspecial2Model) -> AutPair:
    """Solve for q making (v,z) -> (vA, z + q(v)) an automorphism.

    The required polarization of q is B(v1 A, v2 A) + B(v1, v2); a solution
    exists iff that defect vanishes on the diagonal, i.e. A preserves the
    squaring form.  The returned q has zero linear part.
    """
    if a.p != 2 or a.n != 2 * model.n:
        raise BadParameter("matrix does not match the model dimension")
    mat_invert(a)  # must be invertible
    dim = a.n
    for v in all_f2_vectors(dim):
        if model.squaring(a.apply(v)) != model.squaring(v):
            raise NotOrthogonal(
                "matrix moves the squaring form; no correction exists")

    # the law says the polarization of q must equal the bilinear defect
    # dB(v1, v2) = B(v1 A, v2 A) + B(v1, v2); dB is symmetric with zero
    # diagonal (the squaring check above), so the off-diagonal monomial
    # form with those coefficients works and has zero linear part
    basis = [tuple(int(i == k) for k in range(dim)) for i in range(dim)]
    imgs = [a.apply(b) for b in basis]
    coeffs = [[0] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            coeffs[i][j] = model.bform(imgs[i], imgs[j]) \
                ^ model.bform(basis[i], basis[j])
    pair = AutPair(a, QuadraticFormF2.from_upper(coeffs))
    if not pair.verify(model):
        raise SearchFailed("correction failed the exhaustive law check")
    return pair


def _linear_offset(lam, dim):
    coeffs = [[0] * dim for _ in range(dim)]
    for i in range(dim):
        coeffs[i][i] = (lam >> i) & 1
    return QuadraticFormF2.from_upper(coeffs)


def lift_generators(mats, model: Extraspecial2Model, target_order=None):
    """Lift a 2-element matrix generating set to AutPairs generating a
    split copy of the linear group inside Aut(2^{1+2n}).

    Offsets by linear functionals keep each pair an automorphism; the
    search scans all 2^{2n} x 2^{2n} offset combinations in ascending
    order and accepts the first whose generated automorphism group has
    exactly the order of the linear group.
    """
    if not mats:
        raise BadParameter("need at least one matrix")
    lin = matrix_handle(list(mats), "lift target")
    lin_order = lin.order()
    if target_order is None:
        target_order = lin_order * 2 ** (2 * model.n + 1)
    base = [quadratic_correction(a, model) for a in mats]
    dim = 2 * model.n

    ph = model_handle(model, "lift base")
    elems = ph.elements()
    index = {e: i for i, e in enumerate(elems)}

    def pair_perm(pair):
        return tuple(index[pair.apply(e)] for e in elems)

    from . import perm as permmod
    achieved = []
    psize = 2 ** (2 * model.n + 1)
    want = target_order // psize
    if want * psize != target_order or want > lin_order:
        raise SearchExhausted(
            f"target order {target_order} is unreachable", achieved)
    offsets = range(2 ** dim)
    variants = []
    for gi in range(len(base)):
        vs = []
        for lam in offsets:
            p = AutPair(base[gi].a, _q_add(base[gi].q,
                                           _linear_offset(lam, dim)))
            vs.append((p, permmod.as_perm(pair_perm(p))))
        variants.append(vs)

    if len(base) == 1:
        for p, perm in variants[0]:
            b = permmod.schreier_sims([perm])
            achieved.append(b.order())
            if b.order() == want:
                return [p]
        raise SearchExhausted(
            f"no offsets reach order {target_order}", sorted(set(achieved)))

    # a split section is an isomorphism onto the linear group, so the
    # order of every word in the lifts must match the matrix side; short
    # words prune the 64 x 64 offset grid to a handful of candidates
    mat_words = [(0,), (1,), (0, 1), (0, 0, 1), (0, 1, 1)]
    mat_order = {w: _word_order_mat(mats, lin, w) for w in mat_words}
    keep0 = [(p, perm) for p, perm in variants[0]
             if permmod.perm_order_of(perm) == mat_order[(0,)]]
    keep1 = [(p, perm) for p, perm in variants[1]
             if permmod.perm_order_of(perm) == mat_order[(1,)]]
    for p0, perm0 in keep0:
        for p1, perm1 in keep1:
            ok = True
            for w in mat_words[2:]:
                prod = perm0 if w[0] == 0 else perm1
                for idx in w[1:]:
                    prod = permmod.perm_mul(prod,
                                            perm0 if idx == 0 else perm1)
                if permmod.perm_order_of(prod) != mat_order[w]:
                    ok = False
                    break
            if not ok:
                continue
            b = permmod.schreier_sims([perm0, perm1])
            achieved.append(b.order())
            if b.order() == want:
                return [p0, p1]
    raise SearchExhausted(
        f"no offsets reach order {target_order}", sorted(set(achieved)))


def _word_order_mat(mats, lin, word):
    prod = mats[word[0]]
    for idx in word[1:]:
        prod = prod * mats[idx]
    return lin.element_order(prod)


def _q_add(q1, q2):
    coeffs = [[a ^ b for a, b in zip(r1, r2)]
              for r1, r2 in zip(q1.coeffs, q2.coeffs)]
    return QuadraticFormF2.from_upper(coeffs)


# ---------------------------------------------------------------------------
# the order-165888 witness of derived length 8


def _f4_matrix_to_gl6(rows):
    """Restrict scalars: a 3x3 matrix with F_4 entries (a, b) meaning
    a + bw becomes a 6x6 F_2 matrix of 2x2 blocks [[a, b], [b, a+b]]."""
    out = [[0] * 6 for _ in range(6)]
    for i in range(3):
        for j in range(3):
            a, b = rows[i][j]
            out[2 * i][2 * j] = a
            out[2 * i][2 * j + 1] = b
            out[2 * i + 1][2 * j] = b
            out[2 * i + 1][2 * j + 1] = a ^ b
    return FpMatrix.from_rows(out, 2)


def _frobenius_gl6():
    """x -> x^2 on F_4, componentwise: blocks 1 -> 1, w -> 1 + w."""
    out = [[0] * 6 for _ in range(6)]
    for i in range(3):
        out[2 * i][2 * i] = 1
        out[2 * i + 1][2 * i] = 1
        out[2 * i + 1][2 * i + 1] = 1
    return FpMatrix.from_rows(out, 2)


ZERO, ONE, W, W2 = (0, 0), (1, 0), (0, 1), (1, 1)


def f4_model_generators():
    """The 1296-element linear group over F_4, restricted to GL_6(2):
    qutrit shift, two diagonal phase matrices, the Fourier matrix, and
    the field automorphism."""
    x = [[ZERO, ONE, ZERO], [ZERO, ZERO, ONE], [ONE, ZERO, ZERO]]
    z = [[ONE, ZERO, ZERO], [ZERO, W, ZERO], [ZERO, ZERO, W2]]
    s = [[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, W]]
    pow_w = [ONE, W, W2]
    m = [[pow_w[(j * k) % 3] for k in range(3)] for j in range(3)]
    mats = [_f4_matrix_to_gl6(r) for r in (x, z, s, m)]
    mats.append(_frobenius_gl6())
    return mats


def two_generator_reduction(handle, order):
    """First pair (by descending element order, then enumeration index)
    generating the whole group.

    Works on the Cayley graph: each element e gets its right-translation
    index array col_e (col_e[x] = index of x * e), built by composing
    generator columns along the BFS, so a candidate pair is tested by an
    integer orbit walk instead of matrix arithmetic.
    """
    import numpy as np
    elems = handle.elements()
    if len(elems) != order:
        raise SearchFailed(f"group has order {len(elems)}, wanted {order}")
    index = {e: i for i, e in enumerate(elems)}
    gen_cols = [np.array([index[handle.mul(x, g)] for x in elems],
                         dtype=np.int32) for g in handle.generators]
    cols = {0: np.arange(order, dtype=np.int32)}
    queue = [0]
    while queue:
        e = queue.pop()
        for gc in gen_cols:
            new = gc[cols[e]]
            ni = int(new[0])
            if ni not in cols:
                cols[ni] = new
                queue.append(ni)
    if len(cols) != order:
        raise SearchFailed("translation table construction incomplete")

    def elt_order(i):
        x, n = int(cols[i][0]), 1
        while x != 0:
            x = int(cols[i][x])
            n += 1
        return n

    ranked = sorted(range(order), key=lambda i: (-elt_order(i), i))

    def generates(i1, i2):
        c1, c2 = cols[i1], cols[i2]
        seen = bytearray(order)
        seen[0] = 1
        stack = [0]
        count = 1
        while stack:
            x = stack.pop()
            for c in (c1, c2):
                y = int(c[x])
                if not seen[y]:
                    seen[y] = 1
                    count += 1
                    stack.append(y)
        return count == order

    for i1 in ranked:
        for i2 in ranked:
            if generates(i1, i2):
                return [elems[i1], elems[i2]]
    raise SearchFailed("no 2-element generating set found")


def invariant_quadratic_form(mats):
    """Solve the linear system q(vA) = q(v) over the coefficient space and
    return a nondegenerate solution of minus type (Arf 1)."""
    if not mats:
        raise BadParameter("need at least one matrix")
    dim = mats[0].n
    pairs = [(i, j) for i in range(dim) for j in range(i, dim)]
    rows = []
    for a in mats:
        for v in all_f2_vectors(dim):
            av = a.apply(v)
            row = [(av[i] & av[j]) ^ (v[i] & v[j]) for i, j in pairs]
            if any(row):
                rows.append(row)
    basis = _f2_nullspace(rows, len(pairs))
    best = None
    for mask in range(1, 2 ** len(basis)):
        combo = [0] * len(pairs)
        for bi, vec in enumerate(basis):
            if (mask >> bi) & 1:
                combo = [a ^ b for a, b in zip(combo, vec)]
        coeffs = [[0] * dim for _ in range(dim)]
        for (i, j), c in zip(pairs, combo):
            coeffs[i][j] = c
        q = QuadraticFormF2.from_upper(coeffs)
        try:
            arf = q.arf()
        except BadParameter:
            continue
        if arf == 1:
            return q
        best = q
    if best is not None:
        raise SearchFailed("invariant forms exist but none has Arf 1")
    raise SearchFailed("no nondegenerate invariant quadratic form")


def _f2_nullspace(rows, ncols):
    """Basis of the right nullspace of the F_2 matrix given by rows.

    Maintains reduced row echelon form so each pivot row is supported on
    its pivot column and free columns only; nullspace vectors then read
    off directly.
    """
    pivots = {}  # pivot column -> row
    for row in rows:
        row = list(row)
        for col, prow in pivots.items():
            if row[col]:
                row = [a ^ b for a, b in zip(row, prow)]
        lead = next((c for c, x in enumerate(row) if x), None)
        if lead is not None:
            for col, prow in list(pivots.items()):
                if prow[lead]:
                    pivots[col] = [a ^ b for a, b in zip(prow, row)]
            pivots[lead] = row
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for col, prow in pivots.items():
            vec[col] = prow[f]
        basis.append(vec)
    return basis


_D8_CACHE = {}


def d8_group():
    """The degree-128 witness of derived length 8: a 1296-element linear
    group over F_2^6 lifted onto the minus-type extraspecial 2^{1+6}.

    Returns (handle, report); both are cached since the pipeline involves
    a lift search.
    """
    if "group" in _D8_CACHE:
        return _D8_CACHE["group"]
    mats = f4_model_generators()
    qbar = matrix_handle(mats, "qbar")
    if qbar.order() != 1296:
        raise SearchFailed(f"stage i: linear group has order {qbar.order()}")
    g1, g2 = two_generator_reduction(qbar, 1296)
    q_inv = invariant_quadratic_form([g1, g2])
    dim = 6
    coeffs = [list(r) for r in q_inv.coeffs]
    model = Extraspecial2Model(3, "-", cocycle=tuple(tuple(r)
                                                     for r in coeffs))
    if _form_from_function(model.squaring, dim).coeffs != q_inv.coeffs:
        raise SearchFailed("stage iii: cocycle does not reproduce the form")
    pairs = lift_generators([g1, g2], model)
    ph = model_handle(model, "2^(1+6)-")
    h = holomorph_perm(ph, [p.apply for p in pairs])
    h.name = "d8()"
    if h.order() != 165888:
        raise SearchFailed(f"stage v: order {h.order()}")
    report = derived_series(h)
    if report.d != 8 or report.c != 15:
        raise SearchFailed(f"stage v: d = {report.d}, c = {report.c}")
    _D8_CACHE["group"] = (h, report)
    return h, report
