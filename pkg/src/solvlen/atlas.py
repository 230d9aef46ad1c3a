"""Named constructions of the witness groups.

Every builder returns a GroupHandle whose elements are plain hashable
values: image tuples for permutation groups, FpMatrix for matrix groups,
and coordinate tuples for the extraspecial / exterior-square models.
Construction-time checks verify the cheap invariants (orders, centers);
the expensive series invariants live in the test-suite.
"""

from __future__ import annotations

import numpy as np

from .errors import (BadCongruence, BadParameter, CapExceeded, KindMismatch,
                     NotAutomorphism, ScalarSearchFailed, SearchFailed)
from .fpmat import (FpMatrix, SymplecticForm, check_prime, mat_invert,
                    similitude_factor, spin_all_lines, wedge_square, wedge_vec)
from .grp import GroupHandle, factorize

HOLOMORPH_CAP = 200_000


# ---------------------------------------------------------------------------
# handle constructors


def _perm_mul(a, b):
    return tuple(b[x] for x in a)


def _perm_inv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def perm_handle(gens, degree, name=""):
    ident = tuple(range(degree))
    gens = [tuple(g) for g in gens if tuple(g) != ident]
    return GroupHandle(ident, gens, _perm_mul, _perm_inv,
                       name=name, kind="perm", degree=degree)


def matrix_handle(gens, name=""):
    if not gens:
        raise BadParameter("matrix handle needs at least one generator")
    p, n = gens[0].p, gens[0].n
    for g in gens:
        if g.p != p or g.n != n:
            raise BadParameter("mixed matrix dimensions")
        mat_invert(g)
    ident = FpMatrix.identity(n, p)

    def inv(a):
        return mat_invert(a)[0]

    return GroupHandle(ident, [g for g in gens if g != ident],
                       lambda a, b: a * b, inv,
                       name=name, kind="matrix")


# ---------------------------------------------------------------------------
# extraspecial and exterior-square models


class ExtraspecialOddModel:
    """p^{1+2n} of exponent p, p odd.

    Elements are tuples (v_0..v_{2n-1}, z); the product twists z by
    h * <v1, v2> with h = (p+1)/2 and <,> the standard symplectic form.
    The half element makes (v, z) -> (vA, lam*z) an automorphism exactly
    when A is a lam-similitude.
    """

    def __init__(self, p, n):
        check_prime(p)
        if p == 2:
            raise BadParameter("odd model needs p odd")
        self.p = p
        self.n = n
        self.half = (p + 1) // 2
        self.identity = (0,) * (2 * n + 1)

    def pair(self, v1, v2):
        n = self.n
        return sum(v1[i] * v2[n + i] - v1[n + i] * v2[i]
                   for i in range(n)) % self.p

    def mul(self, a, b):
        p, n = self.p, self.n
        v = tuple((a[i] + b[i]) % p for i in range(2 * n))
        z = (a[-1] + b[-1] + self.half * self.pair(a[:-1], b[:-1])) % p
        return v + (z,)

    def inv(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def generators(self):
        out = []
        for i in range(2 * self.n):
            v = [0] * (2 * self.n + 1)
            v[i] = 1
            out.append(tuple(v))
        return out


class Extraspecial2Model:
    """2^{1+2n} of type eps via an upper-triangular cocycle over F_2.

    The cocycle is B(v, w) = v C w^T with C upper triangular; its
    symmetrization is the standard alternating form, and the squaring map
    v -> B(v, v) is a quadratic form whose Arf invariant selects the type
    (eps = '-' iff Arf 1).
    """

    def __init__(self, n, eps, cocycle=None):
        if eps not in ("+", "-"):
            raise BadParameter("eps must be '+' or '-'")
        self.n = n
        self.eps = eps
        dim = 2 * n
        if cocycle is None:
            c = [[0] * dim for _ in range(dim)]
            for i in range(n):
                c[i][n + i] = 1
            if eps == "-":
                c[0][0] = 1
                c[n][n] = 1
            cocycle = tuple(tuple(row) for row in c)
        self.cocycle = cocycle
        self.identity = (0,) * (dim + 1)

    def bform(self, v1, v2):
        s = 0
        for i, row in enumerate(self.cocycle):
            if v1[i]:
                s ^= sum(row[j] & v2[j] for j in range(len(row))) & 1
        return s

    def squaring(self, v):
        return self.bform(v, v)

    def polarization(self, v, w):
        return (self.bform(v, w) + self.bform(w, v)) % 2

    def mul(self, a, b):
        dim = 2 * self.n
        v = tuple(a[i] ^ b[i] for i in range(dim))
        z = a[-1] ^ b[-1] ^ self.bform(a[:-1], b[:-1])
        return v + (z,)

    def inv(self, a):
        # (v,z)^-1 = (v, z + B(v,v))
        return a[:-1] + (a[-1] ^ self.squaring(a[:-1]),)

    def generators(self):
        out = []
        for i in range(2 * self.n):
            v = [0] * (2 * self.n + 1)
            v[i] = 1
            out.append(tuple(v))
        return out


class ExtSqModel:
    """P = V x Lambda^2 V for V = F_p^3, product twisting by v1 ^ v2."""

    def __init__(self, p):
        check_prime(p)
        if p == 2:
            raise BadParameter("exterior-square model needs p odd")
        self.p = p
        self.identity = (0,) * 6

    def mul(self, a, b):
        p = self.p
        v1, w1, v2, w2 = a[:3], a[3:], b[:3], b[3:]
        wedge = wedge_vec(v1, v2, p)
        return (tuple((x + y) % p for x, y in zip(v1, v2))
                + tuple((x + y + t) % p for x, y, t in zip(w1, w2, wedge)))

    def inv(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def generators(self):
        out = []
        for i in range(6):
            v = [0] * 6
            v[i] = 1
            out.append(tuple(v))
        return out


def model_handle(model, name=""):
    return GroupHandle(model.identity, model.generators(),
                       model.mul, model.inv, name=name, kind="model")


# ---------------------------------------------------------------------------
# basic groups


def _primitive_root(p):
    if p == 2:
        return 1
    for g in range(2, p):
        seen = set()
        x = 1
        for _ in range(p - 1):
            x = x * g % p
            seen.add(x)
        if len(seen) == p - 1:
            return g
    raise BadParameter(f"no primitive root mod {p}")


def cyclic(n):
    if n < 1:
        raise BadParameter("cyclic(n) needs n >= 1")
    if n == 1:
        return perm_handle([], 1, "cyclic(1)")
    rot = tuple((i + 1) % n for i in range(n))
    return perm_handle([rot], n, f"cyclic({n})")


def sym(n):
    if n < 1:
        raise BadParameter("sym(n) needs n >= 1")
    if n == 1:
        return perm_handle([], 1, "sym(1)")
    swap = tuple([1, 0] + list(range(2, n)))
    rot = tuple((i + 1) % n for i in range(n))
    gens = [swap] if n == 2 else [swap, rot]
    return perm_handle(gens, n, f"sym({n})")


def gl(n, p):
    check_prime(p)
    if n < 1:
        raise BadParameter("gl needs n >= 1")
    zeta = _primitive_root(p)
    gens = []
    d = [[0] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = 1
    d[0][0] = zeta
    gens.append(FpMatrix.from_rows(d, p))
    if n >= 2:
        cyc = [[0] * n for _ in range(n)]
        for i in range(n):
            cyc[i][(i + 1) % n] = 1
        gens.append(FpMatrix.from_rows(cyc, p))
        tv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        tv[0][1] = 1
        gens.append(FpMatrix.from_rows(tv, p))
    return matrix_handle(gens, f"gl({n},{p})")


def gl_order(n, p):
    out = 1
    for i in range(n):
        out *= p ** n - p ** i
    return out


def sl(n, p):
    check_prime(p)
    if n < 1:
        raise BadParameter("sl needs n >= 1")
    if n == 1:
        return matrix_handle([FpMatrix.identity(1, p)], f"sl(1,{p})")
    gens = []
    tv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    tv[0][1] = 1
    gens.append(FpMatrix.from_rows(tv, p))
    cyc = [[0] * n for _ in range(n)]
    for i in range(n):
        cyc[i][(i + 1) % n] = 1
    cyc[n - 1][0] = (-1) ** (n - 1) % p
    gens.append(FpMatrix.from_rows(cyc, p))
    return matrix_handle(gens, f"sl({n},{p})")


def upper_triangular(n, p):
    check_prime(p)
    zeta = _primitive_root(p)
    gens = []
    for k in range(n):
        d = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        d[k][k] = zeta
        gens.append(FpMatrix.from_rows(d, p))
    for i in range(n - 1):
        e = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        e[i][i + 1] = 1
        gens.append(FpMatrix.from_rows(e, p))
    return matrix_handle(gens, f"ut({n},{p})")


def regular(handle):
    """Right-regular permutation representation of an enumerable handle."""
    elems = handle.elements()
    index = {e: i for i, e in enumerate(elems)}
    gens = [tuple(index[handle.mul(x, g)] for x in elems)
            for g in handle.generators]
    return perm_handle(gens, len(elems), f"regular({handle.name})")


def s3mat(p):
    """The standard 2-dimensional S3 matrices over F_p."""
    check_prime(p)
    a = FpMatrix.from_rows([[0, p - 1], [1, p - 1]], p)
    b = FpMatrix.from_rows([[0, 1], [1, 0]], p)
    return matrix_handle([a, b], f"s3mat({p})")


def basic_group(name, *params):
    table = {"cyclic": cyclic, "sym": sym, "gl": gl, "sl": sl,
             "upper_triangular": upper_triangular, "regular": regular,
             "s3mat": s3mat}
    if name not in table:
        raise BadParameter(f"unknown basic group {name!r}")
    return table[name](*params)


# ---------------------------------------------------------------------------
# metacyclic, extraspecial, wreath, direct


def metacyclic(p, q):
    check_prime(p)
    check_prime(q)
    if q % p != 1:
        raise BadCongruence(f"metacyclic({p},{q}) needs q = 1 mod p")
    k = next(k for k in range(2, q)
             if _mult_order(k, q) == p)
    b = tuple((x + 1) % q for x in range(q))
    a = tuple(x * k % q for x in range(q))
    h = perm_handle([a, b], q, f"metacyclic({p},{q})")
    h.name = f"metacyclic({p},{q})"
    return h


def _mult_order(k, q):
    x = k % q
    n = 1
    while x != 1:
        x = x * k % q
        n += 1
    return n


def extraspecial(p, n, eps=None):
    check_prime(p)
    if n < 1:
        raise BadParameter("extraspecial needs n >= 1")
    if p == 2:
        if eps not in ("+", "-"):
            raise BadParameter("extraspecial(2, n, eps) needs eps '+' or '-'")
        model = Extraspecial2Model(n, eps)
        h = model_handle(model, f"extraspecial(2,{n},{eps})")
    else:
        model = ExtraspecialOddModel(p, n)
        h = model_handle(model, f"extraspecial({p},{n})")
    h.model = model
    if p ** (1 + 2 * n) <= 2 ** 14:
        _check_extraspecial(h, model, p, n)
    return h


def _check_extraspecial(handle, model, p, n):
    elems = handle.elements()
    assert len(elems) == p ** (1 + 2 * n)
    central = [e for e in elems
               if all(handle.mul(e, g) == handle.mul(g, e)
                      for g in handle.generators)]
    assert len(central) == p
    if p > 2:
        assert all(handle.power(e, p) == handle.identity for e in elems)


def wreath(h, k):
    """Imprimitive wreath product: base h^deg(k) permuted by the top k."""
    if not (h.is_perm() and k.is_perm()):
        raise KindMismatch("wreath needs two permutation handles")
    m, n = h.degree, k.degree
    gens = []
    for g in h.generators:
        img = list(range(m * n))
        for j in range(m):
            img[j] = g[j]
        gens.append(tuple(img))
    for g in k.generators:
        gens.append(tuple(g[i // m] * m + (i % m) for i in range(m * n)))
    return perm_handle(gens, m * n, f"wr({h.name},{k.name})")


def direct(h, k):
    if not (h.is_perm() and k.is_perm()):
        raise KindMismatch("direct needs two permutation handles")
    m, n = h.degree, k.degree
    gens = [tuple(list(g) + list(range(m, m + n))) for g in h.generators]
    gens += [tuple(list(range(m)) + [m + x for x in g]) for g in k.generators]
    return perm_handle(gens, m + n, f"direct({h.name},{k.name})")


# ---------------------------------------------------------------------------
# semidirect products and holomorph embeddings


def holomorph_perm(p_handle, auts):
    """Faithful permutation group on the elements of P generated by right
    translations and the given automorphism maps."""
    elems = p_handle.elements()
    if len(elems) > HOLOMORPH_CAP:
        raise CapExceeded(f"holomorph base of size {len(elems)}")
    index = {e: i for i, e in enumerate(elems)}
    exhaustive = len(elems) <= 10_000
    for a in auts:
        pool = elems if exhaustive else elems[:200]
        for x in pool:
            for y in pool:
                if a(p_handle.mul(x, y)) != p_handle.mul(a(x), a(y)):
                    raise NotAutomorphism("map breaks multiplication",
                                          witness=(x, y))
    gens = [tuple(index[p_handle.mul(x, g)] for x in elems)
            for g in p_handle.generators]
    gens += [tuple(index[a(x)] for x in elems) for a in auts]
    return perm_handle(gens, len(elems), f"hol({p_handle.name})")


def natural_semidirect(m_handle, n):
    """Affine group: matrix group m_handle acting on F_p^n by x -> xA + t."""
    if m_handle.kind != "matrix":
        raise KindMismatch("natural_semidirect needs a matrix handle")
    sample = m_handle.generators[0] if m_handle.generators else m_handle.identity
    p = sample.p
    if sample.n != n:
        raise BadParameter(f"matrix dimension {sample.n} != {n}")
    npts = p ** n
    if npts > HOLOMORPH_CAP:
        raise CapExceeded("affine point count too large")

    def decode(i):
        v = []
        for _ in range(n):
            v.append(i % p)
            i //= p
        return tuple(v)

    def encode(v):
        out = 0
        for x in reversed(v):
            out = out * p + x
        return out

    pts = [decode(i) for i in range(npts)]
    gens = []
    for a in m_handle.generators:
        gens.append(tuple(encode(a.apply(v)) for v in pts))
    for i in range(n):
        e = [0] * n
        e[i] = 1
        gens.append(tuple(encode(tuple((v[j] + e[j]) % p for j in range(n)))
                          for v in pts))
    return perm_handle(gens, npts, f"natsd({m_handle.name},{n})")


def gsp_extension(s_handle, p, n):
    """GSp-type split extension acting on the odd extraspecial p^{1+2n}."""
    if p == 2:
        raise BadParameter("gsp_extension needs p odd")
    form = SymplecticForm.standard(2 * n, p)
    lams = {}
    for a in (s_handle.generators if hasattr(s_handle, "generators")
              else s_handle):
        lams[a] = similitude_factor(a, form)  # raises NotSimilitude
    model = ExtraspecialOddModel(p, n)
    ph = model_handle(model, f"E_{p}^(1+{2*n})")

    def make_aut(a, lam):
        def aut(e):
            v = a.apply(e[:-1])
            return v + (e[-1] * lam % p,)
        return aut

    auts = [make_aut(a, lam) for a, lam in lams.items()]
    h = holomorph_perm(ph, auts)
    h.name = f"gsp({s_handle.name},{p},{n})"
    return h


# ---------------------------------------------------------------------------
# the qutrit normalizer (Sp2(3) x| E_3 inside GL_3(p))


def smallest_cube_root(p):
    for w in range(2, p):
        if w * w * w % p == 1:
            return w
    raise BadCongruence(f"no nontrivial cube root of unity mod {p}")


def qutrit_generator_candidates(p):
    """X, Z, the diagonal phase gate, and the un-normalized Fourier matrix."""
    w = smallest_cube_root(p)
    x = FpMatrix.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]], p)
    z = FpMatrix.diagonal([1, w, w * w], p)
    s = FpMatrix.diagonal([1, 1, w], p)
    m = FpMatrix.from_rows([[pow(w, j * k, p) for k in range(3)]
                            for j in range(3)], p)
    return x, z, s, m, w


def qutrit_normalizer(p):
    if p % 3 != 1:
        raise BadCongruence(f"qutrit_normalizer needs p = 1 mod 3, got {p}")
    if p > 31:
        raise BadParameter("qutrit_normalizer limited to p <= 31")
    x, z, s, m, w = qutrit_generator_candidates(p)
    achieved = []
    for c in range(1, p):
        gens = [x, z, s, m.scale(c)]
        h = matrix_handle(gens, f"qutrit({p})")
        h.cap = 4000
        try:
            order = h.order()
        except CapExceeded:
            achieved.append((c, ">cap"))
            continue
        achieved.append((c, order))
        if order == 648:
            h.name = f"qutrit({p})"
            h.omega = w
            if p <= 7:  # exhaustive spinning is a decision procedure here
                irr, _ = spin_all_lines(gens)
                if not irr:
                    raise ScalarSearchFailed(
                        f"order 648 reached at c={c} but action is reducible")
            return h
    raise ScalarSearchFailed(
        f"no scalar correction gives order 648 mod {p}: {achieved}")


# ---------------------------------------------------------------------------
# the binary octahedral group inside SL_2(7)


def binary_octahedral():
    """Order-48 double cover of S4 found deterministically inside SL_2(7).

    Unlike GL_2(3) (the other order-48 extension of SL_2(3)) it has a
    single involution; the construction verifies that count.
    """
    p = 7
    ambient = sl(2, p)
    elems = sorted(ambient.elements(), key=lambda m: m.packed())
    ident = ambient.identity

    def closure_order(gens, cap):
        h = matrix_handle(list(gens), "tmp")
        h.cap = cap
        try:
            return h.order(), h
        except CapExceeded:
            return None, None

    def elt_order(m):
        x, n = m, 1
        while x != ident:
            x = x * m
            n += 1
        return n

    quat = None
    for i in elems:
        if elt_order(i) != 4:
            continue
        for j in elems:
            if elt_order(j) != 4:
                continue
            o, h = closure_order([i, j], 20)
            if o == 8:
                inv_count = sum(1 for x in h.elements()
                                if x != ident and x * x == ident)
                if inv_count == 1:
                    quat = h
                    break
        if quat is not None:
            break
    if quat is None:
        raise SearchFailed("no quaternion subgroup found in SL_2(7)")
    sl23 = None
    for w in elems:
        if elt_order(w) != 3:
            continue
        o, h = closure_order(quat.generators + [w], 60)
        if o == 24:
            sl23 = h
            break
    if sl23 is None:
        raise SearchFailed("no SL_2(3) overgroup of the quaternion subgroup")
    for t in elems:
        if elt_order(t) != 8:
            continue
        o, h = closure_order(sl23.generators + [t], 100)
        if o == 48:
            inv_count = sum(1 for x in h.elements()
                            if x != ident and x * x == ident)
            if inv_count == 1:
                h.name = "bo()"
                return h
    raise SearchFailed("no order-8 element extends SL_2(3) to order 48")


# ---------------------------------------------------------------------------
# exterior-square group and its similitude extension


def exterior_square_group(p):
    """The p^6 group V x Lambda^2 V with commutator v1 ^ v2."""
    model = ExtSqModel(p)
    h = model_handle(model, f"extsq({p})")
    h.model = model
    return h


def _span_rank_closed(rows, mats, p):
    """Rank of the span of the rows after closing under the given matrices."""
    from .fpmat import _row_reduce
    basis = _row_reduce(rows, p)
    while True:
        vecs = [row for row, _ in basis]
        grown = _row_reduce(vecs + [m.apply(v) for v in vecs for m in mats], p)
        if len(grown) == len(basis):
            return len(basis)
        basis = grown


def semidirect_series_orders(k_handle, p):
    """Orders of the derived series of K |x P for P the exterior-square
    group over F_p and K acting naturally on V and by wedge on Lambda^2 V.

    G^(i) = K^(i) |x M_i where M_i is the P-part; each derived term of G
    is characteristic, so its P-part is determined by the v-parts of the
    commutators [K^(i-1), M_{i-1}] together with [M_{i-1}, M_{i-1}].
    The routine tracks M through the states full P, the derived subgroup
    Lambda^2 V, and trivial; intermediate shapes do not occur for the
    actions used here and raise instead of guessing.
    """
    from .grp import derived_series
    kr = derived_series(k_handle)
    if not kr.solvable:
        raise BadParameter("semidirect series needs a solvable acting group")
    ident3 = FpMatrix.identity(3, p)
    top_mats = list(k_handle.generators)
    top_wedges = [wedge_square(a) for a in top_mats]
    orders = [kr.orders[0] * p ** 6]
    state = "full"
    i = 1
    while orders[-1] > 1:
        b_order = kr.orders[i] if i < len(kr.orders) else 1
        prev_gens = list(kr.subgroups[i - 1].generators) \
            if i - 1 < len(kr.subgroups) else []
        if i == 1:
            prev_gens = top_mats
        if state == "full":
            rows = []
            for a in prev_gens:
                diff = [[(int(x == y) - a.entries[x][y]) % p
                         for y in range(3)] for x in range(3)]
                rows.extend(diff)
            rank = _span_rank_closed(rows, top_mats, p) if rows else 0
            if rank == 3:
                new_state = "full"
            elif rank == 0:
                new_state = "derived"
            else:
                raise SearchFailed(f"unsupported P-part shape (v-rank {rank})")
        elif state == "derived":
            rows = []
            for a in prev_gens:
                wa = wedge_square(a)
                diff = [[(int(x == y) - wa.entries[x][y]) % p
                         for y in range(3)] for x in range(3)]
                rows.extend(diff)
            rank = _span_rank_closed(rows, top_wedges, p) if rows else 0
            if rank == 3:
                new_state = "derived"
            elif rank == 0:
                new_state = "trivial"
            else:
                raise SearchFailed(f"unsupported P-part shape (w-rank {rank})")
        else:
            new_state = "trivial"
        m_order = {"full": p ** 6, "derived": p ** 3, "trivial": 1}[new_state]
        order = b_order * m_order
        if order == orders[-1]:
            break
        orders.append(order)
        state = new_state
        i += 1
    return tuple(orders)


def prop8_group(p):
    """The qutrit normalizer acting on the p^6 exterior-square group,
    realized on p^6 points with a structurally precomputed derived series.
    """
    if p % 3 != 1:
        raise BadCongruence(f"prop8_group needs p = 1 mod 3, got {p}")
    if p ** 6 > 200_000:
        raise BadParameter(f"degree {p**6} too large for the engine")
    k = qutrit_normalizer(p)
    w = k.omega
    wedge_scalar = wedge_square(FpMatrix.diagonal([w, w, w], p))
    if wedge_scalar != FpMatrix.diagonal([w * w, w * w, w * w], p):
        raise SearchFailed("scalar omega does not act as omega^2 on wedges")
    hints = semidirect_series_orders(k, p)

    npts = p ** 6
    idx = np.arange(npts, dtype=np.int64)
    digits = np.empty((npts, 6), dtype=np.int64)
    rest = idx.copy()
    for col in range(6):
        digits[:, col] = rest % p
        rest //= p
    v, wpart = digits[:, :3], digits[:, 3:]
    powers = np.array([p ** c for c in range(6)], dtype=np.int64)

    def encode(vm, wm):
        return (np.concatenate([vm, wm], axis=1) % p) @ powers

    def cross_const(vm, e):
        # rows of vm wedged with the constant vector e
        return np.stack([vm[:, 1] * e[2] - vm[:, 2] * e[1],
                         vm[:, 2] * e[0] - vm[:, 0] * e[2],
                         vm[:, 0] * e[1] - vm[:, 1] * e[0]], axis=1)

    gens = []
    for i in range(3):
        e = np.zeros(3, dtype=np.int64)
        e[i] = 1
        gens.append(tuple(encode(v + e, wpart + cross_const(v, e)).tolist()))
        gens.append(tuple(encode(v, wpart + e).tolist()))
    for a in k.generators:
        am = np.array(a.entries, dtype=np.int64)
        wm = np.array(wedge_square(a).entries, dtype=np.int64)
        gens.append(tuple(encode(v @ am, wpart @ wm).tolist()))

    h = perm_handle(gens, npts, f"prop8({p})")
    h.series_order_hints = hints
    b = h.bsgs(known_order=hints[0])
    if b.order() != hints[0]:
        raise SearchFailed("permutation order disagrees with structural order")
    return h
