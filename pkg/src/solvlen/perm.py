"""Permutation groups with a deterministic Schreier-Sims engine.

Permutations are numpy int32 image arrays over 0-based points: point p maps
to g[p], and products act left-to-right, (g*h)[p] = h[g[p]].  Transversals
are stored as Schreier vectors (parent-pointer trees), so memory stays
linear in the degree even at degree ~10^5.

``schreier_sims`` accepts an optional ``known_order``: when the caller has
an independently computed order for the generated group, construction stops
as soon as the product of orbit lengths reaches it.  The product of orbit
lengths of a partial chain never exceeds the true order, so this early exit
is exact.  Without ``known_order`` every Schreier generator is sifted, which
fully verifies the chain.
"""

from __future__ import annotations

import numpy as np

from .errors import DegreeMismatch, GroupError

MAX_DEGREE = 200_000


def as_perm(images):
    """Coerce to a validated numpy permutation array."""
    g = np.asarray(images, dtype=np.int32)
    if g.ndim != 1:
        raise GroupError("permutation must be a 1-d image array")
    if len(g) > MAX_DEGREE:
        raise DegreeMismatch(f"degree {len(g)} exceeds {MAX_DEGREE}")
    if not np.array_equal(np.sort(g), np.arange(len(g), dtype=np.int32)):
        raise GroupError("image array is not a bijection")
    return g


def perm_mul(a, b):
    """Apply a, then b."""
    return b[a]


def perm_inv(a):
    inv = np.empty_like(a)
    inv[a] = np.arange(len(a), dtype=np.int32)
    return inv


def perm_key(a):
    return a.tobytes()


def is_identity(a):
    return bool(np.array_equal(a, np.arange(len(a), dtype=np.int32)))


class _Level:
    """One level of the stabilizer chain."""

    __slots__ = ("base", "gens", "invs", "tree", "order_list", "processed")

    def __init__(self, base):
        self.base = base
        self.gens = []      # strong generators fixing all earlier base points
        self.invs = []
        self.tree = {base: None}        # point -> (parent point, gen index)
        self.order_list = [base]        # BFS discovery order
        self.processed = set()          # (point, gen index) Schreier pairs done

    def orbit_size(self):
        return len(self.tree)


class BSGS:
    """Base and strong generating set with Schreier-vector transversals."""

    def __init__(self, degree):
        self.degree = degree
        self.levels = []
        self.complete = False
        self.verified_by_order = False

    # -- queries ---------------------------------------------------------

    def base(self):
        return [lv.base for lv in self.levels]

    def order(self):
        n = 1
        for lv in self.levels:
            n *= lv.orbit_size()
        return n

    def strong_generators(self):
        out = []
        for lv in self.levels:
            out.extend(lv.gens)
        return out

    def transversal_inv_path(self, level, point):
        """Generator indices (deepest first) whose inverses undo u_point."""
        lv = self.levels[level]
        path = []
        while point != lv.base:
            parent, gi = lv.tree[point]
            path.append(gi)
            point = parent
        return path

    def sift(self, g):
        """Strip g through the chain.

        Returns (residual, level): level is the first chain position where
        the residual's base image left the orbit, or len(levels) when the
        residual fixes every base point.
        """
        h = g
        for i, lv in enumerate(self.levels):
            x = int(h[lv.base])
            if x not in lv.tree:
                return h, i
            while x != lv.base:
                parent, gi = lv.tree[x]
                h = perm_mul(h, lv.invs[gi])
                x = parent
        return h, len(self.levels)

    def contains(self, g):
        g = np.asarray(g, dtype=np.int32)
        if len(g) != self.degree:
            raise DegreeMismatch("degree mismatch in membership test")
        h, lev = self.sift(g)
        return lev == len(self.levels) and is_identity(h)

    # -- construction ----------------------------------------------------

    def _extend_orbit(self, level, new_gen_index):
        """Grow the level's orbit BFS after appending one generator.

        Existing tree edges are kept, so previously issued transversal
        paths stay valid; only newly reachable points get edges.
        """
        lv = self.levels[level]
        frontier = []
        gnew = lv.gens[new_gen_index]
        for point in lv.order_list:
            y = int(gnew[point])
            if y not in lv.tree:
                lv.tree[y] = (point, new_gen_index)
                lv.order_list.append(y)
                frontier.append(y)
        qi = 0
        while qi < len(frontier):
            point = frontier[qi]
            qi += 1
            for gi, g in enumerate(lv.gens):
                y = int(g[point])
                if y not in lv.tree:
                    lv.tree[y] = (point, gi)
                    lv.order_list.append(y)
                    frontier.append(y)

    def _insert_generator(self, g, level):
        """Register g as a strong generator at the given chain level.

        g is known to fix all base points before `level`.  Orbits at this
        and all shallower levels may grow, since the generating sets
        S_i = {gens at levels >= i} grow for every i <= level.
        """
        if level == len(self.levels):
            moved = int(np.nonzero(np.arange(self.degree) != g)[0][0])
            self.levels.append(_Level(moved))
        ginv = perm_inv(g)
        for i in range(level, -1, -1):
            lv = self.levels[i]
            lv.gens.append(g)
            lv.invs.append(ginv)
            self._extend_orbit(i, len(lv.gens) - 1)

    def _check_level(self, level):
        """Sift unprocessed Schreier generators at `level`.

        Returns the insertion level of a newly found strong generator, or
        None when every Schreier generator strips to the identity.
        """
        lv = self.levels[level]
        idx = 0
        while idx < len(lv.order_list):
            point = lv.order_list[idx]
            for gi in range(len(lv.gens)):
                pair = (point, gi)
                if pair in lv.processed:
                    continue
                lv.processed.add(pair)
                g = lv.gens[gi]
                y = int(g[point])
                if lv.tree.get(y) == (point, gi):
                    continue  # tree edge: Schreier generator is the identity
                # Schreier generator u_point * g * u_y^{-1}
                s = self._transversal(level, point)
                s = perm_mul(s, g)
                for gj in self.transversal_inv_path(level, y):
                    s = perm_mul(s, lv.invs[gj])
                h, at = self.sift(s)
                if at < len(self.levels) or not is_identity(h):
                    target = at if at < len(self.levels) else self._level_for(h)
                    self._insert_generator(h, target)
                    return target
            idx += 1
        return None

    def _level_for(self, h):
        for i, lv in enumerate(self.levels):
            if int(h[lv.base]) != lv.base:
                return i
        return len(self.levels)

    def _transversal(self, level, point):
        """The coset representative u mapping the base point to `point`."""
        lv = self.levels[level]
        gis = []
        while point != lv.base:
            parent, gi = lv.tree[point]
            gis.append(gi)
            point = parent
        u = np.arange(self.degree, dtype=np.int32)
        for gi in reversed(gis):
            u = perm_mul(u, lv.gens[gi])
        return u


def _sift_insert(b: BSGS, g):
    """Sift g and insert the residual if nontrivial.  Returns True when the
    chain grew."""
    h, lev = b.sift(g)
    if lev < len(b.levels) or not is_identity(h):
        target = lev if lev < len(b.levels) else b._level_for(h)
        b._insert_generator(h, target)
        return True
    return False


def _complete(b: BSGS, known_order=None):
    """Process Schreier generators (deepest levels first) until the chain
    verifies, or until the orbit product reaches known_order."""
    while True:
        if known_order is not None and b.order() == known_order:
            b.verified_by_order = True
            return
        level = len(b.levels) - 1
        inserted = None
        while level >= 0:
            inserted = b._check_level(level)
            if inserted is not None:
                break
            level -= 1
        if inserted is None:
            return


def schreier_sims(gens, known_order=None):
    """Deterministic Schreier-Sims.  Base points are the smallest moved
    points encountered; generator and orbit processing order is fixed, so
    two runs on the same input produce identical chains."""
    gens = [as_perm(g) for g in gens]
    if gens:
        degree = len(gens[0])
        if any(len(g) != degree for g in gens):
            raise DegreeMismatch("generators act on different point counts")
    else:
        degree = 0
    b = BSGS(degree)
    for g in gens:
        _sift_insert(b, g)
        if known_order is not None and b.order() == known_order:
            b.complete = True
            b.verified_by_order = True
            return b
    _complete(b, known_order)
    b.complete = True
    if known_order is not None and not b.verified_by_order \
            and b.order() != known_order:
        raise GroupError(
            f"BSGS order {b.order()} disagrees with expected {known_order}")
    return b


def group_order(b: BSGS):
    return b.order()


def contains(b: BSGS, g):
    return b.contains(as_perm(g))


def normal_closure_perm(group_gens, seed, known_order=None):
    """BSGS of the smallest normal subgroup of <group_gens> containing seed.

    The chain is grown incrementally: every inserted element is a product
    of seeds and their conjugates, so the partial chain always sits inside
    the true closure and its orbit product never exceeds the closure's
    order.  With ``known_order`` equal to that order, construction stops
    exactly when the product reaches it; without it, conjugation passes
    alternate with full Schreier verification until both are stable.
    """
    group_gens = [as_perm(g) for g in group_gens]
    ginvs = [perm_inv(g) for g in group_gens]
    pending = []
    seen = set()
    for s in seed:
        s = as_perm(s)
        k = perm_key(s)
        if not is_identity(s) and k not in seen:
            seen.add(k)
            pending.append(s)
    degree = len(group_gens[0]) if group_gens else \
        (len(pending[0]) if pending else 0)
    b = BSGS(degree)
    if not pending:
        b.complete = True
        return b
    conj_done = set()
    verified = False
    while True:
        for s in pending:
            _sift_insert(b, s)
            verified = False
        if known_order is not None and b.order() == known_order:
            b.complete = True
            b.verified_by_order = True
            return b
        # membership tests below are certain only in the positive
        # direction on an unverified chain; a false negative just inserts
        # a redundant conjugate, which sifts away later
        pending = []
        for s in b.strong_generators():
            ks = perm_key(s)
            for i, (g, gi) in enumerate(zip(group_gens, ginvs)):
                if (ks, i) in conj_done:
                    continue
                conj_done.add((ks, i))
                c = perm_mul(perm_mul(gi, s), g)
                if not b.contains(c):
                    pending.append(c)
        if pending:
            continue
        if verified:
            b.complete = True
            return b
        _complete(b, known_order)
        verified = True
        if b.verified_by_order:
            b.complete = True
            return b


def perm_order_of(g):
    """Order of a single permutation via its cycle lengths."""
    g = np.asarray(g, dtype=np.int32)
    n = len(g)
    seen = np.zeros(n, dtype=bool)
    out = 1
    for i in range(n):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = int(g[j])
                length += 1
            out = out * length // np.gcd(out, length)
    return int(out)
