"""Engine-agnostic finite group algorithms.

A GroupHandle bundles an identity, a generator list and the element
operations; elements themselves are plain hashable values (tuples, bytes,
FpMatrix, ...).  Small groups are enumerated breadth-first; permutation
groups past the enumeration cap delegate order and normal-closure work to
the Schreier-Sims engine.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import perm as permmod
from .errors import CapExceeded, NotNormal, NotPGroup

DEFAULT_CAP = 1 << 24
QUOTIENT_INDEX_CAP = 10_000
ENUMERABLE_LIMIT = 10 ** 6
MEMORY_BUDGET = 5 * 10 ** 7  # element entries across an enumeration


def _env_cap():
    return int(os.environ.get("GRP_MAX_ELEMENTS", DEFAULT_CAP))


def factorize(n):
    """Prime factorization as a sorted list of (prime, exponent)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def omega(n):
    """Number of prime factors counted with multiplicity."""
    return sum(e for _, e in factorize(n))


@dataclass
class GroupHandle:
    """Immutable bundle of identity, generators and element operations."""

    identity: object
    generators: list
    mul: Callable
    inv: Callable
    name: str = ""
    kind: str = "generic"           # "perm" | "matrix" | "model" | "generic"
    degree: Optional[int] = None    # set for perm kind
    cap: int = field(default_factory=_env_cap)
    series_order_hints: Optional[tuple] = None  # structurally known |G^(i)|
    _elements: Optional[list] = field(default=None, repr=False)
    _element_set: Optional[set] = field(default=None, repr=False)
    _bsgs: Optional[permmod.BSGS] = field(default=None, repr=False)

    def is_perm(self):
        return self.kind == "perm"

    def bsgs(self, known_order=None):
        if not self.is_perm():
            raise CapExceeded("BSGS requires a permutation handle")
        if self._bsgs is None:
            self._bsgs = permmod.schreier_sims(
                [list(g) for g in self.generators], known_order=known_order)
        return self._bsgs

    def elements(self):
        """Deterministic BFS enumeration of the full element list."""
        if self._elements is None:
            elems, eset = _closure(self.mul, self.identity,
                                   self.generators, self.enum_cap())
            self._elements = elems
            self._element_set = eset
        return self._elements

    def enum_cap(self):
        # high-degree permutation elements are large; keep total entries
        # (order x degree) bounded as well as the raw count
        cap = self.cap
        if self.is_perm() and self.degree:
            cap = min(cap, max(1, MEMORY_BUDGET // self.degree))
        return cap

    def element_set(self):
        self.elements()
        return self._element_set

    def order(self):
        if self.is_perm():
            return self.bsgs().order()
        return len(self.elements())

    def conj(self, x, g):
        return self.mul(self.mul(self.inv(g), x), g)

    def comm(self, x, y):
        return self.mul(self.mul(self.inv(x), self.inv(y)),
                        self.mul(x, y))

    def power(self, x, k):
        out = self.identity
        base = x
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def element_order(self, x):
        y = x
        n = 1
        while y != self.identity:
            y = self.mul(y, x)
            n += 1
            if n > self.cap:
                raise CapExceeded("element order exceeded cap")
        return n


@dataclass
class SubgroupHandle:
    """A subgroup given by generators inside a parent handle."""

    parent: GroupHandle
    generators: list
    order: int
    _elem_set: Optional[set] = field(default=None, repr=False)
    _bsgs: Optional[permmod.BSGS] = field(default=None, repr=False)

    def contains(self, x):
        if self._elem_set is not None:
            return x in self._elem_set
        if self._bsgs is not None:
            return self._bsgs.contains(list(x))
        raise CapExceeded("subgroup has no membership backend")

    def contains_subgroup(self, other):
        return all(self.contains(g) for g in other.generators)

    def element_set(self):
        if self._elem_set is None:
            if self.order > min(ENUMERABLE_LIMIT, self.parent.enum_cap()):
                raise CapExceeded("subgroup too large to enumerate")
            _, self._elem_set = _closure(self.parent.mul, self.parent.identity,
                                         self.generators, self.parent.cap)
        return self._elem_set

    def as_handle(self, name=""):
        h = GroupHandle(self.parent.identity, list(self.generators),
                        self.parent.mul, self.parent.inv,
                        name=name or f"subgroup of {self.parent.name}",
                        kind=self.parent.kind, degree=self.parent.degree,
                        cap=self.parent.cap)
        if self._elem_set is not None:
            h._element_set = self._elem_set
            h._elements = sorted(self._elem_set, key=_sort_key)
        if self._bsgs is not None:
            h._bsgs = self._bsgs
        return h


def _sort_key(x):
    return repr(x)


@dataclass
class SeriesReport:
    """Derived-series data: orders, n(G), c(G), d(G)."""

    orders: tuple            # |G^(0)|, |G^(1)|, ..., last repeated order
    solvable: bool
    n: tuple                 # composition lengths of the abelian quotients
    c: Optional[int]         # Omega(|G|) when solvable, else None
    d: Optional[int]         # derived length when solvable, else None
    engine: str = "closure"
    subgroups: Optional[list] = field(default=None, repr=False)

    @property
    def quotient_orders(self):
        return tuple(self.orders[i] // self.orders[i + 1]
                     for i in range(len(self.orders) - 1))


# ---------------------------------------------------------------------------
# closure / enumeration


def _closure(mul, identity, gens, cap):
    """BFS closure of <gens>; returns (ordered list, set)."""
    elems = [identity]
    eset = {identity}
    qi = 0
    while qi < len(elems):
        x = elems[qi]
        qi += 1
        for g in gens:
            y = mul(x, g)
            if y not in eset:
                if len(eset) >= cap:
                    raise CapExceeded(f"closure exceeded cap {cap}")
                eset.add(y)
                elems.append(y)
    return elems, eset


def enumerate_closure(handle: GroupHandle):
    """Exact element list of the group, deduplicated by element value."""
    return handle.elements()


def _closed_under_conjugation(mul, inv, identity, seed, conj_gens, cap):
    """Smallest subgroup containing seed and closed under conjugation by
    conj_gens (i.e. the normal closure when conj_gens generate the group)."""
    work = [s for s in seed if s != identity]
    elems, eset = _closure(mul, identity, work, cap)
    while True:
        new = []
        for s in work:
            for g in conj_gens:
                c = mul(mul(inv(g), s), g)
                if c not in eset:
                    new.append(c)
        if not new:
            return elems, eset, work
        work = work + new
        elems, eset = _closure(mul, identity, work, cap)


def normal_closure(handle: GroupHandle, seed) -> SubgroupHandle:
    """Smallest normal subgroup of the handle's group containing seed."""
    seed = [s for s in seed if s != handle.identity]
    if not seed:
        return SubgroupHandle(handle, [], 1, _elem_set={handle.identity})
    if handle.is_perm() and _needs_bsgs(handle):
        b = permmod.normal_closure_perm(
            [list(g) for g in handle.generators],
            [list(s) for s in seed])
        gens = [tuple(int(x) for x in g) for g in b.strong_generators()]
        return SubgroupHandle(handle, gens, b.order(), _bsgs=b)
    elems, eset, gens = _closed_under_conjugation(
        handle.mul, handle.inv, handle.identity, seed,
        handle.generators, handle.cap)
    return SubgroupHandle(handle, gens, len(eset), _elem_set=eset)


def _needs_bsgs(handle):
    # perm groups always get the BSGS engine unless already enumerated
    return handle._element_set is None


def derived_subgroup(handle: GroupHandle) -> SubgroupHandle:
    gens = handle.generators
    comms = []
    seen = set()
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            c = handle.comm(a, b)
            if c != handle.identity and c not in seen:
                seen.add(c)
                comms.append(c)
    return normal_closure(handle, comms)


def derived_series(handle: GroupHandle) -> SeriesReport:
    """Iterate derived subgroups until the order stabilizes."""
    if handle.is_perm() and _needs_bsgs(handle):
        return _derived_series_bsgs(handle)
    orders = [handle.order()]
    subs = [SubgroupHandle(handle, list(handle.generators), orders[0],
                           _elem_set=handle.element_set())]
    current = handle
    while True:
        der = derived_subgroup(current)
        if der.order == orders[-1]:
            break
        orders.append(der.order)
        subs.append(der)
        if der.order == 1:
            break
        current = der.as_handle()
    return _finish_report(orders, subs, "closure")


def _derived_series_bsgs(handle: GroupHandle) -> SeriesReport:
    # series_order_hints, when present, lists |G^(0)|, |G^(1)|, ... as
    # computed by an independent structural route; they let the BSGS
    # normal closures terminate by order instead of full verification.
    hints = list(handle.series_order_hints or [])
    b = handle.bsgs(known_order=hints[0] if hints else None)
    orders = [b.order()]
    gens = [permmod.as_perm(list(g)) for g in handle.generators]
    group_gens = gens
    subs = [SubgroupHandle(handle, list(handle.generators), orders[0], _bsgs=b)]
    step = 0
    while True:
        comms = []
        seen = set()
        for i, a in enumerate(gens):
            ai = permmod.perm_inv(a)
            for bb in gens[i + 1:]:
                c = permmod.perm_mul(permmod.perm_mul(ai, permmod.perm_inv(bb)),
                                     permmod.perm_mul(a, bb))
                k = permmod.perm_key(c)
                if not permmod.is_identity(c) and k not in seen:
                    seen.add(k)
                    comms.append(c)
        step += 1
        known = hints[step] if step < len(hints) else None
        nb = permmod.normal_closure_perm(group_gens, comms, known_order=known)
        if nb.order() == orders[-1]:
            break
        orders.append(nb.order())
        sg = nb.strong_generators()
        gens = sg
        subs.append(SubgroupHandle(
            handle, [tuple(int(x) for x in g) for g in sg],
            nb.order(), _bsgs=nb))
        if nb.order() == 1:
            break
    return _finish_report(orders, subs, "bsgs")


def _finish_report(orders, subs, engine):
    solvable = orders[-1] == 1
    if solvable:
        n = tuple(omega(orders[i] // orders[i + 1])
                  for i in range(len(orders) - 1))
        d = len(orders) - 1
        c = omega(orders[0])
        assert c == sum(n)
    else:
        n = tuple(omega(orders[i] // orders[i + 1])
                  for i in range(len(orders) - 1))
        d = None
        c = None
    return SeriesReport(orders=tuple(orders), solvable=solvable, n=n,
                        c=c, d=d, engine=engine, subgroups=subs)


def lower_central_series(handle: GroupHandle):
    """gamma_1 = G, gamma_{i+1} = <[gamma_i, G]> normally closed."""
    chain = [SubgroupHandle(handle, list(handle.generators), handle.order())]
    cur_gens = list(handle.generators)
    cur_order = handle.order()
    use_bsgs = handle.is_perm() and _needs_bsgs(handle)
    while True:
        comms = []
        seen = set()
        for a in cur_gens:
            for g in handle.generators:
                c = handle.comm(a, g)
                if c != handle.identity and c not in seen:
                    seen.add(c)
                    comms.append(c)
        nxt = normal_closure(handle, comms)
        if nxt.order == cur_order:
            break
        chain.append(nxt)
        cur_gens = list(nxt.generators)
        cur_order = nxt.order
        if nxt.order == 1:
            break
    return chain


def center(handle: GroupHandle) -> SubgroupHandle:
    elems = handle.elements()
    central = [z for z in elems
               if all(handle.mul(z, g) == handle.mul(g, z)
                      for g in handle.generators)]
    eset = set(central)
    return SubgroupHandle(handle, [z for z in central if z != handle.identity],
                          len(central), _elem_set=eset)


def frattini_pgroup(handle: GroupHandle) -> SubgroupHandle:
    """Phi(P) = P^p P' for a p-group P, via generator p-th powers and
    commutators (sufficient because P/P' is abelian)."""
    fac = factorize(handle.order())
    if len(fac) != 1:
        raise NotPGroup(f"order {handle.order()} is not a prime power")
    p = fac[0][0]
    seed = [handle.power(g, p) for g in handle.generators]
    for i, a in enumerate(handle.generators):
        for b in handle.generators[i + 1:]:
            seed.append(handle.comm(a, b))
    return normal_closure(handle, seed)


def minimal_normal_subgroups(handle: GroupHandle):
    """All minimal normal subgroups, via normal closures of prime-order
    cyclic subgroups.  Conjugate elements share a closure, so each
    conjugacy class is processed once."""
    if handle.order() > ENUMERABLE_LIMIT:
        raise CapExceeded("group too large for minimal normal subgroups")
    elems = handle.elements()
    processed = set()
    family = []
    for x in elems:
        if x == handle.identity or x in processed:
            continue
        n = handle.element_order(x)
        if not _is_prime(n):
            processed.add(x)
            continue
        # mark the conjugation orbit of <x> (all generators of all conjugates)
        orbit = [x]
        oset = {x}
        qi = 0
        while qi < len(orbit):
            y = orbit[qi]
            qi += 1
            for g in handle.generators:
                z = handle.conj(y, g)
                if z not in oset:
                    oset.add(z)
                    orbit.append(z)
        for y in orbit:
            w = y
            for _ in range(n - 1):
                processed.add(w)
                w = handle.mul(w, y)
        closure = normal_closure(handle, [x])
        if not any(f.order == closure.order and
                   f.contains_subgroup(closure) for f in family):
            family.append(closure)
    minimal = []
    for cand in family:
        if not any(other.order < cand.order and cand.contains_subgroup(other)
                   for other in family):
            minimal.append(cand)
    minimal.sort(key=lambda s: s.order)
    return minimal


def _is_prime(n):
    return n >= 2 and factorize(n) == [(n, 1)]


def quotient_on_cosets(handle: GroupHandle, sub: SubgroupHandle) -> GroupHandle:
    """Permutation action of G on right cosets of a normal subgroup."""
    nset = sub.element_set()
    for s in sub.generators:
        for g in handle.generators:
            if handle.conj(s, g) not in nset:
                raise NotNormal("subgroup is not normal")
    index = handle.order() // len(nset)
    if index > QUOTIENT_INDEX_CAP:
        raise CapExceeded(f"index {index} exceeds {QUOTIENT_INDEX_CAP}")
    if handle.order() > min(ENUMERABLE_LIMIT, handle.enum_cap()):
        raise CapExceeded("group too large to label cosets")
    nelems = sorted(nset, key=_sort_key)
    coset_of = {}
    reps = []
    for n in nelems:
        coset_of[n] = 0
    reps.append(handle.identity)
    qi = 0
    while qi < len(reps):
        r = reps[qi]
        qi += 1
        for g in handle.generators:
            e = handle.mul(r, g)
            if e not in coset_of:
                idx = len(reps)
                reps.append(e)
                for n in nelems:
                    coset_of[handle.mul(n, e)] = idx
    assert len(reps) == index
    gen_perms = []
    for g in handle.generators:
        img = tuple(coset_of[handle.mul(r, g)] for r in reps)
        gen_perms.append(img)
    ident = tuple(range(index))

    def mul(a, b):
        return tuple(b[x] for x in a)

    def inv(a):
        out = [0] * len(a)
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)

    return GroupHandle(ident, [g for g in gen_perms if g != ident] or [],
                       mul, inv, name=f"{handle.name}/N", kind="perm",
                       degree=index, cap=handle.cap)


def is_cyclic(handle: GroupHandle):
    n = handle.order()
    return any(handle.element_order(x) == n for x in handle.elements())


@dataclass
class Finding:
    """One lemma check: status is pass | fail | not-applicable | skipped."""

    name: str
    status: str
    detail: str = ""


def _section_handle(handle, report, i, j):
    """The quotient G^(i)/G^(j) as a permutation group on cosets."""
    upper = report.subgroups[i].as_handle(f"G^({i})")
    lower = report.subgroups[j]
    lower.element_set()
    return quotient_on_cosets(upper, SubgroupHandle(
        upper, list(lower.generators), lower.order,
        _elem_set=lower._elem_set))


def check_lemmas(handle: GroupHandle, report: SeriesReport, assert_cs=False):
    """Structural consistency checks along the derived series.

    Sub-checks that need enumeration report "skipped" when a cap trips;
    order-arithmetic checks always run.
    """
    findings = []
    if not report.solvable:
        return [Finding("solvable", "not-applicable", "group is not solvable")]
    n, d, orders = report.n, report.d, report.orders
    # full sub-checks only run on enumerable groups; order-arithmetic
    # checks always run
    enumerable = orders[0] <= ENUMERABLE_LIMIT

    # consecutive abelian quotients: order arithmetic only
    bad = [i for i in range(2, d) if n[i - 1] == 1 and n[i] == 1]
    if d < 3:
        findings.append(Finding("c-weak", "not-applicable",
                                "needs derived length at least 3"))
    elif bad:
        findings.append(Finding("c-weak", "fail",
                                f"consecutive n_i = 1 at i = {bad}"))
    else:
        findings.append(Finding("c-weak", "pass",
                                f"n = {n} has no adjacent 1s past i = 2"))

    # consecutive quotients not both cyclic: needs coset enumeration
    if d < 3:
        findings.append(Finding("c-full", "not-applicable",
                                "needs derived length at least 3"))
    elif not enumerable:
        findings.append(Finding("c-full", "skipped",
                                "group exceeds the enumeration limit"))
    else:
        fails, skips, done = [], [], []
        for i in range(2, d):
            try:
                top = _section_handle(handle, report, i - 1, i)
                bot = _section_handle(handle, report, i, i + 1)
                if is_cyclic(top) and is_cyclic(bot):
                    fails.append(i)
                else:
                    done.append(i)
            except CapExceeded:
                skips.append(i)
        if fails:
            findings.append(Finding("c-full", "fail",
                                    f"both sections cyclic at i = {fails}"))
        elif done:
            msg = f"checked i = {done}" + (f", skipped {skips}" if skips else "")
            findings.append(Finding("c-full", "pass", msg))
        else:
            findings.append(Finding("c-full", "skipped",
                                    f"sections too large at i = {skips}"))

    # unique minimal normal subgroup = last nontrivial derived term
    if assert_cs:
        try:
            mins = minimal_normal_subgroups(handle)
            last = report.subgroups[d - 1]
            if (len(mins) == 1 and mins[0].order == last.order
                    and last.contains_subgroup(mins[0])):
                findings.append(Finding(
                    "a", "pass",
                    f"unique minimal normal of order {mins[0].order} "
                    f"= G^({d - 1})"))
            else:
                findings.append(Finding(
                    "a", "fail",
                    f"{len(mins)} minimal normal subgroups, orders "
                    f"{[m.order for m in mins]}, G^({d-1}) order {last.order}"))
        except CapExceeded:
            findings.append(Finding("a", "skipped",
                                    "group too large to enumerate"))
    else:
        findings.append(Finding("a", "not-applicable",
                                "caller did not assert minimal length"))

    # cyclic prime sections act coprimely and fixed-point-freely below
    applicable, fails, skips = [], [], []
    for i in range(1, d):
        q = orders[i - 1] // orders[i]
        if not _is_prime(q):
            continue
        below = orders[i] // orders[i + 1]
        if math.gcd(q, below) != 1:
            fails.append((i, f"gcd({q}, {below}) > 1"))
            continue
        if not enumerable:
            skips.append(i)
            continue
        try:
            g = next(x for x in report.subgroups[i - 1].generators
                     if not report.subgroups[i].contains(x))
            mid = report.subgroups[i]
            low_set = report.subgroups[i + 1].element_set()
            fixed = None
            for x in mid.element_set():
                if x in low_set:
                    continue
                moved = handle.mul(handle.conj(x, g), handle.inv(x))
                if moved in low_set:
                    fixed = x
                    break
            if fixed is not None:
                fails.append((i, "conjugation fixes a nontrivial coset"))
            else:
                applicable.append(i)
        except CapExceeded:
            skips.append(i)
    if fails:
        findings.append(Finding("d", "fail", f"violations at {fails}"))
    elif applicable:
        msg = f"fixed-point-free coprime action at i = {applicable}"
        if skips:
            msg += f", skipped {skips}"
        findings.append(Finding("d", "pass", msg))
    elif skips:
        findings.append(Finding("d", "skipped", f"sections too large {skips}"))
    else:
        findings.append(Finding("d", "not-applicable",
                                "no cyclic prime sections"))

    # n_i = 2 over n_{i+1} = 1 forces an extraspecial p^3 section
    applicable, fails, skips = [], [], []
    for i in range(2, d):
        if n[i - 1] != 2 or n[i] != 1:
            continue
        sec_order = orders[i - 1] // orders[i + 1]
        fac = factorize(sec_order)
        if fac != [(fac[0][0], 3)]:
            fails.append((i, f"section order {sec_order} is not p^3"))
            continue
        p = fac[0][0]
        if not enumerable:
            skips.append(i)
            continue
        try:
            sec = _section_handle(handle, report, i - 1, i + 1)
            z = center(sec)
            abelian = z.order == sec.order
            if abelian or z.order != p:
                fails.append((i, f"center order {z.order}, "
                                 f"abelian = {abelian}"))
            else:
                applicable.append(i)
        except CapExceeded:
            skips.append(i)
    if fails:
        findings.append(Finding("e", "fail", f"violations at {fails}"))
    elif applicable:
        msg = f"extraspecial p^3 sections at i = {applicable}"
        if skips:
            msg += f", skipped {skips}"
        findings.append(Finding("e", "pass", msg))
    elif skips:
        findings.append(Finding("e", "skipped", f"sections too large {skips}"))
    else:
        findings.append(Finding("e", "not-applicable",
                                "no n_i = 2, n_{i+1} = 1 step"))

    # gamma chain collapse for p-groups with |P'/P''| = p^3 and P'' > 1
    fac = factorize(orders[0]) if orders[0] > 1 else []
    if len(fac) == 1 and fac[0][0] >= 3 and d >= 3:
        p = fac[0][0]
        pp, ppp = orders[1], orders[2]
        if pp // ppp == p ** 3 and ppp > 1:
            try:
                gammas = lower_central_series(handle)
                gorders = [g.order for g in gammas]
                while len(gorders) < 5:
                    gorders.append(gorders[-1])
                g5 = gammas[4] if len(gammas) > 4 else gammas[-1]
                ok = (gorders[1] > gorders[2] > gorders[3] > gorders[4]
                      and g5.order == ppp
                      and all(g5.contains(x)
                              for x in report.subgroups[2].generators))
                findings.append(Finding(
                    "lemma6", "pass" if ok else "fail",
                    f"gamma orders {gorders[:6]}, P'' = {ppp}"))
            except CapExceeded:
                findings.append(Finding("lemma6", "skipped",
                                        "gamma chain too large"))
        else:
            findings.append(Finding("lemma6", "not-applicable",
                                    f"|P'/P''| = {pp // ppp}, P'' = {ppp}"))
    else:
        findings.append(Finding("lemma6", "not-applicable",
                                "not an odd p-group of length >= 3"))
    return findings
