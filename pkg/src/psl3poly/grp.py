"""Generated-subgroup machinery over the PG(2,q) point action.

Closure enumeration works on canonical matrix tuples; orders of groups too
large to enumerate come from a deterministic Schreier-Sims computation on the
point permutation action (delegated to sympy's stabilizer-chain engine).
Subgroup intersection enumerates the smaller side, first shrinking either
side to a point stabilizer whenever the other side fixes a point.
"""

from __future__ import annotations

import math
from functools import lru_cache

from sympy.combinatorics import Permutation, PermutationGroup

from .gf import FieldSpec, make_field
from .projmat import ProjMatrix, ProjPoint, all_points, _mmul

DEFAULT_CAP = 20_000_000
# Above this order we avoid hash-set enumeration and work through stabilizer
# shrinking / sifting instead.
ENUM_WORK_LIMIT = 600_000
SIFT_LIMIT = 20_000


class GroupError(ValueError):
    pass


class InconsistencyError(RuntimeError):
    """Two independent computations of the same group fact disagree."""


class PermAction:
    """The natural, faithful action on the q^2+q+1 points of PG(2,q)."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.points = all_points(spec)
        self.index = {pt.coords: i for i, pt in enumerate(self.points)}
        self.degree = len(self.points)

    def perm_of(self, m: ProjMatrix) -> tuple[int, ...]:
        idx = self.index
        return tuple(idx[m.apply_point(pt).coords] for pt in self.points)

    def sympy_perm(self, m: ProjMatrix) -> Permutation:
        return Permutation(list(self.perm_of(m)))


@lru_cache(maxsize=None)
def _action_for(p, n, modulus) -> PermAction:
    return PermAction(make_field(p, n))


def action_for(spec: FieldSpec) -> PermAction:
    return _action_for(spec.p, spec.n, spec.modulus)


def closure(generators, cap: int = DEFAULT_CAP):
    """Breadth-first closure under right multiplication by the generators.

    Returns the exact element set (of canonical entry tuples) when the group
    has at most `cap` elements, None on overflow.  Never returns a truncated
    set.
    """
    if not generators:
        raise GroupError("no generators")
    spec = generators[0].spec
    for g in generators:
        if g.spec != spec:
            raise GroupError("generators over different fields")
    gen_vals = []
    for g in generators:
        if g.vals not in gen_vals and not g.is_identity():
            gen_vals.append(g.vals)
    ident = (1, 0, 0, 0, 1, 0, 0, 0, 1)
    seen = {ident}
    frontier = [ident]
    if not gen_vals:
        return frozenset(seen)
    while frontier:
        new = []
        for m in frontier:
            for g in gen_vals:
                prod = _mmul(spec, m, g)
                if prod not in seen:
                    seen.add(prod)
                    new.append(prod)
                    if len(seen) > cap:
                        return None
        frontier = new
    return frozenset(seen)


def psl3_order(q: int) -> int:
    return q ** 3 * (q ** 3 - 1) * (q ** 2 - 1) // math.gcd(3, q - 1)


class GroupHandle:
    """A subgroup of PGL(3,q) given by matrix generators.

    Carries two lazy representations: a full element set (hash set of
    canonical matrices) for enumerable groups, and a sympy permutation group
    with a stabilizer chain for order/membership on big ones.  Whenever both
    exist their orders are cross-checked.
    """

    def __init__(self, generators, cap: int = DEFAULT_CAP):
        generators = list(generators)
        if not generators:
            raise GroupError("no generators")
        self.spec = generators[0].spec
        self.generators = generators
        self.cap = cap
        self._elements = None
        self._overflowed = False
        self._perm_group = None
        self._order = None

    # -- representations --------------------------------------------------

    def elements(self, cap: int | None = None):
        """Element set (frozenset of canonical entry tuples) or None on overflow."""
        if self._elements is None and not self._overflowed:
            result = closure(self.generators, cap if cap is not None else self.cap)
            if result is None:
                self._overflowed = True
            else:
                self._elements = result
                if self._order is not None and self._order != len(result):
                    raise InconsistencyError(
                        f"closure size {len(result)} != stabilizer-chain order {self._order}")
                self._order = len(result)
        return self._elements

    def perm_group(self) -> PermutationGroup:
        if self._perm_group is None:
            act = action_for(self.spec)
            self._perm_group = PermutationGroup(
                [act.sympy_perm(g) for g in self.generators])
        return self._perm_group

    def order(self) -> int:
        """Exact group order, via the stabilizer chain (deterministic)."""
        if self._order is None:
            o = self.perm_group().order()
            if self._elements is not None and len(self._elements) != o:
                raise InconsistencyError(
                    f"closure size {len(self._elements)} != stabilizer-chain order {o}")
            self._order = o
        return self._order

    def enumerable(self, limit: int = ENUM_WORK_LIMIT) -> bool:
        return self.order() <= min(limit, self.cap)

    # -- membership -------------------------------------------------------

    def contains(self, m: ProjMatrix) -> bool:
        if self._elements is not None:
            return m.vals in self._elements
        if self.enumerable() and self.elements() is not None:
            return m.vals in self._elements
        act = action_for(self.spec)
        return self.perm_group().contains(act.sympy_perm(m), strict=False)

    def __contains__(self, m):
        return self.contains(m)

    # -- derived subgroups ------------------------------------------------

    def common_fixed_points(self) -> list[ProjPoint]:
        """Points fixed by every generator (hence by the whole group)."""
        fixed = None
        for g in self.generators:
            fp = {p.coords for p in g.fixed_points()}
            fixed = fp if fixed is None else fixed & fp
            if not fixed:
                return []
        return [ProjPoint(self.spec, c) for c in sorted(fixed)]

    def moves(self, pt: ProjPoint) -> bool:
        return any(g.apply_point(pt) != pt for g in self.generators)

    def point_stabilizer(self, pt: ProjPoint) -> "GroupHandle":
        """Stabilizer of a point, with matrix generators via Schreier's lemma."""
        spec = self.spec
        orbit = {pt.coords: ProjMatrix.identity(spec)}
        frontier = [pt]
        while frontier:
            new = []
            for p in frontier:
                u = orbit[p.coords]
                for g in self.generators:
                    img = g.apply_point(p)
                    if img.coords not in orbit:
                        orbit[img.coords] = g * u
                        new.append(img)
            frontier = new
        target = self.order() // len(orbit)
        schreier = []
        seen = set()
        for coords, u in orbit.items():
            p = ProjPoint(spec, coords)
            for g in self.generators:
                img = g.apply_point(p)
                s = orbit[img.coords].inverse() * g * u
                if not s.is_identity() and s.vals not in seen:
                    seen.add(s.vals)
                    schreier.append(s)
        # A few Schreier generators almost always suffice; grow until the
        # known order is reached instead of closing over thousands of them.
        chosen = []
        elems = {ProjMatrix.identity(spec).vals}
        for s in schreier:
            if s.vals in elems:
                continue
            chosen.append(s)
            elems = closure(chosen, self.cap)
            if elems is None:
                raise GroupError("stabilizer closure exceeded cap")
            if len(elems) == target:
                break
        if len(elems) != target:
            raise InconsistencyError("point stabilizer closure missed target order")
        h = GroupHandle(chosen if chosen else [ProjMatrix.identity(spec)], cap=self.cap)
        h._elements = frozenset(elems)
        h._order = len(elems)
        return h


def intersect(h1: GroupHandle, h2: GroupHandle) -> frozenset:
    """Exact intersection as a set of canonical entry tuples.

    Shrinks either side to a point stabilizer while the opposite side fixes a
    point, then enumerates the smaller side and filters by membership in the
    other.
    """
    a, b = h1, h2
    progress = True
    while progress and not (a.enumerable() and b.enumerable()):
        progress = False
        for big, other in ((a, b), (b, a)):
            if big.enumerable():
                continue
            for pt in other.common_fixed_points():
                if big.moves(pt):
                    shrunk = big.point_stabilizer(pt)
                    if big is a:
                        a = shrunk
                    else:
                        b = shrunk
                    progress = True
                    break
    if a.order() > b.order():
        a, b = b, a
    small_set = a.elements()
    if small_set is None:
        raise GroupError("intersection: neither side enumerable; raise the cap")
    if b.enumerable():
        big_set = b.elements()
        if big_set is not None:
            return frozenset(small_set & big_set)
    if len(small_set) > SIFT_LIMIT:
        raise GroupError("intersection: small side too large to sift; raise the cap")
    spec = a.spec
    act = action_for(spec)
    pg = b.perm_group()
    out = set()
    for vals in small_set:
        m = ProjMatrix(spec, vals, _canonical=True)
        if pg.contains(act.sympy_perm(m), strict=False):
            out.add(vals)
    return frozenset(out)


def subgroup_handle(elems: frozenset, spec: FieldSpec) -> GroupHandle:
    """Wrap an explicit element set as a handle (generators = all elements)."""
    gens = [ProjMatrix(spec, v, _canonical=True) for v in sorted(elems)]
    h = GroupHandle(gens if gens else [ProjMatrix.identity(spec)])
    h._elements = frozenset(elems)
    h._order = len(elems)
    return h


def equals_psl3(h: GroupHandle) -> bool:
    """True iff the handle generates all of PSL(3,q)."""
    for g in h.generators:
        if not g.in_psl():
            raise GroupError("generator outside PSL(3,q)")
    return h.order() == psl3_order(h.spec.q)


def generated_subfield(elements) -> FieldSpec:
    """Smallest subfield of GF(p^n) containing the given field elements."""
    elements = list(elements)
    if not elements:
        raise GroupError("no field elements given")
    spec = elements[0].spec
    n = spec.n
    d = 1
    for e in elements:
        for cand in range(1, n + 1):
            if n % cand == 0 and e.frobenius(cand) == e:
                de = cand
                break
        d = d * de // math.gcd(d, de)
    return make_field(spec.p, d)
