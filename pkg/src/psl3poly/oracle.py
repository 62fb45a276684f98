"""Independent slow-path recomputations used to cross-check the main engine.

Everything here deliberately avoids the breadth-first closure and stabilizer
chain in grp: saturation works by pairwise products on matrix objects, orders
by repeated multiplication, and intersections by double filtering, so a bug
in the fast path cannot silently confirm itself.
"""

from __future__ import annotations

from sympy.combinatorics import Permutation, PermutationGroup

from .projmat import ProjMatrix
from .grp import action_for, GroupError

SATURATE_CAP = 600_000


def saturate(generators, cap: int = SATURATE_CAP):
    """Close a generator list under all pairwise products (fixpoint loop).

    Returns a dict vals -> ProjMatrix, or None if the cap is exceeded.
    """
    if not generators:
        raise GroupError("no generators")
    spec = generators[0].spec
    elems = {ProjMatrix.identity(spec).vals: ProjMatrix.identity(spec)}
    for g in generators:
        elems[g.vals] = g
    while True:
        current = list(elems.values())
        added = False
        for a in current:
            for b in current:
                prod = a * b
                if prod.vals not in elems:
                    elems[prod.vals] = prod
                    added = True
                    if len(elems) > cap:
                        return None
        if not added:
            return elems


def order_by_saturation(generators, cap: int = SATURATE_CAP):
    elems = saturate(generators, cap)
    return None if elems is None else len(elems)


def order_by_stabilizer_chain(generators) -> int:
    """Order via a freshly built sympy permutation group on PG(2,q) points."""
    act = action_for(generators[0].spec)
    return PermutationGroup([Permutation(list(act.perm_of(g)))
                             for g in generators]).order()


def element_order(m: ProjMatrix) -> int:
    """Order by repeated multiplication, no exponent shortcuts."""
    acc = m
    k = 1
    while not acc.is_identity():
        acc = acc * m
        k += 1
    return k


def schlafli_by_products(generators) -> list[int]:
    """Schlafli symbol recomputed from scratch for a rotation tuple."""
    return [element_order(g) for g in generators]


def regular_schlafli_by_products(involutions) -> list[int]:
    return [element_order(involutions[i] * involutions[i + 1])
            for i in range(len(involutions) - 1)]


def brute_intersection(elems_a, elems_b) -> frozenset:
    """Set intersection of two explicitly enumerated groups."""
    return frozenset(elems_a) & frozenset(elems_b)


def check_group_order(generators, cap: int = SATURATE_CAP) -> dict:
    """Both order routes side by side; 'agree' is None when saturation overflows."""
    sat = order_by_saturation(generators, cap)
    chain = order_by_stabilizer_chain(generators)
    return {"saturation": sat, "stabilizer_chain": chain,
            "agree": None if sat is None else sat == chain}
