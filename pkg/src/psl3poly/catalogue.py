"""Builders for every explicit generator family over PSL(3,q).

Each builder instantiates displayed matrices at concrete field parameters and
packages them with the expected verification outcome, so the CLI can confirm
both the positive constructions (chiral tuples, regular string C-groups) and
the deliberate failure cases (tuples that provably violate an axiom).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .gf import (FieldSpec, FieldElement, FieldError, make_field,
                 primitive_element, primitive_cube_root)
from .projmat import ProjMatrix, ProjPoint, QuadraticForm, point
from .grp import GroupHandle, generated_subfield
from .cgroup import ChiralTuple, RegularTuple


class CatalogueError(ValueError):
    pass


def field_for(q: int) -> FieldSpec:
    """GF(q) for a prime power q."""
    p = 2
    while p * p <= q:
        if q % p == 0:
            n = 0
            m = q
            while m % p == 0:
                m //= p
                n += 1
            if m != 1:
                raise CatalogueError(f"{q} is not a prime power")
            return make_field(p, n)
        p += 1
    return make_field(q, 1)


def _mat(spec, rows) -> ProjMatrix:
    return ProjMatrix.from_entries(
        spec, [[spec.element(v) for v in row] for row in rows])


def sqrt_of(spec, value):
    """A square root of value in GF(q), or None."""
    v = spec.element(value).val
    for s in range(spec.q):
        if spec.mul(s, s) == v:
            return FieldElement(spec, s)
    return None


@dataclass
class FamilyInstance:
    family: str
    params: dict
    kind: str  # chiral | regular | dihedral | witness
    tuple: object = None
    expected: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)


# -- rank-4 chiral family --------------------------------------------------


def thm1_tuple(q: int, x=None) -> ChiralTuple:
    """The rank-4 chiral generators over GF(q), q >= 5, x primitive."""
    if q < 5:
        raise CatalogueError("rank-4 chiral family requires q >= 5")
    spec = field_for(q)
    x = primitive_element(spec) if x is None else spec.element(x)
    if x.order() != spec.q - 1:
        raise CatalogueError("x must be a primitive element")
    xi = x.inv()
    e = spec.element
    s1 = ProjMatrix.from_entries(spec, [[x, e(1), e(0)],
                                        [e(0), e(1) + xi, -xi],
                                        [e(0), e(1), e(0)]])
    s2 = ProjMatrix.from_entries(spec, [[-xi, e(0), e(0)],
                                        [e(0), e(0), e(1)],
                                        [e(0), x, e(0)]])
    s3 = ProjMatrix.from_entries(spec, [[x, e(0), e(0)],
                                        [x - xi, e(1), e(0)],
                                        [x - xi, e(0), xi]])
    return ChiralTuple([s1, s2, s3])


def thm1_duality(q: int, x=None) -> ProjMatrix:
    """The conjugator D of the self-duality of the rank-4 family."""
    spec = field_for(q)
    x = primitive_element(spec) if x is None else spec.element(x)
    xi = x.inv()
    e = spec.element
    return ProjMatrix.from_entries(spec, [[(x - xi).inv(), e(0), e(0)],
                                          [e(0), e(1), e(1)],
                                          [e(0), e(1), x]])


def thm1_apply_duality(m: ProjMatrix, d: ProjMatrix) -> ProjMatrix:
    """The duality map sigma -> D sigma^{-t} D^{-1}; sends sigma_i to
    sigma_{4-i}^{-1} on the rank-4 tuple."""
    return d * m.dual() * d.inverse()


# -- rank-5 chiral family --------------------------------------------------


def thm2_tuple(q: int, k: int = 1, i: int = 1) -> ChiralTuple:
    """The rank-5 chiral generators; needs a primitive cube root in GF(q)."""
    if k not in (1, -1) or i not in (1, 2):
        raise CatalogueError("k must be +-1 and i must be 1 or 2")
    spec = field_for(q)
    w = primitive_cube_root(spec)
    if w is None:
        raise CatalogueError(f"GF({q}) has no primitive cube root of unity")
    e = spec.element
    wi = w if i == 1 else w * w
    w2i = wi * wi
    ke = e(k)
    s1 = ProjMatrix.from_entries(spec, [[e(1), e(0), e(0)],
                                        [e(0), wi, e(0)],
                                        [e(0), e(0), w2i]])
    s2 = ProjMatrix.from_entries(spec, [[e(-1), e(0), -ke],
                                        [e(0), -w2i, -ke * w2i],
                                        [e(0), e(0), wi]])
    s3 = ProjMatrix.from_entries(spec, [[e(1), ke, e(0)],
                                        [e(0), ke, e(1)],
                                        [e(0), e(-1), e(0)]])
    s4 = ProjMatrix.from_entries(spec, [[e(0), e(1), e(0)],
                                        [e(0), e(0), e(1)],
                                        [e(1), e(0), e(0)]])
    return ChiralTuple([s1, s2, s3, s4])


def thm2_conic(spec: FieldSpec, i: int = 1) -> QuadraticForm:
    """The invariant conic XY + w^i YZ + w^2i ZX of the k=-1 branch."""
    w = primitive_cube_root(spec)
    if w is None:
        raise CatalogueError("no primitive cube root of unity")
    wi = w if i == 1 else w * w
    return QuadraticForm(spec, 0, 0, 0, 1, (wi * wi).val, wi.val)


def thm2_stabilized_point(spec: FieldSpec, i: int = 1) -> ProjPoint:
    """The point (1, w^i, w^2i) preserved by the k=1 parabolic subgroup."""
    w = primitive_cube_root(spec)
    if w is None:
        raise CatalogueError("no primitive cube root of unity")
    wi = w if i == 1 else w * w
    return point(spec, [spec.one(), wi, wi * wi])


def thm2_dual_conjugator(q: int) -> ProjMatrix:
    """Conjugation by its inverse maps the (k,i)=(1,1) tuple onto the dual
    (reversed inverses) of the (1,2) tuple."""
    spec = field_for(q)
    w = primitive_cube_root(spec)
    if w is None:
        raise CatalogueError(f"GF({q}) has no primitive cube root of unity")
    o = spec.one()
    return ProjMatrix.from_entries(spec, [[w, w * w, o],
                                          [w * w, w, o],
                                          [o, o, o]])


# -- rank-2 dihedral families ----------------------------------------------


def dihedral_pair(case: str, q: int, x=None):
    """Generator pair (sigma, tau) of one dihedral family; returns the pair
    and the expected group order 2*order(sigma)."""
    spec = field_for(q)
    e = spec.element
    odd = spec.p != 2
    if case == "A":
        if odd:
            raise CatalogueError("case A requires even characteristic")
        a = spec.element(x) if x is not None else primitive_element(spec)
        sigma = _mat(spec, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
        tau = ProjMatrix.from_entries(spec, [[e(1), a, e(0)],
                                             [e(0), e(1), e(0)],
                                             [e(0), e(0), e(1)]])
    elif case == "B":
        if not odd:
            raise CatalogueError("case B requires odd characteristic")
        sigma = _mat(spec, [[-1, 0, 0], [0, -1, 0], [0, 0, 1]])
        tau = _mat(spec, [[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    elif case == "1":
        a = spec.element(x) if x is not None else primitive_element(spec)
        if a.val in (0, 1, spec.neg(1)):
            raise CatalogueError("case 1 needs x different from 0 and +-1")
        z, o = spec.zero(), spec.one()
        sigma = ProjMatrix.from_entries(spec, [[a, z, z], [z, o, z], [z, z, a.inv()]])
        tau = _mat(spec, [[0, 0, 1], [0, -1, 0], [1, 0, 0]])
    elif case == "2":
        sigma = _mat(spec, [[1, 1, 0], [0, 1, 1], [0, 0, 1]])
        tau = _mat(spec, [[-1, -1, 0], [0, 1, 0], [0, 0, -1]])
    elif case == "3":
        if not odd:
            raise CatalogueError("case 3 requires odd characteristic")
        sigma = _mat(spec, [[-1, 1, 0], [0, -1, 0], [0, 0, 1]])
        tau = _mat(spec, [[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    elif case == "4":
        a = spec.element(x) if x is not None else _irreducible_trace(spec)
        if _splits(spec, a):
            raise CatalogueError("case 4 needs X^2 - xX + 1 irreducible")
        z, o = spec.zero(), spec.one()
        sigma = ProjMatrix.from_entries(spec, [[o, z, z], [z, z, -o], [z, o, a]])
        tau = ProjMatrix.from_entries(spec, [[-o, z, z], [z, o, a], [z, z, -o]])
    else:
        raise CatalogueError(f"unknown dihedral case {case!r}")
    return sigma, tau, 2 * sigma.order()


def _splits(spec, a):
    """True iff X^2 - aX + 1 has a root in GF(q)."""
    for t in range(spec.q):
        val = spec.add(spec.sub(spec.mul(t, t), spec.mul(a.val, t)), 1)
        if val == 0:
            return True
    return False


def _irreducible_trace(spec):
    for t in range(spec.q):
        cand = FieldElement(spec, t)
        if not _splits(spec, cand):
            return cand
    raise CatalogueError("no irreducible trace parameter exists")  # unreachable


# -- rank-3 regular families, odd characteristic ---------------------------


def triangle_involutions(spec):
    """The three diagonal involutions fixing the reference triangle."""
    phi1 = _mat(spec, [[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    phi2 = _mat(spec, [[-1, 0, 0], [0, 1, 0], [0, 0, -1]])
    phi3 = _mat(spec, [[-1, 0, 0], [0, -1, 0], [0, 0, 1]])
    return phi1, phi2, phi3


def _r3_case_matrix(spec, case: int, a):
    e = spec.element
    rows = {
        1: [[1, 0, 0], [0, -1, 0], [0, 0, -1]],
        2: [[1, 0, 0], [1, -1, 0], [0, 0, -1]],
        3: [[1, 0, 0], [1, -1, 0], [1, 0, -1]],
        4: [[1, -2, 0], [0, -1, 0], [0, 0, -1]],
        5: [[0, -1, 0], [-1, 0, 0], [0, 0, -1]],
        7: [[-1, 0, 0], [2, 1, 0], [2, 2, -1]],
        8: [[0, -1, 0], [-1, 0, 0], [1, -1, -1]],
    }
    if case in rows:
        return _mat(spec, rows[case])
    o = spec.one()
    if case == 6:
        return ProjMatrix.from_entries(spec, [[a, -a - o, e(0)],
                                              [a - o, -a, e(0)],
                                              [e(0), e(0), e(-1)]])
    if case == 9:
        return ProjMatrix.from_entries(spec, [[a, -a - o, e(0)],
                                              [a - o, -a, e(0)],
                                              [o, e(-1), e(-1)]])
    raise CatalogueError(f"rank-3 case must be 1..9, got {case}")


# which (rho_1, rho_3) pairing of triangle involutions each case uses; picked
# so the genuinely polytopal cases carry a non-degenerate type
_R3_PAIRING = {1: (0, 1), 2: (0, 2), 3: (0, 1), 4: (0, 2), 5: (0, 1),
               6: (0, 2), 7: (0, 1), 8: (0, 1), 9: (0, 1)}


def r3_odd_tuple(case: int, p: int, a=None) -> FamilyInstance:
    """One of the nine middle-involution cases over GF(p), p odd prime."""
    spec = field_for(p)
    if spec.p == 2 or spec.n != 1:
        raise CatalogueError("rank-3 odd cases require an odd prime field")
    if a is None:
        a = 2
    av = spec.element(a)
    if case in (6, 9) and av.val in (0, 1, spec.neg(1)):
        raise CatalogueError("parameter a must avoid 0 and +-1")
    phis = triangle_involutions(spec)
    i1, i3 = _R3_PAIRING[case]
    rho2 = _r3_case_matrix(spec, case, av)
    t = RegularTuple([phis[i1], rho2, phis[i3]])
    expected = _r3_expected(spec, case, av)
    return FamilyInstance(family=f"R3_ODD_CASE{case}", params={"q": p, "a": av.val},
                          kind="regular", tuple=t, expected=expected)


def _r3_expected(spec, case, a):
    p = spec.p
    if case == 1:
        return {"ip": "fail", "note": "middle involution lies in the triangle group"}
    if case == 2 or case == 4:
        return {"order": 4 * p, "ip": "pass", "degenerate": True,
                "group": "D_4p", "dual_of": 2 if case == 4 else None}
    if case == 3:
        return {"order": 4 * p * p, "ip": "pass", "group": "D_2p^2"}
    if case == 5:
        return {"order": 8, "ip": "fail", "group": "D_8"}
    if case == 6:
        phi1 = triangle_involutions(spec)[0]
        k = (phi1 * _r3_case_matrix(spec, 6, a)).order()
        return {"order": 4 * k, "ip": "pass", "degenerate": True,
                "group": "D_2k x C_2"}
    if case == 7:
        return {"order": 4 * p ** 3, "ip": "pass", "group": "He_p:C2^2"}
    if case == 8:
        return {"order": 8 * p * p, "ip": "pass", "group": "D_2p wr C2"}
    if case == 9:
        phi1 = triangle_involutions(spec)[0]
        k = (phi1 * _r3_case_matrix(spec, 6, a)).order()
        qp = generated_subfield([a]).q
        return {"order": 4 * k * qp * qp, "ip": "pass",
                "group": "E_q'^2:(D_2k x C_2)", "q_prime": qp}
    raise CatalogueError(f"rank-3 case must be 1..9, got {case}")


def r3_conic_tuple(p: int, a, b) -> FamilyInstance:
    """Conic-preserving rank-3 tuple with the reflection fixing no vertex."""
    spec = field_for(p)
    if spec.p == 2:
        raise CatalogueError("conic rank-3 family is stated for odd q")
    a = spec.element(a)
    b = spec.element(b)
    o = spec.one()
    for bad, name in ((a + o, "a+1"), (a + b, "a+b"), (b + o, "b+1")):
        if not bad:
            raise CatalogueError(f"parameter constraint violated: {name} must be nonzero")
    e = spec.element
    rho2 = ProjMatrix.from_entries(spec, [[a, -a - o, a + o],
                                          [a + b, -a - b - o, a + b],
                                          [b + o, -b - o, b]])
    phi1, _, phi3 = triangle_involutions(spec)
    t = RegularTuple([phi1, rho2, phi3])
    form = QuadraticForm(spec, (a + o).inv().val, (-(a + b).inv()).val,
                         (b + o).inv().val)
    return FamilyInstance(family="R3_CONIC", params={"q": p, "a": a.val, "b": b.val},
                          kind="regular", tuple=t, extras={"form": form})


def half(spec):
    return (-spec.one()) * spec.element(2).inv()


def conic_parameters(p: int, group: str):
    """Table parameters (a, b) giving Sym(4) or Alt(5) over GF(p)."""
    spec = field_for(p)
    h = half(spec)
    if group == "SYM4":
        return h.val, h.val
    if group == "ALT5":
        r5 = sqrt_of(spec, 5)
        if r5 is None:
            raise CatalogueError(f"5 is not a square in GF({p})")
        quarter = spec.element(4).inv()
        return h.val, ((-spec.one() + r5) * quarter).val
    raise CatalogueError("group must be SYM4 or ALT5")


# -- rank-4 regular families -----------------------------------------------


def r4_odd_tuple(p: int, a, a_prime) -> FamilyInstance:
    """The all-nonzero rank-4 case over GF(p) with rescaled parameters."""
    spec = field_for(p)
    if spec.p == 2:
        raise CatalogueError("this rank-4 family is stated for odd q")
    a = spec.element(a)
    ap = spec.element(a_prime)
    for v in (a, ap):
        if v.val in (0, 1, spec.neg(1)):
            raise CatalogueError("parameters must avoid 0 and +-1")
    o, z = spec.one(), spec.zero()
    b, c = -a - o, a - o
    bp, cp = -ap - o, ap - o
    t = RegularTuple([
        ProjMatrix.from_entries(spec, [[o, z, z], [z, -o, z], [z, z, -o]]),
        ProjMatrix.from_entries(spec, [[a, b, z], [c, -a, z], [z, z, -o]]),
        ProjMatrix.from_entries(spec, [[-o, z, z], [z, -ap, cp], [z, bp, ap]]),
        ProjMatrix.from_entries(spec, [[-o, z, z], [z, -o, z], [z, z, o]]),
    ])
    form = QuadraticForm(spec, ((o - a) * (o + ap)).val,
                         ((o + a) * (o + ap)).val,
                         ((o + a) * (o - ap)).val)
    return FamilyInstance(family="R4_ODD", params={"q": p, "a": a.val, "a_prime": ap.val},
                          kind="regular", tuple=t, extras={"form": form})


# frozen exotic rows: p -> (a, a_prime, type, order); parameters chosen so
# both end entries and the middle entry land on the small orders
R4_EXOTIC = {
    5: {"type": [3, 3, 3], "order": 120, "group": "PGL(2,5)"},
    11: {"type": [3, 5, 3], "order": 660, "group": "PSL(2,11)"},
    19: {"type": [5, 3, 5], "order": 3420, "group": "PSL(2,19)"},
}


def r4_exotic_parameters(p: int):
    """The (a, a') pair realizing the exotic Schlafli type at p in 5, 11, 19."""
    spec = field_for(p)
    h = half(spec)
    if p in (5, 11):
        return h.val, h.val
    if p == 19:
        quarter = spec.element(4).inv()
        r5 = sqrt_of(spec, 5)
        for root in (r5, -r5):
            a = (-spec.one() + root) * quarter
            mid = -a * a + a + a + spec.one()
            # middle product has order 3 iff its quadratic factor is X^2+X+1
            if mid == spec.one():
                return a.val, a.val
        raise CatalogueError("no square root of 5 yields the order-3 middle entry")
    raise CatalogueError("exotic parameters are tabulated for p in {5, 11, 19}")


def r4_even_tuple(q: int, a, b) -> FamilyInstance:
    """The even-characteristic rank-4 family with normal subgroup E_q'^4."""
    spec = field_for(q)
    if spec.p != 2:
        raise CatalogueError("this family requires even characteristic")
    a = spec.element(a)
    b = spec.element(b)
    sub = generated_subfield([a * b])
    if _lands_in_subfield(a, sub):
        raise CatalogueError("parameter a must lie outside F_2[ab]")
    e, o, z = spec.element, spec.one(), spec.zero()
    t = RegularTuple([
        _mat(spec, [[1, 0, 0], [0, 1, 1], [0, 0, 1]]),
        ProjMatrix.from_entries(spec, [[o, z, z], [z, o, z], [a, z, o]]),
        ProjMatrix.from_entries(spec, [[o, z, b], [z, o, z], [z, z, o]]),
        _mat(spec, [[1, 0, 0], [1, 1, 0], [0, 0, 1]]),
    ])
    k = (t.rho(1) * t.rho(2)).order()
    qp = sub.q
    return FamilyInstance(family="R4_EVEN", params={"q": q, "a": a.val, "b": b.val},
                          kind="regular", tuple=t,
                          expected={"order": 2 * k * qp ** 4, "ip": "pass",
                                    "group": "E_q'^4:D_2k", "q_prime": qp, "k": k})


def _lands_in_subfield(e, sub):
    return e.frobenius(sub.n) == e


def e2_even_tuple(q: int, a, c) -> FamilyInstance:
    """Even rank-3 family generating E_q'^2 : D_2k."""
    spec = field_for(q)
    if spec.p != 2:
        raise CatalogueError("this family requires even characteristic")
    a = spec.element(a)
    c = spec.element(c)
    if not a or not c:
        raise CatalogueError("parameters a and c must be nonzero")
    o, z = spec.one(), spec.zero()
    t = RegularTuple([
        ProjMatrix.from_entries(spec, [[o, z, a], [z, o, z], [z, z, o]]),
        _mat(spec, [[1, 0, 0], [0, 1, 0], [1, 0, 1]]),
        ProjMatrix.from_entries(spec, [[o, z, z], [z, o, c], [z, z, o]]),
    ])
    k = (t.rho(0) * t.rho(1)).order()
    qp = generated_subfield([a]).q
    return FamilyInstance(family="E2_EVEN", params={"q": q, "a": a.val, "c": c.val},
                          kind="regular", tuple=t,
                          expected={"order": 2 * k * qp ** 2, "ip": "pass",
                                    "group": "E_q'^2:D_2k", "q_prime": qp, "k": k})


def even_triangular_tuple(rank: int, q: int, variant: str = "wreath") -> FamilyInstance:
    """Unitriangular string C-groups: C_2, D_8, C_2^2 wr C_2, and the
    IP-failing C_2 x D_8 variant at rank 3."""
    spec = field_for(q)
    if spec.p != 2:
        raise CatalogueError("triangular families require even characteristic")
    axis_inv = _mat(spec, [[1, 0, 0], [0, 1, 1], [0, 0, 1]])
    center_inv = _mat(spec, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    if rank == 1:
        t = RegularTuple([axis_inv])
        exp = {"order": 2, "ip": "pass", "type": []}
    elif rank == 2:
        t = RegularTuple([center_inv, axis_inv])
        exp = {"order": 8, "ip": "pass", "type": [4], "group": "D_8"}
    elif rank == 3:
        e, o, z = spec.element, spec.one(), spec.zero()
        if variant == "wreath":
            if spec.q < 4:
                raise CatalogueError("the wreath variant needs q >= 4")
            y = primitive_element(spec)
            rho3 = ProjMatrix.from_entries(spec, [[o, z, z], [z, o, y], [z, z, o]])
            t = RegularTuple([axis_inv, center_inv, rho3])
            exp = {"order": 32, "ip": "pass", "type": [4, 4], "group": "C2^2 wr C2"}
        elif variant == "c2xd8":
            if spec.q < 4:
                raise CatalogueError("an off-group third involution needs q >= 4")
            y = primitive_element(spec)
            rho3 = ProjMatrix.from_entries(spec, [[o, z, y], [z, o, o], [z, z, o]])
            t = RegularTuple([axis_inv, center_inv, rho3])
            exp = {"order": 16, "ip": "fail", "group": "C2 x D_8"}
        else:
            raise CatalogueError("variant must be wreath or c2xd8")
    else:
        raise CatalogueError("triangular ranks are 1, 2 and 3")
    return FamilyInstance(family="EVEN_TRIANGULAR", params={"q": q, "rank": rank,
                                                            "variant": variant},
                          kind="regular", tuple=t, expected=exp)


# -- rank-6 impossibility witnesses ----------------------------------------


def rank6_witness(parity: str, q: int, a=None, b=None) -> dict:
    """The matrices behind the no-rank-6 argument, with the checked fact."""
    spec = field_for(q)
    if parity == "even":
        if spec.p != 2:
            raise CatalogueError("even witness needs even q")
        a = spec.element(a) if a is not None else primitive_element(spec)
        b = spec.element(b) if b is not None else spec.one()
        e, o, z = spec.element, spec.one(), spec.zero()
        mats = {
            "tau_12": _mat(spec, [[1, 0, 0], [0, 1, 1], [0, 0, 1]]),
            "tau_13": ProjMatrix.from_entries(spec, [[o, z, z], [z, o, z], [a, z, o]]),
            "tau_14": ProjMatrix.from_entries(spec, [[o, z, b], [z, o, z], [z, z, o]]),
            "tau_15": _mat(spec, [[1, 0, 0], [1, 1, 0], [0, 0, 1]]),
            "tau_45": ProjMatrix.from_entries(spec, [[o, z, z], [o, o, z], [a, z, o]]),
            "tau_35": _mat(spec, [[1, 0, 0], [1, 1, 1], [0, 0, 1]]),
        }
        fixed = point(spec, [spec.zero(), spec.one(), spec.zero()])
        holds = all(m.apply_point(fixed) == fixed for m in mats.values())
        return {"parity": "even", "q": q, "matrices": mats, "fixed_point": fixed,
                "all_fix_point": holds}
    if parity == "odd":
        if spec.p == 2:
            raise CatalogueError("odd witness needs odd q")
        a = spec.element(a) if a is not None else spec.one()
        if not a:
            raise CatalogueError("parameter a must be nonzero")
        o, z = spec.one(), spec.zero()
        two = spec.element(2)
        mats = {
            "tau_12": _mat(spec, [[1, 0, 0], [0, -1, 0], [0, 0, -1]]),
            "tau_13": _mat(spec, [[1, 0, 0], [1, -1, 0], [0, 0, -1]]),
            "tau_14": _mat(spec, [[-1, 0, 0], [0, -1, 0], [0, 1, 1]]),
            "tau_15": _mat(spec, [[-1, 0, 0], [0, -1, 0], [0, 0, 1]]),
            "tau_45": _mat(spec, [[-1, 0, 0], [-1, 1, 0], [0, 0, -1]]),
            "tau_35": _mat(spec, [[-1, 0, 0], [0, 1, 0], [0, 0, -1]]),
            "tau_25": ProjMatrix.from_entries(
                spec, [[-o, z, two * a], [z, -o, a], [z, z, o]]),
            "sigma_1": ProjMatrix.from_entries(
                spec, [[o, z, -(two * a)], [z, o, -a], [z, z, o]]),
            "sigma_5": _mat(spec, [[1, 0, 0], [0, 1, 0], [0, -1, 1]]),
        }
        s1, s5 = mats["sigma_1"], mats["sigma_5"]
        return {"parity": "odd", "q": q, "matrices": mats,
                "commutes": s1 * s5 == s5 * s1}
    raise CatalogueError("parity must be even or odd")


# -- registry --------------------------------------------------------------


def psl3_is_simple(q: int) -> bool:
    return q != 1


def build_instance(family: str, params: dict) -> FamilyInstance:
    """Uniform construction entry point keyed by family id."""
    q = params.get("q")
    if family == "THM1":
        t = thm1_tuple(q, params.get("x"))
        g = math.gcd(3, q - 1)
        return FamilyInstance(family="THM1", params={"q": q}, kind="chiral", tuple=t,
                              expected={"verdict": "chiral",
                                        "schlafli": [q - 1, 2 * (q - 1) // g, q - 1]})
    if family == "THM2":
        k = params.get("k", 1)
        i = params.get("i", 1)
        t = thm2_tuple(q, k, i)
        verdict = "chiral" if t.spec.n == 1 else "regular"
        stype = [3, 6, 6, 3] if k == 1 else [3, 6, 3, 3]
        return FamilyInstance(family="THM2", params={"q": q, "k": k, "i": i},
                              kind="chiral", tuple=t,
                              expected={"verdict": verdict, "schlafli": stype})
    if family.startswith("DIH_"):
        case = family[4:]
        sigma, tau, order = dihedral_pair(case, q, params.get("x"))
        return FamilyInstance(family=family, params={"q": q}, kind="dihedral",
                              expected={"order": order},
                              extras={"sigma": sigma, "tau": tau})
    if family.startswith("R3_ODD_CASE"):
        return r3_odd_tuple(int(family[11:]), q, params.get("a"))
    if family == "R3_CONIC":
        group = params.get("group", "SYM4")
        if "a" in params and "b" in params:
            a, b = params["a"], params["b"]
        else:
            a, b = conic_parameters(q, group)
        inst = r3_conic_tuple(q, a, b)
        inst.expected = {"order": {"SYM4": 24, "ALT5": 60}.get(group), "ip": "pass",
                         "group": group}
        return inst
    if family == "R4_ODD":
        if "a" in params and "a_prime" in params:
            a, ap = params["a"], params["a_prime"]
        else:
            a, ap = r4_exotic_parameters(q)
        inst = r4_odd_tuple(q, a, ap)
        if q in R4_EXOTIC and (a, ap) == r4_exotic_parameters(q):
            row = R4_EXOTIC[q]
            inst.expected = {"order": row["order"], "ip": "pass",
                             "type": row["type"], "group": row["group"]}
        return inst
    if family == "R4_EVEN":
        spec = field_for(q)
        if "a" in params and "b" in params:
            a, b = params["a"], params["b"]
        else:
            x = primitive_element(spec)
            a, b = x, x * x
        return r4_even_tuple(q, a, b)
    if family == "E2_EVEN":
        return e2_even_tuple(q, params.get("a", 1), params.get("c", 1))
    if family == "EVEN_TRIANGULAR":
        return even_triangular_tuple(params.get("rank", 3), q,
                                     params.get("variant", "wreath"))
    raise CatalogueError(f"unknown family {family!r}")


FAMILY_IDS = (
    ["THM1", "THM2", "DIH_A", "DIH_B", "DIH_1", "DIH_2", "DIH_3", "DIH_4"]
    + [f"R3_ODD_CASE{i}" for i in range(1, 10)]
    + ["R3_CONIC", "R4_ODD", "R4_EVEN", "E2_EVEN", "EVEN_TRIANGULAR"]
)
