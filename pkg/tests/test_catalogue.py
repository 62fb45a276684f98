"""Catalogue builder tests: every family instance meets its recorded facts."""

import pytest

from psl3poly.gf import make_field, primitive_cube_root
from psl3poly.projmat import preserves_form
from psl3poly.grp import GroupHandle
from psl3poly import catalogue
from psl3poly.catalogue import CatalogueError, build_instance, field_for
from psl3poly.cgroup import verify_chiral, verify_regular


def test_field_for():
    assert field_for(7).q == 7
    assert field_for(8).q == 8
    assert field_for(25).q == 25
    with pytest.raises(CatalogueError):
        field_for(6)


def test_rank4_chiral_builder_validates_input():
    with pytest.raises(CatalogueError):
        catalogue.thm1_tuple(4)
    with pytest.raises(CatalogueError):
        catalogue.thm1_tuple(7, x=1)  # not primitive


def test_rank5_chiral_builder_needs_cube_root():
    with pytest.raises(CatalogueError):
        catalogue.thm2_tuple(5)
    with pytest.raises(CatalogueError):
        catalogue.thm2_tuple(7, k=2)


@pytest.mark.parametrize("q,stype", [(5, [4, 8, 4]), (7, [6, 4, 6])])
def test_rank4_expected_types(q, stype):
    inst = build_instance("THM1", {"q": q})
    assert inst.expected == {"verdict": "chiral", "schlafli": stype}
    rep = verify_chiral(inst.tuple, inst.family, inst.params)
    assert rep.schlafli == stype


def test_rank4_duality_swaps_generators():
    for q in (5, 7):
        t = catalogue.thm1_tuple(q)
        d = catalogue.thm1_duality(q)
        for i in (1, 2, 3):
            assert catalogue.thm1_apply_duality(t.sigma(i), d) == t.sigma(4 - i).inverse()


def test_rank5_types_by_sign():
    assert build_instance("THM2", {"q": 7, "k": 1}).expected["schlafli"] == [3, 6, 6, 3]
    assert build_instance("THM2", {"q": 7, "k": -1}).expected["schlafli"] == [3, 6, 3, 3]


def test_rank5_tail_pair_generates_order_12():
    for q in (7, 13):
        t = catalogue.thm2_tuple(q, k=-1, i=1)
        assert GroupHandle([t.sigma(3), t.sigma(4)]).order() == 12


@pytest.mark.parametrize("i", [1, 2])
def test_rank5_invariants(i):
    spec = field_for(7)
    conic = catalogue.thm2_conic(spec, i)
    t = catalogue.thm2_tuple(7, k=-1, i=i)
    assert all(preserves_form(t.sigma(j), conic) for j in (2, 3, 4))
    pt = catalogue.thm2_stabilized_point(spec, i)
    t1 = catalogue.thm2_tuple(7, k=1, i=i)
    assert all(t1.sigma(j).apply_point(pt) == pt for j in (2, 3, 4))


def test_rank5_dual_conjugator_identity():
    for q in (7, 13):
        t11 = catalogue.thm2_tuple(q, k=1, i=1)
        d12 = catalogue.thm2_tuple(q, k=1, i=2).dual()
        c = catalogue.thm2_dual_conjugator(q)
        ci = c.inverse()
        assert all((ci * t11.sigma(j) * c) == d12.sigma(j) for j in range(1, 5))


@pytest.mark.parametrize("case,q,order", [
    ("A", 4, 4), ("B", 5, 4), ("1", 7, 12), ("2", 7, 14), ("3", 7, 28),
])
def test_dihedral_orders(case, q, order):
    sigma, tau, expected = catalogue.dihedral_pair(case, q)
    assert expected == order
    h = GroupHandle([sigma, tau])
    assert h.order() == order
    assert (tau * tau).is_identity()
    assert tau * sigma * tau.inverse() == sigma.inverse()


def test_dihedral_case4_has_irreducible_parameter():
    sigma, tau, order = catalogue.dihedral_pair("4", 7, x=3)
    assert order == 16  # sigma order 8 divides q + 1
    assert GroupHandle([sigma, tau]).order() == 16
    with pytest.raises(CatalogueError):
        catalogue.dihedral_pair("4", 7, x=2)  # X^2-2X+1 = (X-1)^2 splits


@pytest.mark.parametrize("case", range(1, 10))
def test_rank3_odd_cases_meet_expectations(case):
    inst = build_instance(f"R3_ODD_CASE{case}", {"q": 5})
    rep = verify_regular(inst.tuple, inst.family, inst.params)
    assert rep.checks["ip"] == inst.expected["ip"]
    if "order" in inst.expected:
        assert rep.group_order == inst.expected["order"]
    if inst.expected.get("degenerate"):
        assert 2 in rep.schlafli


def test_rank3_heisenberg_scales_with_p():
    inst = build_instance("R3_ODD_CASE7", {"q": 7})
    rep = verify_regular(inst.tuple, inst.family, inst.params)
    assert rep.group_order == 4 * 7 ** 3
    assert rep.checks["ip"] == "pass"


@pytest.mark.parametrize("p,group,order,stype", [
    (5, "SYM4", 24, [3, 3]), (11, "ALT5", 60, [3, 5]),
])
def test_conic_tuples(p, group, order, stype):
    inst = build_instance("R3_CONIC", {"q": p, "group": group})
    rep = verify_regular(inst.tuple, inst.family, inst.params)
    assert rep.group_order == order
    assert rep.schlafli == stype
    assert rep.checks == {"string": "pass", "ip": "pass"}
    assert all(preserves_form(m, inst.extras["form"])
               for m in inst.tuple.involutions)


def test_conic_alt5_needs_sqrt5():
    with pytest.raises(CatalogueError):
        catalogue.conic_parameters(7, "ALT5")


@pytest.mark.parametrize("p,stype,order", [
    (5, [3, 3, 3], 120), (11, [3, 5, 3], 660), (19, [5, 3, 5], 3420),
])
def test_rank4_odd_exotic_rows(p, stype, order):
    inst = build_instance("R4_ODD", {"q": p})
    rep = verify_regular(inst.tuple, inst.family, inst.params)
    assert rep.schlafli == stype
    assert rep.group_order == order
    assert rep.checks == {"string": "pass", "ip": "pass"}
    assert all(preserves_form(m, inst.extras["form"])
               for m in inst.tuple.involutions)


def test_rank4_even_structure():
    inst = build_instance("R4_EVEN", {"q": 4})
    rep = verify_regular(inst.tuple, inst.family, inst.params)
    exp = inst.expected
    assert rep.group_order == exp["order"] == 2 * exp["k"] * exp["q_prime"] ** 4
    assert rep.checks == {"string": "pass", "ip": "pass"}
    assert rep.schlafli == [4, exp["k"], 4]


def test_rank4_even_rejects_subfield_parameter():
    with pytest.raises(CatalogueError):
        catalogue.r4_even_tuple(4, 1, 1)  # a = 1 lies in F_2[ab]


@pytest.mark.parametrize("a,c,order,qp", [(1, 1, 24, 2), ([0, 1], 1, 160, 4)])
def test_rank3_even_elementary_abelian(a, c, order, qp):
    inst = build_instance("E2_EVEN", {"q": 4, "a": a, "c": c})
    rep = verify_regular(inst.tuple, inst.family, inst.params)
    exp = inst.expected
    assert exp["q_prime"] == qp
    assert rep.group_order == order == 2 * exp["k"] * qp ** 2
    assert rep.checks["ip"] == "pass"


@pytest.mark.parametrize("rank,variant,order,stype,ip", [
    (1, "wreath", 2, [], "pass"),
    (2, "wreath", 8, [4], "pass"),
    (3, "wreath", 32, [4, 4], "pass"),
    (3, "c2xd8", 16, [4, 4], "fail"),
])
def test_even_triangular_ladder(rank, variant, order, stype, ip):
    inst = build_instance("EVEN_TRIANGULAR", {"q": 4, "rank": rank,
                                              "variant": variant})
    rep = verify_regular(inst.tuple, inst.family, inst.params)
    assert rep.group_order == order
    assert rep.schlafli == stype
    assert rep.checks["ip"] == ip


def test_rank6_witnesses():
    w = catalogue.rank6_witness("even", 4)
    assert w["all_fix_point"]
    assert len(w["matrices"]) == 6
    for q in (3, 5, 7):
        w = catalogue.rank6_witness("odd", q)
        assert not w["commutes"]


def test_build_instance_rejects_unknown_family():
    with pytest.raises(CatalogueError):
        build_instance("NO_SUCH_FAMILY", {"q": 5})


def test_family_registry_is_buildable():
    assert "THM1" in catalogue.FAMILY_IDS
    assert "R3_ODD_CASE9" in catalogue.FAMILY_IDS
