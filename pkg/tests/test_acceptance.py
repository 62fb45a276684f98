"""End-to-end acceptance gate: one test per headline guarantee."""

import json
import random
import time

import pytest

from psl3poly.gf import make_field
from psl3poly.projmat import ProjMatrix, preserves_form
from psl3poly.grp import GroupHandle
from psl3poly import catalogue, oracle
from psl3poly.catalogue import build_instance
from psl3poly.cgroup import (check_ip_regular, check_string_regular,
                             facet_extract, verify_chiral, verify_regular)
from psl3poly.cli import main as cli_main


def test_01_rank4_chiral_verified_across_fields():
    for q in (5, 7, 8, 9, 11, 13):
        t0 = time.perf_counter()
        inst = build_instance("THM1", {"q": q})
        rep = verify_chiral(inst.tuple, inst.family, inst.params)
        elapsed = time.perf_counter() - t0
        assert rep.checks["chirality"] == "chiral", (q, rep.checks)
        assert rep.checks["string"] == rep.checks["ip"] == "pass"
        assert rep.checks["full_group"] == "pass"
        assert rep.schlafli == inst.expected["schlafli"]
        assert elapsed < 60, f"q={q} took {elapsed:.1f}s"


def test_02_rank4_self_duality():
    for q in (5, 7):
        t = catalogue.thm1_tuple(q)
        d = catalogue.thm1_duality(q)
        for i in (1, 2, 3):
            assert catalogue.thm1_apply_duality(t.sigma(i), d) \
                == t.sigma(4 - i).inverse()


def test_03_rank5_families_all_branches():
    for p in (7, 13):
        spec = catalogue.field_for(p)
        for k in (1, -1):
            for i in (1, 2):
                inst = build_instance("THM2", {"q": p, "k": k, "i": i})
                rep = verify_chiral(inst.tuple, inst.family, inst.params)
                assert rep.checks["chirality"] == "chiral", (p, k, i)
                assert rep.schlafli == inst.expected["schlafli"]
                t = inst.tuple
                if k == -1:
                    assert GroupHandle([t.sigma(3), t.sigma(4)]).order() == 12
                    conic = catalogue.thm2_conic(spec, i)
                    assert all(preserves_form(t.sigma(j), conic)
                               for j in (2, 3, 4))
                else:
                    pt = catalogue.thm2_stabilized_point(spec, i)
                    assert all(t.sigma(j).apply_point(pt) == pt
                               for j in (2, 3, 4))
        t11 = catalogue.thm2_tuple(p, k=1, i=1)
        d12 = catalogue.thm2_tuple(p, k=1, i=2).dual()
        c = catalogue.thm2_dual_conjugator(p)
        assert all((c.inverse() * t11.sigma(j) * c) == d12.sigma(j)
                   for j in range(1, 5))


def test_04_rank5_over_gf25_is_regular_with_frobenius_witness():
    inst = build_instance("THM2", {"q": 25, "k": 1, "i": 1})
    assert inst.expected["verdict"] == "regular"
    rep = verify_chiral(inst.tuple, inst.family, inst.params)
    assert rep.checks["chirality"] == "regular"
    w = rep.witnesses["chirality"]
    assert w["frobenius"] == 1 and w["duality"] is False


def test_05_small_group_menagerie():
    rows = [
        ("R3_ODD_CASE2", {"q": 5}, 20, "pass"),
        ("R3_ODD_CASE3", {"q": 5}, 100, "pass"),
        ("R3_ODD_CASE7", {"q": 5}, 500, "pass"),
        ("EVEN_TRIANGULAR", {"q": 4, "rank": 1}, 2, "pass"),
        ("EVEN_TRIANGULAR", {"q": 4, "rank": 2}, 8, "pass"),
        ("EVEN_TRIANGULAR", {"q": 4, "rank": 3}, 32, "pass"),
        ("EVEN_TRIANGULAR", {"q": 4, "rank": 3, "variant": "c2xd8"}, 16, "fail"),
    ]
    for family, params, order, ip in rows:
        inst = build_instance(family, params)
        rep = verify_regular(inst.tuple, inst.family, inst.params)
        assert rep.group_order == order, (family, params, rep.group_order)
        assert rep.checks["ip"] == ip, (family, params)
    ladder = {1: [], 2: [4], 3: [4, 4]}
    for rank, stype in ladder.items():
        inst = build_instance("EVEN_TRIANGULAR", {"q": 4, "rank": rank})
        assert verify_regular(inst.tuple).schlafli == stype
    for family, params in [("E2_EVEN", {"q": 4, "a": [0, 1], "c": 1}),
                           ("R4_EVEN", {"q": 4})]:
        inst = build_instance(family, params)
        rep = verify_regular(inst.tuple, inst.family, inst.params)
        exp = inst.expected
        power = 2 if family == "E2_EVEN" else 4
        assert rep.group_order == 2 * exp["k"] * exp["q_prime"] ** power
        assert rep.checks["ip"] == "pass"


def test_06_rank4_exotic_quotients():
    for p, stype, order in [(5, [3, 3, 3], 120), (11, [3, 5, 3], 660),
                            (19, [5, 3, 5], 3420)]:
        inst = build_instance("R4_ODD", {"q": p})
        rep = verify_regular(inst.tuple, inst.family, inst.params)
        assert rep.schlafli == stype
        assert rep.group_order == order
        assert rep.checks == {"string": "pass", "ip": "pass"}


def test_07_rank6_impossibility_witnesses():
    w = catalogue.rank6_witness("even", 4)
    assert w["all_fix_point"]
    for q in (3, 5, 7):
        assert not catalogue.rank6_witness("odd", q)["commutes"]


def test_08_dual_route_orders_agree_on_enumerable_groups():
    instances = (
        [("DIH_A", {"q": 4}), ("DIH_B", {"q": 5}), ("DIH_2", {"q": 7}),
         ("DIH_3", {"q": 7}), ("R3_CONIC", {"q": 11, "group": "ALT5"}),
         ("R4_ODD", {"q": 5}), ("R4_ODD", {"q": 19}), ("R4_EVEN", {"q": 4}),
         ("E2_EVEN", {"q": 4, "a": [0, 1], "c": 1})]
        + [(f"R3_ODD_CASE{c}", {"q": 5}) for c in range(1, 10)]
    )
    for family, params in instances:
        inst = build_instance(family, params)
        if inst.tuple is not None:
            gens = getattr(inst.tuple, "generators", None) or inst.tuple.involutions
        else:
            gens = [inst.extras["sigma"], inst.extras["tau"]]
        result = oracle.check_group_order(gens)
        assert result["agree"] is True, (family, params, result)
    # a large group: breadth-first closure against the stabilizer chain
    h = GroupHandle(catalogue.thm1_tuple(5).generators)
    elems = h.elements()  # raises InconsistencyError if the routes disagree
    assert elems is not None and len(elems) == h.order() == 372000


def test_09a_facets_of_chiral_tuples_are_regular():
    for build in (lambda: catalogue.thm1_tuple(5),
                  lambda: catalogue.thm1_tuple(7),
                  lambda: catalogue.thm2_tuple(7, k=1, i=1),
                  lambda: catalogue.thm2_tuple(7, k=-1, i=1)):
        facet, rotations = facet_extract(build())
        assert check_string_regular(facet)
        assert check_ip_regular(facet)
        assert rotations.order() >= 1


def test_09b_far_commutation_and_no_involutory_generators():
    for family, params in [("R4_ODD", {"q": 5}), ("R4_ODD", {"q": 11}),
                           ("R4_ODD", {"q": 19}), ("R4_EVEN", {"q": 4})]:
        inv = build_instance(family, params).tuple.involutions
        for i in range(len(inv)):
            for j in range(i + 2, len(inv)):
                assert inv[i] * inv[j] == inv[j] * inv[i]
    for t in (catalogue.thm1_tuple(5), catalogue.thm1_tuple(8),
              catalogue.thm2_tuple(7), catalogue.thm2_tuple(13, k=-1)):
        assert all(g.order() > 2 for g in t.generators)


def test_09c_randomized_field_and_matrix_properties():
    for q in (5, 7, 8, 9, 25):
        spec = catalogue.field_for(q)
        rng = random.Random(q)
        els = spec.elements()
        ident = ProjMatrix.identity(spec)

        def rand_el():
            return rng.choice(els)

        def rand_mat():
            while True:
                try:
                    return ProjMatrix.from_entries(
                        spec, [[rand_el() for _ in range(3)] for _ in range(3)])
                except ValueError:
                    continue

        for trial in range(1000):
            if trial % 2 == 0:
                a, b, c = rand_el(), rand_el(), rand_el()
                assert a * (b + c) == a * b + a * c
                assert (a + b) * c == a * c + b * c
                if a:
                    assert a * a.inv() == spec.one()
            else:
                m, g = rand_mat(), rand_mat()
                lam = rand_el()
                if lam:
                    scaled = ProjMatrix.from_entries(
                        spec, [[lam * e for e in row] for row in m.entries()])
                    assert scaled == m
                assert m * m.inverse() == ident
                assert (m * g).inverse() == g.inverse() * m.inverse()


def test_10_exhaustive_tiny_search_finds_no_chiral_tuples(capsys):
    t0 = time.perf_counter()
    for rank in (3, 4):
        code = cli_main(["search", "--q", "2", "--rank", str(rank)])
        out = capsys.readouterr().out
        assert code == 0
        assert json.loads(out)["chiral_tuples"] == 0
    assert time.perf_counter() - t0 < 600
