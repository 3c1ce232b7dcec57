import itertools
import math

import pytest
from hypothesis import given, strategies as st

from artifact.algebra import (FiniteGroup, GroupAction, GroupHom, alternating_subgroup, automorphisms,
                              check_action, check_group, check_hom, conjugation_action, cyclic_group,
                              direct_product, find_isomorphism, is_free, left_translation,
                              semidirect_product, subgroup, symmetric_group, trivial_group)
from artifact.errors import InputError
from helpers import abelian_group

orders = st.lists(st.integers(1, 4), min_size=1, max_size=2)


def test_small_groups_are_groups():
    for G in (trivial_group(), cyclic_group(2), cyclic_group(5), symmetric_group(3)):
        assert check_group(G).ok


def test_z2_from_catalog_has_order_two():
    assert cyclic_group(2).order == 2


def test_non_associative_table_is_caught():
    # a Latin square with unit 0 that is not associative
    mul = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    rep = check_group(FiniteGroup(list("abcde"), mul))
    assert not rep.ok
    assert "associativity" in rep.failed()
    assert rep.witnesses("associativity")


def test_s3_is_nonabelian_with_a3_normal():
    S3 = symmetric_group(3)
    assert S3.order == 6 and not S3.is_abelian()
    A3, inc = alternating_subgroup(S3)
    assert A3.order == 3 and check_hom(inc).ok
    members = {inc.map[h] for h in range(A3.order)}
    assert all(S3.conj(g, x) in members for g in range(6) for x in members)


@given(orders)
def test_products_are_groups(ns):
    G = abelian_group(ns)
    assert check_group(G).ok
    assert G.order == math.prod(ns)
    assert G.is_abelian()


@given(orders, orders)
def test_isomorphism_search_respects_invariants(a, b):
    A, B = abelian_group(a), abelian_group(b)
    iso = find_isomorphism(A, B)
    if iso is not None:
        assert A.order == B.order
        assert check_hom(GroupHom(A, B, list(iso))).ok
        assert sorted(A.element_order(x) for x in range(A.order)) == \
            sorted(B.element_order(x) for x in range(B.order))
    elif A.order == B.order:
        assert sorted(A.element_order(x) for x in range(A.order)) != \
            sorted(B.element_order(x) for x in range(B.order))


def test_z4_not_isomorphic_to_klein():
    assert find_isomorphism(cyclic_group(4), abelian_group([2, 2])) is None
    assert find_isomorphism(cyclic_group(6), abelian_group([2, 3])) is not None


def test_automorphism_counts():
    assert len(automorphisms(cyclic_group(5))) == 4
    assert len(automorphisms(symmetric_group(3))) == 6


@given(st.integers(1, 6))
def test_left_translation_free_and_conjugation_not(n):
    G = cyclic_group(n)
    assert is_free(left_translation(G)) and check_action(left_translation(G)).ok
    assert is_free(conjugation_action(G)) == (n == 1)


def test_broken_action_reports_witness():
    Z2 = cyclic_group(2)
    bad = GroupAction(Z2, ["x", "y"], [[0, 1], [0, 0]])
    rep = check_action(bad)
    assert not rep.ok


def test_semidirect_product_of_conjugation_has_right_order():
    S3 = symmetric_group(3)
    P = semidirect_product(S3, S3, conjugation_action(S3))
    assert P.order == 36 and check_group(P).ok


def test_subgroup_and_direct_product():
    S3 = symmetric_group(3)
    sub, inc = subgroup(S3, [0, 1])
    assert sub.order == 2 and check_hom(inc).ok
    assert direct_product(S3, cyclic_group(2)).order == 12


def test_kernel_of_sign():
    S3 = symmetric_group(3)
    Z2 = cyclic_group(2)
    A3, inc = alternating_subgroup(S3)
    even = {inc.map[h] for h in range(3)}
    sign = GroupHom(S3, Z2, [0 if x in even else 1 for x in range(6)])
    assert check_hom(sign).ok
    assert sorted(sign.kernel()) == sorted(even)


def test_non_hom_is_caught():
    Z3 = cyclic_group(3)
    rep = check_hom(GroupHom(Z3, Z3, [0, 1, 1]))
    assert not rep.ok


def test_bad_table_raises_input_error():
    with pytest.raises(InputError):
        FiniteGroup(["a", "b"], [[0, 1]])


def test_from_function_matches_cyclic():
    G = FiniteGroup.from_function(list(range(4)), lambda a, b: (a + b) % 4)
    assert find_isomorphism(G, cyclic_group(4)) is not None
    assert list(itertools.chain.from_iterable(G.mul)) == \
        list(itertools.chain.from_iterable(cyclic_group(4).mul))
