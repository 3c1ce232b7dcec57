import pytest
from hypothesis import given, strategies as st

from artifact.algebra import cyclic_group, symmetric_group
from artifact.errors import SearchExhausted
from artifact.groupoid import (FiniteGroupoid, GroupoidFunctor, check_functor, check_groupoid, check_isomorphism,
                               equivalence_relation_surjection, fiber_product_groupoid, find_groupoid_isomorphism,
                               group_groupoid, identity_groupoid, pair_groupoid, product_groupoid,
                               pullback_groupoid, quotient_groupoid)

surjections = st.dictionaries(st.integers(0, 6), st.sampled_from("xyz"), min_size=1, max_size=6)


def test_pair_groupoid_counts():
    g = pair_groupoid("abc")
    assert check_groupoid(g).ok
    assert (g.n_objects, g.n_arrows) == (3, 9)
    assert len(g.components()) == 1


def test_composition_order_convention():
    g = pair_groupoid("ab")
    ab, ba = g.arr(("a", "b")), g.arr(("b", "a"))
    # (p, q) runs q → p; b∘a needs src(b) = tgt(a)
    assert g.objects[g.src[ab]] == "b" and g.objects[g.tgt[ab]] == "a"
    assert g.comp[(ab, ba)] == g.arr(("a", "a"))


@given(surjections)
def test_fiber_product_is_a_groupoid(pi):
    g = fiber_product_groupoid(pi)
    assert check_groupoid(g).ok
    fibers = {}
    for y, m in pi.items():
        fibers[m] = fibers.get(m, 0) + 1
    assert g.n_arrows == sum(c * c for c in fibers.values())
    assert len(g.components()) == len(fibers)
    back = equivalence_relation_surjection(g)
    assert back is not None


@given(surjections)
def test_pullback_of_identity_is_fiber_product(pi):
    M = identity_groupoid(sorted(set(pi.values())))
    a = pullback_groupoid(pi, M)
    b = fiber_product_groupoid(pi)
    assert check_groupoid(a).ok
    assert a.n_arrows == b.n_arrows
    if a.n_arrows <= 64:
        assert find_groupoid_isomorphism(a, b) is not None


def test_group_groupoid_vertex_group():
    S3 = symmetric_group(3)
    g = group_groupoid(S3)
    vg, loops = g.vertex_group(0)
    assert vg.order == 6 and len(loops) == 6


def test_product_groupoid():
    g = product_groupoid(pair_groupoid("ab"), group_groupoid(cyclic_group(2)))
    assert check_groupoid(g).ok and g.n_arrows == 8


def test_broken_groupoid_reports():
    # an arrow a → b without an inverse
    g = FiniteGroupoid(["a", "b"], ["1a", "1b", "f"], [0, 1, 0], [0, 1, 1],
                       {(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2})
    rep = check_groupoid(g)
    assert not rep.ok and rep.failed()


def test_functor_checks_and_composition():
    g = pair_groupoid("ab")
    pt = identity_groupoid(["*"])
    f = GroupoidFunctor.from_functions(g, pt, lambda o: "*", lambda a: "*")
    assert check_functor(f).ok
    idg = GroupoidFunctor.identity(g)
    assert check_isomorphism(idg).ok
    assert check_functor(idg.then(f)).ok
    assert f.is_surjective() and not f.is_bijective()


def test_non_functor_is_caught():
    g = group_groupoid(cyclic_group(3))
    h = group_groupoid(cyclic_group(3))
    f = GroupoidFunctor(g, h, [0], [0, 1, 1])
    assert not check_functor(f).ok


def test_isomorphism_search():
    a = group_groupoid(cyclic_group(4))
    b = group_groupoid(cyclic_group(4))
    assert find_groupoid_isomorphism(a, b) is not None
    klein = product_groupoid(group_groupoid(cyclic_group(2)), group_groupoid(cyclic_group(2)))
    assert find_groupoid_isomorphism(a, klein) is None


def test_isomorphism_search_refuses_large_inputs():
    big = pair_groupoid(range(9))
    with pytest.raises(SearchExhausted):
        find_groupoid_isomorphism(big, big)


def test_quotient_of_pair_groupoid_to_point():
    g = pair_groupoid("ab")
    q, f = quotient_groupoid(g, [0] * g.n_arrows, [0, 0])
    assert q.n_arrows == 1 and check_functor(f).ok
