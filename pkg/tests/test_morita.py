import pytest
from hypothesis import given, strategies as st

from artifact import catalog
from artifact.algebra import cyclic_group, symmetric_group
from artifact.errors import NotAFibration, PreconditionNotMet
from artifact.groupoid import (GroupoidFunctor, fiber_product_groupoid, group_groupoid, identity_groupoid,
                               pair_groupoid, pullback_groupoid)
from artifact.morita import (VIAS, bitorsor_from_functor, check_bitorsor, check_weak_equivalence,
                             collapse_functor, fiber_product_bitorsor, fiber_product_report,
                             group_self_bitorsor, interpret_principal_2bundle, lemma_weakequiv_check,
                             morita_equivalent, principal_2bundle_from_principal_bundle, three_way)
from artifact.actions import quotient_pb, trivial_bundle

surjections = st.dictionaries(st.integers(0, 5), st.sampled_from("xyz"), min_size=1, max_size=5)


@pytest.mark.parametrize("name", sorted(catalog.surjections()))
def test_catalog_surjections_three_way(name):
    s = catalog.surjections()[name]
    rep = fiber_product_report(s.mapping, s.base)
    assert rep.ok, rep.failed()


@given(surjections)
def test_fiber_product_equivalent_to_base(pi):
    rep = fiber_product_report(pi)
    assert rep.ok, rep.failed()
    f = collapse_functor(pi)
    assert check_weak_equivalence(f).ok
    assert check_bitorsor(fiber_product_bitorsor(pi)).ok


def test_groups_of_different_order_are_not_equivalent():
    Z2, Z3 = group_groupoid(cyclic_group(2)), group_groupoid(cyclic_group(3))
    assert [morita_equivalent(Z2, Z3, v).equivalent for v in VIAS] == [False, False, False]
    assert three_way(Z2, Z3).ok


def test_group_equivalent_to_its_pullback():
    S3 = group_groupoid(symmetric_group(3))
    pulled = pullback_groupoid({"a": "*", "b": "*"}, S3)
    assert [morita_equivalent(S3, pulled, v).equivalent for v in VIAS] == [True, True, True]


def test_non_full_functor_is_not_a_weak_equivalence():
    g = group_groupoid(cyclic_group(2))
    pt = identity_groupoid(["*"])
    w = check_weak_equivalence(GroupoidFunctor(g, pt, [0], [0, 0]))
    assert not w.ok
    assert "faithful" in w.report.failed()


def test_self_bitorsor():
    assert check_bitorsor(group_self_bitorsor(group_groupoid(cyclic_group(3)))).ok
    assert check_bitorsor(group_self_bitorsor(pair_groupoid("ab"))).ok


def test_bitorsor_of_an_equivalence():
    pi = {"a": "x", "b": "x", "c": "y"}
    assert check_bitorsor(bitorsor_from_functor(collapse_functor(pi))).ok


def test_lemma_passing_instance():
    # P the pair groupoid over P = G × M, Y = P ×_M P / G, φ onto M
    action = trivial_bundle(cyclic_group(2), ["a", "b"])
    a, to_m = principal_2bundle_from_principal_bundle(action)
    pb = quotient_pb(a)
    Y = pb.base
    labels = sorted(set(to_m.values()))
    M = identity_groupoid(labels)
    obj = [None] * Y.n_objects
    for x in range(pb.target.n_objects):
        obj[pb.proj.obj_map[x]] = M.obj(to_m[pb.target.objects[x]])
    phi = GroupoidFunctor(Y, M, obj, [M.unit[obj[Y.src[i]]] for i in range(Y.n_arrows)])
    rep = lemma_weakequiv_check(pb.proj, phi)
    assert rep.ok
    assert rep.notes["inclusion_weak_equivalence"] and rep.notes["phi_weak_equivalence"]


def test_lemma_failing_instance():
    g = group_groupoid(cyclic_group(2))
    pt = identity_groupoid(["*"])
    rep = lemma_weakequiv_check(GroupoidFunctor.identity(g), GroupoidFunctor(g, pt, [0], [0, 0]))
    assert rep.ok
    assert rep.notes["inclusion_weak_equivalence"] is False
    assert rep.notes["phi_weak_equivalence"] is False


def test_lemma_preconditions():
    pair = pair_groupoid("ab")
    # a point included into a connected pair groupoid: the arrow a → b has no lift
    point = GroupoidFunctor(identity_groupoid(["a"]), pair, [pair.obj("a")], [pair.arr(("a", "a"))])
    with pytest.raises(NotAFibration):
        lemma_weakequiv_check(point, GroupoidFunctor.identity(pair))
    # not a functor at all
    g = fiber_product_groupoid({"a": "x", "b": "x"})
    bad = GroupoidFunctor(g, identity_groupoid(["a", "b"]), [0, 1], [0, 0, 1, 1])
    with pytest.raises(PreconditionNotMet):
        lemma_weakequiv_check(bad, GroupoidFunctor.identity(bad.cod))
    two = identity_groupoid(["p", "q"])
    with pytest.raises(PreconditionNotMet):
        lemma_weakequiv_check(GroupoidFunctor.identity(two),
                              GroupoidFunctor(two, identity_groupoid(["*", "**"]), [0, 0], [0, 0]))


@pytest.mark.parametrize("n,m", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_interpret_principal_2bundle(n, m):
    a, to_m = principal_2bundle_from_principal_bundle(trivial_bundle(cyclic_group(n), "ab"[:m]))
    rep = interpret_principal_2bundle(a, to_m)
    assert rep.ok, rep.failed()
    assert rep.checks and "morita_equivalent" in rep.checks


def test_weak_equivalences_compose():
    f = {"a": "x", "b": "x", "c": "y"}
    big, mid = pair_groupoid("abc"), pair_groupoid("xy")
    first = GroupoidFunctor.from_functions(big, mid, lambda o: f[o], lambda a: (f[a[0]], f[a[1]]))
    second = collapse_functor({"x": "*", "y": "*"})
    second = GroupoidFunctor(mid, second.cod, [second.cod.obj("*")] * 2, [0] * 4)
    for g in (first, second, first.then(second), GroupoidFunctor.identity(big)):
        assert check_weak_equivalence(g).ok
