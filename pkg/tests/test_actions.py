import pytest
from hypothesis import given, strategies as st

from artifact import catalog
from artifact.actions import (PBGroupoid, TwoGroupAction, check_fibration, check_partial_quotient,
                              check_pb_groupoid, check_two_group_action, partial_quotient,
                              pb_groupoid_from_principal_bundle, quotient_pb, trivial_bundle)
from artifact.algebra import GroupAction, conjugation_action, cyclic_group, symmetric_group
from artifact.errors import NotFree
from artifact.groupoid import check_groupoid

bundles = st.tuples(st.integers(1, 3), st.integers(1, 3), st.randoms(use_true_random=False))


def relabelled_bundle(n: int, m: int, rnd) -> GroupAction:
    """The trivial Z_n-bundle over m points with shuffled carrier labels."""
    base = trivial_bundle(cyclic_group(n), [f"m{i}" for i in range(m)])
    labels = [f"p{i}" for i in range(len(base.carrier))]
    rnd.shuffle(labels)
    return GroupAction(base.group, labels, base.act, "shuffled")


def test_catalog_family_is_valid():
    for name, pb in catalog.pb_family().items():
        rep = check_pb_groupoid(pb)
        assert rep.ok, (name, rep.failed())


def test_gauge_sizes():
    pb = catalog.pb_family()["pb_Z2_M2"]
    assert isinstance(pb, PBGroupoid)
    assert pb.target.n_objects == 4 and pb.target.n_arrows == 16
    assert pb.tg.arrows_group.order == 4
    assert pb.base.n_objects == 2 and pb.base.n_arrows == 4
    # M×M×G appears as the partial quotient, not the full one
    pq = partial_quotient(pb).groupoid
    assert pq.n_objects == 2 and pq.n_arrows == 8


@given(bundles)
def test_gauge_pb_of_any_free_action(data):
    n, m, rnd = data
    pb = pb_groupoid_from_principal_bundle(relabelled_bundle(n, m, rnd))
    rep = check_pb_groupoid(pb)
    assert rep.ok, rep.failed()
    # |P| = |G|·|M| on objects and |G|²·|M^(1)| on arrows
    assert pb.target.n_objects == n * pb.base.n_objects
    assert pb.target.n_arrows == n * n * pb.base.n_arrows
    assert check_fibration(pb.proj).ok


@given(bundles)
def test_partial_quotient_properties(data):
    n, m, rnd = data
    pb = pb_groupoid_from_principal_bundle(relabelled_bundle(n, m, rnd))
    pq = partial_quotient(pb)
    rep = check_partial_quotient(pq)
    assert rep.ok, rep.failed()
    assert check_groupoid(pq.groupoid).ok
    # the identity bisection acts freely on arrows and on objects
    assert pq.groupoid.n_arrows * n == pb.target.n_arrows
    assert pq.groupoid.n_objects * n == pb.target.n_objects


def test_non_free_action_is_refused():
    with pytest.raises(NotFree) as exc:
        pb_groupoid_from_principal_bundle(conjugation_action(symmetric_group(3)))
    assert exc.value.witness is not None


def test_non_free_two_group_action_has_no_quotient():
    pb = catalog.pb_family()["pb_Z2_M1"]
    a = pb.action
    trivial_arr = GroupAction(a.act_arr.group, a.act_arr.carrier,
                              [list(range(len(a.act_arr.carrier)))] * a.act_arr.group.order)
    trivial_obj = GroupAction(a.act_obj.group, a.act_obj.carrier,
                              [list(range(len(a.act_obj.carrier)))] * a.act_obj.group.order)
    broken = TwoGroupAction(a.tg, a.target, trivial_arr, trivial_obj, "trivial")
    assert check_two_group_action(broken).ok
    with pytest.raises(NotFree):
        quotient_pb(broken)


def test_incompatible_action_is_reported():
    pb = catalog.pb_family()["pb_Z3_M1"]
    a = pb.action
    # objects moved but arrows left in place breaks source compatibility
    still = GroupAction(a.act_arr.group, a.act_arr.carrier,
                        [list(range(len(a.act_arr.carrier)))] * a.act_arr.group.order)
    rep = check_two_group_action(TwoGroupAction(a.tg, a.target, still, a.act_obj, "broken"))
    assert not rep.ok
