import itertools

import pytest
from hypothesis import given, strategies as st

from artifact import catalog
from artifact.actions import pb_groupoid_from_principal_bundle, trivial_bundle
from artifact.algebra import cyclic_group, symmetric_group
from artifact.errors import CarrierTooLarge, SquareFailure
from artifact.gerbes import base_trivial_from_pb, functor_phi, functor_xi
from artifact.transformations import (aut_gerbe, aut_partial_quotient, brute_force_aut, check_aut_group,
                                      embeddings, enumerate_aut, level_data, psi_inverse, psi_k, summarize,
                                      verify_square)

FAMILY = sorted(catalog.pb_family())


def gauge(G, m):
    return pb_groupoid_from_principal_bundle(trivial_bundle(G, "abcd"[:m]))


def brute_automorphisms_of_bundle(action):
    """All equivariant permutations of the carrier over the orbit map."""
    n = len(action.carrier)
    orbits, which = action.orbit_partition()
    out = []
    for perm in itertools.permutations(range(n)):
        if any(which[perm[x]] != which[x] for x in range(n)):
            continue
        if all(perm[action.act[g][x]] == action.act[g][perm[x]]
               for g in range(action.group.order) for x in range(n)):
            out.append(perm)
    return out


def test_z2_over_two_points_has_four_gauge_transformations():
    pb = catalog.pb_family()["pb_Z2_M2"]
    auts = enumerate_aut(pb, 0)
    brute = brute_force_aut(pb, 0)
    assert len(auts) == 4 and len(brute) == 4
    assert set(auts) == set(brute)
    assert len(brute_automorphisms_of_bundle(pb.meta["principal_bundle"])) == 4


@pytest.mark.parametrize("name", FAMILY)
@pytest.mark.parametrize("k", [0, 1, 2])
def test_aut_group_counts(name, k):
    rep = check_aut_group(catalog.pb_family()[name], k)
    assert rep.ok, rep.failed()
    counts = {rep.notes["formula_count"], rep.notes["search_count"], rep.notes["equivariant_map_count"]}
    assert len(counts) == 1


def test_frozen_orders():
    # values from the exhaustive and per-fiber enumerations
    orders = {(name, k): summarize(catalog.pb_family()[name], k).aut for name in ("pb_Z2_M2", "pb_Z3_M2")
              for k in (0, 1)}
    assert orders == {("pb_Z2_M2", 0): 4, ("pb_Z2_M2", 1): 256, ("pb_Z3_M2", 0): 9, ("pb_Z3_M2", 1): 6561}


@pytest.mark.parametrize("name", FAMILY)
@pytest.mark.parametrize("k", [0, 1, 2])
def test_square_commutes(name, k):
    rep = verify_square(catalog.pb_family()[name], k)
    assert rep.ok, rep.failed()
    assert rep.notes["aut_partial_quotient"] == rep.notes["C_Hk"]
    assert rep.notes["aut"] == rep.notes["aut_partial_quotient"] * rep.notes["kernel"]


def test_partial_quotient_count_is_an_independent_enumeration():
    pb = catalog.pb_family()["pb_Z2_M2"]
    listed = aut_partial_quotient(pb, 1)
    assert len(listed) == verify_square(pb, 1).notes["aut_partial_quotient"] == 16


def test_psi_round_trip():
    pb = catalog.pb_family()["pb_Z3_M1"]
    L = level_data(pb, 1)
    for a in enumerate_aut(pb, 1, L=L):
        assert psi_inverse(L, psi_k(L, a)) == a


@given(st.integers(1, 3), st.integers(1, 2), st.integers(0, 1))
def test_square_property(n, m, k):
    pb = gauge(cyclic_group(n), m)
    assert check_aut_group(pb, k).ok
    assert verify_square(pb, k).ok


@pytest.mark.parametrize("name", FAMILY)
@pytest.mark.parametrize("k", [1, 2])
def test_gerbe_counts_match(name, k):
    pb = catalog.pb_family()[name]
    for b in (functor_xi(base_trivial_from_pb(pb)), functor_phi(pb)) if k == 1 else \
            (functor_xi(base_trivial_from_pb(pb)),):
        rep = aut_gerbe(b, k)
        assert rep.ok, rep.failed()


def test_gerbe_matches_partial_quotient():
    pb = catalog.pb_family()["pb_Z2_M2"]
    ag = aut_gerbe(functor_xi(base_trivial_from_pb(pb)), 1)
    assert ag.notes["aut_B"] == verify_square(pb, 1).notes["aut_partial_quotient"] == 16


@pytest.mark.parametrize("n,m", [(2, 2), (3, 2), (2, 1), (3, 1)])
def test_embedding_chain(n, m):
    rep = embeddings(trivial_bundle(cyclic_group(n), "ab"[:m]), 2)
    assert rep.ok, rep.failed()
    assert rep.notes["aut_P"] == n ** m
    assert set(rep.notes["image_sizes"].values()) == {n ** m}


def test_nonabelian_gamma_direction():
    # S3 gauge over one point: conjugating by g0 breaks the square,
    # conjugating by g0^-1 makes it commute
    pb = gauge(symmetric_group(3), 1)
    L = level_data(pb, 1)
    plain = verify_square(pb, 1, L=L)
    assert not plain.ok and "square" in plain.failed()
    inverse = verify_square(pb, 1, inverse_gamma=True, L=L)
    assert "square" not in inverse.failed()
    with pytest.raises(SquareFailure):
        verify_square(pb, 1, raise_on_failure=True, L=L)


def test_nonabelian_counts_differ():
    pb = gauge(symmetric_group(3), 1)
    rep = verify_square(pb, 1, inverse_gamma=True)
    assert (rep.notes["aut_partial_quotient"], rep.notes["C_Hk"]) == (36, 6)
    assert "count_aut_pq_equals_C_Hk" in rep.failed()
    assert rep.notes["gamma_fully_equivariant"] is False
    group = check_aut_group(pb, 1)
    assert group.ok and group.notes["psi_multiplicative"] is False


def test_large_carrier_refused():
    pb = gauge(symmetric_group(3), 2)
    with pytest.raises(CarrierTooLarge):
        level_data(pb, 4)
