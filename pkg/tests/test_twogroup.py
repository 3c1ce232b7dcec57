import math

import pytest
from hypothesis import assume, given, strategies as st

from artifact import catalog
from artifact.algebra import GroupAction, GroupHom, cyclic_group, symmetric_group
from artifact.errors import InvalidCrossedModule
from artifact.twogroup import (CrossedModule, check_crossed_module, check_round_trip, check_two_group,
                               crossed_module_from_two_group, crossed_module_isomorphism, gauge_crossed_module,
                               identity_crossed_module, pair_two_group, phi_iso, raw_from_two_group,
                               two_group_from_crossed_module)
from helpers import s3_over_trivial


def power_action(m: int, n: int, k: int) -> CrossedModule:
    """Z_n acting on Z_m by h ↦ k^g h with trivial d."""
    H, G = cyclic_group(m), cyclic_group(n)
    table = [[(pow(k, g, m) * h) % m for h in range(m)] for g in range(n)]
    return CrossedModule(H, G, GroupAction(G, H.elements, table), GroupHom(H, G, [0] * m), f"Z{m}<-Z{n}")


def reduction(m: int, n: int) -> CrossedModule:
    """Z_{mn} → Z_n by reduction, trivial action: a central extension."""
    H, G = cyclic_group(m * n), cyclic_group(n)
    return CrossedModule(H, G, GroupAction(G, H.elements, [list(range(m * n))] * n),
                         GroupHom(H, G, [h % n for h in range(m * n)]), "reduction")


def test_catalog_positive_instances():
    for name in ("A3<S3", "Z3_Z2_trivial_d"):
        assert check_crossed_module(catalog.crossed_modules()[name]).ok, name


def test_peiffer_counterexample_has_witness():
    rep = check_crossed_module(s3_over_trivial())
    assert not rep.ok
    assert "peiffer" in rep.failed()
    h, h2 = rep.witnesses("peiffer")[0]
    S3 = catalog.groups()["S3"]
    a, b = S3.idx(h), S3.idx(h2)
    assert S3.conj(a, b) != b


def test_counterexample_refused_by_constructor():
    with pytest.raises(InvalidCrossedModule):
        two_group_from_crossed_module(s3_over_trivial())


def test_round_trip_on_catalog():
    for name, cm in catalog.crossed_modules().items():
        rep = check_round_trip(cm)
        assert rep.ok, (name, rep.failed())


def test_two_group_sizes():
    tg = two_group_from_crossed_module(catalog.crossed_modules()["A3<S3"])
    assert tg.arrows_group.order == 18
    assert tg.groupoid.n_objects == 6 and tg.groupoid.n_arrows == 18
    assert check_two_group(tg).ok
    # arrows u = h*|G| + g run from g to d(h)g
    u = tg.pair(1, 2)
    assert tg.src(u) == 2 and tg.split(u) == (1, 2)


@given(st.integers(2, 9), st.integers(1, 4), st.integers(1, 8))
def test_power_actions_are_crossed_modules(m, n, k):
    assume(math.gcd(k, m) == 1 and pow(k, n, m) == 1 % m)
    cm = power_action(m, n, k)
    assert check_crossed_module(cm).ok
    assert check_round_trip(cm).ok


@given(st.integers(1, 4), st.integers(1, 4))
def test_central_extensions_round_trip(m, n):
    cm = reduction(m, n)
    assert check_crossed_module(cm).ok
    rep = check_round_trip(cm)
    assert rep.ok, rep.failed()


@given(st.integers(1, 5))
def test_gauge_and_identity(n):
    G = cyclic_group(n)
    for cm in (gauge_crossed_module(G), identity_crossed_module(G)):
        assert check_crossed_module(cm).ok
        assert check_round_trip(cm).ok


def test_pair_two_group_recovers_gauge():
    S3 = symmetric_group(3)
    raw = pair_two_group(S3)
    assert check_two_group(raw).ok
    cm = crossed_module_from_two_group(raw)
    assert cm.H.order == 6 and cm.G.order == 6
    assert crossed_module_isomorphism(cm, gauge_crossed_module(S3)) is not None


def test_phi_is_an_isomorphism_of_two_groups():
    raw = raw_from_two_group(two_group_from_crossed_module(catalog.crossed_modules()["A3<S3"]))
    hom, functor, _ = phi_iso(raw)
    assert hom.is_bijective() and functor.is_bijective()


def test_non_isomorphic_crossed_modules():
    S3 = symmetric_group(3)
    assert crossed_module_isomorphism(gauge_crossed_module(S3), identity_crossed_module(S3)) is None
