"""Acceptance criteria, one test each, with wall-clock bounds.

Each test prints a single PASS/FAIL line; the lines are repeated in the
pytest terminal summary.  Run directly with ``python tests/test_acceptance.py``
for the lines alone.
"""
import io
import json
import sys
import tempfile
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from artifact import catalog  # noqa: E402
from artifact.actions import quotient_pb, trivial_bundle  # noqa: E402
from artifact.algebra import cyclic_group  # noqa: E402
from artifact.cli import run  # noqa: E402
from artifact.documents import canonical_json, document_of, loads, write  # noqa: E402
from artifact.gerbes import (base_trivial_from_pb, check_bundle_gerbe, check_gerbe_isomorphism,  # noqa: E402
                             check_pb_isomorphism, functor_phi, functor_xi, psi_xi_iso, verify_bg_pq, xi_psi_iso)
from artifact.groupoid import (GroupoidFunctor, fiber_product_groupoid, group_groupoid,  # noqa: E402
                               identity_groupoid)
from artifact.morita import (fiber_product_report, interpret_principal_2bundle,  # noqa: E402
                             lemma_weakequiv_check, principal_2bundle_from_principal_bundle)
from artifact.nerve import (check_nerve_pb, check_partial_quotient_nerve, check_simplicial,  # noqa: E402
                            check_two_group_models, nerve, nerve_pb, partial_quotient_nerve,
                            two_group_nerve_models)
from artifact.transformations import (aut_gerbe, brute_force_aut, check_aut_group, embeddings,  # noqa: E402
                                      enumerate_aut, verify_square)
from artifact.twogroup import check_crossed_module, check_round_trip, two_group_from_crossed_module  # noqa: E402
from helpers import s3_over_trivial  # noqa: E402

LINES: list[str] = []


def criterion(number: int, title: str, bound: float, body) -> None:
    start = time.perf_counter()
    failures = body()
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < bound
    detail = "" if not failures else "  failures: " + "; ".join(failures[:5])
    line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {elapsed:.2f}s (bound {bound:g}s){detail}"
    LINES.append(line)
    print(line)
    assert not failures, failures
    assert elapsed < bound, f"{elapsed:.2f}s exceeds {bound}s"


def _need(failures: list, cond: bool, what: str) -> None:
    if not cond:
        failures.append(what)


def crossed_modules():
    f: list = []
    cms = catalog.crossed_modules()
    for name in ("A3<S3", "Z3_Z2_trivial_d"):
        _need(f, check_crossed_module(cms[name]).ok, f"{name} rejected")
    bad = check_crossed_module(s3_over_trivial())
    _need(f, not bad.ok and bool(bad.witnesses("peiffer")), "S3 over 1 accepted or no witness")
    for name, cm in cms.items():
        _need(f, check_round_trip(cm).ok, f"round trip {name}")
    return f


def functors():
    f: list = []
    for name, pb in catalog.pb_family().items():
        rep = check_bundle_gerbe(functor_phi(pb))
        _need(f, rep.ok and "equivariance" in rep.checks, f"Φ({name})")
        bt = base_trivial_from_pb(pb)
        back, iso = psi_xi_iso(bt)
        _need(f, check_pb_isomorphism(iso, back.pb, bt.pb).ok, f"ΨΞ({name})")
        xi = functor_xi(bt)
        again, iso2 = xi_psi_iso(xi)
        _need(f, check_gerbe_isomorphism(iso2, again, xi).ok, f"ΞΨ(Ξ {name})")
        rep = verify_bg_pq(pb)
        _need(f, rep.ok and "item1_arrows" in rep.notes and "item2_arrows" in rep.notes, f"items 1, 2 on {name}")
    for name, b in catalog.trivial_gerbes().items():
        again, iso = xi_psi_iso(b)
        _need(f, check_gerbe_isomorphism(iso, again, b).ok, f"ΞΨ({name})")
    return f


def catalog_groupoids():
    out = [(n, group_groupoid(G)) for n, G in catalog.groups().items()]
    out += [(n, two_group_from_crossed_module(cm).groupoid) for n, cm in catalog.crossed_modules().items()]
    for n, pb in catalog.pb_family().items():
        out += [(n, pb.target), (n + ".base", pb.base)]
    out += [(n, fiber_product_groupoid(s.mapping, s.base)) for n, s in catalog.surjections().items()]
    out += [(n, b.B) for n, b in catalog.trivial_gerbes().items()]
    return out


def nerves():
    f: list = []
    for name, g in catalog_groupoids():
        _need(f, check_simplicial(nerve(g, 3)).ok, f"simplicial {name}")
    for name, cm in catalog.crossed_modules().items():
        _need(f, check_two_group_models(two_group_nerve_models(two_group_from_crossed_module(cm), 3)).ok,
              f"models {name}")
    for name, pb in catalog.pb_family().items():
        n = nerve_pb(pb, 3)
        _need(f, check_nerve_pb(n).ok, f"nerve_pb {name}")
        _need(f, all(lv.total_size == lv.group_size * lv.base_size for lv in n.levels), f"counts {name}")
        _need(f, check_partial_quotient_nerve(partial_quotient_nerve(pb, 3)).ok, f"Ñ {name}")
    return f


def transformations():
    f: list = []
    fam = catalog.pb_family()
    pb = fam["pb_Z2_M2"]
    auts, brute = enumerate_aut(pb, 0), brute_force_aut(pb, 0)
    _need(f, len(auts) == len(brute) == 4 and set(auts) == set(brute), "|Aut(P)| = 4")
    for name, p in fam.items():
        for k in (0, 1, 2):
            _need(f, check_aut_group(p, k).ok, f"Aut {name} k={k}")
            sq = verify_square(p, k)
            _need(f, sq.ok, f"square {name} k={k}")
            _need(f, sq.notes["aut_partial_quotient"] == sq.notes["C_Hk"], f"count {name} k={k}")
        g = functor_xi(base_trivial_from_pb(p))
        for k in (1, 2):
            ag = aut_gerbe(g, k)
            _need(f, ag.ok and ag.notes["aut_B"] == verify_square(p, k).notes["aut_partial_quotient"],
                  f"gerbe {name} k={k}")
        _need(f, embeddings(p.meta["principal_bundle"], 2).ok, f"embeddings {name}")
    return f


def morita():
    f: list = []
    for name, s in catalog.surjections().items():
        _need(f, fiber_product_report(s.mapping, s.base).ok, f"Y^[2] ≃ M for {name}")
    for name, pb in catalog.pb_family().items():
        bundle = pb.meta["principal_bundle"]
        a, to_m = principal_2bundle_from_principal_bundle(bundle)
        rep = interpret_principal_2bundle(a, to_m)
        _need(f, rep.ok and rep.notes["lemma"]["phi_weak_equivalence"], f"interpretation {name}")
    # passing lemma instance: both sides weak equivalences
    a, to_m = principal_2bundle_from_principal_bundle(trivial_bundle(cyclic_group(2), ["a", "b"]))
    pb = quotient_pb(a)
    Y, M = pb.base, identity_groupoid(sorted(set(to_m.values())))
    obj = [None] * Y.n_objects
    for x in range(pb.target.n_objects):
        obj[pb.proj.obj_map[x]] = M.obj(to_m[pb.target.objects[x]])
    phi = GroupoidFunctor(Y, M, obj, [M.unit[obj[Y.src[i]]] for i in range(Y.n_arrows)])
    good = lemma_weakequiv_check(pb.proj, phi)
    _need(f, good.ok and good.notes["phi_weak_equivalence"] is True, "lemma passing instance")
    # failing instance: both sides fail
    Z2 = group_groupoid(cyclic_group(2))
    bad = lemma_weakequiv_check(GroupoidFunctor.identity(Z2),
                                GroupoidFunctor(Z2, identity_groupoid(["*"]), [0], [0, 0]))
    _need(f, bad.ok and bad.notes["phi_weak_equivalence"] is False, "lemma failing instance")
    return f


def plumbing():
    f: list = []
    for name, data in catalog.files().items():
        text = canonical_json(data)
        _need(f, loads(loads(text).dumps()).dumps() == text, f"round trip {name}")
    with tempfile.TemporaryDirectory() as d:
        d = Path(d)
        for name, data in catalog.files().items():
            write(data, d / name)
        write(document_of([("bad", s3_over_trivial())]), d / "bad.json")
        for argv, want in ((["validate", d / "catalog.json"], 0), (["validate", d / "bad.json"], 1),
                           (["functor", "--which", "xi", d / "trivial_gerbe.json"], 2)):
            out = io.StringIO()
            code = run([str(x) for x in argv], stdout=out)
            _need(f, code == want and json.loads(out.getvalue())["exit_code"] == want, f"exit {want}")
    return f


CRITERIA = [
    (1, "crossed-module suite", 1.0, crossed_modules),
    (2, "functor suite", 10.0, functors),
    (3, "nerve suite", 30.0, nerves),
    (4, "transformation suite", 60.0, transformations),
    (5, "Morita suite", 10.0, morita),
    (6, "plumbing", 10.0, plumbing),
]


@pytest.mark.parametrize("number,title,bound,body", CRITERIA, ids=[c[1].replace(" ", "_") for c in CRITERIA])
def test_acceptance(number, title, bound, body):
    criterion(number, title, bound, body)


if __name__ == "__main__":
    bad = 0
    for c in CRITERIA:
        try:
            criterion(*c)
        except AssertionError:
            bad += 1
    sys.exit(1 if bad else 0)
