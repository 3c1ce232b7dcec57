"""Built-in instances: small groups, crossed modules, the gauge PB family,
a trivial gerbe and a few surjections."""
from __future__ import annotations

from functools import lru_cache
from typing import Any

from .actions import PBGroupoid, pb_groupoid_from_principal_bundle, trivial_bundle
from .algebra import (FiniteGroup, GroupAction, GroupHom, alternating_subgroup, conjugation_action,
                      cyclic_group, symmetric_group, trivial_group)
from .documents import Surjection, document_of
from .gerbes import BundleGerbe, trivial_gerbe
from .groupoid import identity_groupoid
from .twogroup import CrossedModule, gauge_crossed_module, two_group_from_crossed_module

PB_FAMILY = [(2, 2), (2, 1), (3, 2), (3, 1)]
SURJECTIONS = {
    "surj_3to2": {"a": "x", "b": "x", "c": "y"},
    "surj_2to1": {"p": "m", "q": "m"},
    "surj_identity": {"u": "u", "v": "v"},
    "surj_5to3": {"a": "x", "b": "x", "c": "y", "d": "y", "e": "z"},
}


@lru_cache(maxsize=None)
def groups() -> dict[str, FiniteGroup]:
    return {"1": trivial_group("1"), "Z2": cyclic_group(2), "Z3": cyclic_group(3),
            "Z4": cyclic_group(4), "S3": symmetric_group(3)}


def a3_in_s3() -> CrossedModule:
    S3 = groups()["S3"]
    A3, inc = alternating_subgroup(S3, "A3")
    conj = conjugation_action(S3)
    table = [[A3.elements.index(S3.elements[conj.act[g][inc.map[h]]]) for h in range(A3.order)]
             for g in range(S3.order)]
    return CrossedModule(A3, S3, GroupAction(S3, A3.elements, table, "conjugation"), inc, "A3◁S3")


def abelian_trivial_d() -> CrossedModule:
    """Z2 acting on Z3 by inversion with d trivial."""
    Z2, Z3 = groups()["Z2"], groups()["Z3"]
    table = [[h for h in range(3)], [Z3.inv[h] for h in range(3)]]
    d = GroupHom(Z3, Z2, [Z2.unit] * 3, "trivial")
    return CrossedModule(Z3, Z2, GroupAction(Z2, Z3.elements, table, "inversion"), d, "Z3⋊Z2 (d=1)")


def identity_on(G: FiniteGroup) -> CrossedModule:
    E = groups()["1"]
    return CrossedModule(E, G, GroupAction(G, E.elements, [[0]] * G.order, "trivial"),
                         GroupHom(E, G, [G.unit], "unit"), f"id({G.name})")


@lru_cache(maxsize=None)
def crossed_modules() -> dict[str, CrossedModule]:
    g = groups()
    return {"A3<S3": a3_in_s3(), "Z3_Z2_trivial_d": abelian_trivial_d(),
            "gauge_Z2": gauge_crossed_module(g["Z2"]), "identity_S3": identity_on(g["S3"]),
            "gauge_S3": gauge_crossed_module(g["S3"])}


def pb_gauge(n: int, m: int) -> PBGroupoid:
    """The gauge PB groupoid of the trivial Z_n-bundle over m points."""
    G = groups()[f"Z{n}"]
    M = ["a", "b", "c", "d"][:m]
    return pb_groupoid_from_principal_bundle(trivial_bundle(G, M))


@lru_cache(maxsize=None)
def pb_family() -> dict[str, PBGroupoid]:
    return {f"pb_Z{n}_M{m}": pb_gauge(n, m) for n, m in PB_FAMILY}


@lru_cache(maxsize=None)
def trivial_gerbes() -> dict[str, BundleGerbe]:
    tg = two_group_from_crossed_module(crossed_modules()["gauge_Z2"])
    return {"trivial_gerbe": trivial_gerbe(tg, identity_groupoid(["a", "b"], "Id{a,b}"), "trivial gerbe")}


def surjections() -> dict[str, Surjection]:
    return {k: Surjection(k, dict(v)) for k, v in SURJECTIONS.items()}


def entries() -> list[tuple[str, Any]]:
    out: list[tuple[str, Any]] = list(groups().items())
    out += list(crossed_modules().items())
    out += list(pb_family().items())
    out += list(trivial_gerbes().items())
    out += list(surjections().items())
    return out


def document(names: list[str] | None = None) -> dict:
    chosen = [(n, o) for n, o in entries() if names is None or n in names]
    return document_of(chosen, catalog=True)


def files() -> dict[str, dict]:
    """One self-contained document per instance, plus the full catalog."""
    out = {f"{name}.json": document_of([(name, obj)], catalog=True) for name, obj in entries()}
    out["catalog.json"] = document()
    return out
