"""2-group actions on groupoids, quotients, PB groupoids, partial quotients,
and groupoid actions with an anchor."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

from .algebra import FiniteGroup, GroupAction, check_action, subgroup
from .errors import NotFree, TableArity
from .groupoid import (FiniteGroupoid, GroupoidFunctor, check_functor, pair_groupoid,
                       quotient_groupoid)
from .report import ValidationReport, render
from .twogroup import TwoGroup, gauge_crossed_module, two_group_from_crossed_module

Label = Hashable


@dataclass
class TwoGroupAction:
    """H⋊G acting on the arrows and G on the objects of a groupoid."""

    tg: TwoGroup
    target: FiniteGroupoid
    act_arr: GroupAction
    act_obj: GroupAction
    name: str = ""

    def __post_init__(self):
        if self.act_arr.carrier != self.target.arrows or self.act_obj.carrier != self.target.objects:
            raise TableArity("action carriers must be the target's arrows and objects")
        if (self.act_arr.group.order != self.tg.arrows_group.order
                or self.act_obj.group.order != self.tg.base_group.order):
            raise TableArity("actions must be by H⋊G on arrows and by G on objects")

    def arr(self, u: int, phi: int) -> int:
        return self.act_arr.act[u][phi]

    def obj(self, g: int, p: int) -> int:
        return self.act_obj.act[g][p]


def check_two_group_action(a: TwoGroupAction) -> ValidationReport:
    """The action map is a functor from the product groupoid (H⋊G)×P^(1)."""
    rep = ValidationReport(f"2-group action {a.name}".strip())
    tg, P = a.tg, a.target
    rep.merge(check_action(a.act_arr), "act_arr.")
    rep.merge(check_action(a.act_obj), "act_obj.")
    U = tg.arrows_group
    for name in ("source", "target", "unit", "composition"):
        rep.check(name)
    for u in range(U.order):
        su, tu = tg.src(u), tg.tgt(u)
        row = a.act_arr.act[u]
        for phi in range(P.n_arrows):
            img = row[phi]
            if P.src[img] != a.act_obj.act[su][P.src[phi]]:
                rep.fail("source", (U.elements[u], P.arrows[phi]))
            if P.tgt[img] != a.act_obj.act[tu][P.tgt[phi]]:
                rep.fail("target", (U.elements[u], P.arrows[phi]))
    for g in range(tg.G.order):
        e = tg.unit_of(g)
        for p in range(P.n_objects):
            if a.act_arr.act[e][P.unit[p]] != P.unit[a.act_obj.act[g][p]]:
                rep.fail("unit", (tg.G.elements[g], P.objects[p]))
    upairs = list(tg.groupoid.composable_pairs())
    ppairs = list(P.composable_pairs())
    for u2, u1 in upairs:
        u21 = tg.groupoid.comp[(u2, u1)]
        r2, r1, r21 = a.act_arr.act[u2], a.act_arr.act[u1], a.act_arr.act[u21]
        for f2, f1 in ppairs:
            lhs = r21[P.comp[(f2, f1)]]
            rhs = P.comp.get((r2[f2], r1[f1]))
            if rhs is None or lhs != rhs:
                rep.fail("composition", (U.elements[u2], U.elements[u1], P.arrows[f2], P.arrows[f1]))
    return rep


@dataclass
class PBGroupoid:
    """A free 2-group action together with its quotient groupoid."""

    action: TwoGroupAction
    base: FiniteGroupoid
    proj: GroupoidFunctor
    object_surjection: dict | None = None
    meta: dict = field(default_factory=dict)

    @property
    def tg(self) -> TwoGroup:
        return self.action.tg

    @property
    def target(self) -> FiniteGroupoid:
        return self.action.target


def _require_free(act: GroupAction, what: str) -> None:
    w = act.fixed_point_witness()
    if w is not None:
        raise NotFree(f"{what} is not free: {render(w[0])} fixes {render(w[1])}", witness=w)


def quotient_pb(a: TwoGroupAction, object_surjection: Mapping | None = None) -> PBGroupoid:
    """Quotient by the full 2-group action; classes are represented by
    their lexicographically least label."""
    _require_free(a.act_arr, "arrow action")
    _require_free(a.act_obj, "object action")
    _, arr_cls = a.act_arr.orbit_partition()
    _, obj_cls = a.act_obj.orbit_partition()
    base, proj = quotient_groupoid(a.target, arr_cls, obj_cls, name=f"{a.target.name}/{a.tg.arrows_group.name}")
    return PBGroupoid(a, base, proj, dict(object_surjection) if object_surjection else None)


def check_pb_groupoid(pb: PBGroupoid) -> ValidationReport:
    rep = ValidationReport("PB groupoid")
    a, P, M, pr = pb.action, pb.target, pb.base, pb.proj
    rep.merge(check_two_group_action(a), "action.")
    rep.expect("arrow_action_free", a.act_arr.fixed_point_witness() is None, a.act_arr.fixed_point_witness())
    rep.expect("object_action_free", a.act_obj.fixed_point_witness() is None, a.act_obj.fixed_point_witness())
    rep.merge(check_functor(pr), "proj.")
    rep.expect("proj_surjective", pr.is_surjective())
    rep.check("invariance")
    for u in range(a.tg.arrows_group.order):
        for phi in range(P.n_arrows):
            if pr.arr_map[a.act_arr.act[u][phi]] != pr.arr_map[phi]:
                rep.fail("invariance", (a.tg.arrows_group.elements[u], P.arrows[phi]))
    for g in range(a.tg.G.order):
        for p in range(P.n_objects):
            if pr.obj_map[a.act_obj.act[g][p]] != pr.obj_map[p]:
                rep.fail("invariance", (a.tg.G.elements[g], P.objects[p]))
    # each fiber is a single orbit
    rep.check("orbit_bijection")
    _, arr_cls = a.act_arr.orbit_partition()
    fiber_orbits: dict = {}
    for phi in range(P.n_arrows):
        fiber_orbits.setdefault(pr.arr_map[phi], set()).add(arr_cls[phi])
    for gam, orbs in fiber_orbits.items():
        if len(orbs) != 1:
            rep.fail("orbit_bijection", (M.arrows[gam],))
    _, obj_cls = a.act_obj.orbit_partition()
    obj_orbits: dict = {}
    for p in range(P.n_objects):
        obj_orbits.setdefault(pr.obj_map[p], set()).add(obj_cls[p])
    for m, orbs in obj_orbits.items():
        if len(orbs) != 1:
            rep.fail("orbit_bijection", (M.objects[m],))
    rep.merge(check_fibration(pr), "")
    rep.check("orbit_count")
    U = a.tg.arrows_group.order
    if P.n_arrows != U * M.n_arrows:
        rep.fail("orbit_count", (P.n_arrows, U, M.n_arrows))
    return rep


def check_fibration(f: GroupoidFunctor) -> ValidationReport:
    """For every (γ, p) with f(p) = s(γ) some φ has f(φ) = γ and s(φ) = p."""
    rep = ValidationReport("fibration")
    rep.check("fibration")
    D, C = f.dom, f.cod
    lifts = set()
    for phi in range(D.n_arrows):
        lifts.add((f.arr_map[phi], D.src[phi]))
    for gam in range(C.n_arrows):
        for p in range(D.n_objects):
            if f.obj_map[p] == C.src[gam] and (gam, p) not in lifts:
                rep.fail("fibration", (C.arrows[gam], D.objects[p]))
    return rep


# -- partial quotient -----------------------------------------------------------

@dataclass
class PartialQuotient:
    """P^(1)/_G: the quotient by the identity-bisection subgroup {e}⋊G."""

    groupoid: FiniteGroupoid
    Q: GroupoidFunctor
    g_on_arrows: GroupAction
    g_on_objects: GroupAction
    full_action_free: bool
    source: TwoGroupAction


def identity_bisection(tg: TwoGroup) -> tuple[FiniteGroup, list[int]]:
    """The subgroup {(e_H, g)} of H⋊G, isomorphic to G."""
    members = [tg.unit_of(g) for g in range(tg.G.order)]
    sub, _ = subgroup(tg.arrows_group, members, f"e⋊{tg.G.name}")
    return sub, members


def partial_quotient(p: PBGroupoid | TwoGroupAction) -> PartialQuotient:
    """Only freeness of the G-restriction is required; whether the full
    H⋊G action is free is recorded in ``full_action_free``."""
    a = p.action if isinstance(p, PBGroupoid) else p
    tg = a.tg
    members = [tg.unit_of(g) for g in range(tg.G.order)]
    g_arr = GroupAction(tg.G, a.target.arrows, [a.act_arr.act[u] for u in members], "identity bisection")
    _require_free(g_arr, "identity-bisection action on arrows")
    _require_free(a.act_obj, "object action")
    _, arr_cls = g_arr.orbit_partition()
    _, obj_cls = a.act_obj.orbit_partition()
    q, Q = quotient_groupoid(a.target, arr_cls, obj_cls, name=f"{a.target.name}/_{tg.G.name}")
    full_free = a.act_arr.fixed_point_witness() is None
    return PartialQuotient(q, Q, g_arr, a.act_obj, full_free, a)


def check_partial_quotient(pq: PartialQuotient) -> ValidationReport:
    """Q is a principal G-map: free action, invariant, fibers are orbits."""
    rep = ValidationReport("partial quotient")
    rep.notes["full_action_free"] = pq.full_action_free
    rep.merge(check_functor(pq.Q), "Q.")
    rep.expect("free", pq.g_on_arrows.fixed_point_witness() is None, pq.g_on_arrows.fixed_point_witness())
    orbits, cls = pq.g_on_arrows.orbit_partition()
    rep.check("fibers_are_orbits")
    fibers: dict = {}
    for phi, c in enumerate(pq.Q.arr_map):
        fibers.setdefault(c, set()).add(cls[phi])
    for c, orbs in fibers.items():
        if len(orbs) != 1:
            rep.fail("fibers_are_orbits", (pq.groupoid.arrows[c],))
    rep.expect("surjective", pq.Q.is_surjective())
    rep.expect("count", pq.Q.dom.n_arrows == pq.g_on_arrows.group.order * pq.groupoid.n_arrows,
               (pq.Q.dom.n_arrows, pq.groupoid.n_arrows))
    return rep


def collapse_residual(pq: PartialQuotient, pb: PBGroupoid) -> GroupoidFunctor:
    """The functor P^(1)/_G → M^(1) induced by the projection."""
    q = pq.groupoid
    om = [None] * q.n_objects
    am = [None] * q.n_arrows
    for phi, c in enumerate(pq.Q.arr_map):
        am[c] = pb.proj.arr_map[phi]
    for o, c in enumerate(pq.Q.obj_map):
        om[c] = pb.proj.obj_map[o]
    return GroupoidFunctor(q, pb.base, om, am, "residual quotient")


# -- PB groupoids from principal bundles ------------------------------------------

def trivial_bundle(G: FiniteGroup, M: Sequence[Label]) -> GroupAction:
    """G acting on G×M by left translation on the first factor."""
    carrier = [(g, m) for m in M for g in G.elements]
    return GroupAction.from_function(G, carrier, lambda x, p: (G.elements[G.mul[G.idx(x)][G.idx(p[0])]], p[1]),
                                     "left translation")


def pb_groupoid_from_principal_bundle(action: GroupAction) -> PBGroupoid:
    """Pair groupoid of P with (h, g)·(p, q) = (hg·p, g·q) for the
    2-group G⋊G (d = id, C = conjugation)."""
    _require_free(action, "principal bundle action")
    G = action.group
    tg = two_group_from_crossed_module(gauge_crossed_module(G))
    P = pair_groupoid(list(action.carrier), name=f"pair({len(action.carrier)})")
    nG = G.order

    def arr_act(u: int, phi: int) -> int:
        h, g = divmod(u, nG)
        p, q = P.arrows[phi]
        hg = G.mul[h][g]
        return P.arr((action.carrier[action.act[hg][action.idx(p)]],
                      action.carrier[action.act[g][action.idx(q)]]))
    act_arr = GroupAction(tg.arrows_group, P.arrows,
                          [[arr_act(u, phi) for phi in range(P.n_arrows)] for u in range(tg.arrows_group.order)],
                          "gauge")
    act_obj = GroupAction(G, P.objects, [list(row) for row in action.act], "principal")
    ta = TwoGroupAction(tg, P, act_arr, act_obj, "gauge")
    orbits, which = action.orbit_partition()
    reps = [min((action.carrier[p] for p in orb), key=render) for orb in orbits]
    surj = {action.carrier[p]: reps[which[p]] for p in range(len(action.carrier))}
    pb = quotient_pb(ta)
    pb.meta["principal_bundle"] = action
    pb.meta["bundle_projection"] = surj
    return pb


# -- groupoid actions with anchor ----------------------------------------------------

@dataclass
class GroupoidActionData:
    """A left action of a groupoid on a set B along an anchor ρ: B → objects.

    ``star[(γ, b)]`` is defined when s(γ) = ρ(b).
    """

    acting: FiniteGroupoid
    carrier: tuple
    anchor: tuple
    star: dict

    def __post_init__(self):
        self.carrier = tuple(self.carrier)
        self.anchor = tuple(self.anchor)
        self._index = {b: i for i, b in enumerate(self.carrier)}

    def idx(self, label: Label) -> int:
        return self._index[label]

    def orbit_partition(self) -> list[int]:
        parent = list(range(len(self.carrier)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x
        for (_, b), c in self.star.items():
            rb, rc = find(b), find(c)
            if rb != rc:
                parent[max(rb, rc)] = min(rb, rc)
        roots: dict = {}
        return [roots.setdefault(find(b), len(roots)) for b in range(len(self.carrier))]


def check_groupoid_action(d: GroupoidActionData) -> ValidationReport:
    rep = ValidationReport("groupoid action")
    G, B = d.acting, d.carrier
    for name in ("star_total", "anchor", "composition", "unit"):
        rep.check(name)
    for b in range(len(B)):
        rb = d.anchor[b]
        for gam in G.out_of[rb]:
            r = d.star.get((gam, b))
            if r is None:
                rep.fail("star_total", (G.arrows[gam], B[b]))
                continue
            if d.anchor[r] != G.tgt[gam]:
                rep.fail("anchor", (G.arrows[gam], B[b]))
                continue
            for gam2 in G.out_of[G.tgt[gam]]:
                lhs = d.star.get((G.comp[(gam2, gam)], b))
                rhs = d.star.get((gam2, r))
                if lhs is None or lhs != rhs:
                    rep.fail("composition", (G.arrows[gam2], G.arrows[gam], B[b]))
        u = G.unit[rb]
        if d.star.get((u, b)) != b:
            rep.fail("unit", (B[b],))
    return rep


@dataclass
class PrincipalGroupoidBundle:
    data: GroupoidActionData
    Pi: tuple
    M: tuple


def check_principal_groupoid_bundle(b: PrincipalGroupoidBundle, require_free: bool = True) -> ValidationReport:
    """Action laws, Π invariant and surjective, B/G^(1) → M bijective,
    and (by default) freeness of the action."""
    d = b.data
    rep = ValidationReport("principal groupoid bundle")
    rep.merge(check_groupoid_action(d), "action.")
    rep.check("invariant")
    for (gam, x), y in d.star.items():
        if b.Pi[x] != b.Pi[y]:
            rep.fail("invariant", (d.acting.arrows[gam], d.carrier[x]))
    rep.expect("surjective", set(b.Pi) == set(range(len(b.M))))
    cls = d.orbit_partition()
    rep.check("orbit_bijection")
    fib: dict = {}
    for x, m in enumerate(b.Pi):
        fib.setdefault(m, set()).add(cls[x])
    for m, orbs in fib.items():
        if len(orbs) != 1:
            rep.fail("orbit_bijection", (b.M[m],))
    if require_free:
        rep.check("free")
        G = d.acting
        for (gam, x), y in d.star.items():
            if y == x and G.unit[G.src[gam]] != gam:
                rep.fail("free", (G.arrows[gam], d.carrier[x]))
    return rep


def groupoid_action_from_group_action(act: GroupAction, obj: Label = "*") -> GroupoidActionData:
    """A group action viewed as an action of a one-object groupoid."""
    from .groupoid import group_groupoid
    G = group_groupoid(act.group, obj)
    star = {(g, p): act.act[g][p] for g in range(act.group.order) for p in range(len(act.carrier))}
    return GroupoidActionData(G, act.carrier, [0] * len(act.carrier), star)
