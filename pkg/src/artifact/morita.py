"""Weak equivalences, bitorsors, Morita equivalence via pullback groupoids
and the reading of a principal 2-bundle as a PB groupoid."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from .actions import (GroupoidActionData, PBGroupoid, TwoGroupAction, check_fibration,
                      check_groupoid_action, quotient_pb)
from .algebra import GroupAction, find_isomorphism
from .errors import (NotAFibration, PreconditionNotMet, QuotientIllDefined,
                     SearchExhausted)
from .groupoid import (MAX_SEARCH_ARROWS, FiniteGroupoid, GroupoidFunctor, check_functor,
                       fiber_product_groupoid, find_groupoid_isomorphism, identity_groupoid,
                       pullback_groupoid)
from .report import ValidationReport, render
from .twogroup import gauge_crossed_module, two_group_from_crossed_module

VIAS = ("weak", "pullback", "bitorsor")
MAX_COMPONENT_MATCHINGS = 5040


# -- weak equivalence -----------------------------------------------------------------------

@dataclass
class WeakEquivalenceWitness:
    """Certificates for full faithfulness (one bijection per object pair)
    and essential surjectivity (one arrow φ(p) → m per object m)."""

    functor: GroupoidFunctor
    hom_bijections: dict
    essential: dict
    report: ValidationReport

    @property
    def ok(self) -> bool:
        return self.report.ok


def check_weak_equivalence(f: GroupoidFunctor) -> WeakEquivalenceWitness:
    D, C = f.dom, f.cod
    rep = ValidationReport(f"weak equivalence {f.name}")
    rep.merge(check_functor(f), "functor.")
    for name in ("faithful", "full", "essentially_surjective"):
        rep.check(name)
    bij = {}
    for p in range(D.n_objects):
        for q in range(D.n_objects):
            src = D.hom(p, q)
            images = [f.arr_map[a] for a in src]
            if len(set(images)) != len(images):
                rep.fail("faithful", (D.objects[p], D.objects[q]))
            target = set(C.hom(f.obj_map[p], f.obj_map[q]))
            missing = target - set(images)
            if missing:
                rep.fail("full", (D.objects[p], D.objects[q], C.arrows[min(missing)]))
            bij[(p, q)] = list(zip(src, images))
    ess = {}
    image_objs = set(f.obj_map)
    pre = {}
    for p, x in enumerate(f.obj_map):
        pre.setdefault(x, p)
    for m in range(C.n_objects):
        found = None
        for a in C.into[m]:
            if C.src[a] in image_objs:
                found = (a, pre[C.src[a]])
                break
        if found is None:
            rep.fail("essentially_surjective", (C.objects[m],))
        else:
            ess[m] = found
    return WeakEquivalenceWitness(f, bij, ess, rep)


# -- bitorsors --------------------------------------------------------------------------

@dataclass
class Bitorsor:
    """X with a left action of ``left`` along rho and a right action of
    ``right`` along sigma.  ``left_star[(γ, x)]`` needs s(γ) = rho(x);
    ``right_star[(x, η)]`` needs sigma(x) = t(η)."""

    left: FiniteGroupoid
    right: FiniteGroupoid
    carrier: tuple
    rho: tuple
    sigma: tuple
    left_star: dict
    right_star: dict
    name: str = "bitorsor"

    def left_data(self) -> GroupoidActionData:
        return GroupoidActionData(self.left, self.carrier, self.rho, dict(self.left_star))

    def right_data(self) -> GroupoidActionData:
        # x⋆η read as the left action of η⁻¹
        R = self.right
        star = {(R.inv[eta], x): y for (x, eta), y in self.right_star.items()}
        return GroupoidActionData(R, self.carrier, self.sigma, star)


def _principal(rep: ValidationReport, side: str, data: GroupoidActionData, other_anchor: Sequence[int]) -> None:
    """Free, invariant for the other anchor, transitive on its fibers."""
    G = data.acting
    n = len(data.carrier)
    for name in ("free", "invariant", "transitive"):
        rep.check(f"{side}.{name}")
    for (gam, x), y in data.star.items():
        if other_anchor[y] != other_anchor[x]:
            rep.fail(f"{side}.invariant", (G.arrows[gam], data.carrier[x]))
        if y == x and gam != G.unit[data.anchor[x]]:
            rep.fail(f"{side}.free", (G.arrows[gam], data.carrier[x]))
    reach = [set() for _ in range(n)]
    for (gam, x), y in data.star.items():
        reach[x].add(y)
    for x in range(n):
        for y in range(n):
            if other_anchor[x] == other_anchor[y] and y not in reach[x]:
                rep.fail(f"{side}.transitive", (data.carrier[x], data.carrier[y]))


def check_bitorsor(b: Bitorsor) -> ValidationReport:
    rep = ValidationReport(b.name)
    L, R = b.left_data(), b.right_data()
    rep.merge(check_groupoid_action(L), "left.action.")
    rep.merge(check_groupoid_action(R), "right.action.")
    rep.expect("rho_surjective", set(b.rho) == set(range(b.left.n_objects)))
    rep.expect("sigma_surjective", set(b.sigma) == set(range(b.right.n_objects)))
    _principal(rep, "left", L, b.sigma)
    _principal(rep, "right", R, b.rho)
    rep.check("commute")
    for (gam, x), y in b.left_star.items():
        for eta in b.right.into[b.sigma[x]]:
            a1 = b.right_star.get((y, eta))
            xe = b.right_star.get((x, eta))
            a2 = b.left_star.get((gam, xe)) if xe is not None else None
            if a1 is None or a1 != a2:
                rep.fail("commute", (b.left.arrows[gam], b.carrier[x], b.right.arrows[eta]))
    return rep


def bitorsor_from_functor(f: GroupoidFunctor) -> Bitorsor:
    """X = {(γ, y) : s(γ) = f(y)} between cod (left) and dom (right)."""
    G, H = f.cod, f.dom
    carrier = [(g, y) for y in range(H.n_objects) for g in G.out_of[f.obj_map[y]]]
    idx = {x: i for i, x in enumerate(carrier)}
    rho = [G.tgt[g] for g, _ in carrier]
    sigma = [y for _, y in carrier]
    left, right = {}, {}
    for i, (g, y) in enumerate(carrier):
        for g2 in G.out_of[G.tgt[g]]:
            left[(g2, i)] = idx[(G.comp[(g2, g)], y)]
        for eta in H.into[y]:
            right[(i, eta)] = idx[(G.comp[(g, f.arr_map[eta])], H.src[eta])]
    labels = tuple((G.arrows[g], H.objects[y]) for g, y in carrier)
    return Bitorsor(G, H, labels, tuple(rho), tuple(sigma), left, right, f"bitorsor of {f.name}")


def group_self_bitorsor(g: FiniteGroupoid) -> Bitorsor:
    return bitorsor_from_functor(GroupoidFunctor.identity(g))


# -- pullback groupoids -------------------------------------------------------------------

@dataclass
class Verdict:
    equivalent: bool
    via: str
    report: ValidationReport
    witness: Any = None
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"equivalent": self.equivalent, "via": self.via, "report": self.report.to_dict()}
        if self.notes:
            out["notes"] = self.notes
        return out


def check_morita_pullback(G1: FiniteGroupoid, H1: FiniteGroupoid, P: Sequence, rho: Mapping,
                          sigma: Mapping, max_arrows: int = MAX_SEARCH_ARROWS) -> Verdict:
    """ρ^{-1}G1 ≅ σ^{-1}H1 over P, by exhaustive isomorphism search."""
    rep = ValidationReport("Morita via pullback")
    P = list(P)
    a = pullback_groupoid({p: rho[p] for p in P}, G1, name="rho^-1")
    b = pullback_groupoid({p: sigma[p] for p in P}, H1, name="sigma^-1")
    if a.n_arrows > max_arrows or b.n_arrows > max_arrows:
        raise SearchExhausted(f"pullback carriers exceed {max_arrows} arrows", witness=(a.n_arrows, b.n_arrows))
    iso = find_groupoid_isomorphism(a, b, obj_map={i: i for i in range(a.n_objects)}, max_arrows=max_arrows)
    rep.expect("isomorphic_over_P", iso is not None, (a.n_arrows, b.n_arrows))
    return Verdict(iso is not None, "pullback", rep, iso, {"pullback_arrows": [a.n_arrows, b.n_arrows]})


# -- equivalence search ----------------------------------------------------------------------

def _component_matchings(A: FiniteGroupoid, B: FiniteGroupoid):
    ca, cb = A.components(), B.components()
    if len(ca) != len(cb):
        return
    for n, perm in enumerate(itertools.permutations(range(len(cb)))):
        if n >= MAX_COMPONENT_MATCHINGS:
            raise SearchExhausted("too many component matchings")
        yield ca, cb, perm


def equivalence_functor(A: FiniteGroupoid, B: FiniteGroupoid) -> GroupoidFunctor | None:
    """Some functor A → B that collapses each component onto a root of
    its matched component, or None when no matching of components with
    isomorphic vertex groups exists."""
    for ca, cb, perm in _component_matchings(A, B):
        isos = []
        for i, comp in enumerate(ca):
            iso = find_isomorphism(A.vertex_group(comp[0])[0], B.vertex_group(cb[perm[i]][0])[0])
            if iso is None:
                break
            isos.append(iso)
        else:
            obj_map = [0] * A.n_objects
            arr_map = [0] * A.n_arrows
            for i, comp in enumerate(ca):
                r, r2 = comp[0], cb[perm[i]][0]
                _, loops_a = A.vertex_group(r)
                _, loops_b = B.vertex_group(r2)
                pos = {lp: k for k, lp in enumerate(loops_a)}
                tau = {x: A.hom(r, x)[0] for x in comp}
                for x in comp:
                    obj_map[x] = r2
                    for y in comp:
                        for al in A.hom(x, y):
                            loop = A.comp[(A.inv[tau[y]], A.comp[(al, tau[x])])]
                            arr_map[al] = loops_b[isos[i][pos[loop]]]
            return GroupoidFunctor(A, B, obj_map, arr_map, "collapse")
    return None


def morita_equivalent(A: FiniteGroupoid, B: FiniteGroupoid, via: str = "weak") -> Verdict:
    """Decide Morita equivalence by one of three independent routes.

    weak: construct a candidate functor and check it is a weak equivalence.
    bitorsor: check the bitorsor of that functor.
    pullback: for every matching of components, search an isomorphism of
    the pullbacks over P = pairs of objects in matched components.
    """
    if via not in VIAS:
        raise PreconditionNotMet(f"unknown route {via!r}; expected one of {', '.join(VIAS)}")
    if via == "pullback":
        last = None
        for ca, cb, perm in _component_matchings(A, B):
            P = [(A.objects[x], B.objects[y]) for i, comp in enumerate(ca) for x in comp for y in cb[perm[i]]]
            v = check_morita_pullback(A, B, P, {p: p[0] for p in P}, {p: p[1] for p in P})
            last = v
            if v.equivalent:
                v.notes["P"] = [render(p) for p in P]
                return v
        rep = last.report if last else ValidationReport("Morita via pullback")
        rep.expect("component_count", len(A.components()) == len(B.components()),
                   (len(A.components()), len(B.components())))
        rep.expect("some_matching_isomorphic", False)
        return Verdict(False, "pullback", rep)
    f = equivalence_functor(A, B)
    if f is None:
        rep = ValidationReport(f"Morita via {via}")
        rep.expect("candidate_exists", False, (len(A.components()), len(B.components())))
        return Verdict(False, via, rep)
    if via == "weak":
        w = check_weak_equivalence(f)
        return Verdict(w.ok, via, w.report, w)
    bt = bitorsor_from_functor(f)
    rep = check_bitorsor(bt)
    return Verdict(rep.ok, via, rep, bt, {"carrier_size": len(bt.carrier)})


def three_way(A: FiniteGroupoid, B: FiniteGroupoid) -> ValidationReport:
    rep = ValidationReport("Morita three-way agreement")
    verdicts = {via: morita_equivalent(A, B, via).equivalent for via in VIAS}
    rep.notes.update(verdicts)
    rep.expect("agree", len(set(verdicts.values())) == 1, verdicts)
    return rep


# -- Y^[2] against M ----------------------------------------------------------------------

def collapse_functor(pi: Mapping, M: Sequence | None = None) -> GroupoidFunctor:
    Y2 = fiber_product_groupoid(pi, M)
    Mg = identity_groupoid(Y2.meta["base"])
    return GroupoidFunctor.from_functions(Y2, Mg, lambda y: pi[y], lambda a: pi[a[0]], "collapse")


def fiber_product_bitorsor(pi: Mapping, M: Sequence | None = None) -> Bitorsor:
    """X = Y with Y^[2] acting on the left and M (trivially) on the right."""
    Y2 = fiber_product_groupoid(pi, M)
    Mg = identity_groupoid(Y2.meta["base"])
    Y = list(Y2.objects)
    left = {(a, Y2.src[a]): Y2.tgt[a] for a in range(Y2.n_arrows)}
    sigma = [Mg.obj(pi[y]) for y in Y]
    right = {(x, Mg.unit[sigma[x]]): x for x in range(len(Y))}
    return Bitorsor(Y2, Mg, tuple(Y), tuple(range(len(Y))), tuple(sigma), left, right, "Y as bitorsor")


def fiber_product_report(pi: Mapping, M: Sequence | None = None) -> ValidationReport:
    """Y^[2] ≃ M checked three ways with the explicit data ρ = id, σ = π,
    and once more through the generic search."""
    rep = ValidationReport("Y^[2] against M")
    f = collapse_functor(pi, M)
    Y2, Mg = f.dom, f.cod
    w = check_weak_equivalence(f)
    Y = list(Y2.objects)
    pb = check_morita_pullback(Y2, Mg, Y, {y: y for y in Y}, dict(pi))
    bt = check_bitorsor(fiber_product_bitorsor(pi, M))
    verdicts = {"weak": w.ok, "pullback": pb.equivalent, "bitorsor": bt.ok}
    rep.notes["explicit"] = verdicts
    rep.expect("explicit_all_true", all(verdicts.values()), verdicts)
    tw = three_way(Y2, Mg)
    rep.notes["search"] = dict(tw.notes)
    rep.expect("search.agree", tw.ok)
    rep.expect("search_true", all(tw.notes[v] for v in VIAS))
    return rep


# -- the weak-equivalence lemma ------------------------------------------------------------

def _fiber_square(P: FiniteGroupoid, obj_key: Sequence, arr_key: Sequence, name: str) -> FiniteGroupoid:
    objects = [(p, q) for p in range(P.n_objects) for q in range(P.n_objects) if obj_key[p] == obj_key[q]]
    arrows = [(a, b) for a in range(P.n_arrows) for b in range(P.n_arrows) if arr_key[a] == arr_key[b]]
    return FiniteGroupoid.build(
        objects, arrows, lambda ab: (P.src[ab[0]], P.src[ab[1]]), lambda ab: (P.tgt[ab[0]], P.tgt[ab[1]]),
        lambda y, x: (P.comp[(y[0], x[0])], P.comp[(y[1], x[1])]), name=name)


def lemma_weakequiv_check(pi1: GroupoidFunctor, phi: GroupoidFunctor) -> ValidationReport:
    """ι: P ×_Y P → P ×_M P is a weak equivalence iff φ is one."""
    for f, what in ((pi1, "π"), (phi, "φ")):
        if not check_functor(f).ok:
            raise PreconditionNotMet(f"{what} is not a functor")
    fib = check_fibration(pi1)
    if not fib.ok:
        raise NotAFibration("π is not a fibration", witness=fib.witnesses("fibration")[:1])
    if pi1.cod is not phi.dom and pi1.cod.arrows != phi.dom.arrows:
        raise PreconditionNotMet("φ must start where π ends")
    if not phi.is_surjective():
        raise PreconditionNotMet("φ must be surjective")
    P = pi1.dom
    obj_y = pi1.obj_map
    arr_y = pi1.arr_map
    obj_m = [phi.obj_map[y] for y in obj_y]
    arr_m = [phi.arr_map[y] for y in arr_y]
    A = _fiber_square(P, obj_y, arr_y, "P×_Y P")
    B = _fiber_square(P, obj_m, arr_m, "P×_M P")
    iota = GroupoidFunctor(A, B, [B.obj(o) for o in A.objects], [B.arr(a) for a in A.arrows], "inclusion")
    left = check_weak_equivalence(iota)
    right = check_weak_equivalence(phi)
    rep = ValidationReport("weak-equivalence lemma")
    rep.merge(left.report, "inclusion.")
    rep.merge(right.report, "phi.")
    rep.notes["inclusion_weak_equivalence"] = left.ok
    rep.notes["phi_weak_equivalence"] = right.ok
    rep.notes["sizes"] = {"P×_Y P": A.n_arrows, "P×_M P": B.n_arrows}
    out = ValidationReport("weak-equivalence lemma")
    out.notes.update(rep.notes)
    out.notes["details"] = rep.to_dict()["checks"]
    out.expect("biconditional", left.ok == right.ok, (left.ok, right.ok))
    return out


# -- principal 2-bundles ------------------------------------------------------------------

def principal_2bundle_from_principal_bundle(action: GroupAction) -> tuple[TwoGroupAction, dict]:
    """The gauge action (h, g)·(p, q) = (hg·p, g·q) on P ×_M P together
    with its invariant map to the orbit set M."""
    G = action.group
    orbits, which = action.orbit_partition()
    reps = [min((action.carrier[p] for p in orb), key=render) for orb in orbits]
    surj = {action.carrier[p]: reps[which[p]] for p in range(len(action.carrier))}
    tg = two_group_from_crossed_module(gauge_crossed_module(G))
    P1 = fiber_product_groupoid(surj, name="P×_M P")
    nG = G.order

    def arr_act(u: int, phi: int) -> int:
        h, g = divmod(u, nG)
        p, q = P1.arrows[phi]
        return P1.arr((action.carrier[action.act[G.mul[h][g]][action.idx(p)]],
                       action.carrier[action.act[g][action.idx(q)]]))
    act_arr = GroupAction(tg.arrows_group, P1.arrows,
                          [[arr_act(u, a) for a in range(P1.n_arrows)] for u in range(tg.arrows_group.order)],
                          "gauge")
    act_obj = GroupAction(G, P1.objects, [list(row) for row in action.act], "principal")
    return TwoGroupAction(tg, P1, act_arr, act_obj, "gauge on P×_M P"), surj


def interpret_principal_2bundle(a: TwoGroupAction, to_M: Mapping) -> ValidationReport:
    """Y = P^(1)/G^(1), the induced φ: Y → M, the lemma and Morita
    equivalence of Y with M (an identity groupoid)."""
    P = a.target
    for o in P.objects:
        if o not in to_M:
            raise PreconditionNotMet(f"object {render(o)} has no image in M")
    for i in range(P.n_arrows):
        if to_M[P.objects[P.src[i]]] != to_M[P.objects[P.tgt[i]]]:
            raise QuotientIllDefined("an arrow joins different points of M", witness=P.arrows[i])
    for g in range(a.tg.G.order):
        for x in range(P.n_objects):
            if to_M[P.objects[a.act_obj.act[g][x]]] != to_M[P.objects[x]]:
                raise QuotientIllDefined("map to M is not invariant", witness=(a.tg.G.elements[g], P.objects[x]))
    pb: PBGroupoid = quotient_pb(a)
    Y = pb.base
    M_labels = sorted(set(to_M[o] for o in P.objects), key=render)
    Mg = identity_groupoid(M_labels)
    obj_map = [None] * Y.n_objects
    for x in range(P.n_objects):
        m = Mg.obj(to_M[P.objects[x]])
        y = pb.proj.obj_map[x]
        if obj_map[y] not in (None, m):
            raise QuotientIllDefined("φ not well defined on Y", witness=Y.objects[y])
        obj_map[y] = m
    phi = GroupoidFunctor(Y, Mg, obj_map, [Mg.unit[obj_map[Y.src[i]]] for i in range(Y.n_arrows)], "phi")
    rep = ValidationReport("principal 2-bundle")
    rep.merge(check_functor(phi), "phi.")
    lem = lemma_weakequiv_check(pb.proj, phi)
    rep.expect("lemma.biconditional", lem.ok)
    rep.notes["lemma"] = {k: v for k, v in lem.notes.items() if k != "details"}
    tw = three_way(Y, Mg)
    rep.expect("morita.agree", tw.ok, dict(tw.notes))
    rep.notes["morita"] = dict(tw.notes)
    rep.expect("morita_equivalent", all(tw.notes[v] for v in VIAS))
    rep.notes["Y"] = {"objects": Y.n_objects, "arrows": Y.n_arrows}
    return rep
