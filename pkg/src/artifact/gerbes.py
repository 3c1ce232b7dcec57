"""Bundle gerbes over groupoids and the functors between them and PB groupoids.

Conventions: a gerbe B is a groupoid over the objects Y of its base Y^(1),
Pi is a functor over the identity of Y, rho is a table of G indices, and
``star[(u, b)]`` is defined exactly when s(u) = rho[b].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable

from .actions import (GroupoidActionData, PBGroupoid, PrincipalGroupoidBundle, TwoGroupAction,
                      check_pb_groupoid, check_principal_groupoid_bundle,
                      partial_quotient, quotient_pb)
from .algebra import GroupAction
from .errors import (BaseNotFiberProduct, InvalidGerbe, NotBaseTrivial, NotFree,
                     PreconditionNotMet, TableArity)
from .groupoid import (MAX_SEARCH_ARROWS, FiniteGroupoid, GroupoidFunctor, check_functor,
                       check_groupoid, check_isomorphism, equivalence_relation_surjection,
                       fiber_product_groupoid, find_groupoid_isomorphism, pullback_groupoid)
from .report import ValidationReport
from .twogroup import TwoGroup

Label = Hashable


@dataclass
class BundleGerbe:
    tg: TwoGroup
    B: FiniteGroupoid
    base: FiniteGroupoid
    Pi: GroupoidFunctor
    rho: tuple
    star: dict
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.rho = tuple(self.rho)
        if len(self.rho) != self.B.n_arrows:
            raise TableArity("rho needs one entry per gerbe arrow")
        if self.Pi.dom is not self.B or self.Pi.cod is not self.base:
            raise TableArity("Pi must be a functor from B to the base")

    def action_data(self) -> GroupoidActionData:
        return GroupoidActionData(self.tg.groupoid, self.B.arrows, self.rho, self.star)


@dataclass
class BaseTrivialPB:
    """A PB groupoid with objects identified with G×Y; ``triv`` sends an
    object index to a pair (g index, base object index)."""

    pb: PBGroupoid
    triv: tuple

    def __post_init__(self):
        self.triv = tuple(tuple(x) for x in self.triv)
        self._inv = {gy: p for p, gy in enumerate(self.triv)}

    def untriv(self, g: int, y: int) -> int:
        return self._inv[(g, y)]


# -- checks ---------------------------------------------------------------------------

def _is_fiber_product(base: FiniteGroupoid) -> bool:
    return equivalence_relation_surjection(base) is not None


def check_bundle_gerbe(b: BundleGerbe) -> ValidationReport:
    rep = ValidationReport(f"bundle gerbe {b.name}".strip())
    tg, B, Y1 = b.tg, b.B, b.base
    rep.merge(check_groupoid(B), "B.")
    rep.merge(check_functor(b.Pi), "Pi.")
    rep.check("Pi_over_identity")
    if B.objects != Y1.objects or any(b.Pi.obj_map[i] != i for i in range(B.n_objects)):
        rep.fail("Pi_over_identity", None)
    pgb = PrincipalGroupoidBundle(b.action_data(), b.Pi.arr_map, Y1.arrows)
    rep.merge(check_principal_groupoid_bundle(pgb, require_free=True), "principal.")
    rep.check("rho_multiplicative")
    G = tg.G
    for (y, x), z in B.comp.items():
        if b.rho[z] != G.mul[b.rho[y]][b.rho[x]]:
            rep.fail("rho_multiplicative", (B.arrows[y], B.arrows[x]))
    rep.merge(_equivariance_report(b), "")
    if _is_fiber_product(Y1):
        # image of t×s is all of Y×_M Y
        rep.check("orbit_condition")
        image = {(B.tgt[x], B.src[x]) for x in range(B.n_arrows)}
        for a in range(Y1.n_arrows):
            if (Y1.tgt[a], Y1.src[a]) not in image:
                rep.fail("orbit_condition", (Y1.arrows[a],))
    return rep


def _equivariance_report(b: BundleGerbe) -> ValidationReport:
    """(u2⋆b2)∘(u1⋆b1) = (u2·u1)⋆(b2∘b1) on all composable data."""
    rep = ValidationReport("equivariance")
    rep.check("equivariance")
    tg, B = b.tg, b.B
    nG = tg.G.order
    by_anchor: dict = {}
    for u in range(tg.arrows_group.order):
        by_anchor.setdefault(u % nG, []).append(u)
    U = tg.arrows_group
    for (y, x), z in B.comp.items():
        for u2 in by_anchor.get(b.rho[y], []):
            sy = b.star.get((u2, y))
            for u1 in by_anchor.get(b.rho[x], []):
                sx = b.star.get((u1, x))
                lhs = B.comp.get((sy, sx)) if sy is not None and sx is not None else None
                rhs = b.star.get((U.mul[u2][u1], z))
                if lhs is None or lhs != rhs:
                    rep.fail("equivariance", (U.elements[u2], U.elements[u1], B.arrows[y], B.arrows[x]))
    return rep


def check_gerbe_morphism(fB: GroupoidFunctor, fY: GroupoidFunctor, a: BundleGerbe, b: BundleGerbe,
                         iso: bool = False) -> ValidationReport:
    """fB equivariant and compatible with rho, fY∘Pi_a = Pi_b∘fB."""
    rep = ValidationReport("gerbe morphism")
    rep.merge((check_isomorphism if iso else check_functor)(fB), "fB.")
    rep.merge((check_isomorphism if iso else check_functor)(fY), "fY.")
    for name in ("Pi", "rho", "equivariant"):
        rep.check(name)
    for x in range(a.B.n_arrows):
        y = fB.arr_map[x]
        if fY.arr_map[a.Pi.arr_map[x]] != b.Pi.arr_map[y]:
            rep.fail("Pi", (a.B.arrows[x],))
        if a.rho[x] != b.rho[y]:
            rep.fail("rho", (a.B.arrows[x],))
    for (u, x), z in a.star.items():
        if b.star.get((u, fB.arr_map[x])) != fB.arr_map[z]:
            rep.fail("equivariant", (a.tg.arrows_group.elements[u], a.B.arrows[x]))
    return rep


# -- trivial gerbe --------------------------------------------------------------------

def trivial_gerbe(tg: TwoGroup, base: FiniteGroupoid, name: str = "") -> BundleGerbe:
    """Carrier H×Y^(1) with rho(h, γ) = d(h), (x, d(h))⋆(h, γ) = (xh, γ)
    and componentwise composition."""
    H, nG = tg.H, tg.G.order
    d = tg.cm.d.map
    nY = base.n_arrows
    arrows = [(H.elements[h], base.arrows[a]) for h in range(H.order) for a in range(nY)]
    src = [base.src[i % nY] for i in range(len(arrows))]
    tgt = [base.tgt[i % nY] for i in range(len(arrows))]
    comp = {}
    for (a2, a1), c in base.comp.items():
        for h2 in range(H.order):
            for h1 in range(H.order):
                comp[(h2 * nY + a2, h1 * nY + a1)] = H.mul[h2][h1] * nY + c
    B = FiniteGroupoid(base.objects, arrows, src, tgt, comp, name=name or "trivial gerbe")
    Pi = GroupoidFunctor(B, base, list(range(base.n_objects)), [i % nY for i in range(len(arrows))], "Pi")
    rho = [d[i // nY] for i in range(len(arrows))]
    star = {}
    for i in range(len(arrows)):
        h, a = divmod(i, nY)
        for x in range(H.order):
            star[(x * nG + rho[i], i)] = H.mul[x][h] * nY + a
    return BundleGerbe(tg, B, base, Pi, rho, star, name or "trivial gerbe")


# -- Φ ----------------------------------------------------------------------------------

def _object_surjection(pb: PBGroupoid) -> dict:
    """P → M, with M the orbit space of the fiber-product base."""
    surj = equivalence_relation_surjection(pb.base)
    if surj is None:
        raise BaseNotFiberProduct("base of the PB groupoid is not a fiber product groupoid")
    P = pb.target
    induced = {P.objects[p]: surj[pb.base.objects[pb.proj.obj_map[p]]] for p in range(P.n_objects)}
    if pb.object_surjection is None:
        return induced
    given = dict(pb.object_surjection)
    if set(given) != set(induced):
        raise BaseNotFiberProduct("object surjection must be defined on every object")
    # the given surjection must induce the same partition
    pairs = {}
    for p, m in given.items():
        if pairs.setdefault(m, induced[p]) != induced[p]:
            raise BaseNotFiberProduct("object surjection disagrees with the base components",
                                      witness=p)
    if len(set(pairs.values())) != len(pairs):
        raise BaseNotFiberProduct("object surjection merges distinct base components")
    return given


def functor_phi(pb: PBGroupoid) -> BundleGerbe:
    """G×P^(1) over P×_M P."""
    surj = _object_surjection(pb)
    tg, a, P = pb.tg, pb.action, pb.target
    G, H = tg.G, tg.H
    nG, nP = G.order, P.n_arrows
    base = fiber_product_groupoid(surj, name="P×_M P")
    arrows = [(G.elements[g], P.arrows[f]) for g in range(nG) for f in range(nP)]
    src = [P.src[i % nP] for i in range(len(arrows))]
    tgt = [a.act_obj.act[i // nP][P.tgt[i % nP]] for i in range(len(arrows))]
    comp = {}
    for i1 in range(len(arrows)):
        g1, f1 = divmod(i1, nP)
        shift = a.act_arr.act[tg.unit_of(G.inv[g1])]
        for g2 in range(nG):
            for f2 in P.out_of[tgt[i1]]:
                c = P.comp[(shift[f2], f1)]
                comp[(g2 * nP + f2, i1)] = G.mul[g2][g1] * nP + c
    B = FiniteGroupoid(P.objects, arrows, src, tgt, comp, name=f"Φ({P.name})")
    Pi = GroupoidFunctor(B, base, [base.obj(o) for o in P.objects],
                         [base.arr((P.objects[tgt[i]], P.objects[src[i]])) for i in range(len(arrows))], "Pi")
    rho = [i // nP for i in range(len(arrows))]
    star = {}
    for i in range(len(arrows)):
        g, f = divmod(i, nP)
        gi = G.inv[g]
        for h in range(H.order):
            u = h * nG + g
            k = tg.cm.act(gi, H.inv[h])
            star[(u, i)] = tg.tgt(u) * nP + a.act_arr.act[k * nG + G.unit][f]
    out = BundleGerbe(tg, B, base, Pi, rho, star, f"Φ({P.name})")
    out.meta["object_surjection"] = surj
    out.meta["source"] = pb
    return out


@dataclass
class PBMorphism:
    """Equivariant functor between PB groupoids over a base functor."""

    f: GroupoidFunctor
    f_base: GroupoidFunctor
    dom: PBGroupoid
    cod: PBGroupoid


def check_pb_morphism(m: PBMorphism) -> ValidationReport:
    rep = ValidationReport("PB groupoid morphism")
    rep.merge(check_functor(m.f), "f.")
    rep.merge(check_functor(m.f_base), "f_base.")
    a, b = m.dom.action, m.cod.action
    for name in ("equivariant", "covers_base"):
        rep.check(name)
    for u in range(a.tg.arrows_group.order):
        for x in range(m.f.dom.n_arrows):
            if m.f.arr_map[a.act_arr.act[u][x]] != b.act_arr.act[u][m.f.arr_map[x]]:
                rep.fail("equivariant", (a.tg.arrows_group.elements[u], m.f.dom.arrows[x]))
    for g in range(a.tg.G.order):
        for p in range(m.f.dom.n_objects):
            if m.f.obj_map[a.act_obj.act[g][p]] != b.act_obj.act[g][m.f.obj_map[p]]:
                rep.fail("equivariant", (a.tg.G.elements[g], m.f.dom.objects[p]))
    for x in range(m.f.dom.n_arrows):
        if m.cod.proj.arr_map[m.f.arr_map[x]] != m.f_base.arr_map[m.dom.proj.arr_map[x]]:
            rep.fail("covers_base", (m.f.dom.arrows[x],))
    return rep


def phi_morphism(m: PBMorphism, a: BundleGerbe, b: BundleGerbe) -> tuple[GroupoidFunctor, GroupoidFunctor]:
    """Id_G × f between Φ(dom) and Φ(cod), and f×f on the bases."""
    P, Q = m.f.dom, m.f.cod
    nP, nQ = P.n_arrows, Q.n_arrows
    fB = GroupoidFunctor(a.B, b.B, list(m.f.obj_map),
                         [(i // nP) * nQ + m.f.arr_map[i % nP] for i in range(a.B.n_arrows)], "Id×f")
    fY = GroupoidFunctor(a.base, b.base, list(m.f.obj_map),
                         [b.base.arr((Q.objects[m.f.obj_map[P.obj(p2)]], Q.objects[m.f.obj_map[P.obj(p1)]]))
                          for p2, p1 in a.base.arrows], "f×f")
    return fB, fY


# -- Ψ ----------------------------------------------------------------------------------

def _psi_structure(b: BundleGerbe, naive: bool):
    tg, B = b.tg, b.B
    G = tg.G
    nG, nB, nY = G.order, B.n_arrows, B.n_objects
    objects = [(G.elements[k], B.objects[y]) for k in range(nG) for y in range(nY)]
    arrows = [(G.elements[k], B.arrows[x]) for k in range(nG) for x in range(nB)]

    def tgt_g(k: int, x: int) -> int:
        r = b.rho[x]
        return G.mul[k][r] if naive else G.mul[k][G.inv[r]]
    src = [(i // nB) * nY + B.src[i % nB] for i in range(len(arrows))]
    tgt = [tgt_g(i // nB, i % nB) * nY + B.tgt[i % nB] for i in range(len(arrows))]
    by_src: dict = {}
    for i, s in enumerate(src):
        by_src.setdefault(s, []).append(i)
    comp = {}
    for i1 in range(len(arrows)):
        k1, x1 = divmod(i1, nB)
        for i2 in by_src.get(tgt[i1], []):
            x2 = i2 % nB
            c = B.comp.get((x2, x1))
            if c is not None:
                comp[(i2, i1)] = k1 * nB + c
    return objects, arrows, src, tgt, comp


def _psi_action(b: BundleGerbe, arrows, objects):
    tg, B = b.tg, b.B
    G, H = tg.G, tg.H
    nG, nB, nY = G.order, B.n_arrows, B.n_objects
    rows = []
    for u in range(tg.arrows_group.order):
        h, g = divmod(u, nG)
        row = []
        for i in range(len(arrows)):
            k, x = divmod(i, nB)
            r = b.rho[x]
            c = G.prod(r, G.inv[k], G.inv[g])
            v = tg.cm.act(c, H.inv[h]) * nG + r
            row.append(G.mul[g][k] * nB + b.star[(v, x)])
        rows.append(row)
    act_arr = GroupAction(tg.arrows_group, arrows, rows, "Ψ action")
    act_obj = GroupAction(G, objects, [[G.mul[g][i // nY] * nY + i % nY for i in range(len(objects))]
                                       for g in range(nG)], "left translation")
    return act_arr, act_obj


def functor_psi(b: BundleGerbe) -> BaseTrivialPB:
    """G×B over G×Y with target (k·rho(b)^-1, t(b)); the base is b's base."""
    rep = check_bundle_gerbe(b)
    if not rep.ok:
        raise InvalidGerbe("input is not a bundle gerbe: " + ", ".join(rep.failed()), witness=rep.to_dict())
    tg, B = b.tg, b.B
    nB, nY = B.n_arrows, B.n_objects
    objects, arrows, src, tgt, comp = _psi_structure(b, naive=False)
    P = FiniteGroupoid(objects, arrows, src, tgt, comp, name=f"Ψ({b.name})")
    act_arr, act_obj = _psi_action(b, P.arrows, P.objects)
    ta = TwoGroupAction(tg, P, act_arr, act_obj, "Ψ")
    proj = GroupoidFunctor(P, b.base, [i % nY for i in range(len(objects))],
                           [b.Pi.arr_map[i % nB] for i in range(len(arrows))], "proj")
    pb = PBGroupoid(ta, b.base, proj)
    pb.meta["source"] = b
    return BaseTrivialPB(pb, [divmod(i, nY) for i in range(len(objects))])


def psi_formula_report(b: BundleGerbe, naive: bool = True) -> ValidationReport:
    """Check the Ψ formulas with the target taken as k·rho(b) (naive)
    or k·rho(b)^-1; reports groupoid, unit, inverse and action failures."""
    rep = ValidationReport("Ψ formulas" + (" (naive target)" if naive else ""))
    tg, B = b.tg, b.B
    G = tg.G
    nB, nY = B.n_arrows, B.n_objects
    objects, arrows, src, tgt, comp = _psi_structure(b, naive)
    rep.check("composition_endpoints")
    rep.check("unit_formula")
    rep.check("inverse_formula")
    for (i2, i1), c in comp.items():
        if src[c] != src[i1] or tgt[c] != tgt[i2]:
            rep.fail("composition_endpoints", (arrows[i2], arrows[i1]))
    for i in range(len(arrows)):
        k, x = divmod(i, nB)
        left = (tgt[i] // nY) * nB + B.unit[B.tgt[x]]
        right = k * nB + B.unit[B.src[x]]
        if comp.get((left, i)) != i or comp.get((i, right)) != i:
            rep.fail("unit_formula", (arrows[i],))
        # inverse (k·rho(b)^-1, i_B(b))
        j = G.mul[k][G.inv[b.rho[x]]] * nB + B.inv[x]
        if comp.get((j, i)) != k * nB + B.unit[B.src[x]]:
            rep.fail("inverse_formula", (arrows[i],))
    try:
        P = FiniteGroupoid(objects, arrows, src, tgt, comp, name="Ψ formulas")
    except Exception as exc:  # noqa: BLE001  malformed tables are the finding
        rep.fail("composition_endpoints", str(exc))
        return rep
    rep.merge(check_groupoid(P), "groupoid.")
    act_arr, act_obj = _psi_action(b, P.arrows, P.objects)
    from .actions import check_two_group_action
    rep.merge(check_two_group_action(TwoGroupAction(tg, P, act_arr, act_obj)), "action.")
    return rep


def induced_base_map(pb: PBGroupoid) -> GroupoidFunctor:
    """quotient_pb(action).base → pb.base induced by pb.proj."""
    q = quotient_pb(pb.action)
    om = [None] * q.base.n_objects
    am = [None] * q.base.n_arrows
    for p, c in enumerate(q.proj.obj_map):
        om[c] = pb.proj.obj_map[p]
    for x, c in enumerate(q.proj.arr_map):
        am[c] = pb.proj.arr_map[x]
    return GroupoidFunctor(q.base, pb.base, om, am, "induced")


def check_base_trivial_pb(bt: BaseTrivialPB) -> ValidationReport:
    rep = ValidationReport("base-trivial PB groupoid")
    pb = bt.pb
    rep.merge(check_pb_groupoid(pb), "")
    G = pb.tg.G
    nY = pb.base.n_objects
    rep.expect("triv_bijective", sorted(bt.triv) == [(g, y) for g in range(G.order) for y in range(nY)])
    rep.check("triv_intertwines")
    for p, (g, y) in enumerate(bt.triv):
        if pb.proj.obj_map[p] != y:
            rep.fail("triv_intertwines", (pb.target.objects[p],))
        for k in range(G.order):
            if bt.triv[pb.action.act_obj.act[k][p]] != (G.mul[k][g], y):
                rep.fail("triv_intertwines", (G.elements[k], pb.target.objects[p]))
    try:
        rep.merge(check_isomorphism(induced_base_map(pb)), "quotient_base.")
    except NotFree as exc:
        rep.fail("quotient_base.free", exc.witness)
    return rep


# -- Ξ ----------------------------------------------------------------------------------

def base_trivial_from_pb(pb: PBGroupoid) -> BaseTrivialPB:
    """Every free G-set is trivial: p = g·r ↦ (g, proj(r)) for orbit
    representatives r."""
    act = pb.action.act_obj
    w = act.fixed_point_witness()
    if w is not None:
        raise NotBaseTrivial("object action is not free", witness=w)
    orbits, _ = act.orbit_partition()
    triv = [None] * len(act.carrier)
    seen = set()
    for orb in orbits:
        r = orb[0]
        y = pb.proj.obj_map[r]
        if y in seen:
            raise NotBaseTrivial("two object orbits over the same base object",
                                 witness=pb.base.objects[y])
        seen.add(y)
        for g in range(act.group.order):
            triv[act.act[g][r]] = (g, y)
    if len(seen) != pb.base.n_objects:
        raise NotBaseTrivial("object orbits do not cover the base")
    return BaseTrivialPB(pb, triv)


def _validate_triv(bt: BaseTrivialPB) -> None:
    pb = bt.pb
    G = pb.tg.G
    nY = pb.base.n_objects
    if sorted(bt.triv) != [(g, y) for g in range(G.order) for y in range(nY)]:
        raise NotBaseTrivial("trivialization is not a bijection onto G×Y")
    for p, (g, y) in enumerate(bt.triv):
        for k in range(G.order):
            if bt.triv[pb.action.act_obj.act[k][p]] != (G.mul[k][g], y):
                raise NotBaseTrivial("trivialization does not intertwine the G-action",
                                     witness=(G.elements[k], pb.target.objects[p]))


def functor_xi(bt: BaseTrivialPB) -> BundleGerbe:
    """The arrows whose source lies in the slice {e}×Y."""
    _validate_triv(bt)
    pb = bt.pb
    tg, P, a = pb.tg, pb.target, pb.action
    G, H = tg.G, tg.H
    nG, eG = G.order, G.unit
    members = [x for x in range(P.n_arrows) if bt.triv[P.src[x]][0] == eG]
    pos = {x: i for i, x in enumerate(members)}
    Y = pb.base
    src = [bt.triv[P.src[x]][1] for x in members]
    tgt = [bt.triv[P.tgt[x]][1] for x in members]
    rho = [G.inv[bt.triv[P.tgt[x]][0]] for x in members]
    comp = {}
    by_src: dict = {}
    for i, s in enumerate(src):
        by_src.setdefault(s, []).append(i)
    for i1, x1 in enumerate(members):
        shift = a.act_arr.act[tg.unit_of(G.inv[rho[i1]])]
        for i2 in by_src.get(tgt[i1], []):
            c = P.comp[(shift[members[i2]], x1)]
            comp[(i2, i1)] = pos[c]
    B = FiniteGroupoid(Y.objects, [P.arrows[x] for x in members], src, tgt, comp, name=f"Ξ({P.name})")
    Pi = GroupoidFunctor(B, Y, list(range(Y.n_objects)), [pb.proj.arr_map[x] for x in members], "Pi")
    star = {}
    for i, x in enumerate(members):
        r = rho[i]
        for h in range(H.order):
            k = tg.cm.act(G.inv[r], H.inv[h])
            star[(h * nG + r, i)] = pos[a.act_arr.act[k * nG + eG][x]]
    out = BundleGerbe(tg, B, Y, Pi, rho, star, f"Ξ({P.name})")
    out.meta["source"] = bt
    out.meta["members"] = members
    return out


def check_splitting(bt: BaseTrivialPB, xi: BundleGerbe) -> ValidationReport:
    """ξ ↦ (s_G(ξ), s_G(ξ)^-1·ξ) is a bijection P^(1) → G×B."""
    rep = ValidationReport("splitting")
    pb = bt.pb
    tg, P = pb.tg, pb.target
    G = tg.G
    pos = {x: i for i, x in enumerate(xi.meta["members"])}
    image = set()
    rep.check("lands_in_B")
    for x in range(P.n_arrows):
        g = bt.triv[P.src[x]][0]
        y = pb.action.act_arr.act[tg.unit_of(G.inv[g])][x]
        if y not in pos:
            rep.fail("lands_in_B", (P.arrows[x],))
            continue
        image.add((g, pos[y]))
    rep.expect("bijective", len(image) == P.n_arrows == G.order * xi.B.n_arrows,
               (len(image), P.n_arrows, xi.B.n_arrows))
    return rep


# -- round trips ----------------------------------------------------------------------

def psi_xi_iso(bt: BaseTrivialPB) -> tuple[BaseTrivialPB, GroupoidFunctor]:
    """Ψ(Ξ(p)) → p: (k, b) ↦ (e, k)·b."""
    xi = functor_xi(bt)
    back = functor_psi(xi)
    pb = bt.pb
    tg, P = pb.tg, pb.target
    members = xi.meta["members"]
    nB, nY = xi.B.n_arrows, xi.B.n_objects
    om = [bt.untriv(i // nY, i % nY) for i in range(back.pb.target.n_objects)]
    am = [pb.action.act_arr.act[tg.unit_of(i // nB)][members[i % nB]] for i in range(back.pb.target.n_arrows)]
    return back, GroupoidFunctor(back.pb.target, P, om, am, "Ψ∘Ξ → id")


def check_pb_isomorphism(f: GroupoidFunctor, a: PBGroupoid, b: PBGroupoid) -> ValidationReport:
    """Groupoid isomorphism intertwining both actions and the projections."""
    rep = ValidationReport("PB groupoid isomorphism")
    rep.merge(check_isomorphism(f), "")
    for name in ("equivariant", "over_base"):
        rep.check(name)
    U = a.tg.arrows_group
    for u in range(U.order):
        ra, rb = a.action.act_arr.act[u], b.action.act_arr.act[u]
        for x in range(f.dom.n_arrows):
            if f.arr_map[ra[x]] != rb[f.arr_map[x]]:
                rep.fail("equivariant", (U.elements[u], f.dom.arrows[x]))
    for g in range(a.tg.G.order):
        for p in range(f.dom.n_objects):
            if f.obj_map[a.action.act_obj.act[g][p]] != b.action.act_obj.act[g][f.obj_map[p]]:
                rep.fail("equivariant", (a.tg.G.elements[g], f.dom.objects[p]))
    for x in range(f.dom.n_arrows):
        if a.base.arrows[a.proj.arr_map[x]] != b.base.arrows[b.proj.arr_map[f.arr_map[x]]]:
            rep.fail("over_base", (f.dom.arrows[x],))
    return rep


def xi_psi_iso(b: BundleGerbe) -> tuple[BundleGerbe, GroupoidFunctor]:
    """Ξ(Ψ(B)) → B: (e, b) ↦ b."""
    bt = functor_psi(b)
    xi = functor_xi(bt)
    nB = b.B.n_arrows
    members = xi.meta["members"]
    am = []
    for x in members:
        k, y = divmod(x, nB)
        am.append(y)
    return xi, GroupoidFunctor(xi.B, b.B, list(range(b.B.n_objects)), am, "Ξ∘Ψ → id")


def check_gerbe_isomorphism(f: GroupoidFunctor, a: BundleGerbe, b: BundleGerbe) -> ValidationReport:
    """Over the identity of the common base."""
    if a.base.arrows != b.base.arrows:
        raise PreconditionNotMet("gerbes must share a base")
    idY = GroupoidFunctor(a.base, b.base, list(range(a.base.n_objects)), list(range(a.base.n_arrows)))
    return check_gerbe_morphism(f, idY, a, b, iso=True)


# -- comparison with the partial quotient -------------------------------------------------

def verify_bg_pq(pb: PBGroupoid, item: int | None = None, search: bool = True) -> ValidationReport:
    """Item 1: Φ(p) ≅ P ×_Q (P^(1)/_G) ×_Q P via (g, γ) ↦ (g·t(γ), [γ], s(γ)).
    Item 2: Ξ(p) ≅ P^(1)/_G via b ↦ [b]."""
    rep = ValidationReport("gerbe vs partial quotient")
    pq = partial_quotient(pb)
    P = pb.target
    q = pq.groupoid
    items = [item] if item else [1, 2]
    if 1 in items:
        if not _is_fiber_product(pb.base):
            if item == 1:
                raise PreconditionNotMet("item 1 requires a fiber-product base")
            rep.notes["item1"] = "skipped: base is not a fiber product"
        else:
            gerbe = functor_phi(pb)
            Qmap = {P.objects[p]: q.objects[pq.Q.obj_map[p]] for p in range(P.n_objects)}
            pull = pullback_groupoid(Qmap, q, name="P×_Q P^(1)/_G×_Q P")
            nP = P.n_arrows
            am = []
            for i in range(gerbe.B.n_arrows):
                f = i % nP
                am.append(pull.arr((P.objects[gerbe.B.tgt[i]], q.arrows[pq.Q.arr_map[f]], P.objects[P.src[f]])))
            fn = GroupoidFunctor(gerbe.B, pull, list(range(P.n_objects)), am, "(g,γ) ↦ (g·tγ,[γ],sγ)")
            rep.merge(check_isomorphism(fn), "item1.")
            rep.notes["item1_arrows"] = gerbe.B.n_arrows
    if 2 in items:
        bt = base_trivial_from_pb(pb)
        xi = functor_xi(bt)
        members = xi.meta["members"]
        om = [pq.Q.obj_map[bt.untriv(pb.tg.G.unit, y)] for y in range(xi.B.n_objects)]
        fn = GroupoidFunctor(xi.B, q, om, [pq.Q.arr_map[x] for x in members], "b ↦ [b]")
        rep.merge(check_isomorphism(fn), "item2.")
        rep.notes["item2_arrows"] = xi.B.n_arrows
        if search and xi.B.n_arrows <= MAX_SEARCH_ARROWS:
            rep.expect("item2.search", find_groupoid_isomorphism(xi.B, q) is not None)
    return rep


def gerbe_summary(b: BundleGerbe) -> dict:
    return {"name": b.name, "arrows": b.B.n_arrows, "objects": b.B.n_objects,
            "base_arrows": b.base.n_arrows, "two_group": b.tg.cm.name,
            "fiber_product_base": _is_fiber_product(b.base)}


def star_label_table(b: BundleGerbe) -> dict:
    U = b.tg.arrows_group
    return {(U.elements[u], b.B.arrows[x]): b.B.arrows[y] for (u, x), y in b.star.items()}


