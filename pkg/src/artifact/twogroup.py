"""Crossed modules and strict 2-groups.

The canonical 2-group of a crossed module (H, G, C, d) lives on pairs
(h, g) with index h*|G| + g; s(h, g) = g and t(h, g) = d(h)·g.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .algebra import (FiniteGroup, GroupAction, GroupHom, check_action, check_group,
                      check_hom, conjugation_action, direct_product, iter_isomorphisms,
                      semidirect_product, subgroup)
from .errors import InvalidCrossedModule, NotBijective, StructureMapNotHom, TableArity
from .groupoid import FiniteGroupoid, GroupoidFunctor, check_functor, check_groupoid
from .report import ValidationReport


class CrossedModule:
    def __init__(self, H: FiniteGroup, G: FiniteGroup, C: GroupAction, d: GroupHom, name: str = ""):
        if C.group.order != G.order or len(C.carrier) != H.order:
            raise TableArity("C must be an action of G on the elements of H")
        if d.dom.order != H.order or d.cod.order != G.order:
            raise TableArity("d must be a map H → G")
        self.H, self.G, self.C, self.d = H, G, C, d
        self.name = name

    def act(self, g: int, h: int) -> int:
        return self.C.act[g][h]

    def __repr__(self) -> str:
        return f"CrossedModule({self.name or '?'}: {self.H.name} → {self.G.name})"


def check_crossed_module(cm: CrossedModule) -> ValidationReport:
    """Both crossed-module axioms plus well-formedness of C and d."""
    rep = ValidationReport(f"crossed module {cm.name}".strip())
    H, G, d = cm.H, cm.G, cm.d.map
    rep.merge(check_action(cm.C), "C.")
    rep.merge(check_hom(cm.d), "d.")
    rep.check("C_by_automorphisms")
    for g in range(G.order):
        f = GroupHom(H, H, cm.C.act[g])
        if not f.is_bijective() or not check_hom(f).ok:
            rep.fail("C_by_automorphisms", (G.elements[g],))
    rep.check("equivariance")
    for g in range(G.order):
        for h in range(H.order):
            if d[cm.act(g, h)] != G.conj(g, d[h]):
                rep.fail("equivariance", (G.elements[g], H.elements[h]))
    rep.check("peiffer")
    for h in range(H.order):
        for h2 in range(H.order):
            if cm.act(d[h], h2) != H.conj(h, h2):
                rep.fail("peiffer", (H.elements[h], H.elements[h2]))
    return rep


@dataclass
class TwoGroup:
    """Canonical 2-group H⋊G ⇉ G of a crossed module."""

    cm: CrossedModule
    arrows_group: FiniteGroup
    base_group: FiniteGroup
    groupoid: FiniteGroupoid
    s: GroupHom
    t: GroupHom
    e: GroupHom

    @property
    def H(self) -> FiniteGroup:
        return self.cm.H

    @property
    def G(self) -> FiniteGroup:
        return self.cm.G

    def pair(self, h: int, g: int) -> int:
        return h * self.G.order + g

    def split(self, u: int) -> tuple[int, int]:
        return divmod(u, self.G.order)

    def src(self, u: int) -> int:
        return u % self.G.order

    def tgt(self, u: int) -> int:
        h, g = divmod(u, self.G.order)
        return self.G.mul[self.cm.d.map[h]][g]

    def mul(self, u: int, v: int) -> int:
        return self.arrows_group.mul[u][v]

    def inv(self, u: int) -> int:
        return self.arrows_group.inv[u]

    def compose(self, u2: int, u1: int) -> int:
        return self.groupoid.compose(u2, u1)

    def unit_of(self, g: int) -> int:
        return self.pair(self.H.unit, g)

    def __repr__(self) -> str:
        return f"TwoGroup({self.cm.name or '?'}, arrows={self.arrows_group.order})"


def two_group_from_crossed_module(cm: CrossedModule) -> TwoGroup:
    rep = check_crossed_module(cm)
    if not rep.ok:
        raise InvalidCrossedModule("crossed module axioms fail: " + ", ".join(rep.failed()),
                                   witness=rep.to_dict())
    H, G, d = cm.H, cm.G, cm.d.map
    nG = G.order
    HG = semidirect_product(H, G, cm.C, f"{H.name}⋊{G.name}")
    src = [u % nG for u in range(HG.order)]
    tgt = [G.mul[d[u // nG]][u % nG] for u in range(HG.order)]
    comp = {}
    for u1 in range(HG.order):
        h1, g1 = divmod(u1, nG)
        mid = tgt[u1]
        for h2 in range(H.order):
            comp[(h2 * nG + mid, u1)] = H.mul[h2][h1] * nG + g1
    groupoid = FiniteGroupoid(G.elements, HG.elements, src, tgt, comp, name=f"{HG.name}⇉{G.name}")
    s = GroupHom(HG, G, src, "s")
    t = GroupHom(HG, G, tgt, "t")
    e = GroupHom(G, HG, [H.unit * nG + g for g in range(nG)], "e")
    return TwoGroup(cm, HG, G, groupoid, s, t, e)


@dataclass
class RawTwoGroup:
    """A groupoid in groups given by its own tables.

    The groupoid's objects are the base-group elements and its arrows the
    arrow-group elements, in the same order.
    """

    arrows_group: FiniteGroup
    base_group: FiniteGroup
    groupoid: FiniteGroupoid
    name: str = ""

    def __post_init__(self):
        if (self.groupoid.objects != self.base_group.elements
                or self.groupoid.arrows != self.arrows_group.elements):
            raise TableArity("groupoid carriers must match the group element orders")

    @property
    def s(self) -> GroupHom:
        return GroupHom(self.arrows_group, self.base_group, self.groupoid.src, "s")

    @property
    def t(self) -> GroupHom:
        return GroupHom(self.arrows_group, self.base_group, self.groupoid.tgt, "t")

    @property
    def e(self) -> GroupHom:
        return GroupHom(self.base_group, self.arrows_group, self.groupoid.unit, "e")


def raw_from_two_group(tg: TwoGroup) -> RawTwoGroup:
    return RawTwoGroup(tg.arrows_group, tg.base_group, tg.groupoid, tg.cm.name)


def _interchange(G1: FiniteGroup, g: FiniteGroupoid, rep: ValidationReport) -> None:
    rep.check("interchange")
    pairs = list(g.composable_pairs())
    for a, b in pairs:
        ab = g.comp[(a, b)]
        for c, d in pairs:
            lhs = G1.mul[ab][g.comp[(c, d)]]
            rhs = g.comp.get((G1.mul[a][c], G1.mul[b][d]))
            if rhs is None or lhs != rhs:
                rep.fail("interchange", (G1.elements[a], G1.elements[b], G1.elements[c], G1.elements[d]))


def check_two_group(tg: TwoGroup | RawTwoGroup) -> ValidationReport:
    """Groupoid axioms, all structure maps homomorphisms, interchange law."""
    rep = ValidationReport("2-group")
    G1, G0, g = tg.arrows_group, tg.base_group, tg.groupoid
    rep.merge(check_group(G1), "arrows_group.")
    rep.merge(check_group(G0), "base_group.")
    rep.merge(check_groupoid(g), "groupoid.")
    if not rep.ok:
        return rep
    rep.merge(check_hom(GroupHom(G1, G0, g.src)), "s.")
    rep.merge(check_hom(GroupHom(G1, G0, g.tgt)), "t.")
    rep.merge(check_hom(GroupHom(G0, G1, g.unit)), "e.")
    rep.merge(check_hom(GroupHom(G1, G1, g.inv)), "inverse.")
    _interchange(G1, g, rep)
    if isinstance(tg, TwoGroup):
        rep.check("t_formula")
        d = tg.cm.d.map
        for u in range(G1.order):
            h, x = tg.split(u)
            if g.tgt[u] != G0.mul[d[h]][x]:
                rep.fail("t_formula", (G1.elements[u],))
    return rep


def crossed_module_from_two_group(raw: RawTwoGroup) -> CrossedModule:
    """H = ker s, C_g h = e(g)·h·e(g)⁻¹, d = t restricted to H."""
    rep = check_two_group(raw)
    if not rep.ok:
        raise StructureMapNotHom("input is not a groupoid in groups: " + ", ".join(rep.failed()),
                                 witness=rep.to_dict())
    G1, G0, g = raw.arrows_group, raw.base_group, raw.groupoid
    kernel = [u for u in range(G1.order) if g.src[u] == G0.unit]
    H, inc = subgroup(G1, kernel, "ker s")
    pos = {u: i for i, u in enumerate(inc.map)}
    C = GroupAction(G0, H.elements,
                    [[pos[G1.conj(g.unit[x], inc.map[h])] for h in range(H.order)]
                     for x in range(G0.order)], "C")
    d = GroupHom(H, G0, [g.tgt[inc.map[h]] for h in range(H.order)], "d")
    return CrossedModule(H, G0, C, d, f"cm({raw.name})" if raw.name else "")


def phi_iso(raw: RawTwoGroup) -> tuple[GroupHom, GroupoidFunctor, TwoGroup]:
    """The map (h, g) ↦ h·e(g) from the canonical model to the input,
    verified to be a bijective group homomorphism and a groupoid functor."""
    cm = crossed_module_from_two_group(raw)
    tg = two_group_from_crossed_module(cm)
    G1, g = raw.arrows_group, raw.groupoid
    inc = [G1.idx(lab) for lab in cm.H.elements]
    nG = cm.G.order
    table = [G1.mul[inc[u // nG]][g.unit[u % nG]] for u in range(tg.arrows_group.order)]
    hom = GroupHom(tg.arrows_group, G1, table, "phi")
    if not hom.is_bijective():
        raise NotBijective("h·e(g) is not a bijection")
    functor = GroupoidFunctor(tg.groupoid, g, list(range(nG)), table, "phi")
    rep = check_hom(hom)
    rep.merge(check_functor(functor), "functor.")
    if not rep.ok:
        raise NotBijective("h·e(g) is not an isomorphism of 2-groups: " + ", ".join(rep.failed()))
    return hom, functor, tg


def iter_crossed_module_isomorphisms(a: CrossedModule, b: CrossedModule) -> Iterator[tuple[tuple, tuple]]:
    """Pairs (α: H→H', β: G→G') of group isomorphisms with
    β∘d = d'∘α and α(C_g h) = C'_{β g}(α h)."""
    if a.H.order != b.H.order or a.G.order != b.G.order:
        return
    betas = list(iter_isomorphisms(a.G, b.G))
    for alpha in iter_isomorphisms(a.H, b.H):
        for beta in betas:
            if any(beta[a.d.map[h]] != b.d.map[alpha[h]] for h in range(a.H.order)):
                continue
            if all(alpha[a.act(x, h)] == b.act(beta[x], alpha[h])
                   for x in range(a.G.order) for h in range(a.H.order)):
                yield alpha, beta


def crossed_module_isomorphism(a: CrossedModule, b: CrossedModule):
    return next(iter_crossed_module_isomorphisms(a, b), None)


def pair_two_group(G: FiniteGroup) -> RawTwoGroup:
    """G×G as the pair groupoid of G: arrows (a, b) from b to a."""
    GG = direct_product(G, G, f"{G.name}×{G.name}")
    n = G.order
    src = [u % n for u in range(GG.order)]
    tgt = [u // n for u in range(GG.order)]
    comp = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                comp[(a * n + b, b * n + c)] = a * n + c
    gpd = FiniteGroupoid(G.elements, GG.elements, src, tgt, comp, name=f"pair({G.name})")
    return RawTwoGroup(GG, G, gpd, f"pair({G.name})")


def identity_crossed_module(G: FiniteGroup) -> CrossedModule:
    """({e}, G): the identity 2-group on G."""
    from .algebra import trivial_group
    E = trivial_group("1")
    return CrossedModule(E, G, GroupAction(G, E.elements, [[0]] * G.order, "trivial"),
                         GroupHom(E, G, [G.unit], "trivial"), f"id({G.name})")


def gauge_crossed_module(G: FiniteGroup) -> CrossedModule:
    """(G, G, conjugation, identity): the 2-group G⋊G."""
    return CrossedModule(G, G, conjugation_action(G), GroupHom.identity(G), f"{G.name}⋊{G.name}")


def check_round_trip(cm: CrossedModule) -> ValidationReport:
    """crossed module → 2-group → crossed module, up to isomorphism."""
    rep = ValidationReport(f"round trip {cm.name}")
    tg = two_group_from_crossed_module(cm)
    raw = raw_from_two_group(tg)
    rep.merge(check_two_group(raw), "two_group.")
    back = crossed_module_from_two_group(raw)
    iso = crossed_module_isomorphism(cm, back)
    rep.expect("isomorphic", iso is not None, (cm.H.order, cm.G.order))
    _, functor, _ = phi_iso(raw)
    rep.expect("phi_bijective", functor.is_bijective())
    return rep
