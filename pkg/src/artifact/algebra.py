"""Table-driven finite groups, homomorphisms and group actions.

Labels are opaque hashables; all arithmetic runs on integer indices.
"""
from __future__ import annotations

import itertools
from typing import Any, Callable, Hashable, Iterator, Sequence

from .errors import (DuplicateLabel, NotByAutomorphisms, SearchExhausted,
                     TableArity)
from .report import ValidationReport

Label = Hashable


def _index(labels: Sequence[Label], what: str) -> dict:
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise DuplicateLabel(f"duplicate {what} label")
    return index


class FiniteGroup:
    """A group given by its Cayley table.

    Unit and inverse tables are derived on construction. They are
    ``None`` (or contain ``None``) when the table has no unit or an
    element has no inverse; ``check_group`` reports such defects.
    """

    def __init__(self, elements: Sequence[Label], mul: Sequence[Sequence[int]], name: str = ""):
        n = len(elements)
        if n == 0:
            raise TableArity("a group needs at least one element")
        if len(mul) != n or any(len(row) != n for row in mul):
            raise TableArity(f"multiplication table must be {n}x{n}")
        for row in mul:
            for v in row:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise TableArity(f"table entry {v!r} is not an element index")
        self.name = name
        self.elements = tuple(elements)
        self.mul = tuple(tuple(row) for row in mul)
        self._index = _index(self.elements, "element")
        self.unit = self._find_unit()
        self.inv = self._find_inverses()

    @classmethod
    def from_function(cls, elements: Sequence[Label], op: Callable[[Label, Label], Label],
                      name: str = "") -> "FiniteGroup":
        idx = _index(elements, "element")
        mul = [[idx[op(a, b)] for b in elements] for a in elements]
        return cls(elements, mul, name)

    def _find_unit(self) -> int | None:
        n = self.order
        for e in range(n):
            if all(self.mul[e][x] == x and self.mul[x][e] == x for x in range(n)):
                return e
        return None

    def _find_inverses(self) -> tuple:
        if self.unit is None:
            return tuple(None for _ in self.elements)
        e = self.unit
        inv = []
        for x in range(self.order):
            found = None
            for y in range(self.order):
                if self.mul[x][y] == e and self.mul[y][x] == e:
                    found = y
                    break
            inv.append(found)
        return tuple(inv)

    @property
    def order(self) -> int:
        return len(self.elements)

    def idx(self, label: Label) -> int:
        return self._index[label]

    def label(self, i: int) -> Label:
        return self.elements[i]

    def op(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def prod(self, *xs: int) -> int:
        acc = self.unit
        for x in xs:
            acc = self.mul[acc][x]
        return acc

    def invert(self, a: int) -> int:
        return self.inv[a]

    def conj(self, g: int, x: int) -> int:
        return self.mul[self.mul[g][x]][self.inv[g]]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.unit:
            x = self.mul[x][a]
            k += 1
            if k > self.order:
                raise ValueError("element of infinite order in a finite table")
        return k

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.mul[a][b] == self.mul[b][a] for a in range(n) for b in range(a + 1, n))

    def span(self, gens: Sequence[int]) -> set[int]:
        seen = {self.unit}
        frontier = [self.unit]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def generators(self) -> list[int]:
        gens: list[int] = []
        span = {self.unit}
        for x in range(self.order):
            if x not in span:
                gens.append(x)
                span = self.span(gens)
        return gens

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"


def check_group(g: FiniteGroup) -> ValidationReport:
    """Scan every axiom; witnesses are label triples or singletons."""
    rep = ValidationReport(f"group {g.name}".strip())
    n = g.order
    lab = g.elements
    rep.check("associativity")
    for a in range(n):
        ra = g.mul[a]
        for b in range(n):
            ab = ra[b]
            rb = g.mul[b]
            rab = g.mul[ab]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    rep.fail("associativity", (lab[a], lab[b], lab[c]))
    rep.expect("unit", g.unit is not None, None)
    rep.check("inverse")
    if g.unit is not None:
        for x in range(n):
            if g.inv[x] is None:
                rep.fail("inverse", (lab[x],))
    return rep


class GroupHom:
    """A map between finite groups given by an index table."""

    def __init__(self, dom: FiniteGroup, cod: FiniteGroup, table: Sequence[int], name: str = ""):
        if len(table) != dom.order:
            raise TableArity("homomorphism table must have one entry per element")
        for v in table:
            if not isinstance(v, int) or not 0 <= v < cod.order:
                raise TableArity(f"hom entry {v!r} is not a codomain index")
        self.dom = dom
        self.cod = cod
        self.map = tuple(table)
        self.name = name

    @classmethod
    def from_function(cls, dom: FiniteGroup, cod: FiniteGroup, fn: Callable[[Label], Label],
                      name: str = "") -> "GroupHom":
        return cls(dom, cod, [cod.idx(fn(x)) for x in dom.elements], name)

    @classmethod
    def identity(cls, g: FiniteGroup) -> "GroupHom":
        return cls(g, g, list(range(g.order)), "id")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def kernel(self) -> list[int]:
        return [x for x in range(self.dom.order) if self.map[x] == self.cod.unit]

    def is_bijective(self) -> bool:
        return self.dom.order == self.cod.order and len(set(self.map)) == self.dom.order


def check_hom(f: GroupHom) -> ValidationReport:
    rep = ValidationReport(f"hom {f.name}".strip())
    A, B, m = f.dom, f.cod, f.map
    rep.check("multiplicative")
    for x in range(A.order):
        for y in range(A.order):
            if m[A.mul[x][y]] != B.mul[m[x]][m[y]]:
                rep.fail("multiplicative", (A.elements[x], A.elements[y]))
    rep.expect("unit", m[A.unit] == B.unit, A.elements[A.unit])
    return rep


class GroupAction:
    """A left action ``act[g][p]`` of a finite group on a finite carrier."""

    def __init__(self, group: FiniteGroup, carrier: Sequence[Label], act: Sequence[Sequence[int]],
                 name: str = ""):
        n = len(carrier)
        if len(act) != group.order or any(len(row) != n for row in act):
            raise TableArity("action table must have one row per group element")
        for row in act:
            for v in row:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise TableArity(f"action entry {v!r} is not a carrier index")
        self.group = group
        self.carrier = tuple(carrier)
        self.act = tuple(tuple(r) for r in act)
        self._index = _index(self.carrier, "carrier")
        self.name = name

    @classmethod
    def from_function(cls, group: FiniteGroup, carrier: Sequence[Label],
                      fn: Callable[[Label, Label], Label], name: str = "") -> "GroupAction":
        idx = _index(carrier, "carrier")
        act = [[idx[fn(g, p)] for p in carrier] for g in group.elements]
        return cls(group, carrier, act, name)

    def idx(self, label: Label) -> int:
        return self._index[label]

    def __call__(self, g: int, p: int) -> int:
        return self.act[g][p]

    def orbit_partition(self) -> tuple[list[list[int]], list[int]]:
        """Orbits (each sorted by index) and the orbit number of each point."""
        which = [-1] * len(self.carrier)
        orbits: list[list[int]] = []
        for p in range(len(self.carrier)):
            if which[p] >= 0:
                continue
            orb = sorted({self.act[g][p] for g in range(self.group.order)})
            for q in orb:
                which[q] = len(orbits)
            orbits.append(orb)
        return orbits, which

    def fixed_point_witness(self):
        """First (g, p) with g non-unit and g·p = p, or None."""
        e = self.group.unit
        for g in range(self.group.order):
            if g == e:
                continue
            for p in range(len(self.carrier)):
                if self.act[g][p] == p:
                    return (self.group.elements[g], self.carrier[p])
        return None

    def restrict(self, subgroup: Sequence[int], sub: FiniteGroup) -> "GroupAction":
        """Restriction to a subgroup listed by its indices (in ``sub`` order)."""
        return GroupAction(sub, self.carrier, [self.act[g] for g in subgroup], self.name)


def check_action(a: GroupAction) -> ValidationReport:
    rep = ValidationReport(f"action {a.name}".strip())
    G = a.group
    n = len(a.carrier)
    rep.check("unit")
    for p in range(n):
        if a.act[G.unit][p] != p:
            rep.fail("unit", (a.carrier[p],))
    rep.check("compatibility")
    for g2 in range(G.order):
        for g1 in range(G.order):
            row = a.act[G.mul[g2][g1]]
            r1, r2 = a.act[g1], a.act[g2]
            for p in range(n):
                if r2[r1[p]] != row[p]:
                    rep.fail("compatibility", (G.elements[g2], G.elements[g1], a.carrier[p]))
    return rep


def is_free(a: GroupAction) -> bool:
    return a.fixed_point_witness() is None


def semidirect_product(H: FiniteGroup, G: FiniteGroup, C: GroupAction, name: str = "") -> FiniteGroup:
    """H⋊G on pairs (h, g), index h*|G| + g, with
    (h2,g2)(h1,g1) = (h2·C_{g2}(h1), g2·g1)."""
    if C.group is not G and (C.group.elements != G.elements or C.group.mul != G.mul):
        raise NotByAutomorphisms("action is not by the given group")
    if len(C.carrier) != H.order:
        raise NotByAutomorphisms("action carrier is not the group H")
    for g in range(G.order):
        f = GroupHom(H, H, C.act[g])
        if not f.is_bijective() or not check_hom(f).ok:
            raise NotByAutomorphisms(f"C_{G.elements[g]} is not an automorphism",
                                     witness=G.elements[g])
    nG = G.order
    elements = [(h, g) for h in H.elements for g in G.elements]
    mul = []
    for h2 in range(H.order):
        for g2 in range(nG):
            row = []
            c = C.act[g2]
            hrow = H.mul[h2]
            grow = G.mul[g2]
            for h1 in range(H.order):
                hh = hrow[c[h1]]
                for g1 in range(nG):
                    row.append(hh * nG + grow[g1])
            mul.append(row)
    return FiniteGroup(elements, mul, name or f"{H.name}⋊{G.name}")


def direct_product(A: FiniteGroup, B: FiniteGroup, name: str = "") -> FiniteGroup:
    nB = B.order
    elements = [(a, b) for a in A.elements for b in B.elements]
    mul = [[A.mul[a1][a2] * nB + B.mul[b1][b2]
            for a2 in range(A.order) for b2 in range(nB)]
           for a1 in range(A.order) for b1 in range(nB)]
    return FiniteGroup(elements, mul, name or f"{A.name}×{B.name}")


def trivial_action(G: FiniteGroup, carrier: Sequence[Label]) -> GroupAction:
    return GroupAction(G, carrier, [list(range(len(carrier)))] * G.order, "trivial")


def conjugation_action(G: FiniteGroup) -> GroupAction:
    act = [[G.conj(g, x) for x in range(G.order)] for g in range(G.order)]
    return GroupAction(G, G.elements, act, "conjugation")


def left_translation(G: FiniteGroup) -> GroupAction:
    return GroupAction(G, G.elements, [list(G.mul[g]) for g in range(G.order)], "left translation")


def subgroup(G: FiniteGroup, members: Sequence[int], name: str = "") -> tuple[FiniteGroup, GroupHom]:
    """Subgroup on the listed indices (kept in index order) with its inclusion."""
    members = sorted(members)
    pos = {m: i for i, m in enumerate(members)}
    try:
        mul = [[pos[G.mul[a][b]] for b in members] for a in members]
    except KeyError:
        raise TableArity("subset is not closed under multiplication") from None
    S = FiniteGroup([G.elements[m] for m in members], mul, name)
    return S, GroupHom(S, G, list(members), "inclusion")


# -- catalog constructors ---------------------------------------------------

def trivial_group(name: str = "1") -> FiniteGroup:
    return FiniteGroup(["e"], [[0]], name)


def cyclic_group(n: int, name: str = "") -> FiniteGroup:
    return FiniteGroup([str(i) for i in range(n)],
                       [[(a + b) % n for b in range(n)] for a in range(n)], name or f"Z{n}")


def symmetric_group(n: int, name: str = "") -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)))
    labels = ["".join(map(str, p)) for p in perms]
    idx = {p: i for i, p in enumerate(perms)}
    # (a·b)(i) = a(b(i)): apply b first
    mul = [[idx[tuple(a[b[i]] for i in range(n))] for b in perms] for a in perms]
    return FiniteGroup(labels, mul, name or f"S{n}")


def alternating_subgroup(Sn: FiniteGroup, name: str = "") -> tuple[FiniteGroup, GroupHom]:
    def even(label: str) -> bool:
        p = [int(c) for c in label]
        inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
        return inversions % 2 == 0
    members = [i for i, lab in enumerate(Sn.elements) if even(lab)]
    return subgroup(Sn, members, name or f"A{len(Sn.elements[0])}")


# -- isomorphism search -----------------------------------------------------

MAX_ISO_ORDER = 24


def iter_isomorphisms(A: FiniteGroup, B: FiniteGroup, limit: int = MAX_ISO_ORDER) -> Iterator[tuple[int, ...]]:
    """All isomorphisms A → B as index tables, by backtracking over
    images of a generating set."""
    if A.order != B.order:
        return
    if A.order > limit:
        raise SearchExhausted(f"group order {A.order} exceeds search bound {limit}")
    gens = A.generators()
    # words: express every element as (parent, generator) from BFS
    parent: dict[int, tuple[int, int]] = {}
    order = [A.unit]
    seen = {A.unit}
    for x in order:
        for gi, g in enumerate(gens):
            y = A.mul[x][g]
            if y not in seen:
                seen.add(y)
                parent[y] = (x, gi)
                order.append(y)
    a_orders = [A.element_order(g) for g in gens]
    b_by_order: dict[int, list[int]] = {}
    for y in range(B.order):
        b_by_order.setdefault(B.element_order(y), []).append(y)
    for images in itertools.product(*[b_by_order.get(k, []) for k in a_orders]):
        table = [None] * A.order
        table[A.unit] = B.unit
        for x in order[1:]:
            p, gi = parent[x]
            table[x] = B.mul[table[p]][images[gi]]
        if len(set(table)) != A.order:
            continue
        if all(table[A.mul[x][y]] == B.mul[table[x]][table[y]]
               for x in range(A.order) for y in range(A.order)):
            yield tuple(table)


def find_isomorphism(A: FiniteGroup, B: FiniteGroup, limit: int = MAX_ISO_ORDER) -> tuple[int, ...] | None:
    return next(iter_isomorphisms(A, B, limit), None)


def automorphisms(G: FiniteGroup) -> list[tuple[int, ...]]:
    return list(iter_isomorphisms(G, G))


def action_from_automorphisms(G: FiniteGroup, H: FiniteGroup, rule: Callable[[int], Sequence[int]],
                              name: str = "") -> GroupAction:
    """Action of G on H with C_g given by ``rule(g)`` as an index table."""
    return GroupAction(G, H.elements, [list(rule(g)) for g in range(G.order)], name)


def describe(g: FiniteGroup) -> dict[str, Any]:
    return {"name": g.name, "order": g.order, "abelian": g.is_abelian()}
