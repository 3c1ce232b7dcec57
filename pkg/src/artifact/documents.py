"""JSON documents: parsing into engine objects and canonical emission.

A document is ``{"kind": "document", "catalog": bool, "stanzas": [...]}``.
Every stanza has a ``kind`` and a unique ``name``; stanzas refer to earlier
ones by name.  Labels may be strings, integers or (nested) lists, which are
read as tuples.  Emission always writes explicit tables, so presets used in
hand-written input are expanded.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .actions import PBGroupoid, TwoGroupAction, pb_groupoid_from_principal_bundle, quotient_pb
from .algebra import FiniteGroup, GroupAction, GroupHom, cyclic_group, symmetric_group, trivial_group
from .errors import DanglingReference, DuplicateLabel, InputError, ParseError, TableArity
from .gerbes import BundleGerbe
from .groupoid import (FiniteGroupoid, GroupoidFunctor, fiber_product_groupoid, group_groupoid,
                       identity_groupoid, pair_groupoid)
from .twogroup import CrossedModule, TwoGroup, two_group_from_crossed_module

KINDS = ("group", "hom", "group_action", "principal_bundle", "crossed_module", "groupoid",
         "surjection", "two_group_action", "pb_groupoid", "gerbe")


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _label(x: Any):
    if isinstance(x, list):
        return tuple(_label(v) for v in x)
    if isinstance(x, (str, int)) and not isinstance(x, bool):
        return x
    raise TableArity(f"unsupported label {x!r}")


def _plain(x: Any):
    if isinstance(x, tuple):
        return [_plain(v) for v in x]
    return x


@dataclass
class Surjection:
    name: str
    mapping: dict

    @property
    def base(self) -> list:
        out = []
        for m in self.mapping.values():
            if m not in out:
                out.append(m)
        return out


@dataclass
class Document:
    catalog: bool = False
    objects: dict = field(default_factory=dict)
    kinds: dict = field(default_factory=dict)

    def add(self, name: str, kind: str, obj: Any) -> None:
        if name in self.objects:
            raise DuplicateLabel(f"duplicate stanza name {name!r}")
        self.objects[name] = obj
        self.kinds[name] = kind

    def of_kind(self, *kinds: str) -> list[tuple[str, Any]]:
        return [(n, o) for n, o in self.objects.items() if self.kinds[n] in kinds]

    def get(self, name: str) -> Any:
        if name not in self.objects:
            raise DanglingReference(name)
        return self.objects[name]

    def to_data(self) -> dict:
        em = Emitter(reserved=self.objects)
        for name, obj in self.objects.items():
            em.emit(obj, name, self.kinds[name])
        return {"kind": "document", "catalog": self.catalog, "stanzas": em.stanzas}

    def dumps(self) -> str:
        return canonical_json(self.to_data())


# -- parsing ------------------------------------------------------------------------------

def loads(text: str, source: str = "<string>") -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.colno, exc.msg) from None
    return from_data(data)


def parse(path: str | Path) -> Document:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {p}: {exc.strerror}") from None
    return loads(text, str(p))


def from_data(data: Any) -> Document:
    if not isinstance(data, dict) or data.get("kind") != "document":
        raise InputError('top level must be an object with "kind": "document"')
    stanzas = data.get("stanzas")
    if not isinstance(stanzas, list):
        raise InputError('"stanzas" must be a list')
    doc = Document(catalog=bool(data.get("catalog", False)))
    tgs: dict = {}
    for i, st in enumerate(stanzas):
        if not isinstance(st, dict):
            raise InputError(f"stanza {i} is not an object")
        kind, name = st.get("kind"), st.get("name")
        if kind not in KINDS:
            raise InputError(f"stanza {i}: unknown kind {kind!r}")
        if not isinstance(name, str) or not name:
            raise InputError(f"stanza {i}: missing name")
        try:
            obj = _BUILDERS[kind](st, doc, tgs)
        except KeyError as exc:
            raise InputError(f"stanza {name!r}: missing field {exc.args[0]!r}") from None
        except (TypeError, ValueError, IndexError) as exc:
            raise InputError(f"stanza {name!r}: {exc}") from None
        doc.add(name, kind, obj)
    return doc


def _ref(doc: Document, st: dict, key: str, types: tuple) -> Any:
    name = st[key]
    obj = doc.get(name)
    if not isinstance(obj, types):
        raise InputError(f"{key} {name!r} has the wrong kind")
    return obj


def _tg(cm: CrossedModule, tgs: dict) -> TwoGroup:
    if id(cm) not in tgs:
        tgs[id(cm)] = two_group_from_crossed_module(cm)
    return tgs[id(cm)]


def _group(st, doc, tgs) -> FiniteGroup:
    preset = st.get("preset")
    if preset is not None:
        n = st.get("n", 1)
        makers = {"trivial": lambda: trivial_group(st["name"]), "cyclic": lambda: cyclic_group(n, st["name"]),
                  "symmetric": lambda: symmetric_group(n, st["name"])}
        if preset not in makers:
            raise InputError(f"unknown group preset {preset!r}")
        return makers[preset]()
    return FiniteGroup([_label(x) for x in st["elements"]], st["table"], st["name"])


def _hom(st, doc, tgs) -> GroupHom:
    return GroupHom(_ref(doc, st, "source", (FiniteGroup,)), _ref(doc, st, "target", (FiniteGroup,)),
                    st["map"], st["name"])


def _action(st, doc, tgs) -> GroupAction:
    return GroupAction(_ref(doc, st, "group", (FiniteGroup,)), [_label(x) for x in st["carrier"]],
                       st["table"], st["name"])


def _crossed_module(st, doc, tgs) -> CrossedModule:
    H = _ref(doc, st, "H", (FiniteGroup,))
    G = _ref(doc, st, "G", (FiniteGroup,))
    C = GroupAction(G, H.elements, st["action"], "C")
    d = GroupHom(H, G, st["d"], "d")
    return CrossedModule(H, G, C, d, st["name"])


def _groupoid(st, doc, tgs) -> FiniteGroupoid:
    preset = st.get("preset")
    name = st["name"]
    if preset == "pair":
        return pair_groupoid([_label(x) for x in st["on"]], name)
    if preset == "identity":
        return identity_groupoid([_label(x) for x in st["on"]], name)
    if preset == "fiber_product":
        s = _ref(doc, st, "surjection", (Surjection,))
        return fiber_product_groupoid(s.mapping, s.base, name)
    if preset == "group":
        return group_groupoid(_ref(doc, st, "group", (FiniteGroup,)), name=name)
    if preset is not None:
        raise InputError(f"unknown groupoid preset {preset!r}")
    comp = {}
    for triple in st["composition"]:
        b, a, c = triple
        comp[(b, a)] = c
    return FiniteGroupoid([_label(x) for x in st["objects"]], [_label(x) for x in st["arrows"]],
                          st["src"], st["tgt"], comp, name=name)


def _surjection(st, doc, tgs) -> Surjection:
    mapping = {}
    for y, m in st["map"]:
        y = _label(y)
        if y in mapping:
            raise DuplicateLabel(f"surjection {st['name']!r} maps {y!r} twice")
        mapping[y] = _label(m)
    return Surjection(st["name"], mapping)


def _two_group_action(st, doc, tgs) -> TwoGroupAction:
    cm = _ref(doc, st, "crossed_module", (CrossedModule,))
    tg = _tg(cm, tgs)
    P = _ref(doc, st, "groupoid", (FiniteGroupoid,))
    act_arr = GroupAction(tg.arrows_group, P.arrows, st["arrow_action"], "arrows")
    act_obj = GroupAction(tg.G, P.objects, st["object_action"], "objects")
    return TwoGroupAction(tg, P, act_arr, act_obj, st["name"])


def _pb_groupoid(st, doc, tgs) -> PBGroupoid:
    if st.get("preset") == "gauge":
        act = _ref(doc, st, "principal_bundle", (GroupAction,))
        pb = pb_groupoid_from_principal_bundle(act)
        return pb
    a = _ref(doc, st, "action", (TwoGroupAction,))
    surj = st.get("object_surjection")
    surj = {_label(p): _label(m) for p, m in surj} if surj is not None else None
    pb = quotient_pb(a, surj)
    if "principal_bundle" in st:
        bundle = _ref(doc, st, "principal_bundle", (GroupAction,))
        pb.meta["principal_bundle"] = bundle
    return pb


def _gerbe(st, doc, tgs) -> BundleGerbe:
    cm = _ref(doc, st, "crossed_module", (CrossedModule,))
    tg = _tg(cm, tgs)
    B = _ref(doc, st, "B", (FiniteGroupoid,))
    base = _ref(doc, st, "base", (FiniteGroupoid,))
    Pi = GroupoidFunctor(B, base, st["Pi_objects"], st["Pi_arrows"], "Pi")
    star = {}
    for u, b, c in st["star"]:
        star[(u, b)] = c
    return BundleGerbe(tg, B, base, Pi, st["rho"], star, st["name"])


_BUILDERS = {
    "group": _group, "hom": _hom, "group_action": _action, "principal_bundle": _action,
    "crossed_module": _crossed_module, "groupoid": _groupoid, "surjection": _surjection,
    "two_group_action": _two_group_action, "pb_groupoid": _pb_groupoid, "gerbe": _gerbe,
}


# -- emission -----------------------------------------------------------------------------

class Emitter:
    """Turns engine objects into stanzas, emitting dependencies first and
    reusing a stanza whenever the same object is referenced again."""

    def __init__(self, reserved=()):
        self.stanzas: list[dict] = []
        self._names: dict[int, str] = {}
        self._reserved: set[str] = set(reserved)
        self._used: set[str] = set()
        self._keep: list = []

    def _fresh(self, base: str) -> str:
        base = base or "x"
        name, k = base, 2
        while name in self._used or name in self._reserved:
            name, k = f"{base}_{k}", k + 1
        self._used.add(name)
        return name

    def emit(self, obj: Any, name: str | None = None, kind: str | None = None) -> str:
        if id(obj) in self._names:
            return self._names[id(obj)]
        self._keep.append(obj)
        if isinstance(obj, FiniteGroup):
            st = {"kind": "group", "elements": [_plain(x) for x in obj.elements], "table": [list(r) for r in obj.mul]}
        elif isinstance(obj, GroupHom):
            st = {"kind": "hom", "source": self.emit(obj.dom), "target": self.emit(obj.cod), "map": list(obj.map)}
        elif isinstance(obj, GroupAction):
            st = {"kind": kind or "group_action", "group": self.emit(obj.group),
                  "carrier": [_plain(x) for x in obj.carrier], "table": [list(r) for r in obj.act]}
        elif isinstance(obj, CrossedModule):
            st = {"kind": "crossed_module", "H": self.emit(obj.H), "G": self.emit(obj.G),
                  "action": [list(r) for r in obj.C.act], "d": list(obj.d.map)}
        elif isinstance(obj, FiniteGroupoid):
            st = {"kind": "groupoid", "objects": [_plain(x) for x in obj.objects],
                  "arrows": [_plain(x) for x in obj.arrows], "src": list(obj.src), "tgt": list(obj.tgt),
                  "composition": sorted([b, a, c] for (b, a), c in obj.comp.items())}
        elif isinstance(obj, Surjection):
            st = {"kind": "surjection", "map": [[_plain(y), _plain(m)] for y, m in obj.mapping.items()]}
        elif isinstance(obj, TwoGroupAction):
            st = {"kind": "two_group_action", "crossed_module": self.emit(obj.tg.cm),
                  "groupoid": self.emit(obj.target),
                  "arrow_action": [list(r) for r in obj.act_arr.act],
                  "object_action": [list(r) for r in obj.act_obj.act]}
        elif isinstance(obj, PBGroupoid):
            st = {"kind": "pb_groupoid", "action": self.emit(obj.action)}
            if obj.object_surjection is not None:
                st["object_surjection"] = [[_plain(p), _plain(m)] for p, m in obj.object_surjection.items()]
            bundle = obj.meta.get("principal_bundle")
            if bundle is not None:
                st["principal_bundle"] = self.emit(bundle, kind="principal_bundle")
        elif isinstance(obj, BundleGerbe):
            st = {"kind": "gerbe", "crossed_module": self.emit(obj.tg.cm), "B": self.emit(obj.B),
                  "base": self.emit(obj.base), "Pi_objects": list(obj.Pi.obj_map),
                  "Pi_arrows": list(obj.Pi.arr_map), "rho": list(obj.rho),
                  "star": sorted([u, b, c] for (u, b), c in obj.star.items())}
        else:
            raise TypeError(f"cannot emit {type(obj).__name__}")
        base = name or getattr(obj, "name", "") or st["kind"]
        if name is not None and name not in self._used:
            st["name"] = name
        else:
            st["name"] = self._fresh(str(base))
        self._used.add(st["name"])
        self._names[id(obj)] = st["name"]
        self.stanzas.append(st)
        return st["name"]


def document_of(objects: list[tuple[str | None, Any]], catalog: bool = False) -> dict:
    em = Emitter(reserved=[n for n, _ in objects if n])
    for name, obj in objects:
        em.emit(obj, name)
    return {"kind": "document", "catalog": catalog, "stanzas": em.stanzas}


def write(data: dict, path: str | Path) -> None:
    Path(path).write_text(canonical_json(data), encoding="utf-8")
