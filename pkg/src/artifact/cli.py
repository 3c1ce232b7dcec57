"""Command-line interface.

Every command prints one canonical JSON report on stdout.  Exit status:
0 when every check passes, 1 when a mathematical check fails, 2 on input
errors (unreadable or malformed files, unmet preconditions).
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Any, Callable, Sequence

from . import catalog
from .actions import (PBGroupoid, TwoGroupAction, check_partial_quotient, check_pb_groupoid,
                      check_two_group_action, partial_quotient, quotient_pb)
from .algebra import FiniteGroup, GroupAction, GroupHom, check_action, check_group, check_hom, is_free
from .documents import Document, Surjection, canonical_json, document_of, parse, write
from .errors import ArtifactError, InputError, NotBaseTrivial, PreconditionNotMet, UnknownSubcommand
from .gerbes import (BundleGerbe, base_trivial_from_pb, check_base_trivial_pb, check_bundle_gerbe,
                     check_splitting, functor_phi, functor_psi, functor_xi)
from .groupoid import FiniteGroupoid, check_groupoid, fiber_product_groupoid, group_groupoid
from .morita import VIAS, fiber_product_report, morita_equivalent
from .nerve import (DEFAULT_K, check_nerve_pb, check_partial_quotient_nerve, check_simplicial,
                    check_two_group_models, nerve, nerve_pb, partial_quotient_nerve,
                    two_group_nerve_models)
from .report import ValidationReport, _jsonable
from .transformations import aut_gerbe, check_aut_group, embeddings, level_data, verify_square
from .twogroup import CrossedModule, check_crossed_module, check_round_trip

COMMANDS = ("validate", "build", "functor", "quotient", "nerve", "aut", "morita", "catalog")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        if "invalid choice" in message and "command" in message:
            raise UnknownSubcommand(message)
        raise InputError(message)


def _pick(doc: Document, name: str | None, kinds: tuple[str, ...]) -> list[tuple[str, Any]]:
    if name is not None:
        obj = doc.get(name)
        if doc.kinds[name] not in kinds:
            raise PreconditionNotMet(f"stanza {name!r} is a {doc.kinds[name]}, expected {' or '.join(kinds)}")
        return [(name, obj)]
    found = doc.of_kind(*kinds)
    if not found:
        raise PreconditionNotMet(f"no stanza of kind {' or '.join(kinds)}")
    return found


# -- validate --------------------------------------------------------------------------

def validate_object(kind: str, obj: Any) -> ValidationReport:
    if kind == "group":
        return check_group(obj)
    if kind == "hom":
        return check_hom(obj)
    if kind in ("group_action", "principal_bundle"):
        rep = check_action(obj)
        if kind == "principal_bundle":
            rep.expect("free", is_free(obj), obj.fixed_point_witness())
        return rep
    if kind == "crossed_module":
        rep = check_crossed_module(obj)
        if rep.ok:
            rep.merge(check_round_trip(obj), "round_trip.")
        return rep
    if kind == "groupoid":
        return check_groupoid(obj)
    if kind == "surjection":
        rep = ValidationReport("surjection")
        rep.merge(check_groupoid(fiber_product_groupoid(obj.mapping, obj.base)), "fiber_product.")
        return rep
    if kind == "two_group_action":
        return check_two_group_action(obj)
    if kind == "pb_groupoid":
        return check_pb_groupoid(obj)
    if kind == "gerbe":
        return check_bundle_gerbe(obj)
    raise PreconditionNotMet(f"no checker for {kind}")


def cmd_validate(args, out: dict) -> bool:
    doc = parse(args.file)
    results = {}
    for name, obj in doc.objects.items():
        results[name] = validate_object(doc.kinds[name], obj).to_dict()
    out["results"] = results
    return all(r["ok"] for r in results.values())


# -- build -----------------------------------------------------------------------------

def cmd_build(args, out: dict) -> bool:
    """Materialize derived objects: 2-groups of crossed modules, gauge PB
    groupoids of principal bundles and fiber products of surjections."""
    from .actions import pb_groupoid_from_principal_bundle
    from .twogroup import check_two_group, raw_from_two_group, two_group_from_crossed_module
    doc = parse(args.file)
    results, built = {}, []
    for name, obj in doc.objects.items():
        kind = doc.kinds[name]
        if kind == "crossed_module":
            tg = two_group_from_crossed_module(obj)
            rep = check_two_group(raw_from_two_group(tg))
            rep.merge(check_round_trip(obj), "round_trip.")
            built += [(f"{name}.arrows", tg.arrows_group), (f"{name}.groupoid", tg.groupoid)]
        elif kind == "principal_bundle":
            pb = pb_groupoid_from_principal_bundle(obj)
            rep = check_pb_groupoid(pb)
            built.append((f"{name}.gauge", pb))
        elif kind == "surjection":
            g = fiber_product_groupoid(obj.mapping, obj.base, f"{name}.fiber_product")
            rep = check_groupoid(g)
            built.append((f"{name}.fiber_product", g))
        else:
            continue
        results[name] = rep.to_dict()
    out["results"] = results
    out["built"] = [n for n, _ in built]
    if args.out:
        write(document_of(list(doc.objects.items()) + built), args.out)
    return all(r["ok"] for r in results.values())


# -- functor ---------------------------------------------------------------------------

def cmd_functor(args, out: dict) -> bool:
    doc = parse(args.file)
    results, produced = {}, []
    if args.which in ("phi", "xi"):
        try:
            targets = _pick(doc, args.stanza, ("pb_groupoid",))
        except PreconditionNotMet as exc:
            if args.which == "xi":
                raise NotBaseTrivial(f"Ξ needs a base-trivial PB groupoid: {exc}") from None
            raise
        for name, pb in targets:
            if args.which == "phi":
                b = functor_phi(pb)
                rep = check_bundle_gerbe(b)
            else:
                bt = base_trivial_from_pb(pb)
                b = functor_xi(bt)
                rep = check_bundle_gerbe(b)
                rep.merge(check_base_trivial_pb(bt), "base_trivial.")
                rep.merge(check_splitting(bt, b), "splitting.")
            b.name = f"{args.which}({name})"
            produced.append((b.name, b))
            rep.notes["arrows"] = b.B.n_arrows
            rep.notes["base_arrows"] = b.base.n_arrows
            results[name] = rep.to_dict()
    else:
        for name, b in _pick(doc, args.stanza, ("gerbe",)):
            bt = functor_psi(b)
            rep = check_base_trivial_pb(bt)
            rep.merge(check_pb_groupoid(bt.pb), "pb.")
            rep.notes["arrows"] = bt.pb.target.n_arrows
            produced.append((f"psi({name})", bt.pb))
            results[name] = rep.to_dict()
    out["results"] = results
    out["produced"] = [n for n, _ in produced]
    if args.out:
        write(document_of(produced), args.out)
    return all(r["ok"] for r in results.values())


# -- quotient --------------------------------------------------------------------------

def cmd_quotient(args, out: dict) -> bool:
    doc = parse(args.file)
    results, produced = {}, []
    for name, obj in _pick(doc, args.stanza, ("pb_groupoid", "two_group_action")):
        action: TwoGroupAction = obj.action if isinstance(obj, PBGroupoid) else obj
        if args.partial:
            pq = partial_quotient(action)
            rep = check_partial_quotient(pq)
            g = pq.groupoid
        else:
            pb = obj if isinstance(obj, PBGroupoid) else quotient_pb(action)
            rep = check_pb_groupoid(pb)
            g = pb.base
        rep.notes["objects"] = g.n_objects
        rep.notes["arrows"] = g.n_arrows
        g.name = f"{name}.{'partial' if args.partial else 'full'}_quotient"
        produced.append((g.name, g))
        results[name] = rep.to_dict()
    out["results"] = results
    if args.out:
        write(document_of(produced), args.out)
    return all(r["ok"] for r in results.values())


# -- nerve -----------------------------------------------------------------------------

def cmd_nerve(args, out: dict) -> bool:
    doc = parse(args.file)
    K = args.k
    results = {}
    for name, obj in _pick(doc, args.stanza, ("groupoid", "crossed_module", "pb_groupoid", "surjection")):
        rep = ValidationReport(f"nerve of {name}")
        if isinstance(obj, Surjection):
            obj = fiber_product_groupoid(obj.mapping, obj.base)
        if isinstance(obj, FiniteGroupoid):
            s = nerve(obj, K)
            rep.notes["sizes"] = s.sizes()
            if args.check:
                rep.merge(check_simplicial(s), "simplicial.")
        elif isinstance(obj, CrossedModule):
            from .twogroup import two_group_from_crossed_module
            models = two_group_nerve_models(two_group_from_crossed_module(obj), K)
            rep.notes["sizes"] = models.A.sizes()
            if args.check:
                rep.merge(check_two_group_models(models), "models.")
        else:
            n = nerve_pb(obj, K)
            rep.notes["sizes"] = n.P.sizes()
            rep.notes["group_sizes"] = n.G.sizes()
            rep.notes["base_sizes"] = n.M.sizes()
            if args.check:
                rep.merge(check_nerve_pb(n), "bundle.")
                rep.merge(check_partial_quotient_nerve(partial_quotient_nerve(obj, K)), "partial_quotient.")
        results[name] = rep.to_dict()
    out["results"] = results
    return all(r["ok"] for r in results.values())


# -- aut -------------------------------------------------------------------------------

def cmd_aut(args, out: dict) -> bool:
    doc = parse(args.file)
    k = args.k
    results = {}
    for name, obj in _pick(doc, args.stanza, ("pb_groupoid", "gerbe")):
        rep = ValidationReport(f"automorphisms of {name}")
        if isinstance(obj, BundleGerbe):
            rep.merge(aut_gerbe(obj, k), "gerbe.")
            results[name] = rep.to_dict()
            continue
        L = level_data(obj, k)
        group = check_aut_group(obj, k, L)
        rep.merge(group, "group.")
        counts = [group.notes["formula_count"], group.notes["search_count"], group.notes["equivariant_map_count"]]
        if "enumerated" in group.notes:
            counts.append(group.notes["enumerated"])
        rep.expect("counts_matched", len(set(counts)) == 1, counts)
        rep.notes["order"] = counts[0]
        rep.notes["ways"] = len(counts)
        sq = None
        if args.verify_square:
            sq = verify_square(obj, k, inverse_gamma=args.inverse_gamma, L=L)
            rep.merge(sq, "square.")
        if args.match_gerbe:
            if k < 1:
                raise PreconditionNotMet("--match-gerbe needs k ≥ 1")
            gerbe = functor_xi(base_trivial_from_pb(obj))
            ag = aut_gerbe(gerbe, k)
            rep.merge(ag, "gerbe.")
            sq = sq or verify_square(obj, k, inverse_gamma=args.inverse_gamma, L=L)
            rep.expect("gerbe_matches_partial_quotient",
                       ag.notes["aut_B"] == sq.notes["aut_partial_quotient"],
                       (ag.notes["aut_B"], sq.notes["aut_partial_quotient"]))
        if args.embeddings:
            bundle = obj.meta.get("principal_bundle")
            if bundle is None:
                raise PreconditionNotMet("--embeddings needs a PB groupoid built from a principal bundle")
            rep.merge(embeddings(bundle, max(k, 1)), "embeddings.")
        results[name] = rep.to_dict()
    out["results"] = results
    return all(r["ok"] for r in results.values())


# -- morita ----------------------------------------------------------------------------

def _groupoid_of(path: str, stanza: str | None) -> tuple[str, FiniteGroupoid]:
    doc = parse(path)
    name, obj = _pick(doc, stanza, ("groupoid", "surjection", "group"))[0]
    if isinstance(obj, Surjection):
        obj = fiber_product_groupoid(obj.mapping, obj.base, name)
    elif isinstance(obj, FiniteGroup):
        obj = group_groupoid(obj, name=name)
    return name, obj


def cmd_morita(args, out: dict) -> bool:
    na, A = _groupoid_of(args.a, args.stanza_a)
    nb, B = _groupoid_of(args.b, args.stanza_b)
    v = morita_equivalent(A, B, args.via)
    out["pair"] = [na, nb]
    out["verdict"] = v.to_json()
    return v.equivalent


# -- catalog ---------------------------------------------------------------------------

def cmd_catalog(args, out: dict) -> bool:
    names = [n for n, _ in catalog.entries()]
    out["instances"] = names
    if args.emit:
        d = Path(args.emit)
        d.mkdir(parents=True, exist_ok=True)
        files = catalog.files()
        for fname, data in files.items():
            write(data, d / fname)
        out["written"] = sorted(files)
    if args.check:
        results = {}
        for name, obj in catalog.entries():
            kind = _kind_of(obj)
            rep = validate_object(kind, obj)
            if kind == "surjection":
                rep.merge(fiber_product_report(obj.mapping, obj.base), "morita.")
            results[name] = rep.to_dict()
        out["results"] = results
        return all(r["ok"] for r in results.values())
    return True


def _kind_of(obj: Any) -> str:
    for cls, kind in ((FiniteGroup, "group"), (GroupHom, "hom"), (GroupAction, "group_action"),
                      (CrossedModule, "crossed_module"), (FiniteGroupoid, "groupoid"),
                      (Surjection, "surjection"), (TwoGroupAction, "two_group_action"),
                      (PBGroupoid, "pb_groupoid"), (BundleGerbe, "gerbe")):
        if isinstance(obj, cls):
            return kind
    raise PreconditionNotMet(f"unknown object {type(obj).__name__}")


# -- entry point -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="artifact", description="Finite crossed modules, PB groupoids, gerbes and nerves.")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def file_cmd(name: str, helptext: str) -> argparse.ArgumentParser:
        s = sub.add_parser(name, help=helptext)
        s.add_argument("file", nargs="?", help="input document")
        s.add_argument("--input", dest="input", help="input document (alternative to the positional)")
        s.add_argument("--stanza", help="restrict to one named stanza")
        return s

    file_cmd("validate", "run the checker of every stanza")
    s = file_cmd("build", "materialize derived objects")
    s.add_argument("--out", help="write the extended document here")
    s = file_cmd("functor", "apply Φ, Ψ or Ξ")
    s.add_argument("--which", choices=("phi", "psi", "xi"), required=True)
    s.add_argument("--out", help="write the produced stanzas here")
    s = file_cmd("quotient", "full or partial quotient of a 2-group action")
    s.add_argument("--partial", action="store_true")
    s.add_argument("--out")
    s = file_cmd("nerve", "nerve levels and simplicial checks")
    s.add_argument("-k", type=int, default=DEFAULT_K)
    s.add_argument("--check", action="store_true")
    s = file_cmd("aut", "inner transformation groups")
    s.add_argument("-k", type=int, default=0)
    s.add_argument("--verify-square", action="store_true")
    s.add_argument("--match-gerbe", action="store_true")
    s.add_argument("--inverse-gamma", action="store_true", help="conjugate by g0^-1 in Γ")
    s.add_argument("--embeddings", action="store_true")
    s = sub.add_parser("morita", help="Morita equivalence of two groupoids")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--via", choices=VIAS, default="weak")
    s.add_argument("--stanza-a")
    s.add_argument("--stanza-b")
    s = sub.add_parser("catalog", help="list, check or write the built-in instances")
    s.add_argument("--emit", metavar="DIR")
    s.add_argument("--check", action="store_true")
    return p


HANDLERS: dict[str, Callable] = {
    "validate": cmd_validate, "build": cmd_build, "functor": cmd_functor, "quotient": cmd_quotient,
    "nerve": cmd_nerve, "aut": cmd_aut, "morita": cmd_morita, "catalog": cmd_catalog,
}


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    out: dict[str, Any] = {"command": argv}
    start = time.perf_counter()
    args = None
    try:
        args = build_parser().parse_args(argv)
        if hasattr(args, "file"):
            if args.file is None:
                args.file = args.input
            if args.file is None:
                raise InputError("an input document is required")
        ok = HANDLERS[args.command](args, out)
        code = 0 if ok else 1
    except ArtifactError as exc:
        # mathematical failures raised as exceptions are not input errors
        code = 2 if isinstance(exc, InputError) else 1
        err = {"type": type(exc).__name__, "message": str(exc)}
        w = getattr(exc, "witness", None)
        if w is not None:
            err["witness"] = _jsonable(w)
        out["error"] = err
        print(f"artifact: {type(exc).__name__}: {exc}", file=sys.stderr)
    out["ok"] = code == 0
    out["exit_code"] = code
    if getattr(args, "timing", False):
        out["timing_seconds"] = round(time.perf_counter() - start, 4)
    stdout.write(canonical_json(_jsonable(out)))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
