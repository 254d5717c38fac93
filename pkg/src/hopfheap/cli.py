"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails or a
construction's hypothesis is violated, 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .bundle import Bundle, BundleBuilder, Element, LinearMap, dump_bundle, dumps_json, load_bundle
from .coalg import Coalgebra, find_grouplikes, verify_coalgebra
from .errors import CounitNotOne, HopfError, InputError, NotGroupLike, ParseError
from .heap import (
    HopfAlgebra,
    HopfHeap,
    grunspan_map,
    heap_from_hopf,
    hopf_from_heap,
    is_commutative_heap,
    opposite_heap,
    tensor_heap,
    verify_exchange_identity,
    verify_grunspan_identity,
    verify_middle_associativity,
    verify_translation_laws,
)
from .hmodule import (
    HeapModule,
    HopfModule,
    coinvariants,
    heapmod_from_hopfmod,
    hopfmod_from_heapmod,
    structure_iso,
    structure_source,
    verify_module_hom,
    verify_right_commutative_identities,
)
from .kernel import FieldSpec, SparseTensor, compose, format_scalar, parse_scalar
from .report import FAIL, PASS, VerificationReport, compare, render_element
from .rota import (
    RBCooperator,
    RBHeap,
    RBHeapModule,
    basis_map_family,
    cooperator_from_rb_heap,
    descendent_heap,
    diagonal_family,
    permutation_family,
    rb_heap_from_cooperator,
    rb_structure_iso,
    search_rb_operators,
    translate_rb,
)
from .truss import (
    HopfTruss,
    alpha_truss,
    brace_truss_convert,
    trivial_truss,
)

VERIFY_KINDS = {
    "coalgebra": ("coalgebra",),
    "heap": ("heap",),
    "hopf": ("hopf-algebra",),
    "rb": ("rb-operator",),
    "cooperator": ("cooperator",),
    "truss": ("truss",),
    "brace": ("brace",),
    "module": ("heap-module",),
    "hopf-module": ("hopf-module",),
    "rb-module": ("rb-module",),
    "all": ("coalgebra", "heap", "hopf-algebra", "rb-operator", "cooperator", "truss", "brace",
            "heap-module", "hopf-module", "rb-module"),
}

CONSTRUCTIONS = (
    "hopf", "heap", "opposite", "tensor", "grunspan", "trivial-truss", "alpha-truss",
    "truss", "brace", "hopf-module", "heap-module", "cooperator", "rb-heap", "translate",
)

FAMILIES = ("diagonal", "permutation", "basis-maps")


class Outcome:
    """Everything a command produces: reports, a result payload, maybe an error."""

    def __init__(self, command: str, bundle: Bundle | None):
        self.command = command
        self.bundle = bundle
        self.reports: list[VerificationReport] = []
        self.result: dict | None = None
        self.error: dict | None = None
        self.text_lines: list[str] = []
        self.bundle_out: Bundle | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and all(r.ok for r in self.reports)

    def to_dict(self) -> dict:
        out = {"command": self.command}
        if self.bundle is not None:
            out["bundle"] = self.bundle.name
            out["field"] = str(self.bundle.field)
        out["status"] = PASS if self.ok else FAIL
        out["reports"] = [r.to_dict() for r in self.reports]
        if self.result is not None:
            out["result"] = self.result
        if self.error is not None:
            out["error"] = self.error
        return out

    def to_text(self) -> str:
        lines = [f"{self.command}: {PASS if self.ok else FAIL}"]
        if self.bundle is not None:
            lines.append(f"bundle {self.bundle.name} over {self.bundle.field}")
        lines.extend(self.text_lines)
        for r in self.reports:
            lines.append(str(r))
        if self.error is not None:
            lines.append(f"error {self.error['type']}: {self.error['message']}")
        return "\n".join(lines) + "\n"


# helpers ------------------------------------------------------------------


def _heap_of(obj) -> HopfHeap:
    if isinstance(obj, HopfHeap):
        return obj
    if isinstance(obj, (RBHeap, HopfTruss)):
        return obj.heap
    if isinstance(obj, HeapModule):
        return obj.parent
    raise InputError(f"{type(obj).__name__} does not carry a Hopf heap")


def _coalg_of(obj) -> Coalgebra:
    if isinstance(obj, Coalgebra):
        return obj
    if isinstance(obj, (HopfHeap, HopfAlgebra)):
        return obj.coalg
    if isinstance(obj, (RBHeap, HopfTruss)):
        return obj.heap.coalg
    if isinstance(obj, (RBCooperator,)):
        return obj.hopf.coalg
    if isinstance(obj, (HeapModule, HopfModule)):
        return obj.parent.coalg
    raise InputError(f"{type(obj).__name__} does not carry a coalgebra")


def _typed(bundle: Bundle, name: str | None, kinds: tuple, what: str):
    if name is None:
        names = bundle.names_of_kind(*kinds)
        if not names:
            raise InputError(f"bundle {bundle.name!r} has no {what}")
        name = names[0]
    obj = bundle.get(name)
    if bundle.kind_of(name) not in kinds:
        raise InputError(f"object {name!r} is a {bundle.kind_of(name)}, not a {what}")
    return name, obj


def _vector_arg(bundle: Bundle, text: str | None, coalg: Coalgebra, default=None) -> SparseTensor:
    """An element given by name in the bundle or as comma-separated coordinates."""
    if text is None:
        if default is None:
            raise InputError("an element is required")
        return default
    if text in bundle.objects:
        obj = bundle.objects[text]
        if not isinstance(obj, Element):
            raise InputError(f"{text!r} is not an element")
        vec = obj.vector
    else:
        parts = [p.strip() for p in text.split(",")]
        vec = SparseTensor.vector([parse_scalar(p, coalg.field) for p in parts])
    if vec.dims != (coalg.dim,):
        raise InputError(f"element has {vec.dims[0]} coordinates, expected {coalg.dim}")
    return vec


def _map_arg(bundle: Bundle, text: str, n: int) -> SparseTensor:
    if text == "id":
        return SparseTensor.identity(n)
    obj = bundle.get(text)
    if isinstance(obj, LinearMap):
        mat = obj.matrix
    elif isinstance(obj, RBHeap):
        mat = obj.B
    else:
        raise InputError(f"{text!r} is not a map")
    if mat.dims != (n, n):
        raise InputError(f"map {text!r} has dims {mat.dims}, expected {(n, n)}")
    return mat


def _first_grouplike(coalg: Coalgebra) -> SparseTensor:
    found = find_grouplikes(coalg)
    if not found:
        raise NotGroupLike(f"no group-like element in {coalg.name} over {coalg.field}")
    return found[0].vector


def _render_vec(v: SparseTensor, basis) -> str:
    return render_element(v, [basis])


def _matrix_rows(m: SparseTensor) -> list[list[str]]:
    return [[format_scalar(c) for c in row] for row in m.to_list()]


def _report_of(obj) -> VerificationReport | None:
    if isinstance(obj, Coalgebra):
        return verify_coalgebra(obj)
    if isinstance(obj, RBHeap):
        rep = VerificationReport(f"rota-baxter operator {obj.name}")
        rep.extend(obj.heap.report, "heap")
        rep.extend(obj.report)
        return rep
    if isinstance(obj, RBHeapModule):
        rep = VerificationReport(f"rota-baxter module {obj.name}")
        rep.extend(obj.module.report, "module")
        rep.extend(obj.rb.report, "operator")
        rep.extend(obj.report)
        return rep
    if isinstance(obj, (Element, LinearMap)):
        return None
    return obj.report


# verbs --------------------------------------------------------------------


def cmd_verify(args, bundle: Bundle, out: Outcome):
    names = [args.name] if args.name else bundle.names_of_kind(*VERIFY_KINDS[args.kind])
    for name in names:
        obj = bundle.get(name)
        if args.name and bundle.kind_of(name) not in VERIFY_KINDS[args.kind]:
            raise InputError(f"object {name!r} is a {bundle.kind_of(name)}, not a {args.kind}")
        rep = _report_of(obj)
        if rep is not None:
            rep.subject = f"{name}: {rep.subject}"
            out.reports.append(rep)


def cmd_grouplikes(args, bundle: Bundle, out: Outcome):
    name, obj = _typed(bundle, args.name, ("coalgebra", "heap", "hopf-algebra"), "coalgebra")
    coalg = _coalg_of(obj)
    if args.field is not None:
        coalg = coalg.with_field(FieldSpec.parse(args.field))
    found = find_grouplikes(coalg)
    out.result = {
        "object": name,
        "solver_field": str(coalg.field),
        "grouplikes": [[format_scalar(c) for c in g.vector.to_list()] for g in found],
    }
    out.text_lines.append(f"group-likes of {name} over {coalg.field}: {len(found)}")
    out.text_lines.extend(f"  {_render_vec(g.vector, coalg.basis)}" for g in found)


def _module_arg(bundle: Bundle, name: str | None):
    return _typed(bundle, name, ("heap-module", "rb-module"), "heap module")


def cmd_coinvariants(args, bundle: Bundle, out: Outcome):
    name, obj = _module_arg(bundle, args.module)
    mod = obj.module if isinstance(obj, RBHeapModule) else obj
    coalg = mod.parent.coalg
    x = _vector_arg(bundle, args.x, coalg, None if args.x else _first_grouplike(coalg))
    K = coinvariants(mod, x)
    out.result = {
        "module": name,
        "x": [format_scalar(c) for c in x.to_list()],
        "basis": [[format_scalar(c) for c in v.to_list()] for v in K.basis],
    }
    out.text_lines.append(f"coinvariants of {name} at x = {_render_vec(x, coalg.basis)}: dim {K.dim}")
    out.text_lines.extend(f"  {_render_vec(v, mod.basis)}" for v in K.basis)


def cmd_structure(args, bundle: Bundle, out: Outcome):
    name, obj = _module_arg(bundle, args.module)
    mod = obj.module if isinstance(obj, RBHeapModule) else obj
    coalg = mod.parent.coalg
    x = _vector_arg(bundle, args.x, coalg, None if args.x else _first_grouplike(coalg))
    iso = structure_iso(mod, x)
    rep = VerificationReport(f"structure maps of {name}")
    ident_m = SparseTensor.identity(mod.dim)
    rep.add(compare("structure:alpha-beta", compose(iso.alpha, iso.beta), ident_m, 1))
    rep.add(compare("structure:beta-alpha", compose(iso.beta, iso.alpha),
                    SparseTensor.identity(iso.beta.dims[0]), 1))
    rep.extend(verify_module_hom(iso.alpha, structure_source(mod, iso), mod), "alpha")
    out.reports.append(rep)
    result = {
        "module": name,
        "x": [format_scalar(c) for c in x.to_list()],
        "coinvariants": [[format_scalar(c) for c in v.to_list()] for v in iso.coinvariants.basis],
        "alpha": _matrix_rows(iso.alpha),
        "beta": _matrix_rows(iso.beta),
    }
    if isinstance(obj, RBHeapModule):
        rb_iso = rb_structure_iso(obj, x)
        out.reports.append(rb_iso.report)
        result["T_hat"] = _matrix_rows(rb_iso.T_hat)
    out.result = result
    out.text_lines.append(f"structure theorem for {name}: coinvariants of dim {iso.coinvariants.dim}")


def cmd_descend(args, bundle: Bundle, out: Outcome):
    name, rb = _typed(bundle, args.rb, ("rb-operator",), "Rota-Baxter operator")
    desc = descendent_heap(rb)
    out.reports.append(desc.heap.report)
    out.reports.append(desc.report)
    out.result = {
        "operator": name,
        "comul": [list(idx) + [format_scalar(v)] for idx, v in sorted(desc.heap.coalg.comul.items())],
        "comul_unchanged": desc.heap.coalg.comul == rb.heap.coalg.comul,
    }
    b = BundleBuilder(f"{bundle.name}-descendent", bundle.field, f"descendent heap of {name}")
    b.add(desc.heap.coalg, "C_B")
    b.add(desc.heap, "Hp_B")
    out.bundle_out = b.build()


def cmd_search(args, bundle: Bundle, out: Outcome):
    name, obj = _typed(bundle, args.heap, ("heap", "rb-operator", "truss"), "heap")
    hp = _heap_of(obj)
    n = hp.dim
    if args.family == "diagonal":
        family = diagonal_family(n, args.height)
    elif args.family == "permutation":
        family = permutation_family(n)
    else:
        family = basis_map_family(n)
    found = search_rb_operators(hp, family)
    out.result = {
        "heap": name,
        "family": args.family,
        "candidates": len(family),
        "operators": [_matrix_rows(r.B) for r in found],
    }
    out.text_lines.append(f"{len(found)} of {len(family)} {args.family} candidates on {name} "
                          "are Rota-Baxter operators")
    out.text_lines.extend(f"  {_matrix_rows(r.B)}" for r in found)


def _counit_one_vector(coalg: Coalgebra) -> SparseTensor:
    for i in range(coalg.dim):
        c = coalg.counit[(i,)]
        if c:
            return SparseTensor((coalg.dim,), {(i,): c.inv()})
    raise CounitNotOne(f"the counit of {coalg.name} vanishes")


def cmd_report(args, bundle: Bundle, out: Outcome):
    for name, obj in bundle.objects.items():
        rep = _report_of(obj)
        if rep is None:
            continue
        rep.subject = f"{name}: {rep.subject}"
        out.reports.append(rep)
        if isinstance(obj, HopfHeap) and obj.report.ok:
            f = _counit_one_vector(obj.coalg)
            extra = VerificationReport(f"{name}: derived identities")
            extra.extend(verify_grunspan_identity(obj, f))
            extra.extend(verify_translation_laws(obj))
            if is_commutative_heap(obj):
                extra.extend(verify_middle_associativity(obj))
                extra.extend(verify_exchange_identity(obj))
            out.reports.append(extra)
        if isinstance(obj, HeapModule) and obj.side == "right" and obj.report.ok \
                and is_commutative_heap(obj.parent):
            rep2 = verify_right_commutative_identities(obj)
            rep2.subject = f"{name}: {rep2.subject}"
            out.reports.append(rep2)


def cmd_construct(args, bundle: Bundle, out: Outcome):
    what = args.what
    b = BundleBuilder(f"{bundle.name}-{what}", bundle.field, f"{what} built from {bundle.name}")
    if what == "hopf":
        name, hp = _typed(bundle, args.name, ("heap",), "heap")
        x = _vector_arg(bundle, args.x, hp.coalg, None if args.x else _first_grouplike(hp.coalg))
        obj = hopf_from_heap(hp, x)
    elif what == "heap":
        name, H = _typed(bundle, args.name, ("hopf-algebra",), "Hopf algebra")
        obj = heap_from_hopf(H)
    elif what == "opposite":
        name, hp = _typed(bundle, args.name, ("heap",), "heap")
        obj = opposite_heap(hp)
    elif what == "tensor":
        _, hp1 = _typed(bundle, args.name, ("heap",), "heap")
        _, hp2 = _typed(bundle, args.other or args.name, ("heap",), "heap")
        obj = tensor_heap(hp1, hp2)
    elif what == "grunspan":
        name, hp = _typed(bundle, args.name, ("heap",), "heap")
        f = _vector_arg(bundle, args.f, hp.coalg, None if args.f else _counit_one_vector(hp.coalg))
        mat = grunspan_map(hp, f)
        out.reports.append(verify_grunspan_identity(hp, f))
        out.result = {"f": [format_scalar(c) for c in f.to_list()], "map": _matrix_rows(mat)}
        obj = LinearMap(hp, mat)
    elif what == "trivial-truss":
        name, hp = _typed(bundle, args.name, ("heap",), "heap")
        x = _vector_arg(bundle, args.x, hp.coalg, None if args.x else _first_grouplike(hp.coalg))
        obj = trivial_truss(hp, x)
    elif what == "alpha-truss":
        name, hp = _typed(bundle, args.name, ("heap",), "heap")
        obj = alpha_truss(hp, _map_arg(bundle, args.map or "id", hp.dim), args.variant)
    elif what == "truss":
        name, br = _typed(bundle, args.name, ("brace",), "brace")
        obj = brace_truss_convert(br, "to_truss")
    elif what == "brace":
        name, tr = _typed(bundle, args.name, ("truss",), "truss")
        obj = brace_truss_convert(tr, "to_brace")
    elif what == "hopf-module":
        name, mod = _typed(bundle, args.name, ("heap-module",), "heap module")
        coalg = mod.parent.coalg
        x = _vector_arg(bundle, args.x, coalg, None if args.x else _first_grouplike(coalg))
        obj = hopfmod_from_heapmod(mod, x)
    elif what == "heap-module":
        name, mod = _typed(bundle, args.name, ("hopf-module",), "Hopf module")
        obj = heapmod_from_hopfmod(mod)
    elif what == "cooperator":
        name, rb = _typed(bundle, args.name, ("rb-operator",), "Rota-Baxter operator")
        coalg = rb.heap.coalg
        x = _vector_arg(bundle, args.x, coalg, None if args.x else _first_grouplike(coalg))
        obj = cooperator_from_rb_heap(rb, x)
    elif what == "rb-heap":
        name, co = _typed(bundle, args.name, ("cooperator",), "co-operator")
        obj = rb_heap_from_cooperator(co)
    elif what == "translate":
        name, rb = _typed(bundle, args.name, ("rb-operator",), "Rota-Baxter operator")
        coalg = rb.heap.coalg
        x = _vector_arg(bundle, args.x, coalg, None if args.x else _first_grouplike(coalg))
        y = _vector_arg(bundle, args.y, coalg, x)
        obj = translate_rb(rb, x, y)
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown construction {what!r}")
    rep = _report_of(obj)
    if rep is not None:
        out.reports.append(rep)
    b.add(obj, "result")
    out.bundle_out = b.build()
    if out.result is None:
        out.result = {"construction": what, "objects": list(out.bundle_out.objects)}


COMMANDS = {
    "verify": cmd_verify,
    "construct": cmd_construct,
    "grouplikes": cmd_grouplikes,
    "coinvariants": cmd_coinvariants,
    "structure": cmd_structure,
    "descend": cmd_descend,
    "search": cmd_search,
    "report": cmd_report,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="Q, Q(sqrt:-1) or Q(sqrt:d); overrides the bundle's field")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--out", help="write the primary output (report or constructed bundle) here")

    parser = _Parser(prog="hopfheap", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", parents=[common], help="verify every object of a kind")
    p.add_argument("kind", choices=sorted(VERIFY_KINDS))
    p.add_argument("bundle")
    p.add_argument("--name", help="verify only this object")

    p = sub.add_parser("construct", parents=[common], help="build a derived object")
    p.add_argument("what", choices=CONSTRUCTIONS)
    p.add_argument("bundle")
    p.add_argument("--name", help="input object")
    p.add_argument("--other", help="second heap for 'tensor'")
    p.add_argument("--x", help="group-like element: object name or comma-separated coordinates")
    p.add_argument("--y", help="second group-like for 'translate'")
    p.add_argument("--f", help="counit-one element for 'grunspan'")
    p.add_argument("--map", help="endomorphism for 'alpha-truss' (object name or 'id')")
    p.add_argument("--variant", choices=("first", "second"), default="first")

    p = sub.add_parser("grouplikes", parents=[common], help="solve for group-like elements")
    p.add_argument("bundle")
    p.add_argument("--name")

    for verb, text in (("coinvariants", "coinvariant subspace of a module"),
                       ("structure", "fundamental structure maps of a module")):
        p = sub.add_parser(verb, parents=[common], help=text)
        p.add_argument("bundle")
        p.add_argument("--module")
        p.add_argument("--x")

    p = sub.add_parser("descend", parents=[common], help="build the descendent heap of an operator")
    p.add_argument("bundle")
    p.add_argument("--rb")

    p = sub.add_parser("search", parents=[common], help="filter a family of candidate operators")
    p.add_argument("bundle")
    p.add_argument("--heap")
    p.add_argument("--family", choices=FAMILIES, default="diagonal")
    p.add_argument("--height", type=int, default=1, help="scalar height bound for 'diagonal'")

    p = sub.add_parser("report", parents=[common], help="verify everything in a bundle")
    p.add_argument("bundle")
    return parser


def run_command(argv: list[str]) -> tuple[Outcome, int]:
    """Parse ``argv`` and execute; returns the outcome and the exit code."""
    return execute(build_parser().parse_args(argv))


def execute(args: argparse.Namespace) -> tuple[Outcome, int]:
    out = Outcome(args.command, None)
    try:
        override = None
        if args.field is not None:
            override = FieldSpec.parse(args.field)
        # grouplikes re-fields only the coalgebra it solves over
        bundle = load_bundle(args.bundle, None if args.command == "grouplikes" else override)
        out.bundle = bundle
        COMMANDS[args.command](args, bundle, out)
    except (InputError, FileNotFoundError, ValueError) as exc:
        out.error = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ParseError):
            out.error["position"] = exc.position
            out.error["token"] = exc.token
        return out, 2
    except HopfError as exc:
        out.error = {"type": type(exc).__name__, "message": str(exc)}
        report = getattr(exc, "report", None)
        if report is not None:
            out.reports.append(report)
        return out, 1
    return out, 0 if out.ok else 1


def emit(out: Outcome, fmt: str) -> str:
    return dumps_json(out.to_dict()) if fmt == "structured" else out.to_text()


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out, code = execute(args)
    text = emit(out, args.format)
    if args.out is not None and out.bundle_out is not None:
        # constructions write the new bundle; the report still goes to stdout
        if code == 0:
            Path(args.out).write_text(dump_bundle(out.bundle_out), encoding="utf-8")
        sys.stdout.write(text)
    elif args.out is not None:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if code == 2 and out.error is not None:
        sys.stderr.write(f"error {out.error['type']}: {out.error['message']}\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
