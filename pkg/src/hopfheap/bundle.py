"""Bundle files: named structure-constant objects in a JSON document.

A bundle looks like::

    {
      "format": "hopfheap-bundle/1",
      "name": "trig2",
      "note": "...",
      "field": "Q(sqrt:-1)",
      "objects": {
        "C": {"kind": "coalgebra", "basis": ["u", "θ"],
              "comul": [[0, 0, 1, "1"], ...], "counit": [[1, "1"]]},
        "Hp": {"kind": "heap", "coalgebra": "C", "bracket": [[0, 0, 0, 0, "-1"], ...]}
      }
    }

Tensor entries are rows of indices followed by a canonical scalar string.
:func:`dump_bundle` writes the canonical text, which :func:`load_bundle`
followed by :func:`dump_bundle` reproduces byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .coalg import Coalgebra
from .errors import DanglingReference, DimMismatch, FieldMismatch, ParseError
from .heap import HopfAlgebra, HopfHeap
from .hmodule import HeapModule, HopfModule
from .kernel import FieldSpec, SparseTensor, format_scalar, parse_scalar
from .rota import RBCooperator, RBHeap, RBHeapModule
from .truss import HopfBrace, HopfTruss

FORMAT = "hopfheap-bundle/1"
CORPUS_DIR = Path(__file__).parent / "data" / "corpus"


@dataclass
class Element:
    """A named vector in the space of another object."""
    space: object
    vector: SparseTensor


@dataclass
class LinearMap:
    space: object
    matrix: SparseTensor


# kind -> (reference fields, tensor fields with their row arity)
_SCHEMA = {
    "coalgebra": ((), {"comul": 3, "counit": 1}),
    "heap": (("coalgebra",), {"bracket": 4}),
    "hopf-algebra": (("coalgebra",), {"mul": 3, "unit": 1, "antipode": 2}),
    "element": (("space",), {"vector": 1}),
    "map": (("space",), {"matrix": 2}),
    "rb-operator": (("heap",), {"map": 2}),
    "cooperator": (("hopf",), {"map": 2}),
    "truss": (("heap",), {"circ": 3}),
    "brace": (("dot", "circ"), {}),
    "heap-module": (("heap",), {"action": 4, "coaction": 3}),
    "hopf-module": (("hopf",), {"action": 3, "coaction": 3}),
    "rb-module": (("module", "rb"), {"map": 2}),
}

KINDS = tuple(_SCHEMA)


@dataclass
class Bundle:
    name: str
    field: FieldSpec
    note: str = ""
    objects: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict)

    def get(self, name: str):
        if name not in self.objects:
            raise DanglingReference(f"bundle {self.name!r} has no object {name!r}")
        return self.objects[name]

    def kind_of(self, name: str) -> str:
        return self.raw[name]["kind"]

    def names_of_kind(self, *kinds: str) -> list[str]:
        return [n for n, spec in self.raw.items() if spec["kind"] in kinds]


def _dim_of(obj) -> int:
    if isinstance(obj, (Coalgebra, HopfHeap, HopfAlgebra, HeapModule, HopfModule)):
        return obj.dim
    if isinstance(obj, (RBHeap,)):
        return obj.heap.dim
    if isinstance(obj, HopfTruss):
        return obj.dim
    raise DimMismatch(f"object {obj!r} does not carry a vector space")


def _basis_of(obj) -> list[str]:
    if isinstance(obj, RBHeap):
        return obj.heap.basis
    return list(obj.basis)


class _Loader:
    def __init__(self, doc: dict, fld: FieldSpec, name: str):
        self.doc = doc
        self.field = fld
        self.name = name
        self.specs = doc.get("objects", {})
        if not isinstance(self.specs, dict):
            raise ParseError("'objects' must be a mapping", "objects")
        self.built: dict = {}
        self.raw: dict = {}
        self.active: set = set()

    def run(self) -> Bundle:
        for oname in self.specs:
            self.resolve(oname)
        ordered_raw = {n: self.raw[n] for n in self.specs}
        ordered = {n: self.built[n] for n in self.specs}
        return Bundle(self.name, self.field, self.doc.get("note", ""), ordered, ordered_raw)

    def resolve(self, oname: str):
        if oname in self.built:
            return self.built[oname]
        if oname not in self.specs:
            raise DanglingReference(f"reference to undefined object {oname!r}")
        if oname in self.active:
            raise DanglingReference(f"circular reference through {oname!r}")
        self.active.add(oname)
        spec = self.specs[oname]
        where = f"objects.{oname}"
        if not isinstance(spec, dict) or "kind" not in spec:
            raise ParseError("object needs a 'kind'", where)
        kind = spec["kind"]
        if kind not in _SCHEMA:
            raise ParseError("unknown object kind", where, str(kind))
        refs, tensors = _SCHEMA[kind]
        deps = {}
        for r in refs:
            if r not in spec:
                raise ParseError(f"missing reference field {r!r}", where)
            deps[r] = self.resolve(spec[r])
        rows = {}
        for t, arity in tensors.items():
            rows[t] = self._rows(spec.get(t, []), arity, f"{where}.{t}")
        obj, canon = self._build(kind, spec, deps, rows, where)
        self.built[oname] = obj
        self.raw[oname] = canon
        self.active.discard(oname)
        return obj

    def _rows(self, rows, arity: int, where: str):
        if not isinstance(rows, list):
            raise ParseError("entries must be a list", where)
        out = []
        for k, row in enumerate(rows):
            pos = f"{where}[{k}]"
            if not isinstance(row, list) or len(row) != arity + 1:
                raise ParseError(f"entry must have {arity} indices and a coefficient", pos, json.dumps(row))
            idx = row[:-1]
            if not all(isinstance(i, int) and not isinstance(i, bool) for i in idx):
                raise ParseError("indices must be integers", pos, json.dumps(row))
            coeff = row[-1]
            if not isinstance(coeff, str):
                coeff = str(coeff)
            try:
                value = parse_scalar(coeff, self.field)
            except ParseError as exc:
                raise ParseError(exc.message, pos, coeff) from exc
            except FieldMismatch as exc:
                raise FieldMismatch(f"{exc} at {pos}") from exc
            out.append((tuple(idx), value))
        return out, where

    def _tensor(self, rows, dims) -> SparseTensor:
        entries, where = rows
        acc = {}
        for idx, v in entries:
            if len(idx) != len(dims) or any(not 0 <= i < n for i, n in zip(idx, dims)):
                raise DimMismatch(f"index {list(idx)} out of range for dims {list(dims)} at {where}")
            if idx in acc:
                raise ParseError("duplicate entry", where, json.dumps(list(idx)))
            acc[idx] = v
        return SparseTensor(dims, acc)

    def _build(self, kind, spec, deps, rows, where):
        canon = {"kind": kind}
        for r in _SCHEMA[kind][0]:
            canon[r] = spec[r]
        T = self._tensor
        if kind == "coalgebra":
            basis = spec.get("basis")
            if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
                raise ParseError("coalgebra needs a list of basis names", where)
            n = len(basis)
            obj = Coalgebra(T(rows["comul"], (n, n, n)), T(rows["counit"], (n,)), basis, self.field,
                            where.split(".", 1)[1])
            canon["basis"] = basis
        elif kind == "heap":
            C = deps["coalgebra"]
            obj = HopfHeap(C, T(rows["bracket"], (C.dim,) * 4), where.split(".", 1)[1])
        elif kind == "hopf-algebra":
            C = deps["coalgebra"]
            n = C.dim
            obj = HopfAlgebra(C, T(rows["mul"], (n, n, n)), T(rows["unit"], (n,)),
                              T(rows["antipode"], (n, n)), where.split(".", 1)[1])
        elif kind == "element":
            obj = Element(deps["space"], T(rows["vector"], (_dim_of(deps["space"]),)))
        elif kind == "map":
            n = _dim_of(deps["space"])
            obj = LinearMap(deps["space"], T(rows["matrix"], (n, n)))
        elif kind == "rb-operator":
            hp = deps["heap"]
            obj = RBHeap(hp, T(rows["map"], (hp.dim, hp.dim)), where.split(".", 1)[1])
        elif kind == "cooperator":
            H = deps["hopf"]
            obj = RBCooperator(H, T(rows["map"], (H.dim, H.dim)), where.split(".", 1)[1])
        elif kind == "truss":
            hp = deps["heap"]
            obj = HopfTruss(hp, T(rows["circ"], (hp.dim,) * 3), where.split(".", 1)[1])
        elif kind == "brace":
            obj = HopfBrace(deps["dot"], deps["circ"], where.split(".", 1)[1])
        elif kind in ("heap-module", "hopf-module"):
            parent = deps["heap" if kind == "heap-module" else "hopf"]
            side = spec.get("side")
            if side not in ("left", "right"):
                raise ParseError("side must be 'left' or 'right'", where, str(side))
            basis = spec.get("basis")
            if not isinstance(basis, list):
                raise ParseError("module needs a list of basis names", where)
            n, m = parent.dim, len(basis)
            if kind == "heap-module":
                adims = (n, n, m, m) if side == "left" else (m, n, n, m)
                cls = HeapModule
            else:
                adims = (n, m, m) if side == "left" else (m, n, m)
                cls = HopfModule
            cdims = (m, n, m) if side == "left" else (m, m, n)
            obj = cls(parent, side, T(rows["action"], adims), T(rows["coaction"], cdims), basis,
                      where.split(".", 1)[1])
            canon["side"] = side
            canon["basis"] = basis
        elif kind == "rb-module":
            mod = deps["module"]
            obj = RBHeapModule(mod, T(rows["map"], (mod.dim, mod.dim)), deps["rb"], where.split(".", 1)[1])
        else:  # pragma: no cover - guarded by _SCHEMA
            raise ParseError("unknown kind", where, kind)
        for t in _SCHEMA[kind][1]:
            canon[t] = _canonical_rows(self._tensor(rows[t], _tensor_dims(obj, kind, t)))
        return obj, canon


def _tensor_dims(obj, kind, t):
    return {
        ("coalgebra", "comul"): lambda: obj.comul.dims,
        ("coalgebra", "counit"): lambda: obj.counit.dims,
        ("heap", "bracket"): lambda: obj.chi.dims,
        ("hopf-algebra", "mul"): lambda: obj.mul.dims,
        ("hopf-algebra", "unit"): lambda: obj.unit.dims,
        ("hopf-algebra", "antipode"): lambda: obj.antipode.dims,
        ("element", "vector"): lambda: obj.vector.dims,
        ("map", "matrix"): lambda: obj.matrix.dims,
        ("rb-operator", "map"): lambda: obj.B.dims,
        ("cooperator", "map"): lambda: obj.B.dims,
        ("truss", "circ"): lambda: obj.circ.dims,
        ("heap-module", "action"): lambda: obj.action.dims,
        ("heap-module", "coaction"): lambda: obj.coaction.dims,
        ("hopf-module", "action"): lambda: obj.action.dims,
        ("hopf-module", "coaction"): lambda: obj.coaction.dims,
        ("rb-module", "map"): lambda: obj.T.dims,
    }[(kind, t)]()


def _canonical_rows(t: SparseTensor) -> list:
    return [list(idx) + [format_scalar(v)] for idx, v in sorted(t.items())]


def parse_bundle(text: str, field_override: FieldSpec | None = None, name: str = "bundle") -> Bundle:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}",
                         text[exc.pos:exc.pos + 10] or None) from exc
    if not isinstance(doc, dict):
        raise ParseError("bundle must be a JSON object", "top level")
    if doc.get("format", FORMAT) != FORMAT:
        raise ParseError("unsupported bundle format", "format", str(doc.get("format")))
    fld = field_override
    if fld is None:
        fld_text = doc.get("field", "Q")
        if not isinstance(fld_text, str):
            raise ParseError("field must be a string", "field", str(fld_text))
        fld = FieldSpec.parse(fld_text)
    return _Loader(doc, fld, doc.get("name", name)).run()


def resolve_path(path: str | Path) -> Path:
    """Find a bundle file, accepting a missing ``.json`` suffix and ``corpus/<name>``."""
    p = Path(path)
    candidates = [p, p.with_name(p.name + ".json")]
    if p.parts and p.parts[0] == "corpus":
        rest = Path(*p.parts[1:]) if len(p.parts) > 1 else Path()
        candidates += [CORPUS_DIR / rest, CORPUS_DIR / rest.with_name(rest.name + ".json")]
    for c in candidates:
        if c.is_file():
            return c
    raise FileNotFoundError(f"no bundle file at {path}")


def load_bundle(path: str | Path, field_override: FieldSpec | None = None) -> Bundle:
    p = resolve_path(path)
    return parse_bundle(p.read_text(encoding="utf-8"), field_override, p.stem)


def _dump_value(value, indent: int) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_dump_value(v, indent + 1)}"
                 for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list):
        if all(not isinstance(v, (list, dict)) for v in value):
            return "[" + ", ".join(json.dumps(v, ensure_ascii=False) for v in value) + "]"
        items = [f"{inner}{_dump_value(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(value, ensure_ascii=False)


def dump_bundle(bundle: Bundle) -> str:
    doc = {"format": FORMAT, "name": bundle.name}
    if bundle.note:
        doc["note"] = bundle.note
    doc["field"] = str(bundle.field)
    doc["objects"] = bundle.raw
    return _dump_value(doc, 0) + "\n"


def dumps_json(value) -> str:
    """Deterministic JSON text with scalar-only lists kept on one line."""
    return _dump_value(value, 0) + "\n"


class BundleBuilder:
    """Assemble a bundle from live objects, adding their dependencies by name."""

    def __init__(self, name: str, fld: FieldSpec, note: str = ""):
        self.name = name
        self.field = fld
        self.note = note
        self.raw: dict = {}
        self.objects: dict = {}
        self._names: dict = {}

    def _fresh(self, base: str) -> str:
        base = base or "obj"
        name, k = base, 2
        while name in self.raw:
            name, k = f"{base}_{k}", k + 1
        return name

    def add(self, obj, name: str | None = None) -> str:
        if id(obj) in self._names:
            return self._names[id(obj)]
        spec = self._encode(obj)
        oname = self._fresh(name or getattr(obj, "name", "") or spec["kind"])
        self.raw[oname] = spec
        self.objects[oname] = obj
        self._names[id(obj)] = oname
        return oname

    def _encode(self, obj) -> dict:
        R = _canonical_rows
        if isinstance(obj, Coalgebra):
            return {"kind": "coalgebra", "basis": list(obj.basis),
                    "comul": R(obj.comul), "counit": R(obj.counit)}
        if isinstance(obj, HopfHeap):
            return {"kind": "heap", "coalgebra": self.add(obj.coalg), "bracket": R(obj.chi)}
        if isinstance(obj, HopfAlgebra):
            return {"kind": "hopf-algebra", "coalgebra": self.add(obj.coalg), "mul": R(obj.mul),
                    "unit": R(obj.unit), "antipode": R(obj.antipode)}
        if isinstance(obj, Element):
            return {"kind": "element", "space": self.add(obj.space), "vector": R(obj.vector)}
        if isinstance(obj, LinearMap):
            return {"kind": "map", "space": self.add(obj.space), "matrix": R(obj.matrix)}
        if isinstance(obj, RBHeap):
            return {"kind": "rb-operator", "heap": self.add(obj.heap), "map": R(obj.B)}
        if isinstance(obj, RBCooperator):
            return {"kind": "cooperator", "hopf": self.add(obj.hopf), "map": R(obj.B)}
        if isinstance(obj, HopfTruss):
            return {"kind": "truss", "heap": self.add(obj.heap), "circ": R(obj.circ)}
        if isinstance(obj, HopfBrace):
            return {"kind": "brace", "dot": self.add(obj.dot), "circ": self.add(obj.circ)}
        if isinstance(obj, HeapModule):
            return {"kind": "heap-module", "heap": self.add(obj.parent), "side": obj.side,
                    "basis": list(obj.basis), "action": R(obj.action), "coaction": R(obj.coaction)}
        if isinstance(obj, HopfModule):
            return {"kind": "hopf-module", "hopf": self.add(obj.parent), "side": obj.side,
                    "basis": list(obj.basis), "action": R(obj.action), "coaction": R(obj.coaction)}
        if isinstance(obj, RBHeapModule):
            return {"kind": "rb-module", "module": self.add(obj.module), "rb": self.add(obj.rb),
                    "map": R(obj.T)}
        raise TypeError(f"cannot serialize {type(obj).__name__}")

    def build(self) -> Bundle:
        return Bundle(self.name, self.field, self.note, dict(self.objects), dict(self.raw))
