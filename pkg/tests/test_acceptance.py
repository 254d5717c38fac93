"""Acceptance criteria, one test each; every test records a pass/fail line.

Run ``pytest tests/test_acceptance.py`` to see the lines in the terminal
summary, or ``python3 tests/test_acceptance.py`` to print them directly.
"""

import functools
import itertools
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES  # noqa: E402
from oracles import descendent_comul_naive, grouplikes_by_solve, sympy_vector  # noqa: E402

from hopfheap.bundle import CORPUS_DIR, load_bundle  # noqa: E402
from hopfheap.catalog import QI, trig_coalgebra  # noqa: E402
from hopfheap.cli import main  # noqa: E402
from hopfheap.coalg import find_grouplikes, is_grouplike, verify_coalgebra  # noqa: E402
from hopfheap.errors import NotSurjective  # noqa: E402
from hopfheap.heap import (  # noqa: E402
    HopfAlgebra,
    HopfHeap,
    grunspan_map,
    heap_from_hopf,
    hopf_from_heap,
    is_commutative_heap,
    verify_exchange_identity,
    verify_grunspan_identity,
    verify_hopf_heap,
    verify_translation_laws,
)
from hopfheap.hmodule import (  # noqa: E402
    HeapModule,
    free_heap_module,
    self_module,
    structure_iso,
    structure_source,
    verify_module_hom,
    verify_right_commutative_identities,
)
from hopfheap.kernel import FieldSpec, Scalar, SparseTensor, compose, einsum  # noqa: E402
from hopfheap.rota import (  # noqa: E402
    RBHeap,
    RBHeapModule,
    descendent_heap,
    epsilon_collapse,
    induced_rb_module,
    rb_structure_iso,
    verify_descendent_conjugation,
    verify_rb_heap,
    verify_rb_heap_module,
)
from hopfheap.truss import (  # noqa: E402
    HopfTruss,
    alpha_truss,
    brace_truss_convert,
    cocycle_form,
    trivial_truss,
    verify_hopf_truss,
    verify_truss_cocycle_form,
)

I = Scalar(0, 1, -1)
X_PLUS = SparseTensor.vector([I, 1])
ID2 = SparseTensor.identity(2)
CORPUS = {p.stem: load_bundle(p) for p in sorted(CORPUS_DIR.glob("*.json"))}


def _objects(kind_type):
    for bname, bundle in CORPUS.items():
        for oname, obj in bundle.objects.items():
            if type(obj) is kind_type:
                yield f"{bname}/{oname}", obj


def corpus_heaps():
    """Every heap in the corpus plus the heap of every corpus Hopf algebra."""
    seen = []
    for name, hp in _objects(HopfHeap):
        seen.append((name, hp))
    for name, H in _objects(HopfAlgebra):
        seen.append((f"Hp({name})", heap_from_hopf(H)))
    return seen


def _record(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def test(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                ACCEPTANCE_LINES.append(f"criterion {number:2d}: FAIL  {title}")
                raise
            ACCEPTANCE_LINES.append(f"criterion {number:2d}: pass  {title}")
        test.__doc__ = title
        return test
    return wrap


@_record(1, "two-dimensional (u, θ) heap verifies and is commutative")
def test_criterion_01_example_heap():
    start = time.perf_counter()
    hp = CORPUS["trig2"].get("Hp")
    assert verify_coalgebra(hp.coalg).ok
    assert verify_hopf_heap(hp).ok
    assert is_commutative_heap(hp)
    assert time.perf_counter() - start < 1.0


@_record(2, "group-likes: none over Q, exactly θ ± √-1·u over Q(√-1)")
def test_criterion_02_grouplikes():
    C_q = trig_coalgebra(FieldSpec())
    assert find_grouplikes(C_q) == [] == grouplikes_by_solve(C_q)
    C = trig_coalgebra(QI)
    found = find_grouplikes(C)
    got = sorted((sympy_vector(g.vector) for g in found),
                 key=lambda v: [sympy.default_sort_key(c) for c in v])
    assert got == grouplikes_by_solve(C)
    assert {tuple(g.vector.to_list()) for g in found} == {(I, Scalar(1)), (-I, Scalar(1))}
    assert all(is_grouplike(C, g.vector) for g in found)


@_record(3, "Rota-Baxter operators pass; B(u) = θ fails bracket multiplicativity at (u,u,u)")
def test_criterion_03_rota_baxter():
    b = CORPUS["trig2"]
    for name in ("B_i", "B_ii"):
        rb = b.get(name)
        assert verify_rb_heap(rb.heap, rb.B).ok
    bad = SparseTensor.matrix([[0, 0], [1, 1]])
    check = verify_rb_heap(b.get("Hp"), bad).get("rb:bracket-multiplicative")
    assert not check.ok and check.witness["args"] == ["u", "u", "u"]


@_record(4, "heap -> Hopf algebra -> heap and Hopf algebra -> heap -> Hopf algebra round trips are exact")
def test_criterion_04_roundtrips():
    count = 0
    for _, hp in corpus_heaps():
        for g in find_grouplikes(hp.coalg):
            assert heap_from_hopf(hopf_from_heap(hp, g.vector)).chi == hp.chi
            count += 1
    assert count >= 2 + 2 + 3 + 2
    for name in ("z2", "z3", "sweedler"):
        H = CORPUS[name].get("H")
        back = hopf_from_heap(heap_from_hopf(H), H.unit)
        assert back.mul == H.mul and back.antipode == H.antipode


def _counit_one_vectors(hp, rng, extra=3):
    n = hp.dim
    e = hp.coalg.counit
    out = [SparseTensor.basis_vector(n, i).scale(e[(i,)].inv()) for i in range(n) if e[(i,)]]
    for _ in range(extra):
        v = [Scalar(Fraction(rng.randint(-5, 5), rng.randint(1, 3))) for _ in range(n)]
        total = sum((v[i] * e[(i,)] for i in range(n)), Scalar(0))
        pivot = next(i for i in range(n) if e[(i,)])
        v[pivot] = v[pivot] + (Scalar(1) - total) * e[(pivot,)].inv()
        out.append(SparseTensor.vector(v))
    return out


@_record(5, "Grunspan map is the identity on commutative heaps; its defining identity holds everywhere")
def test_criterion_05_grunspan():
    rng = random.Random(5)
    for _, hp in corpus_heaps():
        for f in _counit_one_vectors(hp, rng):
            assert verify_grunspan_identity(hp, f).ok
            if is_commutative_heap(hp):
                assert grunspan_map(hp, f) == SparseTensor.identity(hp.dim)


@_record(6, "translation composition laws hold on all basis choices")
def test_criterion_06_translations():
    assert verify_translation_laws(CORPUS["trig2"].get("Hp")).ok
    assert verify_translation_laws(CORPUS["z2"].get("Hp")).ok


@_record(7, "truss suite: trivial and alpha trusses, brace round trip, heap form matches cocycle form")
def test_criterion_07_truss():
    hp = CORPUS["trig2"].get("Hp")
    x = CORPUS["trig2"].get("x_plus").vector
    trusses = [trivial_truss(hp, x), alpha_truss(hp, ID2, "first"),
               alpha_truss(hp, einsum("l,a->la", x, hp.coalg.counit), "first")]
    for T in trusses:
        assert verify_hopf_truss(T).ok
    brace = CORPUS["z2"].get("brace")
    T = brace_truss_convert(brace, "to_truss")
    back = brace_truss_convert(T, "to_brace")
    for a, b in ((back.dot, brace.dot), (back.circ, brace.circ)):
        assert a.mul == b.mul and a.antipode == b.antipode and a.unit == b.unit
    trusses.append(T)
    trusses.append(HopfTruss(hp, SparseTensor((2, 2, 2), {(0, 0, 0): 1})))
    verdicts = set()
    for T in trusses:
        ok = verify_hopf_truss(T).ok
        verdicts.add(ok)
        for g in find_grouplikes(T.heap.coalg):
            assert verify_truss_cocycle_form(cocycle_form(T, g.vector)).ok == ok
    assert verdicts == {True, False}


def _theorem_modules():
    yield CORPUS["trig2"].get("Hp"), X_PLUS
    yield CORPUS["z2"].get("Hp"), SparseTensor.vector([1, 0])


@_record(8, "structure maps are mutually inverse and alpha is a module map")
def test_criterion_08_structure_theorem():
    for hp, x in _theorem_modules():
        mods = [self_module(hp, "left"), self_module(hp, "right")]
        mods += [free_heap_module(hp, k, side) for k in (1, 2) for side in ("left", "right")]
        for M in mods:
            iso = structure_iso(M, x)
            assert compose(iso.alpha, iso.beta) == SparseTensor.identity(M.dim)
            assert compose(iso.beta, iso.alpha) == SparseTensor.identity(iso.beta.dims[0])
            assert verify_module_hom(iso.alpha, structure_source(M, iso), M).ok
    for name, M in _objects(HeapModule):
        x = X_PLUS if name.startswith("trig2") else SparseTensor.vector([1, 0])
        iso = structure_iso(M, x)
        assert compose(iso.alpha, iso.beta) == SparseTensor.identity(M.dim)


@_record(9, "descendent heaps: Δ' = Δ for B_ii and id, B_i rejected, derived identities hold")
def test_criterion_09_descendent():
    b = CORPUS["trig2"]
    hp = b.get("Hp")
    for rb in (b.get("B_ii"), RBHeap(hp, ID2)):
        desc = descendent_heap(rb)
        assert desc.heap.coalg.comul == hp.coalg.comul
        assert descendent_comul_naive(hp.coalg, hp.chi, rb.B) == hp.coalg.comul
        assert desc.report.ok
        for psi in (ID2, b.get("B_ii").B):
            assert verify_descendent_conjugation(rb, psi).ok
    with pytest.raises(NotSurjective):
        descendent_heap(b.get("B_i"))


@_record(10, "Rota-Baxter modules: self-module, induced modules and the structure theorem")
def test_criterion_10_rb_modules():
    b = CORPUS["trig2-modules"]
    self_rb = b.get("self_rb")
    assert isinstance(self_rb, RBHeapModule)
    assert verify_rb_heap_module(self_rb).ok
    rb = b.get("B_ii")
    rng = random.Random(10)
    F_rand = SparseTensor((2, 2, 2), {idx: Scalar(Fraction(rng.randint(-6, 6), rng.randint(1, 5)),
                                                  Fraction(rng.randint(-2, 2)), -1)
                                      for idx in itertools.product(range(2), repeat=3)})
    for F in (epsilon_collapse(rb.heap, 1), SparseTensor.zeros((1, 2, 1)), F_rand):
        assert verify_rb_heap_module(induced_rb_module(rb, F)).ok
    res = rb_structure_iso(self_rb, b.get("x_plus").vector)
    for cid in ("rbstructure:image-in-coinvariants", "rbstructure:alpha-intertwines",
                "rbstructure:beta-intertwines"):
        assert res.report.passed(cid)
    assert res.report.ok


@_record(11, "exchange identity and commutative right-module identities on all commutative corpus objects")
def test_criterion_11_exchange():
    checked = 0
    for _, hp in corpus_heaps():
        if is_commutative_heap(hp):
            assert verify_exchange_identity(hp).ok
            checked += 1
    assert checked >= 4
    mods = [M for _, M in _objects(HeapModule)] + [m.module for _, m in _objects(RBHeapModule)]
    rights = [M for M in mods if M.side == "right" and is_commutative_heap(M.parent)]
    assert len(rights) >= 3
    for M in rights:
        assert verify_right_commutative_identities(M).ok


def _run_cli(argv):
    import contextlib
    import io
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue()


@_record(12, "CLI exit codes 0/1/2 and byte-identical structured reports")
def test_criterion_12_cli(tmp_path):
    bad_doc = json.loads((CORPUS_DIR / "trig2.json").read_text(encoding="utf-8"))
    bad_doc["objects"]["Hp"]["bracket"][1][-1] = "2"
    failing = tmp_path / "failing.json"
    failing.write_text(json.dumps(bad_doc), encoding="utf-8")
    bad_doc["objects"]["Hp"]["bracket"][1][-1] = "1/0"
    unparsable = tmp_path / "unparsable.json"
    unparsable.write_text(json.dumps(bad_doc), encoding="utf-8")
    matrix = [
        (["verify", "heap", "corpus/trig2"], 0),
        (["grouplikes", "corpus/trig2", "--field", "Q"], 0),
        (["report", "corpus/trig2-modules"], 0),
        (["descend", "corpus/trig2", "--rb", "B_ii"], 0),
        (["structure", "corpus/trig2-modules", "--module", "self_rb", "--x", "x_plus"], 0),
        (["descend", "corpus/trig2", "--rb", "B_i"], 1),
        (["verify", "heap", str(failing)], 1),
        (["construct", "cooperator", "corpus/trig2", "--name", "B_ii", "--x", "x_plus"], 1),
        (["verify", "heap", str(unparsable)], 2),
        (["verify", "heap", "corpus/absent"], 2),
        (["verify", "nonsense", "corpus/trig2"], 2),
    ]
    for argv, want in matrix:
        assert _run_cli(argv)[0] == want, argv
    for name in CORPUS:
        argv = ["report", f"corpus/{name}", "--format", "structured"]
        assert _run_cli(argv) == _run_cli(argv)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
