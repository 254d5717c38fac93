"""Generate the shipped corpus bundles.

Run ``python -m hopfheap.corpus [DIR]`` to rewrite them; the test-suite checks
that the shipped files match this generator byte for byte.
"""

from __future__ import annotations

import sys
from pathlib import Path

from .bundle import CORPUS_DIR, BundleBuilder, Element, dump_bundle
from .catalog import (
    QI,
    cyclic_group_algebra,
    sweedler_algebra,
    trig_heap,
    trig_rb_kill_u,
    trig_rb_negate_u,
)
from .coalg import find_grouplikes
from .heap import heap_from_hopf
from .hmodule import free_heap_module, self_module
from .kernel import SparseTensor
from .rota import RBHeap, RBHeapModule
from .truss import HopfBrace


def _trig_base(b: BundleBuilder):
    hp = trig_heap(QI)
    b.add(hp.coalg, "C")
    b.add(hp, "Hp")
    x_minus, x_plus = (g.vector for g in find_grouplikes(hp.coalg))
    b.add(Element(hp, x_plus), "x_plus")
    b.add(Element(hp, x_minus), "x_minus")
    return hp


def trig2():
    b = BundleBuilder("trig2", QI, "two-dimensional commutative Hopf heap on (u, θ) "
                      "with two Rota-Baxter operators")
    hp = _trig_base(b)
    b.add(RBHeap(hp, trig_rb_kill_u()), "B_i")
    b.add(RBHeap(hp, trig_rb_negate_u()), "B_ii")
    return b.build()


def trig2_modules():
    b = BundleBuilder("trig2-modules", QI, "free heap modules on both sides and a "
                      "Rota-Baxter self-module over the (u, θ) heap")
    hp = _trig_base(b)
    rb = RBHeap(hp, trig_rb_negate_u())
    b.add(rb, "B_ii")
    b.add(free_heap_module(hp, 1, "left"), "free_left")
    b.add(free_heap_module(hp, 1, "right"), "free_right")
    selfmod = self_module(hp, "right")
    b.add(selfmod, "self_right")
    b.add(RBHeapModule(selfmod, trig_rb_negate_u(), rb), "self_rb")
    return b.build()


def group_algebra(n: int):
    H = cyclic_group_algebra(n, QI)
    b = BundleBuilder(f"z{n}", QI, f"group algebra of the cyclic group of order {n}")
    b.add(H.coalg, "C")
    b.add(H, "H")
    if n == 2:
        b.add(HopfBrace(H, H), "brace")
        hp = heap_from_hopf(H)
        b.add(hp, "Hp")
        b.add(free_heap_module(hp, 2, "left"), "free_left")
        b.add(free_heap_module(hp, 2, "right"), "free_right")
        b.add(RBHeap(hp, SparseTensor.identity(2)), "B_id")
    return b.build()


def sweedler():
    H = sweedler_algebra(QI)
    b = BundleBuilder("sweedler", QI, "Sweedler's four-dimensional Hopf algebra")
    b.add(H.coalg, "C")
    b.add(H, "H")
    return b.build()


def all_bundles():
    return [trig2(), trig2_modules(), group_algebra(2), group_algebra(3), sweedler()]


def write_corpus(directory: Path = CORPUS_DIR) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for bundle in all_bundles():
        path = directory / f"{bundle.name}.json"
        path.write_text(dump_bundle(bundle), encoding="utf-8")
        out.append(path)
    return out


if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else CORPUS_DIR
    for p in write_corpus(target):
        print(p)
