"""Verification reports and exact identity comparison."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .kernel import Scalar, SparseTensor, format_scalar

PASS = "pass"
FAIL = "fail"


@dataclass
class Check:
    check_id: str
    status: str
    witness: dict | None = None
    note: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        out = {"check": self.check_id, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    subject: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: VerificationReport, prefix: str | None = None) -> None:
        for c in other.checks:
            cid = f"{prefix}/{c.check_id}" if prefix else c.check_id
            self.checks.append(Check(cid, c.status, c.witness, c.note))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def get(self, check_id: str) -> Check:
        for c in self.checks:
            if c.check_id == check_id:
                return c
        raise KeyError(check_id)

    def passed(self, check_id: str) -> bool:
        return self.get(check_id).ok

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "status": PASS if self.ok else FAIL,
            "checks": [c.to_dict() for c in self.checks],
        }

    def __str__(self) -> str:
        lines = [f"{self.subject}: {PASS if self.ok else FAIL}"]
        for c in self.checks:
            lines.append(f"  [{c.status}] {c.check_id}")
            if c.witness:
                for k, v in c.witness.items():
                    lines.append(f"      {k}: {v}")
            if c.note:
                lines.append(f"      note: {c.note}")
        return "\n".join(lines)


def _coeff_str(c: Scalar) -> str:
    s = format_scalar(c)
    return f"({s})" if c.d is not None else s


def render_element(t: SparseTensor, names: Sequence[Sequence[str]]) -> str:
    """Formal sum such as ``-1*u⊗θ + 1*θ⊗u`` for a tensor over named bases."""
    if t.is_zero():
        return "0"
    terms = []
    for idx, v in sorted(t.items()):
        label = "⊗".join(names[leg][i] for leg, i in enumerate(idx)) if idx else "1"
        terms.append(f"{_coeff_str(v)}*{label}")
    return " + ".join(terms)


def _default_names(n: int) -> list[str]:
    return [f"e{i}" for i in range(n)]


def compare(
    check_id: str,
    lhs: SparseTensor,
    rhs: SparseTensor,
    n_inputs: int,
    names: Sequence[Sequence[str]] | None = None,
    slots: Sequence[int] | None = None,
) -> Check:
    """Compare two tensors whose first ``n_inputs`` legs are arguments.

    On failure the witness is the lexicographically smallest argument tuple
    where the two sides differ, together with both output values there.
    ``slots`` re-lists argument positions for display, e.g. ``(0, 0, 1)``
    shows the arguments ``(c, a)`` of ``[c_1, c_2, a]`` as three bracket slots.
    """
    if lhs.dims != rhs.dims:
        return Check(check_id, FAIL, note=f"shape mismatch {lhs.dims} vs {rhs.dims}")
    diff = lhs - rhs
    if diff.is_zero():
        return Check(check_id, PASS)
    if names is None:
        names = [_default_names(n) for n in lhs.dims]
    bad = min(k[:n_inputs] for k in diff.entries)
    l_slice, r_slice = lhs, rhs
    for i in bad:
        l_slice = l_slice.slice(0, i)
        r_slice = r_slice.slice(0, i)
    out_names = names[n_inputs:]
    labels = [names[leg][i] for leg, i in enumerate(bad)]
    if slots is not None:
        labels = [labels[k] for k in slots]
    witness = {
        "args": list(labels),
        "lhs": render_element(l_slice, out_names),
        "rhs": render_element(r_slice, out_names),
    }
    return Check(check_id, FAIL, witness=witness)


def boolean_check(check_id: str, ok: bool, note: str | None = None) -> Check:
    return Check(check_id, PASS if ok else FAIL, note=None if ok else note)
