"""Named pass/fail checks with reproducible witnesses."""

from __future__ import annotations

import contextvars
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .linalg import RatMat, format_rat

# When set, failing checks list every failing basis tuple, not only the first.
all_witnesses: contextvars.ContextVar[bool] = contextvars.ContextVar("all_witnesses", default=False)


@dataclass
class Check:
    name: str
    passed: bool
    witness: dict | None = None

    def to_json(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class CheckReport:
    """Ordered collection of checks; names are unique within a report."""

    checks: list[Check] = field(default_factory=list)
    artifacts: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def add(self, check: Check) -> Check:
        if any(c.name == check.name for c in self.checks):
            raise ValueError(f"duplicate check name {check.name!r}")
        if check.passed and check.witness is not None:
            raise ValueError(f"passing check {check.name!r} carries a witness")
        if not check.passed and check.witness is None:
            check.witness = {}
        self.checks.append(check)
        return check

    def record(self, name: str, passed: bool, witness: dict | None = None) -> Check:
        return self.add(Check(name, bool(passed), None if passed else (witness or {})))

    def merge(self, other: "CheckReport", prefix: str = "") -> "CheckReport":
        for c in other.checks:
            self.add(Check(prefix + c.name, c.passed, c.witness))
        self.notes.extend(other.notes)
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def names(self) -> list[str]:
        return [c.name for c in self.checks]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"passed": self.passed, "checks": [c.to_json() for c in self.checks]}
        if self.notes:
            out["notes"] = list(self.notes)
        if self.artifacts:
            out["artifacts"] = self.artifacts
        return out

    def summary(self) -> str:
        lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}" for c in self.checks]
        return "\n".join(lines)


def unravel(index: int, dims: Sequence[int]) -> list[int]:
    if not dims:
        return []
    return [int(i) for i in np.unravel_index(int(index), tuple(dims))]


def _sparse_column(m: RatMat, j: int, dims: Sequence[int] | None) -> list:
    out = []
    for i in np.flatnonzero(m.num[:, j]):
        key = unravel(i, dims) if dims else [int(i)]
        out.append([key, format_rat(m[int(i), j])])
    return out


def compare_maps(
    name: str,
    lhs: RatMat,
    rhs: RatMat,
    in_dims: Sequence[int] | None = None,
    out_dims: Sequence[int] | None = None,
) -> Check:
    """Exact equality of two linear maps, witnessed by the first differing basis tuple."""
    if lhs.shape != rhs.shape:
        return Check(name, False, {"shape": [list(lhs.shape), list(rhs.shape)]})
    diff = lhs - rhs
    bad = np.flatnonzero(np.any(diff.num != 0, axis=0))
    if bad.size == 0:
        return Check(name, True)
    j = int(bad[0])
    in_dims = list(in_dims) if in_dims else [lhs.cols]
    witness: dict[str, Any] = {
        "basis": unravel(j, in_dims),
        "lhs": _sparse_column(lhs, j, out_dims),
        "rhs": _sparse_column(rhs, j, out_dims),
    }
    if all_witnesses.get():
        witness["all"] = [unravel(int(k), in_dims) for k in bad]
    return Check(name, False, witness)


def compare_tables(name: str, lhs: np.ndarray, rhs: np.ndarray) -> Check:
    """Exact equality of two integer tables of the same shape."""
    bad = np.flatnonzero(np.asarray(lhs) != np.asarray(rhs))
    if bad.size == 0:
        return Check(name, True)
    k = int(bad[0])
    idx = unravel(k, lhs.shape)
    witness: dict[str, Any] = {"tuple": idx, "lhs": int(lhs.ravel()[k]), "rhs": int(rhs.ravel()[k])}
    if all_witnesses.get():
        witness["all"] = [unravel(int(b), lhs.shape) for b in bad]
    return Check(name, False, witness)
