"""Exact rational dense matrices and the tensor calculus built on them.

A ``RatMat`` stores an integer numerator array and one positive common
denominator, kept in lowest terms. Entries come out as ``fractions.Fraction``.
A linear map V -> W with dim V = n, dim W = m is an m x n matrix acting on
column vectors.

Tensor convention: the basis vector e_i (x) e_j of A (x) B has index
``i * dim(B) + j``; more generally tuples of factor indices are flattened
row-major, so column order is lexicographic order of basis tuples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import FactorizationError, SingularError


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


class RatMat:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("num", "den")

    def __init__(self, num, den: int = 1):
        given = num
        num = np.asarray(num)
        if num.ndim != 2:
            raise ValueError(f"RatMat needs a 2-D array, got shape {num.shape}")
        if num.dtype != object and not np.issubdtype(num.dtype, np.integer):
            raise TypeError(f"numerators must be integers, got {num.dtype}")
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        num = kernels.to_compact(num)
        if den != 1:
            g = math.gcd(den, _content(num))
            if g > 1:
                num = num // g
                den //= g
        if num.size == 0:
            den = 1
        if num is given and num.flags.writeable:
            num = num.copy()
        num.flags.writeable = False
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMat":
        rows = [[Fraction(x) for x in row] for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        den = reduce(_lcm, (x.denominator for r in rows for x in r), 1)
        num = np.array(
            [[x.numerator * (den // x.denominator) for x in r] for r in rows], dtype=object
        ).reshape(len(rows), cols)
        return cls(num, den)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable) -> "RatMat":
        entries = [Fraction(x) for x in entries]
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        return cls.from_rows([entries[i * cols : (i + 1) * cols] for i in range(rows)], cols)

    # -- basic protocol ----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.num.shape

    @property
    def rows(self) -> int:
        return self.num.shape[0]

    @property
    def cols(self) -> int:
        return self.num.shape[1]

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return Fraction(int(self.num[i, j]), self.den)

    def entries(self) -> list[Fraction]:
        return [Fraction(int(x), self.den) for x in self.num.ravel()]

    def tolist(self) -> list[list[Fraction]]:
        return [[Fraction(int(x), self.den) for x in row] for row in self.num]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMat):
            return NotImplemented
        return self.shape == other.shape and self.den == other.den and np.array_equal(self.num, other.num)

    __hash__ = None

    def __repr__(self) -> str:
        if self.num.size <= 64:
            body = "; ".join(" ".join(_fmt(x) for x in row) for row in self.tolist())
            return f"RatMat({self.rows}x{self.cols}: [{body}])"
        return f"RatMat({self.rows}x{self.cols}, den={self.den})"

    # -- arithmetic --------------------------------------------------------

    def __matmul__(self, other: "RatMat") -> "RatMat":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return RatMat(kernels.matmul(self.num, other.num), self.den * other.den)

    def _aligned(self, other: "RatMat"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        den = _lcm(self.den, other.den)
        a = _scale_int(self.num, den // self.den)
        b = _scale_int(other.num, den // other.den)
        if a.dtype != b.dtype or kernels.maxabs(a) + kernels.maxabs(b) >= kernels.INT64_SAFE:
            a, b = a.astype(object), b.astype(object)
        return a, b, den

    def __add__(self, other: "RatMat") -> "RatMat":
        a, b, den = self._aligned(other)
        return RatMat(a + b, den)

    def __sub__(self, other: "RatMat") -> "RatMat":
        a, b, den = self._aligned(other)
        return RatMat(a - b, den)

    def __neg__(self) -> "RatMat":
        return RatMat(-self.num, self.den)

    def scale(self, c) -> "RatMat":
        c = Fraction(c)
        return RatMat(_scale_int(self.num, c.numerator), self.den * c.denominator)

    @property
    def T(self) -> "RatMat":
        return RatMat(self.num.T.copy(), self.den)

    def is_zero(self) -> bool:
        return not np.any(self.num)

    def cols_at(self, idx: Sequence[int]) -> "RatMat":
        return RatMat(self.num[:, list(idx)], self.den)

    def rows_at(self, idx: Sequence[int]) -> "RatMat":
        return RatMat(self.num[list(idx), :], self.den)

    def column(self, j: int) -> list[Fraction]:
        return [Fraction(int(x), self.den) for x in self.num[:, j]]

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {"rows": str(self.rows), "cols": str(self.cols), "entries": [_fmt(x) for x in self.entries()]}

    @classmethod
    def from_json(cls, obj: dict) -> "RatMat":
        return cls.from_entries(int(obj["rows"]), int(obj["cols"]), [parse_rat(s) for s in obj["entries"]])


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


format_rat = _fmt


def parse_rat(s) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; integers are accepted too. Raises ValueError."""
    if isinstance(s, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError(f"expected a rational string, got {type(s).__name__}")
    text = s.strip()
    if "/" in text:
        p, q = text.split("/", 1)
        if int(q) == 0:
            raise ValueError(f"zero denominator in {s!r}")
        return Fraction(int(p), int(q))
    return Fraction(int(text))


def _content(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return math.gcd(*(int(x) for x in a.ravel()))
    return int(np.gcd.reduce(a.ravel()))


def _scale_int(a: np.ndarray, k: int) -> np.ndarray:
    if k == 1:
        return a
    if a.dtype != object and kernels.maxabs(a) * abs(k) < kernels.INT64_SAFE:
        return a * k
    return a.astype(object) * k


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def identity(n: int) -> RatMat:
    return RatMat(np.eye(n, dtype=np.int64))


def zeros(m: int, n: int) -> RatMat:
    return RatMat(np.zeros((m, n), dtype=np.int64))


def from_int(a) -> RatMat:
    return RatMat(np.asarray(a, dtype=np.int64) if not isinstance(a, np.ndarray) else a)


def basis_vector(n: int, i: int) -> RatMat:
    v = np.zeros((n, 1), dtype=np.int64)
    v[i, 0] = 1
    return RatMat(v)


def hstack(mats: Sequence[RatMat]) -> RatMat:
    den = reduce(_lcm, (m.den for m in mats), 1)
    return RatMat(np.hstack([_scale_int(m.num, den // m.den).astype(object) for m in mats]), den)


def vstack(mats: Sequence[RatMat]) -> RatMat:
    den = reduce(_lcm, (m.den for m in mats), 1)
    return RatMat(np.vstack([_scale_int(m.num, den // m.den).astype(object) for m in mats]), den)


# ---------------------------------------------------------------------------
# tensor calculus
# ---------------------------------------------------------------------------

def kron(f: RatMat, g: RatMat) -> RatMat:
    """Matrix of f (x) g; the left factor is the major index."""
    a, b = f.num, g.num
    if a.dtype == object or b.dtype == object or kernels.maxabs(a) * kernels.maxabs(b) >= kernels.INT64_SAFE:
        a, b = a.astype(object), b.astype(object)
    return RatMat(np.kron(a, b), f.den * g.den)


def kron_all(*mats: RatMat) -> RatMat:
    return reduce(kron, mats)


@dataclass(frozen=True)
class FactorPerm:
    """Permutation of tensor factors: input factor i lands at output position placement[i] (1-based)."""

    dims: tuple[int, ...]
    placement: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "placement", tuple(int(p) for p in self.placement))
        if len(self.dims) != len(self.placement):
            raise ValueError("dims and placement differ in length")
        if sorted(self.placement) != list(range(1, len(self.dims) + 1)):
            raise ValueError(f"placement {self.placement} is not a permutation of 1..{len(self.dims)}")
        if any(d <= 0 for d in self.dims):
            raise ValueError("factor dimensions must be positive")

    @property
    def out_dims(self) -> tuple[int, ...]:
        out = [0] * len(self.dims)
        for i, p in enumerate(self.placement):
            out[p - 1] = self.dims[i]
        return tuple(out)

    @property
    def size(self) -> int:
        return math.prod(self.dims)

    def then(self, other: "FactorPerm") -> "FactorPerm":
        """The permutation ``other`` applied after ``self``."""
        if other.dims != self.out_dims:
            raise ValueError("factor dimensions do not compose")
        return FactorPerm(self.dims, tuple(other.placement[p - 1] for p in self.placement))

    @classmethod
    def identity(cls, dims: Sequence[int]) -> "FactorPerm":
        return cls(tuple(dims), tuple(range(1, len(dims) + 1)))


def braid(word: str, dims: Sequence[int]) -> FactorPerm:
    """``braid("1342", dims)`` is the symbol c_1342 on factors of the given dims."""
    return FactorPerm(tuple(dims), tuple(int(ch) for ch in word))


def _axes_rows(p: FactorPerm) -> list[int]:
    inv = [0] * len(p.dims)
    for i, pos in enumerate(p.placement):
        inv[pos - 1] = i
    return inv


def permute_rows(p: FactorPerm, x: RatMat) -> RatMat:
    """``perm_matrix(p) @ x`` without building the permutation matrix."""
    if x.rows != p.size:
        raise ValueError(f"{x.rows} rows cannot carry factors {p.dims}")
    t = x.num.reshape(*p.dims, x.cols)
    t = t.transpose(*_axes_rows(p), len(p.dims))
    return RatMat(t.reshape(p.size, x.cols), x.den)


def permute_cols(x: RatMat, p: FactorPerm) -> RatMat:
    """``x @ perm_matrix(p)`` without building the permutation matrix."""
    if x.cols != p.size:
        raise ValueError(f"{x.cols} columns cannot carry factors {p.out_dims}")
    t = x.num.reshape(x.rows, *p.out_dims)
    t = t.transpose(0, *p.placement)
    return RatMat(t.reshape(x.rows, p.size), x.den)


def perm_matrix(p: FactorPerm) -> RatMat:
    return permute_rows(p, identity(p.size))


def swap(m: int, n: int) -> RatMat:
    """The symmetric braiding c: M (x) N -> N (x) M."""
    return perm_matrix(FactorPerm((m, n), (2, 1)))


def left_apply(f: RatMat, x: RatMat, left: int = 1, right: int = 1) -> RatMat:
    """``(1_left (x) f (x) 1_right) @ x`` without forming the Kronecker product."""
    if x.rows != left * f.cols * right:
        raise ValueError(f"cannot apply {f.shape} at ({left},{right}) to {x.shape}")
    t = x.num.reshape(left, f.cols, right, x.cols)
    out = kernels.einsum("ab,lbrk->lark", f.num, t)
    return RatMat(out.reshape(left * f.rows * right, x.cols), f.den * x.den)


def right_apply(x: RatMat, f: RatMat, left: int = 1, right: int = 1) -> RatMat:
    """``x @ (1_left (x) f (x) 1_right)`` without forming the Kronecker product."""
    if x.cols != left * f.rows * right:
        raise ValueError(f"cannot compose {x.shape} with {f.shape} at ({left},{right})")
    t = x.num.reshape(x.rows, left, f.rows, right)
    out = kernels.einsum("mlar,ab->mlbr", t, f.num)
    return RatMat(out.reshape(x.rows, left * f.cols * right), f.den * x.den)


def contract(spec: str, operands: Sequence[tuple[RatMat, Sequence[int]]], rows: int) -> RatMat:
    """Exact einsum over reshaped matrices.

    Each operand is ``(matrix, shape)``; the matrix numerators are reshaped to
    ``shape`` before contraction and the result is flattened to ``rows`` rows.
    """
    arrays = []
    den = 1
    for m, shape in operands:
        arrays.append(m.num.reshape(tuple(shape)))
        den *= m.den
    out = kernels.einsum(spec, *arrays)
    return RatMat(out.reshape(rows, -1), den)


# ---------------------------------------------------------------------------
# row reduction and its consumers
# ---------------------------------------------------------------------------

def rref(f: RatMat) -> tuple[RatMat, list[int]]:
    """Rational reduced row echelon form (zero rows dropped) and pivot columns."""
    red, piv = kernels.rref(f.num)
    red = red[: len(piv)]
    if not piv:
        return RatMat(np.zeros((0, f.cols), dtype=np.int64)), []
    pvals = [int(red[r, c]) for r, c in enumerate(piv)]
    den = reduce(_lcm, pvals, 1)
    scaled = np.vstack([_scale_int(red[r : r + 1], den // pv).astype(object) for r, pv in enumerate(pvals)])
    return RatMat(scaled, den), piv


def rank(f: RatMat) -> int:
    return len(kernels.rref(f.num)[1])


def cokernel(f: RatMat) -> tuple[RatMat, int]:
    """Canonical projection onto coker(f) = Q^m / im(f).

    The quotient basis is the set of coordinate vectors e_j chosen greedily
    from the left: e_j is kept when it is independent of im(f) together with
    the previously kept vectors. Column j of the projection is the coordinate
    vector of the class of e_j in that basis.
    """
    m = f.rows
    if m == 0:
        return RatMat(np.zeros((0, 0), dtype=np.int64)), 0
    rev = f.num.T[:, ::-1]
    red, piv = kernels.rref(np.ascontiguousarray(rev))
    piv_orig = {m - 1 - c for c in piv}
    keep = [j for j in range(m) if j not in piv_orig]
    pos = {j: k for k, j in enumerate(keep)}
    d = len(keep)
    pvals = [int(red[r, c]) for r, c in enumerate(piv)]
    den = reduce(_lcm, pvals, 1)
    proj = np.zeros((d, m), dtype=object)
    for j in keep:
        proj[pos[j], j] = den
    for r, c in enumerate(piv):
        scale = den // pvals[r]
        target = m - 1 - c
        row = red[r]
        for cc in np.flatnonzero(row):
            cc = int(cc)
            if cc == c:
                continue
            proj[pos[m - 1 - cc], target] = -int(row[cc]) * scale
    return RatMat(proj, den), d


def try_inverse(f: RatMat) -> RatMat:
    """Exact inverse of a square matrix; SingularError when rank is deficient."""
    n, k = f.shape
    if n != k:
        raise ValueError(f"matrix is not square: {f.shape}")
    if n == 0:
        return f
    aug = hstack([f, identity(n)])
    red, piv = rref(aug)
    if len(piv) < n or piv[n - 1] != n - 1:
        raise SingularError(f"singular {n}x{n} matrix (rank {sum(1 for c in piv if c < n)})")
    return RatMat(red.num[:, n:], red.den)


def factor_through_surjection(f: RatMat, p: RatMat) -> RatMat:
    """The unique g with ``g @ p == f``.

    ``p`` must be surjective. Raises FactorizationError when ker(p) is not
    contained in ker(f); the identity g @ p == f is checked exactly before
    returning.
    """
    if f.cols != p.cols:
        raise ValueError(f"column mismatch: f is {f.shape}, p is {p.shape}")
    _, piv = rref(p)
    if len(piv) != p.rows:
        raise ValueError(f"p is not surjective (rank {len(piv)} < {p.rows})")
    g = f.cols_at(piv) @ try_inverse(p.cols_at(piv))
    if g @ p != f:
        raise FactorizationError(
            f"map of shape {f.shape} does not factor through surjection of shape {p.shape}"
        )
    return g


def is_surjective(f: RatMat) -> bool:
    return rank(f) == f.rows
