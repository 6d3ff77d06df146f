"""JSON structure files.

Every file carries a ``"kind"`` field. All numbers are written as strings
(rationals as "p/q" or "p"); plain JSON integers are accepted on input. Matrices are ``{"rows", "cols", "entries"}`` with row-major entries.
Errors are SchemaError with the JSON pointer of the offending field.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .coalg import Bimonoid, Comonoid, Herd, HopfMonoid
from .errors import SchemaError
from .linalg import RatMat, parse_rat
from .setcore import GroupTable, HeapTable
from .tannaka import Diagram
from .vflock import Comodule

KINDS = ("heap", "group", "comonoid", "bimonoid", "hopf", "herd", "comodule", "diagram")


# ---------------------------------------------------------------------------
# field readers
# ---------------------------------------------------------------------------


def _field(obj: dict, key: str, ptr: str) -> Any:
    if not isinstance(obj, dict):
        raise SchemaError("expected an object", ptr)
    if key not in obj:
        raise SchemaError(f"missing field {key!r}", f"{ptr}/{key}")
    return obj[key]


def _int(x, ptr: str, lo: int | None = None, hi: int | None = None) -> int:
    if isinstance(x, bool):
        raise SchemaError("expected an integer", ptr)
    if isinstance(x, str):
        try:
            x = int(x.strip())
        except ValueError:
            raise SchemaError(f"expected an integer, got {x!r}", ptr) from None
    if not isinstance(x, int):
        raise SchemaError(f"expected an integer, got {type(x).__name__}", ptr)
    if lo is not None and x < lo:
        raise SchemaError(f"value {x} is below {lo}", ptr)
    if hi is not None and x > hi:
        raise SchemaError(f"value {x} is above {hi}", ptr)
    return x


def _int_list(xs, ptr: str, length: int, lo: int, hi: int) -> list[int]:
    if not isinstance(xs, list):
        raise SchemaError("expected an array", ptr)
    if len(xs) != length:
        raise SchemaError(f"expected {length} entries, got {len(xs)}", ptr)
    return [_int(x, f"{ptr}/{i}", lo, hi) for i, x in enumerate(xs)]


def read_matrix(obj, ptr: str, shape: tuple[int, int] | None = None) -> RatMat:
    rows = _int(_field(obj, "rows", ptr), f"{ptr}/rows", 0)
    cols = _int(_field(obj, "cols", ptr), f"{ptr}/cols", 0)
    entries = _field(obj, "entries", ptr)
    if not isinstance(entries, list):
        raise SchemaError("expected an array", f"{ptr}/entries")
    if len(entries) != rows * cols:
        raise SchemaError(f"expected {rows * cols} entries, got {len(entries)}", f"{ptr}/entries")
    vals = []
    for i, s in enumerate(entries):
        try:
            vals.append(parse_rat(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(str(exc), f"{ptr}/entries/{i}") from None
    if shape is not None and (rows, cols) != shape:
        raise SchemaError(f"matrix is {rows}x{cols}, expected {shape[0]}x{shape[1]}", ptr)
    return RatMat.from_entries(rows, cols, vals)


# ---------------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------------


def _heap(obj, ptr: str) -> HeapTable:
    n = _int(_field(obj, "size", ptr), f"{ptr}/size", 0)
    q = _int_list(_field(obj, "q", ptr), f"{ptr}/q", n**3, 0, n - 1)
    return HeapTable(n, q)


def _group(obj, ptr: str) -> GroupTable:
    n = _int(_field(obj, "size", ptr), f"{ptr}/size", 1)
    mul = _int_list(_field(obj, "mul", ptr), f"{ptr}/mul", n * n, 0, n - 1)
    unit = _int(_field(obj, "unit", ptr), f"{ptr}/unit", 0, n - 1)
    inv = _int_list(_field(obj, "inv", ptr), f"{ptr}/inv", n, 0, n - 1)
    return GroupTable(n, mul, unit, inv, str(obj.get("name", "")))


def _bundle(obj, ptr: str, kind: str):
    n = _int(_field(obj, "dim", ptr), f"{ptr}/dim", 1)
    m = lambda key, shape: read_matrix(_field(obj, key, ptr), f"{ptr}/{key}", shape)  # noqa: E731
    delta, eps = m("delta", (n * n, n)), m("eps", (1, n))
    if kind == "comonoid":
        return Comonoid(delta, eps)
    if kind == "herd":
        return Herd(delta, eps, m("q", (n, n**3)))
    mu, eta = m("mu", (n, n * n)), m("eta", (n, 1))
    if kind == "hopf" or (kind == "bimonoid" and "nu" in obj):
        return HopfMonoid(delta, eps, mu, eta, m("nu", (n, n)))
    return Bimonoid(delta, eps, mu, eta)


def _comodule(obj, ptr: str, base: Path | None, herd: Herd | None) -> Comodule:
    m = _int(_field(obj, "dim", ptr), f"{ptr}/dim", 1)
    if "over" in obj:
        over = _ref(obj["over"], f"{ptr}/over", base, ("herd",), herd)
    elif herd is not None:
        over = herd
    else:
        raise SchemaError("missing field 'over' and no herd given", f"{ptr}/over")
    rho = read_matrix(_field(obj, "rho", ptr), f"{ptr}/rho", (m * over.dim, m))
    return Comodule(m, over, rho, str(obj.get("label", "")))


def _diagram(obj, ptr: str, base: Path | None, herd: Herd | None) -> Diagram:
    raw = _field(obj, "objects", ptr)
    if not isinstance(raw, list) or not raw:
        raise SchemaError("expected a nonempty array", f"{ptr}/objects")
    objs = [_ref(o, f"{ptr}/objects/{i}", base, ("comodule",), herd) for i, o in enumerate(raw)]
    morphs = []
    for i, mo in enumerate(obj.get("morphisms", [])):
        p = f"{ptr}/morphisms/{i}"
        s = _int(_field(mo, "src", p), f"{p}/src", 0, len(objs) - 1)
        t = _int(_field(mo, "dst", p), f"{p}/dst", 0, len(objs) - 1)
        morphs.append((s, t, read_matrix(_field(mo, "mat", p), f"{p}/mat", (objs[t].dim, objs[s].dim))))
    return Diagram(tuple(objs), tuple(morphs))


def _ref(x, ptr: str, base: Path | None, kinds: tuple[str, ...], herd: Herd | None):
    """An inline structure or a path (relative to the referring file)."""
    if isinstance(x, str):
        path = Path(x)
        if base is not None and not path.is_absolute():
            path = base / path
        value = load_structure(path, herd=herd)
        kind = _kind_of(value)
    else:
        kind = _kind(x, ptr)
        value = from_json(x, ptr, base, herd)
    if kind not in kinds:
        raise SchemaError(f"expected kind {' or '.join(kinds)}, got {kind}", ptr)
    return value


def _kind(obj, ptr: str) -> str:
    kind = _field(obj, "kind", ptr)
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}", f"{ptr}/kind")
    return kind


def from_json(obj: dict, ptr: str = "", base: Path | None = None, herd: Herd | None = None):
    kind = _kind(obj, ptr)
    try:
        if kind == "heap":
            return _heap(obj, ptr)
        if kind == "group":
            return _group(obj, ptr)
        if kind in ("comonoid", "bimonoid", "hopf", "herd"):
            return _bundle(obj, ptr, kind)
        if kind == "comodule":
            return _comodule(obj, ptr, base, herd)
        return _diagram(obj, ptr, base, herd)
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(str(exc), ptr or "/") from None


def load_structure(path: str | Path, herd: Herd | None = None):
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}", "") from None
    return from_json(obj, "", path.parent, herd)


# ---------------------------------------------------------------------------
# saving
# ---------------------------------------------------------------------------


def _kind_of(value) -> str:
    if isinstance(value, HeapTable):
        return "heap"
    if isinstance(value, GroupTable):
        return "group"
    if isinstance(value, HopfMonoid):
        return "hopf"
    if isinstance(value, Bimonoid):
        return "bimonoid"
    if isinstance(value, Herd):
        return "herd"
    if isinstance(value, Comonoid):
        return "comonoid"
    if isinstance(value, Comodule):
        return "comodule"
    if isinstance(value, Diagram):
        return "diagram"
    raise TypeError(f"cannot serialise {type(value).__name__}")


def to_json(value) -> dict:
    kind = _kind_of(value)
    out: dict[str, Any] = {"kind": kind}
    if kind == "heap":
        out.update(size=str(value.size), q=[str(int(x)) for x in value.q.ravel()])
    elif kind == "group":
        out.update(size=str(value.size), mul=[str(int(x)) for x in value.mul.ravel()],
                   unit=str(value.unit), inv=[str(int(x)) for x in value.inv])
        if value.name:
            out["name"] = value.name
    elif kind == "comodule":
        out.update(dim=str(value.dim), over=to_json(value.over), rho=value.rho.to_json())
        if value.label:
            out["label"] = value.label
    elif kind == "diagram":
        out["objects"] = [to_json(o) for o in value.objects]
        out["morphisms"] = [{"src": str(s), "dst": str(t), "mat": f.to_json()} for s, t, f in value.morphisms]
    else:
        out["dim"] = str(value.dim)
        for key in ("delta", "eps", "mu", "eta", "nu", "q"):
            m = getattr(value, key, None)
            if isinstance(m, RatMat):
                out[key] = m.to_json()
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def save_structure(value, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(to_json(value)))
    return path


def table_json(t: np.ndarray) -> list:
    return np.asarray(t).tolist()
