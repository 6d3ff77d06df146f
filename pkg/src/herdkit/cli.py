"""Command-line interface.

Exit status: 0 when every check passes, 1 when a check fails (or a
construction is refused for a mathematical reason), 2 on unreadable input.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from . import coalg, io, reconstruct, setcore, tannaka, vflock
from .coalg import Bimonoid, Comonoid, Herd, HopfMonoid
from .corpus import KINDS as CORPUS_KINDS, corpus_generate
from .errors import (
    ComoduleAxiomError,
    FactorizationError,
    GroupAxiomError,
    HeapAxiomError,
    HerdAxiomError,
    MissingObjectError,
    NoAntipodeError,
    SchemaError,
    WellDefinednessError,
    ZeroCounitError,
)
from .report import CheckReport, all_witnesses
from .setcore import GroupTable, HeapTable
from .vflock import Comodule

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# refusals for mathematical reasons: reported as failed checks, exit 1
MATH_ERRORS = (
    HeapAxiomError,
    GroupAxiomError,
    HerdAxiomError,
    ComoduleAxiomError,
    NoAntipodeError,
    FactorizationError,
    WellDefinednessError,
    ZeroCounitError,
    MissingObjectError,
)


class UsageError(Exception):
    pass


def _expect(value, types, what: str, path) -> None:
    if not isinstance(value, types):
        kind = io._kind_of(value)
        raise UsageError(f"{path}: expected a {what} file, got kind {kind!r}")


# ---------------------------------------------------------------------------
# commands; each returns a CheckReport and may add artifacts
# ---------------------------------------------------------------------------


def cmd_verify(args) -> CheckReport:
    value = io.load_structure(args.file)
    kind = args.kind
    if kind == "heap":
        _expect(value, HeapTable, "heap", args.file)
        return setcore.check_heap(value)
    if kind == "group":
        _expect(value, GroupTable, "group", args.file)
        return setcore.check_group(value)
    if kind == "comonoid":
        _expect(value, (Comonoid, Bimonoid, Herd), "comonoid", args.file)
        return coalg.check_comonoid(value if isinstance(value, Comonoid) else value.comonoid)
    if kind == "herd":
        _expect(value, Herd, "herd", args.file)
        return coalg.check_herd(value)
    if kind == "bimonoid":
        _expect(value, Bimonoid, "bimonoid", args.file)
        if isinstance(value, HopfMonoid):
            return coalg.check_hopf(value)
        return coalg.check_bimonoid(value)
    _expect(value, Comodule, "comodule", args.file)
    return vflock.check_comodule(value)


def _failure_report(name: str, exc: Exception, rep: CheckReport | None = None) -> CheckReport:
    rep = rep or CheckReport()
    witness = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, NoAntipodeError) and exc.fusion is not None:
        witness["fusion"] = exc.fusion.to_json()
    rep.record(name, False, witness)
    return rep


def cmd_heap_to_group(args) -> CheckReport:
    h = io.load_structure(args.file)
    _expect(h, HeapTable, "heap", args.file)
    rep = setcore.check_heap(h)
    if not rep.passed:
        return rep
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        res = setcore.heap_to_group(h)
    rep.notes.extend(str(w.message) for w in caught)
    rep.record("regular epimorphism A -> 1", res.regular_epi, {"size": h.size})
    rep.merge(setcore.check_group(res.group), prefix="group: ")
    if h.size:
        rep.merge(setcore.check_torsor(setcore.action_from_heap(h)), prefix="torsor: ")
    rep.artifacts["group"] = io.to_json(res.group)
    rep.artifacts["varpi"] = io.table_json(res.varpi)
    return rep


def cmd_group_to_heap(args) -> CheckReport:
    g = io.load_structure(args.file)
    _expect(g, GroupTable, "group", args.file)
    rep = setcore.check_group(g)
    if not rep.passed:
        return rep
    h = setcore.group_to_heap(g)
    rep.merge(setcore.check_heap(h), prefix="heap: ")
    rep.artifacts["heap"] = io.to_json(h)
    return rep


def cmd_linearize(args) -> CheckReport:
    value = io.load_structure(args.file)
    _expect(value, (HeapTable, GroupTable), "heap or group", args.file)
    if isinstance(value, HeapTable):
        rep = setcore.check_heap(value)
        if rep.passed:
            herd = coalg.heap_algebra(value)
            rep.merge(coalg.check_herd(herd), prefix="herd: ")
            rep.artifacts["herd"] = io.to_json(herd)
        return rep
    rep = setcore.check_group(value)
    if rep.passed:
        H = coalg.group_algebra(value)
        rep.merge(coalg.check_hopf(H), prefix="hopf: ")
        rep.artifacts["hopf"] = io.to_json(H)
    return rep


def _side(A: Herd, side: str, left=None) -> reconstruct.Reconstruction:
    if side == "left":
        return reconstruct.reconstruct(A, "left", validate=False)
    return reconstruct.build_H_prime(A, left=left, validate=False)


def cmd_reconstruct(args) -> CheckReport:
    A = io.load_structure(args.file)
    _expect(A, Herd, "herd", args.file)
    rep = coalg.check_herd(A)
    if not rep.passed:
        return rep
    sides = ["left", "right"] if args.side == "both" else [args.side]
    left = None
    for side in sides:
        r = _side(A, side, left)
        if side == "left":
            left = r
        rep.merge(r.report, prefix=f"{side}: ")
        rep.artifacts[f"{side}"] = r.to_json()
        rep.artifacts[f"{side}_hopf"] = io.to_json(r.hopf)
    return rep


def cmd_antipode(args) -> CheckReport:
    B = io.load_structure(args.file)
    _expect(B, Bimonoid, "bimonoid", args.file)
    if isinstance(B, HopfMonoid):
        B = B.bimonoid
    rep = coalg.check_bimonoid(B)
    try:
        sub = CheckReport()
        H = coalg.antipode_from_fusion(B, sub)
    except NoAntipodeError as exc:
        return _failure_report("fusion operator invertible", exc, rep)
    rep.record("fusion operator invertible", True)
    rep.merge(sub, prefix="antipode: ")
    rep.artifacts["hopf"] = io.to_json(H)
    rep.artifacts.update(sub.artifacts)
    return rep


def cmd_flock(args) -> CheckReport:
    A = io.load_structure(args.herd)
    _expect(A, Herd, "herd", args.herd)
    objs = [io.load_structure(p, herd=A) for p in args.objects]
    for p, o in zip(args.objects, objs):
        _expect(o, Comodule, "comodule", p)
    five = [objs[i % len(objs)] for i in range(5)]
    data = vflock.flock_maps(A, *five)
    rep = data.report
    if args.unit is not None:
        J = objs[args.unit]
        rep.merge(vflock.unit_object_check(A, J, objs), prefix="unit object: ")
    return rep


def cmd_tannaka(args) -> CheckReport:
    A = io.load_structure(args.herd)
    _expect(A, Herd, "herd", args.herd)
    D = io.load_structure(args.diagram, herd=A)
    _expect(D, tannaka.Diagram, "diagram", args.diagram)
    rep = tannaka.check_diagram(D)
    if not rep.passed:
        return rep
    E = tannaka.reconstruct_herd(D, A)
    rep.merge(E.report)
    rep.artifacts["coend"] = E.to_json()
    rep.artifacts["herd"] = io.to_json(E.herd)
    if E.dim == A.dim:
        f = tannaka.coefficient_map(E)
        rep.merge(tannaka.herd_iso_check(E, A, f), prefix="E ~ A: ")
        rep.artifacts["coefficient_map"] = f.to_json()
    else:
        rep.notes.append(f"dim E = {E.dim} differs from dim A = {A.dim}; no isomorphism check")
    return rep


def cmd_corpus(args) -> CheckReport:
    out = Path(args.out or ".")
    paths = corpus_generate(args.kind, args.max_size, out)
    rep = CheckReport()
    for p in paths:
        value = io.load_structure(p)
        if isinstance(value, GroupTable):
            sub = setcore.check_group(value)
        elif isinstance(value, HeapTable):
            sub = setcore.check_heap(value)
        elif isinstance(value, Herd):
            sub = coalg.check_herd(value)
        else:
            sub = vflock.check_comodule(value)
        rep.record(p.name, sub.passed, {"failed": sub.failed()[0].name} if not sub.passed else None)
    rep.artifacts["files"] = [p.name for p in paths]
    return rep


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", metavar="DIR", help="write report.json and artifacts to DIR")
    p.add_argument("--json", action="store_true", help="print the JSON report on stdout")
    p.add_argument("--all-witnesses", action="store_true", help="list every failing basis tuple")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="herdkit", description="Exact verification of herds, torsors and Hopf monoids.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the axioms of a structure file")
    p.add_argument("kind", choices=["heap", "group", "comonoid", "herd", "bimonoid", "comodule"])
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    for name, func, help_ in (
        ("heap-to-group", cmd_heap_to_group, "group of pair classes of a heap"),
        ("group-to-heap", cmd_group_to_heap, "heap q(x,y,z) = x y^-1 z of a group"),
        ("linearize", cmd_linearize, "heap -> herd, group -> Hopf monoid"),
        ("antipode", cmd_antipode, "antipode of a bimonoid from its fusion operator"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.set_defaults(func=func)

    p = sub.add_parser("reconstruct", help="Hopf monoids H and H' of a herd")
    p.add_argument("--side", choices=["left", "right", "both"], default="left")
    p.add_argument("file")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("flock", help="flock structure on comodules")
    p.add_argument("action", choices=["check"])
    p.add_argument("--herd", required=True)
    p.add_argument("--objects", nargs="+", required=True,
                   help="comodule files; used cyclically as L, M, N, R, S")
    p.add_argument("--unit", type=int, default=None, metavar="I",
                   help="also test object I as a unit object")
    p.set_defaults(func=cmd_flock)

    p = sub.add_parser("tannaka", help="coend herd of a diagram of comodules")
    p.add_argument("--herd", required=True)
    p.add_argument("--diagram", required=True)
    p.set_defaults(func=cmd_tannaka)

    p = sub.add_parser("corpus", help="write the test corpus")
    p.add_argument("--kind", choices=CORPUS_KINDS, default="groups")
    p.add_argument("--max-size", type=int, default=8)
    p.set_defaults(func=cmd_corpus)

    for action in sub.choices.values():
        _common(action)
    return parser


def _emit(args, rep: CheckReport, payload: dict) -> None:
    text = io.dumps(payload)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(text)
        for key, value in rep.artifacts.items():
            if isinstance(value, dict) and "kind" in value:
                (out / f"{key}.json").write_text(io.dumps(value))
    if args.json:
        sys.stdout.write(text)
    else:
        if rep.checks:
            print(rep.summary())
        for note in rep.notes:
            print(f"note: {note}")
        if "error" in payload:
            print(f"error: {payload['error']['message']}", file=sys.stderr)
        print("PASS" if payload["passed"] else "FAIL")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    token = all_witnesses.set(bool(args.all_witnesses))
    try:
        try:
            rep = args.func(args)
        except MATH_ERRORS as exc:
            rep = _failure_report(f"{args.command} precondition", exc)
        except (SchemaError, UsageError, ValueError, FileNotFoundError, IsADirectoryError) as exc:
            payload = {"command": args.command, "passed": False,
                       "error": {"kind": type(exc).__name__, "message": str(exc),
                                 "pointer": getattr(exc, "pointer", None)}}
            if args.json:
                sys.stdout.write(io.dumps(payload))
            print(f"herdkit: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        payload = {"command": args.command, **rep.to_json()}
        _emit(args, rep, payload)
        return EXIT_OK if rep.passed else EXIT_FAIL
    finally:
        all_witnesses.reset(token)


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
