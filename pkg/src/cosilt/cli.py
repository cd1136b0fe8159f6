"""Command-line interface.

Exit codes: 0 when everything was computed and every asserted verdict is
true, 1 when some verdict is false or undecided, 2 on input or internal
errors.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import Sequence

from . import __version__
from .cosilting import (cointermediacy_window, glued_window_bounds, is_cosilting, measure_ladder_bounds)
from .decompose import FieldTooSmall
from .derived import Complex, cohomologies, decompose_complex, derived_hom, summand_names
from .gluing import DecompositionUnverified, NotCosiltingInput, TowerDiverged, glue, verify_gluing
from .linalg import Field, LinalgError
from .mutation import MutationNotCosilting, NotASummand, compat_left, compat_right, right_mutate
from .quiver import Quiver, QuiverError
from .recollement import (FUNCTORS, AdjunctionProbeFailed, CutNotClosed, ProbeFailed, StratificationFailed,
                          WrongSourceAlgebra, apply_functor, build_ladder)
from .rep import RepError
from .serial import (FormatError, complex_to_json, dumps, field_from_name, ladder_from_json, ladder_to_json,
                     load_object, load_quiver)
from .suite import run_suite

INPUT_ERRORS = (FormatError, CutNotClosed, StratificationFailed, WrongSourceAlgebra, QuiverError, RepError,
                LinalgError, NotCosiltingInput, NotASummand, FieldTooSmall)


class Report(dict):
    """Ordered report: command, inputs digest, verdicts, certificates, results, version."""

    def __init__(self, argv: Sequence[str], inputs: dict):
        super().__init__()
        self["command"] = list(argv)
        blob = json.dumps(inputs, sort_keys=True).encode()
        self["inputs_digest"] = hashlib.sha256(blob).hexdigest()
        self["verdicts"] = {}
        self["certificates"] = {}
        self["results"] = {}
        self["version"] = __version__

    def verdict(self, name: str, value: str):
        self["verdicts"][name] = value

    @property
    def exit_code(self) -> int:
        return 0 if all(v in ("true", "silent") for v in self["verdicts"].values()) else 1


def describe(X: Complex) -> dict:
    """Degree-indexed dimension vectors, cohomology and named summands."""
    return {
        "terms": {str(n): list(t.dimvec) for n, t in sorted(X.terms.items())},
        "cohomology": {str(n): list(h.dimvec) for n, h in sorted(cohomologies(X).items())},
        "summands": summand_names(X),
    }


def emit_report(report: dict, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(report, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    lines = []

    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v and not _flat(v):
                    lines.append("%s%s:" % (pad, k))
                    walk(v, indent + 1)
                else:
                    lines.append("%s%s: %s" % (pad, k, _inline(v)))
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)) and not _flat(v):
                    lines.append("%s-" % pad)
                    walk(v, indent + 1)
                else:
                    lines.append("%s- %s" % (pad, _inline(v)))

    walk(report, 0)
    return ("\n".join(lines) + "\n").encode("utf-8")


def _flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) for x in v)
    return False


def _inline(v) -> str:
    if isinstance(v, list):
        if not v:
            return "(none)"
        if all(isinstance(x, int) for x in v):
            return "(%s)" % ", ".join(str(x) for x in v)
        return ", ".join(str(x) for x in v)
    if isinstance(v, dict):
        return "{}" if not v else json.dumps(v)
    return str(v)


def parse_report(data: bytes) -> dict:
    return json.loads(data.decode("utf-8"))


def _window(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise FormatError("--window expects lo..hi, got %r" % text) from None


def _algebra(args) -> tuple[Quiver, Field]:
    return load_quiver(args.quiver), field_from_name(args.field)


def _ladder(args):
    if getattr(args, "ladder", None):
        try:
            with open(args.ladder, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise FormatError("%s: %s" % (args.ladder, exc)) from exc
        q, cut, f = ladder_from_json(data)
    else:
        if not args.cut:
            raise FormatError("give --cut v1,v2,... or --ladder FILE")
        q, f = _algebra(args)
        cut = [v.strip() for v in args.cut.split(",") if v.strip()]
    return build_ladder(q, cut, f), cut


def _verdict_block(v) -> dict:
    return {"status": v.status, "reason": v.reason, "summands": v.certificate.summands,
            "orthogonality": {str(n): d for n, d in v.certificate.orthogonality.items()},
            "tower_depths": {k: len(t) for k, t in v.certificate.towers.items()},
            "depth_bound": v.certificate.depth_bound}


def _emit(args, report: Report, data: dict):
    """Write ``data`` to the --emit path; every such file is a valid input again."""
    path = getattr(args, "emit", None)
    if not path:
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps(data))
    except OSError as exc:
        raise FormatError("%s: %s" % (path, exc.strerror)) from exc
    report["results"]["emitted"] = path


# ---------------------------------------------------------------- subcommands

def cmd_hom(args, report: Report):
    q, f = _algebra(args)
    X, Y = load_object(args.X, q, f), load_object(args.Y, q, f)
    w = derived_hom(X, Y, _window(args.window))
    report["results"]["window"] = [w.lower, w.upper]
    report["results"]["dims"] = {str(n): d for n, d in sorted(w.dims.items())}
    report["results"]["euler_characteristic"] = w.euler_characteristic()


def cmd_decompose(args, report: Report):
    q, f = _algebra(args)
    X = load_object(args.X, q, f)
    parts = decompose_complex(X, seed=args.seed)
    report["results"]["complex"] = describe(X)
    report["results"]["summands"] = [{"name": summand_names(c)[0], "multiplicity": k} for c, k in parts]


def cmd_check(args, report: Report):
    q, f = _algebra(args)
    X = load_object(args.X, q, f)
    v = is_cosilting(X, args.depth_bound)
    report.verdict("cosilting", v.status)
    report["certificates"]["cosilting"] = _verdict_block(v)
    report["results"]["complex"] = describe(X)
    if v:
        w = cointermediacy_window(X)
        report["results"]["window"] = [w.lower, w.upper]


def cmd_ladder(args, report: Report):
    L, cut = _ladder(args)
    b = measure_ladder_bounds(L)
    report["results"]["cut"] = list(L.cut.cut)
    report["results"]["closure"] = L.cut.closure
    report["results"]["left"] = list(L.left.vertices)
    report["results"]["right"] = list(L.right.vertices)
    report["results"]["bounds"] = {"t": list(b.t), "s": list(b.s), "u": list(b.u), "v": list(b.v)}
    report["results"]["probes"] = L.probes.get("count", 0)
    if args.apply:
        if not args.X:
            raise FormatError("--apply needs an object")
        src = L.source_of(args.apply)
        X = load_object(args.X, src, L.field)
        Y = apply_functor(L, args.apply, X)
        report["results"]["value"] = describe(Y)
        _emit(args, report, complex_to_json(Y))
    else:
        _emit(args, report, ladder_to_json(L.middle, L.cut.cut, L.field))


def cmd_glue(args, report: Report):
    L, _ = _ladder(args)
    C1 = load_object(args.C1, L.left, L.field)
    C2 = load_object(args.C2, L.right, L.field)
    G = glue(L, C1, C2)
    report["results"]["C"] = describe(G.C)
    _emit(args, report, complex_to_json(G.C))
    report["results"]["U"] = describe(G.U)
    report["results"]["V"] = describe(G.V)
    report["results"]["W"] = describe(G.W)
    report["results"]["tower"] = [{"step": t.step, "size": t.size, "shifts": t.shifts} for t in G.tower]
    checks = verify_gluing(G)
    report["certificates"]["checks"] = {c.name: {"ok": c.ok, "detail": c.detail} for c in checks}
    report["certificates"]["cosilting"] = _verdict_block(G.certificate)
    report.verdict("cosilting", G.certificate.status)
    report.verdict("checks", "true" if all(c.ok for c in checks) else "false")
    b = measure_ladder_bounds(L)
    bound = glued_window_bounds(cointermediacy_window(C1), cointermediacy_window(C2), b)
    w = cointermediacy_window(G.C)
    report["results"]["window"] = [w.lower, w.upper]
    report["results"]["window_bound"] = [bound.lower, bound.upper]
    report.verdict("window", "true" if bound.contains(w) else "false")


def cmd_mutate(args, report: Report):
    q, f = _algebra(args)
    C = load_object(args.X, q, f)
    E = load_object(args.at, q, f)
    try:
        res = right_mutate(C, E)
    except MutationNotCosilting as exc:
        report.verdict("cosilting", "false")
        report["results"]["error"] = str(exc)
        return
    report["results"]["mutated"] = describe(res.result)
    _emit(args, report, complex_to_json(res.result))
    report["results"]["precovers"] = [{"of": summand_names(p.Y), "by": summand_names(p.E0),
                                       "cocone": summand_names(p.Z)} for p in res.precovers]
    report["certificates"]["cosilting"] = _verdict_block(res.certificate)
    report.verdict("cosilting", res.certificate.status)


def _compat(args, report: Report, left: bool):
    L, _ = _ladder(args)
    C1 = load_object(args.C1, L.left, L.field)
    C2 = load_object(args.C2, L.right, L.field)
    X = load_object(args.at, L.left if left else L.right, L.field)
    rep = compat_left(L, C1, C2, X) if left else compat_right(L, C1, C2, X)
    report["results"]["message"] = rep.message
    if rep.holds is None:
        report.verdict("compatibility", "silent")
        return
    report["results"]["mutated"] = describe(rep.mutated)
    report["results"]["glued"] = describe(rep.glued)
    report.verdict("compatibility", "true" if rep.holds else "false")


def cmd_examples(args, report: Report):
    if not args.worked:
        raise FormatError("nothing to run; pass --paper for the bundled worked examples")
    for item in run_suite():
        report.verdict(item.name, "true" if item.ok else "false")
        report["certificates"][item.name] = {k: v for k, v in item.checks.items()}
        report["results"][item.name] = {k: v for k, v in item.details.items()}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cosilt", description="Cosilting complexes over path algebras: "
                                "gluing along recollements, mutation, certificates.")
    p.add_argument("--version", action="version", version="%(prog)s " + __version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiver", default="A3", help="A<n> (linear) or a quiver JSON file")
    common.add_argument("--field", default="Q", help="Q or F_p")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--depth-bound", type=int, default=None)
    common.add_argument("--window", default=None, help="lo..hi")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("hom", parents=[common], help="dim Hom(X, Y[n])")
    s.add_argument("X")
    s.add_argument("Y")
    s.set_defaults(run=cmd_hom)
    s = sub.add_parser("decompose", parents=[common], help="indecomposable summands")
    s.add_argument("X")
    s.set_defaults(run=cmd_decompose)
    s = sub.add_parser("check-cosilting", parents=[common], help="cosilting verdict with certificate")
    s.add_argument("X")
    s.set_defaults(run=cmd_check)
    ladder_opts = argparse.ArgumentParser(add_help=False)
    ladder_opts.add_argument("--cut", help="comma-separated vertices")
    ladder_opts.add_argument("--ladder", help="ladder JSON file")
    s = sub.add_parser("ladder", parents=[common, ladder_opts], help="build a ladder, optionally apply a functor")
    s.add_argument("--apply", choices=FUNCTORS)
    s.add_argument("X", nargs="?")
    s.add_argument("--emit", metavar="PATH", help="write the functor value (or the ladder) as a JSON file")
    s.set_defaults(run=cmd_ladder)
    s = sub.add_parser("glue", parents=[common, ladder_opts], help="glue C1 (left) and C2 (right)")
    s.add_argument("C1")
    s.add_argument("C2")
    s.add_argument("--emit", metavar="PATH", help="write the glued complex as a JSON file")
    s.set_defaults(run=cmd_glue)
    s = sub.add_parser("mutate", parents=[common], help="right mutation at the summands given by --at")
    s.add_argument("X")
    s.add_argument("--at", required=True)
    s.add_argument("--emit", metavar="PATH", help="write the mutated complex as a JSON file")
    s.set_defaults(run=cmd_mutate)
    for name, left in (("compat-left", True), ("compat-right", False)):
        s = sub.add_parser(name, parents=[common, ladder_opts], help="mutation versus gluing")
        s.add_argument("C1")
        s.add_argument("C2")
        s.add_argument("--at", required=True)
        s.set_defaults(run=lambda a, r, left=left: _compat(a, r, left))
    s = sub.add_parser("examples", parents=[common], help="run the bundled worked examples")
    s.add_argument("--paper", "--worked", dest="worked", action="store_true", help="the A2/A3 worked examples")
    s.set_defaults(run=cmd_examples)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout.buffer
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    inputs = {k: v for k, v in vars(args).items() if k not in ("run", "format", "timing")}
    report = Report(argv, inputs)
    t = time.perf_counter()
    try:
        args.run(args, report)
    except INPUT_ERRORS as exc:
        err.write("error: %s: %s\n" % (type(exc).__name__, exc))
        return 2
    except (ProbeFailed, AdjunctionProbeFailed, DecompositionUnverified, TowerDiverged) as exc:
        err.write("error: %s: %s\n" % (type(exc).__name__, exc))
        return 2
    except Exception as exc:  # pragma: no cover - last resort
        err.write("internal error: %s: %s\n" % (type(exc).__name__, exc))
        return 2
    if args.timing:
        report["timing"] = round(time.perf_counter() - t, 3)
    out.write(emit_report(report, args.format))
    return report.exit_code


def main() -> None:
    sys.exit(run())
