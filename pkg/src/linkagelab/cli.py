"""Command-line interface: session-driven computations and the verifier suite.

Exit codes: 0 all ok (correct negatives included), 1 mathematical failure,
2 hypotheses failed, 3 inconclusive verdict present, 4 usage or parse error,
5 resource cap hit.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import homology as H
from . import linkage as L
from . import report as RP
from .errors import DomainError, ResourceError, SessionError, StructuralError
from .poly import Vec
from .quotient import colon_module, scalar_module, submodule_equal
from .session import parse_session

VERIFY_NAMES = ("l6", "l10", "l7", "c6", "t2", "t3", "p3", "c8", "t5", "l13", "l14", "r2", "e4")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read session {path!r}: {exc}")
    return parse_session(text)


class Workspace:
    """A built session plus name-resolution defaults from tasks and flags."""

    def __init__(self, path, args):
        self.path = path
        self.session = _load(path)
        self.ring, self.modules, self.ideals = self.session.build()
        self.args = args

    def _task_default(self, key):
        for task in self.session.tasks:
            if key in task["args"]:
                return task["args"][key]
        return None

    def module(self, flag=None):
        name = flag or getattr(self.args, "module", None) or self._task_default("module")
        if name is None:
            if len(self.modules) == 1:
                name = next(iter(self.modules))
            elif "M" in self.modules:
                name = "M"
            else:
                raise UsageError("--module is required (several modules are defined)")
        if name not in self.modules:
            raise UsageError(f"undefined module {name!r}")
        return name, self.modules[name]

    def ideal(self, flag_value, default_name, required=True):
        name = flag_value or self._task_default(default_name.lower()) or default_name
        if name not in self.ideals:
            if required:
                raise UsageError(f"undefined ideal {name!r}")
            return None, None
        return name, self.ideals[name]

    def instance(self) -> L.LinkageInstance:
        mname, module = self.module()
        aname, a = self.ideal(self.args.ideal_a, "a")
        bname, b = self.ideal(self.args.ideal_b, "b")
        iname, i = self.ideal(self.args.ideal_i, "I")
        fixture = f"{os.path.basename(self.path)}:{mname}:{aname}~{bname}:{iname}"
        return L.LinkageInstance(self.ring, module, a, b, i, fixture)


def _result(fixture, verdict, payload=None, verifier=None):
    out = {"fixture": fixture, "verdict": verdict}
    if verifier:
        out["verifier"] = verifier
    if payload:
        out.update(payload)
    return out


# ---------------------------------------------------------------------------
# command bodies; each returns a list of result dicts


def cmd_gb(ws: Workspace):
    names = [ws.args.ideal_a] if ws.args.ideal_a else sorted(ws.ideals)
    out = []
    for name in names:
        if name not in ws.ideals:
            raise UsageError(f"undefined ideal {name!r}")
        gb = ws.ideals[name].lift_gb()
        out.append(
            _result(
                f"gb:{name}",
                "ok",
                {"derived": {"basis": [str(g.component(0)) for g in gb.elements]}},
            )
        )
    return out


def cmd_nf(ws: Workspace):
    if not ws.args.poly:
        raise UsageError("nf needs --poly")
    name, ideal = ws.ideal(ws.args.ideal_a, "a")
    f = ws.ring.base.parse_poly(ws.args.poly)
    nf = ideal.lift_gb().normal_form(Vec.from_poly(ws.ring.base, f)).component(0)
    return [
        _result(
            f"nf:{name}",
            "ok",
            {"derived": {"input": str(f), "normal_form": str(nf), "member": nf.is_zero()}},
        )
    ]


def cmd_colon(ws: Workspace):
    mname, module = ws.module()
    _, a = ws.ideal(ws.args.ideal_a, "a")
    iname, i = ws.ideal(ws.args.ideal_i, "I")
    im = scalar_module(i, module)
    col = colon_module(im, a)
    payload = {"derived": {"generators": [str(v) for v in col.lift_gb().elements]}}
    if ws.args.ideal_b:
        _, b = ws.ideal(ws.args.ideal_b, "b")
        payload["derived"]["equals_bm"] = submodule_equal(col, scalar_module(b, module))
    return [_result(f"colon:{mname}", "ok", payload)]


def cmd_dim(ws: Workspace):
    mname, module = ws.module()
    return [_result(f"dim:{mname}", "ok", {"derived": {"dim": H.krull_dim(module)}})]


def cmd_depth(ws: Workspace):
    mname, module = ws.module()
    return [_result(f"depth:{mname}", "ok", {"derived": {"depth": H.depth(module)}})]


def cmd_grade(ws: Workspace):
    mname, module = ws.module()
    aname, a = ws.ideal(ws.args.ideal_a, "a")
    return [
        _result(
            f"grade:{aname}:{mname}", "ok", {"derived": {"grade": H.grade(a, module)}}
        )
    ]


def cmd_cm(ws: Workspace):
    mname, module = ws.module()
    prof = H.profile(module)
    return [
        _result(
            f"cm:{mname}",
            "ok",
            {
                "derived": {
                    "dim": prof.dim,
                    "depth": prof.depth,
                    "codim": prof.codim,
                    "flags": prof.flags,
                }
            },
        )
    ]


def cmd_unmixed(ws: Workspace):
    mname, module = ws.module()
    return [_result(f"unmixed:{mname}", "ok", {"derived": {"unmixed": H.is_unmixed(module)}})]


def cmd_canonical(ws: Workspace):
    omega = H.canonical_module(ws.ring)
    return [
        _result(
            "canonical",
            "ok",
            {
                "derived": {
                    "min_generators": omega.rank,
                    "relations": [str(v) for v in omega.relations],
                    "dim": H.krull_dim(omega),
                    "depth": H.depth(omega),
                }
            },
        )
    ]


def cmd_gorenstein(ws: Workspace):
    return [_result("gorenstein", "ok", {"derived": {"gorenstein": H.is_gorenstein(ws.ring)}})]


def cmd_link(ws: Workspace):
    inst = ws.instance()
    rep = L.check_linked(inst)
    doc = rep.to_json()
    doc["verifier"] = "link"
    return [doc]


def cmd_verify(ws: Workspace):
    name = ws.args.name
    if name not in VERIFY_NAMES:
        raise UsageError(f"unknown verifier {name!r} (choose from {', '.join(VERIFY_NAMES)})")
    inst = ws.instance()
    window = ws.args.window
    if name == "l6":
        rep = L.verify_l6(inst)
    elif name == "l10":
        rep = L.verify_l10(inst)
    elif name == "l7":
        rep = L.verify_l7(inst)
    elif name == "c6":
        rep = L.verify_c6(inst)
    elif name == "t2":
        rep = L.verify_t2(inst.ring, inst.a, inst.b, inst.i, fixture=inst.fixture)
    elif name == "t3":
        rep = L.verify_t3(inst.ring, inst.a, inst.b, inst.i, fixture=inst.fixture)
    elif name == "p3":
        rep = L.verify_p3(inst.ring, inst.a, inst.b, inst.i, fixture=inst.fixture)
    elif name == "c8":
        rep = L.verify_c8(inst.ring, inst.a, inst.b, inst.i, fixture=inst.fixture, window=window)
    elif name == "t5":
        rep = L.verify_t5(inst, window=window)
    elif name == "l13":
        other = None
        if ws.args.other_module:
            _, other = ws.module(ws.args.other_module)
        rep = L.verify_l13(inst, other)
    elif name == "l14":
        if not ws.args.element:
            raise UsageError("verify l14 needs --element (a ring element regular on M)")
        rep = L.verify_l14(inst, ws.args.element)
    elif name == "r2":
        rep = L.verify_r2(inst)
    else:
        rep = L.verify_e4(inst)
    return [rep.to_json()]


def cmd_crosscheck(args):
    seeds = args.seeds or 10
    out = []
    for s in range(1, seeds + 1):
        chk = L.crosscheck_artinian(s)
        out.append(
            _result(
                f"oracle-crosscheck-{s}",
                "ok" if chk["agree"] else "fail",
                {
                    "verifier": "oracle-crosscheck",
                    "conclusions": chk["checks"],
                    "derived": {"ring": chk["ring"], "dimension": chk["dimension"]},
                },
            )
        )
    return out


def cmd_suite(args):
    threads = args.threads or int(os.environ.get("LINKAGELAB_THREADS", "1"))
    seeds = args.seeds or 5
    return L.run_suite(seeds, window=args.window, threads=threads, crosschecks=min(seeds, 10))


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> _Parser:
    p = _Parser(prog="linkagelab", description=__doc__)
    p.add_argument("--json-schema", action="store_true", help="print the report schema and exit")
    sub = p.add_subparsers(dest="command")

    def common(sp, session=True):
        if session:
            sp.add_argument("session", help="session file path")
        sp.add_argument("--json-schema", action="store_true", help="print the report schema and exit")
        sp.add_argument("--module", help="module name")
        sp.add_argument("--ideal-a", dest="ideal_a", help="ideal name for a")
        sp.add_argument("--ideal-b", dest="ideal_b", help="ideal name for b")
        sp.add_argument("--ideal-i", dest="ideal_i", help="ideal name for I")
        sp.add_argument("--window", type=int, help="homological window bound")
        sp.add_argument("--degree-cap", dest="degree_cap", type=int, help="degree cap")
        sp.add_argument("--timings", action="store_true", help="add wall-clock timings")
        sp.add_argument("--report-dir", dest="report_dir", help="write csv + figures here")

    for name in ("gb", "nf", "colon", "dim", "depth", "grade", "cm", "unmixed", "canonical", "gorenstein", "link"):
        sp = sub.add_parser(name)
        common(sp)
        if name == "nf":
            sp.add_argument("--poly", help="polynomial text")
    sp = sub.add_parser("verify")
    sp.add_argument("name", choices=VERIFY_NAMES)
    common(sp)
    sp.add_argument("--other-module", dest="other_module", help="second module for l13")
    sp.add_argument("--element", help="ring element for l14")
    sp = sub.add_parser("oracle-crosscheck")
    sp.add_argument("--json-schema", action="store_true")
    sp.add_argument("--seeds", type=int, help="number of random instances")
    sp.add_argument("--report-dir", dest="report_dir", help="write csv + figures here")
    sp.add_argument("--timings", action="store_true")
    sp = sub.add_parser("suite")
    sp.add_argument("--json-schema", action="store_true")
    sp.add_argument("--seeds", type=int, help="seeded fixtures per family")
    sp.add_argument("--window", type=int, help="homological window bound")
    sp.add_argument("--threads", type=int, help="parallel fixture verification")
    sp.add_argument("--report-dir", dest="report_dir", help="write csv + figures here")
    sp.add_argument("--timings", action="store_true")
    return p


COMMANDS = {
    "gb": cmd_gb,
    "nf": cmd_nf,
    "colon": cmd_colon,
    "dim": cmd_dim,
    "depth": cmd_depth,
    "grade": cmd_grade,
    "cm": cmd_cm,
    "unmixed": cmd_unmixed,
    "canonical": cmd_canonical,
    "gorenstein": cmd_gorenstein,
    "link": cmd_link,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    argv = argv if argv is not None else sys.argv[1:]
    parser = build_parser()
    started = time.time()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stdout.write(RP.emit(RP.envelope("usage", [], error=str(exc), exit_code=4)))
        return 4
    if args.json_schema:
        sys.stdout.write(RP.emit(RP.REPORT_SCHEMA))
        return 0
    if not args.command:
        sys.stdout.write(RP.emit(RP.envelope("usage", [], error="no command given", exit_code=4)))
        return 4
    session_path = getattr(args, "session", None)
    seeds = getattr(args, "seeds", None)
    try:
        if args.command == "suite":
            results = cmd_suite(args)
        elif args.command == "oracle-crosscheck":
            results = cmd_crosscheck(args)
        else:
            ws = Workspace(args.session, args)
            if getattr(args, "degree_cap", None):
                ws.ring.base.degree_cap = args.degree_cap
            results = COMMANDS[args.command](ws)
    except UsageError as exc:
        sys.stdout.write(RP.emit(RP.envelope(args.command, [], session=session_path, error=str(exc), exit_code=4)))
        return 4
    except SessionError as exc:
        sys.stdout.write(RP.emit(RP.envelope(args.command, [], session=session_path, error=str(exc), exit_code=4)))
        return 4
    except StructuralError as exc:
        sys.stdout.write(RP.emit(RP.envelope(args.command, [], session=session_path, error=str(exc), exit_code=4)))
        return 4
    except ResourceError as exc:
        doc = RP.envelope(
            args.command,
            [_result("resource", "resource", {"witnesses": [str(exc)]})],
            session=session_path,
            error=str(exc),
            exit_code=5,
        )
        sys.stdout.write(RP.emit(doc))
        return 5
    except DomainError as exc:
        doc = RP.envelope(
            args.command,
            [_result("precondition", "hypotheses-failed", {"witnesses": [str(exc)]})],
            session=session_path,
            exit_code=2,
        )
        sys.stdout.write(RP.emit(doc))
        return 2
    if getattr(args, "timings", False):
        for rep in results:
            rep.setdefault("timings", {})["wall_s"] = round(time.time() - started, 3)
    doc = RP.envelope(args.command, results, session=session_path, seeds=seeds)
    if getattr(args, "report_dir", None):
        RP.write_report_dir(doc, args.report_dir)
    sys.stdout.write(RP.emit(doc))
    return doc["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
