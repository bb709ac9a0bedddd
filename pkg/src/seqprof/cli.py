"""Command-line front end.

Four subcommands: `check` runs the typechecker over declaration files,
`interp` additionally interprets every declaration over a base
assignment and prints the resulting tables, `verify` re-derives the
semantic well-formedness properties (functor laws, naturality,
unit-law bijections, composition cross-checks, coincidence probes) for
the same inputs, and `demo` runs the three built-in demonstrations.

Exit codes are a stable contract: 0 on success, 1 when any check,
interpretation or verification fails, 2 for usage and I/O problems.
Output is either `human` (aligned text) or `json-lines` (one JSON
object per record; the field layout is documented in docs/formats.md
and validated against a schema in the test suite).  All output is
deterministic for fixed inputs and flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .fincat import FinCatError, elem_key
from .models import (
    ModelMode,
    ModeError,
    apply_mode,
    apply_mode_nat,
    degeneracy_report,
    nondegeneracy_search,
)
from .parser import (
    ExprDecl,
    ParseError,
    TypeDef,
    parse,
    pretty,
    pretty_judgment,
)
from .profunctor import (
    InterfaceError,
    NatTrans,
    Profunctor,
    validate_nat,
    validate_profunctor,
)
from .semantics import (
    BaseAssignment,
    Interpreter,
    InterpError,
    read_base_assignment,
)
from .syntax import (
    Absurd,
    Base,
    BetaMu,
    BetaMuTilde,
    CoTermAt,
    CoVar,
    Cut,
    Mu,
    MuTilde,
    NEG,
    POS,
    TermAt,
    Var,
)
from .typecheck import CheckError, check_file, check_reduction

BASE_ENV = "SEQPROF_BASE"

_SEM_ERRORS = (CheckError, InterpError, InterfaceError, FinCatError, ModeError)


class _Usage(Exception):
    """Configuration problem that should exit 2."""


# ---------------------------------------------------------------------------
# output plumbing


class Reporter:
    """Collects records, prints them in the chosen format, tracks failure."""

    def __init__(self, fmt: str, verbose: bool, out=None):
        self.fmt = fmt
        self.verbose = verbose
        self.out = out if out is not None else sys.stdout
        self.failed = False

    def emit(self, record: dict, human: str, detail: str | None = None):
        if not record.get("ok", True):
            self.failed = True
        if self.fmt == "json-lines":
            print(json.dumps(record, ensure_ascii=False), file=self.out)
        else:
            print(human, file=self.out)
            if detail and self.verbose:
                for line in detail.splitlines():
                    print("    " + line, file=self.out)

    def say(self, human: str):
        # human-format-only connective text
        if self.fmt == "human":
            print(human, file=self.out)


def show(x) -> str:
    """Stable rendering for objects and fibre elements (nested tuples)."""
    if isinstance(x, tuple):
        if len(x) == 3 and x[0] == "cls":
            return f"[{show(x[1])};{show(x[2])}]"
        return "(" + ",".join(show(p) for p in x) + ")"
    return str(x)


def _interface_fields(p: Profunctor) -> dict:
    return {
        "inputs": [[n, c.name] for n, c in p.inputs],
        "outputs": [[n, c.name] for n, c in p.outputs],
    }


def _prof_table(p: Profunctor) -> list[dict]:
    rows = []
    for pt in sorted(p.body.points(), key=elem_key):
        fib = sorted(p.body.at(pt), key=elem_key)
        rows.append({"point": [show(o) for o in pt], "elems": [show(e) for e in fib]})
    return rows


def _nat_table(t: NatTrans) -> list[dict]:
    rows = []
    for pt in sorted(t.components, key=elem_key):
        comp = t.components[pt]
        pairs = sorted(((show(a), show(b)) for a, b in comp.items()))
        rows.append({"point": [show(o) for o in pt], "map": [list(p) for p in pairs]})
    return rows


def _human_table(rows: list[dict], indent: str = "  ") -> str:
    out = []
    for r in rows:
        pt = "(" + ", ".join(r["point"]) + ")"
        if "elems" in r:
            out.append(f"{indent}{pt} -> {{{', '.join(r['elems'])}}}")
        else:
            arrows = ", ".join(f"{a} => {b}" for a, b in r["map"])
            out.append(f"{indent}{pt} -> {{{arrows}}}")
    return "\n".join(out) if out else indent + "(empty interface)"


# ---------------------------------------------------------------------------
# input loading


def _load_sources(paths) -> list[tuple[str, str]]:
    out = []
    for path in paths:
        try:
            with open(path, encoding="utf-8") as fh:
                out.append((path, fh.read()))
        except OSError as e:
            raise _Usage(f"cannot read {path}: {e.strerror or e}")
    return out


def _load_base(args, reporter: "Reporter") -> BaseAssignment | None:
    """Resolve the base assignment, or report why it cannot be used.

    A missing or unreadable path is a usage error (exit 2).  A path that
    reads fine but whose content fails validation (a corrupted category
    table, say) is a verification failure: emit a failing record and let
    the caller exit 1.
    """
    path = args.base or os.environ.get(BASE_ENV)
    if not path:
        raise _Usage(
            f"this command needs a base assignment: pass --base or set ${BASE_ENV}"
        )
    try:
        return read_base_assignment(path)
    except OSError as e:
        raise _Usage(f"cannot read base assignment {path}: {e.strerror or e}")
    except (FinCatError, InterpError) as e:
        reporter.emit(
            {"record": "base", "file": path, "ok": False, "message": str(e)},
            f"base {path}: FAIL {e}",
        )
        return None


def _parse_all(reporter: Reporter, sources) -> list[tuple[str, object]]:
    """Parse every file; parse failures become failing records."""
    parsed = []
    for path, text in sources:
        try:
            parsed.append((path, parse(text)))
        except ParseError as e:
            reporter.emit(
                {
                    "record": "check",
                    "file": path,
                    "ok": False,
                    "line": e.line,
                    "col": e.column,
                    "error_class": "parse-error",
                    "message": str(e),
                },
                f"{path}:{e.line}:{e.column}: FAIL {e}",
            )
    return parsed


# ---------------------------------------------------------------------------
# check


def cmd_check(args) -> int:
    reporter = Reporter(args.format, args.verbose)
    for path, sf in _parse_all(reporter, _load_sources(args.files)):
        for rec in check_file(sf):
            d = rec.to_dict()
            d["record"] = "check"
            d["file"] = path
            if rec.ok:
                what = d.get("judgment") or ""
                if rec.kind == "reduction":
                    what = f"{d['source']} => {d['target']}"
                human = f"{path}:{rec.line}: OK {rec.name} {what}".rstrip()
            else:
                human = (
                    f"{path}:{rec.line}: FAIL {rec.name}"
                    f" [{rec.error_class}] {rec.message}"
                )
            reporter.emit(d, human)
    return 1 if reporter.failed else 0


# ---------------------------------------------------------------------------
# interp


def cmd_interp(args) -> int:
    reporter = Reporter(args.format, args.verbose)
    base = _load_base(args, reporter)
    if base is None:
        return 1
    mode = ModelMode.from_string(args.mode)
    interp = Interpreter(base, max_objects=args.max_objects)
    for path, sf in _parse_all(reporter, _load_sources(args.files)):
        ok_names = _precheck(reporter, path, sf)
        for d in sf.decls:
            if d.name not in ok_names:
                continue
            try:
                _interp_decl(reporter, path, interp, mode, d)
            except _SEM_ERRORS as e:
                reporter.emit(
                    {
                        "record": "interp",
                        "file": path,
                        "name": d.name,
                        "ok": False,
                        "message": str(e),
                    },
                    f"{path}: FAIL {d.name}: {e}",
                )
    return 1 if reporter.failed else 0


def _precheck(reporter: Reporter, path: str, sf) -> set:
    """Typecheck a file, reporting only failures; returns passing names."""
    ok = set()
    for rec in check_file(sf):
        if rec.ok:
            ok.add(rec.name)
        else:
            d = rec.to_dict()
            d["record"] = "check"
            d["file"] = path
            reporter.emit(
                d,
                f"{path}:{rec.line}: FAIL {rec.name} [{rec.error_class}] {rec.message}",
            )
    return ok


def _interp_decl(reporter: Reporter, path, interp: Interpreter, mode, d):
    if isinstance(d, TypeDef):
        cat = interp.type_cat(d.body)
        rec = {
            "record": "interp",
            "file": path,
            "name": d.name,
            "kind": "type",
            "ok": True,
            "objects": [show(o) for o in sorted(cat.objects, key=elem_key)],
            "arrows": sorted(
                [show(f), show(cat.src(f)), show(cat.dst(f))] for f in cat.arrows
            ),
        }
        human = (
            f"{d.name} : category with {len(cat.objects)} objects,"
            f" {len(cat.arrows)} arrows"
        )
        reporter.emit(rec, human, detail="objects: " + ", ".join(rec["objects"]))
        return
    if isinstance(d, ExprDecl):
        p = apply_mode(interp.interp(d.context, d.body, d.judgment), mode)
        rec = {
            "record": "interp",
            "file": path,
            "name": d.name,
            "kind": "expr",
            "ok": True,
            "judgment": pretty_judgment(d.judgment),
            **_interface_fields(p),
            "table": _prof_table(p),
        }
        human = f"{d.name} : {rec['judgment']}\n" + _human_table(rec["table"])
        reporter.emit(rec, human)
        return
    rt = check_reduction(d.context, d.body, d.judgment)
    t = apply_mode_nat(interp.interp_reduction(d.context, d.body, d.judgment), mode)
    rec = {
        "record": "interp",
        "file": path,
        "name": d.name,
        "kind": "reduction",
        "ok": True,
        "source": pretty(rt.source),
        "target": pretty(rt.target),
        "cells": _nat_table(t),
    }
    human = (
        f"{d.name} : {rec['source']} => {rec['target']}\n"
        + _human_table(rec["cells"])
    )
    reporter.emit(rec, human)


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    reporter = Reporter(args.format, args.verbose)
    base = _load_base(args, reporter)
    if base is None:
        return 1
    mode = ModelMode.from_string(args.mode)
    interp = Interpreter(base, max_objects=args.max_objects)
    for path, sf in _parse_all(reporter, _load_sources(args.files)):
        ok_names = _precheck(reporter, path, sf)
        for d in sf.decls:
            if d.name not in ok_names or isinstance(d, TypeDef):
                continue
            for prop, ok, detail in _verify_decl(interp, mode, d):
                rec = {
                    "record": "verify",
                    "file": path,
                    "name": d.name,
                    "property": prop,
                    "ok": ok,
                }
                if detail:
                    rec["detail"] = detail
                status = "ok" if ok else "FAIL"
                human = f"{path}: {d.name}: {prop}: {status}"
                if detail and (not ok or reporter.verbose):
                    human += f" ({detail})"
                reporter.emit(rec, human)
    for prop, ok, detail in _verify_base(interp, mode):
        rec = {"record": "verify", "file": "-", "name": "base", "property": prop, "ok": ok}
        if detail:
            rec["detail"] = detail
        human = f"base: {prop}: {'ok' if ok else 'FAIL'}"
        if detail and (not ok or reporter.verbose):
            human += f" ({detail})"
        reporter.emit(rec, human)
    return 1 if reporter.failed else 0


def _attempt(prop: str, thunk, detail=None):
    try:
        extra = thunk()
        return (prop, True, extra if isinstance(extra, str) else detail)
    except (*_SEM_ERRORS, AssertionError) as e:
        return (prop, False, str(e))


def _verify_decl(interp: Interpreter, mode, d):
    """Yield (property, ok, detail) triples for one declaration."""
    if isinstance(d, ExprDecl):
        holder = {}

        def build():
            holder["p"] = interp.interp(d.context, d.body, d.judgment)
            validate_profunctor(holder["p"])
            n = len(holder["p"].coords)
            return f"{n} coordinates"

        yield _attempt("functor-laws", build)
        if "p" not in holder:
            return
        p = holder["p"]
        yield _attempt("mode", lambda: _check_mode(p, None, mode))
        if isinstance(d.judgment, (TermAt, CoTermAt)):
            yield _attempt(
                "unit-law", lambda: _check_unit_law(interp, d.context, d.body, d.judgment)
            )
        if isinstance(d.judgment, Absurd) and isinstance(d.body, Cut):
            yield _attempt(
                "composition-oracle",
                lambda: _check_composition(interp, d.context, d.body),
            )
        return
    holder = {}

    def build():
        holder["t"] = interp.interp_reduction(d.context, d.body, d.judgment)
        validate_nat(holder["t"])
        return f"{len(holder['t'].components)} components"

    yield _attempt("naturality", build)
    if "t" not in holder:
        return
    t = holder["t"]
    yield _attempt("endpoints", lambda: _check_endpoints(interp, d, t))
    yield _attempt("mode", lambda: _check_mode(None, t, mode))


def _check_mode(p, t, mode):
    if p is not None:
        validate_profunctor(apply_mode(p, mode))
    if t is not None:
        tt = apply_mode_nat(t, mode)
        validate_nat(tt)
    return f"valid under {mode.value}"


def _check_endpoints(interp: Interpreter, d, t: NatTrans):
    rt = check_reduction(d.context, d.body, d.judgment)
    src = interp.interp(d.context, rt.source, rt.judgment)
    tgt = interp.interp(d.context, rt.target, rt.judgment)
    assert t.source.coords == src.coords, "source interface drifted"
    assert t.target.coords == tgt.coords, "target interface drifted"
    assert t.source.body.values == src.body.values, "source fibres drifted"
    assert t.target.body.values == tgt.body.values, "target fibres drifted"
    return "cell endpoints match the checked redex and contractum"


def _check_unit_law(interp: Interpreter, ctx, e, judgment):
    """Cutting against a fresh (co)variable then collapsing is a bijection."""
    eta = interp.eta_collapse(ctx, e, judgment)
    validate_nat(eta)
    n = 0
    for pt, comp in eta.components.items():
        fib_src = eta.source.body.at(pt)
        fib_tgt = eta.target.body.at(pt)
        assert len(comp) == len(fib_src), "component not total"
        assert set(comp.values()) == set(fib_tgt) and len(set(comp.values())) == len(
            comp
        ), f"unit-law component not bijective at {pt!r}"
        n += len(comp)
    return f"bijective on {n} class elements"


def _check_composition(interp: Interpreter, ctx, stmt: Cut):
    """Recompute the cut's coend partition by generator-edge closure."""
    comp = interp.cut_data(ctx, stmt)
    base = comp.coend_data.base
    lslot = comp.left.slot(comp.coord)
    rslot = comp.right.slot(comp.coord)
    checked = 0
    for rp, by_class in comp.coend_data.members.items():
        nodes = []
        for a in base.objects:
            lp = comp.left_point(rp, a)
            qp = comp.right_point(rp, a)
            for pe in comp.left.body.at(lp):
                for qe in comp.right.body.at(qp):
                    nodes.append((a, (pe, qe)))
        adj = {n: {n} for n in nodes}
        for f, (a, b) in base.arrows.items():
            if base.is_identity(f):
                continue
            lp_b = comp.left_point(rp, b)
            qp_a = comp.right_point(rp, a)
            for pe in comp.left.body.at(lp_b):
                for qe in comp.right.body.at(qp_a):
                    # e at (cov=a, contra=b): pushing right forward along f
                    # and left backward along f land on the two diagonals
                    left_node = (a, (comp.left.body.apply1(lp_b, lslot, f, pe), qe))
                    right_node = (b, (pe, comp.right.body.apply1(qp_a, rslot, f, qe)))
                    adj[left_node].add(right_node)
                    adj[right_node].add(left_node)
        seen = set()
        blocks = set()
        for start in nodes:
            if start in seen:
                continue
            block = set()
            frontier = [start]
            while frontier:
                x = frontier.pop()
                if x in block:
                    continue
                block.add(x)
                frontier.extend(adj[x])
            seen |= block
            blocks.add(frozenset(block))
        engine = {frozenset(ms) for ms in by_class.values()}
        assert engine == blocks, f"coend partition mismatch at {rp!r}"
        checked += len(nodes)
    return f"partition agrees on {checked} diagonal elements"


def _verify_base(interp: Interpreter, mode):
    """Coincidence probes over the base assignment's categories."""
    names = sorted(interp.base.cats)[:3]
    if not names and interp.base.fallback is not None:
        names = ["B"]
    ran = 0
    for name in names:
        cat = interp.base.lookup(name)
        if len(cat.objects) > 4:
            continue
        b = Base(name)
        ctx = (("z", POS, b), ("c", NEG, b))
        probes = [
            ("collapse", CoVar("c"), Var("z")),
            ("bound", CoVar("c"), Mu("d", Cut(Var("z"), CoVar("a"), b))),
        ]
        for tag, k, m in probes:
            ran += 1
            yield _attempt(
                f"coincidence[{name},{tag}]",
                lambda k=k, m=m: _run_coincidence(interp, ctx, k, m, b),
            )
    if not ran:
        yield ("coincidence", True, "no base categories small enough to probe")


def _run_coincidence(interp: Interpreter, ctx, k, m, b):
    assert interp.coincidence_check(ctx, k, "a", m, b, b), "routes disagree"
    return "both substitution routes give the same 2-cell"


# ---------------------------------------------------------------------------
# demos


def _demo_lafont(reporter: Reporter, interp: Interpreter):
    """One source statement with two beta reductions out of it."""
    b, c, a = Base("B"), Base("C"), Base("A")
    ctx = (("y", POS, b), ("l", NEG, b), ("z", POS, c), ("m", NEG, c))
    s = Cut(Var("y"), CoVar("l"), b)
    t = Cut(Var("z"), CoVar("m"), c)
    source = Cut(Mu("a", s), MuTilde("x", t), a)
    left = BetaMu(MuTilde("x", t), "a", s, a)
    right = BetaMuTilde(Mu("a", s), "x", t, a)
    lt = check_reduction(ctx, left, Absurd())
    rtyp = check_reduction(ctx, right, Absurd())
    assert lt.source == rtyp.source == source
    nl = interp.interp_reduction(ctx, left, Absurd())
    nr = interp.interp_reduction(ctx, right, Absurd())
    validate_nat(nl)
    validate_nat(nr)
    targets_differ = lt.target != rtyp.target
    rec = {
        "record": "demo",
        "demo": "lafont",
        "ok": targets_differ,
        "source": pretty(source),
        "reductions": [
            {"witness": pretty(left), "target": pretty(lt.target)},
            {"witness": pretty(right), "target": pretty(rtyp.target)},
        ],
        "targets_differ": targets_differ,
        "left_cells": _nat_table(nl),
        "right_cells": _nat_table(nr),
    }
    human = "\n".join(
        [
            "critical pair: an abstraction cut against a co-abstraction",
            f"  source  {pretty(source)}",
            f"  mu step       {pretty(left)}",
            f"     target     {pretty(lt.target)}",
            f"  mu~ step      {pretty(right)}",
            f"     target     {pretty(rtyp.target)}",
            f"  targets differ: {targets_differ}",
            "  interpreted 2-cells out of the shared source:",
            "   left:",
            _human_table(rec["left_cells"], indent="    "),
            "   right:",
            _human_table(rec["right_cells"], indent="    "),
        ]
    )
    reporter.emit(rec, human)


def _demo_nondegeneracy(reporter: Reporter, interp: Interpreter, parsed):
    """Search for two distinct parallel 2-cells in the unrestricted model."""
    corpus_pairs = 0
    witness = None
    for path, sf in parsed:
        rep = degeneracy_report(sf.decls, interp, ModelMode.PROF)
        corpus_pairs += len(rep.pairs)
        if rep.distinct and witness is None:
            pr = rep.distinct[0]
            witness = {
                "left": pr.left,
                "right": pr.right,
                "judgment": pr.judgment,
                "point": [show(o) for o in pr.point],
                "from": path,
            }
    searched = corpus_pairs
    if witness is None:
        n, wit = nondegeneracy_search(interp, ModelMode.PROF)
        searched += n
        if wit is not None:
            witness = {
                "left": pretty(wit.left),
                "right": pretty(wit.right),
                "judgment": pretty_judgment(wit.judgment),
                "point": [show(o) for o in wit.point],
                "from": "generated",
            }
    rec = {
        "record": "demo",
        "demo": "nondegeneracy",
        "ok": True,
        "searched": searched,
        "witness": witness,
    }
    if witness is None:
        human = (
            "no distinct parallel pair over this base;"
            f" searched {searched} derivation pairs"
        )
    else:
        human = "\n".join(
            [
                "distinct parallel 2-cells found"
                f" (searched {searched} derivation pairs):",
                f"  left:  {witness['left']}",
                f"  right: {witness['right']}",
                f"  parallel at {witness['judgment']}",
                f"  differ at point ({', '.join(witness['point'])})",
            ]
        )
    reporter.emit(rec, human)


def _demo_rel_collapse(reporter: Reporter, interp: Interpreter, parsed):
    """Every parallel pair collapses after truncation."""
    pairs = 0
    distinct = 0
    notes: list[str] = []
    for _, sf in parsed:
        rep = degeneracy_report(sf.decls, interp, ModelMode.REL)
        pairs += len(rep.pairs)
        distinct += len(rep.distinct)
        notes.extend(n for n in rep.type_notes if n not in notes)
    rec = {
        "record": "demo",
        "demo": "rel-collapse",
        "ok": distinct == 0,
        "parallel_pairs": pairs,
        "distinct_pairs": distinct,
        "type_notes": notes,
    }
    human = "\n".join(
        [
            f"parallel 2-cell pairs compared after truncation: {pairs}",
            f"{distinct} distinct parallel pairs",
            *("  " + n for n in notes),
        ]
    )
    reporter.emit(rec, human)


def cmd_demo(args) -> int:
    reporter = Reporter(args.format, args.verbose)
    base = _load_base(args, reporter)
    if base is None:
        return 1
    interp = Interpreter(base, max_objects=args.max_objects)
    try:
        if args.which == "lafont":
            _demo_lafont(reporter, interp)
        else:
            parsed = _parse_all(reporter, _load_sources(args.files))
            if args.which == "nondegeneracy":
                _demo_nondegeneracy(reporter, interp, parsed)
            else:
                _demo_rel_collapse(reporter, interp, parsed)
    except _SEM_ERRORS as e:
        reporter.emit(
            {"record": "demo", "demo": args.which, "ok": False, "message": str(e)},
            f"demo {args.which}: FAIL {e}",
        )
    return 1 if reporter.failed else 0


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(sp, base_required: bool):
    sp.add_argument(
        "--format",
        choices=("human", "json-lines"),
        default="human",
        help="output format (default human)",
    )
    sp.add_argument("-v", "--verbose", action="store_true", help="more detail")
    if base_required:
        sp.add_argument(
            "--base",
            metavar="PATH",
            help=f"base assignment file (default ${BASE_ENV})",
        )
        sp.add_argument(
            "--mode",
            choices=("prof", "span", "rel"),
            default="prof",
            help="model mode (default prof)",
        )
        sp.add_argument(
            "--max-objects",
            type=int,
            default=128,
            metavar="N",
            help="refuse interpreted categories above N objects",
        )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="seqprof",
        description="typecheck sequent derivations and interpret them"
        " as profunctors over finite categories",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", help="parse and typecheck declaration files")
    sp.add_argument("files", nargs="+", metavar="FILE")
    _add_common(sp, base_required=False)
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("interp", help="interpret declarations over a base")
    sp.add_argument("files", nargs="+", metavar="FILE")
    _add_common(sp, base_required=True)
    sp.set_defaults(fn=cmd_interp)

    sp = sub.add_parser("verify", help="re-derive semantic invariants")
    sp.add_argument("files", nargs="+", metavar="FILE")
    _add_common(sp, base_required=True)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("demo", help="run a built-in demonstration")
    sp.add_argument(
        "which", choices=("lafont", "nondegeneracy", "rel-collapse")
    )
    sp.add_argument(
        "files",
        nargs="*",
        metavar="FILE",
        help="declaration files (nondegeneracy and rel-collapse)",
    )
    _add_common(sp, base_required=True)
    sp.set_defaults(fn=cmd_demo)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    # argparse cannot match positionals split across option runs
    # ("demo lafont --base B file.c2"), so collect the stragglers by hand
    args, extra = ap.parse_known_args(argv)
    if extra:
        flags = [a for a in extra if a.startswith("-")]
        if flags or not hasattr(args, "files"):
            ap.error(f"unrecognized arguments: {' '.join(extra)}")
        args.files = list(args.files) + extra
    if args.command == "demo" and args.which == "rel-collapse" and not args.files:
        print("seqprof demo rel-collapse: needs at least one FILE", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except _Usage as e:
        print(f"seqprof {args.command}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
