"""Bidirectional checking for declarations and reduction witnesses.

Terms and co-terms split into two modes: forms whose type is determined
by their parts (variables, pairs, case splits, negation intro/elim, the
units) can be inferred, while forms that take their type from the
surrounding cut (mu, mu~, injections, projections) can only be checked.
A cut carries its own annotation and checks both sides against it, so
every well-formed statement checks without further annotations.

Reduction witnesses are checked the same way.  Checking a witness also
computes the two endpoint expressions it relates, so a successful check
returns a `ReductionTyping` with the source, the target and the shared
judgment.  Congruence witnesses for check-only constructors are
themselves check-only; the expected judgment is threaded down from the
declaration head.

Binders that clash with a context name are renamed before being pushed,
deterministically, so checking never depends on the ambient names and
alpha-equivalent inputs check identically.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    Absurd,
    BetaFst,
    BetaInl,
    BetaInr,
    BetaMu,
    BetaMuTilde,
    BetaNot,
    BetaSnd,
    Bot,
    Case,
    CongCase,
    CongCut,
    CongFst,
    CongInl,
    CongInr,
    CongMu,
    CongMuTilde,
    CongNotElim,
    CongNotIntro,
    CongPair,
    CongSnd,
    Context,
    CoTermAt,
    CoUnit,
    CoVar,
    Cut,
    Expr,
    Fst,
    Inl,
    Inr,
    Judgment,
    Mu,
    MuTilde,
    NEG,
    NotElim,
    NotIntro,
    Not,
    Or,
    POS,
    Pair,
    ReductionExpr,
    Refl,
    Snd,
    TermAt,
    Top,
    Trans,
    Unit,
    VAR,
    COVAR,
    Var,
    And,
    alpha_eq,
    free_names,
    fresh_name,
    subst,
)
from .parser import (
    ExprDecl,
    RedDecl,
    SourceFile,
    TypeDef,
    pretty,
    pretty_judgment,
    pretty_type,
)

# Every checking failure carries one of these classes; the negative
# corpus has one fixture per class.
ERROR_CLASSES = (
    "parse-error",
    "duplicate-declaration",
    "duplicate-hypothesis",
    "unbound-variable",
    "unbound-covariable",
    "covar-as-term",
    "var-as-coterm",
    "type-mismatch",
    "judgment-mismatch",
    "cannot-infer",
    "shape-conjunction",
    "shape-disjunction",
    "shape-negation",
    "shape-top",
    "shape-bottom",
    "trans-endpoint-mismatch",
)

# Names a successful derivation can note in its trace, one per rule:
# the typing rules for the four judgment subjects, then the reduction
# axioms and their congruence closure.
RULES = (
    "var", "covar", "cut", "mu", "mu-tilde",
    "unit", "counit", "pair", "fst", "snd", "case", "inl", "inr",
    "not-intro", "not-elim",
    "refl", "trans",
    "beta-mu", "beta-mu-tilde", "beta-fst", "beta-snd",
    "beta-inl", "beta-inr", "beta-not",
    "cong-mu", "cong-mu-tilde", "cong-cut", "cong-pair", "cong-case",
    "cong-inl", "cong-inr", "cong-fst", "cong-snd",
    "cong-not-intro", "cong-not-elim",
)


class CheckError(Exception):
    def __init__(self, error_class: str, message: str):
        assert error_class in ERROR_CLASSES
        super().__init__(message)
        self.error_class = error_class


@dataclass(frozen=True)
class ReductionTyping:
    """A checked reduction: source and target at a shared judgment."""

    source: Expr
    target: Expr
    judgment: Judgment
    context: Context


def context_names(ctx: Context) -> set[str]:
    return {h[0] for h in ctx}


def validate_context(ctx: Context) -> None:
    seen = set()
    for name, _, _ in ctx:
        if name in seen:
            raise CheckError(
                "duplicate-hypothesis", f"hypothesis {name!r} appears twice"
            )
        seen.add(name)


def lookup(ctx: Context, name: str):
    for h in ctx:
        if h[0] == name:
            return h
    return None


def extend(ctx: Context, name: str, pol: str, ty) -> Context:
    return ctx + ((name, pol, ty),)


def open_binder(ctx: Context, name: str, kind: str, body):
    """Freshen a binder against the ambient context before pushing it.

    Works on expression and reduction bodies alike.  The rename is a
    function of (ctx, name, body), so repeated checks agree.
    """
    if name not in context_names(ctx):
        return name, body
    nf = fresh_name(name, context_names(ctx) | free_names(body))
    rep = Var(nf) if kind == VAR else CoVar(nf)
    return nf, subst(body, name, rep)


def _note(trace, rule: str) -> None:
    if trace is not None:
        trace.append(rule)


def _as_term(j: Judgment):
    if not isinstance(j, TermAt):
        raise CheckError("judgment-mismatch", f"expected a term, got one at {pretty_judgment(j)}")
    return j.type


def _as_coterm(j: Judgment):
    if not isinstance(j, CoTermAt):
        raise CheckError("judgment-mismatch", f"expected a co-term, got one at {pretty_judgment(j)}")
    return j.type


def infer_expr(ctx: Context, e: Expr, trace=None) -> Judgment:
    """Infer the judgment of e, or raise cannot-infer for check-only forms."""
    match e:
        case Var(x):
            hyp = lookup(ctx, x)
            if hyp is None:
                raise CheckError("unbound-variable", f"variable {x!r} is not in scope")
            if hyp[1] != POS:
                raise CheckError(
                    "covar-as-term", f"{x!r} is a co-variable but occurs in term position"
                )
            _note(trace, "var")
            return TermAt(hyp[2])
        case CoVar(a):
            hyp = lookup(ctx, a)
            if hyp is None:
                raise CheckError("unbound-covariable", f"co-variable {a!r} is not in scope")
            if hyp[1] != NEG:
                raise CheckError(
                    "var-as-coterm", f"{a!r} is a variable but occurs in co-term position"
                )
            _note(trace, "covar")
            return CoTermAt(hyp[2])
        case Unit():
            _note(trace, "unit")
            return TermAt(Top())
        case CoUnit():
            _note(trace, "counit")
            return CoTermAt(Bot())
        case Pair(m, n):
            a = _as_term(infer_expr(ctx, m, trace))
            b = _as_term(infer_expr(ctx, n, trace))
            _note(trace, "pair")
            return TermAt(And(a, b))
        case Case(k, l):
            a = _as_coterm(infer_expr(ctx, k, trace))
            b = _as_coterm(infer_expr(ctx, l, trace))
            _note(trace, "case")
            return CoTermAt(Or(a, b))
        case NotIntro(k):
            a = _as_coterm(infer_expr(ctx, k, trace))
            _note(trace, "not-intro")
            return TermAt(Not(a))
        case NotElim(m):
            a = _as_term(infer_expr(ctx, m, trace))
            _note(trace, "not-elim")
            return CoTermAt(Not(a))
        case Cut(m, k, t):
            check_expr(ctx, m, TermAt(t), trace)
            check_expr(ctx, k, CoTermAt(t), trace)
            _note(trace, "cut")
            return Absurd()
        case Mu(_, _):
            raise CheckError("cannot-infer", "mu takes its type from the enclosing cut")
        case MuTilde(_, _):
            raise CheckError("cannot-infer", "mu~ takes its type from the enclosing cut")
        case Inl(_) | Inr(_):
            raise CheckError(
                "cannot-infer", "an injection does not determine the other summand"
            )
        case Fst(_) | Snd(_):
            raise CheckError(
                "cannot-infer", "a projection does not determine the other factor"
            )
        case _:
            raise TypeError(f"not an expression: {e!r}")


def check_expr(ctx: Context, e: Expr, expected: Judgment, trace=None) -> None:
    match e:
        case Var(_) | CoVar(_) | Unit() | CoUnit():
            _check_atomic(ctx, e, expected, trace)
        case Mu(a, s):
            ty = _as_term(expected)
            a2, s2 = open_binder(ctx, a, COVAR, s)
            check_expr(extend(ctx, a2, NEG, ty), s2, Absurd(), trace)
            _note(trace, "mu")
        case MuTilde(x, s):
            ty = _as_coterm(expected)
            x2, s2 = open_binder(ctx, x, VAR, s)
            check_expr(extend(ctx, x2, POS, ty), s2, Absurd(), trace)
            _note(trace, "mu-tilde")
        case Pair(m, n):
            ty = _as_term(expected)
            if not isinstance(ty, And):
                raise CheckError(
                    "shape-conjunction", f"a pair needs a conjunction, got {pretty_type(ty)}"
                )
            check_expr(ctx, m, TermAt(ty.left), trace)
            check_expr(ctx, n, TermAt(ty.right), trace)
            _note(trace, "pair")
        case Inl(m):
            ty = _as_term(expected)
            if not isinstance(ty, Or):
                raise CheckError(
                    "shape-disjunction", f"an injection needs a disjunction, got {pretty_type(ty)}"
                )
            check_expr(ctx, m, TermAt(ty.left), trace)
            _note(trace, "inl")
        case Inr(m):
            ty = _as_term(expected)
            if not isinstance(ty, Or):
                raise CheckError(
                    "shape-disjunction", f"an injection needs a disjunction, got {pretty_type(ty)}"
                )
            check_expr(ctx, m, TermAt(ty.right), trace)
            _note(trace, "inr")
        case NotIntro(k):
            ty = _as_term(expected)
            if not isinstance(ty, Not):
                raise CheckError(
                    "shape-negation", f"not+ needs a negation, got {pretty_type(ty)}"
                )
            check_expr(ctx, k, CoTermAt(ty.body), trace)
            _note(trace, "not-intro")
        case Fst(k):
            ty = _as_coterm(expected)
            if not isinstance(ty, And):
                raise CheckError(
                    "shape-conjunction", f"a projection needs a conjunction, got {pretty_type(ty)}"
                )
            check_expr(ctx, k, CoTermAt(ty.left), trace)
            _note(trace, "fst")
        case Snd(k):
            ty = _as_coterm(expected)
            if not isinstance(ty, And):
                raise CheckError(
                    "shape-conjunction", f"a projection needs a conjunction, got {pretty_type(ty)}"
                )
            check_expr(ctx, k, CoTermAt(ty.right), trace)
            _note(trace, "snd")
        case Case(k, l):
            ty = _as_coterm(expected)
            if not isinstance(ty, Or):
                raise CheckError(
                    "shape-disjunction", f"case needs a disjunction, got {pretty_type(ty)}"
                )
            check_expr(ctx, k, CoTermAt(ty.left), trace)
            check_expr(ctx, l, CoTermAt(ty.right), trace)
            _note(trace, "case")
        case NotElim(m):
            ty = _as_coterm(expected)
            if not isinstance(ty, Not):
                raise CheckError(
                    "shape-negation", f"not- needs a negation, got {pretty_type(ty)}"
                )
            check_expr(ctx, m, TermAt(ty.body), trace)
            _note(trace, "not-elim")
        case Cut(m, k, t):
            if not isinstance(expected, Absurd):
                raise CheckError(
                    "judgment-mismatch",
                    f"a statement has no type, expected {pretty_judgment(expected)}",
                )
            check_expr(ctx, m, TermAt(t), trace)
            check_expr(ctx, k, CoTermAt(t), trace)
            _note(trace, "cut")
        case _:
            raise TypeError(f"not an expression: {e!r}")


def _check_atomic(ctx, e, expected, trace):
    # inferable leaves: infer, then compare against the expectation
    got = infer_expr(ctx, e, trace)
    if type(got) is not type(expected):
        raise CheckError(
            "judgment-mismatch",
            f"found {pretty_judgment(got)}, expected {pretty_judgment(expected)}",
        )
    if got != expected:
        if isinstance(e, Unit):
            raise CheckError("shape-top", f"() has the unit type, expected {pretty_judgment(expected)}")
        if isinstance(e, CoUnit):
            raise CheckError("shape-bottom", f"[] refutes the empty type, expected {pretty_judgment(expected)}")
        raise CheckError(
            "type-mismatch",
            f"{pretty(e)} is at {pretty_judgment(got)}, expected {pretty_judgment(expected)}",
        )


def _require_judgment(expected: Judgment | None, computed: Judgment) -> Judgment:
    if expected is None or expected == computed:
        return computed
    if type(expected) is type(computed):
        raise CheckError(
            "type-mismatch",
            f"reduction lives at {pretty_judgment(computed)}, expected {pretty_judgment(expected)}",
        )
    raise CheckError(
        "judgment-mismatch",
        f"reduction lives at {pretty_judgment(computed)}, expected {pretty_judgment(expected)}",
    )


def check_reduction(
    ctx: Context, r: ReductionExpr, expected: Judgment | None = None, trace=None
) -> ReductionTyping:
    """Check a reduction witness; returns its endpoints and judgment.

    `expected` is the judgment from the declaration head (None when the
    caller wants inference).  Witnesses whose subjects are check-only
    need it; the beta witnesses determine everything themselves.
    """
    match r:
        case Refl(u):
            if expected is None:
                j = infer_expr(ctx, u, trace)
            else:
                check_expr(ctx, u, expected, trace)
                j = expected
            _note(trace, "refl")
            return ReductionTyping(u, u, j, ctx)
        case Trans(p, q):
            tp = check_reduction(ctx, p, expected, trace)
            tq = check_reduction(ctx, q, tp.judgment, trace)
            if not alpha_eq(tp.target, tq.source):
                raise CheckError(
                    "trans-endpoint-mismatch",
                    f"cannot chain: {pretty(tp.target)} is not {pretty(tq.source)}",
                )
            _note(trace, "trans")
            return ReductionTyping(tp.source, tq.target, tp.judgment, ctx)
        case BetaMu(k, a, s, ann):
            if ann is not None:
                check_expr(ctx, k, CoTermAt(ann), trace)
                ty = ann
            else:
                ty = _as_coterm(infer_expr(ctx, k, trace))
            a2, s2 = open_binder(ctx, a, COVAR, s)
            check_expr(extend(ctx, a2, NEG, ty), s2, Absurd(), trace)
            j = _require_judgment(expected, Absurd())
            _note(trace, "beta-mu")
            return ReductionTyping(Cut(Mu(a, s), k, ty), subst(s, a, k), j, ctx)
        case BetaMuTilde(m, x, s, ann):
            if ann is not None:
                check_expr(ctx, m, TermAt(ann), trace)
                ty = ann
            else:
                ty = _as_term(infer_expr(ctx, m, trace))
            x2, s2 = open_binder(ctx, x, VAR, s)
            check_expr(extend(ctx, x2, POS, ty), s2, Absurd(), trace)
            j = _require_judgment(expected, Absurd())
            _note(trace, "beta-mu-tilde")
            return ReductionTyping(Cut(m, MuTilde(x, s), ty), subst(s, x, m), j, ctx)
        case BetaFst(m, n, k):
            a = _as_term(infer_expr(ctx, m, trace))
            b = _as_term(infer_expr(ctx, n, trace))
            check_expr(ctx, k, CoTermAt(a), trace)
            j = _require_judgment(expected, Absurd())
            _note(trace, "beta-fst")
            return ReductionTyping(
                Cut(Pair(m, n), Fst(k), And(a, b)), Cut(m, k, a), j, ctx
            )
        case BetaSnd(m, n, k):
            a = _as_term(infer_expr(ctx, m, trace))
            b = _as_term(infer_expr(ctx, n, trace))
            check_expr(ctx, k, CoTermAt(b), trace)
            j = _require_judgment(expected, Absurd())
            _note(trace, "beta-snd")
            return ReductionTyping(
                Cut(Pair(m, n), Snd(k), And(a, b)), Cut(n, k, b), j, ctx
            )
        case BetaInl(k, l, m):
            a = _as_coterm(infer_expr(ctx, k, trace))
            b = _as_coterm(infer_expr(ctx, l, trace))
            check_expr(ctx, m, TermAt(a), trace)
            j = _require_judgment(expected, Absurd())
            _note(trace, "beta-inl")
            return ReductionTyping(
                Cut(Inl(m), Case(k, l), Or(a, b)), Cut(m, k, a), j, ctx
            )
        case BetaInr(k, l, m):
            a = _as_coterm(infer_expr(ctx, k, trace))
            b = _as_coterm(infer_expr(ctx, l, trace))
            check_expr(ctx, m, TermAt(b), trace)
            j = _require_judgment(expected, Absurd())
            _note(trace, "beta-inr")
            return ReductionTyping(
                Cut(Inr(m), Case(k, l), Or(a, b)), Cut(m, l, b), j, ctx
            )
        case BetaNot(m, k):
            a = _as_term(infer_expr(ctx, m, trace))
            check_expr(ctx, k, CoTermAt(a), trace)
            j = _require_judgment(expected, Absurd())
            _note(trace, "beta-not")
            return ReductionTyping(
                Cut(NotIntro(k), NotElim(m), Not(a)), Cut(m, k, a), j, ctx
            )
        case CongMu(a, p):
            if expected is None:
                raise CheckError("cannot-infer", "a mu congruence takes its type from the head")
            ty = _as_term(expected)
            a2, p2 = open_binder(ctx, a, COVAR, p)
            tp = check_reduction(extend(ctx, a2, NEG, ty), p2, Absurd(), trace)
            _note(trace, "cong-mu")
            return ReductionTyping(Mu(a2, tp.source), Mu(a2, tp.target), expected, ctx)
        case CongMuTilde(x, p):
            if expected is None:
                raise CheckError("cannot-infer", "a mu~ congruence takes its type from the head")
            ty = _as_coterm(expected)
            x2, p2 = open_binder(ctx, x, VAR, p)
            tp = check_reduction(extend(ctx, x2, POS, ty), p2, Absurd(), trace)
            _note(trace, "cong-mu-tilde")
            return ReductionTyping(
                MuTilde(x2, tp.source), MuTilde(x2, tp.target), expected, ctx
            )
        case CongCut(p, q, t):
            tp = check_reduction(ctx, p, TermAt(t), trace)
            tq = check_reduction(ctx, q, CoTermAt(t), trace)
            j = _require_judgment(expected, Absurd())
            _note(trace, "cong-cut")
            return ReductionTyping(
                Cut(tp.source, tq.source, t), Cut(tp.target, tq.target, t), j, ctx
            )
        case CongPair(p, q):
            if expected is None:
                tp = check_reduction(ctx, p, None, trace)
                tq = check_reduction(ctx, q, None, trace)
                j = TermAt(And(_as_term(tp.judgment), _as_term(tq.judgment)))
            else:
                ty = _as_term(expected)
                if not isinstance(ty, And):
                    raise CheckError(
                        "shape-conjunction",
                        f"a pair congruence needs a conjunction, got {pretty_type(ty)}",
                    )
                tp = check_reduction(ctx, p, TermAt(ty.left), trace)
                tq = check_reduction(ctx, q, TermAt(ty.right), trace)
                j = expected
            _note(trace, "cong-pair")
            return ReductionTyping(
                Pair(tp.source, tq.source), Pair(tp.target, tq.target), j, ctx
            )
        case CongCase(p, q):
            if expected is None:
                tp = check_reduction(ctx, p, None, trace)
                tq = check_reduction(ctx, q, None, trace)
                j = CoTermAt(Or(_as_coterm(tp.judgment), _as_coterm(tq.judgment)))
            else:
                ty = _as_coterm(expected)
                if not isinstance(ty, Or):
                    raise CheckError(
                        "shape-disjunction",
                        f"a case congruence needs a disjunction, got {pretty_type(ty)}",
                    )
                tp = check_reduction(ctx, p, CoTermAt(ty.left), trace)
                tq = check_reduction(ctx, q, CoTermAt(ty.right), trace)
                j = expected
            _note(trace, "cong-case")
            return ReductionTyping(
                Case(tp.source, tq.source), Case(tp.target, tq.target), j, ctx
            )
        case CongInl(p):
            if expected is None:
                raise CheckError("cannot-infer", "an injection congruence needs the full disjunction")
            ty = _as_term(expected)
            if not isinstance(ty, Or):
                raise CheckError(
                    "shape-disjunction",
                    f"an injection congruence needs a disjunction, got {pretty_type(ty)}",
                )
            tp = check_reduction(ctx, p, TermAt(ty.left), trace)
            _note(trace, "cong-inl")
            return ReductionTyping(Inl(tp.source), Inl(tp.target), expected, ctx)
        case CongInr(p):
            if expected is None:
                raise CheckError("cannot-infer", "an injection congruence needs the full disjunction")
            ty = _as_term(expected)
            if not isinstance(ty, Or):
                raise CheckError(
                    "shape-disjunction",
                    f"an injection congruence needs a disjunction, got {pretty_type(ty)}",
                )
            tp = check_reduction(ctx, p, TermAt(ty.right), trace)
            _note(trace, "cong-inr")
            return ReductionTyping(Inr(tp.source), Inr(tp.target), expected, ctx)
        case CongFst(p):
            if expected is None:
                raise CheckError("cannot-infer", "a projection congruence needs the full conjunction")
            ty = _as_coterm(expected)
            if not isinstance(ty, And):
                raise CheckError(
                    "shape-conjunction",
                    f"a projection congruence needs a conjunction, got {pretty_type(ty)}",
                )
            tp = check_reduction(ctx, p, CoTermAt(ty.left), trace)
            _note(trace, "cong-fst")
            return ReductionTyping(Fst(tp.source), Fst(tp.target), expected, ctx)
        case CongSnd(p):
            if expected is None:
                raise CheckError("cannot-infer", "a projection congruence needs the full conjunction")
            ty = _as_coterm(expected)
            if not isinstance(ty, And):
                raise CheckError(
                    "shape-conjunction",
                    f"a projection congruence needs a conjunction, got {pretty_type(ty)}",
                )
            tp = check_reduction(ctx, p, CoTermAt(ty.right), trace)
            _note(trace, "cong-snd")
            return ReductionTyping(Snd(tp.source), Snd(tp.target), expected, ctx)
        case CongNotIntro(q):
            if expected is None:
                tq = check_reduction(ctx, q, None, trace)
                j = TermAt(Not(_as_coterm(tq.judgment)))
            else:
                ty = _as_term(expected)
                if not isinstance(ty, Not):
                    raise CheckError(
                        "shape-negation",
                        f"a not+ congruence needs a negation, got {pretty_type(ty)}",
                    )
                tq = check_reduction(ctx, q, CoTermAt(ty.body), trace)
                j = expected
            _note(trace, "cong-not-intro")
            return ReductionTyping(NotIntro(tq.source), NotIntro(tq.target), j, ctx)
        case CongNotElim(p):
            if expected is None:
                tp = check_reduction(ctx, p, None, trace)
                j = CoTermAt(Not(_as_term(tp.judgment)))
            else:
                ty = _as_coterm(expected)
                if not isinstance(ty, Not):
                    raise CheckError(
                        "shape-negation",
                        f"a not- congruence needs a negation, got {pretty_type(ty)}",
                    )
                tp = check_reduction(ctx, p, TermAt(ty.body), trace)
                j = expected
            _note(trace, "cong-not-elim")
            return ReductionTyping(NotElim(tp.source), NotElim(tp.target), j, ctx)
        case _:
            raise TypeError(f"not a reduction witness: {r!r}")


@dataclass
class CheckRecord:
    """Per-declaration outcome, ready for reporting."""

    name: str
    kind: str
    line: int
    col: int
    ok: bool
    judgment: str | None = None
    source: str | None = None
    target: str | None = None
    error_class: str | None = None
    message: str | None = None

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "kind": self.kind,
            "line": self.line,
            "col": self.col,
            "ok": self.ok,
        }
        for key in ("judgment", "source", "target", "error_class", "message"):
            v = getattr(self, key)
            if v is not None:
                d[key] = v
        return d


_KIND = {TermAt: "term", CoTermAt: "coterm", Absurd: "statement"}


def check_file(sf: SourceFile, trace=None) -> list[CheckRecord]:
    """Check every declaration; failures are recorded, not raised."""
    seen: set[str] = set()
    out: list[CheckRecord] = []
    for d in sf.decls:
        kind = "type" if isinstance(d, TypeDef) else (
            "reduction" if isinstance(d, RedDecl) else _KIND[type(d.judgment)]
        )
        rec = CheckRecord(d.name, kind, d.line, d.col, True)
        try:
            if d.name in seen:
                raise CheckError(
                    "duplicate-declaration", f"{d.name!r} is declared twice"
                )
            seen.add(d.name)
            if isinstance(d, ExprDecl):
                validate_context(d.context)
                check_expr(d.context, d.body, d.judgment, trace)
                rec.judgment = pretty_judgment(d.judgment)
            elif isinstance(d, RedDecl):
                validate_context(d.context)
                rt = check_reduction(d.context, d.body, d.judgment, trace)
                rec.judgment = pretty_judgment(rt.judgment)
                rec.source = pretty(rt.source)
                rec.target = pretty(rt.target)
        except CheckError as err:
            rec.ok = False
            rec.error_class = err.error_class
            rec.message = str(err)
        out.append(rec)
    return out
