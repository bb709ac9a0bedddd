"""Abstract syntax for the two-sided sequent calculus.

Expressions come in three sorts: terms (producers), co-terms (consumers)
and statements (cuts of a producer against a consumer).  Reduction
witnesses form a fourth layer whose leaves are beta steps and whose
interior nodes are reflexivity, transitivity and congruence rules.

Names are strings.  Variables and co-variables share the lexical space
but are distinguished by kind everywhere it matters: a mu binder only
captures co-variable occurrences and a mu~ binder only variable ones.
"""

from __future__ import annotations

from dataclasses import dataclass

VAR = "var"
COVAR = "covar"


class TypeExpr:
    __slots__ = ()


@dataclass(frozen=True)
class Top(TypeExpr):
    pass


@dataclass(frozen=True)
class Bot(TypeExpr):
    pass


@dataclass(frozen=True)
class And(TypeExpr):
    left: TypeExpr
    right: TypeExpr


@dataclass(frozen=True)
class Or(TypeExpr):
    left: TypeExpr
    right: TypeExpr


@dataclass(frozen=True)
class Not(TypeExpr):
    body: TypeExpr


@dataclass(frozen=True)
class Base(TypeExpr):
    name: str


class TermExpr:
    __slots__ = ()


class CoTermExpr:
    __slots__ = ()


class StatementExpr:
    __slots__ = ()


@dataclass(frozen=True)
class Var(TermExpr):
    name: str


@dataclass(frozen=True)
class Mu(TermExpr):
    covar: str
    body: "StatementExpr"


@dataclass(frozen=True)
class Unit(TermExpr):
    pass


@dataclass(frozen=True)
class Pair(TermExpr):
    left: TermExpr
    right: TermExpr


@dataclass(frozen=True)
class Inl(TermExpr):
    body: TermExpr


@dataclass(frozen=True)
class Inr(TermExpr):
    body: TermExpr


@dataclass(frozen=True)
class NotIntro(TermExpr):
    body: CoTermExpr


@dataclass(frozen=True)
class CoVar(CoTermExpr):
    name: str


@dataclass(frozen=True)
class MuTilde(CoTermExpr):
    var: str
    body: "StatementExpr"


@dataclass(frozen=True)
class CoUnit(CoTermExpr):
    pass


@dataclass(frozen=True)
class Fst(CoTermExpr):
    body: CoTermExpr


@dataclass(frozen=True)
class Snd(CoTermExpr):
    body: CoTermExpr


@dataclass(frozen=True)
class Case(CoTermExpr):
    left: CoTermExpr
    right: CoTermExpr


@dataclass(frozen=True)
class NotElim(CoTermExpr):
    body: TermExpr


@dataclass(frozen=True)
class Cut(StatementExpr):
    term: TermExpr
    coterm: CoTermExpr
    cut_type: TypeExpr


Expr = TermExpr | CoTermExpr | StatementExpr


class ReductionExpr:
    __slots__ = ()


@dataclass(frozen=True)
class Refl(ReductionExpr):
    subject: Expr


@dataclass(frozen=True)
class Trans(ReductionExpr):
    first: ReductionExpr
    second: ReductionExpr


@dataclass(frozen=True)
class BetaMu(ReductionExpr):
    # cut_type pins the redex type when the co-term side is check-only
    coterm: CoTermExpr
    covar: str
    body: StatementExpr
    cut_type: TypeExpr | None = None


@dataclass(frozen=True)
class BetaMuTilde(ReductionExpr):
    term: TermExpr
    var: str
    body: StatementExpr
    cut_type: TypeExpr | None = None


@dataclass(frozen=True)
class BetaFst(ReductionExpr):
    left: TermExpr
    right: TermExpr
    coterm: CoTermExpr


@dataclass(frozen=True)
class BetaSnd(ReductionExpr):
    left: TermExpr
    right: TermExpr
    coterm: CoTermExpr


@dataclass(frozen=True)
class BetaInl(ReductionExpr):
    left: CoTermExpr
    right: CoTermExpr
    term: TermExpr


@dataclass(frozen=True)
class BetaInr(ReductionExpr):
    left: CoTermExpr
    right: CoTermExpr
    term: TermExpr


@dataclass(frozen=True)
class BetaNot(ReductionExpr):
    term: TermExpr
    coterm: CoTermExpr


@dataclass(frozen=True)
class CongMu(ReductionExpr):
    covar: str
    body: ReductionExpr


@dataclass(frozen=True)
class CongMuTilde(ReductionExpr):
    var: str
    body: ReductionExpr


@dataclass(frozen=True)
class CongCut(ReductionExpr):
    term_red: ReductionExpr
    coterm_red: ReductionExpr
    cut_type: TypeExpr


@dataclass(frozen=True)
class CongPair(ReductionExpr):
    left: ReductionExpr
    right: ReductionExpr


@dataclass(frozen=True)
class CongInl(ReductionExpr):
    body: ReductionExpr


@dataclass(frozen=True)
class CongInr(ReductionExpr):
    body: ReductionExpr


@dataclass(frozen=True)
class CongFst(ReductionExpr):
    body: ReductionExpr


@dataclass(frozen=True)
class CongSnd(ReductionExpr):
    body: ReductionExpr


@dataclass(frozen=True)
class CongCase(ReductionExpr):
    left: ReductionExpr
    right: ReductionExpr


@dataclass(frozen=True)
class CongNotIntro(ReductionExpr):
    body: ReductionExpr


@dataclass(frozen=True)
class CongNotElim(ReductionExpr):
    body: ReductionExpr


POS = "+"
NEG = "-"


@dataclass(frozen=True)
class TermAt:
    """Judgment form: the subject is a term of the given type."""
    type: TypeExpr


@dataclass(frozen=True)
class CoTermAt:
    """Judgment form: the subject is a co-term against the given type."""
    type: TypeExpr


@dataclass(frozen=True)
class Absurd:
    """Judgment form for statements; written # in the concrete syntax."""


Judgment = TermAt | CoTermAt | Absurd

# A hypothesis is (name, polarity, type); a context is an ordered tuple
# of hypotheses with pairwise distinct names.
Hyp = tuple[str, str, TypeExpr]
Context = tuple[Hyp, ...]


class KindError(Exception):
    """Raised when a substitution mixes up the sorts of the syntax."""


def fresh_name(base: str, avoid: set[str] | frozenset[str]) -> str:
    """Pick the first of base, base1, base2, ... not in avoid."""
    if base not in avoid:
        return base
    i = 1
    while base + str(i) in avoid:
        i += 1
    return base + str(i)


def free_vars(e: Expr | ReductionExpr) -> frozenset[tuple[str, str]]:
    """Free occurrences of e as (name, kind) pairs, kind VAR or COVAR."""
    out: set[tuple[str, str]] = set()
    _collect_free(e, out, frozenset())
    return frozenset(out)


def free_names(e: Expr | ReductionExpr) -> frozenset[str]:
    return frozenset(n for n, _ in free_vars(e))


def _collect_free(e, out: set, bound: frozenset) -> None:
    match e:
        case Var(x):
            if (x, VAR) not in bound:
                out.add((x, VAR))
        case CoVar(a):
            if (a, COVAR) not in bound:
                out.add((a, COVAR))
        case Mu(a, s):
            _collect_free(s, out, bound | {(a, COVAR)})
        case MuTilde(x, s):
            _collect_free(s, out, bound | {(x, VAR)})
        case Unit() | CoUnit():
            pass
        case Pair(l, r) | Case(l, r):
            _collect_free(l, out, bound)
            _collect_free(r, out, bound)
        case Inl(b) | Inr(b) | Fst(b) | Snd(b) | NotIntro(b) | NotElim(b):
            _collect_free(b, out, bound)
        case Cut(m, k, _):
            _collect_free(m, out, bound)
            _collect_free(k, out, bound)
        case Refl(u):
            _collect_free(u, out, bound)
        case Trans(p, q) | CongPair(p, q) | CongCase(p, q):
            _collect_free(p, out, bound)
            _collect_free(q, out, bound)
        case BetaMu(k, a, s):
            _collect_free(k, out, bound)
            _collect_free(s, out, bound | {(a, COVAR)})
        case BetaMuTilde(m, x, s):
            _collect_free(m, out, bound)
            _collect_free(s, out, bound | {(x, VAR)})
        case BetaFst(m, n, k) | BetaSnd(m, n, k):
            _collect_free(m, out, bound)
            _collect_free(n, out, bound)
            _collect_free(k, out, bound)
        case BetaInl(k, l, m) | BetaInr(k, l, m):
            _collect_free(k, out, bound)
            _collect_free(l, out, bound)
            _collect_free(m, out, bound)
        case BetaNot(m, k):
            _collect_free(m, out, bound)
            _collect_free(k, out, bound)
        case CongMu(a, p):
            _collect_free(p, out, bound | {(a, COVAR)})
        case CongMuTilde(x, p):
            _collect_free(p, out, bound | {(x, VAR)})
        case CongCut(p, q, _):
            _collect_free(p, out, bound)
            _collect_free(q, out, bound)
        case CongInl(p) | CongInr(p) | CongFst(p) | CongSnd(p) \
                | CongNotIntro(p) | CongNotElim(p):
            _collect_free(p, out, bound)
        case _:
            raise TypeError(f"not an expression: {e!r}")


def alpha_eq(a: Expr | ReductionExpr, b: Expr | ReductionExpr) -> bool:
    """Structural equality up to consistent renaming of bound names."""
    return _alpha(a, b, {}, {}, 0)


def _alpha(a, b, envl: dict, envr: dict, depth: int) -> bool:
    # envl/envr map (kind, name) to the binder level that bound it; a
    # free name on one side must be the same free name on the other.
    if type(a) is not type(b):
        return False

    def leaf(kind, x, y):
        lx = envl.get((kind, x))
        ly = envr.get((kind, y))
        if lx is None and ly is None:
            return x == y
        return lx == ly

    def under(kind, x, y, body_a, body_b):
        el = dict(envl)
        er = dict(envr)
        el[(kind, x)] = depth
        er[(kind, y)] = depth
        return _alpha(body_a, body_b, el, er, depth + 1)

    match (a, b):
        case (Var(x), Var(y)):
            return leaf(VAR, x, y)
        case (CoVar(x), CoVar(y)):
            return leaf(COVAR, x, y)
        case (Mu(x, s), Mu(y, t)):
            return under(COVAR, x, y, s, t)
        case (MuTilde(x, s), MuTilde(y, t)):
            return under(VAR, x, y, s, t)
        case (Unit(), Unit()) | (CoUnit(), CoUnit()):
            return True
        case (Pair(l1, r1), Pair(l2, r2)) | (Case(l1, r1), Case(l2, r2)):
            return _alpha(l1, l2, envl, envr, depth) and _alpha(r1, r2, envl, envr, depth)
        case (Inl(p), Inl(q)) | (Inr(p), Inr(q)) | (Fst(p), Fst(q)) \
                | (Snd(p), Snd(q)) | (NotIntro(p), NotIntro(q)) | (NotElim(p), NotElim(q)):
            return _alpha(p, q, envl, envr, depth)
        case (Cut(m1, k1, t1), Cut(m2, k2, t2)):
            return t1 == t2 and _alpha(m1, m2, envl, envr, depth) \
                and _alpha(k1, k2, envl, envr, depth)
        case (Refl(u), Refl(v)):
            return _alpha(u, v, envl, envr, depth)
        case (Trans(p1, q1), Trans(p2, q2)) | (CongPair(p1, q1), CongPair(p2, q2)) \
                | (CongCase(p1, q1), CongCase(p2, q2)):
            return _alpha(p1, p2, envl, envr, depth) and _alpha(q1, q2, envl, envr, depth)
        case (BetaMu(k1, x, s, t1), BetaMu(k2, y, t, t2)):
            return t1 == t2 and _alpha(k1, k2, envl, envr, depth) \
                and under(COVAR, x, y, s, t)
        case (BetaMuTilde(m1, x, s, t1), BetaMuTilde(m2, y, t, t2)):
            return t1 == t2 and _alpha(m1, m2, envl, envr, depth) \
                and under(VAR, x, y, s, t)
        case (BetaFst(m1, n1, k1), BetaFst(m2, n2, k2)) \
                | (BetaSnd(m1, n1, k1), BetaSnd(m2, n2, k2)):
            return _alpha(m1, m2, envl, envr, depth) and _alpha(n1, n2, envl, envr, depth) \
                and _alpha(k1, k2, envl, envr, depth)
        case (BetaInl(k1, l1, m1), BetaInl(k2, l2, m2)) \
                | (BetaInr(k1, l1, m1), BetaInr(k2, l2, m2)):
            return _alpha(k1, k2, envl, envr, depth) and _alpha(l1, l2, envl, envr, depth) \
                and _alpha(m1, m2, envl, envr, depth)
        case (BetaNot(m1, k1), BetaNot(m2, k2)):
            return _alpha(m1, m2, envl, envr, depth) and _alpha(k1, k2, envl, envr, depth)
        case (CongMu(x, p), CongMu(y, q)):
            return under(COVAR, x, y, p, q)
        case (CongMuTilde(x, p), CongMuTilde(y, q)):
            return under(VAR, x, y, p, q)
        case (CongCut(p1, q1, t1), CongCut(p2, q2, t2)):
            return t1 == t2 and _alpha(p1, p2, envl, envr, depth) \
                and _alpha(q1, q2, envl, envr, depth)
        case (CongInl(p), CongInl(q)) | (CongInr(p), CongInr(q)) \
                | (CongFst(p), CongFst(q)) | (CongSnd(p), CongSnd(q)) \
                | (CongNotIntro(p), CongNotIntro(q)) | (CongNotElim(p), CongNotElim(q)):
            return _alpha(p, q, envl, envr, depth)
        case _:
            raise TypeError(f"not an expression: {a!r}")


def subst(e: Expr | ReductionExpr, name: str, replacement: Expr) -> Expr | ReductionExpr:
    """Capture-avoiding substitution of replacement for name in e.

    The kind of the substituted name is read off the replacement: a term
    replaces variable occurrences, a co-term co-variable occurrences.
    Binders in e that would capture a free name of the replacement are
    renamed first, deterministically.  e may also be a reduction
    witness, in which case the substitution acts on its subjects.
    """
    if isinstance(replacement, TermExpr):
        kind = VAR
    elif isinstance(replacement, CoTermExpr):
        kind = COVAR
    else:
        raise KindError(f"cannot substitute a {type(replacement).__name__} for a name")
    return _subst(e, name, kind, replacement, free_names(replacement))


def _subst(e, name, kind, rep, rep_free):
    def go(sub):
        return _subst(sub, name, kind, rep, rep_free)

    def binder(bname, bkind, body, rebuild):
        if bname == name and bkind == kind:
            return rebuild(bname, body)  # shadowed: nothing to do inside
        if (bname, bkind) in free_vars(rep):
            avoid = set(rep_free) | free_names(body) | {name}
            fresh = fresh_name(bname, avoid)
            ren = Var(fresh) if bkind == VAR else CoVar(fresh)
            body = _subst(body, bname, bkind, ren, frozenset({fresh}))
            bname = fresh
        return rebuild(bname, go(body))

    match e:
        case Var(x):
            if kind == VAR and x == name:
                return rep
            return e
        case CoVar(a):
            if kind == COVAR and a == name:
                return rep
            return e
        case Mu(a, s):
            return binder(a, COVAR, s, lambda n, b: Mu(n, b))
        case MuTilde(x, s):
            return binder(x, VAR, s, lambda n, b: MuTilde(n, b))
        case Unit() | CoUnit():
            return e
        case Pair(l, r):
            return Pair(go(l), go(r))
        case Case(l, r):
            return Case(go(l), go(r))
        case Inl(b):
            return Inl(go(b))
        case Inr(b):
            return Inr(go(b))
        case Fst(b):
            return Fst(go(b))
        case Snd(b):
            return Snd(go(b))
        case NotIntro(b):
            return NotIntro(go(b))
        case NotElim(b):
            return NotElim(go(b))
        case Cut(m, k, t):
            return Cut(go(m), go(k), t)
        case Refl(u):
            return Refl(go(u))
        case Trans(p, q):
            return Trans(go(p), go(q))
        case BetaMu(k, a, s, ct):
            k = go(k)
            return binder(a, COVAR, s, lambda n, b: BetaMu(k, n, b, ct))
        case BetaMuTilde(m, x, s, ct):
            m = go(m)
            return binder(x, VAR, s, lambda n, b: BetaMuTilde(m, n, b, ct))
        case BetaFst(m, n_, k):
            return BetaFst(go(m), go(n_), go(k))
        case BetaSnd(m, n_, k):
            return BetaSnd(go(m), go(n_), go(k))
        case BetaInl(k, l, m):
            return BetaInl(go(k), go(l), go(m))
        case BetaInr(k, l, m):
            return BetaInr(go(k), go(l), go(m))
        case BetaNot(m, k):
            return BetaNot(go(m), go(k))
        case CongMu(a, p):
            return binder(a, COVAR, p, lambda n, b: CongMu(n, b))
        case CongMuTilde(x, p):
            return binder(x, VAR, p, lambda n, b: CongMuTilde(n, b))
        case CongCut(p, q, t):
            return CongCut(go(p), go(q), t)
        case CongPair(p, q):
            return CongPair(go(p), go(q))
        case CongCase(p, q):
            return CongCase(go(p), go(q))
        case CongInl(p):
            return CongInl(go(p))
        case CongInr(p):
            return CongInr(go(p))
        case CongFst(p):
            return CongFst(go(p))
        case CongSnd(p):
            return CongSnd(go(p))
        case CongNotIntro(p):
            return CongNotIntro(go(p))
        case CongNotElim(p):
            return CongNotElim(go(p))
        case _:
            raise TypeError(f"not a term, co-term, statement or reduction: {e!r}")
