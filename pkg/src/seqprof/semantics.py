"""Interpretation of checked syntax into profunctors over finite categories.

Types become finite categories (units the terminal category, the two
binary connectives products, negation the opposite).  A checked term
in context becomes a profunctor from the positive hypotheses to the
negative ones plus a result coordinate named "%ret"; a co-term carries
"%ret" on the input side instead; a statement has no result
coordinate.  Reduction witnesses become natural transformations
between the interpretations of their endpoints.

The interesting construction is the structural beta pair: substituting
a co-term for a co-variable (or a term for a variable) is interpreted
by structural recursion on the subject, commuting the substitution
coend past each constructor.  Every map out of a coend class is
evaluated on all members of the class and checked constant; nothing is
defined on a bare representative.

Interpreter instances memoize per (context, expression) and keep the
coend bookkeeping of every interpreted cut, which the recursion needs
to destructure composite elements.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .syntax import (
    Absurd,
    And,
    Base,
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
    CoTermExpr,
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
    Not,
    NotElim,
    NotIntro,
    Or,
    POS,
    Pair,
    Refl,
    Snd,
    TermAt,
    TermExpr,
    Top,
    Trans,
    Unit,
    VAR,
    COVAR,
    Var,
    free_names,
    fresh_name,
    subst,
)
from .typecheck import check_expr, check_reduction, extend, open_binder
from .fincat import (
    FinCat,
    FinCatError,
    SetFunctor,
    _anchored_arrows,
    builtin_category,
    constant_functor,
    elem_key,
    induced_map,
    opposite,
    product,
    read_fincat,
    terminal_cat,
)
from .profunctor import (
    Composite,
    NatTrans,
    Profunctor,
    compose_over_full,
    flip_to_input,
    flip_to_output,
    identity_nat,
    move_input_to_end,
    move_output_to_end,
    nat_eq,
    reindex,
    rename_coords,
    vcomp,
    whisker,
)

RET = "%ret"

POINT = "•"  # the inhabitant of every unit fibre


class InterpError(Exception):
    pass


# ---------------------------------------------------------------------------
# base assignments


@dataclass
class BaseAssignment:
    """Categories for the base types; fallback covers unlisted names."""

    cats: dict
    fallback: FinCat | None = None

    @classmethod
    def uniform(cls, cat: FinCat) -> "BaseAssignment":
        return cls({}, cat)

    def lookup(self, name: str) -> FinCat:
        if name in self.cats:
            return self.cats[name]
        if self.fallback is not None:
            return self.fallback
        raise InterpError(f"base type {name!r} has no assigned category")

    def key(self):
        # memo identity: assignment contents, not object identity
        return (
            tuple(sorted((n, c.name) for n, c in self.cats.items())),
            self.fallback.name if self.fallback else None,
        )


def load_base_assignment(text: str, base_dir: str = ".") -> BaseAssignment:
    """Lines `Name = builtin` or `Name = @file.fincat`; `* = ...` sets the fallback."""
    cats = {}
    fallback = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("--", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InterpError(f"line {lineno}: expected `Name = category`")
        name, rhs = (s.strip() for s in line.split("=", 1))
        if rhs.startswith("@"):
            cat = read_fincat(os.path.join(base_dir, rhs[1:]))
        else:
            cat = builtin_category(rhs)
        if name == "*":
            fallback = cat
        else:
            if name in cats:
                raise InterpError(f"line {lineno}: {name!r} assigned twice")
            cats[name] = cat
    return BaseAssignment(cats, fallback)


def read_base_assignment(path) -> BaseAssignment:
    with open(path, encoding="utf-8") as fh:
        return load_base_assignment(fh.read(), base_dir=os.path.dirname(path) or ".")


# ---------------------------------------------------------------------------
# delayed substitution (syntax level)


def _ds_fresh(stem: str, ctx: Context, replacement, binder: str, v) -> str:
    avoid = {h[0] for h in ctx} | {binder} | free_names(v) | free_names(replacement)
    return fresh_name(stem, avoid)


def delayed_subst(ctx, replacement, binder, binder_type, v, judgment):
    """The substitution-as-syntax operator.

    For a statement the substitution is literally the beta redex; for a
    term or co-term the subject is first cut against a fresh name of
    its own type, and the statement clause applied under the matching
    abstraction.  ctx is the ambient context, without the binder.
    """
    if isinstance(replacement, CoTermExpr):
        stmt = lambda s: Cut(Mu(binder, s), replacement, binder_type)
    elif isinstance(replacement, TermExpr):
        stmt = lambda s: Cut(replacement, MuTilde(binder, s), binder_type)
    else:
        raise InterpError(f"replacement must be a term or a co-term: {replacement!r}")
    match judgment:
        case Absurd():
            return stmt(v)
        case TermAt(b):
            beta = _ds_fresh("b", ctx, replacement, binder, v)
            return Mu(beta, stmt(Cut(v, CoVar(beta), b)))
        case CoTermAt(b):
            y = _ds_fresh("y", ctx, replacement, binder, v)
            return MuTilde(y, stmt(Cut(Var(y), v, b)))
    raise InterpError(f"not a judgment: {judgment!r}")


# ---------------------------------------------------------------------------
# the interpreter


class Interpreter:
    """Memoizing interpretation over one base assignment.

    Expressions are assumed checked; use the module-level wrappers for
    a checked entry point.  All returned structures are shared through
    the memo and must not be mutated.
    """

    def __init__(self, base: BaseAssignment, max_objects: int = 128):
        self.base = base
        self.max_objects = max_objects
        self._types: dict = {}
        self._exprs: dict = {}
        self._cuts: dict = {}

    # -- types ------------------------------------------------------

    def type_cat(self, t) -> FinCat:
        if t in self._types:
            return self._types[t]
        match t:
            case Top() | Bot():
                out = terminal_cat()
            case Base(name):
                out = self.base.lookup(name)
            case And(a, b) | Or(a, b):
                out = product(self.type_cat(a), self.type_cat(b))
            case Not(a):
                out = opposite(self.type_cat(a))
            case _:
                raise InterpError(f"not a type: {t!r}")
        if len(out.objects) > self.max_objects:
            raise InterpError(
                f"category for {t!r} has {len(out.objects)} objects, over the cap "
                f"of {self.max_objects}"
            )
        self._types[t] = out
        return out

    def ctx_coords(self, ctx: Context):
        inputs = []
        outputs = []
        for name, pol, ty in ctx:
            if name == RET:
                raise InterpError(f"hypothesis name {RET!r} is reserved")
            (inputs if pol == POS else outputs).append((name, self.type_cat(ty)))
        return tuple(inputs), tuple(outputs)

    # -- expressions ------------------------------------------------

    def interp(self, ctx: Context, e: Expr, judgment: Judgment) -> Profunctor:
        key = (ctx, e, judgment)
        if key in self._exprs:
            return self._exprs[key]
        out = self._interp(ctx, e, judgment)
        self._exprs[key] = out
        return out

    def cut_data(self, ctx: Context, e: Cut) -> Composite:
        self.interp(ctx, e, Absurd())
        return self._cuts[(ctx, e)]

    def _interp(self, ctx, e, judgment) -> Profunctor:
        inputs, outputs = self.ctx_coords(ctx)
        match e, judgment:
            case Var(x), TermAt(a):
                return self._hom_shaped(
                    inputs, outputs + ((RET, self.type_cat(a)),), x, RET
                )
            case CoVar(al), CoTermAt(a):
                return self._hom_shaped(
                    inputs + ((RET, self.type_cat(a)),), outputs, RET, al
                )
            case Unit(), TermAt(a):
                return self._constant(inputs, outputs + ((RET, self.type_cat(a)),))
            case CoUnit(), CoTermAt(a):
                return self._constant(inputs + ((RET, self.type_cat(a)),), outputs)
            case Mu(al, s), TermAt(a):
                al2, s2 = open_binder(ctx, al, COVAR, s)
                ps = self.interp(extend(ctx, al2, NEG, a), s2, Absurd())
                return move_output_to_end(rename_coords(ps, {al2: RET}), RET)
            case MuTilde(x, s), CoTermAt(a):
                x2, s2 = open_binder(ctx, x, VAR, s)
                ps = self.interp(extend(ctx, x2, POS, a), s2, Absurd())
                return move_input_to_end(rename_coords(ps, {x2: RET}), RET)
            case Pair(m, n), TermAt(And(a, b) as ab):
                return self._pair_on_ret(
                    self.interp(ctx, m, TermAt(a)),
                    self.interp(ctx, n, TermAt(b)),
                    self.type_cat(ab),
                )
            case Case(k, l), CoTermAt(Or(a, b) as ab):
                return self._pair_on_ret(
                    self.interp(ctx, k, CoTermAt(a)),
                    self.interp(ctx, l, CoTermAt(b)),
                    self.type_cat(ab),
                )
            case Inl(m), TermAt(Or(a, b) as ab):
                return self._reindex_component(
                    self.interp(ctx, m, TermAt(a)), self.type_cat(ab), 0
                )
            case Inr(m), TermAt(Or(a, b) as ab):
                return self._reindex_component(
                    self.interp(ctx, m, TermAt(b)), self.type_cat(ab), 1
                )
            case Fst(k), CoTermAt(And(a, b) as ab):
                return self._reindex_component(
                    self.interp(ctx, k, CoTermAt(a)), self.type_cat(ab), 0
                )
            case Snd(k), CoTermAt(And(a, b) as ab):
                return self._reindex_component(
                    self.interp(ctx, k, CoTermAt(b)), self.type_cat(ab), 1
                )
            case NotIntro(k), TermAt(Not(a)):
                return flip_to_output(self.interp(ctx, k, CoTermAt(a)), RET)
            case NotElim(m), CoTermAt(Not(a)):
                return flip_to_input(self.interp(ctx, m, TermAt(a)), RET)
            case Cut(m, k, t), Absurd():
                comp = compose_over_full(
                    self.interp(ctx, m, TermAt(t)),
                    self.interp(ctx, k, CoTermAt(t)),
                    RET,
                )
                self._cuts[(ctx, e)] = comp
                return comp.prof
            case _:
                raise InterpError(f"no interpretation for {e!r} at {judgment!r}")

    def _hom_shaped(self, inputs, outputs, cov_name, contra_name) -> Profunctor:
        """hom(contra coordinate -> cov coordinate), constant elsewhere."""
        prof = Profunctor(inputs, outputs, SetFunctor(
            tuple(c for _, c in inputs) + tuple(c for _, c in outputs),
            ("+",) * len(inputs) + ("-",) * len(outputs),
            {},
            {},
        ))
        cov = prof.slot(cov_name)
        contra = prof.slot(contra_name)
        cat = prof.coords[cov][1]
        if prof.coords[contra][1] != cat:
            raise InterpError("hom coordinates range over different categories")
        body = prof.body
        for pt in body.points():
            body.values[pt] = frozenset(cat.hom(pt[contra], pt[cov]))
        for pt in body.points():
            fibre = body.values[pt]
            for i in range(len(body.cats)):
                for f in _anchored_arrows(body, pt, i):
                    if i == cov:
                        body.action[(i, pt, f)] = {e: cat.comp(e, f) for e in fibre}
                    elif i == contra:
                        body.action[(i, pt, f)] = {e: cat.comp(f, e) for e in fibre}
                    else:
                        body.action[(i, pt, f)] = {e: e for e in fibre}
        return prof

    def _constant(self, inputs, outputs) -> Profunctor:
        cats = tuple(c for _, c in inputs) + tuple(c for _, c in outputs)
        variance = ("+",) * len(inputs) + ("-",) * len(outputs)
        return Profunctor(inputs, outputs, constant_functor(cats, variance, {POINT}))

    def _pair_on_ret(self, p: Profunctor, q: Profunctor, pcat: FinCat) -> Profunctor:
        """Componentwise pairing over a product-typed result coordinate."""
        slot = p.slot(RET)
        if q.slot(RET) != slot:
            raise InterpError("paired interpretations disagree on the result slot")
        cats = p.body.cats[:slot] + (pcat,) + p.body.cats[slot + 1 :]
        body = SetFunctor(cats, p.body.variance, {}, {})

        def parts(pt):
            x, y = pt[slot]
            return pt[:slot] + (x,) + pt[slot + 1 :], pt[:slot] + (y,) + pt[slot + 1 :]

        for pt in body.points():
            pp, qp = parts(pt)
            body.values[pt] = frozenset(
                (pe, qe) for pe in p.body.at(pp) for qe in q.body.at(qp)
            )
        for pt in body.points():
            pp, qp = parts(pt)
            fibre = body.values[pt]
            for i in range(len(cats)):
                for f in _anchored_arrows(body, pt, i):
                    if i == slot:
                        fp, fq = f
                        pm = p.body.map1(pp, i, fp)
                        qm = q.body.map1(qp, i, fq)
                    else:
                        pm = p.body.map1(pp, i, f)
                        qm = q.body.map1(qp, i, f)
                    body.action[(i, pt, f)] = {
                        (pe, qe): (pm[pe], qm[qe]) for (pe, qe) in fibre
                    }
        coords = list(p.coords)
        coords[slot] = (RET, pcat)
        return Profunctor(
            tuple(coords[: len(p.inputs)]), tuple(coords[len(p.inputs) :]), body
        )

    def _reindex_component(self, p: Profunctor, pcat: FinCat, which: int) -> Profunctor:
        on_obj = {obj: obj[which] for obj in pcat.objects}
        on_arr = {f: f[which] for f in pcat.arrows}
        return reindex(p, RET, pcat, on_obj, on_arr)

    # -- reductions -------------------------------------------------

    def interp_reduction(self, ctx: Context, r, expected: Judgment | None = None) -> NatTrans:
        rt = check_reduction(ctx, r, expected)
        j = rt.judgment
        match r:
            case Refl(u):
                return identity_nat(self.interp(ctx, u, j))
            case Trans(p, q):
                return vcomp(
                    self.interp_reduction(ctx, p, j), self.interp_reduction(ctx, q, j)
                )
            case BetaMu(k, al, s):
                return self.generalized_beta(ctx, k, al, rt.source.cut_type, s, Absurd())
            case BetaMuTilde(m, x, s):
                return self.generalized_beta(ctx, m, x, rt.source.cut_type, s, Absurd())
            case BetaFst(_, _, _):
                return self._beta_logical(ctx, rt, lambda a, le, re: (a[0], le[0], re))
            case BetaSnd(_, _, _):
                return self._beta_logical(ctx, rt, lambda a, le, re: (a[1], le[1], re))
            case BetaInl(_, _, _):
                return self._beta_logical(ctx, rt, lambda a, le, re: (a[0], le, re[0]))
            case BetaInr(_, _, _):
                return self._beta_logical(ctx, rt, lambda a, le, re: (a[1], le, re[1]))
            case BetaNot(_, _):
                return self._beta_logical(ctx, rt, lambda a, le, re: (a, re, le))
            case CongMu(al, p):
                al2, p2 = open_binder(ctx, al, COVAR, p)
                inner = self.interp_reduction(
                    extend(ctx, al2, NEG, j.type), p2, Absurd()
                )
                return NatTrans(
                    self.interp(ctx, rt.source, j),
                    self.interp(ctx, rt.target, j),
                    inner.components,
                )
            case CongMuTilde(x, p):
                x2, p2 = open_binder(ctx, x, VAR, p)
                inner = self.interp_reduction(extend(ctx, x2, POS, j.type), p2, Absurd())
                return NatTrans(
                    self.interp(ctx, rt.source, j),
                    self.interp(ctx, rt.target, j),
                    inner.components,
                )
            case CongCut(p, q, t):
                np = self.interp_reduction(ctx, p, TermAt(t))
                nq = self.interp_reduction(ctx, q, CoTermAt(t))
                return vcomp(
                    whisker(np, nq.source, RET), whisker(nq, np.target, RET)
                )
            case CongPair(p, q):
                a, b = j.type.left, j.type.right
                return self._cong_pairwise(
                    ctx, rt,
                    self.interp_reduction(ctx, p, TermAt(a)),
                    self.interp_reduction(ctx, q, TermAt(b)),
                )
            case CongCase(p, q):
                a, b = j.type.left, j.type.right
                return self._cong_pairwise(
                    ctx, rt,
                    self.interp_reduction(ctx, p, CoTermAt(a)),
                    self.interp_reduction(ctx, q, CoTermAt(b)),
                )
            case CongInl(p):
                return self._cong_component(ctx, rt, self.interp_reduction(ctx, p, TermAt(j.type.left)), 0)
            case CongInr(p):
                return self._cong_component(ctx, rt, self.interp_reduction(ctx, p, TermAt(j.type.right)), 1)
            case CongFst(p):
                return self._cong_component(ctx, rt, self.interp_reduction(ctx, p, CoTermAt(j.type.left)), 0)
            case CongSnd(p):
                return self._cong_component(ctx, rt, self.interp_reduction(ctx, p, CoTermAt(j.type.right)), 1)
            case CongNotIntro(q):
                inner = self.interp_reduction(ctx, q, CoTermAt(j.type.body))
                i = inner.source.slot(RET)
                perm = [n for n in range(len(inner.source.coords)) if n != i] + [i]
                return NatTrans(
                    self.interp(ctx, rt.source, j),
                    self.interp(ctx, rt.target, j),
                    _permuted_components(inner.components, perm),
                )
            case CongNotElim(p):
                inner = self.interp_reduction(ctx, p, TermAt(j.type.body))
                i = inner.source.slot(RET)
                ni = len(inner.source.inputs)
                perm = list(range(ni)) + [i] + [
                    n for n in range(ni, len(inner.source.coords)) if n != i
                ]
                return NatTrans(
                    self.interp(ctx, rt.source, j),
                    self.interp(ctx, rt.target, j),
                    _permuted_components(inner.components, perm),
                )
        raise InterpError(f"no interpretation for reduction {r!r}")

    def _beta_logical(self, ctx, rt, pick) -> NatTrans:
        """Shared shape of the connective beta cells.

        pick receives the diagonal object and the two cut sides of a
        source class member and names the target member; the map is
        extended to classes by induced_map, constancy checked.
        """
        comp_s = self.cut_data(ctx, rt.source)
        comp_t = self.cut_data(ctx, rt.target)
        components = {}
        for pt in comp_s.prof.body.points():
            def fn(member, pt=pt):
                a, (le, re) = member
                a2, le2, re2 = pick(a, le, re)
                return comp_t.inject(pt, a2, le2, re2)
            components[pt] = induced_map(comp_s.coend_data.members[pt], fn)
        return NatTrans(comp_s.prof, comp_t.prof, components)

    def _cong_pairwise(self, ctx, rt, np: NatTrans, nq: NatTrans) -> NatTrans:
        src = self.interp(ctx, rt.source, rt.judgment)
        tgt = self.interp(ctx, rt.target, rt.judgment)
        slot = src.slot(RET)
        components = {}
        for pt in src.body.points():
            x, y = pt[slot]
            pp = pt[:slot] + (x,) + pt[slot + 1 :]
            qp = pt[:slot] + (y,) + pt[slot + 1 :]
            components[pt] = {
                (e1, e2): (np.components[pp][e1], nq.components[qp][e2])
                for (e1, e2) in src.body.at(pt)
            }
        return NatTrans(src, tgt, components)

    def _cong_component(self, ctx, rt, inner: NatTrans, which: int) -> NatTrans:
        src = self.interp(ctx, rt.source, rt.judgment)
        tgt = self.interp(ctx, rt.target, rt.judgment)
        slot = src.slot(RET)
        components = {}
        for pt in src.body.points():
            ip = pt[:slot] + (pt[slot][which],) + pt[slot + 1 :]
            components[pt] = dict(inner.components[ip])
        return NatTrans(src, tgt, components)

    # -- structural beta --------------------------------------------

    def generalized_beta(
        self, ctx, replacement, binder, binder_type, v, judgment
    ) -> NatTrans:
        """The substitution square for one binder, as a 2-cell.

        replacement is a co-term standing in for a co-variable (or a
        term for a variable); v is the subject, checked in ctx extended
        by the binder.  Runs from the interpretation of the delayed
        substitution to the interpretation of the performed one.  For a
        statement subject this is exactly the beta cell of the cut; for
        a term or co-term subject the delayed form carries an identity
        cut that the map threads through.
        """
        if isinstance(replacement, CoTermExpr):
            bkind, bpol, pj = COVAR, NEG, CoTermAt(binder_type)
        else:
            bkind, bpol, pj = VAR, POS, TermAt(binder_type)
        payload = self.interp(ctx, replacement, pj)
        ds = delayed_subst(ctx, replacement, binder, binder_type, v, judgment)
        tgt = self.interp(ctx, subst(v, binder, replacement), judgment)
        match judgment:
            case Absurd():
                b2, v2 = open_binder(ctx, binder, bkind, v)
                ctx2 = extend(ctx, b2, bpol, binder_type)
                comp = self.cut_data(ctx, ds)
                src = comp.prof
                components = {}
                for pt in src.body.points():
                    asg = _asg(src, pt)

                    def fn(member, asg=asg):
                        a, (le, re) = member
                        pe, s_e = (re, le) if bkind == COVAR else (le, re)
                        return self._gb_rec(
                            ctx2, b2, bkind, replacement, payload,
                            v2, Absurd(), asg, a, pe, s_e,
                        )

                    components[pt] = induced_map(comp.coend_data.members[pt], fn)
                return NatTrans(src, tgt, components)
            case TermAt(b):
                src = self.interp(ctx, ds, judgment)
                beta, stmt = ds.covar, ds.body
                ctxb = extend(ctx, beta, NEG, b)
                inner_cut = Cut(v, CoVar(beta), b)
                b2, inner2 = open_binder(ctxb, binder, bkind, inner_cut)
                subject = inner2.term
                ctx2 = extend(ctxb, b2, bpol, binder_type)
                comp_o = self.cut_data(ctxb, stmt)
                comp_i = self.cut_data(ctx2, inner2)
                flip = lambda le, re: (le, re)
                return self._gb_expanded(
                    src, tgt, judgment, comp_o, comp_i, beta, b2, bkind,
                    replacement, payload, subject, ctx2, flip,
                )
            case CoTermAt(b):
                src = self.interp(ctx, ds, judgment)
                y, stmt = ds.var, ds.body
                ctxy = extend(ctx, y, POS, b)
                inner_cut = Cut(Var(y), v, b)
                b2, inner2 = open_binder(ctxy, binder, bkind, inner_cut)
                subject = inner2.coterm
                ctx2 = extend(ctxy, b2, bpol, binder_type)
                comp_o = self.cut_data(ctxy, stmt)
                comp_i = self.cut_data(ctx2, inner2)
                flip = lambda le, re: (re, le)
                return self._gb_expanded(
                    src, tgt, judgment, comp_o, comp_i, y, b2, bkind,
                    replacement, payload, subject, ctx2, flip,
                )
        raise InterpError(f"not a judgment: {judgment!r}")

    def _gb_expanded(
        self, src, tgt, judgment, comp_o, comp_i, ret_name, b2, bkind,
        replacement, payload, subject, ctx2, flip,
    ) -> NatTrans:
        """Shared driver for term and co-term subjects.

        The delayed form is an abstraction over an identity cut; each
        outer class member is destructured, the inner identity-cut
        member split into a subject element and a connecting arrow, the
        subject element pushed through the recursion, and the result
        transported back along the arrow.  Both class layers are
        checked for constancy.
        """
        ret = tgt.slot(RET)
        components = {}
        for pt in src.body.points():
            asg = _asg(src, pt)
            asg_o = dict(asg)
            asg_o[ret_name] = asg_o.pop(RET)
            rp_o = comp_o.prof.point(asg_o)

            def fn(member, asg=asg, asg_o=asg_o):
                a, (le, re) = member
                pe, mu_e = (re, le) if bkind == COVAR else (le, re)
                rp_i = comp_i.prof.point({**asg_o, b2: a})

                def move(member2):
                    b1, pair = member2
                    u_e, w_e = flip(*pair)
                    t_e = self._gb_rec(
                        ctx2, b2, bkind, replacement, payload,
                        subject, judgment, {**asg_o, RET: b1}, a, pe, u_e,
                    )
                    tpt = tgt.point({**asg, RET: b1})
                    return tgt.body.apply1(tpt, ret, w_e, t_e)

                images = {move(m2) for m2 in comp_i.coend_data.members[rp_i][mu_e]}
                if len(images) != 1:
                    raise FinCatError(
                        f"beta image not constant on inner class {mu_e!r}: "
                        f"{sorted(images, key=elem_key)!r}"
                    )
                return next(iter(images))

            components[pt] = induced_map(comp_o.coend_data.members[rp_o], fn)
        return NatTrans(src, tgt, components)

    def _gb_rec(self, ctx2, bname, bkind, rep, payload, v, judgment, asg, a, pe, s_e):
        """Push one substitution member through the subject, elementwise.

        ctx2 is the source context with the binder in scope; asg
        assigns every coordinate in scope except the binder, "%ret"
        included for term and co-term subjects.  s_e sits in the
        subject's fibre with the binder coordinate at a; pe is the
        replacement element whose result coordinate is at a.  Returns
        the matching element of the substituted subject, whose fibres
        do not involve the binder.
        """
        match v:
            case Var(x):
                if bkind == VAR and x == bname:
                    # s_e is an arrow into a; act on the replacement
                    ppt = payload.point({**asg, RET: a})
                    return payload.body.apply1(ppt, payload.slot(RET), s_e, pe)
                return s_e
            case CoVar(c):
                if bkind == COVAR and c == bname:
                    ppt = payload.point({**asg, RET: a})
                    return payload.body.apply1(ppt, payload.slot(RET), s_e, pe)
                return s_e
            case Unit() | CoUnit():
                return s_e
            case Mu(c, s):
                c2, s2 = open_binder(ctx2, c, COVAR, s)
                asg2 = dict(asg)
                asg2[c2] = asg2.pop(RET)
                return self._gb_rec(
                    extend(ctx2, c2, NEG, judgment.type), bname, bkind, rep,
                    payload, s2, Absurd(), asg2, a, pe, s_e,
                )
            case MuTilde(x, s):
                x2, s2 = open_binder(ctx2, x, VAR, s)
                asg2 = dict(asg)
                asg2[x2] = asg2.pop(RET)
                return self._gb_rec(
                    extend(ctx2, x2, POS, judgment.type), bname, bkind, rep,
                    payload, s2, Absurd(), asg2, a, pe, s_e,
                )
            case Pair(m, n):
                x, y = asg[RET]
                e1, e2 = s_e
                return (
                    self._gb_rec(ctx2, bname, bkind, rep, payload, m,
                                 TermAt(judgment.type.left), {**asg, RET: x}, a, pe, e1),
                    self._gb_rec(ctx2, bname, bkind, rep, payload, n,
                                 TermAt(judgment.type.right), {**asg, RET: y}, a, pe, e2),
                )
            case Case(k, l):
                x, y = asg[RET]
                e1, e2 = s_e
                return (
                    self._gb_rec(ctx2, bname, bkind, rep, payload, k,
                                 CoTermAt(judgment.type.left), {**asg, RET: x}, a, pe, e1),
                    self._gb_rec(ctx2, bname, bkind, rep, payload, l,
                                 CoTermAt(judgment.type.right), {**asg, RET: y}, a, pe, e2),
                )
            case Inl(m):
                return self._gb_rec(ctx2, bname, bkind, rep, payload, m,
                                    TermAt(judgment.type.left),
                                    {**asg, RET: asg[RET][0]}, a, pe, s_e)
            case Inr(m):
                return self._gb_rec(ctx2, bname, bkind, rep, payload, m,
                                    TermAt(judgment.type.right),
                                    {**asg, RET: asg[RET][1]}, a, pe, s_e)
            case Fst(k):
                return self._gb_rec(ctx2, bname, bkind, rep, payload, k,
                                    CoTermAt(judgment.type.left),
                                    {**asg, RET: asg[RET][0]}, a, pe, s_e)
            case Snd(k):
                return self._gb_rec(ctx2, bname, bkind, rep, payload, k,
                                    CoTermAt(judgment.type.right),
                                    {**asg, RET: asg[RET][1]}, a, pe, s_e)
            case NotIntro(k):
                # the negation coordinate carries the same object labels
                return self._gb_rec(ctx2, bname, bkind, rep, payload, k,
                                    CoTermAt(judgment.type.body), asg, a, pe, s_e)
            case NotElim(m):
                return self._gb_rec(ctx2, bname, bkind, rep, payload, m,
                                    TermAt(judgment.type.body), asg, a, pe, s_e)
            case Cut(m, k, t):
                comp_s = self.cut_data(ctx2, v)
                rp_s = comp_s.prof.point({**asg, bname: a})
                tctx = tuple(h for h in ctx2 if h[0] != bname)
                comp_t = self.cut_data(tctx, subst(v, bname, rep))
                rp_t = comp_t.prof.point(asg)

                def fn(member2):
                    b1, (le, re) = member2
                    tm = self._gb_rec(ctx2, bname, bkind, rep, payload, m,
                                      TermAt(t), {**asg, RET: b1}, a, pe, le)
                    tk = self._gb_rec(ctx2, bname, bkind, rep, payload, k,
                                      CoTermAt(t), {**asg, RET: b1}, a, pe, re)
                    return comp_t.inject(rp_t, b1, tm, tk)

                images = {fn(m2) for m2 in comp_s.coend_data.members[rp_s][s_e]}
                if len(images) != 1:
                    raise FinCatError(
                        f"beta image not constant on class {s_e!r}: "
                        f"{sorted(images, key=elem_key)!r}"
                    )
                return next(iter(images))
        raise InterpError(f"no structural beta case for {v!r}")

    # -- eta collapse and the coincidence question ------------------

    def eta_collapse(self, ctx, e, judgment, binder: str | None = None) -> NatTrans:
        """Collapse an identity cut: the abstraction over <e | fresh> back onto ⟦e⟧.

        Each class member pairs an element of ⟦e⟧ with a connecting
        arrow of the result category; the component transports the
        element back along the arrow.
        """
        match judgment:
            case TermAt(b):
                beta = binder or fresh_name("b", {h[0] for h in ctx} | free_names(e))
                ctxb = extend(ctx, beta, NEG, b)
                cut = Cut(e, CoVar(beta), b)
                comp = self.cut_data(ctxb, cut)
                src = self.interp(ctx, Mu(beta, cut), judgment)
                ret_name = beta
                flip = lambda le, re: (le, re)
            case CoTermAt(b):
                y = binder or fresh_name("y", {h[0] for h in ctx} | free_names(e))
                ctxb = extend(ctx, y, POS, b)
                cut = Cut(Var(y), e, b)
                comp = self.cut_data(ctxb, cut)
                src = self.interp(ctx, MuTilde(y, cut), judgment)
                ret_name = y
                flip = lambda le, re: (re, le)
            case _:
                raise InterpError("eta collapse applies to terms and co-terms only")
        tgt = self.interp(ctx, e, judgment)
        ret = tgt.slot(RET)
        components = {}
        for pt in src.body.points():
            asg = _asg(src, pt)
            asg_o = dict(asg)
            asg_o[ret_name] = asg_o.pop(RET)
            rp = comp.prof.point(asg_o)

            def fn(member, asg=asg):
                b1, pair = member
                u_e, w_e = flip(*pair)
                return tgt.body.apply1(tgt.point({**asg, RET: b1}), ret, w_e, u_e)

            components[pt] = induced_map(comp.coend_data.members[rp], fn)
        return NatTrans(src, tgt, components)

    def coincidence_check(self, ctx, k, alpha, m, binder_type, subject_type) -> bool:
        """Whether the two readings of the term-level mu beta agree.

        Route one is the structural recursion; route two wraps the
        statement-level cell in an abstraction congruence and collapses
        the leftover identity cut.  Both run between the same
        interpretations, so disagreement is a genuine semantic finding,
        not an interface error.
        """
        route_a = self.generalized_beta(
            ctx, k, alpha, binder_type, m, TermAt(subject_type)
        )
        beta = _ds_fresh("b", ctx, k, alpha, m)
        # annotate the beta with the binder type: an abstraction consumer
        # pins down no cut type of its own
        red = CongMu(
            beta, BetaMu(k, alpha, Cut(m, CoVar(beta), subject_type), binder_type)
        )
        via_cong = self.interp_reduction(ctx, red, TermAt(subject_type))
        collapse = self.eta_collapse(
            ctx, subst(m, alpha, k), TermAt(subject_type), binder=beta
        )
        return nat_eq(route_a, vcomp(via_cong, collapse))


def _asg(p: Profunctor, pt) -> dict:
    return {n: pt[i] for i, (n, _) in enumerate(p.coords)}


def _permuted_components(components: dict, perm) -> dict:
    return {tuple(pt[i] for i in perm): dict(m) for pt, m in components.items()}


# ---------------------------------------------------------------------------
# checked entry points


def interp_type(t, base: BaseAssignment, max_objects: int = 128) -> FinCat:
    return Interpreter(base, max_objects).type_cat(t)


def interp_expr(ctx, e, judgment, base: BaseAssignment, max_objects: int = 128) -> Profunctor:
    check_expr(ctx, e, judgment)
    return Interpreter(base, max_objects).interp(ctx, e, judgment)


def interp_reduction(ctx, r, base: BaseAssignment, expected=None, max_objects: int = 128) -> NatTrans:
    return Interpreter(base, max_objects).interp_reduction(ctx, r, expected)
