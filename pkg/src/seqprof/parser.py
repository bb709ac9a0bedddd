"""Concrete syntax: parsing and printing of declaration files.

A source file is a sequence of declarations:

    type N = A /\ ~B
    term t [x:+A, k:-A] : # = <x | k : A>
    red  r [x:+A, k:-A] : # = beta_mu~(x; y. <y | k : A>)

Types use `/\`, `\/` (both left associative, `/\` binding tighter) and
`~` (tightest).  Terms, co-terms and statements follow the forms listed
in the grammar reference (docs/grammar.md).  `--` starts a line comment.
Type definitions are expanded eagerly, so downstream passes only ever
see `Top`, `Bot`, connectives and base atoms.

Parsing is total: any input string produces either a SourceFile or a
ParseError carrying an exact position.  Identifiers in term position
become variables and in co-term position co-variables; inside reduction
witnesses the expected sort is threaded down from the declared judgment,
which is what makes `refl(k)` unambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import (
    Absurd, And, Base, BetaFst, BetaInl, BetaInr, BetaMu, BetaMuTilde,
    BetaNot, BetaSnd, Bot, Case, CongCase, CongCut, CongFst, CongInl, CongInr,
    CongMu, CongMuTilde, CongNotElim, CongNotIntro, CongPair, CongSnd,
    Context, CoTermAt, CoTermExpr, CoUnit, CoVar, Cut, Expr, Fst, Inl,
    Inr, Judgment, Mu, MuTilde, NEG, Not, NotElim, NotIntro, Or, POS, Pair,
    ReductionExpr, Refl, Snd, StatementExpr, TermAt, TermExpr, Top,
    Trans, TypeExpr, Unit, Var,
)


class ParseError(Exception):
    def __init__(self, line: int, column: int, message: str, expected: tuple[str, ...] = ()):
        self.line = line
        self.column = column
        self.message = message
        self.expected = expected
        where = f"{line}:{column}: {message}"
        if expected:
            where += " (expected " + " or ".join(expected) + ")"
        super().__init__(where)


@dataclass(frozen=True)
class TypeDef:
    name: str
    body: TypeExpr
    line: int = field(compare=False, default=0)
    col: int = field(compare=False, default=0)


@dataclass(frozen=True)
class ExprDecl:
    name: str
    context: Context
    judgment: Judgment
    body: Expr
    line: int = field(compare=False, default=0)
    col: int = field(compare=False, default=0)


@dataclass(frozen=True)
class RedDecl:
    name: str
    context: Context
    judgment: Judgment
    body: ReductionExpr
    line: int = field(compare=False, default=0)
    col: int = field(compare=False, default=0)


Decl = TypeDef | ExprDecl | RedDecl


@dataclass(frozen=True)
class SourceFile:
    decls: tuple[Decl, ...]


KEYWORDS = {
    "type", "term", "red", "mu", "mu~", "inl", "inr", "fst", "snd",
    "case", "not+", "not-", "Top", "Bot", "refl", "trans",
    "beta_mu", "beta_mu~", "beta_fst", "beta_snd", "beta_inl",
    "beta_inr", "beta_not", "cong_mu", "cong_mu~", "cong_cut",
    "cong_pair", "cong_inl", "cong_inr", "cong_fst", "cong_snd",
    "cong_case", "cong_not+", "cong_not-",
}

# Identifier stems that must be completed by a sign or tilde.
_NEEDS_SIGN = {"not", "cong_not"}
_TAKES_TILDE = {"mu", "beta_mu", "cong_mu"}

_SYMBOLS = ("/\\", "\\/", "(", ")", "[", "]", "<", ">", "|", ":", ";", ".", ",", "=", "+", "-", "~", "#")


@dataclass(frozen=True)
class _Tok:
    kind: str          # "kw", "ident", "sym", "eof"
    text: str
    line: int
    col: int


def _lex(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c.isalpha() or c == "_":
            start, startcol = i, col
            while i < n and (text[i].isalnum() or text[i] in "_'"):
                i += 1
                col += 1
            word = text[start:i]
            if word in _TAKES_TILDE and i < n and text[i] == "~":
                word += "~"
                i += 1
                col += 1
            elif word in _NEEDS_SIGN:
                if i < n and text[i] in "+-":
                    word += text[i]
                    i += 1
                    col += 1
                else:
                    raise ParseError(line, startcol, f"'{word}' must be followed by + or -")
            kind = "kw" if word in KEYWORDS else "ident"
            toks.append(_Tok(kind, word, line, startcol))
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                toks.append(_Tok("sym", sym, line, col))
                i += len(sym)
                col += len(sym)
                break
        else:
            raise ParseError(line, col, f"unexpected character {c!r}")
    toks.append(_Tok("eof", "", line, col))
    return toks


_MAX_DEPTH = 400


class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.pos = 0
        self.depth = 0
        self.typedefs: dict[str, TypeExpr] = {}

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, message: str, expected: tuple[str, ...] = ()):
        t = self.peek()
        if t.kind == "eof":
            message = "unexpected end of input"
        raise ParseError(t.line, t.col, message, expected)

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if t.text != text or t.kind == "ident":
            self.fail(f"found {t.text!r}" if t.kind != "eof" else "unexpected end of input",
                      (f"'{text}'",))
        return self.next()

    def ident(self, what: str) -> str:
        t = self.peek()
        if t.kind != "ident":
            self.fail(f"found {t.text!r}" if t.kind != "eof" else "unexpected end of input",
                      (what,))
        return self.next().text

    def _enter(self):
        self.depth += 1
        if self.depth > _MAX_DEPTH:
            self.fail("nesting too deep")

    def _leave(self):
        self.depth -= 1

    # -- declarations -------------------------------------------------

    def file(self) -> SourceFile:
        decls: list[Decl] = []
        while self.peek().kind != "eof":
            decls.append(self.decl())
        return SourceFile(tuple(decls))

    def decl(self) -> Decl:
        t = self.peek()
        if t.text == "type":
            self.next()
            name = self.ident("type name")
            self.expect("=")
            body = self.type_()
            self.typedefs[name] = body
            return TypeDef(name, body, t.line, t.col)
        if t.text == "term":
            self.next()
            name = self.ident("declaration name")
            ctx = self.context()
            self.expect(":")
            j = self.judgment()
            self.expect("=")
            body = self.expr_of(j)
            return ExprDecl(name, ctx, j, body, t.line, t.col)
        if t.text == "red":
            self.next()
            name = self.ident("declaration name")
            ctx = self.context()
            self.expect(":")
            j = self.judgment()
            self.expect("=")
            body = self.reduction(j)
            return RedDecl(name, ctx, j, body, t.line, t.col)
        self.fail(f"found {t.text!r}", ("'type'", "'term'", "'red'"))

    def context(self) -> Context:
        self.expect("[")
        hyps = []
        if self.peek().text != "]":
            while True:
                name = self.ident("hypothesis name")
                self.expect(":")
                pol = self.polarity()
                ty = self.type_()
                hyps.append((name, pol, ty))
                if self.peek().text == ",":
                    self.next()
                    continue
                break
        self.expect("]")
        return tuple(hyps)

    def polarity(self) -> str:
        t = self.peek()
        if t.text == "+":
            self.next()
            return POS
        if t.text == "-":
            self.next()
            return NEG
        self.fail(f"found {t.text!r}", ("'+'", "'-'"))

    def judgment(self) -> Judgment:
        t = self.peek()
        if t.text == "#":
            self.next()
            return Absurd()
        if t.text == "+":
            self.next()
            return TermAt(self.type_())
        if t.text == "-":
            self.next()
            return CoTermAt(self.type_())
        self.fail(f"found {t.text!r}", ("'+'", "'-'", "'#'"))

    # -- types --------------------------------------------------------

    def type_(self) -> TypeExpr:
        self._enter()
        left = self.and_type()
        while self.peek().text == "\\/":
            self.next()
            left = Or(left, self.and_type())
        self._leave()
        return left

    def and_type(self) -> TypeExpr:
        left = self.not_type()
        while self.peek().text == "/\\":
            self.next()
            left = And(left, self.not_type())
        return left

    def not_type(self) -> TypeExpr:
        self._enter()
        t = self.peek()
        if t.text == "~":
            self.next()
            body = self.not_type()
            self._leave()
            return Not(body)
        self._leave()
        return self.atom_type()

    def atom_type(self) -> TypeExpr:
        t = self.peek()
        if t.text == "Top":
            self.next()
            return Top()
        if t.text == "Bot":
            self.next()
            return Bot()
        if t.text == "(":
            self.next()
            inner = self.type_()
            self.expect(")")
            return inner
        if t.kind == "ident":
            name = self.next().text
            return self.typedefs.get(name, Base(name))
        self.fail(f"found {t.text!r}", ("a type",))

    # -- terms, co-terms, statements ----------------------------------

    def expr_of(self, j: Judgment) -> Expr:
        match j:
            case TermAt(_):
                return self.term()
            case CoTermAt(_):
                return self.coterm()
            case Absurd():
                return self.statement()

    def term(self) -> TermExpr:
        self._enter()
        t = self.peek()
        out: TermExpr
        if t.text == "mu":
            self.next()
            name = self.ident("bound co-variable")
            self.expect(".")
            out = Mu(name, self.statement())
        elif t.text == "inl":
            self.next()
            out = Inl(self.term())
        elif t.text == "inr":
            self.next()
            out = Inr(self.term())
        elif t.text == "not+":
            self.next()
            out = NotIntro(self.coterm())
        elif t.text == "(":
            self.next()
            if self.peek().text == ")":
                self.next()
                out = Unit()
            else:
                first = self.term()
                if self.peek().text == ",":
                    self.next()
                    second = self.term()
                    self.expect(")")
                    out = Pair(first, second)
                else:
                    self.expect(")")
                    out = first
        elif t.kind == "ident":
            out = Var(self.next().text)
        else:
            self.fail(f"found {t.text!r}", ("a term",))
        self._leave()
        return out

    def coterm(self) -> CoTermExpr:
        self._enter()
        t = self.peek()
        out: CoTermExpr
        if t.text == "mu~":
            self.next()
            name = self.ident("bound variable")
            self.expect(".")
            out = MuTilde(name, self.statement())
        elif t.text == "fst":
            self.next()
            out = Fst(self.coterm())
        elif t.text == "snd":
            self.next()
            out = Snd(self.coterm())
        elif t.text == "not-":
            self.next()
            out = NotElim(self.term())
        elif t.text == "case":
            self.next()
            self.expect("(")
            left = self.coterm()
            self.expect(",")
            right = self.coterm()
            self.expect(")")
            out = Case(left, right)
        elif t.text == "[":
            self.next()
            self.expect("]")
            out = CoUnit()
        elif t.text == "(":
            self.next()
            inner = self.coterm()
            self.expect(")")
            out = inner
        elif t.kind == "ident":
            out = CoVar(self.next().text)
        else:
            self.fail(f"found {t.text!r}", ("a co-term",))
        self._leave()
        return out

    def opt_type_ann(self) -> TypeExpr | None:
        # trailing `: A` inside beta_mu / beta_mu~, needed when the
        # non-binding side is check-only and the cut type is not inferable
        if self.peek().text == ":" and self.peek().kind == "sym":
            self.next()
            return self.type_()
        return None

    def statement(self) -> StatementExpr:
        self._enter()
        self.expect("<")
        m = self.term()
        self.expect("|")
        k = self.coterm()
        self.expect(":")
        ty = self.type_()
        self.expect(">")
        self._leave()
        return Cut(m, k, ty)

    # -- reduction witnesses ------------------------------------------

    def reduction(self, j: Judgment) -> ReductionExpr:
        self._enter()
        t = self.peek()
        out: ReductionExpr
        if t.text == "refl":
            self.next()
            self.expect("(")
            out = Refl(self.expr_of(j))
            self.expect(")")
        elif t.text == "trans":
            self.next()
            self.expect("(")
            first = self.reduction(j)
            self.expect(",")
            second = self.reduction(j)
            self.expect(")")
            out = Trans(first, second)
        elif t.text == "beta_mu":
            self.next()
            self.expect("(")
            k = self.coterm()
            self.expect(";")
            name = self.ident("bound co-variable")
            self.expect(".")
            s = self.statement()
            ct = self.opt_type_ann()
            self.expect(")")
            out = BetaMu(k, name, s, ct)
        elif t.text == "beta_mu~":
            self.next()
            self.expect("(")
            m = self.term()
            self.expect(";")
            name = self.ident("bound variable")
            self.expect(".")
            s = self.statement()
            ct = self.opt_type_ann()
            self.expect(")")
            out = BetaMuTilde(m, name, s, ct)
        elif t.text in ("beta_fst", "beta_snd"):
            self.next()
            self.expect("(")
            m = self.term()
            self.expect(",")
            n = self.term()
            self.expect(",")
            k = self.coterm()
            self.expect(")")
            out = BetaFst(m, n, k) if t.text == "beta_fst" else BetaSnd(m, n, k)
        elif t.text in ("beta_inl", "beta_inr"):
            self.next()
            self.expect("(")
            k = self.coterm()
            self.expect(",")
            l = self.coterm()
            self.expect(",")
            m = self.term()
            self.expect(")")
            out = BetaInl(k, l, m) if t.text == "beta_inl" else BetaInr(k, l, m)
        elif t.text == "beta_not":
            self.next()
            self.expect("(")
            m = self.term()
            self.expect(",")
            k = self.coterm()
            self.expect(")")
            out = BetaNot(m, k)
        elif t.text == "cong_mu":
            self.next()
            self.expect("(")
            name = self.ident("bound co-variable")
            self.expect(".")
            body = self.reduction(Absurd())
            self.expect(")")
            out = CongMu(name, body)
        elif t.text == "cong_mu~":
            self.next()
            self.expect("(")
            name = self.ident("bound variable")
            self.expect(".")
            body = self.reduction(Absurd())
            self.expect(")")
            out = CongMuTilde(name, body)
        elif t.text == "cong_cut":
            self.next()
            self.expect("(")
            p = self.reduction(TermAt(Base("?")))
            self.expect(",")
            q = self.reduction(CoTermAt(Base("?")))
            self.expect(":")
            ty = self.type_()
            self.expect(")")
            out = CongCut(p, q, ty)
        elif t.text == "cong_pair":
            self.next()
            self.expect("(")
            p = self.reduction(TermAt(Base("?")))
            self.expect(",")
            q = self.reduction(TermAt(Base("?")))
            self.expect(")")
            out = CongPair(p, q)
        elif t.text == "cong_case":
            self.next()
            self.expect("(")
            p = self.reduction(CoTermAt(Base("?")))
            self.expect(",")
            q = self.reduction(CoTermAt(Base("?")))
            self.expect(")")
            out = CongCase(p, q)
        elif t.text in ("cong_inl", "cong_inr", "cong_not-"):
            word = self.next().text
            self.expect("(")
            p = self.reduction(TermAt(Base("?")))
            self.expect(")")
            out = {"cong_inl": CongInl, "cong_inr": CongInr, "cong_not-": CongNotElim}[word](p)
        elif t.text in ("cong_fst", "cong_snd", "cong_not+"):
            word = self.next().text
            self.expect("(")
            p = self.reduction(CoTermAt(Base("?")))
            self.expect(")")
            out = {"cong_fst": CongFst, "cong_snd": CongSnd, "cong_not+": CongNotIntro}[word](p)
        else:
            self.fail(f"found {t.text!r}", ("a reduction witness",))
        self._leave()
        return out


def parse(text: str) -> SourceFile:
    """Parse a declaration file.  Raises ParseError on any malformed input."""
    toks = _lex(text)
    p = _Parser(toks)
    try:
        return p.file()
    except RecursionError:
        raise ParseError(0, 0, "input too deeply nested") from None


# -- pretty printing --------------------------------------------------

def pretty_type(ty: TypeExpr, prec: int = 0) -> str:
    match ty:
        case Top():
            return "Top"
        case Bot():
            return "Bot"
        case Base(name):
            return name
        case Not(body):
            return "~" + pretty_type(body, 3)
        case And(l, r):
            s = pretty_type(l, 2) + " /\\ " + pretty_type(r, 3)
            return "(" + s + ")" if prec > 2 else s
        case Or(l, r):
            s = pretty_type(l, 1) + " \\/ " + pretty_type(r, 2)
            return "(" + s + ")" if prec > 1 else s
    raise TypeError(f"not a type: {ty!r}")


def pretty(e: Expr | ReductionExpr) -> str:
    match e:
        case Var(x) | CoVar(x):
            return x
        case Mu(a, s):
            return f"mu {a}. {pretty(s)}"
        case MuTilde(x, s):
            return f"mu~ {x}. {pretty(s)}"
        case Unit():
            return "()"
        case CoUnit():
            return "[]"
        case Pair(l, r):
            return f"({pretty(l)}, {pretty(r)})"
        case Inl(b):
            return f"inl {pretty(b)}"
        case Inr(b):
            return f"inr {pretty(b)}"
        case NotIntro(b):
            return f"not+ {pretty(b)}"
        case Fst(b):
            return f"fst {pretty(b)}"
        case Snd(b):
            return f"snd {pretty(b)}"
        case Case(l, r):
            return f"case({pretty(l)}, {pretty(r)})"
        case NotElim(b):
            return f"not- {pretty(b)}"
        case Cut(m, k, ty):
            return f"<{pretty(m)} | {pretty(k)} : {pretty_type(ty)}>"
        case Refl(u):
            return f"refl({pretty(u)})"
        case Trans(p, q):
            return f"trans({pretty(p)}, {pretty(q)})"
        case BetaMu(k, a, s, ct):
            ann = f" : {pretty_type(ct)}" if ct is not None else ""
            return f"beta_mu({pretty(k)}; {a}. {pretty(s)}{ann})"
        case BetaMuTilde(m, x, s, ct):
            ann = f" : {pretty_type(ct)}" if ct is not None else ""
            return f"beta_mu~({pretty(m)}; {x}. {pretty(s)}{ann})"
        case BetaFst(m, n, k):
            return f"beta_fst({pretty(m)}, {pretty(n)}, {pretty(k)})"
        case BetaSnd(m, n, k):
            return f"beta_snd({pretty(m)}, {pretty(n)}, {pretty(k)})"
        case BetaInl(k, l, m):
            return f"beta_inl({pretty(k)}, {pretty(l)}, {pretty(m)})"
        case BetaInr(k, l, m):
            return f"beta_inr({pretty(k)}, {pretty(l)}, {pretty(m)})"
        case BetaNot(m, k):
            return f"beta_not({pretty(m)}, {pretty(k)})"
        case CongMu(a, p):
            return f"cong_mu({a}. {pretty(p)})"
        case CongMuTilde(x, p):
            return f"cong_mu~({x}. {pretty(p)})"
        case CongCut(p, q, ty):
            return f"cong_cut({pretty(p)}, {pretty(q)} : {pretty_type(ty)})"
        case CongPair(p, q):
            return f"cong_pair({pretty(p)}, {pretty(q)})"
        case CongCase(p, q):
            return f"cong_case({pretty(p)}, {pretty(q)})"
        case CongInl(p):
            return f"cong_inl({pretty(p)})"
        case CongInr(p):
            return f"cong_inr({pretty(p)})"
        case CongFst(p):
            return f"cong_fst({pretty(p)})"
        case CongSnd(p):
            return f"cong_snd({pretty(p)})"
        case CongNotIntro(p):
            return f"cong_not+({pretty(p)})"
        case CongNotElim(p):
            return f"cong_not-({pretty(p)})"
    raise TypeError(f"not an expression: {e!r}")


def pretty_judgment(j: Judgment) -> str:
    match j:
        case TermAt(ty):
            return "+" + pretty_type(ty)
        case CoTermAt(ty):
            return "-" + pretty_type(ty)
        case Absurd():
            return "#"
    raise TypeError(f"not a judgment: {j!r}")


def pretty_context(ctx: Context) -> str:
    return "[" + ", ".join(f"{n}:{p}{pretty_type(t)}" for n, p, t in ctx) + "]"


def pretty_decl(d: Decl) -> str:
    match d:
        case TypeDef(name, body):
            return f"type {name} = {pretty_type(body)}"
        case ExprDecl(name, ctx, j, body):
            return f"term {name} {pretty_context(ctx)} : {pretty_judgment(j)} = {pretty(body)}"
        case RedDecl(name, ctx, j, body):
            return f"red {name} {pretty_context(ctx)} : {pretty_judgment(j)} = {pretty(body)}"
    raise TypeError(f"not a declaration: {d!r}")


def pretty_file(f: SourceFile) -> str:
    return "".join(pretty_decl(d) + "\n" for d in f.decls)
