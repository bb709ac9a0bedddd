"""Model modes and degeneracy reporting.

One interpretation engine serves three settings.  Prof is the engine
as-is.  Span restricts the base assignment to discrete categories and
changes nothing else, since a profunctor between discrete categories
is exactly a span of sets over the product of the object sets.  Rel
further truncates every fibre to at most one element, reading a
profunctor as a mere relation; 2-cells between relations carry no
information beyond existence, which is what the truncation records.

The report side measures how much 2-dimensional structure survives:
in Rel every parallel pair of interpreted reduction cells collapses,
while in Prof a search over derivation pairs with shared endpoints
can pin two cells that the engine distinguishes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

from .syntax import (
    Absurd,
    And,
    BetaMu,
    BetaMuTilde,
    Bot,
    Case,
    CongCut,
    CoTermAt,
    CoVar,
    Cut,
    Fst,
    Inl,
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
    TermAt,
    Top,
    Trans,
    Unit,
    Var,
    alpha_eq,
)
from .parser import RedDecl, pretty, pretty_type
from .typecheck import check_reduction
from .fincat import FinCat, SetFunctor
from .profunctor import NatTrans, Profunctor, nat_eq
from .semantics import Interpreter, POINT


class ModelMode(Enum):
    PROF = "prof"
    SPAN = "span"
    REL = "rel"

    @classmethod
    def from_string(cls, s: str) -> "ModelMode":
        try:
            return cls(s.lower())
        except ValueError:
            raise ValueError(f"unknown mode {s!r}; choose prof, span, or rel") from None


class ModeError(Exception):
    pass


def _require_discrete(p: Profunctor, mode: ModelMode) -> None:
    for name, cat in p.coords:
        if not cat.is_discrete:
            raise ModeError(
                f"{mode.value} mode needs discrete categories, but coordinate "
                f"{name!r} ranges over {cat.name!r} which has non-identity arrows"
            )


def apply_mode(p: Profunctor, mode: ModelMode) -> Profunctor:
    """Prof and Span leave the value alone; Rel truncates the fibres."""
    if mode is ModelMode.PROF:
        return p
    _require_discrete(p, mode)
    if mode is ModelMode.SPAN:
        return p
    body = p.body
    values = {
        pt: frozenset({POINT}) if body.at(pt) else frozenset() for pt in body.points()
    }
    action = {}
    for (slot, pt, f), mapping in body.action.items():
        action[(slot, pt, f)] = {POINT: POINT} if mapping else {}
    return Profunctor(p.inputs, p.outputs, SetFunctor(body.cats, body.variance, values, action))


def apply_mode_nat(t: NatTrans, mode: ModelMode) -> NatTrans:
    """Truncate a 2-cell alongside its endpoints."""
    if mode is ModelMode.PROF:
        return t
    if mode is ModelMode.SPAN:
        _require_discrete(t.source, mode)
        return t
    src = apply_mode(t.source, mode)
    tgt = apply_mode(t.target, mode)
    components = {
        pt: ({POINT: POINT} if m else {}) for pt, m in t.components.items()
    }
    return NatTrans(src, tgt, components)


# ---------------------------------------------------------------------------
# degeneracy reporting


@dataclass
class ParallelPair:
    """Two reduction declarations with alpha-equal endpoints."""

    left: str
    right: str
    judgment: str
    equal: bool
    point: tuple | None = None  # a point where the components differ

    def to_dict(self) -> dict:
        d = {
            "left": self.left,
            "right": self.right,
            "judgment": self.judgment,
            "equal": self.equal,
        }
        if self.point is not None:
            d["point"] = list(map(str, self.point))
        return d


@dataclass
class DegeneracyReport:
    mode: ModelMode
    pairs: list = field(default_factory=list)
    type_notes: list = field(default_factory=list)

    @property
    def distinct(self) -> list:
        return [p for p in self.pairs if not p.equal]

    def lines(self) -> list[str]:
        out = [f"mode: {self.mode.value}"]
        out.append(
            f"parallel reduction pairs: {len(self.pairs)}, distinct: {len(self.distinct)}"
        )
        for p in self.distinct:
            out.append(
                f"  {p.left} and {p.right} at {p.judgment} differ at point {p.point!r}"
            )
        out.extend(self.type_notes)
        return out

    def to_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "parallel_pairs": len(self.pairs),
            "distinct_pairs": [p.to_dict() for p in self.distinct],
            "type_notes": list(self.type_notes),
        }


def _first_difference(a: NatTrans, b: NatTrans):
    for pt in sorted(a.components):
        if a.components[pt] != b.components[pt]:
            return pt
    return None


def degeneracy_report(decls, interp: Interpreter, mode: ModelMode) -> DegeneracyReport:
    """Compare every parallel pair of declared reductions under a mode.

    decls is an iterable of declarations (a parsed file's worth); only
    reduction declarations participate in the pair search.  Type-level
    degeneracies of the mode are summarized alongside.
    """
    report = DegeneracyReport(mode)
    reds = [d for d in decls if isinstance(d, RedDecl)]
    typed = []
    for d in reds:
        rt = check_reduction(d.context, d.body, d.judgment)
        typed.append((d, rt))
    cells: dict = {}

    def cell(d):
        if d.name not in cells:
            raw = interp.interp_reduction(d.context, d.body, d.judgment)
            cells[d.name] = apply_mode_nat(raw, mode)
        return cells[d.name]

    for (d1, rt1), (d2, rt2) in itertools.combinations(typed, 2):
        if d1.context != d2.context or rt1.judgment != rt2.judgment:
            continue
        if not (alpha_eq(rt1.source, rt2.source) and alpha_eq(rt1.target, rt2.target)):
            continue
        n1, n2 = cell(d1), cell(d2)
        equal = nat_eq(n1, n2)
        report.pairs.append(
            ParallelPair(
                d1.name,
                d2.name,
                f"{pretty(rt1.source)} => {pretty(rt1.target)}",
                equal,
                None if equal else _first_difference(n1, n2),
            )
        )

    if mode is ModelMode.REL:
        seen = set()
        for d, rt in typed:
            for t in _connective_types(rt.source) | _connective_types(rt.target):
                if isinstance(t, (And, Or)):
                    key = ("prod", t.left, t.right)
                    if key in seen:
                        continue
                    seen.add(key)
                    both = And(t.left, t.right), Or(t.left, t.right)
                    same = interp.type_cat(both[0]).objects == interp.type_cat(both[1]).objects
                    report.type_notes.append(
                        "conjunction and disjunction coincide on objects over "
                        f"({pretty_type(t.left)}, {pretty_type(t.right)}): {same}"
                    )
                elif isinstance(t, Not):
                    if t in seen:
                        continue
                    seen.add(t)
                    inner = interp.type_cat(t.body)
                    outer = interp.type_cat(t)
                    same = len(inner.objects) == len(outer.objects) and len(
                        inner.arrows
                    ) == len(outer.arrows)
                    report.type_notes.append(
                        f"negation preserves cardinality at {pretty_type(t)}: {same}"
                    )
    return report


def _connective_types(e) -> set:
    out: set = set()

    def walk_type(t):
        match t:
            case And(a, b) | Or(a, b):
                out.add(t)
                walk_type(a)
                walk_type(b)
            case Not(a):
                out.add(t)
                walk_type(a)
            case _:
                pass

    def walk(e):
        match e:
            case Cut(m, k, t):
                walk_type(t)
                walk(m)
                walk(k)
            case Mu(_, s) | MuTilde(_, s):
                walk(s)
            case Pair(a, b) | Case(a, b):
                walk(a)
                walk(b)
            case Inl(b) | NotIntro(b) | NotElim(b) | Fst(b):
                walk(b)
            case _:
                for f in getattr(e, "__dataclass_fields__", ()):
                    v = getattr(e, f)
                    if hasattr(v, "__dataclass_fields__"):
                        walk(v)

    walk(e)
    return out


# ---------------------------------------------------------------------------
# non-degeneracy search


@dataclass
class Witness:
    """A pinned pair of distinct parallel 2-cells."""

    context: tuple
    left: object
    right: object
    judgment: object
    point: tuple

    def describe(self) -> list[str]:
        return [
            "distinct parallel 2-cells:",
            f"  left:  {pretty(self.left)}",
            f"  right: {pretty(self.right)}",
            f"  at point {self.point!r}",
        ]


def _candidate_statements():
    """Small statements over the fixed search context [y:+B, l:-B]."""
    from .syntax import Base, Inr, Snd, CoUnit

    B = Base("B")
    y, l = Var("y"), CoVar("l")
    return [
        Cut(y, l, B),
        Cut(Inl(y), Case(l, l), Or(B, B)),
        Cut(Pair(y, y), Fst(l), And(B, B)),
        Cut(Pair(y, y), Snd(l), And(B, B)),
        Cut(NotIntro(l), NotElim(y), Not(B)),
        Cut(y, MuTilde("z", Cut(Var("z"), l, B)), B),
        Cut(Mu("c", Cut(y, CoVar("c"), B)), l, B),
        Cut(Unit(), MuTilde("z", Cut(y, l, B)), Top()),
        Cut(Inr(y), Case(l, l), Or(B, B)),
        Cut(Pair(y, Unit()), Fst(l), And(B, Top())),
        Cut(Pair(Unit(), y), Snd(l), And(Top(), B)),
        Cut(NotIntro(Fst(l)), NotElim(Pair(y, y)), Not(And(B, B))),
        Cut(Mu("c", Cut(y, l, B)), CoUnit(), Bot()),
    ]


def _candidate_cut_types():
    from .syntax import Base

    B = Base("B")
    return [
        Top(),
        Bot(),
        B,
        Not(B),
        And(B, B),
        Or(B, B),
        And(B, Top()),
        And(Top(), B),
        Or(B, Top()),
        Not(Not(B)),
    ]


def nondegeneracy_candidates():
    """Parallel derivation pairs over [y:+B, l:-B], lazily.

    Each item is (context, judgment, left, right).  The first family
    cuts an abstraction against a co-abstraction over the same body, a
    statement both beta rules apply to with equal endpoints; the rest
    are interchange and unit laws expected to stay equal, so a search
    over the stream is honest rather than rigged.
    """
    from .syntax import Base

    B = Base("B")
    ctx = (("y", POS, B), ("l", NEG, B))
    for s, a in itertools.product(_candidate_statements(), _candidate_cut_types()):
        left = BetaMu(MuTilde("x", s), "a", s, a)
        right = BetaMuTilde(Mu("a", s), "x", s, a)
        yield ctx, Absurd(), left, right
        redex = Cut(Mu("a", s), MuTilde("x", s), a)
        yield ctx, Absurd(), Trans(Refl(redex), left), left
        yield ctx, Absurd(), left, Trans(left, Refl(s))
        mu_l = Refl(Mu("c", s))
        mt_r = Refl(MuTilde("z", s))
        yield ctx, Absurd(), Trans(
            CongCut(mu_l, Refl(MuTilde("z", s)), a),
            CongCut(Refl(Mu("c", s)), mt_r, a),
        ), CongCut(mu_l, mt_r, a)


def nondegeneracy_search(interp: Interpreter, mode: ModelMode, limit: int = 600):
    """Scan candidate pairs for a distinct parallel pair of 2-cells.

    Returns (searched, witness or None).  Every candidate is verified
    to be parallel (equal endpoints after checking) before comparison.
    """
    searched = 0
    for ctx, j, left, right in nondegeneracy_candidates():
        if searched >= limit:
            break
        rt1 = check_reduction(ctx, left, j)
        rt2 = check_reduction(ctx, right, j)
        if not (alpha_eq(rt1.source, rt2.source) and alpha_eq(rt1.target, rt2.target)):
            continue
        n1 = apply_mode_nat(interp.interp_reduction(ctx, left, j), mode)
        n2 = apply_mode_nat(interp.interp_reduction(ctx, right, j), mode)
        searched += 1
        if not nat_eq(n1, n2):
            return searched, Witness(ctx, left, right, j, _first_difference(n1, n2))
    return searched, None
