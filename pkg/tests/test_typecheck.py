"""Admissible structural laws of the checker, plus the negative fixtures."""

import os

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CORPUS, st_covar_name, st_var_name
from seqprof.parser import ExprDecl, RedDecl, TypeDef, parse
from seqprof.syntax import (
    NEG,
    POS,
    Absurd,
    And,
    Base,
    BetaMu,
    Bot,
    CoTermAt,
    CoUnit,
    CoVar,
    Cut,
    Fst,
    Inl,
    Inr,
    Mu,
    MuTilde,
    Not,
    NotElim,
    NotIntro,
    Or,
    Pair,
    Refl,
    Snd,
    TermAt,
    Top,
    Unit,
    Var,
    alpha_eq,
    fresh_name,
    subst,
)
from seqprof.typecheck import (
    ERROR_CLASSES,
    RULES,
    CheckError,
    check_expr,
    check_file,
    check_reduction,
    infer_expr,
)

A, B = Base("A"), Base("B")


def _corpus_cases():
    """Every well-typed (ctx, body, judgment) triple from the corpus."""
    cases = []
    for fname in ("structural.c2", "logical.c2", "congruence.c2", "critical.c2"):
        with open(os.path.join(CORPUS, fname)) as fh:
            sf = parse(fh.read())
        for d in sf.decls:
            if isinstance(d, TypeDef):
                continue
            cases.append((fname, d))
    return cases


CASES = _corpus_cases()
EXPR_CASES = [(f, d) for f, d in CASES if isinstance(d, ExprDecl)]
RED_CASES = [(f, d) for f, d in CASES if isinstance(d, RedDecl)]


def _check_decl(ctx, d):
    if isinstance(d, RedDecl):
        check_reduction(ctx, d.body, d.judgment)
    else:
        check_expr(ctx, d.body, d.judgment)


@pytest.mark.parametrize("fname, d", CASES, ids=lambda v: getattr(v, "name", v))
def test_corpus_declarations_check(fname, d):
    _check_decl(d.context, d)


@pytest.mark.parametrize("fname, d", CASES, ids=lambda v: getattr(v, "name", v))
def test_weakening(fname, d):
    # a hypothesis nobody uses never breaks a derivation
    extra = fresh_name("w", {h[0] for h in d.context})
    _check_decl(d.context + ((extra, POS, Top()),), d)
    _check_decl(((extra, NEG, Bot()),) + d.context, d)


@pytest.mark.parametrize("fname, d", CASES, ids=lambda v: getattr(v, "name", v))
def test_exchange(fname, d):
    if len(d.context) < 2:
        return
    rotated = d.context[1:] + d.context[:1]
    _check_decl(rotated, d)
    _check_decl(tuple(reversed(d.context)), d)


@pytest.mark.parametrize("fname, d", RED_CASES, ids=lambda v: getattr(v, "name", v))
def test_reduction_endpoints_check_on_their_own(fname, d):
    rt = check_reduction(d.context, d.body, d.judgment)
    check_expr(d.context, rt.source, d.judgment)
    check_expr(d.context, rt.target, d.judgment)


@pytest.mark.parametrize("fname, d", RED_CASES, ids=lambda v: getattr(v, "name", v))
def test_reduction_endpoints_alpha_stable(fname, d):
    rt1 = check_reduction(d.context, d.body, d.judgment)
    rt2 = check_reduction(d.context, d.body, d.judgment)
    assert alpha_eq(rt1.source, rt2.source)
    assert alpha_eq(rt1.target, rt2.target)


def test_substitution_admissible():
    # ctx, x:+A |- M : +B  and  ctx |- N : +A  give  ctx |- M[x:=N] : +B
    ctx = (("y", POS, A), ("l", NEG, B))
    x_ctx = ctx + (("x", POS, A),)
    m = Pair(Var("x"), Mu("c", Cut(Var("x"), MuTilde("z", Cut(Var("z"), CoVar("c"), A)), A)))
    check_expr(x_ctx, m, TermAt(And(A, A)))
    n = Mu("d", Cut(Var("y"), CoVar("d"), A))
    check_expr(ctx, n, TermAt(A))
    check_expr(ctx, subst(m, "x", n), TermAt(And(A, A)))


def test_covariable_substitution_admissible():
    ctx = (("y", POS, A), ("l", NEG, A))
    a_ctx = ctx + (("a", NEG, A),)
    k = MuTilde("z", Cut(Var("z"), CoVar("a"), A))
    check_expr(a_ctx, k, CoTermAt(A))
    check_expr(ctx, subst(k, "a", CoVar("l")), CoTermAt(A))


@given(st_var_name, st_covar_name)
def test_alpha_variants_check_alike(x, a):
    # renaming the bound names of a checked term never changes the verdict
    ctx = (("y", POS, A),)
    t1 = Mu(a, Cut(Var("y"), CoVar(a), A))
    x2 = fresh_name(a, {a})
    t2 = Mu(x2, Cut(Var("y"), CoVar(x2), A))
    assert alpha_eq(t1, t2)
    check_expr(ctx, t1, TermAt(A))
    check_expr(ctx, t2, TermAt(A))


# ---------------------------------------------------------------------------
# polarity of the disjunction injections


def test_inl_takes_left_component():
    ctx = (("y", POS, A),)
    check_expr(ctx, Inl(Var("y")), TermAt(Or(A, B)))
    with pytest.raises(CheckError) as ei:
        check_expr(ctx, Inl(Var("y")), TermAt(Or(B, A)))
    assert ei.value.error_class == "type-mismatch"


def test_inr_takes_right_component():
    ctx = (("y", POS, B),)
    check_expr(ctx, Inr(Var("y")), TermAt(Or(A, B)))
    with pytest.raises(CheckError) as ei:
        check_expr(ctx, Inr(Var("y")), TermAt(Or(B, A)))
    assert ei.value.error_class == "type-mismatch"


def test_negation_flips_sides():
    ctx = (("y", POS, A), ("l", NEG, A))
    check_expr(ctx, NotIntro(CoVar("l")), TermAt(Not(A)))
    check_expr(ctx, NotElim(Var("y")), CoTermAt(Not(A)))
    with pytest.raises(CheckError):
        check_expr(ctx, NotIntro(CoVar("l")), TermAt(Not(B)))


def test_projections():
    ctx = (("k", NEG, A),)
    check_expr(ctx, Fst(CoVar("k")), CoTermAt(And(A, B)))
    check_expr(ctx, Snd(CoVar("k")), CoTermAt(And(B, A)))
    with pytest.raises(CheckError):
        check_expr(ctx, Fst(CoVar("k")), CoTermAt(And(B, A)))


def test_unit_shapes():
    check_expr((), Unit(), TermAt(Top()))
    check_expr((), CoUnit(), CoTermAt(Bot()))
    with pytest.raises(CheckError) as ei:
        check_expr((), Unit(), TermAt(Bot()))
    assert ei.value.error_class == "shape-top"
    with pytest.raises(CheckError) as ei:
        check_expr((), CoUnit(), CoTermAt(Top()))
    assert ei.value.error_class == "shape-bottom"


def test_cannot_infer_checked_forms():
    ctx = (("y", POS, A),)
    for e in (Inl(Var("y")), MuTilde("x", Cut(Var("x"), CoVar("l"), A))):
        with pytest.raises(CheckError) as ei:
            infer_expr(ctx, e)
        assert ei.value.error_class == "cannot-infer"


def test_annotated_beta_checks_without_inference():
    # both sides check-only: the annotation is what makes this typable
    ctx = (("y", POS, B), ("l", NEG, B))
    s = Cut(Var("y"), CoVar("l"), B)
    r = BetaMu(MuTilde("x", s), "a", s, Top())
    rt = check_reduction(ctx, r, Absurd())
    assert rt.judgment == Absurd()
    bare = BetaMu(MuTilde("x", s), "a", s, None)
    with pytest.raises(CheckError) as ei:
        check_reduction(ctx, bare, Absurd())
    assert ei.value.error_class == "cannot-infer"


# ---------------------------------------------------------------------------
# file-level checking and the negative corpus


def test_trace_names_are_known(corpus_files):
    trace = []
    for path in corpus_files:
        with open(path) as fh:
            recs = check_file(parse(fh.read()), trace)
        assert all(r.ok for r in recs), path
    assert set(trace) <= set(RULES)


def _expected_class(path):
    with open(path) as fh:
        first = fh.readline()
    assert "expect-error:" in first, path
    return first.split("expect-error:")[1].strip()


def test_negative_fixtures_cover_every_class(negative_files):
    assert {_expected_class(p) for p in negative_files} == set(ERROR_CLASSES)


@pytest.mark.parametrize(
    "path",
    sorted(
        os.path.join(CORPUS, "negative", f)
        for f in os.listdir(os.path.join(CORPUS, "negative"))
        if f.endswith(".c2")
    ),
    ids=os.path.basename,
)
def test_negative_fixture_rejected_with_class(path):
    expected = _expected_class(path)
    with open(path) as fh:
        text = fh.read()
    if expected == "parse-error":
        from seqprof.parser import ParseError
        with pytest.raises(ParseError):
            parse(text)
        return
    recs = check_file(parse(text))
    bad = [r for r in recs if not r.ok]
    assert bad, path
    assert bad[0].error_class == expected


def test_duplicate_declaration_detected():
    recs = check_file(parse("term t [] : +Top = ()\nterm t [] : +Top = ()"))
    assert [r.ok for r in recs] == [True, False]
    assert recs[1].error_class == "duplicate-declaration"
