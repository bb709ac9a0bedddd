"""The interpretation: fibres, cells, the generalized step, coincidence."""

import pytest

from seqprof.fincat import FinCatError, builtin_category, opposite, product, terminal_cat
from seqprof.profunctor import nat_eq, validate_nat, validate_profunctor
from seqprof.semantics import (
    POINT,
    RET,
    BaseAssignment,
    Interpreter,
    InterpError,
    interp_expr,
    load_base_assignment,
)
from seqprof.syntax import (
    NEG,
    POS,
    Absurd,
    And,
    Base,
    BetaFst,
    BetaInr,
    BetaMu,
    BetaMuTilde,
    BetaNot,
    Bot,
    CongCut,
    CongMu,
    CongMuTilde,
    CoTermAt,
    CoUnit,
    CoVar,
    Cut,
    Fst,
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
    Trans,
    Unit,
    Var,
    alpha_eq,
    subst,
)

A, B = Base("A"), Base("B")
ARROW = builtin_category("arrow")
D2 = builtin_category("discrete2")
PAR = builtin_category("parallel")


@pytest.fixture(scope="module")
def over_arrow():
    return Interpreter(BaseAssignment.uniform(ARROW))

@pytest.fixture(scope="module")
def over_parallel():
    return Interpreter(BaseAssignment.uniform(PAR))

@pytest.fixture(scope="module")
def over_d2():
    return Interpreter(BaseAssignment.uniform(D2))


# ---------------------------------------------------------------------------
# types


def test_type_cat_shapes(over_arrow):
    it = over_arrow
    top = it.type_cat(Top())
    assert len(top.objects) == 1 and len(top.arrows) == 1
    bot = it.type_cat(Bot())
    assert len(bot.objects) == 1
    conj = it.type_cat(And(A, B))
    ref = product(ARROW, ARROW)
    assert sorted(conj.objects) == sorted(ref.objects)
    assert len(conj.arrows) == len(ref.arrows)
    disj = it.type_cat(Or(A, B))
    assert sorted(disj.objects) == sorted(conj.objects)
    neg = it.type_cat(Not(A))
    op = opposite(ARROW)
    for x in ARROW.objects:
        for y in ARROW.objects:
            assert set(neg.hom(x, y)) == set(op.hom(x, y))


def test_type_cat_object_budget():
    it = Interpreter(BaseAssignment.uniform(builtin_category("discrete3")), max_objects=8)
    with pytest.raises(InterpError, match="cap"):
        it.type_cat(And(A, And(A, A)))


def test_base_assignment_lookup():
    ba = load_base_assignment("A = arrow\n* = terminal\n")
    assert ba.lookup("A").name == "arrow"
    assert ba.lookup("Z").name == "terminal"
    with pytest.raises(InterpError, match="assigned twice"):
        load_base_assignment("A = arrow\nA = parallel\n")
    with pytest.raises(FinCatError, match="unknown builtin"):
        load_base_assignment("A = nonesuch\n")


# ---------------------------------------------------------------------------
# expressions


def test_var_fibre_is_hom(over_arrow):
    ctx = (("x", POS, A),)
    p = over_arrow.interp(ctx, Var("x"), TermAt(A))
    validate_profunctor(p)
    asg = {"x": "q", RET: "p"}
    assert p.body.at(p.point(asg)) == frozenset({"f"})
    assert p.body.at(p.point({"x": "p", RET: "q"})) == frozenset()


def test_var_over_discrete_is_diagonal(over_d2):
    ctx = (("x", POS, A),)
    p = over_d2.interp(ctx, Var("x"), TermAt(A))
    for pt in p.body.points():
        assert (len(p.body.at(pt)) == 1) == (pt[0] == pt[1])


def test_covar_fibre_is_hom(over_arrow):
    ctx = (("k", NEG, A),)
    p = over_arrow.interp(ctx, CoVar("k"), CoTermAt(A))
    validate_profunctor(p)
    # co-variable: arrows from the hypothesis coordinate into the result
    assert p.body.at(p.point({"k": "q", RET: "p"})) == frozenset()
    assert p.body.at(p.point({"k": "p", RET: "q"})) == frozenset({"f"})


def test_identity_cut_classes_count_hom(over_arrow):
    ctx = (("x", POS, A), ("k", NEG, A))
    pc = over_arrow.interp(ctx, Cut(Var("x"), CoVar("k"), A), Absurd())
    validate_profunctor(pc)
    for pt in pc.body.points():
        gx, dk = pt
        assert len(pc.body.at(pt)) == len(ARROW.hom(dk, gx))


def test_unit_constants(over_arrow):
    pu = over_arrow.interp((), Unit(), TermAt(Top()))
    assert all(f == frozenset({POINT}) for f in pu.body.values.values())
    pc = over_arrow.interp((), CoUnit(), CoTermAt(Bot()))
    assert all(f == frozenset({POINT}) for f in pc.body.values.values())


def test_interp_is_alpha_invariant(over_parallel):
    ctx = (("z", POS, B), ("l", NEG, B))
    e1 = Mu("c", Cut(Var("z"), CoVar("c"), B))
    e2 = Mu("d", Cut(Var("z"), CoVar("d"), B))
    assert over_parallel.interp(ctx, e1, TermAt(B)) == over_parallel.interp(ctx, e2, TermAt(B))


def test_interp_deterministic(over_parallel):
    ctx = (("z", POS, B), ("l", NEG, B))
    e = Pair(Var("z"), Mu("c", Cut(Var("z"), CoVar("c"), B)))
    p1 = over_parallel.interp(ctx, e, TermAt(And(B, B)))
    p2 = over_parallel.interp(ctx, e, TermAt(And(B, B)))
    assert p1 == p2


def test_cut_data_agrees_with_interp(over_arrow):
    ctx = (("x", POS, A), ("k", NEG, A))
    cut = Cut(Var("x"), CoVar("k"), A)
    comp = over_arrow.cut_data(ctx, cut)
    assert comp.prof == over_arrow.interp(ctx, cut, Absurd())


def test_mu_interp_is_renamed_statement(over_arrow):
    # mu binds the output: same fibres as the statement, coordinate renamed
    ctx = (("z", POS, B),)
    s = Cut(Var("z"), CoVar("a"), B)
    p_stmt = over_arrow.interp(ctx + (("a", NEG, B),), s, Absurd())
    p_mu = over_arrow.interp(ctx, Mu("a", s), TermAt(B))
    assert [n for n, _ in p_mu.coords] == ["z", RET]
    for pt in p_mu.body.points():
        assert p_mu.body.at(pt) == p_stmt.body.at(pt)


# ---------------------------------------------------------------------------
# reduction cells


def test_beta_fst_cell(over_arrow):
    ctx = (("x", POS, A), ("k", NEG, A))
    red = BetaFst(Var("x"), Unit(), CoVar("k"))
    nat = over_arrow.interp_reduction(ctx, red)
    validate_nat(nat)
    assert nat.source == over_arrow.interp(
        ctx, Cut(Pair(Var("x"), Unit()), Fst(CoVar("k")), And(A, Top())), Absurd()
    )
    assert nat.target == over_arrow.interp(ctx, Cut(Var("x"), CoVar("k"), A), Absurd())
    for m in nat.components.values():
        assert len(set(m.values())) == len(m)


def test_beta_mu_vacuous(over_arrow):
    ctx = (("y", POS, B), ("l", NEG, B))
    s = Cut(Var("y"), CoVar("l"), B)
    nat = over_arrow.interp_reduction(ctx, BetaMu(CoVar("l"), "a", s))
    validate_nat(nat)
    assert nat.target == over_arrow.interp(ctx, s, Absurd())


def test_beta_mu_tilde_is_substitution(over_arrow):
    ctx = (("z", POS, B), ("l", NEG, B))
    s = Cut(Var("x"), CoVar("l"), B)
    nat = over_arrow.interp_reduction(ctx, BetaMuTilde(Var("z"), "x", s))
    validate_nat(nat)
    assert nat.target == over_arrow.interp(ctx, subst(s, "x", Var("z")), Absurd())
    for pt, m in nat.components.items():
        assert len(set(m.values())) == len(m)
        assert set(m.values()) == set(nat.target.body.at(pt))


def test_beta_not(over_parallel):
    ctx = (("z", POS, B), ("l", NEG, B))
    nat = over_parallel.interp_reduction(ctx, BetaNot(Var("z"), CoVar("l")))
    validate_nat(nat)
    assert nat.source == over_parallel.interp(
        ctx, Cut(NotIntro(CoVar("l")), NotElim(Var("z")), Not(B)), Absurd()
    )
    for m in nat.components.values():
        assert len(set(m.values())) == len(m)


def test_beta_inr(over_parallel):
    ctx = (("z", POS, B), ("l", NEG, B))
    nat = over_parallel.interp_reduction(ctx, BetaInr(CoVar("l"), CoVar("l"), Var("z")))
    validate_nat(nat)
    assert nat.target == over_parallel.interp(ctx, Cut(Var("z"), CoVar("l"), B), Absurd())


def test_annotated_beta_cell(over_parallel):
    # the Lafont halves only typecheck annotated; their cells share a source
    ctx = (("y", POS, B), ("l", NEG, B))
    s = Cut(Var("y"), CoVar("l"), B)
    left = over_parallel.interp_reduction(ctx, BetaMu(MuTilde("x", s), "a", s, A))
    right = over_parallel.interp_reduction(ctx, BetaMuTilde(Mu("a", s), "x", s, A))
    validate_nat(left)
    validate_nat(right)
    assert left.source == right.source


def test_cong_mu(over_parallel):
    ctx = (("z", POS, B), ("l", NEG, B))
    inner = BetaMuTilde(Var("z"), "x", Cut(Var("x"), CoVar("c"), B))
    nat = over_parallel.interp_reduction(ctx, CongMu("c", inner), TermAt(B))
    validate_nat(nat)


def test_cong_cut_of_refls_is_identity(over_parallel):
    ctx = (("z", POS, B), ("l", NEG, B))
    red = CongCut(
        Refl(Var("z")), CongMuTilde("x", Refl(Cut(Var("x"), CoVar("l"), B))), B
    )
    nat = over_parallel.interp_reduction(ctx, red)
    validate_nat(nat)
    assert all(all(k == v for k, v in m.items()) for m in nat.components.values())


def test_trans_chains_endpoints(over_parallel):
    ctx = (("z", POS, B), ("l", NEG, B))
    s = Cut(Var("z"), CoVar("l"), B)
    step = BetaMuTilde(Var("z"), "x", Cut(Var("x"), CoVar("l"), B))
    nat = over_parallel.interp_reduction(ctx, Trans(step, Refl(s)))
    validate_nat(nat)
    assert nat.target == over_parallel.interp(ctx, s, Absurd())


def test_refl_is_identity_cell(over_arrow):
    ctx = (("z", POS, B), ("l", NEG, B))
    s = Cut(Var("z"), CoVar("l"), B)
    nat = over_arrow.interp_reduction(ctx, Refl(s))
    assert nat.source == nat.target
    assert all(all(k == v for k, v in m.items()) for m in nat.components.values())


# ---------------------------------------------------------------------------
# the generalized step and coincidence


def test_generalized_beta_bound_case_bijective(over_parallel):
    ctx = (("z", POS, B), ("l", NEG, B))
    gb = over_parallel.generalized_beta(ctx, Var("z"), "x", B, Var("x"), TermAt(B))
    validate_nat(gb)
    for pt, m in gb.components.items():
        assert len(set(m.values())) == len(m)
        assert set(m.values()) == set(gb.target.body.at(pt))


def test_generalized_beta_collapse_case(over_parallel):
    ctx = (("z", POS, B), ("l", NEG, B))
    gb = over_parallel.generalized_beta(ctx, CoVar("l"), "a", B, Var("z"), TermAt(B))
    validate_nat(gb)


def test_coincidence_probes():
    ctx = (("z", POS, B), ("l", NEG, B))
    for name in ("terminal", "arrow", "parallel", "discrete2"):
        it = Interpreter(BaseAssignment.uniform(builtin_category(name)))
        assert it.coincidence_check(ctx, CoVar("l"), "a", Var("z"), B, B)
        assert it.coincidence_check(
            ctx, CoVar("l"), "a", Mu("c", Cut(Var("z"), CoVar("c"), B)), B, B
        )
        assert it.coincidence_check(
            ctx, CoVar("l"), "a", Mu("c", Cut(Var("z"), CoVar("a"), B)), B, B
        )


def test_eta_collapse_bijective_per_point(over_arrow):
    ctx = (("z", POS, B), ("l", NEG, B))
    nat = over_arrow.eta_collapse(ctx, Var("z"), TermAt(B))
    validate_nat(nat)
    for pt, m in nat.components.items():
        assert len(set(m.values())) == len(m)
        assert set(m.values()) == set(nat.target.body.at(pt))


def test_module_level_helpers():
    ba = BaseAssignment.uniform(terminal_cat())
    p = interp_expr((("x", POS, A),), Var("x"), TermAt(A), ba)
    validate_profunctor(p)
