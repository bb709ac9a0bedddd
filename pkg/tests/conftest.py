import glob
import os
import sys

import pytest
from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from seqprof.syntax import (
    Absurd,
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
    CoUnit,
    CoVar,
    CoTermAt,
    Cut,
    Fst,
    Inl,
    Inr,
    Mu,
    MuTilde,
    Not,
    NotElim,
    NotIntro,
    Pair,
    Refl,
    Snd,
    TermAt,
    Top,
    Trans,
    And,
    Or,
    Unit,
    Var,
)

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("suite")

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CORPUS = os.path.join(ROOT, "corpus")


@pytest.fixture(scope="session")
def corpus_files():
    files = sorted(glob.glob(os.path.join(CORPUS, "*.c2")))
    assert files, "corpus missing"
    return files


@pytest.fixture(scope="session")
def negative_files():
    files = sorted(glob.glob(os.path.join(CORPUS, "negative", "*.c2")))
    assert files, "negative corpus missing"
    return files


@pytest.fixture(scope="session")
def base_dir():
    return os.path.join(CORPUS, "bases")


# ---------------------------------------------------------------------------
# strategies over the raw syntax trees
#
# These generate well-scoped-looking but not necessarily well-typed
# trees; the alpha/substitution laws they test are purely syntactic.

VARS = ("x", "y", "z", "u", "v")
COVARS = ("a", "b", "c", "k", "l")
BASES = ("A", "B", "C")

st_var_name = st.sampled_from(VARS)
st_covar_name = st.sampled_from(COVARS)

st_type = st.recursive(
    st.one_of(
        st.sampled_from(BASES).map(Base),
        st.just(Top()),
        st.just(Bot()),
    ),
    lambda t: st.one_of(
        st.tuples(t, t).map(lambda p: And(*p)),
        st.tuples(t, t).map(lambda p: Or(*p)),
        t.map(Not),
    ),
    max_leaves=4,
)


def _exprs():
    term = st.deferred(lambda: st_term)
    coterm = st.deferred(lambda: st_coterm)
    stmt = st.deferred(lambda: st_stmt)

    st_term = st.recursive(
        st.one_of(st_var_name.map(Var), st.just(Unit())),
        lambda _t: st.one_of(
            st.tuples(st_covar_name, stmt).map(lambda p: Mu(*p)),
            st.tuples(_t, _t).map(lambda p: Pair(*p)),
            _t.map(Inl),
            _t.map(Inr),
            coterm.map(NotIntro),
        ),
        max_leaves=5,
    )
    st_coterm = st.recursive(
        st.one_of(st_covar_name.map(CoVar), st.just(CoUnit())),
        lambda _k: st.one_of(
            st.tuples(st_var_name, stmt).map(lambda p: MuTilde(*p)),
            _k.map(Fst),
            _k.map(Snd),
            st.tuples(_k, _k).map(lambda p: Case(*p)),
            term.map(NotElim),
        ),
        max_leaves=5,
    )
    st_stmt = st.builds(Cut, term, coterm, st_type)
    return st_term, st_coterm, st_stmt


st_term, st_coterm, st_stmt = _exprs()

st_expr = st.one_of(st_term, st_coterm, st_stmt)

st_judgment = st.one_of(
    st_type.map(TermAt),
    st_type.map(CoTermAt),
    st.just(Absurd()),
)

st_reduction = st.recursive(
    st.one_of(
        st_expr.map(Refl),
        st.builds(BetaMu, st_coterm, st_covar_name, st_stmt, st.none() | st_type),
        st.builds(BetaMuTilde, st_term, st_var_name, st_stmt, st.none() | st_type),
        st.builds(BetaFst, st_term, st_term, st_coterm),
        st.builds(BetaSnd, st_term, st_term, st_coterm),
        st.builds(BetaInl, st_coterm, st_coterm, st_term),
        st.builds(BetaInr, st_coterm, st_coterm, st_term),
        st.builds(BetaNot, st_term, st_coterm),
    ),
    lambda r: st.one_of(
        st.tuples(r, r).map(lambda p: Trans(*p)),
        st.tuples(st_covar_name, r).map(lambda p: CongMu(*p)),
        st.tuples(st_var_name, r).map(lambda p: CongMuTilde(*p)),
        st.builds(CongCut, r, r, st_type),
        st.tuples(r, r).map(lambda p: CongPair(*p)),
        st.tuples(r, r).map(lambda p: CongCase(*p)),
        r.map(CongInl),
        r.map(CongInr),
        r.map(CongFst),
        r.map(CongSnd),
        r.map(CongNotIntro),
        r.map(CongNotElim),
    ),
    max_leaves=6,
)
