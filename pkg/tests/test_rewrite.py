import pytest
from hypothesis import given, settings, strategies as st

from oracle import decode, denote, first_order
from starhr.abstraction import bracket, lam
from starhr.gen import TermGen
from starhr.kernel import (
    NAT, Arrow, Ground, Signature, Star, Var, app, bigcup, cup, pi, rec, sig,
    single, suc, typecheck, zero, numeral,
)
from starhr.rewrite import (
    LO, RI, BudgetExhausted, as_numeral, enumerate_set, is_set_like,
    normalize, step, surface_elements, trace,
)

G = Ground("G")
LOGIC = Signature("logic", {"c": 0, "d": 0, "f": 1})
c, d = LOGIC.constant("c"), LOGIC.constant("d")
fs = Var("f", Arrow(G, Star(G)))
x, n = Var("x", NAT), Var("n", NAT)
add1 = lam([x, n], app(suc, x))
double = lam([x, n], app(suc, app(suc, x)))


def test_single_steps():
    assert step(app(pi(G, G), c, d)) == c
    f = lam([Var("y", G)], app(single(G), Var("y", G)))
    assert normalize(app(bigcup(G, G), app(single(G), c), f)) == app(single(G), c)
    r = Var("r", Arrow(NAT, Arrow(NAT, NAT)))
    t = app(rec(NAT), app(suc, zero), numeral(5), r)
    assert step(t) == app(r, app(rec(NAT), zero, numeral(5), r), zero)


def test_step_on_normal_is_none():
    assert step(c) is None


def test_bigcup_distributes():
    t = app(bigcup(G, G), app(cup(G), app(single(G), c), app(single(G), d)), fs)
    assert normalize(t) == app(cup(G), app(fs, c), app(fs, d))


def test_sigma_pi_pi_is_identity():
    t = app(sig(G, Arrow(G, G), G), pi(G, Arrow(G, G)), pi(G, G), c)
    assert normalize(t) == c


@pytest.mark.parametrize("t, value", [
    (app(rec(NAT), numeral(2), zero, add1), 2),
    (app(rec(NAT), numeral(3), zero, double), 6),
    (app(rec(NAT), zero, numeral(1), double), 1),
    (app(pi(NAT, NAT), numeral(2), numeral(5)), 2),
    (app(suc, zero), 1),
])
def test_numeric_normal_forms(t, value):
    assert as_numeral(normalize(t)) == value
    assert denote(t) == value


def test_surface_elements():
    assert list(surface_elements(app(single(G), c))) == [c]
    assert list(surface_elements(app(cup(G), app(single(G), c), app(single(G), d)))) == [c, d]
    assert len(surface_elements(app(bigcup(G, G), app(single(G), c), fs))) == 0


def test_is_set_like():
    assert is_set_like(app(cup(G), app(single(G), c), app(single(G), d)))
    assert not is_set_like(app(bigcup(G, G), app(single(G), c), fs))
    assert is_set_like(app(single(G), app(pi(G, G), c, d)))


def test_enumerate_set():
    assert list(enumerate_set(app(single(NAT), zero))) == [zero]
    shift = lam([x], app(single(NAT), app(suc, x)))
    t = app(bigcup(NAT, NAT), app(cup(NAT), app(single(NAT), zero), app(single(NAT), numeral(1))), shift)
    assert [as_numeral(e) for e in enumerate_set(t)] == [1, 2]
    assert denote(t) == frozenset({1, 2})
    dup = app(cup(NAT), app(single(NAT), zero), app(single(NAT), zero))
    assert list(enumerate_set(dup)) == [zero]


def test_budget_exhausted_reports_tail():
    t = app(rec(NAT), numeral(4), zero, double)
    with pytest.raises(BudgetExhausted) as info:
        normalize(t, budget=3)
    assert info.value.tail


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("STARHR_BUDGET", "2")
    with pytest.raises(BudgetExhausted):
        normalize(app(rec(NAT), numeral(4), zero, double))


def test_trace_is_consistent():
    tr = trace(app(rec(NAT), numeral(2), zero, add1))
    prev = tr.start
    for _, _, t in tr.steps:
        assert step(prev, LO) == t
        prev = t
    assert tr.result == numeral(2)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**31))
def test_step_preserves_type(seed):
    t = TermGen(seed).closed()
    ty = typecheck(t)
    while (t := step(t)) is not None:
        assert typecheck(t) == ty


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**31))
def test_lo_and_ri_agree_with_oracle(seed):
    t = TermGen(seed).closed()
    lo, ri = normalize(t, strategy=LO), normalize(t, strategy=RI)
    assert lo == ri
    if first_order(t.type):
        assert decode(lo) == denote(t)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31))
def test_enumerate_stable_under_prereduction(seed):
    g = TermGen(seed)
    t = g.closed(Star(NAT))
    mid = t
    for _ in range(g.rng.randint(0, 5)):
        nxt = step(mid, RI)
        if nxt is None:
            break
        mid = nxt
    assert enumerate_set(t) == enumerate_set(mid) == enumerate_set(normalize(t))


def test_bracket_reduces_like_beta():
    y = Var("y", G)
    f = Var("g", Arrow(G, G))
    assert normalize(app(bracket(y, app(f, y)), c)) == app(f, c)
