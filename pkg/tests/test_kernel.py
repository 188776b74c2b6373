import pytest
from hypothesis import given, settings, strategies as st

from starhr.gen import TermGen
from starhr.kernel import (
    NAT, Arrow, Context, Ground, KernelError, KernelTypeError, Signature, Star,
    UnboundVariable, Var, app, bigcup, is_end_star, numeral, pi, rec, sig,
    single, split_arrows, subst_term, type_of_constant, typecheck,
)

G = Ground("G")
LOGIC = Signature("logic", {"c": 0, "d": 0, "f": 1})
c, d = LOGIC.constant("c"), LOGIC.constant("d")


@pytest.mark.parametrize("const, ty", [
    (pi(G, G), Arrow(G, Arrow(G, G))),
    (single(NAT), Arrow(NAT, Star(NAT))),
    (rec(NAT), Arrow(NAT, Arrow(NAT, Arrow(Arrow(NAT, Arrow(NAT, NAT)), NAT)))),
    (sig(G, G, G), Arrow(Arrow(G, Arrow(G, G)), Arrow(Arrow(G, G), Arrow(G, G)))),
])
def test_constant_types(const, ty):
    assert const.type == ty


def test_bigcup_application_types():
    x, f = Var("x", Star(G)), Var("f", Arrow(G, Star(G)))
    t = app(bigcup(G, G), x, f)
    assert typecheck(t, [x, f], LOGIC) == Star(G)


def test_partial_application():
    assert typecheck(app(pi(G, G), c), signature=LOGIC) == Arrow(G, G)


def test_application_mismatch_rejected():
    f = Var("f", Arrow(G, G))
    with pytest.raises(KernelTypeError, match="expected G"):
        app(single(G), f)


def test_unknown_constant():
    with pytest.raises(KernelError):
        type_of_constant("nope")


def test_unbound_variable():
    x = Var("x", NAT)
    with pytest.raises(UnboundVariable):
        typecheck(app(single(NAT), x))


@pytest.mark.parametrize("ty, expected", [
    (Star(G), True),
    (Arrow(G, Star(G)), True),
    (Arrow(G, G), False),
    (Arrow(Star(G), Arrow(G, G)), False),
])
def test_is_end_star(ty, expected):
    assert is_end_star(ty) is expected


def test_subst_examples():
    x, y = Var("x", G), Var("y", G)
    assert subst_term(app(pi(G, G), x, y), x, c) == app(pi(G, G), c, y)
    assert subst_term(x, x, c) == c
    assert subst_term(app(single(G), y), x, c) == app(single(G), y)


def test_variable_identity_is_name_and_type():
    assert Var("x", NAT) != Var("x", Star(NAT))
    assert Var("x", NAT) == Var("x", NAT)


def test_context_rejects_duplicates():
    with pytest.raises(KernelError):
        Context((Var("x", NAT), Var("x", Star(NAT))))


def test_logic_mode_needs_constant():
    with pytest.raises(KernelError):
        Signature("logic", {"f": 1})


def test_numerals():
    assert typecheck(numeral(3)) == NAT
    assert numeral(0) != numeral(1)


@pytest.mark.parametrize("ty", [NAT, Star(NAT), Arrow(NAT, Star(Star(NAT))), Arrow(Star(NAT), NAT)])
def test_inhabit_is_closed_and_typed(ty):
    t = Signature().inhabit(ty)
    assert t.is_closed and typecheck(t) == ty


def _decomposes(ty):
    doms, cod = split_arrows(ty)
    return isinstance(cod, (Ground, Star)) and all(_decomposes(a) for a in doms)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31), st.sampled_from([NAT, Star(NAT), Arrow(NAT, NAT)]))
def test_subject_preservation_of_substitution(seed, sty):
    g = TermGen(seed)
    x, y = Var("x", sty), Var("y", NAT)
    t = g.term(g.rng.choice([NAT, Star(NAT)]), [x, y], fuel=12)
    s = g.term(sty, [y], fuel=6)
    before = typecheck(t, [x, y])
    after = typecheck(subst_term(t, x, s), [y])
    assert before == after == t.type
    assert _decomposes(after)
