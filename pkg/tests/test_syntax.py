import random

import pytest
from hypothesis import given, settings, strategies as st

import corpus
from starhr.gen import TermGen, random_formula
from starhr.kernel import NAT, Arrow, Ground, Star
from starhr.logic import And, Imp, alpha_eq
from starhr.proof import parse_proof, show_proof
from starhr.syntax import (
    ParseError, parse_document, parse_formula, parse_signature, parse_term,
    parse_type, show_document, show_formula, show_term, show_type, tokenize,
)

LOGIC = parse_signature("mode logic; fun c / 0; fun d / 0; fun f / 1; rel P / 1; rel Q / 2;")


@pytest.mark.parametrize("text, ty", [
    ("N", NAT),
    ("N*", Star(NAT)),
    ("N -> N -> N", Arrow(NAT, Arrow(NAT, NAT))),
    ("(N -> N)*", Star(Arrow(NAT, NAT))),
    ("N**", Star(Star(NAT))),
])
def test_types(text, ty):
    assert parse_type(text) == ty
    assert parse_type(show_type(ty)) == ty


def test_logic_ground_type():
    assert parse_term("PI[G, G] c d", LOGIC).type == Ground("G")


@pytest.mark.parametrize("text", [
    "PI[G, G] c d",
    "SET[G] (f c)",
    "BIGCUP[G, G] (SET[G] c) SET[G]",
    "CUP[G] (SET[G] c) (SET[G] d)",
])
def test_term_round_trip(text):
    t = parse_term(text, LOGIC)
    assert parse_term(show_term(t), LOGIC) == t


def test_numerals_print_as_digits():
    assert show_term(parse_term("SUC (SUC 0)")) == "2"
    assert parse_term("3") == parse_term("SUC (SUC (SUC 0))")


def test_negation_and_biconditional_are_sugar():
    a = parse_formula("~P(c)", LOGIC)
    assert a == Imp(parse_formula("P(c)", LOGIC), parse_formula("bot"))
    b = parse_formula("P(c) <-> P(d)", LOGIC)
    assert isinstance(b, And) and isinstance(b.left, Imp)


@pytest.mark.parametrize("text", [
    "ex z:G . P(z)",
    "all x in (SET[G] c) . P(x)",
    "all z:G . ex w:G . Q(z, w)",
    "c in SET[G] c : G",
    "P(c) -> P(d) | bot",
])
def test_formula_round_trip(text):
    a = parse_formula(text, LOGIC)
    assert parse_formula(show_formula(a), LOGIC) == a


@pytest.mark.parametrize("text, line, col", [
    ("PI[G, G] c\n  e", 2, 3),
    ("SET[G] (c", 1, 10),
])
def test_parse_errors_carry_positions(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_term(text, LOGIC)
    assert (info.value.line, info.value.col) == (line, col)


def test_ill_typed_term_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_term("SET[G] SET[G]", LOGIC)


def test_hyphenated_identifiers():
    kinds = [t.text for t in tokenize("rec-0 a->b")]
    assert "rec-0" in kinds and "->" in kinds


def test_document_with_context():
    doc = parse_document("context n:N;\nSUC n", "term")
    assert [v.name for v in doc.context] == ["n"]
    again = parse_document(show_document(doc), "term")
    assert again.body == doc.body


@pytest.mark.parametrize("path", corpus.proof_files(), ids=lambda p: p.stem)
def test_corpus_proof_round_trip(path):
    p = parse_proof(path.read_text())
    q = parse_proof(show_proof(p))
    assert show_proof(q) == show_proof(p)
    assert all(alpha_eq(a.formula, b.formula) for a, b in zip(p.lines, q.lines))


@pytest.mark.parametrize("path", corpus.term_files() + corpus.formula_files(), ids=lambda p: p.name)
def test_corpus_document_round_trip(path):
    kind = "term" if path.suffix == ".term" else "formula"
    doc = parse_document(path.read_text(), kind)
    assert parse_document(show_document(doc), kind).body == doc.body


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**31))
def test_random_term_round_trip(seed):
    t = TermGen(seed).closed()
    assert parse_term(show_term(t)) == t


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**31))
def test_random_formula_round_trip(seed):
    rng = random.Random(seed)
    a = random_formula(rng, rng.randint(1, 4))
    assert parse_formula(show_formula(a)) == a
