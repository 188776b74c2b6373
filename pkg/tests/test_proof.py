import random
from dataclasses import replace

import pytest

import corpus
from starhr.builder import ProofBuilder
from starhr.kernel import NAT, Context, KernelError, Var, app, numeral, suc
from starhr.logic import BOT, And, Eq, Exists, Forall, Imp, Or
from starhr.proof import (
    AxiomJust, ProofLine, ProofScript, RuleJust, SchemaError,
    axiom_instance, check_proof, parse_proof, proof_errors, show_just,
)
from starhr.syntax import parse_signature

N = NAT
n, m, x, y = (Var(s, N) for s in "nmxy")
ZZ = Eq(N, numeral(0), numeral(0))


def test_efq_instance_accepted():
    b = ProofBuilder()
    b.axiom("efq", A=ZZ)
    assert b.formula(1) == Imp(BOT, ZZ)
    assert proof_errors(b.script()) == []


def test_eigenvariable_violation():
    ctx = Context((n,))
    b = ProofBuilder(context=ctx)
    i = b.identity(Eq(N, n, n))
    f = b.formula(i)
    lines = list(b.lines) + [ProofLine(i + 1, Imp(f.left, Forall(n, f.right)), RuleJust("all-intro", (i,)))]
    errs = proof_errors(ProofScript(context=ctx, lines=lines))
    assert [e.number for e in errs] == [i + 1]
    assert any("eigenvariable" in d for d in errs[0].diagnostics)


def test_ex_elim_eigenvariable():
    ctx = Context((n,))
    b = ProofBuilder(context=ctx)
    i = b.identity(Eq(N, n, n))
    f = b.formula(i)
    p = b.script()
    p.lines.append(ProofLine(i + 1, Imp(Exists(n, f.left), f.right), RuleJust("ex-elim", (i,))))
    (err,) = proof_errors(p)
    assert any("eigenvariable" in d for d in err.diagnostics)


def test_ip_needs_exists_free_premise():
    premise = Exists(y, Eq(N, y, y))
    with pytest.raises(SchemaError):
        axiom_instance("ip", dict(B=premise, y=x, A=Eq(N, x, x)))


def test_schema_mismatch_reported():
    b = ProofBuilder()
    b.axiom("conj-dup", A=ZZ)
    p = b.script()
    p.lines[0] = replace(p.lines[0], formula=Imp(ZZ, And(ZZ, BOT)))
    (err,) = proof_errors(p)
    assert "schema mismatch" in err.diagnostics[0]


def test_failures_propagate_to_dependents():
    b = ProofBuilder()
    ex = b.axiom("ex-intro", x=m, A=Eq(N, m, numeral(2)), t=numeral(2))
    b.mp(b.refl(numeral(2)), ex)
    p = b.script()
    p.lines[1] = replace(p.lines[1], formula=Eq(N, numeral(3), numeral(3)))
    bad = {c.number: c.diagnostics for c in proof_errors(p)}
    assert set(bad) == {2, 3}
    assert any("premise 2 failed" in d for d in bad[3])


def test_premise_must_be_earlier():
    p = ProofScript(lines=[ProofLine(1, ZZ, RuleJust("mp", (1, 2)))])
    (err,) = proof_errors(p)
    assert "not an earlier line" in err.diagnostics[0]


def test_open_assumption_rejected():
    p = ProofScript(assumptions={"h": Eq(N, x, x)}, lines=[ProofLine(1, ZZ, AxiomJust("eq-refl", (("t", numeral(0)),)))])
    assert proof_errors(p)


def test_existential_assumption_rejected():
    p = ProofScript(assumptions={"h": Exists(x, Eq(N, x, x))},
                    lines=[ProofLine(1, ZZ, AxiomJust("eq-refl", (("t", numeral(0)),)))])
    assert any("∃-free" in d for c in proof_errors(p) for d in c.diagnostics)


def test_arithmetic_axioms_need_arithmetic_mode():
    sig = parse_signature("mode logic; fun c / 0;")
    with pytest.raises(SchemaError):
        axiom_instance("suc-nz", dict(t=numeral(0)), sig)


def test_builder_derived_rules_check():
    b = ProofBuilder(context=Context((n,)))
    i = b.refl(n)
    j = b.refl(numeral(0))
    both = b.conj_intro(i, j)
    assert b.formula(both) == And(Eq(N, n, n), Eq(N, numeral(0), numeral(0)))
    k = b.gen(both, n)
    assert isinstance(b.formula(k), Forall)
    s = b.eq_sym(b.axiom("conv", t=app(suc, numeral(1)), q=numeral(2)))
    assert b.formula(s) == Eq(N, numeral(2), app(suc, numeral(1)))
    d = b.disj_mono(b.identity(ZZ), BOT)
    assert b.formula(d) == Imp(Or(BOT, ZZ), Or(BOT, ZZ))
    assert proof_errors(b.script()) == []


def test_builder_rejects_bad_mp():
    b = ProofBuilder()
    i = b.refl(numeral(0))
    j = b.axiom("conj-dup", A=Eq(N, numeral(1), numeral(1)))
    with pytest.raises(KernelError):
        b.mp(i, j)


@pytest.mark.parametrize("path", corpus.proof_files(), ids=lambda p: p.stem)
def test_corpus_checks(path):
    assert all(c.ok for c in check_proof(corpus.proof(path.stem)))


@pytest.mark.parametrize("seed", range(10))
def test_mutated_corpus_line_is_caught(seed):
    rng = random.Random(seed)
    name = rng.choice([p.stem for p in corpus.proof_files()])
    p = parse_proof((corpus.CORPUS / f"{name}.prf").read_text())
    i = rng.randrange(len(p.lines))
    ln = p.lines[i]
    p.lines[i] = replace(ln, formula=And(ln.formula, BOT))
    assert i + 1 in {c.number for c in proof_errors(p)}


def test_show_just():
    assert show_just(RuleJust("mp", (1, 2))) == "rule mp from 1, 2"
