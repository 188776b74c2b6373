"""Regenerate the proof corpus under corpus/.

Every proof is assembled with ProofBuilder, checked, and written in the
concrete syntax. Run from the repository root:

    python3 scripts/make_corpus.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from starhr.abstraction import lam
from starhr.builder import ProofBuilder
from starhr.kernel import (
    NAT, Arrow, Context, Signature, Star, Var, app, cup, numeral, rec, rect, single, suc,
)
from starhr.logic import And, Eq, Exists, Mem, Rel
from starhr.proof import check_proof, show_proof
from starhr.syntax import parse_formula, parse_signature, parse_term, show_term

ROOT = Path(__file__).resolve().parent.parent / "corpus"
ARITH = Signature()

n, m, k, x = (Var(s, NAT) for s in "nmkx")


def F(text, b: ProofBuilder):
    return parse_formula(text, b.signature, b.context)


def T(text, b: ProofBuilder):
    return parse_term(text, b.signature, b.context)


def doubler(t):
    """``REC[N] t 0 (lam x k. S (S x))``: twice ``t``."""
    step = lam([Var("x", NAT), Var("k", NAT)], app(suc, app(suc, Var("x", NAT))))
    return app(rec(NAT), t, numeral(0), step)


def prove_exists_eq(b: ProofBuilder, t, var=m):
    """``ex var . var = t``"""
    refl = b.refl(t)
    intro = b.axiom("ex-intro", x=var, A=Eq(NAT, var, t), t=t)
    return b.mp(refl, intro)


def E(k_, b, var="m"):
    return F(f"ex {var}:N . {var} = {k_} : N", b)


# ---------------------------------------------------------------------------
# proofs


def exists_two():
    b = ProofBuilder(ARITH)
    prove_exists_eq(b, numeral(2))
    return b


def conj_dup():
    b = ProofBuilder(ARITH)
    e = prove_exists_eq(b, numeral(2))
    b.mp(e, b.axiom("conj-dup", A=b.formula(e)))
    return b


def disj_idem():
    b = ProofBuilder(ARITH)
    e = prove_exists_eq(b, numeral(2))
    a = b.formula(e)
    both = b.mp(e, b.axiom("disj-intro", A=a, B=a))
    b.mp(both, b.axiom("disj-idem", A=a))
    return b


def conj_elim():
    b = ProofBuilder(ARITH)
    e2 = prove_exists_eq(b, numeral(2))
    e3 = prove_exists_eq(b, numeral(3))
    c = b.conj_intro(e2, e3)
    b.mp(c, b.axiom("conj-elim", A=b.formula(e2), B=b.formula(e3)))
    return b


def conj_comm():
    b = ProofBuilder(ARITH)
    e2 = prove_exists_eq(b, numeral(2))
    e3 = prove_exists_eq(b, numeral(3))
    c = b.conj_intro(e2, e3)
    b.mp(c, b.axiom("conj-comm", A=b.formula(e2), B=b.formula(e3)))
    return b


def disj_intro():
    b = ProofBuilder(ARITH)
    e2 = prove_exists_eq(b, numeral(2))
    b.mp(e2, b.axiom("disj-intro", A=b.formula(e2), B=E(3, b)))
    return b


def disj_comm():
    b = ProofBuilder(ARITH)
    e2 = prove_exists_eq(b, numeral(2))
    d = b.mp(e2, b.axiom("disj-intro", A=b.formula(e2), B=E(3, b)))
    b.mp(d, b.axiom("disj-comm", A=b.formula(e2), B=E(3, b)))
    return b


def efq():
    b = ProofBuilder(ARITH)
    b.axiom("efq", A=E(2, b))
    return b


def imp_rule():
    b = ProofBuilder(ARITH)
    e2 = prove_exists_eq(b, numeral(2))
    e3 = prove_exists_eq(b, numeral(3))
    both = And(b.formula(e2), b.formula(e3))
    curried = b.exp(b.identity(both))
    uncurried = b.imp(curried)
    b.mp(b.conj_intro(e2, e3), uncurried)
    return b


def disj_mono():
    b = ProofBuilder(ARITH)
    e5 = prove_exists_eq(b, numeral(5))
    intro = b.axiom("disj-intro", A=E(2, b), B=E(3, b))
    mono = b.disj_mono(intro, b.formula(e5))
    left = b.mp(e5, b.axiom("disj-intro", A=b.formula(e5), B=E(2, b)))
    b.mp(left, mono)
    return b


def all_elim():
    """``all n ex m . m = n``, then instantiate at 3."""
    b = ProofBuilder(ARITH, Context((n,)))
    e = prove_exists_eq(b, n)
    g = b.gen(e, n)
    b.mp(g, b.axiom("all-elim", x=n, A=b.formula(e), t=numeral(3)))
    return b


def ex_elim():
    """From ``m = 2 -> ex k . k = 3`` get ``ex m . m = 2 -> ex k . k = 3``."""
    b = ProofBuilder(ARITH, Context((m,)))
    y = Var("y", NAT)
    cong = b.cong_imp(app(suc, y), y, m, numeral(2))        # m = 2 -> S m = 3
    intro = b.axiom("ex-intro", x=k, A=Eq(NAT, k, numeral(3)), t=app(suc, m))
    step = b.syl(cong, intro)
    elim = b.ex_elim(step, m)
    e2 = prove_exists_eq(b, numeral(2))
    b.mp(e2, elim)
    return b


def exists_free_axioms():
    b = ProofBuilder(ARITH)
    def t(s):
        return T(s, b)
    y = Var("y", NAT)
    b.axiom("eq-refl", t=numeral(4))
    b.axiom("eq-subst", x=y, A=Eq(NAT, app(suc, y), numeral(3)), t=numeral(2), q=numeral(2))
    b.axiom("sig-eq", t=t("PI[N, N]"), q=t("SUC"), r=numeral(2))
    b.axiom("pi-eq", t=numeral(1), q=t("SET[N] 0"))
    b.axiom("set-mem-l", w=numeral(1), t=numeral(1))
    b.axiom("set-mem-r", w=numeral(1), t=numeral(1))
    b.axiom("cup-mem-l", w=numeral(2), t=t("SET[N] 1"), q=t("SET[N] 2"))
    b.axiom("cup-mem-r", w=numeral(2), t=t("SET[N] 1"), q=t("SET[N] 2"))
    b.axiom("bigcup-mem", z=numeral(2), w=numeral(3), t=t("CUP[N] (SET[N] 1) (SET[N] 2)"),
            q=t("SIG[N, N, N*] (PI[N -> N*, N] SET[N]) SUC"))
    b.axiom("bigcup-set", t=numeral(1), q=t("SET[N]"))
    b.axiom("bigcup-cup", t=t("SET[N] 1"), q=t("SET[N] 2"), r=t("SET[N]"))
    b.axiom("conv", t=doubler(numeral(2)), q=numeral(4))
    b.axiom("suc-inj", t=numeral(1), q=numeral(1))
    b.axiom("suc-nz", t=numeral(2))
    b.axiom("rec-0", q=numeral(1), r=t("PI[N -> N, N] SUC"))
    b.axiom("rec-s", t=numeral(1), q=numeral(1), r=t("PI[N -> N, N] SUC"))
    return b


def bounded_all():
    """Fold ``all x (x in {1,2} -> ex m . m = x)`` into a bounded universal, then unfold."""
    b = ProofBuilder(ARITH, Context((x,)))
    s = T("CUP[N] (SET[N] 1) (SET[N] 2)", b)
    body = E("x", b)
    e = prove_exists_eq(b, x)
    mem = F("x in CUP[N] (SET[N] 1) (SET[N] 2) : N", b)
    w = b.weaken(e, mem)
    g = b.gen(w, x)
    folded = b.mp(g, b.axiom("ball-fold", x=x, t=s, A=body))
    unfolded = b.mp(folded, b.axiom("ball-unfold", x=x, t=s, A=body))
    inst = b.mp(unfolded, b.axiom("all-elim", x=x, A=b.formula(w), t=numeral(1)))
    # 1 in {1} | 1 in {2} -> 1 in {1} u {2}
    one = numeral(1)
    s1, s2 = T("SET[N] 1", b), T("SET[N] 2", b)
    in1 = b.mp(b.refl(one), b.axiom("set-mem-r", w=one, t=one))
    either = b.mp(in1, b.axiom("disj-intro", A=b.formula(in1), B=F("1 in SET[N] 2 : N", b)))
    member = b.mp(either, b.axiom("cup-mem-r", w=one, t=s1, q=s2))
    b.mp(member, inst)
    return b


def bounded_ex():
    b = ProofBuilder(ARITH)
    s = T("CUP[N] (SET[N] 1) (SET[N] 2)", b)
    xv = Var("x", NAT)
    body = F("ex m:N . m = x : N", ProofBuilder(ARITH, Context((xv,))))
    two = numeral(2)
    in2 = b.mp(b.refl(two), b.axiom("set-mem-r", w=two, t=two))
    either = b.mp(in2, b.axiom("disj-intro", A=b.formula(in2), B=F("2 in SET[N] 1 : N", b)))
    either = b.mp(either, b.axiom("disj-comm", A=b.formula(in2), B=F("2 in SET[N] 1 : N", b)))
    member = b.mp(either, b.axiom("cup-mem-r", w=two, t=T("SET[N] 1", b), q=T("SET[N] 2", b)))
    e = prove_exists_eq(b, two)
    both = b.conj_intro(member, e)
    pre = b.mp(both, b.axiom("ex-intro", x=xv, A=And(Mem(NAT, xv, s), body), t=two))
    folded = b.mp(pre, b.axiom("bex-fold", x=xv, t=s, A=body))
    b.mp(folded, b.axiom("bex-unfold", x=xv, t=s, A=body))
    return b


def choice():
    """Choice on ``all n ex m . m = n``, then read the choice function back at 3."""
    f = Var("f", Arrow(NAT, Star(NAT)))
    b = ProofBuilder(ARITH, Context((n, m, f)))
    e = prove_exists_eq(b, n)
    g = b.gen(e, n)
    ac = b.mp(g, b.axiom("ac", x=n, y=m, A=Eq(NAT, m, n)))
    # all n ex m in f n . m = n  ->  ex m in f 3 . m = 3
    inner = b.formula(ac).body                      # all n . ex m in f n . m = n
    inst = b.axiom("all-elim", x=n, A=inner.body, t=numeral(3))
    unf = b.axiom("bex-unfold", x=m, t=app(f, numeral(3)), A=Eq(NAT, m, numeral(3)))
    # (m in f 3 & m = 3) -> ex k . k = 3
    pair = And(b.formula(unf).right.body.left, Eq(NAT, m, numeral(3)))
    comm = b.axiom("conj-comm", A=pair.left, B=pair.right)
    take = b.axiom("conj-elim", A=pair.right, B=pair.left)
    intro = b.axiom("ex-intro", x=k, A=Eq(NAT, k, numeral(3)), t=m)
    chain = b.syl(b.syl(comm, take), intro)
    out = b.ex_elim(chain, m)                       # ex m (..) -> ex k . k = 3
    per_f = b.syl(b.syl(inst, unf), out)            # all n .. -> ex k . k = 3
    elim = b.ex_elim(per_f, f)
    b.mp(ac, elim)
    return b


def premise():
    b = ProofBuilder(ARITH)
    e2 = prove_exists_eq(b, numeral(2))
    truth = F("0 = 0 : N", b)
    w = b.weaken(e2, truth)
    b.mp(w, b.axiom("ip", B=truth, y=m, A=Eq(NAT, m, numeral(2))))
    return b


def herbrand():
    """Two routes to ``ex m . m = 1 | m = 2``, merged through ``A | A -> A``."""
    sig = ARITH
    b0 = ProofBuilder(sig)
    case = F("0 = 0 : N | 0 = 1 : N", b0)
    b = ProofBuilder(sig, Context(), {"case": case})
    p, q = case.left, case.right
    goal = F("ex m:N . m = 1 : N | m = 2 : N", b)
    body = goal.body

    def route(p_, w, other_first):
        # p_ -> (w = 1 | w = 2)
        hit = Eq(NAT, numeral(w), numeral(w))
        miss = Eq(NAT, numeral(w), numeral(3 - w))
        refl = b.refl(numeral(w))
        to_hit = b.weaken(refl, p_)                              # p -> w = w
        if other_first:
            d = b.axiom("disj-intro", A=hit, B=miss)
            d = b.syl(d, b.axiom("disj-comm", A=hit, B=miss))
        else:
            d = b.axiom("disj-intro", A=hit, B=miss)
        intro = b.axiom("ex-intro", x=m, A=body, t=numeral(w))
        return b.syl(b.syl(to_hit, d), intro)

    first = route(p, 1, False)                                   # P -> goal, witness 1
    second = route(q, 2, True)                                   # Q -> goal, witness 2
    s1 = b.disj_mono(second, p)                                  # P | Q -> P | goal
    c1 = b.axiom("disj-comm", A=p, B=goal)                       # P | goal -> goal | P
    s2 = b.disj_mono(first, goal)                                # goal | P -> goal | goal
    idem = b.axiom("disj-idem", A=goal)
    chain = b.syl(b.syl(b.syl(s1, c1), s2), idem)
    b.mp(b.assume("case"), chain)
    return b


def doubling():
    """``all n ex m . m = D n`` by induction, with ``D n = REC n 0 (x,k |-> S (S x))``."""
    b = ProofBuilder(ARITH, Context((n, m)))
    y = Var("y", NAT)

    def A(t):
        return Exists(m, Eq(NAT, m, doubler(t)))

    # base: ex m . m = D 0
    conv0 = b.axiom("conv", t=numeral(0), q=doubler(numeral(0)))
    base = b.mp(conv0, b.axiom("ex-intro", x=m, A=Eq(NAT, m, doubler(numeral(0))), t=numeral(0)))
    # step: m = D n -> ex m . m = D (S n)
    sym = b.eq_sym_imp(m, doubler(n))                                    # m = D n -> D n = m
    sn = app(suc, n)
    target = Eq(NAT, app(suc, app(suc, y)), doubler(sn))
    conv = b.axiom("conv", t=app(suc, app(suc, doubler(n))), q=doubler(sn))
    rew = b.rewrite_imp(target, y, doubler(n), m, conv)                  # D n = m -> S S m = D (S n)
    intro = b.axiom("ex-intro", x=m, A=Eq(NAT, m, doubler(sn)), t=app(suc, app(suc, m)))
    step = b.syl(b.syl(sym, rew), intro)
    lifted = b.ex_elim(step, m)                                          # A n -> A (S n)
    allstep = b.gen(lifted, n)
    both = b.conj_intro(base, allstep)
    ind = b.axiom("ind", x=n, A=A(n))
    total = b.mp(both, ind)
    b.mp(total, b.axiom("all-elim", x=n, A=A(n), t=numeral(2)))
    return b


def doubling_pair():
    """``all n ex m ex k . m = n & k = D n``: induction with two existentials."""
    b = ProofBuilder(ARITH, Context((n, m, k)))
    y = Var("y", NAT)
    sn = app(suc, n)

    def A(t):
        return Exists(m, Exists(k, And(Eq(NAT, m, t), Eq(NAT, k, doubler(t)))))

    zero = numeral(0)
    pair0 = b.conj_intro(b.refl(zero), b.axiom("conv", t=zero, q=doubler(zero)))
    in_k = b.mp(pair0, b.axiom("ex-intro", x=k, A=And(Eq(NAT, zero, zero), Eq(NAT, k, doubler(zero))), t=zero))
    base = b.mp(in_k, b.axiom("ex-intro", x=m, A=Exists(k, And(Eq(NAT, m, zero), Eq(NAT, k, doubler(zero)))), t=zero))
    # m = n -> S m = S n
    left = b.cong_imp(app(suc, y), y, m, n)
    # k = D n -> S S k = D (S n)
    sym = b.eq_sym_imp(k, doubler(n))
    conv = b.axiom("conv", t=app(suc, app(suc, doubler(n))), q=doubler(sn))
    rew = b.rewrite_imp(Eq(NAT, app(suc, app(suc, y)), doubler(sn)), y, doubler(n), k, conv)
    right = b.syl(sym, rew)
    both = b.conj_mono(left, right)
    sm, ssk = app(suc, m), app(suc, app(suc, k))
    ik = b.axiom("ex-intro", x=k, A=And(Eq(NAT, sm, sn), Eq(NAT, k, doubler(sn))), t=ssk)
    im = b.axiom("ex-intro", x=m, A=Exists(k, And(Eq(NAT, m, sn), Eq(NAT, k, doubler(sn)))), t=sm)
    step = b.syl(b.syl(both, ik), im)
    step = b.ex_elim(step, k)
    step = b.ex_elim(step, m)
    allstep = b.gen(step, n)
    total = b.mp(b.conj_intro(base, allstep), b.axiom("ind", x=n, A=A(n)))
    b.mp(total, b.axiom("all-elim", x=n, A=A(n), t=numeral(3)))
    return b


def logic_witness():
    sig = parse_signature("mode logic; const c : G; const d : G; rel P / 1;")
    b0 = ProofBuilder(sig)
    pc = F("P(c)", b0)
    b = ProofBuilder(sig, Context(), {"pc": pc})
    xg = Var("x", sig.ground)
    intro = b.axiom("ex-intro", x=xg, A=Rel("P", (xg,)), t=sig.constant("c"))
    b.mp(b.assume("pc"), intro)
    return b


PROOFS = {
    "exists-two": exists_two,
    "conj-dup": conj_dup,
    "disj-idem": disj_idem,
    "conj-elim": conj_elim,
    "conj-comm": conj_comm,
    "disj-intro": disj_intro,
    "disj-comm": disj_comm,
    "efq": efq,
    "imp": imp_rule,
    "disj-mono": disj_mono,
    "all-elim": all_elim,
    "ex-elim": ex_elim,
    "exists-free-axioms": exists_free_axioms,
    "bounded-all": bounded_all,
    "bounded-ex": bounded_ex,
    "choice": choice,
    "premise": premise,
    "herbrand": herbrand,
    "doubling": doubling,
    "doubling-pair": doubling_pair,
    "logic-witness": logic_witness,
}


def pair_recursor():
    """Counter and the set of values it passed through, by simultaneous recursion."""
    c, a, i = Var("c", NAT), Var("a", Star(NAT)), Var("i", NAT)
    count = lam([c, a, i], app(suc, c))
    seen = lam([c, a, i], app(cup(NAT), a, app(single(NAT), app(suc, c))))
    return app(rect(2, [NAT, Star(NAT)]), numeral(3), numeral(0),
               app(single(NAT), numeral(0)), count, seen)


TERMS = {
    "projection": "mode logic; const c : G; const d : G;\n(PI[G, G] c d)\n",
    "bigcup-shift": "BIGCUP[N, N] (CUP[N] (SET[N] 0) (SET[N] 1)) (SIG[N, N, N*] (PI[N -> N*, N] SET[N]) SUC)\n",
    "doubling": show_term(doubler(numeral(3))) + "\n",
    "pair-recursor": show_term(pair_recursor()) + "\n",
    "open-successor": "context f : N -> N, y : N;\nPI[N, N] (f (SUC y)) 7\n",
}

FORMULAS = {
    "atomic": "0 = 0 : N\n",
    "exists": "ex z:N . z = 0 : N\n",
    "forall-exists": "all n:N . ex m:N . m = n : N\n",
    "implication": "(ex x:N . x = 1 : N) -> ex y:N . y = SUC x' : N & x' = x' : N\n".replace("x'", "0"),
    "bounded": "context s : N*;\nall x in s . ex y:N . y in s : N & x = y : N\n",
    "logic": "mode logic; const c : G; rel P / 1;\nall x:G . P(x) -> ex y:G . P(y)\n",
}

# name -> (file text, command, expected exit code)
INVALID = {
    "unbound.term": ("SUC n\n", ["normalize"], 2),
    "bad-bound.fml": ("context x:N;\nex x in SET[N] x . x = 0 : N\n", ["translate"], 2),
    "eigenvariable.prf": (
        "mode arithmetic;\ncontext m:N;\n"
        "1) m = 2 : N & m = 2 : N -> m = 2 : N\n"
        "   BY axiom conj-elim {A := m = 2 : N; B := m = 2 : N}\n"
        "2) (ex m:N . m = 2 : N & m = 2 : N) -> m = 2 : N\n"
        "   BY rule ex-elim from 1\n",
        ["extract"], 4),
    "schema-mismatch.prf": (
        "1) 1 = 2 : N\n   BY axiom eq-refl {t := 1}\n", ["check"], 4),
    "syntax.prf": ("1) 1 = = 1 : N BY axiom eq-refl {t := 1}\n", ["check"], 2),
    "slow.term": (TERMS["doubling"], ["normalize", "--budget", "3"], 3),
}


def main() -> int:
    ROOT.mkdir(exist_ok=True)
    bad = 0
    for name, make in PROOFS.items():
        p = make().script()
        failures = [c for c in check_proof(p) if not c.ok]
        if failures:
            bad += 1
            print(f"{name}: " + "; ".join(f"line {c.number}: {d}" for c in failures for d in c.diagnostics))
        (ROOT / f"{name}.prf").write_text(f"# {name}\n" + show_proof(p))
    (ROOT / "relations.json").write_text(json.dumps({"P": [["c"]]}) + "\n")
    for sub, table, ext in (("terms", TERMS, ".term"), ("formulas", FORMULAS, ".fml")):
        (ROOT / sub).mkdir(exist_ok=True)
        for name, text in table.items():
            (ROOT / sub / f"{name}{ext}").write_text(text)
    inv = ROOT / "invalid"
    inv.mkdir(exist_ok=True)
    expected = {}
    for name, (text, cmd, code) in INVALID.items():
        (inv / name).write_text(text)
        expected[name] = {"command": cmd, "exit": code}
    (inv / "expected.json").write_text(json.dumps(expected, indent=2) + "\n")
    print(f"{len(PROOFS)} proofs, {bad} failing")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())

