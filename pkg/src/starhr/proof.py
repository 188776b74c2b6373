"""Hilbert-style proof scripts: axiom schemas, rules and the line checker.

Every axiom instance names its schema and all instantiating data, so the
checker only rebuilds the instance and compares it (up to renaming of bound
variables) with the stated line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Union

from .abstraction import fresh_name
from .kernel import (
    NAT, Arrow, Context, KernelError, Signature, Star, Term, Var, app, bigcup,
    cup, pi, rec, sig, single, suc, zero,
)
from .logic import (
    BOT, And, BExists, BForall, Eq, Exists, Forall, Formula, Imp, Mem, Or,
    alpha_eq, free_vars, is_atomic, is_exists_free, names_in, subst_formula,
    well_formed,
)
from .rewrite import normalize
from .syntax import (
    Parser, show_context, show_formula, show_signature, show_term,
    show_type,
)

__all__ = [
    "AxiomJust", "RuleJust", "AssumeJust", "ProofLine", "ProofScript",
    "CheckedLine", "ProofCheckError", "SCHEMAS", "RULES", "Schema",
    "axiom_instance", "check_proof", "proof_errors", "parse_proof",
    "show_proof",
]

Param = Union[Var, Formula, Term]


@dataclass(frozen=True)
class AxiomJust:
    name: str
    params: tuple[tuple[str, Param], ...] = ()

    def get(self, key: str) -> Param:
        return dict(self.params)[key]


@dataclass(frozen=True)
class RuleJust:
    name: str
    premises: tuple[int, ...]


@dataclass(frozen=True)
class AssumeJust:
    name: str


Justification = Union[AxiomJust, RuleJust, AssumeJust]


@dataclass(frozen=True)
class ProofLine:
    number: int
    formula: Formula
    just: Justification


@dataclass
class ProofScript:
    signature: Signature = field(default_factory=Signature)
    context: Context = field(default_factory=Context)
    assumptions: dict[str, Formula] = field(default_factory=dict)
    lines: list[ProofLine] = field(default_factory=list)

    def line(self, number: int) -> ProofLine:
        for ln in self.lines:
            if ln.number == number:
                return ln
        raise KeyError(number)

    @property
    def final(self) -> ProofLine:
        return self.lines[-1]


@dataclass(frozen=True)
class CheckedLine:
    number: int
    ok: bool
    diagnostics: tuple[str, ...] = ()


class ProofCheckError(KernelError):
    def __init__(self, failures: list[CheckedLine]):
        self.failures = failures
        msg = "; ".join(f"line {c.number}: {d}" for c in failures for d in c.diagnostics)
        super().__init__(msg)


# ---------------------------------------------------------------------------
# Axiom schemas


@dataclass(frozen=True)
class Schema:
    name: str
    params: tuple[tuple[str, str], ...]  # (key, kind) with kind var/formula/term
    build: Callable[[dict, Signature], Formula]
    arithmetic: bool = False
    exists_free: bool = False  # every instance is ∃-free


class SchemaError(KernelError):
    pass


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise SchemaError(msg)


def _same_type(x: Var, t: Term) -> None:
    _need(x.type == t.type, f"{show_term(t)} has type {show_type(t.type)}, "
                            f"expected {show_type(x.type)} for {x.name}")


def _star_of(x: Var, t: Term) -> None:
    _need(t.type == Star(x.type), f"bound {show_term(t)} must have type {show_type(Star(x.type))}")
    _need(x not in t.fvs, f"bound mentions bound variable {x.name}")


def _b_all_elim(p, s):
    _same_type(p["x"], p["t"])
    return Imp(Forall(p["x"], p["A"]), subst_formula(p["A"], p["x"], p["t"]))


def _b_ex_intro(p, s):
    _same_type(p["x"], p["t"])
    return Imp(subst_formula(p["A"], p["x"], p["t"]), Exists(p["x"], p["A"]))


def _b_eq_subst(p, s):
    x, a, t, q = p["x"], p["A"], p["t"], p["q"]
    _need(is_atomic(a), "eq-subst needs an atomic formula A")
    _same_type(x, t)
    _same_type(x, q)
    return Imp(And(Eq(t.type, t, q), subst_formula(a, x, t)), subst_formula(a, x, q))


def _mem(x: Term, t: Term) -> Mem:
    return Mem(x.type, x, t)


def _b_ball_unfold(p, s):
    x, t, a = p["x"], p["t"], p["A"]
    _star_of(x, t)
    return Imp(BForall(x, t, a), Forall(x, Imp(_mem(x, t), a)))


def _b_ball_fold(p, s):
    x, t, a = p["x"], p["t"], p["A"]
    _star_of(x, t)
    return Imp(Forall(x, Imp(_mem(x, t), a)), BForall(x, t, a))


def _b_bex_unfold(p, s):
    x, t, a = p["x"], p["t"], p["A"]
    _star_of(x, t)
    return Imp(BExists(x, t, a), Exists(x, And(_mem(x, t), a)))


def _b_bex_fold(p, s):
    x, t, a = p["x"], p["t"], p["A"]
    _star_of(x, t)
    return Imp(Exists(x, And(_mem(x, t), a)), BExists(x, t, a))


def _eq(lhs: Term, rhs: Term) -> Eq:
    return Eq(lhs.type, lhs, rhs)


def _b_sig_eq(p, s):
    t, q, r = p["t"], p["q"], p["r"]
    _need(isinstance(t.type, Arrow) and isinstance(t.type.cod, Arrow),
          "SIG's first argument must have type r -> s -> t")
    rho, sg, tau = t.type.dom, t.type.cod.dom, t.type.cod.cod
    return _eq(app(sig(rho, sg, tau), t, q, r), app(t, r, app(q, r)))


def _b_pi_eq(p, s):
    t, q = p["t"], p["q"]
    return _eq(app(pi(t.type, q.type), t, q), t)


def _b_set_mem_l(p, s):
    w, t = p["w"], p["t"]
    return Imp(_mem(w, app(single(t.type), t)), _eq(w, t))


def _b_set_mem_r(p, s):
    w, t = p["w"], p["t"]
    return Imp(_eq(w, t), _mem(w, app(single(t.type), t)))


def _cup_of(t: Term, q: Term) -> Term:
    _need(isinstance(t.type, Star), f"{show_term(t)} must have star type")
    return app(cup(t.type.elem), t, q)


def _b_cup_mem_l(p, s):
    w, t, q = p["w"], p["t"], p["q"]
    return Imp(_mem(w, _cup_of(t, q)), Or(_mem(w, t), _mem(w, q)))


def _b_cup_mem_r(p, s):
    w, t, q = p["w"], p["t"], p["q"]
    return Imp(Or(_mem(w, t), _mem(w, q)), _mem(w, _cup_of(t, q)))


def _bigcup_of(t: Term, q: Term) -> Term:
    _need(isinstance(t.type, Star) and isinstance(q.type, Arrow)
          and isinstance(q.type.cod, Star), "BIGCUP needs t : r* and q : r -> s*")
    return app(bigcup(t.type.elem, q.type.cod.elem), t, q)


def _b_bigcup_mem(p, s):
    z, w, t, q = p["z"], p["w"], p["t"], p["q"]
    return Imp(And(_mem(z, t), _mem(w, app(q, z))), _mem(w, _bigcup_of(t, q)))


def _b_bigcup_set(p, s):
    t, q = p["t"], p["q"]
    return _eq(_bigcup_of(app(single(t.type), t), q), app(q, t))


def _b_bigcup_cup(p, s):
    t, q, r = p["t"], p["q"], p["r"]
    return _eq(_bigcup_of(_cup_of(t, q), r), _cup_of(_bigcup_of(t, r), _bigcup_of(q, r)))


def _b_conv(p, s):
    t, q = p["t"], p["q"]
    _need(t.type == q.type, "conv needs terms of the same type")
    _need(normalize(t) == normalize(q), f"{show_term(t)} and {show_term(q)} have different normal forms")
    return _eq(t, q)


def _b_ac(p, s):
    x, y, a = p["x"], p["y"], p["A"]
    f = Var(fresh_name("f", names_in(a) | {x.name, y.name}), Arrow(x.type, Star(y.type)))
    return Imp(Forall(x, Exists(y, a)), Exists(f, Forall(x, BExists(y, app(f, x), a))))


def _b_ip(p, s):
    b, y, a = p["B"], p["y"], p["A"]
    _need(is_exists_free(b), "IP premise B must be ∃-free")
    w = Var(fresh_name("w", names_in(a) | names_in(b) | {y.name}), Star(y.type))
    return Imp(Imp(b, Exists(y, a)), Exists(w, Imp(b, BExists(y, w, a))))


def _nat(t: Term) -> None:
    _need(t.type == NAT, f"{show_term(t)} must have type N")


def _b_suc_inj(p, s):
    t, q = p["t"], p["q"]
    _nat(t)
    _nat(q)
    return Imp(_eq(app(suc, t), app(suc, q)), _eq(t, q))


def _b_suc_nz(p, s):
    _nat(p["t"])
    return Imp(_eq(app(suc, p["t"]), zero), BOT)


def _b_rec_0(p, s):
    q, r = p["q"], p["r"]
    return _eq(app(rec(q.type), zero, q, r), q)


def _b_rec_s(p, s):
    t, q, r = p["t"], p["q"], p["r"]
    _nat(t)
    R = rec(q.type)
    return _eq(app(R, app(suc, t), q, r), app(r, app(R, t, q, r), t))


def _b_ind(p, s):
    x, a = p["x"], p["A"]
    _need(x.type == NAT, "induction variable must have type N")
    step = Forall(x, Imp(a, subst_formula(a, x, app(suc, x))))
    return Imp(And(subst_formula(a, x, zero), step), Forall(x, a))


def _schemas() -> dict[str, Schema]:
    A, B = ("A", "formula"), ("B", "formula")
    x, y = ("x", "var"), ("y", "var")
    t, q, r, w, z = (("t", "term"), ("q", "term"), ("r", "term"),
                     ("w", "term"), ("z", "term"))
    table = [
        Schema("disj-idem", (A,), lambda p, s: Imp(Or(p["A"], p["A"]), p["A"])),
        Schema("conj-dup", (A,), lambda p, s: Imp(p["A"], And(p["A"], p["A"]))),
        Schema("disj-intro", (A, B), lambda p, s: Imp(p["A"], Or(p["A"], p["B"]))),
        Schema("conj-elim", (A, B), lambda p, s: Imp(And(p["A"], p["B"]), p["A"])),
        Schema("conj-comm", (A, B), lambda p, s: Imp(And(p["A"], p["B"]), And(p["B"], p["A"]))),
        Schema("disj-comm", (A, B), lambda p, s: Imp(Or(p["A"], p["B"]), Or(p["B"], p["A"]))),
        Schema("efq", (A,), lambda p, s: Imp(BOT, p["A"])),
        Schema("all-elim", (x, A, t), _b_all_elim),
        Schema("ex-intro", (x, A, t), _b_ex_intro),
        Schema("eq-refl", (t,), lambda p, s: _eq(p["t"], p["t"]), exists_free=True),
        Schema("eq-subst", (x, A, t, q), _b_eq_subst, exists_free=True),
        Schema("ball-unfold", (x, t, A), _b_ball_unfold),
        Schema("ball-fold", (x, t, A), _b_ball_fold),
        Schema("bex-unfold", (x, t, A), _b_bex_unfold),
        Schema("bex-fold", (x, t, A), _b_bex_fold),
        Schema("sig-eq", (t, q, r), _b_sig_eq, exists_free=True),
        Schema("pi-eq", (t, q), _b_pi_eq, exists_free=True),
        Schema("set-mem-l", (w, t), _b_set_mem_l, exists_free=True),
        Schema("set-mem-r", (w, t), _b_set_mem_r, exists_free=True),
        Schema("cup-mem-l", (w, t, q), _b_cup_mem_l, exists_free=True),
        Schema("cup-mem-r", (w, t, q), _b_cup_mem_r, exists_free=True),
        Schema("bigcup-mem", (z, w, t, q), _b_bigcup_mem, exists_free=True),
        Schema("bigcup-set", (t, q), _b_bigcup_set, exists_free=True),
        Schema("bigcup-cup", (t, q, r), _b_bigcup_cup, exists_free=True),
        Schema("conv", (t, q), _b_conv, exists_free=True),
        Schema("ac", (x, y, A), _b_ac),
        Schema("ip", (B, y, A), _b_ip),
        Schema("suc-inj", (t, q), _b_suc_inj, arithmetic=True, exists_free=True),
        Schema("suc-nz", (t,), _b_suc_nz, arithmetic=True, exists_free=True),
        Schema("rec-0", (q, r), _b_rec_0, arithmetic=True, exists_free=True),
        Schema("rec-s", (t, q, r), _b_rec_s, arithmetic=True, exists_free=True),
        Schema("ind", (x, A), _b_ind, arithmetic=True),
    ]
    # variable parameters come first so later parameters may mention them
    out = {}
    for sc in table:
        ordered = tuple(sorted(sc.params, key=lambda kv: kv[1] != "var"))
        out[sc.name] = Schema(sc.name, ordered, sc.build, sc.arithmetic, sc.exists_free)
    return out


SCHEMAS: dict[str, Schema] = _schemas()
RULES = ("mp", "syl", "disj-mono", "exp", "imp", "all-intro", "ex-elim")
_RULE_ARITY = {"mp": 2, "syl": 2}


def axiom_instance(name: str, params: dict, signature: Signature | None = None) -> Formula:
    """Build the instance of schema ``name``; raises SchemaError on bad data."""
    signature = signature or Signature()
    sc = SCHEMAS.get(name)
    if sc is None:
        raise SchemaError(f"unknown axiom {name!r}")
    if sc.arithmetic and signature.mode != "arithmetic":
        raise SchemaError(f"axiom {name} needs arithmetic mode")
    keys = [k for k, _ in sc.params]
    if sorted(keys) != sorted(params):
        raise SchemaError(f"axiom {name} takes parameters {', '.join(keys)}")
    for k, kind in sc.params:
        v = params[k]
        ok = {"var": isinstance(v, Var), "formula": isinstance(v, Formula),
              "term": isinstance(v, Term)}[kind]
        _need(ok, f"parameter {k} of {name} must be a {kind}")
    try:
        return sc.build(dict(params), signature)
    except SchemaError:
        raise
    except KernelError as e:
        raise SchemaError(str(e)) from None


# ---------------------------------------------------------------------------
# Checking


def _check_rule(name: str, prem: list[Formula], f: Formula) -> list[str]:
    def shape(cond: bool, msg: str) -> list[str]:
        return [] if cond else [msg]

    want = _RULE_ARITY.get(name, 1)
    if len(prem) != want:
        return [f"rule {name} takes {want} premise(s), got {len(prem)}"]
    if name == "mp":
        a, ab = prem
        if not isinstance(ab, Imp):
            return ["second premise of mp must be an implication"]
        return (shape(alpha_eq(ab.left, a), "mp: first premise does not match the antecedent")
                + shape(alpha_eq(ab.right, f), "mp: conclusion does not match the consequent"))
    if name == "syl":
        ab, bc = prem
        if not (isinstance(ab, Imp) and isinstance(bc, Imp) and isinstance(f, Imp)):
            return ["syl needs implications A -> B, B -> C and conclusion A -> C"]
        return (shape(alpha_eq(ab.right, bc.left), "syl: middle formulas differ")
                + shape(alpha_eq(ab.left, f.left) and alpha_eq(bc.right, f.right),
                        "syl: conclusion is not A -> C"))
    (p,) = prem
    if not isinstance(p, Imp):
        return [f"premise of {name} must be an implication"]
    if not isinstance(f, Imp):
        return [f"conclusion of {name} must be an implication"]
    if name == "disj-mono":
        ok = (isinstance(f.left, Or) and isinstance(f.right, Or)
              and alpha_eq(f.left.left, f.right.left)
              and alpha_eq(f.left.right, p.left) and alpha_eq(f.right.right, p.right))
        return shape(ok, "disj-mono: conclusion is not C | A -> C | B")
    if name == "exp":
        ok = (isinstance(p.left, And) and isinstance(f.right, Imp)
              and alpha_eq(p.left.left, f.left) and alpha_eq(p.left.right, f.right.left)
              and alpha_eq(p.right, f.right.right))
        return shape(ok, "exp: expected A & B -> C above A -> (B -> C)")
    if name == "imp":
        ok = (isinstance(p.right, Imp) and isinstance(f.left, And)
              and alpha_eq(f.left.left, p.left) and alpha_eq(f.left.right, p.right.left)
              and alpha_eq(f.right, p.right.right))
        return shape(ok, "imp: expected A -> (B -> C) above A & B -> C")
    if name == "all-intro":
        if not isinstance(f.right, Forall):
            return ["all-intro: conclusion must be B -> all x . A"]
        x = f.right.var
        diags = shape(alpha_eq(p.left, f.left) and alpha_eq(p.right, f.right.body),
                      "all-intro: conclusion does not match premise B -> A")
        if x in free_vars(f.left):
            diags.append(f"eigenvariable violation: {x.name} occurs free in B")
        return diags
    if name == "ex-elim":
        if not isinstance(f.left, Exists):
            return ["ex-elim: conclusion must be (ex x . A) -> B"]
        x = f.left.var
        diags = shape(alpha_eq(p.left, f.left.body) and alpha_eq(p.right, f.right),
                      "ex-elim: conclusion does not match premise A -> B")
        if x in free_vars(f.right):
            diags.append(f"eigenvariable violation: {x.name} occurs free in B")
        return diags
    return [f"unknown rule {name!r}"]


def check_proof(p: ProofScript) -> list[CheckedLine]:
    """One judgment per line; a line is ok when its own justification holds
    and every premise it cites was itself ok."""
    out: list[CheckedLine] = []
    header: list[str] = []
    for name, a in p.assumptions.items():
        diags = well_formed(a, Context(), p.signature)
        if diags:
            header.append(f"assumption {name}: " + "; ".join(diags))
        if not is_exists_free(a):
            header.append(f"assumption {name} is not ∃-free")
    seen: dict[int, bool] = {}
    formulas: dict[int, Formula] = {}
    for ln in p.lines:
        diags = list(header)
        if ln.number in seen:
            diags.append(f"duplicate line number {ln.number}")
        diags += well_formed(ln.formula, p.context, p.signature)
        j = ln.just
        if isinstance(j, AssumeJust):
            a = p.assumptions.get(j.name)
            if a is None:
                diags.append(f"unknown assumption {j.name!r}")
            elif not alpha_eq(a, ln.formula):
                diags.append(f"line does not match assumption {j.name}")
        elif isinstance(j, AxiomJust):
            try:
                inst = axiom_instance(j.name, dict(j.params), p.signature)
                if not alpha_eq(inst, ln.formula):
                    diags.append(f"schema mismatch: {j.name} instance is {show_formula(inst)}")
            except KernelError as e:
                diags.append(f"axiom {j.name}: {e}")
        else:
            prem = []
            for n in j.premises:
                if n not in seen:
                    diags.append(f"premise {n} is not an earlier line")
                elif not seen[n]:
                    diags.append(f"premise {n} failed to check")
                else:
                    prem.append(formulas[n])
            if len(prem) == len(j.premises):
                diags += _check_rule(j.name, prem, ln.formula)
        ok = not diags
        seen[ln.number] = ok
        formulas[ln.number] = ln.formula
        out.append(CheckedLine(ln.number, ok, tuple(diags)))
    return out


def proof_errors(p: ProofScript) -> list[CheckedLine]:
    return [c for c in check_proof(p) if not c.ok]


# ---------------------------------------------------------------------------
# Text format


def parse_proof(text: str, signature: Signature | None = None) -> ProofScript:
    """Parse a proof script.

    Layout: optional signature statements, an optional ``context`` line,
    ``assume name : formula;`` lines, then numbered lines
    ``n) formula BY axiom NAME {k := v; x : type}`` or
    ``BY rule NAME from i, j`` or ``BY assumption NAME``.
    """
    ps = Parser(text, signature)
    sig = ps.signature_decls() or ps.signature
    ctx = ps.context_decl() if ps.at("context") else Context()
    assumptions: dict[str, Formula] = {}
    while ps.accept("assume"):
        tok = ps.ident("an assumption name")
        if tok.text in assumptions:
            raise ps.error(f"duplicate assumption {tok.text}", tok)
        ps.expect(":")
        saved = ps.scope
        ps.scope = {}
        assumptions[tok.text] = ps.formula()
        ps.scope = saved
        ps.expect(";")
    lines = []
    while ps.tok.kind != "EOF":
        num = ps.number()
        ps.expect(")")
        f = ps.formula()
        ps.expect("BY")
        lines.append(ProofLine(num, f, _parse_just(ps, sig)))
        ps.accept(";")
    if not lines:
        raise ps.error("a proof needs at least one line")
    return ProofScript(sig, ctx, assumptions, lines)


def _parse_just(ps: Parser, sig: Signature) -> Justification:
    tok = ps.tok
    if ps.accept("assumption"):
        return AssumeJust(ps.ident("an assumption name").text)
    if ps.accept("rule"):
        name = ps.ident("a rule name")
        if name.text not in RULES:
            raise ps.error(f"unknown rule {name.text!r}", name)
        ps.expect("from")
        nums = [ps.number()]
        while ps.accept(","):
            nums.append(ps.number())
        return RuleJust(name.text, tuple(nums))
    if not ps.accept("axiom"):
        raise ps.error(f"expected axiom, rule or assumption, found {tok.text!r}")
    name = ps.ident("an axiom name")
    sc = SCHEMAS.get(name.text)
    if sc is None:
        raise ps.error(f"unknown axiom {name.text!r}", name)
    kinds = dict(sc.params)
    values: dict[str, Param] = {}
    saved = dict(ps.scope)
    if ps.accept("{"):
        while not ps.at("}"):
            key = ps.ident("a parameter name")
            kind = kinds.get(key.text)
            if kind is None:
                raise ps.error(f"axiom {name.text} has no parameter {key.text}", key)
            if key.text in values:
                raise ps.error(f"parameter {key.text} given twice", key)
            ps.expect(":=")
            if kind == "var":
                vtok = ps.ident("a variable name")
                ps.expect(":")
                v = Var(vtok.text, ps.type())
                values[key.text] = v
                ps.scope[v.name] = v
            else:
                values[key.text] = ps.formula() if kind == "formula" else ps.term()
            if not ps.accept(";"):
                break
        ps.expect("}")
    ps.scope = saved
    missing = [k for k in kinds if k not in values]
    if missing:
        raise ps.error(f"axiom {name.text} is missing parameter(s) {', '.join(missing)}", name)
    return AxiomJust(name.text, tuple((k, values[k]) for k, _ in sc.params))


def _show_param(kind: str, key: str, v: Param) -> str:
    if kind == "var":
        return f"{key} := {v.name} : {show_type(v.type)}"
    if kind == "formula":
        return f"{key} := {show_formula(v)}"
    return f"{key} := {show_term(v)}"


def show_just(j: Justification) -> str:
    if isinstance(j, AssumeJust):
        return f"assumption {j.name}"
    if isinstance(j, RuleJust):
        return f"rule {j.name} from " + ", ".join(map(str, j.premises))
    kinds = dict(SCHEMAS[j.name].params)
    body = "; ".join(_show_param(kinds[k], k, v) for k, v in j.params)
    return f"axiom {j.name} {{{body}}}"


def show_proof(p: ProofScript) -> str:
    out = [show_signature(p.signature)]
    if len(p.context):
        out.append(show_context(p.context))
    for name, a in p.assumptions.items():
        out.append(f"assume {name} : {show_formula(a)};")
    for ln in p.lines:
        out.append(f"{ln.number}) {show_formula(ln.formula)}")
        out.append(f"   BY {show_just(ln.just)}")
    return "\n".join(out) + "\n"

