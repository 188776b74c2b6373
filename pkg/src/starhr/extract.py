"""Realizer extraction by replaying the soundness case table over a proof.

For each line we build *open* realizers: terms whose free variables lie in
the proof context, one per existential variable of the line's translation.
The closed realizers reported to users are these terms abstracted over the
whole context, in declaration order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .abstraction import big_sqcup, fresh_vars, lam, sqcup
from .kernel import (
    NAT, Arrow, Context, KernelError, Signature, Star, Term, Type, Var, app,
    arrows, is_end_star, rec, rect, single, typecheck,
)
from .hr import Freshener, HRResult, evar_types, hr_translate
from .logic import Exists, Forall, Formula, Imp
from .proof import (
    AssumeJust, AxiomJust, ProofCheckError, ProofScript, check_proof,
)
from .rewrite import WitnessSet, enumerate_set, normalize

__all__ = ["RealizerBundle", "ExtractionError", "extract_axiom",
           "combine_rule", "extract", "extract_all", "close_realizers"]


class ExtractionError(KernelError):
    """An extracted term failed its type or closedness invariant."""


@dataclass(frozen=True)
class RealizerBundle:
    number: int | None
    formula: Formula
    context: Context
    hr: HRResult
    terms: tuple[Term, ...]  # closed, one per evar
    open_terms: tuple[Term, ...]
    provenance: str

    def applied(self, values: Sequence[Term]) -> list[Term]:
        """Realizers applied to closed context values ``a``."""
        return [app(t, *values) for t in self.terms]

    def witnesses(self, values: Sequence[Term] = (), budget: int | None = None
                  ) -> dict[str, WitnessSet]:
        """Enumerations of the evars whose type is a plain star type."""
        out = {}
        for v, t in zip(self.hr.evars, self.applied(values)):
            if isinstance(v.type, Star):
                out[v.name] = enumerate_set(t, budget)
        return out


# ---------------------------------------------------------------------------
# Axiom cases


class _Names:
    """Fresh bound variables avoiding the context and each other."""

    def __init__(self, avoid: set[str]):
        self.avoid = set(avoid)

    def vars(self, types: Sequence[Type], prefix: str) -> list[Var]:
        out = fresh_vars(types, self.avoid, prefix)
        self.avoid.update(v.name for v in out)
        return out


def _term_names(*terms: Term) -> set[str]:
    return {v.name for t in terms for v in t.fvs}


def extract_axiom(name: str, params: dict, ctx: Context, signature: Signature,
                  instance: Formula) -> list[Term]:
    """Open realizers (free variables within ``ctx``) for one axiom instance."""
    out_types = evar_types(instance)
    if not out_types:
        return []
    names = _Names(ctx.names | _term_names(*[v for v in params.values() if isinstance(v, Term)]))
    inhabit = signature.inhabit
    A, B = params.get("A"), params.get("B")

    if name == "conj-dup":
        xs = names.vars(evar_types(A), "x")
        return [lam(xs, x) for x in xs] * 2
    if name == "disj-idem":
        ea = evar_types(A)
        xs, ys = names.vars(ea, "x"), names.vars(ea, "y")
        return [lam(xs + ys, sqcup(x, y, x.type)) for x, y in zip(xs, ys)]
    if name == "conj-elim":
        xs, us = names.vars(evar_types(A), "x"), names.vars(evar_types(B), "u")
        return [lam(xs + us, x) for x in xs]
    if name == "disj-intro":
        xs = names.vars(evar_types(A), "x")
        return [lam(xs, x) for x in xs] + [lam(xs, inhabit(ty)) for ty in evar_types(B)]
    if name in ("conj-comm", "disj-comm"):
        xs, us = names.vars(evar_types(A), "x"), names.vars(evar_types(B), "u")
        return [lam(xs + us, u) for u in us] + [lam(xs + us, x) for x in xs]
    if name == "efq":
        return [inhabit(ty) for ty in evar_types(A)]
    if name == "all-elim":
        x, t = params["x"], params["t"]
        Xs = names.vars([Arrow(x.type, ty) for ty in evar_types(A)], "X")
        return [lam(Xs, app(X, t)) for X in Xs]
    if name == "ex-intro":
        t = params["t"]
        xs = names.vars(evar_types(A), "x")
        return [lam(xs, app(single(t.type), t))] + [lam(xs, x) for x in xs]
    if name == "ball-unfold":
        x = params["x"]
        xs = names.vars(evar_types(A), "x")
        (z,) = names.vars([x.type], "z")
        return [lam(xs + [z], v) for v in xs]
    if name == "ball-fold":
        x, t = params["x"], params["t"]
        ea = evar_types(A)
        Xs = names.vars([Arrow(x.type, ty) for ty in ea], "X")
        return [lam(Xs, big_sqcup(t, X, ty)) for X, ty in zip(Xs, ea)]
    if name == "bex-unfold":
        t = params["t"]
        xs = names.vars(evar_types(A), "x")
        return [lam(xs, t)] + [lam(xs, x) for x in xs]
    if name == "bex-fold":
        x = params["x"]
        (z,) = names.vars([Star(x.type)], "Z")
        xs = names.vars(evar_types(A), "x")
        return [lam([z] + xs, v) for v in xs]
    if name == "ac":
        x, y = params["x"], params["y"]
        (W,) = names.vars([Arrow(x.type, Star(y.type))], "W")
        Xs = names.vars([Arrow(x.type, ty) for ty in evar_types(A)], "X")
        return [lam([W] + Xs, app(single(W.type), W))] + [lam([W] + Xs, X) for X in Xs]
    if name == "ip":
        y = params["y"]
        (w,) = names.vars([Star(y.type)], "w")
        us = names.vars(evar_types(A), "u")
        return [lam([w] + us, app(single(w.type), w))] + [lam([w] + us, u) for u in us]
    if name == "ind":
        return _induction(params["x"], A, names)
    raise ExtractionError(f"no realizer case for axiom {name} with existential content")


def _induction(x: Var, a: Formula, names: _Names) -> list[Term]:
    """``r := lam xs, Xs, n. R n xs X~`` with ``X~ := lam ys, m. Xs m ys``.

    For a tuple of k > 1 components the simultaneous recursor ``RECT`` plays
    the role of ``R`` on tuples.
    """
    sigmas = evar_types(a)
    k = len(sigmas)
    xs = names.vars(sigmas, "x")
    Xs = names.vars([arrows([NAT] + sigmas, s) for s in sigmas], "X")
    (n,) = names.vars([NAT], "n")
    ys = names.vars(sigmas, "y")
    (m,) = names.vars([NAT], "m")
    tilde = [lam(ys + [m], app(X, m, *ys)) for X in Xs]
    if k == 1:
        body = [app(rec(sigmas[0]), n, *xs, *tilde)]
    else:
        body = [app(rect(j, sigmas), n, *xs, *tilde) for j in range(1, k + 1)]
    return [lam(xs + Xs + [n], b) for b in body]


# ---------------------------------------------------------------------------
# Rule cases


def combine_rule(name: str, premises: Sequence[tuple[Formula, list[Term]]],
                 conclusion: Formula, ctx: Context) -> list[Term]:
    """Open realizers for a rule application from the premises' open realizers."""
    avoid = set(ctx.names)
    if isinstance(conclusion, Imp):
        for side in (conclusion.left, conclusion.right):
            if isinstance(side, (Forall, Exists)):
                avoid.add(side.var.name)
    for _, ts in premises:
        avoid |= _term_names(*ts)
    names = _Names(avoid)
    if name == "mp":
        (_, ta), (_, tu) = premises
        return [app(u, *ta) for u in tu]
    if name == "syl":
        (ab, tu), (_, tp) = premises
        xs = names.vars(evar_types(ab.left), "x")
        mids = [app(u, *xs) for u in tu]
        return [lam(xs, app(p, *mids)) for p in tp]
    if name == "disj-mono":
        (ab, tu), = premises
        ps = names.vars(evar_types(conclusion.left.left), "p")
        xs = names.vars(evar_types(ab.left), "x")
        return [lam(ps + xs, p) for p in ps] + [lam(ps + xs, app(u, *xs)) for u in tu]
    if name in ("exp", "imp"):
        (_, tu), = premises
        return list(tu)
    if name == "all-intro":
        (ba, tu), = premises
        z = conclusion.right.var
        us = names.vars(evar_types(ba.left), "u")
        return [lam(us + [z], app(t, *us)) for t in tu]
    if name == "ex-elim":
        (ab, tu), = premises
        z = conclusion.left.var
        (Z,) = names.vars([Star(z.type)], "Z")
        xs = names.vars(evar_types(ab.left), "x")
        out_types = evar_types(ab.right)
        return [lam([Z] + xs, big_sqcup(Z, lam([z], app(t, *xs)), ty))
                for t, ty in zip(tu, out_types)]
    raise ExtractionError(f"unknown rule {name}")


# ---------------------------------------------------------------------------
# Driver


def close_realizers(open_terms: Sequence[Term], ctx: Context, budget: int | None = None) -> list[Term]:
    return [normalize(lam(list(ctx), t), budget) for t in open_terms]


def _provenance(just) -> str:
    if isinstance(just, AxiomJust):
        return f"axiom {just.name}"
    if isinstance(just, AssumeJust):
        return "assumption"
    return f"rule {just.name}"


def extract_all(p: ProofScript, budget: int | None = None, verify_types: bool = True
                ) -> dict[int, RealizerBundle]:
    failures = [c for c in check_proof(p) if not c.ok]
    if failures:
        raise ProofCheckError(failures)
    ctx = p.context
    open_by_line: dict[int, list[Term]] = {}
    formula_by_line: dict[int, Formula] = {}
    out: dict[int, RealizerBundle] = {}
    for ln in p.lines:
        j = ln.just
        if isinstance(j, AssumeJust):
            terms: list[Term] = []
        elif isinstance(j, AxiomJust):
            terms = extract_axiom(j.name, dict(j.params), ctx, p.signature, ln.formula)
        else:
            prem = [(formula_by_line[n], open_by_line[n]) for n in j.premises]
            terms = combine_rule(j.name, prem, ln.formula, ctx)
        terms = [normalize(t, budget) for t in terms]
        h = hr_translate(ln.formula, Freshener.for_formula(ln.formula, ctx))
        closed = close_realizers(terms, ctx, budget)
        if verify_types:
            _check_bundle(ln.number, h, terms, closed, ctx, p.signature)
        open_by_line[ln.number] = terms
        formula_by_line[ln.number] = ln.formula
        out[ln.number] = RealizerBundle(ln.number, ln.formula, ctx, h, tuple(closed),
                                        tuple(terms), _provenance(j))
    return out


def extract(p: ProofScript, budget: int | None = None) -> RealizerBundle:
    return extract_all(p, budget)[p.final.number]


def _check_bundle(number: int, h: HRResult, open_terms: list[Term], closed: list[Term],
                  ctx: Context, signature: Signature) -> None:
    if len(open_terms) != len(h.evars):
        raise ExtractionError(f"line {number}: {len(open_terms)} realizers for {len(h.evars)} evars")
    doms = [v.type for v in ctx]
    for v, o, c in zip(h.evars, open_terms, closed):
        if not is_end_star(v.type):
            raise ExtractionError(f"line {number}: evar {v.name} is not end-star")
        if o.type != v.type:
            raise ExtractionError(f"line {number}: realizer for {v.name} has type {o.type}, expected {v.type}")
        if not c.is_closed:
            raise ExtractionError(f"line {number}: realizer for {v.name} is not closed")
        if typecheck(c, Context(), signature) != arrows(doms, v.type):
            raise ExtractionError(f"line {number}: closed realizer for {v.name} has the wrong type")

