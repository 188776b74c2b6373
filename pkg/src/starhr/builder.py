"""Programmatic construction of proof scripts, with a few derived rules.

The builder computes each line's formula from its justification, so callers
only name schemas, parameters and premises. Derived rules expand into
ordinary axiom and rule lines.
"""

from __future__ import annotations

from .abstraction import fresh_name
from .kernel import Context, KernelError, Signature, Term, Var, subst_term
from .logic import (
    And, Eq, Exists, Forall, Formula, Imp, Or, alpha_eq, names_in,
)
from .proof import (
    AssumeJust, AxiomJust, ProofLine, ProofScript, RuleJust, SCHEMAS,
    axiom_instance,
)

__all__ = ["ProofBuilder"]


class ProofBuilder:
    def __init__(self, signature: Signature | None = None, context: Context | None = None,
                 assumptions: dict[str, Formula] | None = None):
        self.signature = signature or Signature()
        self.context = context or Context()
        self.assumptions = dict(assumptions or {})
        self.lines: list[ProofLine] = []

    # -- primitive steps -----------------------------------------------------

    def formula(self, n: int) -> Formula:
        return self.lines[n - 1].formula

    def _add(self, f: Formula, just) -> int:
        n = len(self.lines) + 1
        self.lines.append(ProofLine(n, f, just))
        return n

    def axiom(self, name: str, **params) -> int:
        sc = SCHEMAS[name]
        ordered = tuple((k, params[k]) for k, _ in sc.params)
        f = axiom_instance(name, params, self.signature)
        return self._add(f, AxiomJust(name, ordered))

    def assume(self, name: str) -> int:
        return self._add(self.assumptions[name], AssumeJust(name))

    def mp(self, a: int, ab: int) -> int:
        imp = self.formula(ab)
        if not (isinstance(imp, Imp) and alpha_eq(imp.left, self.formula(a))):
            raise KernelError(f"mp: line {a} is not the antecedent of line {ab}")
        return self._add(imp.right, RuleJust("mp", (a, ab)))

    def syl(self, ab: int, bc: int) -> int:
        f, g = self.formula(ab), self.formula(bc)
        return self._add(Imp(f.left, g.right), RuleJust("syl", (ab, bc)))

    def disj_mono(self, ab: int, c: Formula) -> int:
        f = self.formula(ab)
        return self._add(Imp(Or(c, f.left), Or(c, f.right)), RuleJust("disj-mono", (ab,)))

    def exp(self, i: int) -> int:
        f = self.formula(i)
        return self._add(Imp(f.left.left, Imp(f.left.right, f.right)), RuleJust("exp", (i,)))

    def imp(self, i: int) -> int:
        f = self.formula(i)
        return self._add(Imp(And(f.left, f.right.left), f.right.right), RuleJust("imp", (i,)))

    def all_intro(self, i: int, x: Var) -> int:
        f = self.formula(i)
        return self._add(Imp(f.left, Forall(x, f.right)), RuleJust("all-intro", (i,)))

    def ex_elim(self, i: int, x: Var) -> int:
        f = self.formula(i)
        return self._add(Imp(Exists(x, f.left), f.right), RuleJust("ex-elim", (i,)))

    def script(self) -> ProofScript:
        return ProofScript(self.signature, self.context, dict(self.assumptions), list(self.lines))

    # -- derived rules -------------------------------------------------------

    def refl(self, t: Term) -> int:
        return self.axiom("eq-refl", t=t)

    def truth(self) -> int:
        """A closed ∃-free theorem to use as a dummy hypothesis."""
        return self.refl(self.signature.first_constant())

    def identity(self, a: Formula) -> int:
        """``A -> A``"""
        dup = self.axiom("conj-dup", A=a)
        elim = self.axiom("conj-elim", A=a, B=a)
        return self.syl(dup, elim)

    def weaken(self, i: int, b: Formula) -> int:
        """From ``X`` derive ``B -> X``."""
        x = self.formula(i)
        elim = self.axiom("conj-elim", A=x, B=b)
        return self.mp(i, self.exp(elim))

    def conj_intro(self, i: int, j: int) -> int:
        """From ``P`` and ``Q`` derive ``P & Q``."""
        both = And(self.formula(i), self.formula(j))
        curried = self.exp(self.identity(both))
        return self.mp(j, self.mp(i, curried))

    def discharge(self, i: int, j: int) -> int:
        """From ``P & Q -> R`` and ``Q`` derive ``P -> R``."""
        f = self.formula(i)
        p, q = f.left.left, f.left.right
        comm = self.axiom("conj-comm", A=q, B=p)
        return self.mp(j, self.exp(self.syl(comm, i)))

    def conj_mono_left(self, i: int, c: Formula) -> int:
        """From ``A -> B`` derive ``A & C -> B & C``."""
        f = self.formula(i)
        pair = self.exp(self.identity(And(f.right, c)))
        return self.imp(self.syl(i, pair))

    def conj_mono_right(self, i: int, c: Formula) -> int:
        """From ``A -> B`` derive ``C & A -> C & B``."""
        f = self.formula(i)
        a, b = f.left, f.right
        to = self.axiom("conj-comm", A=c, B=a)
        mid = self.conj_mono_left(i, c)
        back = self.axiom("conj-comm", A=b, B=c)
        return self.syl(self.syl(to, mid), back)

    def conj_mono(self, i: int, j: int) -> int:
        """From ``A -> B`` and ``C -> D`` derive ``A & C -> B & D``."""
        left = self.conj_mono_left(i, self.formula(j).left)
        right = self.conj_mono_right(j, self.formula(i).right)
        return self.syl(left, right)

    def pair(self, i: int, j: int) -> int:
        """From ``X -> Y`` and ``X -> Z`` derive ``X -> Y & Z``."""
        x = self.formula(i).left
        return self.syl(self.axiom("conj-dup", A=x), self.conj_mono(i, j))

    def gen(self, i: int, x: Var) -> int:
        """From ``A(x)`` derive ``all x . A(x)`` through a closed dummy premise."""
        t = self.truth()
        return self.mp(t, self.all_intro(self.weaken(i, self.formula(t)), x))

    def eq_sym_imp(self, t: Term, q: Term) -> int:
        """``t = q -> q = t``"""
        y = self._ground_var_for(t, q)
        sub = self.axiom("eq-subst", x=y, A=Eq(t.type, y, t), t=t, q=q)
        return self.discharge(sub, self.refl(t))

    def eq_sym(self, i: int) -> int:
        f = self.formula(i)
        return self.mp(i, self.eq_sym_imp(f.lhs, f.rhs))

    def rewrite_imp(self, a: Formula, x: Var, t: Term, q: Term, i: int) -> int:
        """Given line ``i`` proving ``A[t/x]``, derive ``t = q -> A[q/x]`` (A atomic)."""
        sub = self.axiom("eq-subst", x=x, A=a, t=t, q=q)
        return self.discharge(sub, i)

    def cong_imp(self, f_of: Term, x: Var, t: Term, q: Term) -> int:
        """``t = q -> F(t) = F(q)`` where ``f_of`` mentions ``x``."""
        ft = subst_term(f_of, x, t)
        a = Eq(ft.type, ft, f_of)
        return self.rewrite_imp(a, x, t, q, self.refl(ft))

    def _ground_var_for(self, *terms: Term) -> Var:
        avoid = {v.name for t in terms for v in t.fvs} | self.context.names
        return Var(fresh_name("y", avoid), terms[0].type)

    def fresh_var(self, ty, *formulas: Formula, base: str = "y") -> Var:
        avoid = set(self.context.names)
        for f in formulas:
            avoid |= names_in(f)
        return Var(fresh_name(base, avoid), ty)

