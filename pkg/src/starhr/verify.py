"""A three-valued evaluator for closed formulas of the decidable fragment.

The model: closed terms are compared by normal form, star-typed terms denote
the finite sets of their surface elements, and equality at ``rho*`` with
``rho`` ground is extensional. Extensionality is a property of this model,
not an axiom of the theory.

Outside the fragment (unbounded quantifiers, equality or membership at
higher types that normal forms cannot settle, relation symbols without a
table) the verdict is ``Undecidable``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .kernel import (
    NAT, Context, Ground, KernelError, Star, Term, app,
)
from .logic import (
    And, BExists, BForall, Bot, Eq, Exists, Forall, Formula, Imp, Mem, Or,
    Rel, free_vars, subst_formula, subst_formulas,
)
from .rewrite import as_numeral, enumerate_set, normalize

__all__ = ["EvalVerdict", "TRUE", "FALSE", "undecidable", "kleene_and",
           "kleene_or", "kleene_imp", "eval_term_nat", "eval_formula",
           "check_realizer", "instantiate_realizers", "Relations"]

Relations = Mapping[str, set]


@dataclass(frozen=True)
class EvalVerdict:
    value: bool | None
    reason: str = ""

    @property
    def is_true(self) -> bool:
        return self.value is True

    @property
    def is_false(self) -> bool:
        return self.value is False

    @property
    def undecidable(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        if self.value is None:
            return f"Undecidable({self.reason})"
        return "True" if self.value else "False"

    @classmethod
    def true(cls, reason: str = "") -> "EvalVerdict":
        return cls(True, reason)


TRUE = EvalVerdict(True)
FALSE = EvalVerdict(False)


def undecidable(reason: str) -> EvalVerdict:
    return EvalVerdict(None, reason)


def _of(b: bool) -> EvalVerdict:
    return TRUE if b else FALSE


def kleene_and(a: EvalVerdict, b: EvalVerdict) -> EvalVerdict:
    if a.is_false or b.is_false:
        return FALSE
    if a.is_true and b.is_true:
        return TRUE
    return a if a.undecidable else b


def kleene_or(a: EvalVerdict, b: EvalVerdict) -> EvalVerdict:
    if a.is_true or b.is_true:
        return TRUE
    if a.is_false and b.is_false:
        return FALSE
    return a if a.undecidable else b


def kleene_imp(a: EvalVerdict, b: EvalVerdict) -> EvalVerdict:
    if a.is_false or b.is_true:
        return TRUE
    if a.is_true and b.is_false:
        return FALSE
    return a if a.undecidable else b


def eval_term_nat(t: Term, budget: int | None = None) -> int:
    n = as_numeral(t, budget)
    if n is None:
        raise KernelError(f"{t} does not reduce to a numeral")
    return n


def _decode(t: Term, budget: int | None):
    nf = normalize(t, budget)
    if t.type == NAT:
        n = as_numeral(nf, budget)
        return n if n is not None else nf
    return nf


def eval_formula(a: Formula, relations: Relations | None = None,
                 budget: int | None = None) -> EvalVerdict:
    """Evaluate a closed formula; never raises for out-of-fragment input."""
    if free_vars(a):
        names = ", ".join(sorted(v.name for v in free_vars(a)))
        return undecidable(f"free variables {names}")
    return _eval(a, relations or {}, budget)


def _eval(a: Formula, rel: Relations, budget: int | None) -> EvalVerdict:
    if isinstance(a, Bot):
        return FALSE
    if isinstance(a, Eq):
        return _eval_eq(a, budget)
    if isinstance(a, Mem):
        return _eval_mem(a, budget)
    if isinstance(a, Rel):
        table = rel.get(a.name)
        if table is None:
            return undecidable(f"no table for relation {a.name}")
        args = tuple(_decode(t, budget) for t in a.args)
        keys = tuple(x if isinstance(x, int) else str(x) for x in args)
        return _of(keys in table)
    if isinstance(a, And):
        left = _eval(a.left, rel, budget)
        if left.is_false:
            return FALSE
        return kleene_and(left, _eval(a.right, rel, budget))
    if isinstance(a, Or):
        left = _eval(a.left, rel, budget)
        if left.is_true:
            return TRUE
        return kleene_or(left, _eval(a.right, rel, budget))
    if isinstance(a, Imp):
        left = _eval(a.left, rel, budget)
        if left.is_false:
            return TRUE
        return kleene_imp(left, _eval(a.right, rel, budget))
    if isinstance(a, (Forall, Exists)):
        return undecidable(f"unbounded quantifier on {a.var.name}")
    if isinstance(a, (BForall, BExists)):
        elems = enumerate_set(a.bound, budget)
        universal = isinstance(a, BForall)
        acc = TRUE if universal else FALSE
        for e in elems:
            v = _eval(subst_formula(a.body, a.var, e), rel, budget)
            if universal:
                acc = kleene_and(acc, v)
                if acc.is_false:
                    return FALSE
            else:
                acc = kleene_or(acc, v)
                if acc.is_true:
                    return TRUE
        return acc
    raise KernelError(f"not a formula: {a!r}")


def _eval_eq(a: Eq, budget: int | None) -> EvalVerdict:
    ty = a.type
    if isinstance(ty, Ground):
        return _of(normalize(a.lhs, budget) == normalize(a.rhs, budget))
    if isinstance(ty, Star) and isinstance(ty.elem, Ground):
        left = set(enumerate_set(a.lhs, budget))
        right = set(enumerate_set(a.rhs, budget))
        return _of(left == right)
    if normalize(a.lhs, budget) == normalize(a.rhs, budget):
        return TRUE
    return undecidable(f"equality at higher type {ty}")


def _eval_mem(a: Mem, budget: int | None) -> EvalVerdict:
    elems = enumerate_set(a.set, budget)
    nf = normalize(a.elem, budget)
    if nf in elems:
        return TRUE
    if isinstance(a.type, Ground):
        return FALSE
    return undecidable(f"membership at higher type {a.type}")


def instantiate_realizers(a: Formula, ctx: Context, values: Sequence[Term],
                          realizers: Sequence[Term]):
    """The instantiated matrix ``A_HR(values, realizers values)``."""
    from .hr import Freshener, hr_matrix_instantiate, hr_translate

    if len(values) != len(ctx):
        raise KernelError(f"expected {len(ctx)} context values, got {len(values)}")
    binding = {}
    for v, t in zip(ctx, values):
        if t.type != v.type or not t.is_closed:
            raise KernelError(f"context value for {v.name} must be closed of type {v.type}")
        binding[v] = t
    h = hr_translate(a, Freshener.for_formula(a, ctx))
    witnesses = [app(r, *values) for r in realizers]
    matrix = hr_matrix_instantiate(h, witnesses)
    return subst_formulas(matrix, binding)


def check_realizer(a: Formula, ctx: Context, values: Sequence[Term],
                   realizers: Sequence[Term], relations: Relations | None = None,
                   budget: int | None = None) -> EvalVerdict:
    """Evaluate ``A_HR(a, t a)`` at closed context values ``a``."""
    return eval_formula(instantiate_realizers(a, ctx, values, realizers),
                        relations, budget)

