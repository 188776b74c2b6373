"""The herbrandized translation ``A |-> ex xs. A_HR(xs)``.

Every formula is mapped to a tuple of existential variables of end-star
type together with an ∃-free matrix. Names of the new variables are drawn
from a :class:`Freshener` so translation is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .kernel import (
    NAT, KernelError, KernelTypeError, Star, Term, Var, app, arrows,
    cup, single,
)
from .logic import (
    And, BExists, BForall, Exists, Forall, Formula, Imp, Or, forall_many,
    free_vars, is_atomic, names_in, subst_formulas,
)

__all__ = ["HRResult", "Freshener", "hr_translate", "hr_matrix_instantiate",
           "evar_types", "set_term", "monotonicity_probe"]


@dataclass(frozen=True)
class HRResult:
    evars: tuple[Var, ...]
    matrix: Formula

    def __str__(self) -> str:
        from .syntax import show_type
        decls = ", ".join(f"{v.name}:{show_type(v.type)}" for v in self.evars)
        return f"evars: ({decls}); matrix: {self.matrix}"


class Freshener:
    """Hands out variable names that occur nowhere in ``avoid``.

    ``fresh("Z")`` returns ``Z`` the first time and ``Z#k`` afterwards, with
    ``k`` counting up from ``seed``.
    """

    def __init__(self, avoid: Iterable[str] = (), seed: int = 1):
        self.used = set(avoid)
        self.counter = seed

    def fresh(self, base: str) -> str:
        name = base
        while name in self.used:
            name = f"{base}#{self.counter}"
            self.counter += 1
        self.used.add(name)
        return name

    @classmethod
    def for_formula(cls, a: Formula, ctx: Iterable[Var] = (), seed: int = 1) -> "Freshener":
        return cls(names_in(a) | {v.name for v in ctx}, seed)


def _set_name(z: Var) -> str:
    base = z.name.rstrip("'")
    return base[:1].upper() + base[1:]


def hr_translate(a: Formula, fr: Freshener | None = None) -> HRResult:
    if fr is None:
        fr = Freshener.for_formula(a)
    return _hr(a, fr)


def _hr(a: Formula, fr: Freshener) -> HRResult:
    if is_atomic(a):
        return HRResult((), a)
    if isinstance(a, (And, Or)):
        l, r = _hr(a.left, fr), _hr(a.right, fr)
        return HRResult(l.evars + r.evars, type(a)(l.matrix, r.matrix))
    if isinstance(a, Imp):
        l, r = _hr(a.left, fr), _hr(a.right, fr)
        xs = l.evars
        doms = [x.type for x in xs]
        us = tuple(Var(u.name, arrows(doms, u.type)) for u in r.evars)
        body = subst_formulas(r.matrix, {u: app(U, *xs) for u, U in zip(r.evars, us)})
        return HRResult(us, forall_many(xs, Imp(l.matrix, body)))
    if isinstance(a, Exists):
        z = a.var
        Z = Var(fr.fresh(_set_name(z)), Star(z.type))
        inner = _hr(a.body, fr)
        return HRResult((Z,) + inner.evars, BExists(z, Z, inner.matrix))
    if isinstance(a, Forall):
        z = a.var
        inner = _hr(a.body, fr)
        xs = tuple(Var(x.name, arrows([z.type], x.type)) for x in inner.evars)
        # X z is meant to be captured by the quantifier on z
        body = subst_formulas(inner.matrix, {x: app(X, z) for x, X in zip(inner.evars, xs)})
        return HRResult(xs, Forall(z, body))
    if isinstance(a, (BForall, BExists)):
        inner = _hr(a.body, fr)
        return HRResult(inner.evars, type(a)(a.var, a.bound, inner.matrix))
    raise KernelError(f"not a formula: {a!r}")


def evar_types(a: Formula) -> list:
    """Types of the existential variables of ``a``; independent of naming."""
    return [v.type for v in hr_translate(a).evars]


def hr_matrix_instantiate(h: HRResult, witnesses: Sequence[Term]) -> Formula:
    if len(witnesses) != len(h.evars):
        raise KernelError(f"expected {len(h.evars)} witnesses, got {len(witnesses)}")
    for v, t in zip(h.evars, witnesses):
        if v.type != t.type:
            raise KernelTypeError(f"witness {t} for {v.name} has type {t.type}, expected {v.type}")
    return subst_formulas(h.matrix, dict(zip(h.evars, witnesses)))


def set_term(elements: Sequence[Term]) -> Term:
    """Left-nested union of singletons, ``CUP (SET a) (SET b)`` ..."""
    if not elements:
        raise KernelError("witness sets are nonempty")
    ty = elements[0].type
    out = app(single(ty), elements[0])
    for e in elements[1:]:
        out = app(cup(ty), out, app(single(ty), e))
    return out


def monotonicity_probe(a: Formula, x: Sequence, x2: Sequence,
                       relations: dict | None = None, budget: int | None = None):
    """Evaluate ``x ⊑ x' ∧ A_HR(x) → A_HR(x')`` with all evars at ``N*``.

    ``x`` and ``x'`` are sequences of closed ``N*`` terms or of sequences of
    closed ``N`` terms. Returns an :class:`~starhr.verify.EvalVerdict`.
    """
    from .abstraction import subseteq_check
    from .verify import EvalVerdict, eval_formula, kleene_imp

    if free_vars(a):
        raise KernelError("monotonicity_probe needs a closed formula")
    h = hr_translate(a)
    if any(v.type != Star(NAT) for v in h.evars):
        raise KernelError("monotonicity_probe needs every evar at type N*")
    xs = [_as_set(w) for w in x]
    xs2 = [_as_set(w) for w in x2]
    for s, s2 in zip(xs, xs2):
        if not subseteq_check(s, s2, Star(NAT), budget=budget):
            return EvalVerdict.true("premise x ⊑ x' fails")
    before = eval_formula(hr_matrix_instantiate(h, xs), relations, budget)
    after = eval_formula(hr_matrix_instantiate(h, xs2), relations, budget)
    return kleene_imp(before, after)


def _as_set(w) -> Term:
    if isinstance(w, Term):
        return w
    return set_term(list(w))

