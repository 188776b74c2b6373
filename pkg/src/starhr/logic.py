"""Formulas over star-typed terms: formation, free variables, substitution."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .kernel import (
    Context, Ground, KernelTypeError, Signature, Star, Term, Type, Var,
    subst_terms,
)

__all__ = [
    "Formula", "Bot", "Eq", "Mem", "Rel", "And", "Or", "Imp", "Forall",
    "Exists", "BForall", "BExists", "BOT", "neg", "iff", "forall_many",
    "free_vars", "names_in", "is_exists_free", "is_atomic", "well_formed",
    "subst_formula", "subst_formulas", "alpha_eq", "subformulas",
]


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        from .syntax import show_formula
        return show_formula(self)


@dataclass(frozen=True, repr=False)
class Bot(Formula):
    def __repr__(self) -> str:
        return "Bot()"


@dataclass(frozen=True, repr=False)
class Eq(Formula):
    type: Type
    lhs: Term
    rhs: Term


@dataclass(frozen=True, repr=False)
class Mem(Formula):
    type: Type  # element type; the set side has type ``type*``
    elem: Term
    set: Term


@dataclass(frozen=True, repr=False)
class Rel(Formula):
    name: str
    args: tuple[Term, ...]


@dataclass(frozen=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class Forall(Formula):
    var: Var
    body: Formula


@dataclass(frozen=True, repr=False)
class Exists(Formula):
    var: Var
    body: Formula


@dataclass(frozen=True, repr=False)
class BForall(Formula):
    var: Var
    bound: Term
    body: Formula


@dataclass(frozen=True, repr=False)
class BExists(Formula):
    var: Var
    bound: Term
    body: Formula


for _cls in (Eq, Mem, Rel, And, Or, Imp, Forall, Exists, BForall, BExists):
    _cls.__repr__ = lambda self: f"{type(self).__name__}({self})"

BOT = Bot()
_BINARY = (And, Or, Imp)
_UNBOUNDED = (Forall, Exists)
_BOUNDED = (BForall, BExists)
_QUANT = _UNBOUNDED + _BOUNDED


def neg(a: Formula) -> Formula:
    return Imp(a, BOT)


def iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))


def forall_many(xs: Iterable[Var], body: Formula) -> Formula:
    for x in reversed(list(xs)):
        body = Forall(x, body)
    return body


def is_atomic(a: Formula) -> bool:
    return isinstance(a, (Bot, Eq, Mem, Rel))


def _atom_terms(a: Formula) -> tuple[Term, ...]:
    if isinstance(a, Eq):
        return (a.lhs, a.rhs)
    if isinstance(a, Mem):
        return (a.elem, a.set)
    if isinstance(a, Rel):
        return a.args
    return ()


def subformulas(a: Formula) -> Iterator[Formula]:
    stack = [a]
    while stack:
        f = stack.pop()
        yield f
        if isinstance(f, _BINARY):
            stack.extend((f.right, f.left))
        elif isinstance(f, _QUANT):
            stack.append(f.body)


def free_vars(a: Formula) -> frozenset[Var]:
    """Free variables; variables of a bounded quantifier's bound count."""
    if is_atomic(a):
        out: frozenset = frozenset()
        for t in _atom_terms(a):
            out |= t.fvs
        return out
    if isinstance(a, _BINARY):
        return free_vars(a.left) | free_vars(a.right)
    inner = free_vars(a.body) - {a.var}
    if isinstance(a, _BOUNDED):
        inner |= a.bound.fvs
    return inner


def names_in(a: Formula) -> set[str]:
    """Every variable name occurring in ``a``, free or bound."""
    out: set[str] = set()
    for f in subformulas(a):
        for t in _atom_terms(f):
            out.update(v.name for v in t.fvs)
        if isinstance(f, _QUANT):
            out.add(f.var.name)
        if isinstance(f, _BOUNDED):
            out.update(v.name for v in f.bound.fvs)
    return out


def is_exists_free(a: Formula) -> bool:
    return not any(isinstance(f, Exists) for f in subformulas(a))


def well_formed(a: Formula, ctx: Context | Iterable[Var] = (),
                signature: Signature | None = None) -> list[str]:
    """Diagnostics for typing and formation side conditions; empty means fine."""
    ctx = ctx if isinstance(ctx, Context) else Context(tuple(ctx))
    diags: list[str] = []

    def check_vars(ts: Iterable[Term], scope: dict[str, Var]) -> None:
        for t in ts:
            for v in t.fvs:
                bound = scope.get(v.name)
                if bound is None:
                    diags.append(f"unbound variable {v.name}")
                elif bound.type != v.type:
                    diags.append(f"variable {v.name} used at type {v.type} but declared {bound.type}")

    def go(f: Formula, scope: dict[str, Var]) -> None:
        if isinstance(f, Eq):
            if f.lhs.type != f.type or f.rhs.type != f.type:
                diags.append(f"equation {f} mixes types {f.lhs.type} and {f.rhs.type} at {f.type}")
        elif isinstance(f, Mem):
            if f.elem.type != f.type:
                diags.append(f"element {f.elem} has type {f.elem.type}, expected {f.type}")
            if f.set.type != Star(f.type):
                diags.append(f"set side {f.set} has type {f.set.type}, expected {Star(f.type)}")
        elif isinstance(f, Rel):
            if signature is not None:
                arity = signature.relations.get(f.name)
                if arity is None:
                    diags.append(f"unknown relation {f.name}")
                elif arity != len(f.args):
                    diags.append(f"relation {f.name} expects {arity} arguments, got {len(f.args)}")
            for t in f.args:
                if not isinstance(t.type, Ground):
                    diags.append(f"relation argument {t} must be of ground type")
        if is_atomic(f):
            check_vars(_atom_terms(f), scope)
            return
        if isinstance(f, _BINARY):
            go(f.left, scope)
            go(f.right, scope)
            return
        if isinstance(f, _BOUNDED):
            if f.bound.type != Star(f.var.type):
                diags.append(f"bound {f.bound} has type {f.bound.type}, expected {Star(f.var.type)}")
            if f.var in f.bound.fvs:
                diags.append(f"bound mentions bound variable {f.var.name}")
            check_vars([f.bound], scope)
        go(f.body, {**scope, f.var.name: f.var})

    go(a, {v.name: v for v in ctx})
    return diags


# ---------------------------------------------------------------------------
# Substitution


def _prime(name: str, avoid: set[str]) -> str:
    while name in avoid:
        name += "'"
    return name


def subst_formulas(a: Formula, mapping: dict[Var, Term]) -> Formula:
    """Simultaneous capture-avoiding substitution.

    A binder is renamed (by appending primes) whenever its name clashes with
    a free variable name of an inserted term, even if the types differ, so
    printed formulas stay unambiguous.
    """
    for x, t in mapping.items():
        if x.type != t.type:
            raise KernelTypeError(f"cannot substitute {t} : {t.type} for {x.name} : {x.type}")
    mapping = {x: t for x, t in mapping.items() if x != t}
    if not mapping:
        return a
    return _subst(a, mapping)


def _subst(a: Formula, m: dict[Var, Term]) -> Formula:
    fv = free_vars(a)
    m = {x: t for x, t in m.items() if x in fv}
    if not m:
        return a
    if isinstance(a, Eq):
        return Eq(a.type, subst_terms(a.lhs, m), subst_terms(a.rhs, m))
    if isinstance(a, Mem):
        return Mem(a.type, subst_terms(a.elem, m), subst_terms(a.set, m))
    if isinstance(a, Rel):
        return Rel(a.name, tuple(subst_terms(t, m) for t in a.args))
    if isinstance(a, _BINARY):
        return type(a)(_subst(a.left, m), _subst(a.right, m))
    v = a.var
    bound = subst_terms(a.bound, m) if isinstance(a, _BOUNDED) else None
    inner = {x: t for x, t in m.items() if x != v}
    body = a.body
    if inner:
        incoming = {w.name for t in inner.values() for w in t.fvs}
        if v.name in incoming:
            avoid = incoming | names_in(body) | {x.name for x in inner}
            nv = Var(_prime(v.name, avoid), v.type)
            body = _subst(body, {v: nv})
            v = nv
        body = _subst(body, inner)
    if bound is not None:
        return type(a)(v, bound, body)
    return type(a)(v, body)


def subst_formula(a: Formula, x: Var, t: Term) -> Formula:
    return subst_formulas(a, {x: t})


def alpha_eq(a: Formula, b: Formula) -> bool:
    """Equality up to renaming of bound variables."""
    return _canon(a, 0) == _canon(b, 0)


def _canon(a: Formula, depth: int) -> Formula:
    if is_atomic(a):
        return a
    if isinstance(a, _BINARY):
        return type(a)(_canon(a.left, depth), _canon(a.right, depth))
    nv = Var(f"%{depth}", a.var.type)
    body = _canon(_subst(a.body, {a.var: nv}), depth + 1)
    if isinstance(a, _BOUNDED):
        return type(a)(nv, a.bound, body)
    return type(a)(nv, body)
