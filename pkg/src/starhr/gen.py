"""Seeded random generation of types, terms and formulas for property tests.

Terms are built type-directed: to produce a term of type ``ty`` we pick a
head (variable or constant, possibly partially applied) whose result type
matches and generate its arguments recursively. Recursor heads are rationed
per term so that random programs stay in a range where normalization is
cheap; that is a property of the distribution, not of the calculus.
"""

from __future__ import annotations

import random
from typing import Sequence

from .abstraction import lam
from .kernel import (
    NAT, Arrow, Signature, Star, Term, Type, Var, app, bigcup, cup, numeral,
    arrows, pi, rec, rect, sig, single, suc, type_depth,
)
from .logic import (
    BOT, And, BExists, BForall, Eq, Exists, Forall, Formula, Imp, Mem, Or,
)

__all__ = ["TermGen", "random_type", "random_formula", "monotone_formula",
           "random_witness_sets"]

MAX_DEPTH = 4

_SMALL_TYPES = [NAT, NAT, NAT, Star(NAT), Arrow(NAT, NAT), Arrow(NAT, Star(NAT))]


def random_type(rng: random.Random, depth: int = 2) -> Type:
    """A random type over ``N`` of depth at most ``depth``."""
    if depth <= 0 or rng.random() < 0.4:
        return NAT
    r = rng.random()
    if r < 0.35:
        return Star(random_type(rng, depth - 1))
    return Arrow(random_type(rng, depth - 1), random_type(rng, depth - 1))


class TermGen:
    """Random well-typed arithmetic terms of bounded size and type depth."""

    def __init__(self, seed: int = 0, max_size: int = 60, max_recs: int = 2,
                 max_numeral: int = 4):
        self.rng = random.Random(seed)
        self.max_size = max_size
        self.max_recs = max_recs
        self.max_numeral = max_numeral
        self.sig = Signature()
        self._recs = 0

    # -- public ------------------------------------------------------------

    def term(self, ty: Type, env: Sequence[Var] = (), fuel: int | None = None) -> Term:
        """A term of type ``ty`` with free variables among ``env``.

        Retries until the size bound holds.
        """
        while True:
            self._recs = 0
            t = self._gen(ty, list(env), fuel if fuel is not None else self.rng.randint(6, 40))
            if t.size <= self.max_size:
                return t

    def closed(self, ty: Type | None = None) -> Term:
        if ty is None:
            ty = self.rng.choice([NAT, NAT, Star(NAT), Star(NAT), Arrow(NAT, NAT),
                                  Star(Star(NAT)), Arrow(NAT, Star(NAT))])
        return self.term(ty)

    def numeral(self) -> Term:
        return numeral(self.rng.randint(0, self.max_numeral))

    def small_type(self) -> Type:
        return self.rng.choice(_SMALL_TYPES)

    # -- generation --------------------------------------------------------

    def _ok(self, *types: Type) -> bool:
        """Depth bound on the types of generated subterms (constants exempt)."""
        return all(type_depth(t) <= MAX_DEPTH for t in types)

    def _leaf(self, ty: Type, env: list[Var]) -> Term:
        vs = [v for v in env if v.type == ty]
        if vs and self.rng.random() < 0.7:
            return self.rng.choice(vs)
        if ty == NAT:
            return self.numeral()
        if ty == Arrow(NAT, NAT) and self.rng.random() < 0.5:
            return suc
        if isinstance(ty, Star):
            return app(single(ty.elem), self._leaf(ty.elem, env))
        if isinstance(ty, Arrow):
            return app(pi(ty.cod, ty.dom), self._leaf(ty.cod, env))
        return self.sig.inhabit(ty)

    def _gen(self, ty: Type, env: list[Var], fuel: int) -> Term:
        if fuel <= 1:
            return self._leaf(ty, env)
        options = self._options(ty, env)
        if not options:
            return self._leaf(ty, env)
        build = self.rng.choice(options)
        return build(fuel - 1)

    def _split(self, fuel: int, k: int) -> list[int]:
        if k == 0:
            return []
        cuts = sorted(self.rng.randint(0, fuel) for _ in range(k - 1))
        parts = [b - a for a, b in zip([0] + cuts, cuts + [fuel])]
        return [max(p, 1) for p in parts]

    def _apply(self, head: Term, arg_types: list[Type], env: list[Var], fuel: int) -> Term:
        fs = self._split(fuel, len(arg_types))
        return app(head, *[self._gen(a, env, f) for a, f in zip(arg_types, fs)])

    def _options(self, ty: Type, env: list[Var]):
        rng = self.rng
        opts = []

        for v in env:
            doms, res = [], v.type
            while True:
                if res == ty:
                    opts.append(lambda f, v=v, d=tuple(doms): self._apply(v, list(d), env, f))
                if not isinstance(res, Arrow):
                    break
                doms.append(res.dom)
                res = res.cod

        if ty == NAT:
            opts.append(lambda f: app(suc, self._gen(NAT, env, f)))
            opts.append(lambda f: self.numeral())
        if ty == Arrow(NAT, NAT):
            opts.append(lambda f: suc)
        if isinstance(ty, Arrow):
            # a function that really uses its argument, via bracket abstraction
            def abstracted(f):
                x = Var(f"_g{len(env)}", ty.dom)
                return lam([x], self._gen(ty.cod, env + [x], f))
            opts.append(abstracted)
            opts.append(abstracted)

        # PI s t : s -> t -> s
        def pi_full(f):
            s = self.small_type()
            return self._apply(pi(ty, s), [ty, s], env, f)
        if self._ok(ty):
            opts.append(pi_full)
        if isinstance(ty, Arrow):
            opts.append(lambda f: self._apply(pi(ty.cod, ty.dom), [ty.cod], env, f))

        # SIG r s t : (r -> s -> t) -> (r -> s) -> r -> t
        def sig_full(f):
            r, s = self.small_type(), self.small_type()
            c = sig(r, s, ty)
            if not self._ok(Arrow(r, Arrow(s, ty))):
                return self._leaf(ty, env)
            return self._apply(c, [Arrow(r, Arrow(s, ty)), Arrow(r, s), r], env, f)
        opts.append(sig_full)
        if isinstance(ty, Arrow):
            def sig_two(f):
                r, t = ty.dom, ty.cod
                s = self.small_type()
                c = sig(r, s, t)
                if not self._ok(Arrow(r, Arrow(s, t))):
                    return self._leaf(ty, env)
                return self._apply(c, [Arrow(r, Arrow(s, t)), Arrow(r, s)], env, f)
            opts.append(sig_two)

        if isinstance(ty, Star):
            e = ty.elem
            opts.append(lambda f: self._apply(single(e), [e], env, f))
            opts.append(lambda f: self._apply(cup(e), [ty, ty], env, f))

            def big(f):
                s = rng.choice([NAT, NAT, Star(NAT)])
                c = bigcup(s, e)
                if not self._ok(Arrow(s, ty)):
                    return self._leaf(ty, env)
                return self._apply(c, [Star(s), Arrow(s, ty)], env, f)
            opts.append(big)

        if self._recs < self.max_recs and self._ok(Arrow(ty, Arrow(NAT, ty))):
            def recursor(f):
                self._recs += 1
                n = self._gen(NAT, env, 2) if rng.random() < 0.3 else self.numeral()
                step = Arrow(ty, Arrow(NAT, ty))
                q, r = self._split(f, 2)
                return app(rec(ty), n, self._gen(ty, env, q), self._gen(step, env, r))
            opts.append(recursor)

            def simultaneous(f):
                self._recs += 1
                other = rng.choice([NAT, Star(NAT)])
                types = [ty, other] if rng.random() < 0.5 else [other, ty]
                j = types.index(ty) + 1
                c = rect(j, types)
                steps = [arrows(types + [NAT], s) for s in types]
                if not self._ok(*steps):
                    return self._leaf(ty, env)
                args = types + steps
                made = [self._gen(a, env, g) for a, g in zip(args, self._split(f, len(args)))]
                return app(c, self.numeral(), *made)
            if rng.random() < 0.3:
                opts.append(simultaneous)
        return opts


# ---------------------------------------------------------------------------
# Formulas


def _nat_term(rng: random.Random, env: list[Var], depth: int = 2) -> Term:
    nats = [v for v in env if v.type == NAT]
    r = rng.random()
    if nats and r < 0.5:
        return rng.choice(nats)
    if depth > 0 and r < 0.7:
        return app(suc, _nat_term(rng, env, depth - 1))
    return numeral(rng.randint(0, 3))


def _set_term(rng: random.Random, env: list[Var], avoid: Var | None = None) -> Term:
    vs = [v for v in env if v.type == Star(NAT) and v != avoid]
    if vs and rng.random() < 0.3:
        return rng.choice(vs)
    usable = [v for v in env if v != avoid]
    out = app(single(NAT), _nat_term(rng, usable))
    for _ in range(rng.randint(0, 2)):
        out = app(cup(NAT), out, app(single(NAT), _nat_term(rng, usable)))
    return out


def _atom(rng: random.Random, env: list[Var], with_bot: bool = True) -> Formula:
    r = rng.random()
    if with_bot and r < 0.08:
        return BOT
    if r < 0.55:
        return Eq(NAT, _nat_term(rng, env), _nat_term(rng, env))
    if r < 0.8:
        return Mem(NAT, _nat_term(rng, env), _set_term(rng, env))
    return Eq(Star(NAT), _set_term(rng, env), _set_term(rng, env))


def random_formula(rng: random.Random, depth: int = 3, env: Sequence[Var] = (),
                   counter: list[int] | None = None) -> Formula:
    """A random arithmetic formula, with quantifiers over assorted types."""
    env = list(env)
    counter = counter if counter is not None else [0]

    def fresh(ty: Type) -> Var:
        counter[0] += 1
        return Var(f"v{counter[0]}", ty)

    if depth <= 0 or rng.random() < 0.2:
        return _atom(rng, env)
    r = rng.random()
    if r < 0.45:
        op = rng.choice([And, Or, Imp])
        return op(random_formula(rng, depth - 1, env, counter),
                  random_formula(rng, depth - 1, env, counter))
    ty = rng.choice([NAT, NAT, NAT, Star(NAT), Arrow(NAT, NAT)])
    x = fresh(ty)
    if r < 0.85:
        q = rng.choice([Forall, Exists])
        return q(x, random_formula(rng, depth - 1, env + [x], counter))
    x = fresh(NAT)
    bound = _set_term(rng, env)
    q = rng.choice([BForall, BExists])
    return q(x, bound, random_formula(rng, depth - 1, env + [x], counter))


def _exists_free_decidable(rng: random.Random, depth: int, env: list[Var],
                           counter: list[int]) -> Formula:
    if depth <= 0 or rng.random() < 0.4:
        return _atom(rng, env)
    r = rng.random()
    if r < 0.6:
        op = rng.choice([And, Or, Imp])
        return op(_exists_free_decidable(rng, depth - 1, env, counter),
                  _exists_free_decidable(rng, depth - 1, env, counter))
    counter[0] += 1
    x = Var(f"v{counter[0]}", NAT)
    q = rng.choice([BForall, BExists])
    return q(x, _set_term(rng, env), _exists_free_decidable(rng, depth - 1, env + [x], counter))


def monotone_formula(rng: random.Random, depth: int = 3, env: Sequence[Var] = (),
                     counter: list[int] | None = None) -> Formula:
    """A closed formula whose translation has only ``N*`` evars and a decidable matrix.

    Existentials occur under conjunction, disjunction, bounded quantifiers,
    other existentials and to the right of an implication with an ∃-free
    antecedent; there are no unbounded universals.
    """
    env = list(env)
    counter = counter if counter is not None else [0]
    if depth <= 0 or rng.random() < 0.15:
        return _atom(rng, env)
    r = rng.random()
    if r < 0.3:
        op = rng.choice([And, Or])
        return op(monotone_formula(rng, depth - 1, env, counter),
                  monotone_formula(rng, depth - 1, env, counter))
    counter[0] += 1
    x = Var(f"v{counter[0]}", NAT)
    if r < 0.6:
        return Exists(x, monotone_formula(rng, depth - 1, env + [x], counter))
    if r < 0.8:
        q = rng.choice([BForall, BExists])
        return q(x, _set_term(rng, env), monotone_formula(rng, depth - 1, env + [x], counter))
    return Imp(_exists_free_decidable(rng, 1, env, counter),
               monotone_formula(rng, depth - 1, env, counter))


def random_witness_sets(rng: random.Random, k: int, max_elem: int = 5
                        ) -> tuple[list[list[Term]], list[list[Term]]]:
    """``k`` pairs of element lists ``x ⊆ x'`` of numerals."""
    small, big = [], []
    for _ in range(k):
        xs = [numeral(rng.randint(0, max_elem)) for _ in range(rng.randint(1, 3))]
        extra = [numeral(rng.randint(0, max_elem)) for _ in range(rng.randint(0, 3))]
        small.append(xs)
        big.append(rng.sample(xs + extra, len(xs + extra)))
    return small, big

