"""Bracket abstraction and the derived set operations on end-star types."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .kernel import (
    Arrow, KernelError, KernelTypeError, Star, Term, Type, Var, app, bigcup,
    cup, is_end_star, pi, sig, split_arrows,
)
from .rewrite import enumerate_set

__all__ = [
    "identity", "bracket", "lam", "bracket_tuple", "fresh_vars", "fresh_name",
    "sqcup", "big_sqcup", "SubsetVerdict", "subseteq_check",
]


def identity(rho: Type) -> Term:
    """``SIG PI PI`` at type ``rho -> rho``."""
    return app(sig(rho, Arrow(rho, rho), rho), pi(rho, Arrow(rho, rho)), pi(rho, rho))


def bracket(x: Var, t: Term) -> Term:
    """A term ``[x]t`` of type ``x.type -> t.type`` with ``([x]t) s`` reducing to ``t[s/x]``.

    Three clauses: ``[x]x = I``, ``[x]t = PI t`` when x is absent, and
    ``[x](f a) = SIG ([x]f) ([x]a)``.
    """
    if x not in t.fvs:
        return app(pi(t.type, x.type), t)
    if isinstance(t, Var):
        return identity(x.type)
    f, a = t.fun, t.arg
    return app(sig(x.type, a.type, t.type), bracket(x, f), bracket(x, a))


def lam(xs: Sequence[Var], t: Term) -> Term:
    """Iterated abstraction, ``lam([x1, x2], t) = [x1][x2]t``."""
    for x in reversed(list(xs)):
        t = bracket(x, t)
    return t


def bracket_tuple(xs: Sequence[Var], ts: Iterable[Term]) -> list[Term]:
    names = [x.name for x in xs]
    if len(set(names)) != len(names):
        raise KernelError(f"abstracted variables must be distinct: {names}")
    return [lam(xs, t) for t in ts]


def fresh_name(base: str, avoid: set[str]) -> str:
    if base not in avoid:
        return base
    k = 1
    while f"{base}{k}" in avoid:
        k += 1
    return f"{base}{k}"


def fresh_vars(types: Iterable[Type], avoid: set[str], prefix: str = "_v") -> list[Var]:
    out = []
    taken = set(avoid)
    for ty in types:
        name = fresh_name(prefix, taken)
        taken.add(name)
        out.append(Var(name, ty))
    return out


def _names(*terms: Term) -> set[str]:
    return {v.name for t in terms for v in t.fvs}


def _end_star(sigma: Type) -> tuple[list[Type], Type]:
    if not is_end_star(sigma):
        raise KernelTypeError(f"{sigma} is not an end-star type")
    doms, res = split_arrows(sigma)
    return doms, res.elem


def sqcup(a: Term, b: Term, sigma: Type) -> Term:
    """Pointwise union ``lam xs. CUP (a xs) (b xs)`` at end-star ``sigma``."""
    doms, tau = _end_star(sigma)
    if a.type != sigma or b.type != sigma:
        raise KernelTypeError(f"sqcup operands must have type {sigma}")
    xs = fresh_vars(doms, _names(a, b))
    return lam(xs, app(cup(tau), app(a, *xs), app(b, *xs)))


def big_sqcup(F: Term, f: Term, sigma: Type) -> Term:
    """Indexed union ``lam xs. BIGCUP F (lam w. f w xs)`` at end-star ``sigma``."""
    doms, tau = _end_star(sigma)
    if not isinstance(F.type, Star):
        raise KernelTypeError(f"index set {F} must have star type")
    rho = F.type.elem
    if f.type != Arrow(rho, sigma):
        raise KernelTypeError(f"family {f} must have type {Arrow(rho, sigma)}, got {f.type}")
    if not doms:
        return app(bigcup(rho, tau), F, f)
    taken = _names(F, f)
    xs = fresh_vars(doms, taken)
    (w,) = fresh_vars([rho], taken | {x.name for x in xs}, prefix="_w")
    return lam(xs, app(bigcup(rho, tau), F, lam([w], app(f, w, *xs))))


@dataclass(frozen=True)
class SubsetVerdict:
    holds: bool
    exact: bool

    def __bool__(self) -> bool:
        return self.holds

    @property
    def label(self) -> str:
        return "exact" if self.exact else "probe-limited"


def subseteq_check(a: Term, b: Term, sigma: Type,
                   probe: Iterable[Sequence[Term]] = (),
                   budget: int | None = None) -> SubsetVerdict:
    """Decide ``a ⊑ b`` for closed ``a, b``.

    At ``tau*`` this compares enumerations and is exact when ``tau`` is
    ground. At higher end-star types only the supplied argument tuples are
    tried, and the verdict is flagged probe-limited.
    """
    doms, tau = _end_star(sigma)
    if a.type != sigma or b.type != sigma:
        raise KernelTypeError(f"operands must have type {sigma}")
    if not (a.is_closed and b.is_closed):
        raise KernelError("subseteq_check needs closed operands")
    exact = not doms and not isinstance(tau, (Arrow, Star))
    tuples = [()] if not doms else [tuple(p) for p in probe]
    for args in tuples:
        if [x.type for x in args] != doms:
            raise KernelTypeError(f"probe {list(map(str, args))} does not fit {sigma}")
        left = enumerate_set(app(a, *args), budget)
        right = enumerate_set(app(b, *args), budget)
        if not left.issubset(right):
            return SubsetVerdict(False, exact)
    return SubsetVerdict(True, exact)
