"""One-step reduction, normalization, surface elements and set enumeration.

The canonical strategy is leftmost-outermost. A rightmost-innermost strategy
exists so the two normal forms can be compared in confluence tests.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator

from .kernel import (
    CUP, NAT, SET, SUC, ZERO, App, Const, KernelError, Star, Term, app, bigcup,
    cup, rect, spine,
)

__all__ = [
    "LO", "RI", "DEFAULT_BUDGET", "BudgetExhausted", "KernelBug",
    "ReductionTrace", "WitnessSet",
    "contract", "step", "step_at", "normalize", "normalize_ri", "trace",
    "surface_elements", "is_set_like", "enumerate_set", "as_numeral",
    "default_budget",
]

LO = "lo"
RI = "ri"
DEFAULT_BUDGET = 10**6
BUDGET_ENV = "STARHR_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


class BudgetExhausted(KernelError):
    """Normalization ran out of steps. Since the calculus is strongly
    normalizing this indicates a kernel defect or an absurd input."""

    def __init__(self, budget: int, tail: list[tuple[str, str, Term]]):
        self.budget = budget
        self.tail = tail
        lines = "\n".join(f"  {pos} {rule} {t}" for pos, rule, t in tail)
        super().__init__(f"step budget {budget} exhausted; last steps:\n{lines}")


class KernelBug(KernelError):
    """A normal-form shape theorem was violated."""


@dataclass
class ReductionTrace:
    start: Term
    steps: list[tuple[str, str, Term]] = field(default_factory=list)
    budget_used: int = 0

    @property
    def result(self) -> Term:
        return self.steps[-1][2] if self.steps else self.start

    def lines(self) -> Iterator[str]:
        for pos, rule, t in self.steps:
            yield f"{pos} {rule} {t}"


def contract(t: App) -> Term:
    """Apply the conversion whose redex is exactly ``t``."""
    rule = t.rule
    head, args = spine(t)
    if rule == "PI":
        return args[0]
    if rule == "SIG":
        x, y, z = args
        return App(App(x, z), App(y, z))
    if rule == "BIGCUP-SET":
        return App(args[1], args[0].arg)
    if rule == "BIGCUP-CUP":
        s, f = args
        rho, tau = head.indices
        return app(cup(tau), app(bigcup(rho, tau), s.fun.arg, f),
                   app(bigcup(rho, tau), s.arg, f))
    if rule == "REC-0":
        return args[1]
    if rule == "REC-S":
        n, q, r = args
        return app(r, app(head, n.arg, q, r), n.arg)
    if rule == "RECT-0":
        return args[head.sel]
    if rule == "RECT-S":
        k = len(head.indices)
        n, qs, rs = args[0], args[1:1 + k], args[1 + k:]
        prev = [app(rect(j, head.indices), n.arg, *qs, *rs) for j in range(1, k + 1)]
        return app(rs[head.sel - 1], *prev, n.arg)
    raise KernelError(f"{t} is not a redex")


def step_at(t: Term, strategy: str = LO) -> tuple[Term, str, str] | None:
    """Contract one redex; returns ``(result, position, rule)`` or None if normal.

    Positions are dot-separated paths of ``f`` (function part) and ``a``
    (argument part); ``.`` is the root.
    """
    if t.normal:
        return None
    path: list[tuple[App, bool]] = []
    node = t
    if strategy == LO:
        while node.rule is None:
            if not node.fun.normal:
                path.append((node, True))
                node = node.fun
            else:
                path.append((node, False))
                node = node.arg
    elif strategy == RI:
        while True:
            if not node.arg.normal:
                path.append((node, False))
                node = node.arg
            elif not node.fun.normal:
                path.append((node, True))
                node = node.fun
            else:
                break
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    rule = node.rule
    new = contract(node)
    for parent, went_fun in reversed(path):
        if went_fun:
            new = App._unchecked(new, parent.arg, parent.type)
        else:
            new = App._unchecked(parent.fun, new, parent.type)
    pos = ".".join("f" if f else "a" for _, f in path) or "."
    return new, pos, rule


def step(t: Term, strategy: str = LO) -> Term | None:
    r = step_at(t, strategy)
    return None if r is None else r[0]


def normalize(t: Term, budget: int | None = None, strategy: str = LO,
              record: ReductionTrace | None = None) -> Term:
    if budget is None:
        budget = default_budget()
    if budget <= 0:
        raise ValueError("budget must be positive")
    tail: deque = deque(maxlen=5)
    used = 0
    while not t.normal:
        if used >= budget:
            raise BudgetExhausted(budget, list(tail))
        t, pos, rule = step_at(t, strategy)
        used += 1
        tail.append((pos, rule, t))
        if record is not None:
            record.steps.append((pos, rule, t))
    if record is not None:
        record.budget_used = used
    return t


def normalize_ri(t: Term, budget: int | None = None) -> Term:
    return normalize(t, budget, RI)


def trace(t: Term, budget: int | None = None, strategy: str = LO) -> ReductionTrace:
    tr = ReductionTrace(t)
    normalize(t, budget, strategy, tr)
    return tr


# ---------------------------------------------------------------------------
# Sets


@dataclass(frozen=True)
class WitnessSet:
    """Ordered, deduplicated closed terms readable off a set-like term."""

    elements: tuple[Term, ...] = ()

    def __iter__(self) -> Iterator[Term]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, t: object) -> bool:
        return t in self.elements

    def __str__(self) -> str:
        return "{" + ", ".join(str(e) for e in self.elements) + "}"

    def issubset(self, other: "WitnessSet") -> bool:
        return all(e in other.elements for e in self.elements)

    @classmethod
    def of(cls, terms) -> "WitnessSet":
        return cls(tuple(dict.fromkeys(terms)))


def _require_star(t: Term) -> None:
    if not isinstance(t.type, Star):
        raise KernelError(f"{t} has non-star type {t.type}")


def _is(t: Term, name: str, nargs: int) -> bool:
    return isinstance(t.head, Const) and t.head.name == name and t.nargs == nargs


def surface_elements(t: Term) -> WitnessSet:
    _require_star(t)
    out: list[Term] = []
    stack = [t]
    while stack:
        u = stack.pop()
        if _is(u, SET, 1):
            out.append(u.arg)
        elif _is(u, CUP, 2):
            stack.append(u.arg)
            stack.append(u.fun.arg)
    return WitnessSet.of(out)


def is_set_like(t: Term) -> bool:
    _require_star(t)
    stack = [t]
    while stack:
        u = stack.pop()
        if _is(u, SET, 1):
            continue
        if _is(u, CUP, 2):
            stack.append(u.arg)
            stack.append(u.fun.arg)
            continue
        return False
    return True


def enumerate_set(t: Term, budget: int | None = None) -> WitnessSet:
    """Normalize a closed star-typed term and read off its elements."""
    _require_star(t)
    if not t.is_closed:
        raise KernelError(f"cannot enumerate open term {t}")
    nf = normalize(t, budget)
    if not is_set_like(nf):
        raise KernelBug(f"closed normal term {nf} of type {nf.type} is not set-like")
    elems = surface_elements(nf)
    if not elems:
        raise KernelBug(f"set-like term {nf} has no surface elements")
    return elems


def as_numeral(t: Term, budget: int | None = None) -> int | None:
    """Decode the normal form of a closed ``N``-typed term as S...S0.

    Returns None only when the normal form contains declared function
    symbols; for pure arithmetic terms a failed decode raises KernelBug.
    """
    if t.type != NAT:
        raise KernelError(f"{t} has type {t.type}, expected N")
    if not t.is_closed:
        raise KernelError(f"cannot decode open term {t}")
    nf = normalize(t, budget)
    n = 0
    u = nf
    while _is(u, SUC, 1):
        n += 1
        u = u.arg
    if isinstance(u, Const) and u.name == ZERO:
        return n
    if _only_builtins(nf):
        raise KernelBug(f"closed normal term {nf} of type N is not a numeral")
    return None


def _only_builtins(t: Term) -> bool:
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, App):
            stack.append(u.fun)
            stack.append(u.arg)
        elif isinstance(u, Const) and not u.is_builtin:
            return False
    return True

