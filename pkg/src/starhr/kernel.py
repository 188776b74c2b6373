"""Types, constants, terms and signatures of the star combinatory calculus.

Terms are immutable and typed at construction: building an application whose
argument does not fit the function's domain raises :class:`KernelTypeError`.
Every node caches its type, size, free variables and whether it is a redex or
in normal form, so the rewriting engine can skip normal subterms in O(1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

__all__ = [
    "KernelError", "KernelTypeError", "UnboundVariable",
    "Type", "Ground", "Arrow", "Star", "arrows", "split_arrows", "is_end_star",
    "type_depth",
    "Term", "Const", "Var", "App", "app", "spine",
    "Signature", "Context",
    "type_of_constant", "pi", "sig", "single", "cup", "bigcup", "rec", "rect",
    "zero", "suc", "numeral", "NAT",
    "typecheck", "subst_term", "subst_terms",
    "COMBINATORS", "KEYWORDS",
]


class KernelError(Exception):
    pass


class KernelTypeError(KernelError):
    pass


class UnboundVariable(KernelError):
    pass


# ---------------------------------------------------------------------------
# Types


class Type:
    __slots__ = ()

    def __str__(self) -> str:
        from .syntax import show_type
        return show_type(self)


@dataclass(frozen=True, repr=False)
class Ground(Type):
    name: str

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True, repr=False)
class Arrow(Type):
    dom: Type
    cod: Type

    def __repr__(self) -> str:
        return f"({self.dom!r} -> {self.cod!r})"


@dataclass(frozen=True, repr=False)
class Star(Type):
    elem: Type

    def __repr__(self) -> str:
        return f"{self.elem!r}*"


NAT = Ground("N")


def arrows(doms: Iterable[Type], cod: Type) -> Type:
    """Curried type ``d1 -> ... -> dn -> cod``."""
    for d in reversed(list(doms)):
        cod = Arrow(d, cod)
    return cod


def split_arrows(ty: Type) -> tuple[list[Type], Type]:
    """Decompose ``s1 -> ... -> sn -> r`` with ``r`` ground or star."""
    doms = []
    while isinstance(ty, Arrow):
        doms.append(ty.dom)
        ty = ty.cod
    return doms, ty


def is_end_star(ty: Type) -> bool:
    return isinstance(split_arrows(ty)[1], Star)


def type_depth(ty: Type) -> int:
    if isinstance(ty, Arrow):
        return 1 + max(type_depth(ty.dom), type_depth(ty.cod))
    if isinstance(ty, Star):
        return 1 + type_depth(ty.elem)
    return 0


# ---------------------------------------------------------------------------
# Terms

PI, SIG, SET, CUP, BIGCUP, REC, RECT, ZERO, SUC = (
    "PI", "SIG", "SET", "CUP", "BIGCUP", "REC", "RECT", "ZERO", "SUC")
COMBINATORS = frozenset({PI, SIG, SET, CUP, BIGCUP, REC, RECT, ZERO, SUC})
KEYWORDS = COMBINATORS | {"bot", "in", "all", "ex", "context", "assume", "BY",
                          "axiom", "rule", "from", "assumption", "mode",
                          "const", "fun", "rel", "N", "G"}

_EMPTY: frozenset = frozenset()


class Term:
    """Base class. Subclasses fill the cached slots in ``__init__``."""

    __slots__ = ("type", "size", "fvs", "normal", "rule", "head", "nargs",
                 "_hash")

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Term) or self._hash != other._hash:
            return False
        return _term_eq(self, other)

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        from .syntax import show_term
        return show_term(self)

    @property
    def is_closed(self) -> bool:
        return not self.fvs


class Const(Term):
    """A constant; combinator and star constants carry their type indices.

    ``sel`` is only used by the simultaneous recursor ``RECT`` to pick the
    component it returns (1-based).
    """

    __slots__ = ("name", "indices", "sel")

    def __init__(self, name: str, type: Type, indices: tuple[Type, ...] = (),
                 sel: int = 0):
        self.name = name
        self.indices = tuple(indices)
        self.sel = sel
        self.type = type
        self.size = 1
        self.fvs = _EMPTY
        self.normal = True
        self.rule = None
        self.head = self
        self.nargs = 0
        self._hash = hash(("c", name, self.indices, sel, type))

    @property
    def is_builtin(self) -> bool:
        return self.name in COMBINATORS

    def __repr__(self) -> str:
        return f"Const({self!s})"


class Var(Term):
    __slots__ = ("name",)

    def __init__(self, name: str, type: Type):
        self.name = name
        self.type = type
        self.size = 1
        self.normal = True
        self.rule = None
        self.head = self
        self.nargs = 0
        self._hash = hash(("v", name, type))
        self.fvs = frozenset((self,))

    def __repr__(self) -> str:
        return f"Var({self.name}:{self.type})"


class App(Term):
    __slots__ = ("fun", "arg")

    def __init__(self, fun: Term, arg: Term):
        fty = fun.type
        if not isinstance(fty, Arrow):
            raise KernelTypeError(
                f"cannot apply {fun} of non-function type {fty} to {arg}")
        if fty.dom != arg.type:
            raise KernelTypeError(
                f"argument type mismatch applying {fun}: "
                f"expected {fty.dom}, got {arg.type}")
        self._init(fun, arg, fty.cod)

    @classmethod
    def _unchecked(cls, fun: Term, arg: Term, type: Type) -> "App":
        node = cls.__new__(cls)
        node._init(fun, arg, type)
        return node

    def _init(self, fun: Term, arg: Term, type: Type) -> None:
        self.fun = fun
        self.arg = arg
        self.type = type
        self.size = fun.size + arg.size
        if not fun.fvs:
            self.fvs = arg.fvs
        elif not arg.fvs:
            self.fvs = fun.fvs
        else:
            self.fvs = fun.fvs | arg.fvs
        self.head = fun.head
        self.nargs = fun.nargs + 1
        self.rule = _redex_rule(self)
        self.normal = fun.normal and arg.normal and self.rule is None
        self._hash = hash(("a", fun._hash, arg._hash))

    def __repr__(self) -> str:
        return f"App({self!s})"


def _redex_rule(node: App) -> str | None:
    """Name of the conversion applicable at exactly this node, if any."""
    head = node.head
    if not isinstance(head, Const):
        return None
    name, n = head.name, node.nargs
    if name == PI:
        return "PI" if n == 2 else None
    if name == SIG:
        return "SIG" if n == 3 else None
    if name == BIGCUP:
        if n != 2:
            return None
        s = node.fun.arg
        if isinstance(s.head, Const):
            if s.head.name == SET and s.nargs == 1:
                return "BIGCUP-SET"
            if s.head.name == CUP and s.nargs == 2:
                return "BIGCUP-CUP"
        return None
    if name == REC or name == RECT:
        k = len(head.indices) if name == RECT else 1
        if n != 1 + 2 * k:
            return None
        t = node
        for _ in range(2 * k):
            t = t.fun
        num = t.arg
        if isinstance(num, Const) and num.name == ZERO:
            return name + "-0"
        if isinstance(num.head, Const) and num.head.name == SUC and num.nargs == 1:
            return name + "-S"
    return None


def _term_eq(a: Term, b: Term) -> bool:
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        if x is y:
            continue
        if x._hash != y._hash or type(x) is not type(y):
            return False
        if isinstance(x, App):
            stack.append((x.arg, y.arg))
            stack.append((x.fun, y.fun))
        elif isinstance(x, Var):
            if x.name != y.name or x.type != y.type:
                return False
        elif (x.name, x.indices, x.sel, x.type) != (y.name, y.indices, y.sel, y.type):
            return False
    return True


def app(f: Term, *args: Term) -> Term:
    for a in args:
        f = App(f, a)
    return f


def spine(t: Term) -> tuple[Term, list[Term]]:
    """Split ``h a1 ... an`` into ``(h, [a1, ..., an])``."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


# ---------------------------------------------------------------------------
# Constants


def type_of_constant(name: str, indices: Sequence[Type] = (), sel: int = 0,
                     signature: "Signature | None" = None) -> Type:
    """Instantiate the type schema of a built-in or declared constant."""
    idx = tuple(indices)

    def need(k: int) -> None:
        if len(idx) != k:
            raise KernelError(f"{name} expects {k} type indices, got {len(idx)}")

    if name == PI:
        need(2)
        s, t = idx
        return Arrow(s, Arrow(t, s))
    if name == SIG:
        need(3)
        r, s, t = idx
        return Arrow(Arrow(r, Arrow(s, t)), Arrow(Arrow(r, s), Arrow(r, t)))
    if name == SET:
        need(1)
        return Arrow(idx[0], Star(idx[0]))
    if name == CUP:
        need(1)
        s = Star(idx[0])
        return Arrow(s, Arrow(s, s))
    if name == BIGCUP:
        need(2)
        s, t = idx
        return Arrow(Star(s), Arrow(Arrow(s, Star(t)), Star(t)))
    if name in (REC, RECT, ZERO, SUC):
        if signature is not None and signature.mode != "arithmetic":
            raise KernelError(f"{name} is only available in arithmetic mode")
        if name == ZERO:
            need(0)
            return NAT
        if name == SUC:
            need(0)
            return Arrow(NAT, NAT)
        if name == REC:
            need(1)
            s = idx[0]
            return arrows([NAT, s, arrows([s, NAT], s)], s)
        if len(idx) < 1 or not 1 <= sel <= len(idx):
            raise KernelError(f"RECT needs k >= 1 indices and 1 <= j <= k, got j={sel}")
        steps = [arrows(list(idx) + [NAT], s) for s in idx]
        return arrows([NAT, *idx, *steps], idx[sel - 1])
    if signature is not None and name in signature.functions:
        if idx:
            raise KernelError(f"function symbol {name} takes no type indices")
        g = signature.ground
        return arrows([g] * signature.functions[name], g)
    raise KernelError(f"unknown constant {name!r}")


def _builtin(name: str, *indices: Type, sel: int = 0) -> Const:
    return Const(name, type_of_constant(name, indices, sel), indices, sel)


def pi(s: Type, t: Type) -> Const:
    return _builtin(PI, s, t)


def sig(r: Type, s: Type, t: Type) -> Const:
    return _builtin(SIG, r, s, t)


def single(s: Type) -> Const:
    return _builtin(SET, s)


def cup(s: Type) -> Const:
    return _builtin(CUP, s)


def bigcup(s: Type, t: Type) -> Const:
    return _builtin(BIGCUP, s, t)


def rec(s: Type) -> Const:
    return _builtin(REC, s)


def rect(sel: int, types: Sequence[Type]) -> Const:
    return _builtin(RECT, *types, sel=sel)


zero = Const(ZERO, NAT)
suc = Const(SUC, Arrow(NAT, NAT))


def numeral(n: int) -> Term:
    t: Term = zero
    for _ in range(n):
        t = App._unchecked(suc, t, NAT)
    return t


# ---------------------------------------------------------------------------
# Signatures and contexts


@dataclass
class Signature:
    """Mode flag plus the first-order symbols of the underlying language.

    In arithmetic mode the ground type is ``N`` and ``ZERO``/``SUC``/``REC`` are
    implicitly present; in logic mode it is ``G`` and at least one nullary
    function symbol is required.
    """

    mode: str = "arithmetic"
    functions: dict[str, int] = field(default_factory=dict)
    relations: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.mode not in ("arithmetic", "logic"):
            raise KernelError(f"unknown mode {self.mode!r}")
        for name in list(self.functions) + list(self.relations):
            if name in KEYWORDS:
                raise KernelError(f"{name!r} is reserved")
        if self.mode == "logic" and not any(a == 0 for a in self.functions.values()):
            raise KernelError("logic mode needs at least one constant of ground type")

    @property
    def ground(self) -> Ground:
        return NAT if self.mode == "arithmetic" else Ground("G")

    def constant(self, name: str) -> Const:
        return Const(name, type_of_constant(name, signature=self))

    def first_constant(self) -> Term:
        if self.mode == "arithmetic":
            return zero
        name = next(n for n, a in self.functions.items() if a == 0)
        return self.constant(name)

    def inhabit(self, ty: Type) -> Term:
        """Canonical closed term of type ``ty``."""
        if isinstance(ty, Ground):
            return self.first_constant()
        if isinstance(ty, Star):
            return App(single(ty.elem), self.inhabit(ty.elem))
        return App(pi(ty.cod, ty.dom), self.inhabit(ty.cod))


@dataclass(frozen=True)
class Context:
    """Ordered typed variables with pairwise distinct names."""

    vars: tuple[Var, ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        for v in self.vars:
            if v.name in seen:
                raise KernelError(f"duplicate variable {v.name!r} in context")
            seen.add(v.name)

    def __iter__(self) -> Iterator[Var]:
        return iter(self.vars)

    def __len__(self) -> int:
        return len(self.vars)

    def __contains__(self, v: object) -> bool:
        return v in self.vars

    def lookup(self, name: str) -> Var | None:
        for v in self.vars:
            if v.name == name:
                return v
        return None

    def extend(self, *vs: Var) -> "Context":
        return Context(self.vars + tuple(vs))

    @property
    def names(self) -> set[str]:
        return {v.name for v in self.vars}


# ---------------------------------------------------------------------------
# Typing and substitution


def typecheck(t: Term, ctx: Context | Iterable[Var] = (),
              signature: Signature | None = None) -> Type:
    """Re-derive the type of ``t`` from its leaves and check free variables.

    Independent of the types cached at construction: every constant's type is
    recomputed from its schema and every application re-checked.
    """
    ctx = ctx if isinstance(ctx, Context) else Context(tuple(ctx))
    memo: dict[int, Type] = {}

    def go(u: Term) -> Type:
        key = id(u)
        if key in memo:
            return memo[key]
        if isinstance(u, Var):
            bound = ctx.lookup(u.name)
            if bound is None:
                raise UnboundVariable(f"unbound variable {u.name}")
            if bound.type != u.type:
                raise KernelTypeError(
                    f"variable {u.name} used at {u.type} but declared {bound.type}")
            ty = u.type
        elif isinstance(u, Const):
            ty = type_of_constant(u.name, u.indices, u.sel, signature)
            if ty != u.type:
                raise KernelTypeError(f"constant {u} carries type {u.type}, schema gives {ty}")
        else:
            fty = go(u.fun)
            aty = go(u.arg)
            if not isinstance(fty, Arrow):
                raise KernelTypeError(f"{u.fun} is not a function")
            if fty.dom != aty:
                raise KernelTypeError(f"expected {fty.dom}, got {aty}")
            ty = fty.cod
        memo[key] = ty
        return ty

    return go(t)


def subst_terms(t: Term, mapping: dict[Var, Term]) -> Term:
    """Simultaneous replacement of variables; terms have no binders."""
    for x, s in mapping.items():
        if x.type != s.type:
            raise KernelTypeError(f"cannot substitute {s} : {s.type} for {x.name} : {x.type}")
    if not mapping:
        return t
    keys = frozenset(mapping)
    memo: dict[int, Term] = {}

    def go(u: Term) -> Term:
        if not (u.fvs & keys):
            return u
        key = id(u)
        if key in memo:
            return memo[key]
        if isinstance(u, Var):
            r = mapping[u]
        else:
            r = App._unchecked(go(u.fun), go(u.arg), u.type)
        memo[key] = r
        return r

    return go(t)


def subst_term(t: Term, x: Var, s: Term) -> Term:
    return subst_terms(t, {x: s})
