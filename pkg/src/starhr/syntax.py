"""Concrete ASCII syntax: tokenizer, parsers and printers.

Types::

    type  := tatom ('->' type)?
    tatom := N | G | '(' type ')'      followed by any number of '*'

Terms are left-associative juxtaposition of atoms. Atoms are variables,
declared function symbols, numerals (arithmetic mode), ``ZERO``, ``SUC``,
``PI[s,t]``, ``SIG[r,s,t]``, ``SET[s]``, ``CUP[s]``, ``BIGCUP[s,t]``,
``REC[s]``, ``RECT[j; s1,...,sk]`` and parenthesized terms. Printing puts
every application spine in parentheses, ``(h a1 ... an)``.

Formulas: ``bot``, ``t = u : rho``, ``t in u : rho``, ``R(t, ...)``, ``~A``,
``A & B``, ``A | B``, ``A -> B`` (right-associative), ``A <-> B``, and the
quantifiers ``all x:rho . A``, ``ex x:rho . A``, ``all x in t . A``,
``ex x in t . A`` whose bodies extend as far right as possible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .kernel import (
    BIGCUP, COMBINATORS, CUP, KEYWORDS, NAT, PI, REC, RECT, SET, SIG, SUC, ZERO,
    App, Arrow, Const, Context, Ground, KernelError, Signature, Star, Term,
    Type, Var, numeral, spine, split_arrows, type_of_constant,
)
from .logic import (
    BOT, And, BExists, BForall, Bot, Eq, Exists, Forall, Formula, Imp, Mem,
    Or, Rel,
)

__all__ = [
    "Document", "parse_document", "show_document",
    "ParseError", "Token", "tokenize", "Parser",
    "parse_type", "parse_term", "parse_formula", "parse_signature",
    "parse_context_decl", "show_type", "show_term", "show_formula",
    "show_signature", "show_context",
]


class ParseError(Exception):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line else ""
        super().__init__(f"{where}{message}")


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, NUMBER, SYM, EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<NUMBER>\d+)
  | (?P<IDENT>[A-Za-z_][A-Za-z0-9_'\#]*(?:-[A-Za-z0-9][A-Za-z0-9_]*)*)
  | (?P<SYM><->|->|:=|[()\[\]{},;:.=*&|~/])
""", re.VERBOSE)


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("NUMBER", "IDENT", "SYM"):
            out.append(Token(kind, m.group(), line, col))
        pos = m.end()
    out.append(Token("EOF", "", line, pos - line_start + 1))
    return out


_INDEX_ARITY = {PI: 2, SIG: 3, SET: 1, CUP: 1, BIGCUP: 2, REC: 1}


class Parser:
    """Recursive-descent parser over a token list.

    ``scope`` maps names to variables; it starts as the context and grows
    under quantifiers.
    """

    def __init__(self, text: str, signature: Signature | None = None,
                 context: Context | None = None):
        self.toks = tokenize(text)
        self.i = 0
        self.signature = signature or Signature()
        self.scope: dict[str, Var] = {v.name: v for v in (context or Context())}
        self.check_ground = True

    # -- token helpers -----------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("SYM", "IDENT") and t.text == text

    def error(self, msg: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "EOF":
            self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.advance()
            return True
        return False

    def ident(self, what: str = "identifier") -> Token:
        if self.tok.kind != "IDENT":
            raise self.error(f"expected {what}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def number(self) -> int:
        if self.tok.kind != "NUMBER":
            raise self.error(f"expected a number, found {self.tok.text or 'end of input'!r}")
        return int(self.advance().text)

    def end(self) -> None:
        if self.tok.kind != "EOF":
            raise self.error(f"unexpected {self.tok.text!r}")

    # -- types -------------------------------------------------------------

    def type(self) -> Type:
        left = self.tatom()
        if self.accept("->"):
            return Arrow(left, self.type())
        return left

    def tatom(self) -> Type:
        tok = self.tok
        if self.accept("("):
            ty = self.type()
            self.expect(")")
        elif tok.kind == "IDENT" and tok.text in ("N", "G"):
            self.advance()
            ty = Ground(tok.text)
            if self.check_ground and ty != self.signature.ground:
                raise self.error(f"ground type {tok.text} not available in "
                                 f"{self.signature.mode} mode", tok)
        else:
            raise self.error(f"expected a type, found {tok.text or 'end of input'!r}")
        while self.accept("*"):
            ty = Star(ty)
        return ty

    # -- terms -------------------------------------------------------------

    def _starts_atom(self) -> bool:
        t = self.tok
        if t.kind == "NUMBER":
            return True
        if t.kind == "IDENT":
            return t.text not in KEYWORDS or t.text in COMBINATORS
        return t.kind == "SYM" and t.text == "("

    def term(self) -> Term:
        head = self.atom()
        while self._starts_atom():
            tok = self.tok
            arg = self.atom()
            try:
                head = App(head, arg)
            except KernelError as e:
                raise self.error(str(e), tok) from None
        return head

    def atom(self) -> Term:
        tok = self.tok
        if tok.kind == "NUMBER":
            self.advance()
            if self.signature.mode != "arithmetic":
                raise self.error("numerals need arithmetic mode", tok)
            return numeral(int(tok.text))
        if self.accept("("):
            t = self.term()
            self.expect(")")
            return t
        if tok.kind != "IDENT":
            raise self.error(f"expected a term, found {tok.text or 'end of input'!r}")
        name = tok.text
        self.advance()
        try:
            if name in (ZERO, SUC):
                return Const(name, type_of_constant(name, (), 0, self.signature))
            if name == RECT:
                self.expect("[")
                sel = self.number()
                self.expect(";")
                idx = self._type_list()
                return Const(name, type_of_constant(name, idx, sel, self.signature), idx, sel)
            if name in _INDEX_ARITY:
                self.expect("[")
                idx = self._type_list()
                return Const(name, type_of_constant(name, idx, 0, self.signature), idx)
        except KernelError as e:
            raise self.error(str(e), tok) from None
        if name in self.scope:
            return self.scope[name]
        if name in self.signature.functions:
            return self.signature.constant(name)
        raise self.error(f"unbound variable {name}", tok)

    def _type_list(self) -> tuple[Type, ...]:
        idx = [self.type()]
        while self.accept(","):
            idx.append(self.type())
        self.expect("]")
        return tuple(idx)

    # -- formulas ----------------------------------------------------------

    def formula(self) -> Formula:
        if self.at("all") or self.at("ex"):
            return self.quantifier()
        left = self.disj()
        if self.accept("->"):
            return Imp(left, self.formula())
        if self.accept("<->"):
            right = self.formula()
            return And(Imp(left, right), Imp(right, left))
        return left

    def quantifier(self) -> Formula:
        universal = self.advance().text == "all"
        tok = self.ident("a bound variable")
        if tok.text in KEYWORDS:
            raise self.error(f"{tok.text!r} is reserved", tok)
        bound = None
        if self.accept("in"):
            bound = self.term()
            if not isinstance(bound.type, Star):
                raise self.error(f"bound {show_term(bound)} must have star type", tok)
            ty = bound.type.elem
        else:
            self.expect(":")
            ty = self.type()
        self.expect(".")
        v = Var(tok.text, ty)
        saved = self.scope.get(v.name)
        self.scope[v.name] = v
        try:
            body = self.formula()
        finally:
            if saved is None:
                del self.scope[v.name]
            else:
                self.scope[v.name] = saved
        if bound is not None:
            return (BForall if universal else BExists)(v, bound, body)
        return (Forall if universal else Exists)(v, body)

    def _operand(self, inner) -> Formula:
        if self.at("all") or self.at("ex"):
            return self.quantifier()
        return inner()

    def disj(self) -> Formula:
        left = self.conj()
        while self.accept("|"):
            left = Or(left, self._operand(self.conj))
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.accept("&"):
            left = And(left, self._operand(self.unary))
        return left

    def unary(self) -> Formula:
        if self.accept("~"):
            return Imp(self._operand(self.unary), BOT)
        return self.fatom()

    def fatom(self) -> Formula:
        tok = self.tok
        if self.accept("bot"):
            return BOT
        if tok.kind == "IDENT" and tok.text in self.signature.relations \
                and self.peek().text == "(" and tok.text not in self.scope:
            self.advance()
            self.expect("(")
            args = []
            if not self.at(")"):
                args.append(self.term())
                while self.accept(","):
                    args.append(self.term())
            self.expect(")")
            return Rel(tok.text, tuple(args))
        if self.at("("):
            start = self.i
            try:
                return self._relational_atom()
            except ParseError as first:
                self.i = start
                self.advance()
                try:
                    f = self.formula()
                    self.expect(")")
                    return f
                except ParseError as second:
                    raise max(first, second, key=lambda e: (e.line, e.col))
        return self._relational_atom()

    def _relational_atom(self) -> Formula:
        lhs = self.term()
        if self.accept("="):
            rhs = self.term()
            self.expect(":")
            return Eq(self.tatom(), lhs, rhs)
        if self.accept("in"):
            rhs = self.term()
            self.expect(":")
            return Mem(self.tatom(), lhs, rhs)
        raise self.error(f"expected '=' or 'in', found {self.tok.text or 'end of input'!r}")

    # -- declarations ------------------------------------------------------

    def context_decl(self) -> Context:
        """``context x:rho, y:rho;`` (the keyword already consumed or not)."""
        self.accept("context")
        vs: list[Var] = []
        if not self.at(";"):
            vs.append(self._typed_var())
            while self.accept(","):
                vs.append(self._typed_var())
        self.expect(";")
        try:
            ctx = Context(tuple(vs))
        except KernelError as e:
            raise self.error(str(e)) from None
        for v in ctx:
            self.scope[v.name] = v
        return ctx

    def _typed_var(self) -> Var:
        tok = self.ident("a variable name")
        if tok.text in KEYWORDS:
            raise self.error(f"{tok.text!r} is reserved", tok)
        self.expect(":")
        return Var(tok.text, self.type())

    def signature_decls(self) -> Signature | None:
        """Leading ``mode``/``const``/``fun``/``rel`` statements, if any."""
        if not any(self.at(k) for k in ("mode", "const", "fun", "rel")):
            return None
        mode = "arithmetic"
        functions: dict[str, int] = {}
        relations: dict[str, int] = {}
        consts: list[tuple[Token, Type]] = []
        self.check_ground = False
        try:
            while True:
                tok = self.tok
                if self.accept("mode"):
                    mode = self.ident("a mode").text
                    if mode not in ("arithmetic", "logic"):
                        raise self.error(f"unknown mode {mode!r}", tok)
                elif self.accept("const"):
                    name = self.ident("a constant name")
                    self.expect(":")
                    consts.append((name, self.type()))
                elif self.accept("fun") or self.accept("rel"):
                    name = self.ident("a symbol name")
                    self.expect("/")
                    arity = self.number()
                    if name.text in functions or name.text in relations:
                        raise self.error(f"duplicate symbol {name.text}", name)
                    (functions if tok.text == "fun" else relations)[name.text] = arity
                else:
                    break
                self.expect(";")
        finally:
            self.check_ground = True
        ground = NAT if mode == "arithmetic" else Ground("G")
        for name, ty in consts:
            doms, res = split_arrows(ty)
            if res != ground or any(d != ground for d in doms):
                raise self.error(f"constant {name.text} must have a first-order type over {ground}", name)
            if name.text in functions or name.text in relations:
                raise self.error(f"duplicate symbol {name.text}", name)
            functions[name.text] = len(doms)
        try:
            self.signature = Signature(mode, functions, relations)
        except KernelError as e:
            raise self.error(str(e)) from None
        return self.signature


# ---------------------------------------------------------------------------
# Entry points


def _run(text: str, signature: Signature | None, context: Context | None, rule: str):
    p = Parser(text, signature, context)
    out = getattr(p, rule)()
    p.end()
    return out


def parse_type(text: str, signature: Signature | None = None) -> Type:
    return _run(text, signature, None, "type")


def parse_term(text: str, signature: Signature | None = None,
               context: Context | None = None) -> Term:
    return _run(text, signature, context, "term")


def parse_formula(text: str, signature: Signature | None = None,
                  context: Context | None = None) -> Formula:
    return _run(text, signature, context, "formula")


def parse_signature(text: str) -> Signature:
    p = Parser(text)
    sig = p.signature_decls() or Signature()
    p.end()
    return sig


def parse_context_decl(text: str, signature: Signature | None = None) -> Context:
    return _run(text, signature, None, "context_decl")


@dataclass(frozen=True)
class Document:
    """A file holding signature statements, an optional context and one body."""

    signature: Signature
    context: Context
    body: object


def parse_document(text: str, kind: str, signature: Signature | None = None) -> Document:
    """``kind`` is ``"term"`` or ``"formula"``; the body may end with ``;``."""
    if kind not in ("term", "formula"):
        raise ValueError(f"unknown document kind {kind!r}")
    p = Parser(text, signature)
    sig = p.signature_decls() or p.signature
    ctx = p.context_decl() if p.at("context") else Context()
    body = p.term() if kind == "term" else p.formula()
    p.accept(";")
    p.end()
    return Document(sig, ctx, body)


def show_document(doc: Document) -> str:
    out = [show_signature(doc.signature)]
    if len(doc.context):
        out.append(show_context(doc.context))
    if isinstance(doc.body, Term):
        out.append(show_term(doc.body))
    else:
        out.append(show_formula(doc.body))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Printers


def show_type(ty: Type) -> str:
    if isinstance(ty, Ground):
        return ty.name
    if isinstance(ty, Star):
        inner = show_type(ty.elem)
        if isinstance(ty.elem, Arrow):
            inner = f"({inner})"
        return inner + "*"
    dom = show_type(ty.dom)
    if isinstance(ty.dom, Arrow):
        dom = f"({dom})"
    return f"{dom} -> {show_type(ty.cod)}"


def _show_tatom(ty: Type) -> str:
    s = show_type(ty)
    return f"({s})" if isinstance(ty, Arrow) else s


def _numeral_value(t: Term) -> int | None:
    n = 0
    while isinstance(t, App) and isinstance(t.fun, Const) and t.fun.name == SUC:
        n += 1
        t = t.arg
    if isinstance(t, Const) and t.name == ZERO:
        return n
    return None


def _show_head(c: Const) -> str:
    if c.name == RECT:
        return f"RECT[{c.sel}; " + ", ".join(map(show_type, c.indices)) + "]"
    if c.name in _INDEX_ARITY:
        return f"{c.name}[" + ", ".join(map(show_type, c.indices)) + "]"
    return c.name


def show_term(t: Term) -> str:
    parts: list[str] = []

    def go(u: Term) -> None:
        n = _numeral_value(u)
        if n is not None:
            parts.append(str(n))
            return
        if isinstance(u, Var):
            parts.append(u.name)
            return
        if isinstance(u, Const):
            parts.append(_show_head(u))
            return
        head, args = spine(u)
        parts.append("(")
        go(head)
        for a in args:
            parts.append(" ")
            go(a)
        parts.append(")")

    go(t)
    return "".join(parts)


_PREC = {Imp: 1, Or: 2, And: 3}


def show_formula(a: Formula) -> str:
    return _show_f(a, 0)


def _show_f(a: Formula, ctx_prec: int) -> str:
    if isinstance(a, Bot):
        return "bot"
    if isinstance(a, Eq):
        return f"{show_term(a.lhs)} = {show_term(a.rhs)} : {_show_tatom(a.type)}"
    if isinstance(a, Mem):
        return f"{show_term(a.elem)} in {show_term(a.set)} : {_show_tatom(a.type)}"
    if isinstance(a, Rel):
        return f"{a.name}(" + ", ".join(show_term(t) for t in a.args) + ")"
    if isinstance(a, (Forall, Exists, BForall, BExists)):
        kw = "all" if isinstance(a, (Forall, BForall)) else "ex"
        if isinstance(a, (BForall, BExists)):
            head = f"{kw} {a.var.name} in {show_term(a.bound)} . "
        else:
            head = f"{kw} {a.var.name}:{show_type(a.var.type)} . "
        s = head + _show_f(a.body, 0)
        return f"({s})" if ctx_prec > 0 else s
    prec = _PREC[type(a)]
    op = {Imp: "->", Or: "|", And: "&"}[type(a)]
    if isinstance(a, Imp):
        # right-associative
        s = f"{_show_f(a.left, prec + 1)} {op} {_show_f(a.right, prec)}"
    else:
        s = f"{_show_f(a.left, prec)} {op} {_show_f(a.right, prec + 1)}"
    return f"({s})" if ctx_prec > prec else s


def show_signature(sig: Signature) -> str:
    lines = [f"mode {sig.mode};"]
    for name, arity in sig.functions.items():
        lines.append(f"fun {name} / {arity};")
    for name, arity in sig.relations.items():
        lines.append(f"rel {name} / {arity};")
    return "\n".join(lines)


def show_context(ctx: Context) -> str:
    return "context " + ", ".join(f"{v.name}:{show_type(v.type)}" for v in ctx) + ";"
