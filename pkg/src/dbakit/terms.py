"""Term syntax over the signature (meet, join, two negations, top, bottom).

ASCII surface grammar (precedence: unary > ``&`` > ``|``, both binary ops
left-associative)::

    formula := disjunct ('|' disjunct)*
    disjunct := factor ('&' factor)*
    factor := '~' factor | '!' factor | atom
    atom := 'T' | 'F' | identifier | '(' formula ')'
          | 'vee' '(' formula ',' formula ')'
          | 'wedge' '(' formula ',' formula ')'

``vee``/``wedge`` are macros for the derived connectives and are expanded at
parse time, so parsed terms never contain them as nodes.  All values here are
immutable and hashable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError

GENERIC = "generic"
OBJECT = "object"
PROPERTY = "property"


@dataclass(frozen=True)
class Term:
    """Base class; concrete nodes are Var/Const/Neg/Opp/Meet/Join."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str
    sort: str = GENERIC


@dataclass(frozen=True)
class Const(Term):
    which: str  # "top" | "bot"


@dataclass(frozen=True)
class Neg(Term):
    arg: Term


@dataclass(frozen=True)
class Opp(Term):
    arg: Term


@dataclass(frozen=True)
class Meet(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Join(Term):
    left: Term
    right: Term


TOP = Const("top")
BOT = Const("bot")


def vee(a: Term, b: Term) -> Term:
    """Derived join a v b, expanded to ~(~a & ~b)."""
    return Neg(Meet(Neg(a), Neg(b)))


def wedge(a: Term, b: Term) -> Term:
    """Derived meet a ^ b, expanded to !(!a | !b)."""
    return Opp(Join(Opp(a), Opp(b)))


def variables(t: Term) -> tuple[str, ...]:
    """Variable names occurring in t, sorted."""
    seen = set()

    def walk(u):
        if isinstance(u, Var):
            seen.add(u.name)
        elif isinstance(u, (Neg, Opp)):
            walk(u.arg)
        elif isinstance(u, (Meet, Join)):
            walk(u.left)
            walk(u.right)

    walk(t)
    return tuple(sorted(seen))


def subterms(t: Term) -> tuple[Term, ...]:
    """All subterms of t (including t itself), deduplicated, in first-visit order."""
    out = []
    seen = set()

    def walk(u):
        if u not in seen:
            seen.add(u)
            out.append(u)
        if isinstance(u, (Neg, Opp)):
            walk(u.arg)
        elif isinstance(u, (Meet, Join)):
            walk(u.left)
            walk(u.right)

    walk(t)
    return tuple(out)


def render(t: Term) -> str:
    """Render a term in the surface grammar with minimal parentheses."""
    # precedence levels: join=1, meet=2, unary/atom=3
    def go(u, ctx):
        if isinstance(u, Var):
            return u.name
        if isinstance(u, Const):
            return "T" if u.which == "top" else "F"
        if isinstance(u, Neg):
            return "~" + go(u.arg, 3)
        if isinstance(u, Opp):
            return "!" + go(u.arg, 3)
        if isinstance(u, Meet):
            s = f"{go(u.left, 2)} & {go(u.right, 3)}"
            return f"({s})" if ctx > 2 else s
        if isinstance(u, Join):
            s = f"{go(u.left, 1)} | {go(u.right, 2)}"
            return f"({s})" if ctx > 1 else s
        raise TypeError(f"not a term: {u!r}")

    return go(t, 0)


@dataclass(frozen=True)
class Equation:
    """Named identity lhs = rhs over the term signature."""

    id: str
    lhs: Term
    rhs: Term

    def variables(self) -> tuple[str, ...]:
        return tuple(sorted(set(variables(self.lhs)) | set(variables(self.rhs))))

    def __str__(self):
        return f"{self.id}: {render(self.lhs)} = {render(self.rhs)}"


@dataclass(frozen=True)
class AxiomSuite:
    """Ordered, named list of equations."""

    id: str
    equations: tuple[Equation, ...]

    def __len__(self):
        return len(self.equations)

    def axiom_ids(self) -> tuple[str, ...]:
        return tuple(eq.id for eq in self.equations)

    def equation(self, axiom_id: str) -> Equation:
        for eq in self.equations:
            if eq.id == axiom_id:
                return eq
        raise KeyError(axiom_id)


_TOKEN_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|=>|[&|~!(),;]|\S")

_KEYWORDS = {"vee", "wedge"}


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "T", "F", "vee", "wedge", or the literal symbol
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    toks = []
    for lineno, line in enumerate(text.splitlines() or [""], start=1):
        pos = 0
        while pos < len(line):
            if line[pos].isspace():
                pos += 1
                continue
            if line[pos] == "#":
                break
            m = _TOKEN_RE.match(line, pos)
            if not m:
                raise ParseError(f"unknown token {line[pos]!r}", lineno, pos + 1)
            text_tok = m.group(0)
            if text_tok in ("T", "F") or text_tok in _KEYWORDS:
                kind = text_tok
            elif text_tok[0].isalpha() or text_tok[0] == "_":
                kind = "ident"
            elif text_tok in ("&", "|", "~", "!", "(", ")", ",", ";", "=>"):
                kind = text_tok
            else:
                raise ParseError(f"unknown token {text_tok!r}", lineno, pos + 1)
            toks.append(Token(kind, text_tok, lineno, pos + 1))
            pos = m.end()
    return toks


class TermParser:
    """Recursive-descent parser over a token list.

    ``sorted_vars=True`` gives variables a sort from their first character
    (lowercase: object, uppercase: property); otherwise all variables are
    generic.  The logic module reuses this parser for sequent syntax via
    peek/expect.
    """

    def __init__(self, text: str, sorted_vars: bool = False):
        self.tokens = tokenize(text)
        self.pos = 0
        self.sorted_vars = sorted_vars

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"expected {kind!r} but input ended")
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text!r}", tok.line, tok.column)
        return self.next()

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def parse_formula(self) -> Term:
        t = self._parse_meet()
        while (tok := self.peek()) is not None and tok.kind == "|":
            self.next()
            t = Join(t, self._parse_meet())
        return t

    def _parse_meet(self) -> Term:
        t = self._parse_unary()
        while (tok := self.peek()) is not None and tok.kind == "&":
            self.next()
            t = Meet(t, self._parse_unary())
        return t

    def _parse_unary(self) -> Term:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if tok.kind == "~":
            self.next()
            return Neg(self._parse_unary())
        if tok.kind == "!":
            self.next()
            return Opp(self._parse_unary())
        return self._parse_atom()

    def _parse_atom(self) -> Term:
        tok = self.next()
        if tok.kind == "T":
            return TOP
        if tok.kind == "F":
            return BOT
        if tok.kind in ("vee", "wedge"):
            self.expect("(")
            a = self.parse_formula()
            self.expect(",")
            b = self.parse_formula()
            self.expect(")")
            return vee(a, b) if tok.kind == "vee" else wedge(a, b)
        if tok.kind == "(":
            t = self.parse_formula()
            self.expect(")")
            return t
        if tok.kind == "ident":
            if self.sorted_vars:
                sort = OBJECT if tok.text[0].islower() or tok.text[0] == "_" else PROPERTY
            else:
                sort = GENERIC
            return Var(tok.text, sort)
        raise ParseError(f"unexpected token {tok.text!r}", tok.line, tok.column)


def parse_term(text: str, sorted_vars: bool = False) -> Term:
    """Parse a single formula; raises ParseError on trailing input."""
    p = TermParser(text, sorted_vars=sorted_vars)
    t = p.parse_formula()
    if not p.at_end():
        tok = p.peek()
        raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.column)
    return t


def eq(ident: str, lhs: str, rhs: str) -> Equation:
    """Build an Equation from surface syntax (used for the axiom tables)."""
    return Equation(ident, parse_term(lhs), parse_term(rhs))
