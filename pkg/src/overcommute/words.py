"""Freely reduced words in the free group F.

Generators are either named symbols (finite presentations such as
``<a, b | a^p b^-q>``) or Steinberg symbols ``x_alpha(t)`` carrying an exact
field parameter.  Two Steinberg generators are the same letter exactly when
the roots agree and the parameters are equal as field elements; nothing
else is identified, so ``x(0)`` is an honest generator of F.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .exactfield import FieldElem, const, parse_field

__all__ = [
    "Named", "Stein", "Letter", "Word", "EMPTY",
    "w_mul", "w_inv", "w_conj", "w_comm", "w_map", "named", "xa",
    "parse_word", "product", "UnmappedGenerator",
]


class UnmappedGenerator(KeyError):
    pass


@dataclass(frozen=True, eq=False)
class Named:
    symbol: str

    def __eq__(self, other):
        return isinstance(other, Named) and other.symbol == self.symbol

    def __hash__(self):
        return hash(("N", self.symbol))

    def serialize(self) -> str:
        return self.symbol


@dataclass(frozen=True, eq=False)
class Stein:
    alpha: int
    t: FieldElem

    def __post_init__(self):
        if self.alpha not in (1, -1):
            raise ValueError("alpha must be +1 or -1")

    def __eq__(self, other):
        if not isinstance(other, Stein) or other.alpha != self.alpha:
            return False
        return self.t is other.t or self.t.equals(other.t)

    def __hash__(self):
        return hash(("S", self.alpha, self.t))

    def serialize(self) -> str:
        return f"x({'+1' if self.alpha == 1 else '-1'}, {self.t.serialize()})"


Generator = Named | Stein


@dataclass(frozen=True)
class Letter:
    gen: Generator
    sign: int

    def inverse(self) -> Letter:
        return Letter(self.gen, -self.sign)

    def cancels(self, other: Letter) -> bool:
        return self.sign == -other.sign and self.gen == other.gen

    def serialize(self) -> str:
        s = self.gen.serialize()
        return s if self.sign == 1 else s + "^-1"


def _reduce(letters: Iterable[Letter], stack: list[Letter] | None = None) -> list[Letter]:
    stack = [] if stack is None else stack
    for l in letters:
        if stack and stack[-1].cancels(l):
            stack.pop()
        else:
            stack.append(l)
    return stack


class Word:
    """A freely reduced word; construction always reduces."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = (), reduced: bool = False):
        self.letters = tuple(letters) if reduced else tuple(_reduce(letters))
        self._hash = None

    @classmethod
    def gen(cls, g: Generator, power: int = 1) -> Word:
        sign = 1 if power >= 0 else -1
        return cls([Letter(g, sign)] * abs(power), reduced=True)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: Word) -> Word:
        if not isinstance(other, Word):
            return NotImplemented
        return Word(_reduce(other.letters, list(self.letters)), reduced=True)

    def inverse(self) -> Word:
        return Word([l.inverse() for l in reversed(self.letters)], reduced=True)

    def __invert__(self):
        return self.inverse()

    def __pow__(self, k: int) -> Word:
        if k < 0:
            return self.inverse() ** (-k)
        out = EMPTY
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        if len(self.letters) != len(other.letters):
            return False
        return all(a.sign == b.sign and a.gen == b.gen
                   for a, b in zip(self.letters, other.letters))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(hash(l) for l in self.letters))
        return self._hash

    def generators(self) -> list[Generator]:
        seen: list[Generator] = []
        for l in self.letters:
            if l.gen not in seen:
                seen.append(l.gen)
        return seen

    def serialize(self) -> str:
        if not self.letters:
            return "1"
        return "*".join(l.serialize() for l in self.letters)

    def __str__(self):
        return self.serialize()

    def __repr__(self):
        return f"Word({self.serialize()})"


EMPTY = Word((), reduced=True)


def named(symbol: str, power: int = 1) -> Word:
    return Word.gen(Named(symbol), power)


def xa(alpha: int, t, power: int = 1, vars=()) -> Word:
    """The word ``x_alpha(t)^power``."""
    if not isinstance(t, FieldElem):
        t = const(t, vars)
    return Word.gen(Stein(alpha, t), power)


def product(words: Iterable[Word]) -> Word:
    stack: list[Letter] = []
    for w in words:
        _reduce(w.letters, stack)
    return Word(stack, reduced=True)


def w_mul(a: Word, b: Word) -> Word:
    return a * b


def w_inv(a: Word) -> Word:
    return a.inverse()


def w_conj(g: Word, w: Word) -> Word:
    """g w g^-1"""
    return product((g, w, g.inverse()))


def w_comm(a: Word, b: Word) -> Word:
    """[a, b] = a b a^-1 b^-1"""
    return product((a, b, a.inverse(), b.inverse()))


def w_map(a: Word, f: Mapping[Generator, Word] | Callable[[Generator], Word]) -> Word:
    """Homomorphic image of ``a`` under the letter assignment ``f``."""
    images: dict = {}
    stack: list[Letter] = []
    for l in a.letters:
        img = images.get(l.gen) if not isinstance(l.gen, Stein) else None
        if img is None:
            try:
                img = f(l.gen) if callable(f) else f[l.gen]
            except KeyError as exc:
                raise UnmappedGenerator(l.gen.serialize()) from exc
            if isinstance(l.gen, Named):
                images[l.gen] = img
        _reduce(img.letters if l.sign == 1 else img.inverse().letters, stack)
    return Word(stack, reduced=True)


# -- parser ------------------------------------------------------------------------
#   word   := factor ('*' factor)*
#   factor := atom ('^' int)?
#   atom   := '1' | ident | 'x(' sign ',' field ')' | '[' word ',' word ']'
#           | 'conj(' word ',' word ')' | '(' word ')'

class _WordParser:
    def __init__(self, text: str, vars):
        self.s = text
        self.i = 0
        self.vars = tuple(vars) if vars is not None else None

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.ws()
        return self.s[self.i] if self.i < len(self.s) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise SyntaxError(f"expected {ch!r} at position {self.i} in {self.s!r}")
        self.i += 1

    def ident(self) -> str:
        self.ws()
        j = self.i
        while j < len(self.s) and (self.s[j].isalnum() or self.s[j] == "_"):
            j += 1
        if j == self.i:
            raise SyntaxError(f"expected identifier at position {self.i} in {self.s!r}")
        name = self.s[self.i:j]
        self.i = j
        return name

    def integer(self) -> int:
        self.ws()
        j = self.i
        if j < len(self.s) and self.s[j] in "+-":
            j += 1
        while j < len(self.s) and self.s[j].isdigit():
            j += 1
        txt = self.s[self.i:j]
        if not txt.lstrip("+-"):
            raise SyntaxError(f"expected integer at position {self.i} in {self.s!r}")
        self.i = j
        return int(txt)

    def word(self) -> Word:
        parts = [self.factor()]
        while self.peek() == "*":
            self.i += 1
            parts.append(self.factor())
        return product(parts)

    def factor(self) -> Word:
        base = self.atom()
        if self.peek() == "^":
            self.i += 1
            base = base ** self.integer()
        return base

    def field_arg(self) -> FieldElem:
        # scan to the matching ')' at depth 0
        self.ws()
        depth, j = 0, self.i
        while j < len(self.s):
            c = self.s[j]
            if c == "(":
                depth += 1
            elif c == ")":
                if depth == 0:
                    break
                depth -= 1
            j += 1
        text = self.s[self.i:j]
        self.i = j
        return parse_field(text, self.vars if self.vars is not None else None)

    def atom(self) -> Word:
        c = self.peek()
        if c == "(":
            self.i += 1
            w = self.word()
            self.expect(")")
            return w
        if c == "[":
            self.i += 1
            a = self.word()
            self.expect(",")
            b = self.word()
            self.expect("]")
            return w_comm(a, b)
        if c == "1":
            self.i += 1
            return EMPTY
        name = self.ident()
        if name == "x" and self.peek() == "(":
            self.i += 1
            alpha = self.integer()
            self.expect(",")
            t = self.field_arg()
            self.expect(")")
            return Word.gen(Stein(alpha, t))
        if name == "conj" and self.peek() == "(":
            self.i += 1
            g = self.word()
            self.expect(",")
            w = self.word()
            self.expect(")")
            return w_conj(g, w)
        return named(name)


def parse_word(text: str, vars=None) -> Word:
    """Parse the word grammar, e.g. ``"[x(+1, s), x(+1, t)]"`` or ``"a^2*b^-3"``.

    Field parameters are parsed over ``vars`` (inferred per parameter when
    omitted, which is only safe for constant or single-variable parameters).
    """
    p = _WordParser(text, vars)
    w = p.word()
    if p.peek():
        raise SyntaxError(f"trailing input at position {p.i} in {text!r}")
    return w
