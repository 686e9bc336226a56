"""Words over the mapping-class generator alphabet.

The alphabet has four kinds of letters:

* ``Twist(indices)`` -- Dehn twist about the two-sided curve through the
  crosscaps listed in ``indices`` (an even-size subset of 1..g).
* ``Slide(moving, along)`` -- crosscap slide of crosscap ``moving`` along the
  two-sided curve through crosscaps ``{moving, along}``.
* ``TorelliTag`` -- named elements that act trivially on integral homology
  (the separating-curve twists); they participate in words as identities.
* ``BoundaryTwist`` -- twists about curves that only exist on surfaces with
  boundary.  They parse, enumerate and count but have no homology action.

Words multiply by concatenation and are kept freely reduced.  In a written
word the rightmost letter is applied first, matching the composition
convention used throughout: the matrix of ``u v`` is ``M(u) * M(v)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union


class WordSyntaxError(ValueError):
    """Raised by the parser, with a character position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class GenusMismatchError(ValueError):
    """Words over different genus contexts cannot be combined."""


class InvalidSymbolError(ValueError):
    """A generator symbol does not fit the surface it is used on."""


@dataclass(frozen=True)
class Twist:
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(sorted(int(i) for i in self.indices))
        if len(set(idx)) != len(idx):
            raise InvalidSymbolError(f"repeated twist index in {idx}")
        if len(idx) % 2 != 0 or len(idx) < 2:
            raise InvalidSymbolError(
                f"twist needs an even number (>= 2) of crosscap indices, got {idx}"
            )
        if any(i < 1 for i in idx):
            raise InvalidSymbolError(f"twist indices must be >= 1, got {idx}")
        object.__setattr__(self, "indices", idx)


@dataclass(frozen=True)
class Slide:
    moving: int
    along: int

    def __post_init__(self):
        if self.moving == self.along:
            raise InvalidSymbolError("slide requires two distinct crosscap indices")
        if self.moving < 1 or self.along < 1:
            raise InvalidSymbolError("slide indices must be >= 1")


@dataclass(frozen=True)
class TorelliTag:
    kind: str  # "beta" or "gamma"
    indices: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind == "beta":
            if len(self.indices) != 2:
                raise InvalidSymbolError("beta tag takes two indices")
        elif self.kind == "gamma":
            if self.indices:
                raise InvalidSymbolError("gamma tag takes no indices")
        else:
            raise InvalidSymbolError(f"unknown Torelli tag {self.kind!r}")


_BOUNDARY_ARITY = {"delta": 1, "epsilon": 2, "zeta": 2, "zetabar": 2, "eta": 3, "acurve": 2}


@dataclass(frozen=True)
class BoundaryTwist:
    kind: str
    indices: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in _BOUNDARY_ARITY:
            raise InvalidSymbolError(f"unknown boundary curve kind {self.kind!r}")
        if len(self.indices) != _BOUNDARY_ARITY[self.kind]:
            raise InvalidSymbolError(
                f"{self.kind} takes {_BOUNDARY_ARITY[self.kind]} indices, got {self.indices}"
            )
        if any(i < 1 for i in self.indices):
            raise InvalidSymbolError("boundary curve indices must be >= 1")


Symbol = Union[Twist, Slide, TorelliTag, BoundaryTwist]


def validate_symbol(sym: Symbol, genus: int) -> None:
    if isinstance(sym, Twist):
        if sym.indices[-1] > genus:
            raise InvalidSymbolError(f"twist index {sym.indices[-1]} exceeds genus {genus}")
    elif isinstance(sym, Slide):
        if max(sym.moving, sym.along) > genus:
            raise InvalidSymbolError(f"slide index exceeds genus {genus}")
    elif isinstance(sym, TorelliTag):
        if sym.kind == "beta" and max(sym.indices) > genus:
            raise InvalidSymbolError(f"beta index exceeds genus {genus}")
    # boundary indices depend on the boundary count, which words do not carry


def _reduce(letters: Iterable[tuple[Symbol, int]]) -> tuple[tuple[Symbol, int], ...]:
    stack: list[tuple[Symbol, int]] = []
    for sym, exp in letters:
        exp = int(exp)
        if exp == 0:
            continue
        if stack and stack[-1][0] == sym:
            merged = stack[-1][1] + exp
            stack.pop()
            if merged != 0:
                stack.append((sym, merged))
        else:
            stack.append((sym, exp))
    return tuple(stack)


@dataclass(frozen=True)
class MCGWord:
    """Freely reduced word over the generator alphabet, with a genus context."""

    genus: int
    letters: tuple[tuple[Symbol, int], ...]

    @staticmethod
    def identity(genus: int) -> "MCGWord":
        if genus < 1:
            raise InvalidSymbolError("genus must be >= 1")
        return MCGWord(genus, ())

    @staticmethod
    def from_letters(genus: int, letters: Iterable[tuple[Symbol, int]]) -> "MCGWord":
        reduced = _reduce(letters)
        for sym, _ in reduced:
            validate_symbol(sym, genus)
        return MCGWord(genus, reduced)

    def _check(self, other: "MCGWord") -> None:
        if self.genus != other.genus:
            raise GenusMismatchError(f"genus {self.genus} vs {other.genus}")

    def __mul__(self, other: "MCGWord") -> "MCGWord":
        if not isinstance(other, MCGWord):
            return NotImplemented
        self._check(other)
        return MCGWord(self.genus, _reduce(self.letters + other.letters))

    def inverse(self) -> "MCGWord":
        return MCGWord(self.genus, tuple((s, -e) for s, e in reversed(self.letters)))

    def __pow__(self, e: int) -> "MCGWord":
        if e == 0:
            return MCGWord.identity(self.genus)
        base = self if e > 0 else self.inverse()
        out = base
        for _ in range(abs(e) - 1):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return not self.letters

    def length(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def has_boundary_letters(self) -> bool:
        return any(isinstance(s, BoundaryTwist) for s, _ in self.letters)

    def __str__(self) -> str:
        return format_word(self)


def word(genus: int, *items) -> MCGWord:
    """Convenience builder: items are symbols or (symbol, exponent) pairs."""
    letters = []
    for item in items:
        if isinstance(item, tuple) and len(item) == 2 and isinstance(item[1], int):
            letters.append(item)
        else:
            letters.append((item, 1))
    return MCGWord.from_letters(genus, letters)


def commutator(a: MCGWord, b: MCGWord) -> MCGWord:
    """[a, b] = a b a^-1 b^-1."""
    a._check(b)
    return a * b * a.inverse() * b.inverse()


def conjugate(a: MCGWord, b: MCGWord) -> MCGWord:
    """b a b^-1 (apply the conjugator last)."""
    a._check(b)
    return b * a * b.inverse()


# ---------------------------------------------------------------------------
# text grammar
#
#   word  := item*                      (whitespace concatenation)
#   item  := atom ('^' INT)?
#   atom  := NAME '(' ints ')' | 'Gamma' | '[' word ',' word ']'
#          | 'conj' '(' word ',' word ')'
#
# Generator names: T (twist), Y (slide), A B C D (named families, which
# expand to their realization words), Bname/Gamma (Torelli tags), and
# Delta/Eps/Zeta/Zbar/Eta/Acurve (boundary twists).  Integer argument lists
# accept ',' or ';' separators; the canonical output uses ';' before the
# final index of C, Eta and Acurve.
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z]+)|(?P<int>-?\d+)|(?P<punct>[-\^\(\)\[\],;]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            if text[pos:].strip() == "":
                break
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise WordSyntaxError(f"unexpected character {text[bad]!r}", bad)
        if m.lastgroup is None:  # pure whitespace tail
            break
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, genus: int):
        self.text = text
        self.genus = genus
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eof", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_punct(self, value: str):
        kind, val, pos = self.next()
        if kind != "punct" or val != value:
            raise WordSyntaxError(f"expected {value!r}, found {val!r}", pos)

    def parse_int(self) -> int:
        kind, val, pos = self.next()
        if kind != "int":
            raise WordSyntaxError(f"expected integer, found {val!r}", pos)
        return int(val)

    def parse_int_args(self) -> list[int]:
        self.expect_punct("(")
        args = [self.parse_int()]
        while True:
            kind, val, pos = self.peek()
            if kind == "punct" and val in (",", ";"):
                self.next()
                args.append(self.parse_int())
            elif kind == "punct" and val == ")":
                self.next()
                return args
            else:
                raise WordSyntaxError(f"expected ',', ';' or ')', found {val!r}", pos)

    def parse_word(self, stops: frozenset[str]) -> MCGWord:
        out = MCGWord.identity(self.genus)
        while True:
            kind, val, pos = self.peek()
            if kind == "eof" or (kind == "punct" and val in stops):
                return out
            piece = self.parse_atom()
            kind, val, _ = self.peek()
            exp = 1
            if kind == "punct" and val == "^":
                self.next()
                exp = self.parse_int()
            out = out * (piece ** exp)

    def parse_atom(self) -> MCGWord:
        kind, val, pos = self.next()
        if kind == "punct" and val == "[":
            u = self.parse_word(frozenset(","))
            self.expect_punct(",")
            v = self.parse_word(frozenset("]"))
            self.expect_punct("]")
            return commutator(u, v)
        if kind != "name":
            raise WordSyntaxError(f"expected generator name, found {val!r}", pos)
        if val == "conj":
            self.expect_punct("(")
            u = self.parse_word(frozenset(","))
            self.expect_punct(",")
            v = self.parse_word(frozenset(")"))
            self.expect_punct(")")
            return conjugate(u, v)
        if val == "Gamma":
            return word(self.genus, TorelliTag("gamma"))
        try:
            return self._named_atom(val, pos)
        except InvalidSymbolError as exc:
            raise WordSyntaxError(str(exc), pos) from None

    def _named_atom(self, name: str, pos: int) -> MCGWord:
        g = self.genus
        if name == "T":
            return word(g, Twist(tuple(self.parse_int_args())))
        if name == "Y":
            args = self.parse_int_args()
            if len(args) != 2:
                raise WordSyntaxError("Y takes two indices", pos)
            return word(g, Slide(args[0], args[1]))
        if name == "Bname":
            args = self.parse_int_args()
            return word(g, TorelliTag("beta", tuple(args)))
        if name in ("A", "B", "C", "D"):
            from . import families

            args = self.parse_int_args()
            return families.named_element(name, tuple(args), g).word
        boundary = {
            "Delta": "delta",
            "Eps": "epsilon",
            "Zeta": "zeta",
            "Zbar": "zetabar",
            "Eta": "eta",
            "Acurve": "acurve",
        }
        if name in boundary:
            args = self.parse_int_args()
            return word(g, BoundaryTwist(boundary[name], tuple(args)))
        raise WordSyntaxError(f"unknown generator name {name!r}", pos)


def parse(text: str, genus: int) -> MCGWord:
    parser = _Parser(text, genus)
    result = parser.parse_word(frozenset())
    kind, val, pos = parser.peek()
    if kind != "eof":
        raise WordSyntaxError(f"unexpected {val!r}", pos)
    return result


def _format_symbol(sym: Symbol) -> str:
    if isinstance(sym, Twist):
        return "T(" + ",".join(str(i) for i in sym.indices) + ")"
    if isinstance(sym, Slide):
        return f"Y({sym.moving},{sym.along})"
    if isinstance(sym, TorelliTag):
        if sym.kind == "gamma":
            return "Gamma"
        return "Bname(" + ",".join(str(i) for i in sym.indices) + ")"
    if isinstance(sym, BoundaryTwist):
        name = {
            "delta": "Delta",
            "epsilon": "Eps",
            "zeta": "Zeta",
            "zetabar": "Zbar",
            "eta": "Eta",
            "acurve": "Acurve",
        }[sym.kind]
        idx = sym.indices
        if sym.kind in ("eta", "acurve"):
            head = ",".join(str(i) for i in idx[:-1])
            return f"{name}({head};{idx[-1]})"
        return name + "(" + ",".join(str(i) for i in idx) + ")"
    raise TypeError(f"not a generator symbol: {sym!r}")


def format_word(w: MCGWord) -> str:
    """Inverse of :func:`parse` up to free reduction; the empty word prints as ''."""
    parts = []
    for sym, exp in w.letters:
        text = _format_symbol(sym)
        if exp != 1:
            text += f"^{exp}"
        parts.append(text)
    return " ".join(parts)
