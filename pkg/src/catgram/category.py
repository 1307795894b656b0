"""Categories of basic categorial grammars.

A category is a primitive (:class:`Prim`), a right division ``A/B``
(:class:`RightDiv`) or a left division ``B\\A`` (:class:`LeftDiv`).  Values
are immutable and compare structurally; hashes are computed once.

Text syntax::

    Cat  := Atom | Atom '/' Atom | Atom '\\' Atom
    Atom := Name | '(' Cat ')'

Both operators are binary and non-associative, so ``p/q/r`` is rejected.
Strings of categories are written ``C1; C2; ...; Cn``.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Sequence, Union

from .errors import ParseError, ReservedNameError

__all__ = [
    "Category",
    "Prim",
    "RightDiv",
    "LeftDiv",
    "SENTINEL_LEFT",
    "SENTINEL_RIGHT",
    "parse_category",
    "parse_category_string",
    "format_category",
    "format_category_string",
    "numerators",
    "denominators",
    "count",
    "count_vector",
    "primitives",
    "phi",
    "psi",
    "depth",
]


class Category:
    """Base class.  Instances are treated as immutable values: never assign
    to their attributes after construction (the hash is cached)."""

    __slots__ = ("_hash",)

    def __str__(self) -> str:
        return format_category(self)

    # division sugar: p / q and q.under(p) build RightDiv / LeftDiv
    def __truediv__(self, den: Category) -> RightDiv:
        return RightDiv(self, den)

    def under(self, num: Category) -> LeftDiv:
        """``self.under(a)`` is ``self\\a``."""
        return LeftDiv(self, num)


class Prim(Category):
    """A primitive category.

    Names starting with ``_`` are reserved for machine-generated primitives;
    ``_l`` and ``_r`` are the two sentinels.
    """

    __slots__ = ("name",)

    def __init__(self, name: str):
        if not name:
            raise ValueError("primitive name must be non-empty")
        self.name = name
        self._hash = hash(("p", name))

    @property
    def origin(self) -> str:
        if self.name in ("_l", "_r"):
            return "sentinel"
        if self.name.startswith("_"):
            return "auxiliary"
        return "user"

    def __eq__(self, other):
        return isinstance(other, Prim) and other.name == self.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Prim({self.name!r})"


class RightDiv(Category):
    """``num/den``: combines with a following ``den`` into ``num``."""

    __slots__ = ("num", "den")

    def __init__(self, num: Category, den: Category):
        self.num = num
        self.den = den
        self._hash = hash(("/", num._hash, den._hash))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, RightDiv)
            and other._hash == self._hash
            and other.num == self.num
            and other.den == self.den
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"RightDiv({self.num!r}, {self.den!r})"


class LeftDiv(Category):
    """``den\\num``: combines with a preceding ``den`` into ``num``."""

    __slots__ = ("den", "num")

    def __init__(self, den: Category, num: Category):
        self.den = den
        self.num = num
        self._hash = hash(("\\", den._hash, num._hash))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, LeftDiv)
            and other._hash == self._hash
            and other.num == self.num
            and other.den == self.den
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"LeftDiv({self.den!r}, {self.num!r})"


SENTINEL_LEFT = Prim("_l")
SENTINEL_RIGHT = Prim("_r")

CategoryLike = Union[Category, str]

# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:([A-Za-z0-9_][A-Za-z0-9_.']*)|(.))")
NAME_RE = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.']*\Z")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        name, sym = m.group(1), m.group(2)
        if name is not None:
            tokens.append(("name", name, m.start(1)))
        elif sym in "()/\\":
            tokens.append((sym, sym, m.start(2)))
        else:
            raise ParseError(f"unexpected character {sym!r} at offset {m.start(2)}")
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, allow_reserved: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.allow_reserved = allow_reserved

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def fail(self, msg):
        raise ParseError(f"{msg} in category {self.text!r}")

    def cat(self) -> Category:
        left = self.atom()
        op = self.peek()
        if op not in ("/", "\\"):
            return left
        self.pos += 1
        right = self.atom()
        if self.peek() in ("/", "\\"):
            self.fail("chained division needs parentheses")
        return RightDiv(left, right) if op == "/" else LeftDiv(left, right)

    def atom(self) -> Category:
        kind = self.peek()
        if kind == "name":
            name = self.tokens[self.pos][1]
            self.pos += 1
            if name.startswith("_") and not self.allow_reserved:
                raise ReservedNameError(
                    f"primitive name {name!r} is reserved (leading '_')"
                )
            return Prim(name)
        if kind == "(":
            self.pos += 1
            inner = self.cat()
            if self.peek() != ")":
                self.fail("unbalanced parenthesis")
            self.pos += 1
            return inner
        if kind is None:
            self.fail("unexpected end of input")
        self.fail(f"unexpected {self.tokens[self.pos][1]!r}")


def parse_category(text: str, *, allow_reserved: bool = False) -> Category:
    """Parse category text such as ``r\\(p/q)``.

    ``allow_reserved`` admits ``_``-prefixed names, as produced by the gadget
    builders; user input is rejected with :class:`ReservedNameError`.
    """
    if not text or not text.strip():
        raise ParseError("empty category")
    p = _Parser(text, allow_reserved)
    c = p.cat()
    if p.pos != len(p.tokens):
        p.fail(f"trailing {p.tokens[p.pos][1]!r}")
    return c


def parse_category_string(text: str, *, allow_reserved: bool = False) -> tuple[Category, ...]:
    """Parse ``C1; C2; ...`` into a tuple of categories.

    A single trailing ``;`` is tolerated so that one-per-line output with
    terminators reads back.
    """
    parts = text.split(";")
    if len(parts) > 1 and not parts[-1].strip():
        parts.pop()
    if any(not p.strip() for p in parts):
        raise ParseError("empty item in category string")
    return tuple(parse_category(p, allow_reserved=allow_reserved) for p in parts)


def as_category(c: CategoryLike) -> Category:
    return parse_category(c, allow_reserved=True) if isinstance(c, str) else c


def as_string(s: Union[str, Iterable[CategoryLike]]) -> tuple[Category, ...]:
    if isinstance(s, str):
        return parse_category_string(s, allow_reserved=True)
    return tuple(as_category(c) for c in s)


# ---------------------------------------------------------------- printing


def _fmt(c: Category, nested: bool) -> str:
    if isinstance(c, Prim):
        return c.name
    if isinstance(c, RightDiv):
        body = f"{_fmt(c.num, True)}/{_fmt(c.den, True)}"
    else:
        body = f"{_fmt(c.den, True)}\\{_fmt(c.num, True)}"
    return f"({body})" if nested else body


def format_category(c: Category) -> str:
    return _fmt(c, False)


def format_category_string(s: Sequence[Category], sep: str = "; ") -> str:
    return sep.join(format_category(c) for c in s)


# ---------------------------------------------------------------- queries


def numerators(x: Union[Category, Sequence[Category]]) -> set[Category]:
    """Categories occurring as numerators along the numerator spine.

    For a sequence, the union over its items.
    """
    if not isinstance(x, Category):
        out: set[Category] = set()
        for c in x:
            out |= numerators(c)
        return out
    out = set()
    while not isinstance(x, Prim):
        out.add(x.num)
        x = x.num
    return out


def denominators(x: Union[Category, Sequence[Category]]) -> set[Category]:
    if not isinstance(x, Category):
        out: set[Category] = set()
        for c in x:
            out |= denominators(c)
        return out
    out = set()
    while not isinstance(x, Prim):
        out.add(x.den)
        x = x.num
    return out


def count(p: Prim, x: Union[Category, Sequence[Category]]) -> int:
    """Occurrences of ``p`` as a numerator minus occurrences as a denominator."""
    if not isinstance(x, Category):
        return sum(count(p, c) for c in x)
    if isinstance(x, Prim):
        return 1 if x == p else 0
    return count(p, x.num) - count(p, x.den)


def count_vector(x: Union[Category, Sequence[Category]]) -> dict[Prim, int]:
    """All non-zero counts at once: ``count_vector(x)[p] == count(p, x)``."""
    acc: dict[Prim, int] = {}
    stack = [(c, 1) for c in x] if not isinstance(x, Category) else [(x, 1)]
    while stack:
        c, sign = stack.pop()
        if isinstance(c, Prim):
            acc[c] = acc.get(c, 0) + sign
        else:
            stack.append((c.num, sign))
            stack.append((c.den, -sign))
    return {p: n for p, n in acc.items() if n}


def primitives(x: Union[Category, Sequence[Category]]) -> set[Prim]:
    if not isinstance(x, Category):
        out: set[Prim] = set()
        for c in x:
            out |= primitives(c)
        return out
    if isinstance(x, Prim):
        return {x}
    return primitives(x.num) | primitives(x.den)


def subterms(c: Category) -> Iterator[Category]:
    yield c
    if not isinstance(c, Prim):
        yield from subterms(c.num)
        yield from subterms(c.den)


def depth(c: Category) -> int:
    if isinstance(c, Prim):
        return 0
    return 1 + max(depth(c.num), depth(c.den))


def phi(c: Category) -> Category:
    """Split every primitive ``p`` into ``p/p``, homomorphically."""
    if isinstance(c, Prim):
        return RightDiv(c, c)
    if isinstance(c, RightDiv):
        return RightDiv(phi(c.num), phi(c.den))
    return LeftDiv(phi(c.den), phi(c.num))


def psi(c: Category) -> Category:
    """``_l\\(phi(c)/_r)``."""
    return LeftDiv(SENTINEL_LEFT, RightDiv(phi(c), SENTINEL_RIGHT))
