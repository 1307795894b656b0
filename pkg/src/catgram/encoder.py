"""Encode a 2-GNF context-free grammar as a unique-assignment categorial grammar.

Each rule ``X -> a``, ``X -> a Y``, ``X -> a Y Z`` gives letter ``a`` the rule
category ``X``, ``X/Y`` or ``(X/Z)/Y``.  Letter ``a`` is then mapped by the
homomorphism to fresh symbols spelling ``_l; w(A1..Am); _r``, one symbol per
position, each symbol carrying exactly one category.  A word belongs to the
grammar iff its image reduces to ``S/S``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .category import (
    SENTINEL_LEFT,
    SENTINEL_RIGHT,
    Category,
    Prim,
    RightDiv,
    count_vector,
    format_category,
    phi,
    primitives,
)
from .cfg import Cfg, is_gnf2, to_gnf2
from .errors import NotGnf2, UncoveredTerminal, UnknownSymbol, UnknownTerminal
from .gadgets import build_w
from .reduction import Chart, Universe, reducible_to

__all__ = [
    "UcaGrammar",
    "Homomorphism",
    "Encoding",
    "rule_category",
    "rule_categories",
    "encode_grammar",
    "uca_member",
    "member_via_encoding",
    "encoding_for",
]


@dataclass
class UcaGrammar:
    """Categorial grammar with exactly one category per symbol."""

    alphabet: tuple[str, ...]
    assignment: dict[str, Category]
    target: Category
    _universe: Optional[Universe] = field(default=None, init=False, repr=False, compare=False)

    @property
    def primitives(self) -> set[Prim]:
        return primitives(list(self.assignment.values())) | primitives(self.target)

    @property
    def universe(self) -> Universe:
        """Numerator closure of every assigned category, shared by all queries."""
        if self._universe is None:
            self._universe = Universe(self.assignment[s] for s in self.alphabet)
        return self._universe

    def categories(self, word: Sequence[str]) -> list[Category]:
        out = []
        for s in word:
            if s not in self.assignment:
                raise UnknownSymbol(f"{s!r} is not in the alphabet")
            out.append(self.assignment[s])
        return out


@dataclass(frozen=True)
class Homomorphism:
    map: dict

    def __call__(self, word: Sequence[str]) -> tuple[str, ...]:
        out: list[str] = []
        for a in word:
            if a not in self.map:
                raise UnknownTerminal(f"{a!r} has no image")
            out.extend(self.map[a])
        return tuple(out)


def rule_category(rule) -> Category:
    """``X``, ``X/Y`` or ``(X/Z)/Y`` for ``X -> a``, ``X -> a Y``, ``X -> a Y Z``."""
    x = Prim(rule.lhs)
    tail = [Prim(s) for s in rule.rhs[1:]]
    if not tail:
        return x
    if len(tail) == 1:
        return RightDiv(x, tail[0])
    y, z = tail
    return RightDiv(RightDiv(x, z), y)


def rule_categories(g: Cfg) -> dict[str, list[Category]]:
    """Per terminal, its rule categories in rule order without repeats."""
    out: dict[str, list[Category]] = {a: [] for a in g.terminals}
    for r in g.rules:
        c = rule_category(r)
        cats = out[r.rhs[0]]
        if c not in cats:
            cats.append(c)
    return out


@dataclass
class Encoding:
    """Result of :func:`encode_grammar`."""

    grammar: Cfg
    uca: UcaGrammar
    h: Homomorphism
    letter_categories: dict[str, list[Category]]
    provenance: dict[str, dict]

    @property
    def nonterminal_targets(self) -> dict[str, Category]:
        return {x: phi(Prim(x)) for x in self.grammar.nonterminals}

    def image(self, word: Sequence[str]) -> list[Category]:
        """Category string assigned to ``h(word)``."""
        return self.uca.categories(self.h(word))

    def accepts(self, word: Sequence[str], target: Optional[Category] = None) -> bool:
        target = self.uca.target if target is None else target
        self._check_word(word)
        return reducible_to(self.image(word), target, universe=self.uca.universe)

    def _check_word(self, word):
        if not word:
            raise ValueError("word must be non-empty")
        for a in word:
            if a not in self.h.map:
                raise UnknownTerminal(f"{a!r} is not a terminal of the grammar")

    def accepts_all(self, words: Iterable[Sequence[str]], target: Optional[Category] = None) -> list[bool]:
        """Decide many words, sharing chart columns between common prefixes.

        Same answers as calling :meth:`accepts` per word.
        """
        target = self.uca.target if target is None else target
        words = [tuple(w) for w in words]
        for w in words:
            self._check_word(w)
        results: list[bool] = [False] * len(words)
        chart = Chart(self.uca.universe)
        blocks = {a: self.uca.categories(syms) for a, syms in self.h.map.items()}
        stack: list[tuple[str, int]] = []  # (letter, chart length before it)
        for idx in sorted(range(len(words)), key=lambda i: words[i]):
            w = words[idx]
            common = 0
            while common < len(stack) and common < len(w) and stack[common][0] == w[common]:
                common += 1
            if common < len(stack):
                chart.truncate(stack[common][1])
                del stack[common:]
            for a in w[common:]:
                stack.append((a, len(chart)))
                chart.extend(blocks[a])
            results[idx] = chart.has(target)
        return results

    def bundle(self) -> dict:
        """Machine-readable description (see README for the schema)."""
        prims = sorted(self.uca.primitives, key=lambda p: (p.origin != "user", p.name))
        return {
            "alphabet": [
                {"symbol": s, "category": format_category(self.uca.assignment[s])}
                for s in self.uca.alphabet
            ],
            "target": format_category(self.uca.target),
            "homomorphism": {a: list(syms) for a, syms in self.h.map.items()},
            "primitives": [{"name": p.name, "origin": p.origin} for p in prims],
            "provenance": self.provenance,
        }


def encode_grammar(g: Cfg) -> Encoding:
    """Build the unique-assignment grammar and homomorphism for a 2-GNF grammar."""
    if not is_gnf2(g):
        raise NotGnf2("grammar is not in 2-GNF; convert it with to_gnf2 first")
    per_letter = rule_categories(g)
    uncovered = [a for a, cats in per_letter.items() if not cats]
    if uncovered:
        raise UncoveredTerminal(f"terminals without rules have no image: {', '.join(uncovered)}")

    alphabet: list[str] = []
    assignment: dict[str, Category] = {}
    provenance: dict[str, dict] = {}
    hmap: dict[str, tuple[str, ...]] = {}
    for a in g.terminals:
        w = build_w(per_letter[a], scope=(a,))
        items = [SENTINEL_LEFT, *w.items, SENTINEL_RIGHT]
        sources = [None, *w.sources, None]
        syms = []
        for pos, (cat, src) in enumerate(zip(items, sources)):
            sym = f"{a}.{pos}"
            syms.append(sym)
            alphabet.append(sym)
            assignment[sym] = cat
            info = {"letter": a, "position": pos}
            info.update(src.describe() if src else {"gadget": "sentinel", "params": []})
            provenance[sym] = info
        hmap[a] = tuple(syms)

    uca = UcaGrammar(tuple(alphabet), assignment, phi(Prim(g.start)))
    return Encoding(g, uca, Homomorphism(hmap), per_letter, provenance)


def uca_member(g: UcaGrammar, word: Sequence[str]) -> bool:
    """Whether the (unique) category string of ``word`` reduces to the target."""
    if not word:
        raise ValueError("word must be non-empty")
    cats = g.categories(word)
    if count_vector(cats) != count_vector(g.target):
        return False
    return reducible_to(cats, g.target, universe=g.universe)


@lru_cache(maxsize=32)
def _encoding_for(g: Cfg) -> Encoding:
    return encode_grammar(g if is_gnf2(g) else to_gnf2(g))


def encoding_for(g: Cfg) -> Encoding:
    """Encoding of ``g``, converting to 2-GNF first when needed (cached)."""
    return _encoding_for(g)


def member_via_encoding(g: Cfg, word: Sequence[str]) -> bool:
    enc = encoding_for(g)
    enc._check_word(tuple(word))
    return uca_member(enc.uca, enc.h(word))
