"""Context-free grammars: parsing, CYK membership and normal forms.

Grammar file format::

    # comment
    start: S
    terminals: a b c        (optional; declares terminals no rule uses)
    S -> a S B | a B
    B -> b

Terminals start with a lowercase letter or digit, nonterminals with an
uppercase letter.  Empty alternatives are rejected: all languages here are
subsets of the non-empty strings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import EmptyLanguage, EmptyRhs, ParseError, UndeclaredSymbol, UnknownTerminal

__all__ = [
    "Cfg",
    "Rule",
    "parse_cfg",
    "format_cfg",
    "is_nonterminal",
    "is_terminal",
    "remove_useless",
    "to_cnf",
    "to_gnf2",
    "is_gnf2",
    "is_cnf",
    "cyk_member",
    "member_of",
    "parse_word",
]

NONTERMINAL_RE = re.compile(r"[A-Z][A-Za-z0-9_']*\Z")
TERMINAL_RE = re.compile(r"[a-z0-9][A-Za-z0-9_']*\Z")


def is_nonterminal(sym: str) -> bool:
    return bool(NONTERMINAL_RE.match(sym))


def is_terminal(sym: str) -> bool:
    return bool(TERMINAL_RE.match(sym))


@dataclass(frozen=True)
class Rule:
    lhs: str
    rhs: tuple[str, ...]

    def __str__(self):
        return f"{self.lhs} -> {' '.join(self.rhs)}"


@dataclass(frozen=True)
class Cfg:
    """An epsilon-free context-free grammar; rule order is significant."""

    terminals: tuple[str, ...]
    nonterminals: tuple[str, ...]
    rules: tuple[Rule, ...]
    start: str

    def __post_init__(self):
        terms, nts = set(self.terminals), set(self.nonterminals)
        if terms & nts:
            raise ParseError(f"symbols used both as terminal and nonterminal: {sorted(terms & nts)}")
        if self.start not in nts:
            raise UndeclaredSymbol(f"start symbol {self.start} has no rules")
        for r in self.rules:
            if not r.rhs:
                raise EmptyRhs(f"empty right-hand side for {r.lhs}: languages are epsilon-free")
            if r.lhs not in nts:
                raise UndeclaredSymbol(f"undeclared nonterminal {r.lhs}")
            for s in r.rhs:
                if s not in terms and s not in nts:
                    raise UndeclaredSymbol(f"undeclared symbol {s} in rule {r}")

    @classmethod
    def from_rules(cls, rules: Iterable, start: Optional[str] = None, terminals: Iterable[str] = ()) -> "Cfg":
        """Build from ``(lhs, rhs)`` pairs; rhs may be a sequence or a space-separated string.

        Symbols are classified by their spelling.  Nonterminals are those with
        rules plus any that merely occur (so that a later check can report
        them as undeclared).
        """
        rs = []
        for lhs, rhs in rules:
            if isinstance(rhs, str):
                rhs = rhs.split()
            rs.append(Rule(lhs, tuple(rhs)))
        if start is None:
            start = rs[0].lhs
        nts = _ordered(r.lhs for r in rs)
        for r in rs:
            for s in r.rhs:
                if not is_nonterminal(s) and not is_terminal(s):
                    raise ParseError(f"invalid symbol {s!r}")
                if is_nonterminal(s) and s not in nts:
                    raise UndeclaredSymbol(f"nonterminal {s} in rule {r} has no rules")
        terms = _ordered(list(terminals) + [s for r in rs for s in r.rhs if is_terminal(s)])
        return cls(tuple(terms), tuple(nts), tuple(rs), start)

    def rules_for(self, lhs: str) -> list[Rule]:
        return [r for r in self.rules if r.lhs == lhs]

    def with_start(self, start: str) -> "Cfg":
        return Cfg(self.terminals, self.nonterminals, self.rules, start)

    def __str__(self):
        return format_cfg(self)


def _ordered(it: Iterable[str]) -> list[str]:
    return list(dict.fromkeys(it))


# ---------------------------------------------------------------- text format


def parse_cfg(text: str) -> Cfg:
    start = None
    declared_terms: list[str] = []
    rules: list[tuple[str, tuple[str, ...]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("start:"):
            start = line[len("start:"):].strip()
            if not is_nonterminal(start):
                raise ParseError(f"line {lineno}: start symbol {start!r} is not a nonterminal")
            continue
        if line.startswith("terminals:"):
            for t in line[len("terminals:"):].split():
                if not is_terminal(t):
                    raise ParseError(f"line {lineno}: {t!r} is not a terminal")
                declared_terms.append(t)
            continue
        if "->" not in line:
            raise ParseError(f"line {lineno}: expected 'X -> ...'")
        lhs, rhs = line.split("->", 1)
        lhs = lhs.strip()
        if not is_nonterminal(lhs):
            raise ParseError(f"line {lineno}: left-hand side {lhs!r} is not a nonterminal")
        for alt in rhs.split("|"):
            syms = alt.split()
            if not syms:
                raise EmptyRhs(
                    f"line {lineno}: empty alternative for {lhs}; "
                    "epsilon rules are not allowed (languages exclude the empty string)"
                )
            for s in syms:
                if not (is_terminal(s) or is_nonterminal(s)):
                    raise ParseError(f"line {lineno}: invalid symbol {s!r}")
            rules.append((lhs, tuple(syms)))
    if not rules:
        raise ParseError("grammar has no rules")
    if start is None:
        start = rules[0][0]
    g = Cfg.from_rules(rules, start, declared_terms)
    return g


def format_cfg(g: Cfg) -> str:
    """Serialize; consecutive rules sharing a left-hand side share a line."""
    lines = [f"start: {g.start}"]
    used = {s for r in g.rules for s in r.rhs}
    if any(t not in used for t in g.terminals):
        lines.append("terminals: " + " ".join(g.terminals))
    run: list[Rule] = []
    for r in g.rules + (None,):
        if run and (r is None or r.lhs != run[0].lhs):
            alts = " | ".join(" ".join(x.rhs) for x in run)
            lines.append(f"{run[0].lhs} -> {alts}")
            run = []
        if r is not None:
            run.append(r)
    return "\n".join(lines) + "\n"


def parse_word(text: str, chars: bool = False) -> tuple[str, ...]:
    return tuple(text.replace(" ", "")) if chars else tuple(text.split())


# ---------------------------------------------------------------- cleanup


def _generating(rules: Sequence[Rule], terminals: set) -> set[str]:
    gen: set[str] = set()
    changed = True
    while changed:
        changed = False
        for r in rules:
            if r.lhs not in gen and all(s in terminals or s in gen for s in r.rhs):
                gen.add(r.lhs)
                changed = True
    return gen


def _reachable(rules: Sequence[Rule], start: str) -> set[str]:
    seen = {start}
    stack = [start]
    by_lhs: dict[str, list[Rule]] = {}
    for r in rules:
        by_lhs.setdefault(r.lhs, []).append(r)
    while stack:
        x = stack.pop()
        for r in by_lhs.get(x, ()):
            for s in r.rhs:
                if s not in seen:
                    seen.add(s)
                    stack.append(s)
    return seen


def _rebuild(g: Cfg, rules: Sequence[Rule], start: Optional[str] = None) -> Cfg:
    rules = tuple(dict.fromkeys(rules))
    nts = _ordered([r.lhs for r in rules])
    return Cfg(g.terminals, tuple(nts), rules, start or g.start)


def _drop_nongenerating(g: Cfg, rules: Sequence[Rule]) -> list[Rule]:
    terms = set(g.terminals)
    gen = _generating(rules, terms)
    return [r for r in rules if r.lhs in gen and all(s in terms or s in gen for s in r.rhs)]


def remove_useless(g: Cfg) -> Cfg:
    """Drop non-generating, then unreachable, nonterminals.  Terminals are kept."""
    rules = _drop_nongenerating(g, g.rules)
    if not any(r.lhs == g.start for r in rules):
        raise EmptyLanguage(f"no terminal string is derivable from {g.start}")
    reach = _reachable(rules, g.start)
    return _rebuild(g, [r for r in rules if r.lhs in reach])


class _Names:
    """Fresh nonterminal names that avoid every name already in use."""

    def __init__(self, taken: Iterable[str]):
        self.taken = set(taken)

    def fresh(self, base: str) -> str:
        base = re.sub(r"[^A-Za-z0-9_']", "_", base)
        if not base[:1].isupper():
            base = "N" + base
        name, i = base, 1
        while name in self.taken:
            i += 1
            name = f"{base}{i}"
        self.taken.add(name)
        return name


# ---------------------------------------------------------------- CNF


def _cnf_rules(g: Cfg) -> tuple[list[Rule], _Names]:
    """CNF rules for every generating nonterminal (reachability ignored).

    Original nonterminals keep their names and languages.
    """
    terms = set(g.terminals)
    names = _Names(list(g.nonterminals) + list(g.terminals))
    rules = _drop_nongenerating(g, g.rules)

    # terminals inside long right-hand sides get their own nonterminal
    term_nt: dict[str, str] = {}
    step: list[Rule] = []
    for r in rules:
        if len(r.rhs) >= 2:
            rhs = []
            for s in r.rhs:
                if s in terms:
                    if s not in term_nt:
                        term_nt[s] = names.fresh(f"T_{s}")
                    s = term_nt[s]
                rhs.append(s)
            step.append(Rule(r.lhs, tuple(rhs)))
        else:
            step.append(r)
    step += [Rule(nt, (t,)) for t, nt in term_nt.items()]

    # binarize
    binary: list[Rule] = []
    for r in step:
        lhs, rhs = r.lhs, r.rhs
        while len(rhs) > 2:
            nxt = names.fresh(f"{r.lhs}_")
            binary.append(Rule(lhs, (rhs[0], nxt)))
            lhs, rhs = nxt, rhs[1:]
        binary.append(Rule(lhs, rhs))

    # unit rules
    nts = _ordered(r.lhs for r in binary)
    unit: dict[str, list[str]] = {x: [] for x in nts}
    for r in binary:
        if len(r.rhs) == 1 and r.rhs[0] not in terms:
            unit[r.lhs].append(r.rhs[0])
    out: list[Rule] = []
    for x in nts:
        closure = [x]
        seen = {x}
        for y in closure:
            for z in unit.get(y, ()):
                if z not in seen:
                    seen.add(z)
                    closure.append(z)
        for y in closure:
            for r in binary:
                if r.lhs == y and not (len(r.rhs) == 1 and r.rhs[0] not in terms):
                    out.append(Rule(x, r.rhs))
    out = list(dict.fromkeys(out))
    return _drop_nongenerating(g, out), names


def to_cnf(g: Cfg) -> Cfg:
    """Chomsky normal form (``X -> Y Z`` and ``X -> a``) for the same language."""
    rules, _ = _cnf_rules(g)
    if not any(r.lhs == g.start for r in rules):
        raise EmptyLanguage(f"no terminal string is derivable from {g.start}")
    return remove_useless(_rebuild(g, rules))


def is_cnf(g: Cfg) -> bool:
    terms = set(g.terminals)
    return all(
        (len(r.rhs) == 1 and r.rhs[0] in terms)
        or (len(r.rhs) == 2 and all(s not in terms for s in r.rhs))
        for r in g.rules
    )


# ---------------------------------------------------------------- 2-GNF


def is_gnf2(g: Cfg) -> bool:
    """Every rule is ``X -> a``, ``X -> a Y`` or ``X -> a Y Z``."""
    terms = set(g.terminals)
    return all(
        1 <= len(r.rhs) <= 3 and r.rhs[0] in terms and all(s not in terms for s in r.rhs[1:])
        for r in g.rules
    )


def to_gnf2(g: Cfg) -> Cfg:
    """Greibach normal form with at most two nonterminals after the terminal.

    Grammars already in that form are only cleaned of useless symbols.
    Otherwise: CNF, then the left-corner transform.  For each nonterminal A
    and CNF symbol X, ``A-X`` derives what remains of an A once a left corner
    X has been recognized::

        A     -> a A-Y          for Y -> a
        A-X   -> Z A-Y          for Y -> X Z
        A-A   -> (empty)

    The empty rules are folded into their users, and the leading Z is replaced
    by its (already terminal-initial) A-rules, leaving tails of length <= 2.
    """
    if is_gnf2(g):
        return remove_useless(g)
    cnf = to_cnf(g)
    terms = set(cnf.terminals)
    nts = list(cnf.nonterminals)
    names = _Names(nts + list(cnf.terminals))
    lc: dict[tuple[str, str], str] = {}

    def corner(a: str, x: str) -> str:
        if (a, x) not in lc:
            lc[(a, x)] = names.fresh(f"{a}_{x}")
        return lc[(a, x)]

    lexical = [(r.lhs, r.rhs[0]) for r in cnf.rules if len(r.rhs) == 1]
    binary = [(r.lhs, r.rhs[0], r.rhs[1]) for r in cnf.rules if len(r.rhs) == 2]
    assert all(t in terms for _, t in lexical)

    def head_rules(a: str) -> list[tuple[str, ...]]:
        """Right-hand sides of A's terminal-initial rules."""
        out = []
        for y, t in lexical:
            out.append((t, corner(a, y)))
            if y == a:
                out.append((t,))
        return out

    rules: list[Rule] = []
    for a in nts:
        rules += [Rule(a, rhs) for rhs in head_rules(a)]
        for y, x, z in binary:
            for rhs in head_rules(z):
                rules.append(Rule(corner(a, x), rhs + (corner(a, y),)))
                if y == a:
                    rules.append(Rule(corner(a, x), rhs))
    rules = _drop_nongenerating(cnf, list(dict.fromkeys(rules)))
    return remove_useless(_rebuild(cnf, rules))


# ---------------------------------------------------------------- membership


@lru_cache(maxsize=64)
def _cyk_tables(g: Cfg):
    rules, _ = _cnf_rules(g)
    lexical: dict[str, set[str]] = {}
    binary: dict[tuple[str, str], set[str]] = {}
    for r in rules:
        if len(r.rhs) == 1:
            lexical.setdefault(r.rhs[0], set()).add(r.lhs)
        else:
            binary.setdefault(r.rhs, set()).add(r.lhs)
    return lexical, binary


def _cyk(g: Cfg, word: Sequence[str]) -> set[str]:
    word = tuple(word)
    if not word:
        raise ValueError("word must be non-empty (languages are epsilon-free)")
    terms = set(g.terminals)
    for a in word:
        if a not in terms:
            raise UnknownTerminal(f"{a!r} is not a terminal of the grammar")
    lexical, binary = _cyk_tables(g)
    n = len(word)
    table = [[set() for _ in range(n + 1)] for _ in range(n)]  # table[i][l]: span i..i+l-1
    for i, a in enumerate(word):
        table[i][1] = set(lexical.get(a, ()))
    for length in range(2, n + 1):
        for i in range(n - length + 1):
            cell = table[i][length]
            for split in range(1, length):
                left, right = table[i][split], table[i + split][length - split]
                if not left or not right:
                    continue
                for y in left:
                    for z in right:
                        cell |= binary.get((y, z), set())
    return table[0][n]


def member_of(g: Cfg, nonterminal: str, word: Sequence[str]) -> bool:
    """Whether ``word`` is derivable from ``nonterminal`` in ``g``."""
    return nonterminal in _cyk(g, word)


def cyk_member(g: Cfg, word: Sequence[str]) -> bool:
    return member_of(g, g.start, word)
