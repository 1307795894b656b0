import itertools
import random

import pytest

from catgram.category import LeftDiv, Prim, RightDiv, parse_category
from catgram.category import depth as cat_depth
from catgram.cfg import parse_cfg

P, Q, S = Prim("p"), Prim("q"), Prim("s")
BASE = (P, Q, S)

GRAMMARS = {
    "anbn": "start: S\nS -> a S b | a b\n",
    "ancbn": "start: S\nS -> a S b | c\n",
    "dyck": "start: S\nS -> a S b S | a b S | a S b | a b\n",
    "union": (
        "# a^i b^n c^n  or  a^m b^m c^j\n"
        "start: S\n"
        "S -> A1 Bc | Am C\n"
        "A1 -> a A1 | a\n"
        "Bc -> b Bc c | b c\n"
        "Am -> a Am b | a b\n"
        "C -> c C | c\n"
    ),
}

# hand-written 2-GNF versions
GNF_GRAMMARS = {
    "anbn": "start: S\nS -> a S B | a B\nB -> b\n",
    "ancbn": "start: S\nS -> a S B | c\nB -> b\n",
}

POOL = [parse_category(t) for t in ["p", "p/q", "(p/q)/s", "q", "q/p", "(q/s)/p"]]


@pytest.fixture(params=sorted(GRAMMARS))
def grammar(request):
    return request.param, parse_cfg(GRAMMARS[request.param])


def words_upto(alphabet, n):
    for k in range(1, n + 1):
        yield from itertools.product(alphabet, repeat=k)


# ---------------------------------------------------------------- oracles


def all_categories(depth, base=BASE):
    """Every category of depth <= ``depth`` over ``base``."""
    level = list(base)
    seen = set(level)
    for _ in range(depth):
        new = []
        for a in list(seen):
            for b in list(seen):
                for c in (RightDiv(a, b), LeftDiv(a, b)):
                    if c not in seen:
                        new.append(c)
        seen.update(new)
    return seen


def tree_oracle(s):
    """Roots of every binary bracketing of ``s`` valid under the two rules.

    Returns a dict root -> number of distinct trees.  Deliberately naive and
    independent of the chart.
    """
    s = tuple(s)

    def go(i, j):
        if i == j:
            return {s[i]: 1}
        out = {}
        for k in range(i, j):
            left, right = go(i, k), go(k + 1, j)
            for a, na in left.items():
                for b, nb in right.items():
                    if isinstance(a, RightDiv) and a.den == b:
                        out[a.num] = out.get(a.num, 0) + na * nb
                    if isinstance(b, LeftDiv) and b.den == a:
                        out[b.num] = out.get(b.num, 0) + na * nb
        return out

    return go(0, len(s) - 1)


def derivation_oracle(g, word, start=None):
    """Membership by exhaustive leftmost derivation (epsilon-free, so prunable)."""
    target = tuple(word)
    n = len(target)
    terms = set(g.terminals)
    start = start or g.start
    seen = set()
    stack = [(start,)]
    while stack:
        form = stack.pop()
        if form in seen:
            continue
        seen.add(form)
        if len(form) > n:
            continue
        i = 0
        while i < len(form) and form[i] in terms:
            i += 1
        if form[:i] != target[:i]:
            continue
        if i == len(form):
            if form == target:
                return True
            continue
        for r in g.rules:
            if r.lhs == form[i]:
                stack.append(form[:i] + r.rhs + form[i + 1:])
    return False


# ---------------------------------------------------------------- generators


def random_category(rng, depth, base=BASE):
    if depth == 0 or rng.random() < 0.35:
        return rng.choice(base)
    a, b = random_category(rng, depth - 1, base), random_category(rng, depth - 1, base)
    return RightDiv(a, b) if rng.random() < 0.5 else LeftDiv(a, b)


def _expand(rng, c, base):
    """Split ``c`` into two categories that reduce to it."""
    b = random_category(rng, 1, base)
    if rng.random() < 0.5:
        return [RightDiv(c, b), b]
    return [b, LeftDiv(b, c)]


def random_string(rng, max_len=6, depth=3, base=BASE):
    """Half the time uniform noise; otherwise a random reducible string,
    possibly mutated, so that both outcomes are well represented."""
    n = rng.randint(1, max_len)
    if rng.random() < 0.5:
        return [random_category(rng, depth, base) for _ in range(n)]
    s = [random_category(rng, 1, base)]
    while len(s) < n:
        i = rng.randrange(len(s))
        parts = _expand(rng, s[i], base)
        if any(cat_depth(c) > depth for c in parts):
            break
        s[i:i + 1] = parts
    if rng.random() < 0.3:
        s[rng.randrange(len(s))] = random_category(rng, depth, base)
    return s


@pytest.fixture
def rng():
    return random.Random(20261019)
