"""Reduction calculus for AB categorial grammars.

Two rules, applied to adjacent categories::

    A/B ; B    =>  A      (tagged "/E")
    B   ; B\\A  =>  A      (tagged "\\E")

Any category a string of two or more items reduces to is a numerator of one
of its items, so CYK over the numerator closure of the input is exact.  Cells
of the chart are Python ints used as bitsets over universe ids.
"""

from __future__ import annotations

import sys
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .category import (
    Category,
    LeftDiv,
    Prim,
    RightDiv,
    as_category,
    as_string,
    count_vector,
    format_category,
)
from .errors import BudgetExceeded

__all__ = [
    "ReductionTree",
    "Universe",
    "Chart",
    "build_chart",
    "one_step",
    "reducible_to",
    "derivable_singletons",
    "reduction_trees",
    "brute_force_derivable",
    "count_preserved_check",
]

DEFAULT_BRUTE_FORCE_CAP = 10**7


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Universe:
    """Dense ids for the numerator closure of a set of seed categories.

    ``rdiv_by_den[b]`` is the bitset of members of form ``X/B`` where ``B`` is
    member ``b``; ``ldiv_by_den[b]`` likewise for ``B\\X``.  ``num_id[i]`` is
    the id of member ``i``'s numerator, or -1 for primitives.
    """

    def __init__(self, seeds: Iterable[Category] = ()):
        self.members: list[Category] = []
        self.index: dict[Category, int] = {}
        self.num_id: list[int] = []
        self.rdiv_by_den: list[int] = []
        self.ldiv_by_den: list[int] = []
        # denominators not (yet) members: category -> bitset of dividers
        self._pending_r: dict[Category, int] = {}
        self._pending_l: dict[Category, int] = {}
        self.add(seeds)

    def __len__(self):
        return len(self.members)

    def __contains__(self, c):
        return c in self.index

    def id(self, c: Category) -> int:
        return self.index[c]

    def add(self, cats: Iterable[Category]) -> None:
        for c in cats:
            self._add(c)

    def _add(self, c: Category) -> int:
        # walk the numerator spine first so numerators get smaller ids
        spine = []
        while c not in self.index:
            spine.append(c)
            if isinstance(c, Prim):
                break
            c = c.num
        for c in reversed(spine):
            i = len(self.members)
            self.members.append(c)
            self.index[c] = i
            self.num_id.append(-1 if isinstance(c, Prim) else self.index[c.num])
            self.rdiv_by_den.append(self._pending_r.pop(c, 0))
            self.ldiv_by_den.append(self._pending_l.pop(c, 0))
            if isinstance(c, RightDiv):
                self._link(c.den, i, self.rdiv_by_den, self._pending_r)
            elif isinstance(c, LeftDiv):
                self._link(c.den, i, self.ldiv_by_den, self._pending_l)
        return self.index[spine[0]] if spine else self.index[c]

    def _link(self, den, i, table, pending):
        j = self.index.get(den)
        if j is None:
            pending[den] = pending.get(den, 0) | (1 << i)
        else:
            table[j] |= 1 << i

    def decode(self, mask: int) -> list[Category]:
        return [self.members[i] for i in _bits(mask)]

    def combine(self, left: int, right: int) -> int:
        """Bitset of categories derivable in one step from a left and right cell."""
        out = 0
        num_id = self.num_id
        rdiv, ldiv = self.rdiv_by_den, self.ldiv_by_den
        if left:
            for b in _bits(right):
                m = rdiv[b] & left
                for i in _bits(m):
                    out |= 1 << num_id[i]
        if right:
            for b in _bits(left):
                m = ldiv[b] & right
                for i in _bits(m):
                    out |= 1 << num_id[i]
        return out


class Chart:
    """CYK chart filled column by column, so strings can grow at the right end.

    ``cell(i, j)`` is the bitset of categories the items ``i..j`` (inclusive)
    reduce to.  ``truncate`` undoes extensions, which lets callers share the
    work for common prefixes.
    """

    def __init__(self, universe: Universe, items: Sequence[Category] = ()):
        self.universe = universe
        self.items: list[Category] = []
        self.cols: list[list[int]] = []  # cols[j][i] = cell(i, j)
        self.ends: list[int] = []  # ends[i]: bitset of j with cell(i, j) != 0
        self.starts: list[int] = []  # starts[j]: bitset of i with cell(i, j) != 0
        self.extend(items)

    def __len__(self):
        return len(self.items)

    def cell(self, i: int, j: int) -> int:
        return self.cols[j][i]

    def extend(self, items: Iterable[Category]) -> None:
        uni = self.universe
        combine = uni.combine
        for item in items:
            j = len(self.items)
            if item not in uni:
                uni.add([item])
            self.items.append(item)
            col = [0] * (j + 1)
            col[j] = 1 << uni.id(item)
            self.ends.append(1 << j)
            starts = 1 << j
            ends, cols, col_starts = self.ends, self.cols, self.starts
            # cell(i, j) can only be non-empty if some cell(i, k) and
            # cell(k+1, j) both are; visit just those i, highest first
            cand = col_starts[j - 1] if j else 0
            while cand:
                i = cand.bit_length() - 1
                cand ^= 1 << i
                acc = 0
                for k in _bits(ends[i] & (starts >> 1)):
                    acc |= combine(cols[k][i], col[k + 1])
                if acc:
                    col[i] = acc
                    starts |= 1 << i
                    ends[i] |= 1 << j
                    if i:
                        cand |= col_starts[i - 1]
            cols.append(col)
            col_starts.append(starts)

    def truncate(self, n: int) -> None:
        if n >= len(self.items):
            return
        del self.items[n:]
        del self.cols[n:]
        del self.ends[n:]
        del self.starts[n:]
        keep = (1 << n) - 1
        for i in range(n):
            self.ends[i] &= keep

    def top(self) -> int:
        return self.cols[-1][0] if self.items else 0

    def derivable(self, i: int = 0, j: Optional[int] = None) -> set[Category]:
        j = len(self.items) - 1 if j is None else j
        return set(self.universe.decode(self.cell(i, j)))

    def has(self, target: Category, i: int = 0, j: Optional[int] = None) -> bool:
        j = len(self.items) - 1 if j is None else j
        t = self.universe.index.get(target)
        return t is not None and bool(self.cell(i, j) >> t & 1)


# ---------------------------------------------------------------- trees


@dataclass(frozen=True, eq=False)
class ReductionTree:
    """Binary derivation tree; ``kind`` is ``leaf``, ``/E`` or ``\\E``.

    Equality is structural (via :meth:`signature`); traversals are iterative
    because trees over long strings get deep.
    """

    root: Category
    kind: str = "leaf"
    left: Optional["ReductionTree"] = field(default=None, repr=False)
    right: Optional["ReductionTree"] = field(default=None, repr=False)

    def nodes(self) -> Iterator["ReductionTree"]:
        """Pre-order, left before right."""
        stack = [self]
        while stack:
            t = stack.pop()
            yield t
            if t.kind != "leaf":
                stack.append(t.right)
                stack.append(t.left)

    def frontier(self) -> list[Category]:
        return [t.root for t in self.nodes() if t.kind == "leaf"]

    def signature(self) -> tuple:
        return tuple((t.kind, t.root) for t in self.nodes())

    def __eq__(self, other):
        return isinstance(other, ReductionTree) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def check(self) -> bool:
        """Replay every node against the two rules."""
        for t in self.nodes():
            if t.kind == "leaf":
                if t.left is not None or t.right is not None:
                    return False
                continue
            lr, rr = t.left.root, t.right.root
            if t.kind == "/E":
                ok = isinstance(lr, RightDiv) and lr.den == rr and lr.num == t.root
            elif t.kind == "\\E":
                ok = isinstance(rr, LeftDiv) and rr.den == lr and rr.num == t.root
            else:
                ok = False
            if not ok:
                return False
        return True

    def __str__(self):
        return format_category(self.root)


def _tree_enumerator(chart: Chart, limit: int):
    uni = chart.universe
    members = uni.members
    memo: dict[tuple[int, int, int], list[ReductionTree]] = {}

    def trees(i: int, j: int, c: int) -> list[ReductionTree]:
        key = (i, j, c)
        if key in memo:
            return memo[key]
        out: list[ReductionTree] = []
        if i == j:
            if chart.cell(i, j) >> c & 1:
                out.append(ReductionTree(members[c]))
            memo[key] = out
            return out
        root = members[c]
        for k in range(i, j):
            left, right = chart.cell(i, k), chart.cell(k + 1, j)
            if not left or not right:
                continue
            pairs = []
            for a in _bits(left):
                cat = members[a]
                if isinstance(cat, RightDiv) and cat.num == root:
                    b = uni.index.get(cat.den)
                    if b is not None and right >> b & 1:
                        pairs.append(("/E", a, b))
            for b in _bits(right):
                cat = members[b]
                if isinstance(cat, LeftDiv) and cat.num == root:
                    a = uni.index.get(cat.den)
                    if a is not None and left >> a & 1:
                        pairs.append(("\\E", a, b))
            for kind, a, b in pairs:
                for lt in trees(i, k, a):
                    rts = trees(k + 1, j, b)
                    for rt in rts:
                        out.append(ReductionTree(root, kind, lt, rt))
                        if len(out) >= limit:
                            memo[key] = out
                            return out
        memo[key] = out
        return out

    return trees


# ---------------------------------------------------------------- public API


def one_step(s) -> set[tuple[Category, ...]]:
    """All strings obtained from ``s`` by a single reduction."""
    s = as_string(s)
    out = set()
    for i in range(len(s) - 1):
        a, b = s[i], s[i + 1]
        if isinstance(a, RightDiv) and a.den == b:
            out.add(s[:i] + (a.num,) + s[i + 2:])
        if isinstance(b, LeftDiv) and b.den == a:
            out.add(s[:i] + (b.num,) + s[i + 2:])
    return out


def count_preserved_check(s, s2) -> bool:
    """True iff every primitive has the same count in ``s`` and ``s2``."""
    return count_vector(as_string(s)) == count_vector(as_string(s2))


def build_chart(s, universe: Optional[Universe] = None) -> Chart:
    s = as_string(s)
    if not s:
        raise ValueError("category string must be non-empty")
    return Chart(universe if universe is not None else Universe(s), s)


def reducible_to(s, target, universe: Optional[Universe] = None) -> bool:
    """Decide whether the string ``s`` reduces to the single category ``target``."""
    s = as_string(s)
    target = as_category(target)
    if len(s) == 1:
        return s[0] == target
    if not count_preserved_check(s, (target,)):
        return False
    return build_chart(s, universe).has(target)


def derivable_singletons(s, universe: Optional[Universe] = None) -> set[Category]:
    return build_chart(s, universe).derivable()


def reduction_trees(s, target, limit: int = 10, chart: Optional[Chart] = None) -> list[ReductionTree]:
    """Up to ``limit`` distinct reduction trees of ``s`` to ``target``.

    Order: split point ascending; within a split, ``/E`` before ``\\E`` by
    universe id; then left subtree before right subtree.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    s = as_string(s)
    target = as_category(target)
    if chart is None:
        chart = build_chart(s)
    if not chart.has(target):
        return []
    need = 4 * len(s) + 200
    old = sys.getrecursionlimit()
    if old < need:
        sys.setrecursionlimit(need)
    try:
        trees = _tree_enumerator(chart, limit)
        return list(trees(0, len(s) - 1, chart.universe.id(target)))
    finally:
        if old < need:
            sys.setrecursionlimit(old)


def brute_force_derivable(s, max_len: int = 10, cap: int = DEFAULT_BRUTE_FORCE_CAP) -> set[Category]:
    """Every single category reachable from ``s`` by exhaustive rewriting.

    Independent of the chart; used as a validation oracle.  Raises
    :class:`BudgetExceeded` once more than ``cap`` strings have been visited.
    """
    s = as_string(s)
    if len(s) > max_len:
        raise ValueError(f"string has {len(s)} items, more than max_len={max_len}")
    seen = {s}
    queue = deque([s])
    out = set()
    while queue:
        cur = queue.popleft()
        if len(cur) == 1:
            out.add(cur[0])
            continue
        for nxt in one_step(cur):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    raise BudgetExceeded(f"visited more than {cap} strings")
                queue.append(nxt)
    return out
