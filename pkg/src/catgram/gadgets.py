"""Category-string gadgets that simulate a choice between categories.

Given categories of the forms ``p``, ``p/q`` and ``(p/q)/s``:

* ``x(A, t)`` and ``y(t, B)`` reduce to ``phi(A)`` (resp. ``phi(B)``) and ``t/t``;
* ``z(A, B)`` reduces to ``phi(A)`` and ``phi(B)``;
* ``z'(A, B)`` reduces to ``phi(A)/_r`` and ``phi(B)/_r``;
* ``u(A, B)`` reduces to ``psi(A)`` and ``psi(B)``;
* ``w(A1, ..., An)`` reduces to every ``psi(Ai)``.

Every builder returns a :class:`GadgetString` that records, per item, which
gadget emitted it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .category import (
    SENTINEL_LEFT as L,
    SENTINEL_RIGHT as R,
    Category,
    LeftDiv,
    Prim,
    RightDiv,
    format_category,
    phi,
    primitives,
    psi,
)
from .errors import DuplicateCategory, EqualCategories, FreshnessError, ShapeError

__all__ = [
    "GadgetPrims",
    "GadgetString",
    "shape_of",
    "build_x",
    "build_y",
    "build_z",
    "build_z_prime",
    "build_u",
    "build_w",
    "w_prims",
]


@dataclass(frozen=True)
class Source:
    """Which gadget instance emitted an item."""

    kind: str
    params: tuple[Category, ...]

    def describe(self) -> dict:
        return {"gadget": self.kind, "params": [format_category(c) for c in self.params]}


@dataclass(frozen=True)
class GadgetString:
    items: tuple[Category, ...]
    kind: str
    params: tuple[Category, ...]
    fresh: tuple[Prim, ...] = ()
    sources: tuple[Source, ...] = field(default=(), repr=False, compare=False)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def __str__(self):
        return "; ".join(format_category(c) for c in self.items)


def _concat(kind, params, fresh, parts) -> GadgetString:
    """Join categories and sub-gadgets; bare categories are attributed to ``kind``."""
    own = Source(kind, tuple(params))
    items, sources = [], []
    for part in parts:
        if isinstance(part, GadgetString):
            items.extend(part.items)
            sources.extend(part.sources)
        else:
            items.append(part)
            sources.append(own)
    return GadgetString(tuple(items), kind, tuple(params), tuple(fresh), tuple(sources))


@dataclass(frozen=True)
class GadgetPrims:
    """Fresh primitives for one ``u`` instance (and the ``z'``, ``z``, ``x``, ``y`` inside it)."""

    t: Prim
    k1: Prim
    k2: Prim
    k3: Prim
    k4: Prim
    o1: Prim
    o2: Prim
    o3: Prim
    o4: Prim

    @classmethod
    def fresh(cls, *scope) -> "GadgetPrims":
        """Auxiliary primitives named ``_<base>[.<scope>...]``, e.g. ``_t.a.0``."""
        suffix = "".join(f".{s}" for s in scope)
        return cls(*(Prim(f"_{base}{suffix}") for base in cls.__dataclass_fields__))

    def z_part(self) -> tuple[Prim, ...]:
        return (self.t, self.k1, self.k2, self.k3, self.k4)


def w_prims(n: int, *scope) -> list[Prim]:
    """Connector primitives ``e1..e_{2n-2}`` for ``w`` over ``n`` categories."""
    suffix = "".join(f".{s}" for s in scope)
    return [Prim(f"_e{i}{suffix}") for i in range(1, 2 * n - 1)]


def shape_of(c: Category) -> Optional[str]:
    """``'atom'``, ``'frac'`` or ``'double'`` for ``p``, ``p/q``, ``(p/q)/s``; else None."""
    if isinstance(c, Prim):
        return "atom"
    if isinstance(c, RightDiv) and isinstance(c.den, Prim):
        if isinstance(c.num, Prim):
            return "frac"
        n = c.num
        if isinstance(n, RightDiv) and isinstance(n.num, Prim) and isinstance(n.den, Prim):
            return "double"
    return None


def _check_shape(c: Category) -> str:
    s = shape_of(c)
    if s is None:
        raise ShapeError(f"{format_category(c)} is not of the form p, p/q or (p/q)/s")
    return s


def _check_fresh(fresh: Sequence[Prim], cats: Sequence[Category]) -> None:
    if len(set(fresh)) != len(fresh):
        raise FreshnessError("fresh primitives must be pairwise distinct")
    used = primitives(list(cats))
    for p in fresh:
        if p in used:
            raise FreshnessError(f"primitive {p.name} is not fresh: it occurs in the parameters")


def _pp(p: Prim) -> Category:
    return RightDiv(p, p)


# ---------------------------------------------------------------- x and y


def build_x(a_cat: Category, t: Prim) -> GadgetString:
    shape = _check_shape(a_cat)
    _check_fresh([t], [a_cat])
    tt = _pp(t)
    if shape == "atom":
        p = a_cat
        items = [RightDiv(_pp(p), tt), tt, t, LeftDiv(t, p), LeftDiv(p, tt)]
    elif shape == "frac":
        p, q = a_cat.num, a_cat.den
        items = [
            RightDiv(phi(a_cat), tt), tt, t,
            LeftDiv(t, _pp(q)), q, LeftDiv(q, p), LeftDiv(p, tt),
        ]
    else:
        p, q, s = a_cat.num.num, a_cat.num.den, a_cat.den
        items = [
            RightDiv(phi(a_cat), tt), tt, t,
            LeftDiv(t, _pp(s)), s, LeftDiv(s, _pp(q)), q, LeftDiv(q, p), LeftDiv(p, tt),
        ]
    return _concat("x", (a_cat, t), (t,), items)


def build_y(t: Prim, b_cat: Category) -> GadgetString:
    shape = _check_shape(b_cat)
    _check_fresh([t], [b_cat])
    tt = _pp(t)
    fb = phi(b_cat)
    if shape == "atom":
        p = b_cat
        items = [RightDiv(tt, fb), fb, p, LeftDiv(p, t), LeftDiv(t, fb)]
    elif shape == "frac":
        p, q = b_cat.num, b_cat.den
        items = [RightDiv(tt, fb), fb, _pp(q), q, LeftDiv(q, p), LeftDiv(p, t), LeftDiv(t, fb)]
    else:
        p, q, s = b_cat.num.num, b_cat.num.den, b_cat.den
        items = [
            RightDiv(tt, fb), fb, _pp(s), s, LeftDiv(s, _pp(q)), q,
            LeftDiv(q, p), LeftDiv(p, t), LeftDiv(t, fb),
        ]
    return _concat("y", (t, b_cat), (t,), items)


# ---------------------------------------------------------------- z, z', u


def _check_pair(a_cat, b_cat, fresh):
    _check_shape(a_cat)
    _check_shape(b_cat)
    if a_cat == b_cat:
        raise EqualCategories(f"z/u gadgets need distinct categories, got {format_category(a_cat)} twice")
    _check_fresh(fresh, [a_cat, b_cat])


def build_z(a_cat: Category, b_cat: Category, prims: GadgetPrims) -> GadgetString:
    t, k1, k2, k3, k4 = prims.z_part()
    _check_pair(a_cat, b_cat, [t, k1, k2, k3, k4])
    fa, fb, tt = phi(a_cat), phi(b_cat), _pp(t)
    return _concat("z", (a_cat, b_cat), (t, k1, k2, k3, k4), [
        RightDiv(fa, k1),
        RightDiv(k1, tt),
        build_x(a_cat, t),
        LeftDiv(fa, k2),
        LeftDiv(k2, RightDiv(tt, k3)),
        RightDiv(k3, fb),
        build_y(t, b_cat),
        LeftDiv(tt, k4),
        LeftDiv(k4, fb),
    ])


def build_z_prime(a_cat: Category, b_cat: Category, prims: GadgetPrims) -> GadgetString:
    fresh = prims.z_part() + (prims.o1, prims.o2)
    _check_pair(a_cat, b_cat, fresh)
    fa, fb = phi(a_cat), phi(b_cat)
    far, fbr = RightDiv(fa, R), RightDiv(fb, R)
    o1, o2 = prims.o1, prims.o2
    return _concat("zprime", (a_cat, b_cat), (o1, o2), [
        RightDiv(far, fbr),
        RightDiv(fa, o1),
        RightDiv(o1, fb),
        build_z(a_cat, b_cat, prims),
        LeftDiv(fa, o2),
        LeftDiv(o2, fbr),
        R,
        LeftDiv(fa, fbr),
    ])


def build_u(a_cat: Category, b_cat: Category, prims: GadgetPrims) -> GadgetString:
    fresh = prims.z_part() + (prims.o1, prims.o2, prims.o3, prims.o4)
    _check_pair(a_cat, b_cat, fresh)
    far, fbr = RightDiv(phi(a_cat), R), RightDiv(phi(b_cat), R)
    pa, pb = LeftDiv(L, far), LeftDiv(L, fbr)  # psi(A), psi(B)
    o3, o4 = prims.o3, prims.o4
    return _concat("u", (a_cat, b_cat), (o3, o4), [
        RightDiv(pa, fbr),
        L,
        RightDiv(pa, o3),
        RightDiv(o3, fbr),
        build_z_prime(a_cat, b_cat, prims),
        LeftDiv(far, o4),
        LeftDiv(o4, fbr),
        LeftDiv(pa, pb),
    ])


# ---------------------------------------------------------------- w


def build_w(cats: Sequence[Category], scope: Sequence = (), u_prims=None, e_prims=None) -> GadgetString:
    """``w`` over pairwise distinct shaped categories.

    ``scope`` names the fresh primitives (``_t.<scope>.<i>`` for the i-th
    ``u``, ``_e<j>.<scope>`` for connectors); ``u_prims``/``e_prims`` override
    them explicitly.
    """
    cats = list(cats)
    if not cats:
        raise ValueError("w needs at least one category")
    for c in cats:
        _check_shape(c)
    if len(set(cats)) != len(cats):
        raise DuplicateCategory("w needs pairwise distinct categories")
    scope = tuple(scope)
    n = len(cats)
    if n == 1:
        return _concat("w", tuple(cats), (), [psi(cats[0])])
    if u_prims is None:
        u_prims = [GadgetPrims.fresh(*scope, i) for i in range(n - 1)]
    if e_prims is None:
        e_prims = w_prims(n, *scope)
    if len(e_prims) != 2 * n - 2 or len(u_prims) != n - 1:
        raise ValueError("wrong number of fresh primitives for w")
    all_fresh = list(e_prims)
    for up in u_prims:
        all_fresh.extend(up.z_part() + (up.o1, up.o2, up.o3, up.o4))
    _check_fresh(all_fresh, cats)

    ps = [psi(c) for c in cats]
    e = [None] + list(e_prims)  # 1-based
    parts: list = [RightDiv(ps[0], e[1]), RightDiv(e[1], ps[1])]
    for i in range(2, n + 1):  # 1-based index of the connector block after u_{i-1,i}
        parts.append(build_u(cats[i - 2], cats[i - 1], u_prims[i - 2]))
        if i < n:
            parts += [
                LeftDiv(ps[i - 2], e[2 * i - 2]),
                RightDiv(LeftDiv(e[2 * i - 2], ps[i - 1]), e[2 * i - 1]),
                RightDiv(e[2 * i - 1], ps[i]),
            ]
        else:
            parts += [LeftDiv(ps[n - 2], e[2 * n - 2]), LeftDiv(e[2 * n - 2], ps[n - 1])]
    return _concat("w", tuple(cats), tuple(e_prims), parts)
