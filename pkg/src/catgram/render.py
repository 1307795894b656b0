"""Text and LaTeX rendering of reduction trees."""

from __future__ import annotations

from .category import Category, LeftDiv, Prim, format_category
from .reduction import ReductionTree


def tree_to_text(tree: ReductionTree, indent: str = "  ") -> str:
    """One node per line, children indented below their parent.

    Inner nodes carry the rule tag, e.g. ``p\\p  [\\E]``.
    """
    lines: list[str] = []
    stack = [(tree, 0)]
    while stack:
        t, depth = stack.pop()
        label = format_category(t.root)
        if t.kind != "leaf":
            label += f"  [{t.kind}]"
            stack.append((t.right, depth + 1))
            stack.append((t.left, depth + 1))
        lines.append(indent * depth + label)
    return "\n".join(lines)


def _latex_name(name: str) -> str:
    if name == "_l":
        return r"\ell"
    if name == "_r":
        return "r"
    if name.startswith("_"):
        base, _, rest = name[1:].partition(".")
        return base + (r"_{\mathrm{" + rest + "}}" if rest else "")
    return name


def category_to_latex(c: Category, nested: bool = False) -> str:
    if isinstance(c, Prim):
        return _latex_name(c.name)
    if isinstance(c, LeftDiv):
        body = f"{category_to_latex(c.den, True)} \\backslash {category_to_latex(c.num, True)}"
    else:
        body = f"{category_to_latex(c.num, True)} / {category_to_latex(c.den, True)}"
    return f"({body})" if nested else body


def tree_to_latex(tree: ReductionTree) -> str:
    """Nested ``\\infer`` macros (``proof.sty``), leaves as plain formulas."""
    done: dict[int, str] = {}
    stack = [(tree, False)]
    while stack:
        t, expanded = stack.pop()
        if t.kind == "leaf":
            done[id(t)] = category_to_latex(t.root)
        elif expanded:
            done[id(t)] = "\\infer{%s}{%s & %s}" % (
                category_to_latex(t.root), done[id(t.left)], done[id(t.right)]
            )
        else:
            stack += [(t, True), (t.right, False), (t.left, False)]
    return "\\[\n" + done[id(tree)] + "\n\\]"
