"""Brute-force ground truth by exhaustive enumeration.

Trees are generated from balanced-parenthesis words, every admissible
mutator placement (plus toggle split or embedded colouring) is listed, and the
new-type vertices are counted by walking the tree.  Nothing here touches a
generating function.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterator

from .models import MutationModel
from .seqio import CountRow

__all__ = [
    "MAX_EDGES",
    "MAX_ENT_SUBSETS",
    "MAX_ENT_PRODUCT",
    "SizeLimit",
    "OrderedTree",
    "MutConfig",
    "gen_trees",
    "gen_binary_trees",
    "enumerate_configs",
    "count_row",
    "ent_count_row_product",
    "leaf_pairs",
]

MAX_EDGES = 12
MAX_ENT_SUBSETS = 8
MAX_ENT_PRODUCT = 11


class SizeLimit(ValueError):
    pass


@dataclass(frozen=True)
class OrderedTree:
    """Rooted plane tree.  Text form: one parenthesis pair per vertex."""

    children: tuple["OrderedTree", ...] = ()

    @classmethod
    def parse(cls, text: str) -> "OrderedTree":
        stack: list[list[OrderedTree]] = [[]]
        for ch in text:
            if ch == "(":
                stack.append([])
            elif ch == ")":
                if len(stack) < 2:
                    raise ValueError(f"unbalanced parentheses in {text!r}")
                kids = stack.pop()
                stack[-1].append(cls(tuple(kids)))
            elif not ch.isspace():
                raise ValueError(f"unexpected character {ch!r}")
        if len(stack) != 1 or len(stack[0]) != 1:
            raise ValueError(f"{text!r} is not a single tree")
        return stack[0][0]

    def to_parens(self) -> str:
        return "(" + "".join(c.to_parens() for c in self.children) + ")"

    __str__ = to_parens

    @cached_property
    def edges(self) -> int:
        return sum(1 + c.edges for c in self.children)

    @property
    def vertices(self) -> int:
        return self.edges + 1

    @property
    def degree(self) -> int:
        return len(self.children)

    @cached_property
    def layout(self) -> "Layout":
        return Layout.of(self)


@dataclass(frozen=True)
class Layout:
    """Preorder arrays: children lists, parent, depth and subtree sizes."""

    children: tuple[tuple[int, ...], ...]
    parent: tuple[int, ...]
    depth: tuple[int, ...]
    size: tuple[int, ...]

    @classmethod
    def of(cls, tree: OrderedTree) -> "Layout":
        children: list[list[int]] = []
        parent: list[int] = []
        depth: list[int] = []

        def walk(t: OrderedTree, par: int, d: int) -> int:
            me = len(children)
            children.append([])
            parent.append(par)
            depth.append(d)
            for c in t.children:
                children[me].append(walk(c, me, d + 1))
            return me

        walk(tree, -1, 0)
        size = [1] * len(children)
        for v in range(len(children) - 1, -1, -1):
            for c in children[v]:
                size[v] += size[c]
        return cls(tuple(map(tuple, children)), tuple(parent), tuple(depth), tuple(size))

    def subtree(self, v: int) -> range:
        # preorder: a subtree occupies a contiguous block
        return range(v, v + self.size[v])

    def right_path(self, v: int) -> list[int]:
        path = [v]
        while self.children[path[-1]]:
            path.append(self.children[path[-1]][-1])
        return path


@dataclass(frozen=True)
class MutConfig:
    tree: OrderedTree
    mutator: int
    new_type: frozenset[int]
    split: int | None = None
    ent: bool = field(default=False, compare=False)

    def __str__(self) -> str:
        out = f"{self.tree.to_parens()} m={self.mutator}"
        if self.split is not None:
            out += f" s={self.split}"
        if self.ent:
            out += " N={" + ",".join(map(str, sorted(self.new_type))) + "}"
        return out

    @classmethod
    def parse(cls, text: str) -> "MutConfig":
        parens, *fields = text.split()
        tree = OrderedTree.parse(parens)
        opts = dict(f.split("=", 1) for f in fields)
        mutator = int(opts["m"])
        split = int(opts["s"]) if "s" in opts else None
        if "N" in opts:
            body = opts["N"].strip("{}")
            nt = frozenset(int(x) for x in body.split(",") if x)
            return cls(tree, mutator, nt, split, ent=True)
        # models other than ENT determine the new-type set from tree + mutator;
        # without the model the set is unknown, so leave it empty.
        return cls(tree, mutator, frozenset(), split)


def _dyck_words(n: int) -> Iterator[str]:
    """Balanced words with ``n`` pairs in lexicographic order ('(' < ')')."""
    buf: list[str] = []

    def rec(opened: int, closed: int):
        if closed == n:
            yield "".join(buf)
            return
        if opened < n:
            buf.append("(")
            yield from rec(opened + 1, closed)
            buf.pop()
        if closed < opened:
            buf.append(")")
            yield from rec(opened, closed + 1)
            buf.pop()

    yield from rec(0, 0)


def gen_trees(n_edges: int) -> list[OrderedTree]:
    """All ordered trees with ``n_edges`` edges, sorted by their text form."""
    if n_edges < 0:
        raise ValueError("n_edges must be non-negative")
    if n_edges > MAX_EDGES:
        raise SizeLimit(f"n_edges={n_edges} exceeds {MAX_EDGES}")
    return [OrderedTree.parse("(" + w + ")") for w in _dyck_words(n_edges)]


def gen_binary_trees(n_internal: int) -> list[OrderedTree]:
    """Complete binary trees (updegree 0 or 2) with ``n_internal`` internal vertices."""
    if n_internal < 0:
        raise ValueError("n_internal must be non-negative")
    if n_internal > MAX_EDGES:
        raise SizeLimit(f"n_internal={n_internal} exceeds {MAX_EDGES}")
    memo: dict[int, list[OrderedTree]] = {0: [OrderedTree()]}

    def build(k: int) -> list[OrderedTree]:
        if k not in memo:
            memo[k] = [
                OrderedTree((left, right))
                for i in range(k)
                for left in build(i)
                for right in build(k - 1 - i)
            ]
        return memo[k]

    return sorted(build(n_internal), key=OrderedTree.to_parens)


def _down_closed_sets(lay: Layout, m: int) -> Iterator[frozenset[int]]:
    """Every vertex set containing ``m`` where each other member's parent is a member."""

    def grow(current: frozenset[int], frontier: tuple[int, ...]) -> Iterator[frozenset[int]]:
        # frontier: children of members not yet decided, in a fixed order
        if not frontier:
            yield current
            return
        v, rest = frontier[0], frontier[1:]
        yield from grow(current, rest)
        yield from grow(current | {v}, rest + lay.children[v])

    yield from grow(frozenset({m}), lay.children[m])


def _configs_for_tree(model: MutationModel, tree: OrderedTree) -> Iterator[MutConfig]:
    lay = tree.layout
    M = MutationModel
    for m in range(len(lay.children)):
        kids = lay.children[m]
        deg = len(kids)
        if model is M.SHORT_LIVED:
            if deg >= 1 and not lay.children[kids[-1]]:
                yield MutConfig(tree, m, frozenset({m, kids[-1]}))
        elif model is M.TOGGLE or model is M.TOGGLE_H1:
            if model is M.TOGGLE_H1 and lay.depth[m] != 1:
                continue
            for s in range(deg + 1):
                nt = {m}
                for c in kids[s:]:
                    nt.update(lay.subtree(c))
                yield MutConfig(tree, m, frozenset(nt), split=s)
        elif model is M.ENT:
            for nt in _down_closed_sets(lay, m):
                yield MutConfig(tree, m, nt, ent=True)
        elif model is M.RIGHT_BRANCH:
            if deg >= 1:
                yield MutConfig(tree, m, frozenset({m, *lay.subtree(kids[-1])}))
        elif model is M.RIGHT_PATH:
            yield MutConfig(tree, m, frozenset(lay.right_path(m)))
        elif model is M.RIGHT_PATH_STAR:
            if deg >= 1:
                yield MutConfig(tree, m, frozenset(lay.right_path(m)))
        elif model is M.BINARY_COMPLETE:
            yield MutConfig(tree, m, frozenset(lay.subtree(m)))
        else:  # pragma: no cover
            raise ValueError(f"unknown model {model}")


def _check_limits(model: MutationModel, n: int) -> None:
    if n < 0:
        raise ValueError("n must be non-negative")
    if model is MutationModel.ENT and n > MAX_ENT_SUBSETS:
        raise SizeLimit(f"ENT colouring enumeration limited to n <= {MAX_ENT_SUBSETS}")
    if n > MAX_EDGES:
        raise SizeLimit(f"n={n} exceeds {MAX_EDGES}")


def _trees_for(model: MutationModel, n: int) -> list[OrderedTree]:
    if model is MutationModel.BINARY_COMPLETE:
        return gen_binary_trees(n)
    return gen_trees(n)


def enumerate_configs(model: MutationModel, n: int) -> Iterator[MutConfig]:
    """Every admissible configuration of ``model`` at size ``n``, exactly once.

    ``n`` counts edges, except for BINARY_COMPLETE where it counts internal
    vertices.
    """
    model = MutationModel(model)
    _check_limits(model, n)
    for tree in _trees_for(model, n):
        yield from _configs_for_tree(model, tree)


def _tally(model: MutationModel, trees: list[OrderedTree]) -> tuple[int, int, int]:
    configs = vertices = new_type = 0
    for tree in trees:
        nv = tree.vertices
        for cfg in _configs_for_tree(model, tree):
            configs += 1
            vertices += nv
            new_type += len(cfg.new_type)
    return configs, vertices, new_type


def _ent_tree_tally(tree: OrderedTree) -> tuple[int, int]:
    """(colourings, summed new-type sizes) over all mutator positions of one tree.

    For a vertex ``v`` the down-closed sets rooted at ``v`` number
    ``f(v) = prod(1 + f(c))`` and their sizes sum to
    ``g(v) = f(v) + sum_c g(c) * f(v) / (1 + f(c))``.
    """
    lay = tree.layout
    n = len(lay.children)
    f = [1] * n
    g = [0] * n
    for v in range(n - 1, -1, -1):
        prod = 1
        for c in lay.children[v]:
            prod *= 1 + f[c]
        f[v] = prod
        total = prod
        for c in lay.children[v]:
            total += g[c] * (prod // (1 + f[c]))
        g[v] = total
    return sum(f), sum(g)


def ent_count_row_product(n: int) -> CountRow:
    """ENT counts without listing colourings; reaches further than enumeration."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_ENT_PRODUCT:
        raise SizeLimit(f"ENT product count limited to n <= {MAX_ENT_PRODUCT}")
    configs = new_type = 0
    for tree in gen_trees(n):
        c, s = _ent_tree_tally(tree)
        configs += c
        new_type += s
    return CountRow(n, configs, configs * (n + 1), new_type)


def _tally_chunk(args: tuple[str, int, int, int]) -> tuple[int, int, int]:
    model, n, start, stop = args
    model = MutationModel(model)
    return _tally(model, _trees_for(model, n)[start:stop])


def count_row(model: MutationModel, n: int, workers: int = 1) -> CountRow:
    """Aggregate (configurations, vertices, new-type vertices) at size ``n``.

    With ``workers > 1`` the tree list is split into contiguous chunks counted
    in separate processes and summed.
    """
    model = MutationModel(model)
    _check_limits(model, n)
    if workers <= 1:
        configs, vertices, new_type = _tally(model, _trees_for(model, n))
        return CountRow(n, configs, vertices, new_type)
    total = len(_trees_for(model, n))
    step = -(-total // workers)
    jobs = [(model.value, n, i, min(i + step, total)) for i in range(0, total, step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_tally_chunk, jobs))
    return CountRow(n, *(sum(col) for col in zip(*parts)))


def leaf_pairs(n_edges: int) -> int:
    """Number of (tree, distinguished leaf) pairs with ``n_edges`` edges."""
    return sum(
        sum(1 for kids in t.layout.children if not kids) for t in gen_trees(n_edges)
    )
