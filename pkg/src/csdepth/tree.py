"""Rooted trees stored as parent arrays.

An edge is named by its bottom (child) vertex, so the edge set of a tree is
just its set of non-root vertices.
"""

from __future__ import annotations

import re
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .matroid import InputError


class RootedTree:
    def __init__(self, parent: Sequence[int]):
        parent = tuple(int(p) for p in parent)
        roots = [v for v, p in enumerate(parent) if p < 0]
        if len(roots) != 1:
            raise InputError(f"expected exactly one root, found {len(roots)}")
        n = len(parent)
        for v, p in enumerate(parent):
            if p >= n or p == v:
                raise InputError(f"bad parent {p} for vertex {v}")
        self.parent = parent
        self.root = roots[0]
        # every vertex must reach the root
        for v in range(n):
            seen = 0
            while parent[v] >= 0:
                v = parent[v]
                seen += 1
                if seen > n:
                    raise InputError("parent links contain a cycle")

    @classmethod
    def single_vertex(cls) -> RootedTree:
        return cls([-1])

    @classmethod
    def path(cls, edges: int) -> RootedTree:
        return cls([-1] + list(range(edges)))

    @classmethod
    def star(cls, leaves: int) -> RootedTree:
        return cls([-1] + [0] * leaves)

    @classmethod
    def from_level_sequence(cls, levels: Sequence[int]) -> RootedTree:
        """Pre-order depths, root at depth 0."""
        if not levels or levels[0] != 0:
            raise InputError("level sequence must start with the root at level 0")
        parent = [-1]
        stack = [0]
        for v, lev in enumerate(levels[1:], start=1):
            if lev < 1 or lev > len(stack):
                raise InputError(f"invalid level {lev} at position {v}")
            del stack[lev:]
            parent.append(stack[-1])
            stack.append(v)
        return cls(parent)

    def __len__(self) -> int:
        return len(self.parent)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RootedTree) and self.parent == other.parent

    def __hash__(self) -> int:
        return hash(self.parent)

    def __repr__(self) -> str:
        return f"RootedTree({list(self.parent)})"

    @property
    def vertices(self) -> range:
        return range(len(self.parent))

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in self.parent]
        for v, p in enumerate(self.parent):
            if p >= 0:
                kids[p].append(v)
        return tuple(tuple(k) for k in kids)

    @cached_property
    def edges(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if v != self.root)

    @property
    def num_edges(self) -> int:
        return len(self.parent) - 1

    def is_leaf(self, v: int) -> bool:
        return not self.children[v]

    def is_branching(self, v: int) -> bool:
        return len(self.children[v]) >= 2

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if self.is_leaf(v))

    @cached_property
    def branching_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if self.is_branching(v))

    @cached_property
    def internal_branching_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in self.branching_vertices if v != self.root)

    def ancestors(self, v: int) -> list[int]:
        out = []
        while self.parent[v] >= 0:
            v = self.parent[v]
            out.append(v)
        return out

    def order_leq(self, u: int, v: int) -> bool:
        """``u`` equals ``v`` or lies below it."""
        return u == v or v in self.ancestors(u)

    @cached_property
    def preorder(self) -> tuple[int, ...]:
        out = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(reversed(self.children[v]))
        return tuple(out)

    def subtree(self, v: int) -> list[int]:
        """Vertices of ``T[v]`` in pre-order."""
        out = []
        stack = [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(self.children[u]))
        return out

    def subtree_edges(self, v: int) -> frozenset[int]:
        return frozenset(u for u in self.subtree(v) if u != v)

    def root_path_edges(self, v: int) -> frozenset[int]:
        """Edges on the path from ``v`` up to the root."""
        return frozenset([v, *self.ancestors(v)]) - {self.root}

    def upward_closure_edges(self, vertices: Iterable[int]) -> frozenset[int]:
        vertices = list(vertices)
        if not vertices:
            raise InputError("upward closure of the empty set is not defined")
        out: set[int] = set()
        for v in vertices:
            out |= self.root_path_edges(v)
        return frozenset(out)

    def vertex_depth(self, v: int) -> int:
        return len(self.ancestors(v))

    @cached_property
    def depth(self) -> int:
        return max(self.vertex_depth(v) for v in self.leaves)

    @property
    def height(self) -> int:
        return self.depth + 1

    def is_special(self, v: int) -> bool:
        """Leaf or branching vertex."""
        return self.is_leaf(v) or self.is_branching(v)

    def top_special_descendants(self, v: int) -> tuple[int, ...]:
        """The maximal strict descendants of ``v`` that are leaves or branching."""
        out = []
        for c in self.children[v]:
            while not self.is_special(c):
                (c,) = self.children[c]
            out.append(c)
        return tuple(out)

    def branch_path_edges(self, v: int) -> frozenset[int]:
        """Edges from ``v`` up to its nearest ancestor that branches or is the root."""
        out = set()
        u = v
        while u != self.root:
            out.add(u)
            u = self.parent[u]
            if self.is_branching(u):
                break
        return frozenset(out)

    def canonical_levels(self, v: int | None = None) -> tuple[int, ...]:
        """Level sequence with children ordered by decreasing sub-sequence."""
        v = self.root if v is None else v

        def code(u: int) -> list[int]:
            subs = sorted((code(c) for c in self.children[u]), reverse=True)
            return [0] + [lev + 1 for s in subs for lev in s]

        return tuple(code(v))

    def canonical(self) -> RootedTree:
        return RootedTree.from_level_sequence(self.canonical_levels())

    def stats(self) -> dict:
        return {
            "height": self.height,
            "depth": self.depth,
            "leaves": self.leaves,
            "branching": self.branching_vertices,
            "internal_branching": self.internal_branching_vertices,
        }

    def to_dot(self, leaf_labels: Mapping[int, Iterable[int]] | None = None,
               name: str = "T") -> str:
        lines = [f"digraph {name} {{", "  rankdir=TB;"]
        for v in self.preorder:
            label = str(v)
            if leaf_labels is not None and self.is_leaf(v):
                elems = ",".join(map(str, sorted(leaf_labels.get(v, ()))))
                label = f"{v}: {{{elems}}}"
            shape = "doublecircle" if v == self.root else "circle"
            lines.append(f'  v{v} [label="{label}", shape={shape}];')
        for v in self.preorder:
            if v != self.root:
                lines.append(f'  v{self.parent[v]} -> v{v} [label="e{v}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


_NODE_RE = re.compile(r'^\s*v(\d+) \[label="(\d+)(?:: \{([\d,]*)\})?"')
_EDGE_RE = re.compile(r"^\s*v(\d+) -> v(\d+)")


def tree_from_dot(text: str) -> tuple[RootedTree, dict[int, tuple[int, ...]]]:
    """Read back what :meth:`RootedTree.to_dot` writes."""
    nodes = []
    labels: dict[int, tuple[int, ...]] = {}
    edges = []
    for line in text.splitlines():
        if m := _NODE_RE.match(line):
            v = int(m.group(1))
            nodes.append(v)
            if m.group(3) is not None:
                labels[v] = tuple(int(x) for x in m.group(3).split(",") if x)
        elif m := _EDGE_RE.match(line):
            edges.append((int(m.group(1)), int(m.group(2))))
    if not nodes:
        raise InputError("no vertices in DOT text")
    parent = [-1] * (max(nodes) + 1)
    for p, c in edges:
        parent[c] = p
    return RootedTree(parent), labels


def level_sequences(vertices: int) -> Iterator[tuple[int, ...]]:
    """Canonical level sequences of all rooted trees on ``vertices`` vertices.

    Beyer-Hedetniemi successor rule, starting from the path and ending at the
    star; each isomorphism class appears exactly once.
    """
    if vertices < 1:
        return
    levels = list(range(1, vertices + 1))  # root at level 1 internally
    while True:
        yield tuple(x - 1 for x in levels)
        p = max((i for i in range(vertices) if levels[i] > 2), default=None)
        if p is None:
            return
        q = max(i for i in range(p) if levels[i] == levels[p] - 1)
        for i in range(p, vertices):
            levels[i] = levels[i - (p - q)]


def rooted_trees(edges: int) -> list[RootedTree]:
    """All rooted trees with ``edges`` edges, sorted by (depth, level sequence)."""
    trees = [RootedTree.from_level_sequence(s) for s in level_sequences(edges + 1)]
    trees.sort(key=lambda t: (t.depth, t.canonical_levels()))
    return trees
