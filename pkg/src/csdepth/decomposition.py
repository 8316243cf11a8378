"""Contraction*-decompositions: validity and exhaustive optimal search."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .matroid import InputError, Matroid, ResourceError, elements_of, popcount
from .tree import RootedTree, rooted_trees

log = logging.getLogger(__name__)

RANK_CAP = 6
SIZE_CAP = 10


@dataclass(frozen=True)
class StarDecomposition:
    """A rooted tree plus the leaf ``assignment[e]`` of every element ``e``."""

    tree: RootedTree
    assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))
        for e, leaf in enumerate(self.assignment):
            if not (0 <= leaf < len(self.tree)) or not self.tree.is_leaf(leaf):
                raise InputError(f"element {e} is mapped to {leaf}, which is not a leaf")

    @property
    def depth(self) -> int:
        return self.tree.depth

    def leaf_elements(self, leaf: int) -> int:
        mask = 0
        for e, l in enumerate(self.assignment):
            if l == leaf:
                mask |= 1 << e
        return mask

    def to_dot(self) -> str:
        labels = {l: elements_of(self.leaf_elements(l)) for l in self.tree.leaves}
        return self.tree.to_dot(leaf_labels=labels, name="decomposition")


def elements_under(d: StarDecomposition, v: int) -> int:
    """Mask of the elements mapped to leaves of the subtree at ``v``."""
    below = set(d.tree.subtree(v))
    mask = 0
    for e, leaf in enumerate(d.assignment):
        if leaf in below:
            mask |= 1 << e
    return mask


def _check_shape(m: Matroid, d: StarDecomposition) -> None:
    if len(d.assignment) != m.n:
        raise InputError(f"assignment covers {len(d.assignment)} elements, matroid has {m.n}")
    r = m.matroid_rank
    if d.tree.num_edges != r:
        raise InputError(f"tree has {d.tree.num_edges} edges but the matroid has rank {r}")


def _closure_sizes(tree: RootedTree, leaves: Sequence[int]) -> list[int]:
    paths = []
    for l in leaves:
        mask = 0
        for u in tree.root_path_edges(l):
            mask |= 1 << u
        paths.append(mask)
    sizes = [0] * (1 << len(leaves))
    unions = [0] * (1 << len(leaves))
    for lm in range(1, 1 << len(leaves)):
        low = (lm & -lm).bit_length() - 1
        unions[lm] = unions[lm & (lm - 1)] | paths[low]
        sizes[lm] = popcount(unions[lm])
    return sizes


def is_valid(m: Matroid, d: StarDecomposition) -> bool:
    """Check ``|E(T<f(X)>)| >= rank(X)`` for all element sets ``X``.

    The closure only depends on the set of leaves hit, and rank is monotone,
    so it suffices to test ``X = f^-1(L)`` for each nonempty leaf set ``L``.
    """
    _check_shape(m, d)
    leaves = d.tree.leaves
    sizes = _closure_sizes(d.tree, leaves)
    per_leaf = [d.leaf_elements(l) for l in leaves]
    for lm in range(1, 1 << len(leaves)):
        x = 0
        for i in elements_of(lm):
            x |= per_leaf[i]
        if m.rank(x) > sizes[lm]:
            return False
    return True


@dataclass
class SearchReport:
    depth: int | None
    decomposition: StarDecomposition | None
    trees_examined: int = 0
    assignments_examined: int = 0
    #: first valid decomposition per tree, when the search was asked to collect them
    valid: list[StarDecomposition] = field(default_factory=list)


def _twin_predecessors(tree: RootedTree) -> dict[int, int]:
    """Map a vertex to the preceding sibling with an isomorphic subtree."""
    out = {}
    for v in tree.vertices:
        prev: dict[tuple[int, ...], int] = {}
        for c in tree.children[v]:
            code = tree.canonical_levels(c)
            if code in prev:
                out[c] = prev[code]
            prev[code] = c
    return out


class _Assigner:
    """Backtracking over maps from non-loop elements to leaves of one tree.

    Elements are placed in index order.  A partial map is abandoned as soon
    as some leaf set is overloaded, since adding elements never lowers rank.
    Sibling subtrees that are isomorphic must be entered in order, which
    removes the maps that differ only by a tree automorphism.
    """

    def __init__(self, m: Matroid, tree: RootedTree, elements: Sequence[int]):
        self.m = m
        self.tree = tree
        self.elements = list(elements)
        self.leaves = tree.leaves
        self.sizes = _closure_sizes(tree, self.leaves)
        self.per_leaf = [0] * len(self.leaves)
        self.twin = _twin_predecessors(tree)
        self.occupied = [0] * len(tree)
        self.paths = [[l, *tree.ancestors(l)][:-1] for l in self.leaves]
        self.nodes = 0

    def _fits(self, i: int) -> bool:
        k = len(self.leaves)
        bit = 1 << i
        for lm in range(1, 1 << k):
            if not lm & bit:
                continue
            x = 0
            for j in elements_of(lm):
                x |= self.per_leaf[j]
            if self.m.rank(x) > self.sizes[lm]:
                return False
        return True

    def _may_enter(self, i: int) -> bool:
        for u in self.paths[i]:
            if not self.occupied[u]:
                t = self.twin.get(u)
                if t is not None and not self.occupied[t]:
                    return False
        return True

    def solutions(self, pos: int = 0) -> Iterator[tuple[int, ...]]:
        if pos == len(self.elements):
            yield tuple(self.per_leaf)
            return
        e = self.elements[pos]
        for i in range(len(self.leaves)):
            if not self._may_enter(i):
                continue
            self.nodes += 1
            self.per_leaf[i] |= 1 << e
            for u in self.paths[i]:
                self.occupied[u] += 1
            if self._fits(i):
                yield from self.solutions(pos + 1)
            for u in self.paths[i]:
                self.occupied[u] -= 1
            self.per_leaf[i] &= ~(1 << e)


def _decomposition(m: Matroid, tree: RootedTree, per_leaf: Sequence[int], loops: int) -> StarDecomposition:
    assignment = [tree.leaves[0]] * m.n
    for leaf, mask in zip(tree.leaves, per_leaf):
        for e in elements_of(mask):
            assignment[e] = leaf
    for e in elements_of(loops):
        assignment[e] = tree.leaves[0]
    return StarDecomposition(tree, tuple(assignment))


def _prepare(m: Matroid, rank_cap: int, size_cap: int) -> tuple[int, int, list[int]]:
    r = m.matroid_rank
    if r > rank_cap:
        raise ResourceError(f"rank {r} exceeds decomposition rank cap {rank_cap}")
    if m.n > size_cap:
        raise ResourceError(f"{m.n} elements exceed decomposition size cap {size_cap}")
    loops = 0
    others = []
    for e in range(m.n):
        if m.rank(1 << e) == 0:
            loops |= 1 << e
        else:
            others.append(e)
    return r, loops, others


def valid_decompositions(m: Matroid, tree: RootedTree, *, rank_cap: int = RANK_CAP,
                         size_cap: int = SIZE_CAP) -> Iterator[StarDecomposition]:
    """Valid decompositions on ``tree``, up to automorphisms, loops on the first leaf."""
    r, loops, others = _prepare(m, rank_cap, size_cap)
    if tree.num_edges != r:
        raise InputError(f"tree has {tree.num_edges} edges but the matroid has rank {r}")
    for per_leaf in _Assigner(m, tree, others).solutions():
        yield _decomposition(m, tree, per_leaf, loops)


def csd_search(m: Matroid, depth_cap: int | None = None, *, rank_cap: int = RANK_CAP,
               size_cap: int = SIZE_CAP, collect_valid: bool = False) -> SearchReport:
    """Find a minimum-depth contraction*-decomposition by exhaustive search.

    Trees are tried in order of depth, then canonical level sequence; the
    first valid assignment wins.  With ``depth_cap`` only trees of at most
    that depth are tried, and ``depth`` is ``None`` if none works.  With
    ``collect_valid`` the search keeps going through every tree (up to
    ``depth_cap``) and records the first valid map found on each.
    """
    m.rank_table()
    r, loops, others = _prepare(m, rank_cap, size_cap)
    report = SearchReport(None, None)
    if r == 0:
        d = StarDecomposition(RootedTree.single_vertex(), (0,) * m.n)
        report.depth, report.decomposition, report.trees_examined = 0, d, 1
        report.valid.append(d)
        return report
    for tree in rooted_trees(r):
        if depth_cap is not None and tree.depth > depth_cap:
            break
        if report.depth is not None and tree.depth > report.depth and not collect_valid:
            break
        report.trees_examined += 1
        assigner = _Assigner(m, tree, others)
        found = next(assigner.solutions(), None)
        report.assignments_examined += assigner.nodes
        if found is None:
            continue
        d = _decomposition(m, tree, found, loops)
        if collect_valid:
            report.valid.append(d)
        if report.depth is None:
            report.depth, report.decomposition = tree.depth, d
            log.debug("optimal depth %d on tree %r", tree.depth, tree)
    return report


def csd(m: Matroid, **kwargs) -> int:
    return csd_search(m, **kwargs).depth
