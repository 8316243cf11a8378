"""Tamed sets of a contraction*-decomposition and the matroid they form.

The extended ground set lists the matroid elements ``0..n-1`` first and then
one element per tree edge, ``n + i`` for the ``i``-th edge in increasing
order of bottom vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .decomposition import StarDecomposition, elements_under, is_valid
from .io import format_matroid
from .matroid import InputError, Matroid, elements_of, popcount
from .tree import RootedTree


@dataclass(frozen=True)
class TamingRules:
    """Switches for mutation testing; the defaults are the real definition."""

    branch_subtraction: bool = True
    send_surplus: bool = True
    require_independent: bool = True


RULES = TamingRules()


@dataclass(frozen=True)
class ExtendedSet:
    matroid_part: int = 0
    edge_part: frozenset[int] = frozenset()

    def __len__(self) -> int:
        return popcount(self.matroid_part) + len(self.edge_part)


@dataclass(frozen=True)
class TokenLedger:
    """Per-vertex token counts; ``kept``/``root_surplus`` are set by :func:`distribute`."""

    assigned: tuple[int, ...]
    kept: tuple[int, ...] | None = None
    root_surplus: int | None = None


def distribute(tree: RootedTree, assigned: Sequence[int], rules: TamingRules = RULES) -> TokenLedger:
    """Bottom-up pass: every non-root vertex keeps one token and passes the rest up."""
    held = list(assigned)
    kept = [0] * len(tree)
    for v in reversed(tree.preorder):
        if v == tree.root:
            continue
        if rules.send_surplus:
            kept[v] = min(held[v], 1)
        else:
            kept[v] = held[v]
        held[tree.parent[v]] += held[v] - kept[v]
    return TokenLedger(tuple(assigned), tuple(kept), held[tree.root])


def distribute_marking(tree: RootedTree, assigned: Sequence[int], order: Sequence[int] | None = None,
                       rules: TamingRules = RULES) -> tuple[TokenLedger, list[tuple[int, int, int]]]:
    """The marking loop, step by step.

    Repeatedly picks an unmarked non-root vertex whose descendants are all
    marked (the first such vertex in ``order``, default by id) and lets it
    send its surplus.  Returns the ledger and the ``(vertex, held, sent)``
    steps.
    """
    order = list(tree.vertices) if order is None else list(order)
    held = list(assigned)
    kept = [0] * len(tree)
    marked = [False] * len(tree)
    marked[tree.root] = True  # never processed; excluded from readiness below
    steps = []
    remaining = len(tree) - 1
    while remaining:
        for v in order:
            if v == tree.root or marked[v]:
                continue
            if all(marked[u] for u in tree.subtree(v)[1:]):
                break
        else:
            raise InputError("processing order does not cover all vertices")
        k = held[v]
        sent = (k - 1 if k > 0 else 0) if rules.send_surplus else 0
        kept[v] = k - sent
        held[tree.parent[v]] += sent
        marked[v] = True
        remaining -= 1
        steps.append((v, k, sent))
    return TokenLedger(tuple(assigned), tuple(kept), held[tree.root]), steps


class Taming:
    """Precomputed tree data for evaluating tokens of one decomposition."""

    def __init__(self, m: Matroid, d: StarDecomposition, rules: TamingRules = RULES,
                 check: bool = True):
        if check and not is_valid(m, d):
            raise InputError("decomposition is not a valid contraction*-decomposition")
        self.m = m
        self.d = d
        self.rules = rules
        tree = d.tree
        self.tree = tree
        self.edge_vertices = tree.edges
        self.edge_pos = {v: i for i, v in enumerate(self.edge_vertices)}
        # tokens go to leaves and internal branching vertices; never the root
        self.special = [v for v in tree.preorder
                        if v != tree.root and tree.is_special(v)]
        self.under = {v: elements_under(d, v) for v in self.special}
        self.outside = {v: m.full & ~self.under[v] for v in self.special}
        self.outside_rank = {v: m.rank(self.outside[v]) for v in self.special}
        self.path_mask = {v: self.edge_mask(tree.branch_path_edges(v)) for v in self.special}
        self.kids = {v: tree.top_special_descendants(v) for v in self.special}

    def edge_mask(self, edges: Iterable[int]) -> int:
        mask = 0
        for v in edges:
            mask |= 1 << self.edge_pos[v]
        return mask

    def split(self, x: ExtendedSet | int) -> tuple[int, int]:
        """(matroid mask, edge-position mask) of an extended set."""
        if isinstance(x, ExtendedSet):
            if x.matroid_part >> self.m.n:
                raise InputError("matroid part outside the ground set")
            bad = set(x.edge_part) - set(self.edge_pos)
            if bad:
                raise InputError(f"{sorted(bad)} are not edges of the tree")
            return x.matroid_part, self.edge_mask(x.edge_part)
        n = self.m.n
        if x < 0 or x >> (n + len(self.edge_vertices)):
            raise InputError("set outside the extended ground set")
        return x & self.m.full, x >> n

    def local_rank(self, v: int, xm: int, rank) -> int:
        """Rank of ``X & T(v)`` after contracting everything outside ``T(v)``."""
        return rank((xm & self.under[v]) | self.outside[v]) - self.outside_rank[v]

    def assigned(self, xm: int, xe: int, rank=None) -> list[int]:
        rank = self.m.rank if rank is None else rank
        local = {v: self.local_rank(v, xm, rank) for v in self.special}
        tokens = [0] * len(self.tree)
        for v in self.special:
            t = popcount(xe & self.path_mask[v]) + local[v]
            if self.rules.branch_subtraction:
                t -= sum(local[u] for u in self.kids[v])
            tokens[v] = t
        return tokens

    def tamed(self, xm: int, xe: int, rank=None) -> bool:
        rank = self.m.rank if rank is None else rank
        if self.rules.require_independent and rank(xm) != popcount(xm):
            return False
        return distribute(self.tree, self.assigned(xm, xe, rank), self.rules).root_surplus == 0


def token_assignment(m: Matroid, d: StarDecomposition, x: ExtendedSet | int,
                     rules: TamingRules = RULES) -> TokenLedger:
    t = Taming(m, d, rules)
    return TokenLedger(tuple(t.assigned(*t.split(x))))


def token_ledger(m: Matroid, d: StarDecomposition, x: ExtendedSet | int,
                 rules: TamingRules = RULES) -> TokenLedger:
    t = Taming(m, d, rules)
    return distribute(d.tree, t.assigned(*t.split(x)), rules)


def is_tamed(m: Matroid, d: StarDecomposition, x: ExtendedSet | int,
             rules: TamingRules = RULES) -> bool:
    t = Taming(m, d, rules)
    return t.tamed(*t.split(x))


class TamedExtension(Matroid):
    """The matroid on matroid elements plus tree edges whose independent sets are the tamed sets."""

    kind = "tamed-extension"

    def __init__(self, base: Matroid, decomposition: StarDecomposition,
                 rules: TamingRules = RULES, use_table: bool = True):
        if use_table:
            base.rank_table()
        self.base = base
        self.decomposition = decomposition
        self.taming = Taming(base, decomposition, rules)
        self.rules = rules
        super().__init__(base.n + decomposition.tree.num_edges)

    @property
    def tree(self) -> RootedTree:
        return self.decomposition.tree

    def edge_element(self, vertex: int) -> int:
        """Extended-ground-set index of the tree edge with this bottom vertex."""
        return self.base.n + self.taming.edge_pos[vertex]

    def edge_of(self, element: int) -> int:
        return self.taming.edge_vertices[element - self.base.n]

    @property
    def edges_mask(self) -> int:
        return self.full & ~self.base.full

    def encode(self, x: ExtendedSet) -> int:
        xm, xe = self.taming.split(x)
        return xm | (xe << self.base.n)

    def decode(self, mask: int) -> ExtendedSet:
        xm, xe = self.taming.split(mask)
        edges = frozenset(self.taming.edge_vertices[i] for i in elements_of(xe))
        return ExtendedSet(xm, edges)

    def is_independent(self, mask: int) -> bool:
        self._check(mask)
        return self.taming.tamed(mask & self.base.full, mask >> self.base.n)

    def _rank(self, mask: int) -> int:
        # greedy in index order; exact because tamed sets form a matroid
        current = 0
        for e in elements_of(mask):
            if self.is_independent(current | 1 << e):
                current |= 1 << e
        return popcount(current)

    def _build_table(self) -> list[int]:
        rank = self.base.rank
        n = self.base.n
        size = 1 << self.n
        table = [0] * size
        for s in range(1, size):
            xm, xe = s & self.base.full, s >> n
            if self.taming.tamed(xm, xe, rank):
                table[s] = popcount(s)
            else:
                table[s] = max(table[s & ~(1 << e)] for e in elements_of(s))
        return table

    def __repr__(self) -> str:
        return f"TamedExtension({self.base!r}, {self.decomposition!r})"


def extension(m: Matroid, d: StarDecomposition, rules: TamingRules = RULES) -> TamedExtension:
    return TamedExtension(m, d, rules)


def format_extension(ext: TamedExtension) -> str:
    """Explicit-bases file followed by a comment block naming the edge elements."""
    lines = [format_matroid(ext).rstrip("\n"), "# edge-map: element bottom top"]
    for v in ext.tree.edges:
        lines.append(f"# edge {ext.edge_element(v)} {v} {ext.tree.parent[v]}")
    return "\n".join(lines) + "\n"


def parse_edge_map(text: str) -> dict[int, tuple[int, int]]:
    out = {}
    for line in text.splitlines():
        toks = line.split()
        if len(toks) == 5 and toks[:2] == ["#", "edge"]:
            out[int(toks[2])] = (int(toks[3]), int(toks[4]))
    return out
