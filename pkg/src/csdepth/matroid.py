"""Matroids over dense integer ground sets, queried through a rank oracle.

Subsets of the ground set are plain ``int`` bitmasks: bit ``i`` set means
element ``i`` belongs to the set.  Use :func:`mask_of` and :func:`elements_of`
to convert from and to element ids.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

#: Largest ground set for which subset enumeration (circuits, components,
#: rank tables, depth recursions) is attempted.
ENUM_CAP = 16


class InputError(ValueError):
    """Malformed input: out-of-range elements, overlapping minors, ..."""


class ParseError(InputError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ResourceError(RuntimeError):
    """An enumeration cap was exceeded."""


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        if e < 0:
            raise InputError(f"negative element id {e}")
        mask |= 1 << e
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def check_cap(n: int, cap: int | None, what: str = "ground set") -> None:
    cap = ENUM_CAP if cap is None else cap
    if n > cap:
        raise ResourceError(f"{what} of size {n} exceeds enumeration cap {cap}")


class ElementKind(enum.Enum):
    LOOP = "loop"
    COLOOP = "coloop"
    ORDINARY = "ordinary"


class Matroid:
    """Base class: a ground set ``0..n-1`` and a rank oracle.

    Subclasses implement :meth:`_rank` on validated masks.  Everything else
    (independence, bases, circuits, tables) is derived from it.
    """

    kind = "abstract"

    def __init__(self, n: int):
        if n < 0:
            raise InputError("ground set size must be non-negative")
        self.n = n
        self._table: list[int] | None = None

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def _check(self, mask: int) -> None:
        if mask < 0 or mask >> self.n:
            raise InputError(f"set {elements_of(mask)} not within ground set of size {self.n}")

    def rank(self, mask: int) -> int:
        self._check(mask)
        if self._table is not None:
            return self._table[mask]
        return self._rank(mask)

    def _rank(self, mask: int) -> int:
        raise NotImplementedError

    def rank_of(self, elements: Iterable[int]) -> int:
        return self.rank(mask_of(elements))

    @property
    def matroid_rank(self) -> int:
        return self.rank(self.full)

    def is_independent(self, mask: int) -> bool:
        return self.rank(mask) == popcount(mask)

    def rank_table(self, cap: int | None = None) -> list[int]:
        """Ranks of all ``2**n`` subsets, indexed by mask.  Computed once."""
        if self._table is None:
            check_cap(self.n, cap)
            self._table = self._build_table()
        return self._table

    def _build_table(self) -> list[int]:
        return [self._rank(m) for m in range(1 << self.n)]

    def bases(self) -> list[int]:
        r = self.matroid_rank
        out = []
        for combo in itertools.combinations(range(self.n), r):
            m = mask_of(combo)
            if self.rank(m) == r:
                out.append(m)
        return out

    def __repr__(self) -> str:
        return f"<{type(self).__name__} n={self.n}>"


class UniformMatroid(Matroid):
    kind = "uniform"

    def __init__(self, n: int, r: int):
        super().__init__(n)
        if not 0 <= r <= n:
            raise InputError(f"uniform matroid needs 0 <= r <= n, got n={n}, r={r}")
        self.r = r

    def _rank(self, mask: int) -> int:
        return min(popcount(mask), self.r)

    def __repr__(self) -> str:
        return f"UniformMatroid({self.n}, {self.r})"


def free_matroid(n: int) -> UniformMatroid:
    return UniformMatroid(n, n)


class GraphicMatroid(Matroid):
    """Cycle matroid of a multigraph; element ``i`` is ``edges[i]``."""

    kind = "graphic"

    def __init__(self, vertices: int, edges: Sequence[tuple[int, int]]):
        super().__init__(len(edges))
        for u, v in edges:
            if not (0 <= u < vertices and 0 <= v < vertices):
                raise InputError(f"edge ({u}, {v}) uses a vertex outside 0..{vertices - 1}")
        self.vertices = vertices
        self.edges = tuple((int(u), int(v)) for u, v in edges)

    def _rank(self, mask: int) -> int:
        parent = list(range(self.vertices))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        r = 0
        for i in elements_of(mask):
            a, b = (find(x) for x in self.edges[i])
            if a != b:
                parent[a] = b
                r += 1
        return r

    def __repr__(self) -> str:
        return f"GraphicMatroid({self.vertices}, {list(self.edges)})"


def gf2_rank(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of integer-encoded vectors (XOR basis by leading bit)."""
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


class GF2Matroid(Matroid):
    """Vector matroid over GF(2).

    ``columns`` are bit strings of length ``rows``; the first character is
    row 0 and becomes the most significant bit of the integer encoding.
    """

    kind = "gf2"

    def __init__(self, rows: int, columns: Sequence[str | int]):
        super().__init__(len(columns))
        self.rows = rows
        vecs = []
        for c in columns:
            if isinstance(c, str):
                if len(c) != rows or set(c) - {"0", "1"}:
                    raise InputError(f"column {c!r} is not a {rows}-bit string")
                c = int(c, 2) if c else 0
            if c < 0 or c >> rows:
                raise InputError(f"column {c} does not fit in {rows} rows")
            vecs.append(c)
        self.vectors = tuple(vecs)

    def column_string(self, i: int) -> str:
        return format(self.vectors[i], f"0{self.rows}b") if self.rows else ""

    def _rank(self, mask: int) -> int:
        return gf2_rank(self.vectors[i] for i in elements_of(mask))

    def __repr__(self) -> str:
        return f"GF2Matroid({self.rows}, {[self.column_string(i) for i in range(self.n)]})"


class ExplicitMatroid(Matroid):
    """Matroid given by its list of bases; ``rank(X) = max |X & B|``."""

    kind = "explicit"

    def __init__(self, n: int, bases: Iterable[int | Iterable[int]]):
        super().__init__(n)
        masks = []
        for b in bases:
            m = b if isinstance(b, int) else mask_of(b)
            self._check(m)
            masks.append(m)
        if not masks:
            raise InputError("explicit matroid needs at least one basis")
        sizes = {popcount(m) for m in masks}
        if len(sizes) != 1:
            raise InputError(f"bases have differing sizes {sorted(sizes)}")
        self.basis_masks = tuple(sorted(set(masks)))

    def _rank(self, mask: int) -> int:
        return max(popcount(mask & b) for b in self.basis_masks)

    def bases(self) -> list[int]:
        return list(self.basis_masks)

    def __repr__(self) -> str:
        return f"ExplicitMatroid({self.n}, {[elements_of(b) for b in self.basis_masks]})"


def direct_sum(*parts: Matroid) -> ExplicitMatroid:
    """Direct sum as an explicit matroid; elements of later parts are shifted."""
    n = 0
    basis_lists = []
    for p in parts:
        basis_lists.append([b << n for b in p.bases()])
        n += p.n
    bases = [sum(combo) for combo in itertools.product(*basis_lists)]
    return ExplicitMatroid(n, bases)


class MinorView(Matroid):
    """``base / contract \\ delete``, re-indexed densely.

    ``index_map[i]`` is the base element behind minor element ``i``.
    """

    kind = "minor"

    def __init__(self, base: Matroid, contract: int, delete: int):
        base._check(contract)
        base._check(delete)
        if contract & delete:
            raise InputError(
                f"contract and delete overlap in {elements_of(contract & delete)}")
        self.base = base
        self.contract = contract
        self.delete = delete
        self.index_map = elements_of(base.full & ~(contract | delete))
        super().__init__(len(self.index_map))
        self._contract_rank = base.rank(contract)

    def lift(self, mask: int) -> int:
        """Translate a minor-side mask into base indices."""
        out = 0
        for i in elements_of(mask):
            out |= 1 << self.index_map[i]
        return out

    def project(self, base_mask: int) -> int:
        """Translate base indices to minor indices, dropping removed elements."""
        out = 0
        for i, b in enumerate(self.index_map):
            if base_mask >> b & 1:
                out |= 1 << i
        return out

    def _rank(self, mask: int) -> int:
        return self.base.rank(self.lift(mask) | self.contract) - self._contract_rank

    def __repr__(self) -> str:
        return (f"MinorView({self.base!r}, contract={elements_of(self.contract)}, "
                f"delete={elements_of(self.delete)})")


class DualView(Matroid):
    kind = "dual"

    def __init__(self, base: Matroid):
        super().__init__(base.n)
        self.base = base
        self._base_rank = base.matroid_rank

    def _rank(self, mask: int) -> int:
        return self.base.rank(self.full & ~mask) + popcount(mask) - self._base_rank

    def __repr__(self) -> str:
        return f"DualView({self.base!r})"


def dual(m: Matroid) -> DualView:
    return DualView(m)


def minor(m: Matroid, contract: int = 0, delete: int = 0) -> MinorView:
    return MinorView(m, contract, delete)


def restrict(m: Matroid, keep: int) -> MinorView:
    return MinorView(m, 0, m.full & ~keep)


def classify(m: Matroid, e: int) -> ElementKind:
    if not 0 <= e < m.n:
        raise InputError(f"element {e} not in ground set of size {m.n}")
    if m.rank(1 << e) == 0:
        return ElementKind.LOOP
    if m.rank(m.full & ~(1 << e)) == m.matroid_rank - 1:
        return ElementKind.COLOOP
    return ElementKind.ORDINARY


def has_ordinary_element(m: Matroid) -> bool:
    return any(classify(m, e) is ElementKind.ORDINARY for e in range(m.n))


def circuits(m: Matroid, cap: int | None = None) -> list[int]:
    """All circuits, sorted by size then by their sorted element tuples."""
    check_cap(m.n, cap)
    found = []
    for size in range(1, m.n + 1):
        for combo in itertools.combinations(range(m.n), size):
            x = mask_of(combo)
            if m.rank(x) == size:
                continue
            # dependent; minimal iff every one-smaller subset is independent
            if all(m.rank(x & ~(1 << e)) == size - 1 for e in combo):
                found.append(x)
    return found


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def groups(self, members: Iterable[int]) -> list[int]:
        blocks: dict[int, int] = {}
        for x in members:
            r = self.find(x)
            blocks[r] = blocks.get(r, 0) | (1 << x)
        return sorted(blocks.values(), key=lambda b: (b & -b))


@dataclass(frozen=True)
class ComponentPartition:
    blocks: tuple[int, ...]
    trivial: tuple[bool, ...]

    def block_of(self, e: int) -> int:
        for b in self.blocks:
            if b >> e & 1:
                return b
        raise InputError(f"element {e} not covered")

    def __len__(self) -> int:
        return len(self.blocks)


def components(m: Matroid, cap: int | None = None, method: str = "circuits") -> ComponentPartition:
    """Connected components.

    ``method="circuits"`` unions the elements of every circuit;
    ``method="fundamental"`` only unions fundamental circuits of one greedy
    basis, which gives the same partition at polynomial cost.
    """
    if method == "circuits":
        uf = _UnionFind(m.n)
        for c in circuits(m, cap):
            es = elements_of(c)
            for e in es[1:]:
                uf.union(es[0], e)
        blocks = uf.groups(range(m.n))
    elif method == "fundamental":
        blocks = component_masks(m.rank, 0, m.full)
    else:
        raise InputError(f"unknown components method {method!r}")
    trivial = tuple(popcount(b) == 1 and m.rank(b) == 0 for b in blocks)
    return ComponentPartition(tuple(blocks), trivial)


def component_masks(rank, contract: int, ground: int) -> list[int]:
    """Components of ``(M / contract) | ground`` for a base rank callable.

    Elements of ``ground`` may lie in ``contract`` or its closure; those are
    loops of the minor.  Blocks are sorted by their smallest element.
    """
    r0 = rank(contract)
    basis = 0
    rb = r0
    loops = []
    rest = []
    for e in elements_of(ground):
        bit = 1 << e
        if rank(contract | bit) == r0:
            loops.append(e)
            continue
        r = rank(contract | basis | bit)
        if r > rb:
            basis |= bit
            rb = r
        else:
            rest.append(e)
    uf = _UnionFind(ground.bit_length())
    bset = elements_of(basis)
    span = contract | basis
    for e in rest:
        for b in bset:
            if rank((span & ~(1 << b)) | (1 << e)) == rb:
                uf.union(e, b)
    blocks = uf.groups(list(bset) + rest)
    blocks.extend(1 << e for e in loops)
    return sorted(blocks, key=lambda b: (b & -b))
