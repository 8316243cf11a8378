"""Recursive matroid depth parameters.

All recursions run on minors ``(M / F) | S`` of the input matroid, where ``F``
is kept closed (a flat) so that equal minors share a memo entry.  Ranks come
from the input's precomputed rank table.
"""

from __future__ import annotations

from typing import Callable

from .matroid import (
    GF2Matroid,
    InputError,
    Matroid,
    ResourceError,
    check_cap,
    component_masks,
    elements_of,
    gf2_rank,
    popcount,
)

KINDS = ("cd", "dd", "cd-alt", "dd-alt")

#: Largest span dimension accepted by :func:`csd_gf2_quotient`.
QUOTIENT_DIM_CAP = 6


class _DepthRecursion:
    def __init__(self, m: Matroid, kind: str, memo: bool, cap: int | None):
        if kind not in KINDS:
            raise InputError(f"unknown depth kind {kind!r}; expected one of {KINDS}")
        check_cap(m.n, cap)
        self.m = m
        self.kind = kind
        self.rank: Callable[[int], int] = m.rank_table(cap).__getitem__
        self.memo: dict[tuple[int, int], int] | None = {} if memo else None

    def closure(self, flat: int) -> int:
        r = self.rank(flat)
        for e in range(self.m.n):
            bit = 1 << e
            if not flat & bit and self.rank(flat | bit) == r:
                flat |= bit
        return flat

    def single(self, flat: int, ground: int) -> int:
        r = self.rank(flat | ground) - self.rank(flat)
        if self.kind == "cd-alt":
            return r
        if self.kind == "dd-alt":
            return 1 - r
        return 1

    def step(self, flat: int, ground: int, e: int) -> tuple[int, int]:
        bit = 1 << e
        if self.kind in ("cd", "cd-alt"):
            return self.closure(flat | bit), ground & ~bit
        return flat, ground & ~bit

    def value(self, flat: int, ground: int) -> int:
        key = (flat, ground)
        if self.memo is not None and key in self.memo:
            return self.memo[key]
        size = popcount(ground)
        if size == 0:
            out = 0
        elif size == 1:
            out = self.single(flat, ground)
        else:
            comps = component_masks(self.rank, flat, ground)
            if len(comps) > 1:
                out = max(self.value(flat, c) for c in comps)
            else:
                out = 1 + min(self.value(*self.step(flat, ground, e))
                              for e in elements_of(ground))
        if self.memo is not None:
            self.memo[key] = out
        return out

    def top(self) -> tuple[int, int | None]:
        ground = self.m.full
        flat = self.closure(0) if self.kind in ("cd", "cd-alt") else 0
        value = self.value(flat, ground)
        if popcount(ground) < 2 or len(component_masks(self.rank, flat, ground)) > 1:
            return value, None
        for e in elements_of(ground):
            if 1 + self.value(*self.step(flat, ground, e)) == value:
                return value, e
        raise AssertionError("no element attains the minimum")


def depth_witness(m: Matroid, kind: str = "cd", *, memo: bool = True,
                  cap: int | None = None) -> tuple[int, int | None]:
    """Depth value plus the smallest element attaining the top-level minimum.

    The element is ``None`` when the matroid is disconnected or has fewer
    than two elements (no removal step happens at the top).
    """
    return _DepthRecursion(m, kind, memo, cap).top()


def depth(m: Matroid, kind: str = "cd", *, memo: bool = True, cap: int | None = None) -> int:
    rec = _DepthRecursion(m, kind, memo, cap)
    flat = rec.closure(0) if kind in ("cd", "cd-alt") else 0
    return rec.value(flat, m.full)


def contraction_depth(m: Matroid, *, memo: bool = True, cap: int | None = None) -> int:
    return depth(m, "cd", memo=memo, cap=cap)


def deletion_depth(m: Matroid, *, memo: bool = True, cap: int | None = None) -> int:
    return depth(m, "dd", memo=memo, cap=cap)


def altered_contraction_depth(m: Matroid, *, memo: bool = True, cap: int | None = None) -> int:
    """Like contraction depth, but a single element scores its own rank."""
    return depth(m, "cd-alt", memo=memo, cap=cap)


def altered_deletion_depth(m: Matroid, *, memo: bool = True, cap: int | None = None) -> int:
    """Single loop scores 1, single coloop 0; connected case deletes."""
    return depth(m, "dd-alt", memo=memo, cap=cap)


def _span(vectors) -> list[int]:
    span = {0}
    for v in vectors:
        span |= {s ^ v for s in span}
    span.discard(0)
    return sorted(span)


def _quotient(vectors: tuple[int, ...], line: int) -> tuple[int, ...]:
    pivot = line.bit_length() - 1
    return tuple(sorted(v ^ line if v >> pivot & 1 else v for v in vectors))


def csd_gf2_quotient(m: Matroid, *, dim_cap: int = QUOTIENT_DIM_CAP) -> int:
    """Contraction*-depth of a binary matroid by factoring out lines.

    Connected matroids recurse on every nonzero vector of their span; the
    quotient by a line drops the line's leading coordinate.
    """
    if not isinstance(m, GF2Matroid):
        raise InputError("quotient recursion needs a gf2 matroid")
    check_cap(m.n, None)
    dim = gf2_rank(m.vectors)
    if dim > dim_cap:
        raise ResourceError(f"span dimension {dim} exceeds cap {dim_cap}")
    memo: dict[tuple[int, ...], int] = {}

    def rec(vecs: tuple[int, ...]) -> int:
        if vecs in memo:
            return memo[vecs]
        if len(vecs) <= 1:
            out = 1 if vecs and vecs[0] else 0
        else:
            def rank(mask: int) -> int:
                return gf2_rank(vecs[i] for i in elements_of(mask))

            comps = component_masks(rank, 0, (1 << len(vecs)) - 1)
            if len(comps) > 1:
                out = max(rec(tuple(sorted(vecs[i] for i in elements_of(c)))) for c in comps)
            else:
                out = 1 + min(rec(_quotient(vecs, line)) for line in _span(vecs))
        memo[vecs] = out
        return out

    return rec(tuple(sorted(m.vectors)))
