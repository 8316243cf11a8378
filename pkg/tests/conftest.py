import itertools

import pytest

from csdepth.matroid import Matroid, elements_of, popcount
from csdepth.verify import build_corpus


def gf2_rank_by_rows(columns):
    """Row-reduce a 0/1 matrix given as column strings; independent of the XOR-basis code."""
    if not columns:
        return 0
    rows = [[int(col[i]) for col in columns] for i in range(len(columns[0]))]
    rank = 0
    for c in range(len(columns)):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                rows[r] = [a ^ b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def graphic_rank_by_components(vertices, edges):
    """Rank of an edge set as vertices minus connected components (DFS)."""
    adj = {v: set() for v in range(vertices)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen, comps = set(), 0
    for s in range(vertices):
        if s in seen:
            continue
        comps += 1
        stack = [s]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(adj[x] - seen)
    return vertices - comps


def subsets(n):
    return range(1 << n)


def brute_components(m: Matroid):
    """Components from the 'share a circuit' relation, closed transitively by hand."""
    circuits = []
    for x in subsets(m.n):
        if m.rank(x) < popcount(x) and all(m.rank(x & ~(1 << e)) == popcount(x) - 1
                                          for e in elements_of(x)):
            circuits.append(x)
    related = [[i == j for j in range(m.n)] for i in range(m.n)]
    for c in circuits:
        for i, j in itertools.permutations(elements_of(c), 2):
            related[i][j] = True
    for k in range(m.n):
        for i in range(m.n):
            for j in range(m.n):
                related[i][j] = related[i][j] or (related[i][k] and related[k][j])
    blocks = {frozenset(j for j in range(m.n) if related[i][j]) for i in range(m.n)}
    return sorted(blocks, key=min)


class CountingMatroid(Matroid):
    """Wraps a matroid and counts rank-oracle calls."""

    kind = "counting"

    def __init__(self, inner: Matroid):
        super().__init__(inner.n)
        self.inner = inner
        self.calls = 0

    def rank(self, mask):
        self.calls += 1
        return self.inner.rank(mask)

    def _rank(self, mask):
        return self.inner.rank(mask)


@pytest.fixture(scope="session")
def corpus():
    return build_corpus(0)


@pytest.fixture(scope="session")
def small_corpus(corpus):
    return [e for e in corpus if e.matroid.n <= 6]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
