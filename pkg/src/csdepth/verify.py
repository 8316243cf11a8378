"""Brute-force theorem harness over a reproducible corpus of small matroids."""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable

from .decomposition import RANK_CAP, SIZE_CAP, StarDecomposition, csd_search, elements_under, is_valid
from .depth import (
    altered_contraction_depth,
    contraction_depth,
    csd_gf2_quotient,
    deletion_depth,
    depth,
)
from .io import format_matroid
from .matroid import (
    ElementKind,
    GF2Matroid,
    GraphicMatroid,
    Matroid,
    UniformMatroid,
    classify,
    component_masks,
    direct_sum,
    dual,
    elements_of,
    free_matroid,
    has_ordinary_element,
    minor,
    popcount,
)
from .tamed import RULES, TamedExtension, TamingRules

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Witness:
    message: str
    matroid: str
    decomposition: str | None = None
    subset: tuple[int, ...] | None = None

    def write(self, directory: str | Path, stem: str) -> list[Path]:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        out = [directory / f"{stem}.matroid"]
        header = f"# {self.message}\n"
        if self.subset is not None:
            header += f"# subset {','.join(map(str, self.subset))}\n"
        out[0].write_text(header + self.matroid, encoding="utf-8")
        if self.decomposition is not None:
            out.append(directory / f"{stem}.dot")
            out[1].write_text(self.decomposition, encoding="utf-8")
        return out


@dataclass
class TheoremReport:
    theorem: str
    instance: str = ""
    checked: int = 0
    counterexample: Witness | None = None
    skipped: bool = False

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def line(self) -> str:
        if self.skipped:
            status = "skip"
        else:
            status = "ok" if self.passed else "FAIL"
        text = f"{self.theorem:<12} {self.instance:<34} {status:<4} checked={self.checked}"
        if self.counterexample is not None:
            text += f"  ({self.counterexample.message})"
        return text


def _witness(message: str, m: Matroid, d: StarDecomposition | None = None,
             subset: int | None = None) -> Witness:
    return Witness(
        message,
        format_matroid(m),
        d.to_dot() if d is not None else None,
        elements_of(subset) if subset is not None else None,
    )


# --------------------------------------------------------------------- corpus

@dataclass(frozen=True)
class CorpusEntry:
    name: str
    matroid: Matroid


@dataclass
class Corpus:
    seed: int
    entries: list[CorpusEntry] = field(default_factory=list)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def select(self, pred: Callable[[Matroid], bool]) -> list[CorpusEntry]:
        return [e for e in self.entries if pred(e.matroid)]


def _canonical_graph(vertices: int, edges: Iterable[tuple[int, int]]) -> tuple:
    edges = list(edges)
    best = None
    for perm in itertools.permutations(range(vertices)):
        relabelled = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or relabelled < best:
            best = relabelled
    return best


@lru_cache(maxsize=None)
def connected_multigraphs(max_edges: int) -> tuple[tuple[int, tuple[tuple[int, int], ...]], ...]:
    """Connected multigraphs (loops allowed) with 1..max_edges edges, up to isomorphism."""
    level = {(1, ())}
    out = []
    for _ in range(max_edges):
        nxt = {}
        for vertices, edges in level:
            options = [(u, v) for u in range(vertices) for v in range(u, vertices)]
            options += [(u, vertices) for u in range(vertices)]
            for u, v in options:
                nv = max(vertices, v + 1)
                key = (nv, _canonical_graph(nv, edges + ((u, v),)))
                nxt.setdefault(key, key)
        level = set(nxt)
        out.extend(sorted(level, key=lambda g: (len(g[1]), g)))
    return tuple(out)


def _random_gf2(rng: random.Random) -> GF2Matroid:
    rows = rng.randint(1, 4)
    cols = rng.randint(2, 6)
    vectors = [rng.randrange(1 << rows) for _ in range(cols)]
    return GF2Matroid(rows, vectors)


def build_corpus(seed: int = 0, gf2_members: int = 16, max_graph_edges: int = 5) -> Corpus:
    """Uniform matroids up to six elements, small connected multigraphs,
    seeded random binary matroids and a few direct sums."""
    corpus = Corpus(seed)
    add = corpus.entries.append
    for n in range(1, 7):
        for r in range(n + 1):
            add(CorpusEntry(f"uniform({n},{r})", UniformMatroid(n, r)))
    for i, (vertices, edges) in enumerate(connected_multigraphs(max_graph_edges)):
        add(CorpusEntry(f"graphic#{i}{list(edges)}", GraphicMatroid(vertices, edges)))
    rng = random.Random(seed)
    for i in range(gf2_members):
        m = _random_gf2(rng)
        add(CorpusEntry(f"gf2#{i}{[m.column_string(j) for j in range(m.n)]}", m))
    u = UniformMatroid
    sums = {
        "U(2,1)+U(2,1)": (u(2, 1), u(2, 1)),
        "U(2,1)+U(3,2)": (u(2, 1), u(3, 2)),
        "U(3,1)+U(1,1)": (u(3, 1), u(1, 1)),
        "U(1,0)+U(2,1)": (u(1, 0), u(2, 1)),
        "U(2,1)+U(2,1)+U(2,1)": (u(2, 1), u(2, 1), u(2, 1)),
        "U(3,2)+U(3,2)": (u(3, 2), u(3, 2)),
        "U(4,2)+U(1,0)": (u(4, 2), u(1, 0)),
        "U(3,2)+U(1,1)+U(1,0)": (u(3, 2), u(1, 1), u(1, 0)),
    }
    for name, parts in sums.items():
        add(CorpusEntry(f"sum:{name}", direct_sum(*parts)))
    return corpus


# --------------------------------------------------------------------- pipeline

@dataclass
class Pipeline:
    """Optimal decomposition, its extension and the search's other valid finds."""

    matroid: Matroid
    csd: int
    decomposition: StarDecomposition
    extension: TamedExtension
    valid: list[StarDecomposition]


def pipeline(m: Matroid, rules: TamingRules = RULES, collect_valid: bool = False) -> Pipeline:
    report = csd_search(m, collect_valid=collect_valid)
    ext = TamedExtension(m, report.decomposition, rules)
    ext.rank_table()
    return Pipeline(m, report.depth, report.decomposition, ext, report.valid)


# --------------------------------------------------------------------- checks

def check_upper(m: Matroid, name: str = "") -> TheoremReport:
    """``csd <= cd - 1`` unless all elements are loops or coloops."""
    rep = TheoremReport("upper", name, 1)
    if m.n == 0:
        rep.skipped = True
        return rep
    s = csd_search(m).depth
    c = contraction_depth(m)
    if has_ordinary_element(m):
        if s > c - 1:
            rep.counterexample = _witness(f"csd={s} > cd-1={c - 1}", m)
    elif m.matroid_rank == 0:
        if (s, c) != (0, 1):
            rep.counterexample = _witness(f"loops only but csd={s}, cd={c}", m)
    elif not s == c == 1:
        rep.counterexample = _witness(f"loops/coloops but csd={s}, cd={c}", m)
    return rep


def check_main(m: Matroid, name: str = "", rules: TamingRules = RULES,
               pipe: Pipeline | None = None) -> TheoremReport:
    """``cd(M^T) = csd(M) + 1`` for an optimal decomposition."""
    rep = TheoremReport("main", name)
    if not has_ordinary_element(m):
        rep.skipped = True
        return rep
    pipe = pipe or pipeline(m, rules)
    c = contraction_depth(pipe.extension)
    rep.checked = 1
    if c != pipe.csd + 1:
        rep.counterexample = _witness(f"cd(ext)={c} but csd={pipe.csd}", m, pipe.decomposition)
    return rep


def _independence(ext: TamedExtension) -> list[bool]:
    t = ext.taming
    n = ext.base.n
    rank = ext.base.rank
    return [t.tamed(s & ext.base.full, s >> n, rank) for s in range(1 << ext.n)]


def check_matroid_axioms(ext: TamedExtension, name: str = "") -> TheoremReport:
    """Non-emptiness, heredity and augmentation of the tamed family, exhaustively.

    Augmentation fails for an independent ``X`` exactly when some independent
    set of size ``|X|+1`` avoids every element that extends ``X``, which is
    read off a table of largest independent subsets.
    """
    rep = TheoremReport("axioms", name)
    m, d = ext.base, ext.decomposition
    ind = _independence(ext)
    size = len(ind)
    rep.checked = size
    if not ind[0]:
        rep.counterexample = _witness("empty set is not tamed", m, d, 0)
        return rep
    for s in range(size):
        if ind[s]:
            for e in elements_of(s):
                if not ind[s & ~(1 << e)]:
                    rep.counterexample = _witness(
                        f"heredity: dropping {e} breaks tamedness", m, d, s)
                    return rep
    best = [0] * size
    for s in range(1, size):
        best[s] = popcount(s) if ind[s] else max(best[s & ~(1 << e)] for e in elements_of(s))
    full = size - 1
    for s in range(size):
        if not ind[s]:
            continue
        grow = 0
        for e in range(ext.n):
            if not s >> e & 1 and ind[s | 1 << e]:
                grow |= 1 << e
        if best[full & ~grow] > popcount(s):
            rep.counterexample = _witness("augmentation fails for this tamed set", m, d, s)
            return rep
    return rep


def check_restriction(ext: TamedExtension, name: str = "") -> TheoremReport:
    """The extension restricted to the original elements is the original matroid."""
    rep = TheoremReport("restriction", name)
    m = ext.base
    for s in range(1 << m.n):
        rep.checked += 1
        if ext.is_independent(s) != m.is_independent(s) or ext.rank(s) != m.rank(s):
            rep.counterexample = _witness("restriction disagrees with the matroid",
                                          m, ext.decomposition, s)
            break
    return rep


def _random_extended_set(ext: TamedExtension, rng: random.Random) -> int:
    m = ext.base
    order = list(range(m.n))
    rng.shuffle(order)
    xm = 0
    for e in order:
        if rng.random() < 0.5 and m.is_independent(xm | 1 << e):
            xm |= 1 << e
    xe = rng.getrandbits(ext.tree.num_edges) if ext.tree.num_edges else 0
    return xm | xe << m.n


def check_tokens(ext: TamedExtension, name: str = "", samples: int = 200,
                 seed: int = 0) -> TheoremReport:
    """Token counts on random sets with independent matroid part: total equals
    ``|X|``, branching counts are non-negative, subtree totals match."""
    rep = TheoremReport("tokens", name)
    rng = random.Random(seed)
    t, tree, m = ext.taming, ext.tree, ext.base
    for _ in range(samples):
        x = _random_extended_set(ext, rng)
        xm, xe = x & m.full, x >> m.n
        tokens = t.assigned(xm, xe)
        rep.checked += 1
        if sum(tokens) != popcount(x):
            rep.counterexample = _witness(f"{sum(tokens)} tokens for |X|={popcount(x)}",
                                          m, ext.decomposition, x)
            return rep
        for v in t.special:
            if tokens[v] < 0:
                rep.counterexample = _witness(f"negative count at vertex {v}",
                                              m, ext.decomposition, x)
                return rep
            region = t.edge_mask(tree.subtree_edges(v)) | t.path_mask[v]
            expect = popcount(xe & region) + t.local_rank(v, xm, m.rank)
            if sum(tokens[u] for u in tree.subtree(v)) != expect:
                rep.counterexample = _witness(f"subtree total wrong at vertex {v}",
                                              m, ext.decomposition, x)
                return rep
    return rep


def check_depth_bound(ext: TamedExtension, name: str = "") -> TheoremReport:
    rep = TheoremReport("depth-bound", name, 1)
    c = contraction_depth(ext)
    if c > ext.tree.height:
        rep.counterexample = _witness(f"cd(ext)={c} > height {ext.tree.height}",
                                      ext.base, ext.decomposition)
    return rep


def check_altered(m: Matroid, name: str = "", rules: TamingRules = RULES,
                  pipe: Pipeline | None = None) -> TheoremReport:
    rep = TheoremReport("altered", name, 1)
    if m.n == 0:
        rep.skipped = True
        return rep
    pipe = pipe or pipeline(m, rules)
    c = altered_contraction_depth(pipe.extension)
    if c != pipe.csd:
        rep.counterexample = _witness(f"cd'(ext)={c} but csd={pipe.csd}", m, pipe.decomposition)
    return rep


def _is_component_union(ext: Matroid, contract: int, ground: int, part: int) -> bool:
    for block in component_masks(ext.rank, contract, ground):
        if block & part and block & ~part:
            return False
    return True


def check_structure(ext: TamedExtension, name: str = "") -> TheoremReport:
    """Loops below a contracted leaf path; component splits at branchings."""
    rep = TheoremReport("structure", name)
    tree, m, d = ext.tree, ext.base, ext.decomposition

    def edges(vs: Iterable[int]) -> int:
        mask = 0
        for v in vs:
            mask |= 1 << ext.edge_element(v)
        return mask

    for leaf in tree.leaves:
        if leaf == tree.root:
            continue
        p = edges(tree.root_path_edges(leaf))
        rp = ext.rank(p)
        for e in elements_of(elements_under(d, leaf)):
            rep.checked += 1
            if ext.rank(p | 1 << e) != rp:
                rep.counterexample = _witness(
                    f"element {e} is not a loop after contracting the path to leaf {leaf}",
                    m, d, 1 << e)
                return rep
    tops = [tree.root] + list(tree.branching_vertices)
    for v in dict.fromkeys(tops):
        if tree.is_leaf(v):
            continue
        p = edges(tree.root_path_edges(v)) if v != tree.root else 0
        ground = ext.full & ~p
        for vi in tree.top_special_descendants(v):
            path = set()
            u = vi
            while u != v:
                path.add(u)
                u = tree.parent[u]
            part = elements_under(d, vi) | edges(tree.subtree_edges(vi) | path)
            rep.checked += 1
            if not _is_component_union(ext, p, ground, part):
                rep.counterexample = _witness(
                    f"block below {vi} (from {v}) is not a union of components", m, d, part)
                return rep
    return rep


def check_bridge(m: Matroid, name: str = "") -> TheoremReport:
    """A non-coloop stays a non-coloop after contracting any set avoiding it."""
    rep = TheoremReport("bridge", name)
    for x in range(1 << m.n):
        mx = minor(m, contract=x)
        for e in range(m.n):
            if x >> e & 1 or classify(m, e) is ElementKind.COLOOP:
                continue
            rep.checked += 1
            if classify(mx, mx.project(1 << e).bit_length() - 1) is ElementKind.COLOOP:
                rep.counterexample = _witness(f"element {e} becomes a coloop", m, subset=x)
                return rep
    return rep


def check_decomposition(m: Matroid, d: StarDecomposition, name: str = "") -> TheoremReport:
    """Root-level blocks are component unions with additive rank; subtree
    edge budgets are bounded by the contracted rank."""
    rep = TheoremReport("decomp", name)
    tree = d.tree
    if tree.is_leaf(tree.root):
        rep.skipped = True
        return rep
    blocks = [elements_under(d, v) for v in tree.top_special_descendants(tree.root)]
    for b in blocks:
        rep.checked += 1
        if not _is_component_union(m, 0, m.full, b):
            rep.counterexample = _witness("root block is not a union of components", m, d, b)
            return rep
    for x in range(1 << m.n):
        rep.checked += 1
        if m.rank(x) != sum(m.rank(x & b) for b in blocks):
            rep.counterexample = _witness("rank is not additive over root blocks", m, d, x)
            return rep
    for v in tree.vertices:
        if v == tree.root or not tree.is_special(v):
            continue
        under = elements_under(d, v)
        outside = m.full & ~under
        budget = m.rank(m.full) - m.rank(outside)
        f = len(tree.subtree_edges(v) | tree.branch_path_edges(v))
        rep.checked += 1
        if f > budget:
            rep.counterexample = _witness(f"{f} edges at vertex {v} exceed rank {budget}", m, d, under)
            return rep
    return rep


def check_cross_oracle(m: GF2Matroid, name: str = "") -> TheoremReport:
    rep = TheoremReport("cross-oracle", name, 1)
    a, b = csd_search(m).depth, csd_gf2_quotient(m)
    if a != b:
        rep.counterexample = _witness(f"search csd={a}, quotient csd={b}", m)
    return rep


def check_duality_bounds(m: Matroid, name: str = "") -> TheoremReport:
    rep = TheoremReport("duality", name, 1)
    c = contraction_depth(m)
    dd_dual = deletion_depth(dual(m))
    s = csd_search(m).depth
    if c != dd_dual:
        rep.counterexample = _witness(f"cd={c} but dd(dual)={dd_dual}", m)
    elif not s <= c <= 4 ** s + 1:
        rep.counterexample = _witness(f"csd={s}, cd={c} break the functional bounds", m)
    return rep


def check_memo(m: Matroid, name: str = "") -> TheoremReport:
    rep = TheoremReport("memo", name)
    for kind in ("cd", "dd", "cd-alt", "dd-alt"):
        rep.checked += 1
        if depth(m, kind) != depth(m, kind, memo=False):
            rep.counterexample = _witness(f"memoised {kind} differs", m)
            break
    return rep


# --------------------------------------------------------------------- suites

SUITES = ("upper", "main", "axioms", "restriction", "tokens", "depth-bound", "altered",
          "structure", "bridge", "decomp", "cross-oracle", "duality", "memo")


#: Largest extension ground set the exhaustive checks enumerate.
EXTENSION_CAP = 12


def in_pipeline_caps(m: Matroid) -> bool:
    r = m.matroid_rank
    return 1 <= m.n <= SIZE_CAP and r <= RANK_CAP and m.n + r <= EXTENSION_CAP


def run_suite(corpus: Corpus, suites: Iterable[str] = SUITES, rules: TamingRules = RULES,
              on_report: Callable[[TheoremReport], None] | None = None,
              stop_on_failure: bool = False) -> list[TheoremReport]:
    """Run the selected checks on every corpus member.

    Reports come back ordered by (suite, corpus index).
    """
    suites = list(suites)
    unknown = set(suites) - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites {sorted(unknown)}")
    per_suite: dict[str, list[TheoremReport]] = {s: [] for s in suites}

    def emit(rep: TheoremReport) -> None:
        per_suite[rep.theorem].append(rep)
        if on_report is not None:
            on_report(rep)

    needs_pipe = {"main", "axioms", "restriction", "tokens", "depth-bound", "altered",
                  "structure", "decomp"} & set(suites)
    for idx, entry in enumerate(corpus):
        m, name = entry.matroid, entry.name
        pipe = None
        if needs_pipe and in_pipeline_caps(m):
            pipe = pipeline(m, rules, collect_valid="depth-bound" in suites)
        small = m.n <= 8
        for s in suites:
            if s == "upper" and small:
                emit(check_upper(m, name))
            elif s == "main" and pipe is not None:
                emit(check_main(m, name, rules, pipe))
            elif s == "axioms" and pipe is not None:
                emit(check_matroid_axioms(pipe.extension, name))
            elif s == "restriction" and pipe is not None:
                emit(check_restriction(pipe.extension, name))
            elif s == "tokens" and pipe is not None:
                emit(check_tokens(pipe.extension, name, seed=corpus.seed + idx))
            elif s == "depth-bound" and pipe is not None:
                for i, d in enumerate(pipe.valid or [pipe.decomposition]):
                    ext = pipe.extension if d == pipe.decomposition else TamedExtension(m, d, rules)
                    emit(check_depth_bound(ext, f"{name}/T{i}"))
            elif s == "altered" and pipe is not None:
                emit(check_altered(m, name, rules, pipe))
            elif s == "structure" and pipe is not None:
                emit(check_structure(pipe.extension, name))
            elif s == "bridge" and m.n <= 6:
                emit(check_bridge(m, name))
            elif s == "decomp" and pipe is not None:
                emit(check_decomposition(m, pipe.decomposition, name))
            elif s == "cross-oracle" and isinstance(m, GF2Matroid):
                emit(check_cross_oracle(m, name))
            elif s == "duality" and small:
                emit(check_duality_bounds(m, name))
            elif s == "memo" and m.n <= 6:
                emit(check_memo(m, name))
        if stop_on_failure and any(not r.passed for rs in per_suite.values() for r in rs):
            break
    return [r for s in suites for r in per_suite[s]]


def summary_table(reports: list[TheoremReport]) -> str:
    rows: dict[str, list[int]] = {}
    for r in reports:
        row = rows.setdefault(r.theorem, [0, 0, 0, 0])
        row[0] += 1
        row[1] += r.checked
        row[2] += 0 if r.passed else 1
        row[3] += 1 if r.skipped else 0
    lines = [f"{'theorem':<12} {'instances':>9} {'checks':>9} {'failed':>7} {'skipped':>8}"]
    for name, (inst, checks, failed, skipped) in rows.items():
        lines.append(f"{name:<12} {inst:>9} {checks:>9} {failed:>7} {skipped:>8}")
    return "\n".join(lines)


MUTATIONS = {
    "no-branch-subtraction": TamingRules(branch_subtraction=False),
    "no-send-surplus": TamingRules(send_surplus=False),
    "no-independence": TamingRules(require_independent=False),
}
