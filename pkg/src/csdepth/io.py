"""Line-oriented matroid text files.

::

    # comments start with '#'
    matroid gf2
    rows 2
    col 10
    col 01
    col 11

Kinds: ``uniform`` (``n``, ``r``), ``graphic`` (``vertices``, ``edge u v``...),
``gf2`` (``rows``, ``col bits``...), ``explicit`` (``n``, ``basis ids``...).
"""

from __future__ import annotations

from pathlib import Path

from .matroid import (
    ExplicitMatroid,
    GF2Matroid,
    GraphicMatroid,
    InputError,
    Matroid,
    ParseError,
    UniformMatroid,
    elements_of,
)

KINDS = ("uniform", "graphic", "gf2", "explicit")


def _int(tok: str, lineno: int) -> int:
    try:
        value = int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None
    if value < 0:
        raise ParseError(f"expected a non-negative integer, got {value}", lineno)
    return value


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_matroid(text: str) -> Matroid:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty matroid file", 1)
    lineno, head = lines[0]
    if len(head) != 2 or head[0] != "matroid":
        raise ParseError("first line must be 'matroid <kind>'", lineno)
    kind = head[1]
    if kind not in KINDS:
        raise ParseError(f"unknown matroid kind {kind!r}", lineno)
    body = lines[1:]

    def header(pos: int, key: str) -> int:
        if pos >= len(body):
            last = lines[-1][0]
            raise ParseError(f"missing '{key} <int>' line", last + 1)
        ln, toks = body[pos]
        if toks[0] != key or len(toks) != 2:
            raise ParseError(f"expected '{key} <int>'", ln)
        return _int(toks[1], ln)

    def build(ctor, ln):
        try:
            return ctor()
        except InputError as exc:
            raise ParseError(str(exc), ln) from None

    if kind == "uniform":
        n = header(0, "n")
        r = header(1, "r")
        if len(body) > 2:
            raise ParseError("unexpected trailing content", body[2][0])
        return build(lambda: UniformMatroid(n, r), body[1][0])

    if kind == "graphic":
        vertices = header(0, "vertices")
        edges = []
        for ln, toks in body[1:]:
            if toks[0] != "edge" or len(toks) != 3:
                raise ParseError("expected 'edge <u> <v>'", ln)
            u, v = _int(toks[1], ln), _int(toks[2], ln)
            if u >= vertices or v >= vertices:
                raise ParseError(f"edge ({u}, {v}) uses a vertex outside 0..{vertices - 1}", ln)
            edges.append((u, v))
        return GraphicMatroid(vertices, edges)

    if kind == "gf2":
        rows = header(0, "rows")
        cols = []
        for ln, toks in body[1:]:
            if toks[0] != "col" or len(toks) > 2:
                raise ParseError("expected 'col <bitstring>'", ln)
            bits = toks[1] if len(toks) == 2 else ""
            if len(bits) != rows or set(bits) - {"0", "1"}:
                raise ParseError(f"column {bits!r} is not a {rows}-bit string", ln)
            cols.append(bits)
        return GF2Matroid(rows, cols)

    n = header(0, "n")
    bases = []
    for ln, toks in body[1:]:
        if toks[0] != "basis":
            raise ParseError("expected 'basis <ids>'", ln)
        ids = [_int(t, ln) for t in toks[1:]]
        if any(i >= n for i in ids):
            raise ParseError(f"basis element out of range 0..{n - 1}", ln)
        bases.append(ids)
    last = body[-1][0] if body else lineno
    return build(lambda: ExplicitMatroid(n, bases), last)


def read_matroid(path: str | Path) -> Matroid:
    return parse_matroid(Path(path).read_text(encoding="utf-8"))


def format_matroid(m: Matroid) -> str:
    """Serialize any matroid.  Views are written out as explicit bases."""
    if isinstance(m, UniformMatroid):
        return f"matroid uniform\nn {m.n}\nr {m.r}\n"
    if isinstance(m, GraphicMatroid):
        lines = ["matroid graphic", f"vertices {m.vertices}"]
        lines += [f"edge {u} {v}" for u, v in m.edges]
        return "\n".join(lines) + "\n"
    if isinstance(m, GF2Matroid):
        lines = ["matroid gf2", f"rows {m.rows}"]
        lines += [f"col {m.column_string(i)}".rstrip() for i in range(m.n)]
        return "\n".join(lines) + "\n"
    lines = ["matroid explicit", f"n {m.n}"]
    for b in m.bases():
        lines.append(" ".join(["basis", *map(str, elements_of(b))]))
    return "\n".join(lines) + "\n"


def write_matroid(m: Matroid, path: str | Path) -> None:
    Path(path).write_text(format_matroid(m), encoding="utf-8")
