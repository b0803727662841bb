"""Readers and writers for the on-disk text formats.

Three line-oriented ASCII formats are used across the toolkit:

* ``.cg``  coloured graphs,
* ``.hm``  Hadamard sign matrices,
* ``.inc`` incidence structures.

``#`` starts a comment running to end of line; blank lines are skipped.
Vertices and points are 1-indexed on disk and 0-indexed in memory.
Writers emit deterministic output (ascending order everywhere) so files
can be compared byte for byte.
"""
from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from .graphs import ColouredGraph, GraphError, build_exact

Pathish = str | os.PathLike


class FormatError(ValueError):
    """Raised when a file does not conform to its format."""


def _lines(text: str) -> list[tuple[int, list[str]]]:
    # (1-based line number, tokens) for every non-blank, non-comment line
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            out.append((no, body.split()))
    return out


def _ints(tokens: list[str], no: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"line {no}: expected integers, got {tokens!r}") from None


# ---------------------------------------------------------------- .cg

def parse_cg(text: str) -> ColouredGraph:
    lines = _lines(text)
    if not lines or lines[0][1][0] != "cg":
        raise FormatError("missing 'cg <n> <m> <c>' header")
    no, head = lines[0]
    if len(head) != 4:
        raise FormatError(f"line {no}: header must be 'cg <n> <m> <c>'")
    n, m, c = _ints(head[1:], no)
    if n < 1 or m < 0 or c < 1:
        raise FormatError(f"line {no}: bad header counts")
    colours: list[int | None] = [None] * n
    edges: list[tuple[int, int]] = []
    for no, toks in lines[1:]:
        kind = toks[0]
        if kind == "v":
            if len(toks) != 3:
                raise FormatError(f"line {no}: vertex line must be 'v <id> <colour>'")
            v, col = _ints(toks[1:], no)
            if not 1 <= v <= n:
                raise FormatError(f"line {no}: vertex {v} out of range 1..{n}")
            if colours[v - 1] is not None:
                raise FormatError(f"line {no}: vertex {v} listed twice")
            if not 0 <= col < c:
                raise FormatError(f"line {no}: colour {col} out of range 0..{c - 1}")
            colours[v - 1] = col
        elif kind == "e":
            if len(toks) != 3:
                raise FormatError(f"line {no}: edge line must be 'e <u> <v>'")
            u, v = _ints(toks[1:], no)
            if not (1 <= u < v <= n):
                raise FormatError(f"line {no}: edge ({u},{v}) must satisfy 1 <= u < v <= n")
            edges.append((u - 1, v - 1))
        else:
            raise FormatError(f"line {no}: unknown record {kind!r}")
    missing = [i + 1 for i, col in enumerate(colours) if col is None]
    if missing:
        raise FormatError(f"vertex {missing[0]} has no 'v' line")
    if len(edges) != m:
        raise FormatError(f"header declares {m} edges, found {len(edges)}")
    try:
        return build_exact(n, edges, colours)  # type: ignore[arg-type]
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def format_cg(G: ColouredGraph) -> str:
    out = [f"cg {G.n} {G.num_edges()} {G.c}"]
    out.extend(f"v {v + 1} {G.colours[v]}" for v in G.vertices())
    out.extend(f"e {u + 1} {v + 1}" for u, v in G.edges())
    return "\n".join(out) + "\n"


def read_cg(path: Pathish) -> ColouredGraph:
    with open(path, encoding="ascii") as fh:
        return parse_cg(fh.read())


def write_cg(G: ColouredGraph, path: Pathish) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_cg(G))


# ---------------------------------------------------------------- .hm

def parse_hm(text: str) -> np.ndarray:
    lines = _lines(text)
    if not lines or lines[0][1][0] != "hm":
        raise FormatError("missing 'hm <s>' header")
    no, head = lines[0]
    if len(head) != 2:
        raise FormatError(f"line {no}: header must be 'hm <s>'")
    (s,) = _ints(head[1:], no)
    if s < 1:
        raise FormatError(f"line {no}: rank must be positive")
    if len(lines) - 1 != s:
        raise FormatError(f"expected {s} matrix rows, found {len(lines) - 1}")
    rows = []
    for no, toks in lines[1:]:
        row = "".join(toks)
        if len(row) != s or set(row) - {"+", "-"}:
            raise FormatError(f"line {no}: row must be {s} characters from '+-'")
        rows.append([1 if ch == "+" else -1 for ch in row])
    return np.array(rows, dtype=np.int8)


def format_hm(entries: np.ndarray) -> str:
    mat = np.asarray(entries)
    out = [f"hm {mat.shape[0]}"]
    out.extend("".join("+" if x > 0 else "-" for x in row) for row in mat)
    return "\n".join(out) + "\n"


def read_hm(path: Pathish) -> np.ndarray:
    with open(path, encoding="ascii") as fh:
        return parse_hm(fh.read())


def write_hm(entries: np.ndarray, path: Pathish) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_hm(entries))


# --------------------------------------------------------------- .inc

def parse_inc(text: str) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Return (point count, blocks); blocks keep file order, points sorted."""
    lines = _lines(text)
    if not lines or lines[0][1][0] != "inc":
        raise FormatError("missing 'inc <v> <b>' header")
    no, head = lines[0]
    if len(head) != 3:
        raise FormatError(f"line {no}: header must be 'inc <v> <b>'")
    v, b = _ints(head[1:], no)
    if v < 1 or b < 0:
        raise FormatError(f"line {no}: bad header counts")
    if len(lines) - 1 != b:
        raise FormatError(f"expected {b} block lines, found {len(lines) - 1}")
    blocks = []
    for no, toks in lines[1:]:
        pts = _ints(toks, no)
        if any(not 1 <= p <= v for p in pts):
            raise FormatError(f"line {no}: point out of range 1..{v}")
        if len(set(pts)) != len(pts):
            raise FormatError(f"line {no}: repeated point in block")
        blocks.append(tuple(sorted(p - 1 for p in pts)))
    return v, tuple(blocks)


def format_inc(v: int, blocks: Sequence[Sequence[int]]) -> str:
    out = [f"inc {v} {len(blocks)}"]
    for blk in blocks:
        if not blk:
            raise FormatError("empty block cannot be serialized")
        out.append(" ".join(str(p + 1) for p in sorted(blk)))
    return "\n".join(out) + "\n"


def read_inc(path: Pathish) -> tuple[int, tuple[tuple[int, ...], ...]]:
    with open(path, encoding="ascii") as fh:
        return parse_inc(fh.read())


def write_inc(v: int, blocks: Sequence[Sequence[int]], path: Pathish) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_inc(v, blocks))
