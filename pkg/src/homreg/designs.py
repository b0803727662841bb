"""Incidence structures and t-design verification.

An incidence structure is a point set 0..v-1 with a multiset of blocks
(point subsets, duplicates allowed).  `design_check` decides by
exhaustive counting whether every t-subset of points lies in the same
number of blocks, and reports uniformity, symmetry (#blocks = #points)
and degeneracy (uniform block size 0, 1, v-1 or v).  Structures are
extracted from coloured graphs either classwise (blocks = one class's
neighbourhoods into another) or from a pair of cliques.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from . import formats
from .graphs import ColouredGraph, GraphError, bits

__all__ = [
    "IncidenceStructure", "DesignReport", "design_check",
    "incidence_from_colour_classes", "clique_pair_design",
    "read_structure", "write_structure",
]


@dataclass(frozen=True)
class IncidenceStructure:
    """Points 0..v-1 and a lexicographically sorted block multiset."""
    v: int
    blocks: tuple[tuple[int, ...], ...]

    @staticmethod
    def of(v: int, blocks) -> "IncidenceStructure":
        if v < 1:
            raise GraphError("empty point set")
        norm = []
        for blk in blocks:
            pts = tuple(sorted(blk))
            if any(not 0 <= p < v for p in pts):
                raise GraphError(f"point out of range in block {pts}")
            if any(a == b for a, b in zip(pts, pts[1:])):
                raise GraphError(f"repeated point in block {pts}")
            norm.append(pts)
        return IncidenceStructure(v, tuple(sorted(norm)))

    @property
    def b(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class DesignReport:
    v: int
    b: int
    t: int
    k: int | None            # uniform block size, None if mixed
    lam: int | None          # constant t-subset count, None if not constant
    symmetric: bool
    degenerate: bool | None  # None when non-uniform (not applicable)

    @property
    def is_design(self) -> bool:
        return self.k is not None and self.lam is not None


def design_check(I: IncidenceStructure, t: int) -> DesignReport:
    """Exhaustively count how many blocks contain each t-subset."""
    if not 0 <= t <= I.v:
        raise GraphError(f"strength {t} out of range 0..{I.v}")
    sizes = {len(blk) for blk in I.blocks}
    k = sizes.pop() if len(sizes) == 1 else None
    counts: dict[tuple[int, ...], int] = {}
    for blk in I.blocks:
        for sub in combinations(blk, t):
            counts[sub] = counts.get(sub, 0) + 1
    if not counts:
        lam = 0            # no t-subset is covered, constant zero
    else:
        values = set(counts.values())
        if len(values) == 1 and len(counts) == comb(I.v, t):
            lam = values.pop()
        else:
            lam = None
    symmetric = I.b == I.v
    degenerate = None if k is None else k in (0, 1, I.v - 1, I.v)
    return DesignReport(I.v, I.b, t, k, lam, symmetric, degenerate)


def incidence_from_colour_classes(G: ColouredGraph, P: int,
                                  Bc: int) -> IncidenceStructure:
    """Points = class P; one block per vertex of class Bc, namely its
    neighbourhood inside P.  Duplicate blocks are kept."""
    if P == Bc:
        raise GraphError("point and block classes must differ")
    points = G.colour_class(P)
    index = {p: i for i, p in enumerate(points)}
    pmask = G.class_mask(P)
    blocks = [tuple(index[w] for w in bits(G.adj[v] & pmask))
              for v in G.colour_class(Bc)]
    return IncidenceStructure.of(len(points), blocks)


def _check_clique(G: ColouredGraph, C: tuple[int, ...], what: str) -> None:
    if not C:
        raise GraphError(f"{what} is empty")
    cols = {G.colours[v] for v in C}
    if len(cols) != 1:
        raise GraphError(f"{what} spans several colour classes")
    mask = 0
    for v in C:
        mask |= 1 << v
    for v in C:
        if G.adj[v] & mask != mask & ~(1 << v):
            raise GraphError(f"{what} is not a clique")
    cls = G.class_mask(cols.pop())
    for v in bits(cls & ~mask):
        if G.adj[v] & mask == mask:
            raise GraphError(f"{what} is not maximal in its class")


def clique_pair_design(G: ColouredGraph, CR, CB) -> IncidenceStructure:
    """Points = the clique CB; blocks = the CB-neighbourhoods of the
    vertices of CR.  Both cliques must be maximal within their (distinct)
    colour classes."""
    CR, CB = tuple(sorted(CR)), tuple(sorted(CB))
    _check_clique(G, CR, "CR")
    _check_clique(G, CB, "CB")
    if G.colours[CR[0]] == G.colours[CB[0]]:
        raise GraphError("cliques must lie in distinct colour classes")
    index = {p: i for i, p in enumerate(CB)}
    bmask = 0
    for v in CB:
        bmask |= 1 << v
    blocks = [tuple(index[w] for w in bits(G.adj[r] & bmask)) for r in CR]
    return IncidenceStructure.of(len(CB), blocks)


def read_structure(path) -> IncidenceStructure:
    v, blocks = formats.read_inc(path)
    return IncidenceStructure.of(v, blocks)


def write_structure(I: IncidenceStructure, path) -> None:
    formats.write_inc(I.v, I.blocks, path)
