"""Immutable vertex-coloured graphs.

A coloured graph is a finite simple graph together with a map from
vertices to colour ids 0..c-1 (every id used).  Adjacency is stored as
one Python int bitset per vertex, so neighbourhood intersections are
single AND operations and cardinalities come from int.bit_count().
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised for invalid graph construction or queries."""


class IntegrityError(ValueError):
    """Bundled data or a hard-coded table failed its self-check."""


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class ColouredGraph:
    n: int
    adj: tuple[int, ...]          # adj[v] = bitset of neighbours of v
    colours: tuple[int, ...]      # colours[v] in 0..c-1, all ids used
    c: int
    _class_masks: tuple[int, ...] = field(repr=False, compare=False, default=())

    def class_mask(self, colour: int) -> int:
        """Bitset of the colour class."""
        if not 0 <= colour < self.c:
            raise GraphError(f"colour id {colour} out of range (c={self.c})")
        return self._class_masks[colour]

    def colour_class(self, colour: int) -> tuple[int, ...]:
        return tuple(bits(self.class_mask(colour)))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) with u < v, ascending."""
        for u in range(self.n):
            rest = self.adj[u] >> (u + 1) << (u + 1)
            for v in bits(rest):
                yield (u, v)

    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def vertices(self) -> range:
        return range(self.n)

    def is_monochromatic(self) -> bool:
        return self.c == 1


def _validated_adj(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"vertex out of range in edge ({u}, {v})")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if adj[u] >> v & 1:
            raise GraphError(f"duplicate edge ({u}, {v})")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def _finish(n: int, adj: Sequence[int], colours: Sequence[int]) -> ColouredGraph:
    c = max(colours) + 1
    class_masks = [0] * c
    for v, col in enumerate(colours):
        class_masks[col] |= 1 << v
    return ColouredGraph(n, tuple(adj), tuple(colours), c, tuple(class_masks))


def make_graph(n: int, edges: Iterable[tuple[int, int]],
               colours: Sequence[int]) -> ColouredGraph:
    """Validate and build a coloured graph.

    Colour ids are compacted to 0..c-1 preserving their numeric order, so
    colours=[7, 3, 7] yields (1, 0, 1) and already-dense ids are kept as-is.
    """
    if n < 1:
        raise GraphError("empty vertex set")
    if len(colours) != n:
        raise GraphError(f"colours list has length {len(colours)}, expected {n}")
    remap = {col: i for i, col in enumerate(sorted(set(colours)))}
    compact = [remap[col] for col in colours]
    adj = _validated_adj(n, edges)
    return _finish(n, adj, compact)


def build_exact(n: int, edges: Iterable[tuple[int, int]],
                colours: Sequence[int]) -> ColouredGraph:
    """Like make_graph but colour ids are kept as given (must be 0..c-1, all used)."""
    if n < 1:
        raise GraphError("empty vertex set")
    if len(colours) != n:
        raise GraphError(f"colours list has length {len(colours)}, expected {n}")
    c = max(colours) + 1
    used = set(colours)
    if min(colours) < 0 or used != set(range(c)):
        raise GraphError("colour ids must be exactly 0..c-1 with every id used")
    adj = _validated_adj(n, edges)
    return _finish(n, adj, colours)


def induced(G: ColouredGraph, U: Iterable[int]) -> ColouredGraph:
    """Subgraph induced by U, relabelled to 0..|U|-1 in ascending vertex order.

    Colours are re-compacted preserving numeric order, so colour identity
    in the result is positional, not inherited.
    """
    order = sorted(set(U))
    if not order:
        raise GraphError("empty vertex set")
    for v in order:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} out of range")
    pos = {v: i for i, v in enumerate(order)}
    edges = [(pos[u], pos[v]) for u in order for v in bits(G.adj[u])
             if v in pos and u < v]
    return make_graph(len(order), edges, [G.colours[v] for v in order])


def complement(G: ColouredGraph) -> ColouredGraph:
    """Complement of the underlying graph; colouring unchanged."""
    full = (1 << G.n) - 1
    adj = tuple((full ^ G.adj[v]) & ~(1 << v) for v in range(G.n))
    return ColouredGraph(G.n, adj, G.colours, G.c, tuple(G._class_masks))


def common_neighbourhood(G: ColouredGraph, U: Iterable[int],
                         R: int) -> tuple[tuple[int, ...], int]:
    """N^R(U): common neighbours of U within colour class R, and the count.

    For U = empty set this is the whole class R.
    """
    class_mask = G.class_mask(R)
    inter = (1 << G.n) - 1
    for u in set(U):
        if not 0 <= u < G.n:
            raise GraphError(f"vertex {u} out of range")
        inter &= G.adj[u]
    inter &= class_mask
    return tuple(bits(inter)), inter.bit_count()


def relabelled(G: ColouredGraph, perm: Sequence[int]) -> ColouredGraph:
    """Apply a vertex relabelling: vertex v of G becomes perm[v].

    Colour ids are preserved exactly (no re-compaction).
    """
    if sorted(perm) != list(range(G.n)):
        raise GraphError("not a permutation")
    colours = [0] * G.n
    adj = [0] * G.n
    for v in range(G.n):
        colours[perm[v]] = G.colours[v]
        row = 0
        for w in bits(G.adj[v]):
            row |= 1 << perm[w]
        adj[perm[v]] = row
    return _finish(G.n, adj, colours)


def is_connected(G: ColouredGraph) -> bool:
    """Connectivity of the underlying graph (bitset BFS)."""
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= G.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << G.n) - 1
