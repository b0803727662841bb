"""Canonical labelling, isomorphism, and automorphism search.

The search is individualization-refinement: refine the colour partition
to an equitable one (1-dimensional Weisfeiler-Leman), then branch on the
vertices of the first smallest non-singleton cell.  Leaves are discrete
partitions, i.e. candidate labellings.  The canonical labelling is the
leaf minimizing (per-level refinement invariants, labelled adjacency
code); leaves tying with the first or best leaf yield automorphisms,
which in turn prune the search through orbit partitions and backjumps.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .graphs import ColouredGraph, bits, mask_of
from .permgroup import PermGroup, compose, inverse, is_identity

_INF = float("inf")

Cells = tuple[tuple[int, ...], ...]


def refine_partition(adj: Sequence[int], cells: Cells,
                     splitters: Sequence[tuple[int, ...]] | None = None
                     ) -> tuple[Cells, tuple]:
    """Equitable refinement of an ordered partition against adjacency counts.

    Returns the refined partition and a trace of the splits performed;
    the trace depends only on the isomorphism type of (graph, partition).
    """
    work = [tuple(x) for x in cells]
    queue = [mask_of(x) for x in (splitters if splitters is not None else work)]
    trace = []
    qi = 0
    while qi < len(queue):
        w = queue[qi]
        qi += 1
        nxt: list[tuple[int, ...]] = []
        for ci, X in enumerate(work):
            if len(X) == 1:
                nxt.append(X)
                continue
            groups: dict[int, list[int]] = {}
            for v in X:
                groups.setdefault((adj[v] & w).bit_count(), []).append(v)
            if len(groups) == 1:
                nxt.append(X)
                continue
            keys = sorted(groups)
            frags = [tuple(groups[k]) for k in keys]
            nxt.extend(frags)
            trace.append((ci, tuple(keys), tuple(len(f) for f in frags)))
            for f in frags:
                queue.append(mask_of(f))
        work = nxt
    return tuple(work), tuple(trace)


@dataclass
class CanonResult:
    code: bytes
    labelling: tuple[int, ...]          # original vertex -> canonical position
    generators: tuple[tuple[int, ...], ...]


class _Search:
    def __init__(self, G: ColouredGraph):
        self.G = G
        self.adj = G.adj
        self.n = G.n
        self.first_prefix: tuple[int, ...] | None = None
        self.first_invs: list = []
        self.first_code: bytes | None = None
        self.first_lab: tuple[int, ...] | None = None
        self.best_prefix: tuple[int, ...] = ()
        self.best_invs: list = []
        self.best_code: bytes | None = None
        self.best_lab: tuple[int, ...] | None = None
        self.gens: list[tuple[int, ...]] = []
        self.path_invs: list = []

    # ------------------------------------------------------------- leaves

    def _leaf_label(self, cells: Cells) -> tuple[int, ...]:
        lab = [0] * self.n
        for i, cell in enumerate(cells):
            lab[cell[0]] = i
        return tuple(lab)

    def _leaf_code(self, cells: Cells) -> bytes:
        order = [cell[0] for cell in cells]
        G = self.G
        out = bytearray()
        out += G.n.to_bytes(4, "big")
        out += G.c.to_bytes(4, "big")
        for v in order:
            out += G.colours[v].to_bytes(2, "big")
        bit = 0
        acc = 0
        for i in range(G.n):
            ai = G.adj[order[i]]
            for j in range(i + 1, G.n):
                acc = (acc << 1) | (ai >> order[j] & 1)
                bit += 1
                if bit == 8:
                    out.append(acc)
                    acc = 0
                    bit = 0
        if bit:
            out.append(acc << (8 - bit))
        return bytes(out)

    @staticmethod
    def _automorphism(lab_a: tuple[int, ...], lab_b: tuple[int, ...]) -> tuple[int, ...]:
        """Perm g with g = lab_b^-1 . lab_a (maps vertex along equal-coded leaves)."""
        inv_b = inverse(lab_b)
        return tuple(inv_b[p] for p in lab_a)

    def _record_gen(self, g: tuple[int, ...]) -> None:
        if not is_identity(g) and g not in self.gens:
            self.gens.append(g)

    def _leaf(self, cells: Cells, prefix: tuple[int, ...]) -> int | None:
        lab = self._leaf_label(cells)
        code = self._leaf_code(cells)
        if self.first_code is None:
            self.first_prefix = prefix
            self.first_invs = list(self.path_invs)
            self.first_code = code
            self.first_lab = lab
            self.best_prefix = prefix
            self.best_invs = list(self.path_invs)
            self.best_code = code
            self.best_lab = lab
            return None
        if code == self.first_code:
            self._record_gen(self._automorphism(self.first_lab, lab))
            cpl = 0
            fp = self.first_prefix
            while cpl < len(prefix) and cpl < len(fp) and prefix[cpl] == fp[cpl]:
                cpl += 1
            return cpl
        # lexicographic (per-level invariants, code) against current best
        key_new = (self.path_invs, code)
        key_best = (self.best_invs, self.best_code)
        if key_new < key_best:
            self.best_prefix = prefix
            self.best_invs = list(self.path_invs)
            self.best_code = code
            self.best_lab = lab
        elif self.path_invs == self.best_invs and code == self.best_code:
            self._record_gen(self._automorphism(self.best_lab, lab))
            cpl = 0
            bp = self.best_prefix
            while cpl < len(prefix) and cpl < len(bp) and prefix[cpl] == bp[cpl]:
                cpl += 1
            return cpl
        return None

    # ------------------------------------------------------------- pruning

    def _path_status(self) -> tuple[bool, bool]:
        """(eq_first, dominates_best) for the invariant path currently on the stack."""
        eqf = (self.first_code is not None
               and len(self.path_invs) <= len(self.first_invs)
               and all(a == b for a, b in zip(self.path_invs, self.first_invs)))
        dom = False
        if self.best_code is not None:
            for i, inv in enumerate(self.path_invs):
                if i >= len(self.best_invs):
                    break
                if inv < self.best_invs[i]:
                    dom = True
                    break
                if inv > self.best_invs[i]:
                    break
            else:
                dom = len(self.path_invs) <= len(self.best_invs)
        return eqf, dom

    def _orbit_reps(self, prefix: tuple[int, ...]) -> list[int]:
        """Union-find parents for orbits of the gens fixing every prefix point."""
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.gens:
            if all(g[p] == p for p in prefix):
                for v in range(self.n):
                    a, b = find(v), find(g[v])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return [find(v) for v in range(self.n)]

    # ------------------------------------------------------------- search

    def _explore(self, cells: Cells, prefix: tuple[int, ...]) -> int | None:
        if len(cells) == self.n:
            return self._leaf(cells, prefix)
        tpos = -1
        tsize = _INF
        for i, cell in enumerate(cells):
            if 1 < len(cell) < tsize:
                tpos, tsize = i, len(cell)
        target = cells[tpos]
        explored: list[int] = []
        gens_at = -1
        reps: list[int] = []
        for v in target:
            if explored:
                if gens_at != len(self.gens):
                    reps = self._orbit_reps(prefix)
                    gens_at = len(self.gens)
                if any(reps[v] == reps[u] for u in explored):
                    continue
            explored.append(v)
            rest = tuple(w for w in target if w != v)
            base = cells[:tpos] + ((v,), rest) + cells[tpos + 1:]
            child, tr = refine_partition(self.adj, base, splitters=[(v,), rest])
            inv = (tr, tuple(len(x) for x in child))
            self.path_invs.append(inv)
            eqf, dom = self._path_status()
            jump = None
            if self.first_code is None or eqf or dom:
                jump = self._explore(child, prefix + (v,))
            self.path_invs.pop()
            if jump is not None and len(prefix) > jump:
                return jump
        return None

    def run(self) -> CanonResult:
        init = tuple(self.G.colour_class(col) for col in range(self.G.c))
        cells, _ = refine_partition(self.adj, init)
        self._explore(cells, ())
        return CanonResult(self.best_code, self.best_lab, tuple(self.gens))


@lru_cache(maxsize=256)
def _canon(G: ColouredGraph) -> CanonResult:
    return _Search(G).run()


def canonical_code(G: ColouredGraph) -> bytes:
    """Equal codes iff colour-preserving isomorphic; stable across runs."""
    return _canon(G).code


def canonical_labelling(G: ColouredGraph) -> tuple[int, ...]:
    return _canon(G).labelling


def automorphism_group(G: ColouredGraph) -> PermGroup:
    """Colour-preserving automorphism group with exact order."""
    return PermGroup(G.n, _canon(G).generators)


def is_isomorphism(G1: ColouredGraph, G2: ColouredGraph,
                   mapping: Sequence[int]) -> bool:
    """Check that mapping is a colour-preserving isomorphism G1 -> G2."""
    if G1.n != G2.n or sorted(mapping) != list(range(G1.n)):
        return False
    for v in range(G1.n):
        if G1.colours[v] != G2.colours[mapping[v]]:
            return False
        img = 0
        for w in bits(G1.adj[v]):
            img |= 1 << mapping[w]
        if img != G2.adj[mapping[v]]:
            return False
    return True


def are_isomorphic(G1: ColouredGraph, G2: ColouredGraph
                   ) -> tuple[int, ...] | None:
    """A colour-preserving isomorphism G1 -> G2, or None.

    Colour ids must match exactly; no colour permutation is attempted.
    """
    if G1.n != G2.n or G1.c != G2.c:
        return None
    for col in range(G1.c):
        if G1.class_mask(col).bit_count() != G2.class_mask(col).bit_count():
            return None
    deg1 = sorted((G1.colours[v], G1.degree(v)) for v in range(G1.n))
    deg2 = sorted((G2.colours[v], G2.degree(v)) for v in range(G2.n))
    if deg1 != deg2:
        return None
    r1, r2 = _canon(G1), _canon(G2)
    if r1.code != r2.code:
        return None
    inv2 = inverse(r2.labelling)
    mapping = tuple(inv2[p] for p in r1.labelling)
    assert is_isomorphism(G1, G2, mapping)
    return mapping
