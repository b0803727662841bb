"""Tuple-regularity and ultrahomogeneity deciders, plus SRG utilities.

A coloured graph is k-tuple-regular when any two vertex subsets of size
at most k that induce colour-isomorphic subgraphs have the same number
of common neighbours inside every colour class.  It is
k-ultrahomogeneous when every colour-preserving isomorphism between
induced subgraphs of order at most k extends to an automorphism.

Both deciders return a `RegularityVerdict`; on failure the verdict
carries a concrete, re-validated `Witness`.  Level scans up to
`kernels.MAX_TABLE_LEVEL` run on the packed bitset kernels; larger
levels fall back to a dictionary keyed by canonical codes.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

import numpy as np

from . import kernels
from .canon import automorphism_group, canonical_labelling, is_isomorphism
from .graphs import (ColouredGraph, GraphError, bits, complement,
                     common_neighbourhood, induced, is_connected)

__all__ = [
    "SrgParams", "Witness", "RegularityVerdict", "srg_parameters",
    "is_primitive", "is_k_tuple_regular", "is_k_ultrahomogeneous",
    "max_regularity", "colour_subconstituents", "recognize_clique_union",
    "recognize_rook_or_shrikhande",
]

# Ordered-tuple scans beyond this level or graph order need force=True.
UH_LEVEL_CAP = 4
UH_ORDER_CAP = 48


@dataclass(frozen=True)
class SrgParams:
    """Strong-regularity parameters (n, d, lam, mu).

    `lam` is None for edgeless graphs (no adjacent pair exists) and `mu`
    is None for complete graphs, where the respective count is vacuous.
    """
    n: int
    d: int
    lam: int | None
    mu: int | None

    @property
    def edgeless(self) -> bool:
        return self.d == 0

    @property
    def complete(self) -> bool:
        return self.d == self.n - 1

    def as_tuple(self) -> tuple[int, int, int | None, int | None]:
        return (self.n, self.d, self.lam, self.mu)

    def __str__(self) -> str:
        show = lambda x: "-" if x is None else str(x)
        return f"({self.n},{self.d},{show(self.lam)},{show(self.mu)})"


@dataclass(frozen=True)
class Witness:
    """Counterexample at one level of a regularity scan.

    `subset` and `other` induce colour-isomorphic subgraphs via
    `mapping` (pairs (u, phi(u))).  For TR failures `lambdas` holds the
    two differing common-neighbour vectors, indexed by colour class;
    for UH failures it is None and the mapping does not extend to any
    automorphism.
    """
    level: int
    subset: tuple[int, ...]
    other: tuple[int, ...]
    mapping: tuple[tuple[int, int], ...]
    lambdas: tuple[tuple[int, ...], tuple[int, ...]] | None = None


@dataclass(frozen=True)
class RegularityVerdict:
    prop: str                   # "TR" or "UH"
    k: int
    holds: bool
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.holds


# ------------------------------------------------------------ SRG basics

def _require_monochromatic(G: ColouredGraph, what: str) -> None:
    if not G.is_monochromatic():
        raise GraphError(f"{what} needs a monochromatic graph (got c={G.c})")


def srg_parameters(G: ColouredGraph) -> SrgParams | None:
    """Parameters (n, d, lam, mu) if G is strongly regular, else None.

    Degenerate conventions: complete graphs leave mu undefined,
    edgeless graphs leave lam undefined, and both count as strongly
    regular.
    """
    _require_monochromatic(G, "srg_parameters")
    n = G.n
    degrees = {G.degree(v) for v in G.vertices()}
    if len(degrees) > 1:
        return None
    d = degrees.pop() if degrees else 0
    lam: int | None = None
    mu: int | None = None
    for u in range(n):
        row = G.adj[u]
        for v in bits(row >> (u + 1) << (u + 1)):
            t = (row & G.adj[v]).bit_count()
            if lam is None:
                lam = t
            elif lam != t:
                return None
        nonadj = ~row & ~(1 << u) & ((1 << n) - 1) & (-1 << (u + 1))
        for v in bits(nonadj):
            t = (row & G.adj[v]).bit_count()
            if mu is None:
                mu = t
            elif mu != t:
                return None
    return SrgParams(n=n, d=d, lam=lam, mu=mu)


def is_primitive(G: ColouredGraph) -> bool:
    """True iff both G and its complement are connected."""
    _require_monochromatic(G, "is_primitive")
    return is_connected(G) and is_connected(complement(G))


# ------------------------------------------------------------ TR scan

def _colex_subsets(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """All m-subsets of range(n) in colexicographic order."""
    if m > n:
        return
    a = list(range(m))
    while True:
        yield tuple(a)
        i = 0
        while i < m and a[i] + 1 == (a[i + 1] if i + 1 < m else n):
            i += 1
        if i == m:
            return
        a[i] += 1
        for j in range(i):
            a[j] = j


def _lambda_vector(G: ColouredGraph, U: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(common_neighbourhood(G, U, R)[1] for R in range(G.c))


def _iso_between(G: ColouredGraph, U: tuple[int, ...], U2: tuple[int, ...]
                 ) -> tuple[tuple[int, int], ...]:
    """Colour-preserving isomorphism induced(U) -> induced(U2) as vertex
    pairs, derived by composing the canonical labellings."""
    g1, g2 = induced(G, U), induced(G, U2)
    lab1, lab2 = canonical_labelling(g1), canonical_labelling(g2)
    at = {pos: i for i, pos in enumerate(lab2)}
    phi = tuple(at[lab1[i]] for i in range(len(U)))
    if not is_isomorphism(g1, g2, phi):
        raise AssertionError("witness subsets are not isomorphic")
    mapping = tuple((U[i], U2[phi[i]]) for i in range(len(U)))
    if any(G.colours[a] != G.colours[b] for a, b in mapping):
        raise AssertionError("witness mapping is not colour-preserving")
    return mapping


def _tr_witness(G: ColouredGraph, m: int, rep: tuple[int, ...],
                bad: tuple[int, ...]) -> Witness:
    lam1, lam2 = _lambda_vector(G, rep), _lambda_vector(G, bad)
    if lam1 == lam2:
        raise AssertionError("witness lambda vectors agree")
    return Witness(level=m, subset=rep, other=bad,
                   mapping=_iso_between(G, rep, bad), lambdas=(lam1, lam2))


def _tr_level(G: ColouredGraph, m: int) -> Witness | None:
    """First tuple-regularity violation among m-subsets, colex order."""
    if m > G.n:
        return None
    if m <= kernels.MAX_TABLE_LEVEL:
        status, rep, bad = kernels.ktr_level_scan(G, m)
        if status == 0:
            return None
        return _tr_witness(G, m, rep, bad)
    # Levels beyond the table cap only occur on very small graphs, so a
    # dictionary keyed by (colour tuple, canonical code) is affordable.
    from .canon import canonical_code
    classes: dict[tuple, tuple[tuple[int, ...], tuple[int, ...]]] = {}
    for U in _colex_subsets(G.n, m):
        key = (tuple(sorted(G.colours[v] for v in U)),
               canonical_code(induced(G, U)))
        vec = _lambda_vector(G, U)
        seen = classes.get(key)
        if seen is None:
            classes[key] = (U, vec)
        elif seen[1] != vec:
            return _tr_witness(G, m, seen[0], U)
    return None


def is_k_tuple_regular(G: ColouredGraph, k: int) -> RegularityVerdict:
    """Decide k-tuple regularity; scans levels 1..k, stops at the first
    violation and reports it as a witness."""
    if k < 1:
        raise ValueError("k must be >= 1")
    for m in range(1, k + 1):
        w = _tr_level(G, m)
        if w is not None:
            return RegularityVerdict("TR", k, False, w)
    return RegularityVerdict("TR", k, True)


# ------------------------------------------------------------ UH scan

def _bool_adjacency(G: ColouredGraph) -> np.ndarray:
    A = np.zeros((G.n, G.n), dtype=np.int64)
    for u in range(G.n):
        for v in bits(G.adj[u]):
            A[u, v] = 1
    return A


def _uh_level(G: ColouredGraph, generators, m: int) -> Witness | None:
    """First pair of ordered m-tuples that are isomorphic as vertex-ordered
    subgraphs yet lie in different automorphism orbits."""
    if m >= G.n:
        # an order-n partial isomorphism is itself an automorphism
        return None
    _, reps = kernels.tuple_orbit_scan(G, generators, m)
    tup = kernels.decode_tuples(reps, G.n, m)
    cols = np.asarray(G.colours, dtype=np.int64)[tup]
    mask = np.zeros(len(reps), dtype=np.int64)
    A = _bool_adjacency(G)
    bit = 0
    for q in range(1, m):
        for p in range(q):
            mask |= A[tup[:, p], tup[:, q]] << bit
            bit += 1
    keys = np.concatenate([cols, mask[:, None]], axis=1)
    seen: dict[bytes, int] = {}
    for r in range(len(reps)):
        kb = keys[r].tobytes()
        prev = seen.get(kb)
        if prev is None:
            seen[kb] = r
            continue
        t1 = tuple(int(x) for x in tup[prev])
        t2 = tuple(int(x) for x in tup[r])
        mapping = tuple(zip(t1, t2))
        for (a, b), (a2, b2) in combinations(mapping, 2):
            if G.has_edge(a, a2) != G.has_edge(b, b2):
                raise AssertionError("witness tuples are not isomorphic")
        if any(G.colours[a] != G.colours[b] for a, b in mapping):
            raise AssertionError("witness mapping is not colour-preserving")
        return Witness(level=m, subset=t1, other=t2, mapping=mapping)
    return None


def is_k_ultrahomogeneous(G: ColouredGraph, k: int,
                          force: bool = False) -> RegularityVerdict:
    """Decide k-ultrahomogeneity via orbit counting on ordered tuples.

    Two tuples in distinct automorphism orbits whose positionwise map is
    a colour-preserving isomorphism witness failure: that map extends to
    no automorphism.  Scans with k > 4 or n > 48 are refused unless
    force=True, since the tuple space grows as n^k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if (k > UH_LEVEL_CAP or G.n > UH_ORDER_CAP) and not force:
        raise ValueError(
            f"ultrahomogeneity scan with k={k}, n={G.n} exceeds the default "
            f"budget (k <= {UH_LEVEL_CAP}, n <= {UH_ORDER_CAP}); "
            "pass force=True to run anyway")
    gens = automorphism_group(G).generators
    for m in range(1, k + 1):
        w = _uh_level(G, gens, m)
        if w is not None:
            return RegularityVerdict("UH", k, False, w)
    return RegularityVerdict("UH", k, True)


def max_regularity(G: ColouredGraph, prop: str, k_max: int,
                   force: bool = False) -> int:
    """Largest k <= k_max for which the property holds (0 if level 1 fails).

    prop is "TR" or "UH"; both properties are monotone in k, so the scan
    walks levels upward and stops at the first violation.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    name = prop.upper()
    if name not in ("TR", "UH"):
        raise ValueError(f"unknown property {prop!r} (expected TR or UH)")
    gens = None
    if name == "UH":
        if (k_max > UH_LEVEL_CAP or G.n > UH_ORDER_CAP) and not force:
            raise ValueError(
                f"ultrahomogeneity scan with k_max={k_max}, n={G.n} exceeds "
                f"the default budget (k <= {UH_LEVEL_CAP}, "
                f"n <= {UH_ORDER_CAP}); pass force=True to run anyway")
        gens = automorphism_group(G).generators
    for m in range(1, k_max + 1):
        w = _tr_level(G, m) if name == "TR" else _uh_level(G, gens, m)
        if w is not None:
            return m - 1
    return k_max


# ------------------------------------------------------------ recognizers

def colour_subconstituents(G: ColouredGraph, R: int, b: int
                           ) -> tuple[ColouredGraph | None, ColouredGraph | None]:
    """Split colour class R by adjacency to the external vertex b.

    Returns the induced graphs on N(b) within R and on the rest of R, in
    that order; an empty part is reported as None.
    """
    if not 0 <= R < G.c:
        raise GraphError(f"colour id {R} out of range (c={G.c})")
    if not 0 <= b < G.n:
        raise GraphError(f"vertex {b} out of range (n={G.n})")
    if G.colours[b] == R:
        raise GraphError(f"vertex {b} lies in colour class {R}")
    inside = G.class_mask(R) & G.adj[b]
    outside = G.class_mask(R) & ~G.adj[b]
    first = induced(G, bits(inside)) if inside else None
    second = induced(G, bits(outside)) if outside else None
    return first, second


def recognize_clique_union(G: ColouredGraph) -> tuple[int, int] | None:
    """(s, t) if G is a disjoint union of s cliques, all of size t."""
    _require_monochromatic(G, "recognize_clique_union")
    full = (1 << G.n) - 1
    seen = 0
    comps: list[int] = []
    for v in range(G.n):
        if seen >> v & 1:
            continue
        comp = 0
        frontier = 1 << v
        while frontier:
            comp |= frontier
            grown = 0
            for u in bits(frontier):
                grown |= G.adj[u]
            frontier = grown & ~comp
        seen |= comp
        comps.append(comp)
    sizes = {c.bit_count() for c in comps}
    if len(sizes) != 1:
        return None
    t = sizes.pop()
    for comp in comps:
        for u in bits(comp):
            if G.adj[u] & full != comp & ~(1 << u):
                return None
    return (len(comps), t)


def recognize_rook_or_shrikhande(G: ColouredGraph
                                 ) -> tuple[str, int] | None:
    """Classify graphs with rook-type SRG parameters (m^2, 2m-2, m-2, 2).

    Returns ("rook", m), ("shrikhande", 4), or None.  For m != 4 the
    parameters determine the rook's graph uniquely; at m = 4 the two
    candidates are told apart by a vertex neighbourhood, which induces
    2K3 in the rook's graph and C6 in the Shrikhande graph.
    """
    _require_monochromatic(G, "recognize_rook_or_shrikhande")
    p = srg_parameters(G)
    if p is None or p.lam is None or p.mu is None:
        return None
    import math
    m = math.isqrt(p.n)
    if m < 2 or m * m != p.n:
        return None
    if (p.d, p.lam, p.mu) != (2 * m - 2, m - 2, 2):
        return None
    if m != 4:
        return ("rook", m)
    H = induced(G, bits(G.adj[0]))
    if recognize_clique_union(H) == (2, 3):
        return ("rook", 4)
    if H.n == 6 and is_connected(H) and all(H.degree(v) == 2
                                            for v in H.vertices()):
        return ("shrikhande", 4)
    return None
