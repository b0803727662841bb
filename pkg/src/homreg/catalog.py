"""Constructors for the named graphs and graph families.

Every constructor returns an immutable ColouredGraph (monochromatic
unless stated) and self-verifies its defining parameters; bundled data
files are re-validated on load and raise IntegrityError when corrupt.
Vertex orderings are deterministic so emitted .cg files are stable.
"""
from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations, product

import numpy as np

from .formats import FormatError, parse_cg
from .graphs import ColouredGraph, GraphError, IntegrityError, make_graph
from .regularity import recognize_rook_or_shrikhande, srg_parameters

__all__ = [
    "FamilySpec", "QuadraticSpace", "build_family", "rook",
    "standard_family", "cycle", "union_cliques", "complete", "sporadic",
    "clebsch", "schlafli", "shrikhande", "higman_sims", "mclaughlin",
    "affine_polar", "gq_q5minus", "witt_support",
]

SPORADIC_TAGS = ("clebsch", "schlafli", "shrikhande", "higman_sims",
                 "mclaughlin")
FAMILY_TAGS = ("rook", "cycle", "union_cliques", "complete",
               "affine_polar", "gq_q5minus") + SPORADIC_TAGS


@dataclass(frozen=True)
class FamilySpec:
    """A family tag plus whichever integer parameters the family takes."""
    family: str
    m: int | None = None
    s: int | None = None
    t: int | None = None
    d: int | None = None
    q: int | None = None
    eps: str | None = None


def _need(spec: FamilySpec, **params) -> list:
    got = []
    for name, value in params.items():
        if value is None:
            raise GraphError(f"family {spec.family!r} needs parameter {name}")
        got.append(value)
    return got


def build_family(spec: FamilySpec) -> ColouredGraph:
    """Construct the graph described by spec."""
    f = spec.family
    if f == "rook":
        return rook(*_need(spec, m=spec.m))
    if f == "cycle":
        return cycle(*_need(spec, t=spec.t))
    if f == "union_cliques":
        return union_cliques(*_need(spec, s=spec.s, t=spec.t))
    if f == "complete":
        return complete(*_need(spec, t=spec.t))
    if f == "affine_polar":
        return affine_polar(*_need(spec, d=spec.d, eps=spec.eps))
    if f == "gq_q5minus":
        return gq_q5minus(*_need(spec, q=spec.q))
    if f in SPORADIC_TAGS:
        return sporadic(f)
    raise GraphError(f"unknown family {f!r}; known: {', '.join(FAMILY_TAGS)}")


# ---------------------------------------------------------------- families

def _assert_params(G: ColouredGraph, expected: tuple, what: str) -> None:
    params = srg_parameters(G)
    if params is None or params.as_tuple() != expected:
        raise IntegrityError(
            f"{what}: expected SRG{expected}, got "
            f"{params.as_tuple() if params else None}")


def rook(m: int) -> ColouredGraph:
    """The m x m rook's graph: cells of a square grid, adjacent when they
    share a row or a column.  SRG(m^2, 2m-2, m-2, 2) for m >= 2."""
    if m < 1:
        raise GraphError(f"rook needs m >= 1, got {m}")
    n = m * m
    edges = [(a, b) for a in range(n) for b in range(a + 1, n)
             if a // m == b // m or a % m == b % m]
    G = make_graph(n, edges, [0] * n)
    if m >= 2:
        _assert_params(G, (m * m, 2 * m - 2, m - 2, 2), f"rook({m})")
    return G


def cycle(t: int) -> ColouredGraph:
    if t < 3:
        raise GraphError(f"cycle needs t >= 3, got {t}")
    return make_graph(t, [(i, (i + 1) % t) for i in range(t)], [0] * t)


def union_cliques(s: int, t: int) -> ColouredGraph:
    """Disjoint union of s cliques of size t."""
    if s < 1 or t < 1:
        raise GraphError(f"union_cliques needs s, t >= 1, got ({s}, {t})")
    edges = [(i * t + a, i * t + b)
             for i in range(s) for a in range(t) for b in range(a + 1, t)]
    return make_graph(s * t, edges, [0] * (s * t))


def complete(t: int) -> ColouredGraph:
    if t < 1:
        raise GraphError(f"complete needs t >= 1, got {t}")
    return union_cliques(1, t)


def standard_family(tag: str, **params) -> ColouredGraph:
    """Dispatch for the unnamed families: cycle(t), union_cliques(s, t),
    complete(t)."""
    if tag == "cycle":
        return cycle(params["t"])
    if tag == "union_cliques":
        return union_cliques(params["s"], params["t"])
    if tag == "complete":
        return complete(params["t"])
    raise GraphError(f"unknown standard family {tag!r}")


# ---------------------------------------------------------------- sporadics

@lru_cache(maxsize=None)
def clebsch() -> ColouredGraph:
    """Vertices F_2^4, adjacent when the difference has weight 1 or 4."""
    edges = [(a, b) for a in range(16) for b in range(a + 1, 16)
             if (a ^ b).bit_count() in (1, 4)]
    G = make_graph(16, edges, [0] * 16)
    _assert_params(G, (16, 5, 0, 2), "clebsch")
    return G


@lru_cache(maxsize=None)
def schlafli() -> ColouredGraph:
    """Nonzero singular points of the minus-type quadric on F_2^6, adjacent
    when not collinear on the quadric (polar form 1)."""
    space = QuadraticSpace(6, "-")
    pts = [v for v in range(1, 64) if space.kappa(v) == 0]
    edges = [(i, j) for i in range(len(pts)) for j in range(i + 1, len(pts))
             if space.kappa(pts[i] ^ pts[j]) == 1]
    G = make_graph(27, edges, [0] * 27)
    _assert_params(G, (27, 16, 10, 8), "schlafli")
    return G


@lru_cache(maxsize=None)
def shrikhande() -> ColouredGraph:
    """Cayley graph on Z_4 x Z_4 with difference set {+-(1,0), +-(0,1),
    +-(1,1)}; same parameters as rook(4) but C6 neighbourhoods."""
    diffs = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    edges = [(a, b) for a in range(16) for b in range(a + 1, 16)
             if ((a // 4 - b // 4) % 4, (a % 4 - b % 4) % 4) in diffs]
    G = make_graph(16, edges, [0] * 16)
    _assert_params(G, (16, 6, 2, 2), "shrikhande")
    if recognize_rook_or_shrikhande(G) != ("shrikhande", 4):
        raise IntegrityError("shrikhande: neighbourhood is not a 6-cycle")
    return G


@lru_cache(maxsize=None)
def higman_sims() -> ColouredGraph:
    """Apex + 22 points + 77 hexads: apex joined to every point, points to
    the hexads containing them, hexads to disjoint hexads."""
    _, blocks = witt_support()
    block_sets = [frozenset(b) for b in blocks]
    edges = [(0, 1 + p) for p in range(22)]
    for i, blk in enumerate(block_sets):
        edges.extend((1 + p, 23 + i) for p in sorted(blk))
        edges.extend((23 + i, 23 + j) for j in range(i + 1, 77)
                     if not blk & block_sets[j])
    G = make_graph(100, edges, [0] * 100)
    _assert_params(G, (100, 22, 0, 6), "higman_sims")
    return G


@lru_cache(maxsize=None)
def mclaughlin() -> ColouredGraph:
    """Bundled 275-vertex edge list, revalidated as SRG(275,112,30,56);
    by uniqueness that certifies the McLaughlin graph."""
    try:
        G = parse_cg(_data_text("mclaughlin.cg"))
    except FormatError as exc:
        raise IntegrityError(f"mclaughlin data unreadable: {exc}") from exc
    _assert_params(G, (275, 112, 30, 56), "mclaughlin")
    return G


def sporadic(tag: str) -> ColouredGraph:
    builders = {"clebsch": clebsch, "schlafli": schlafli,
                "shrikhande": shrikhande, "higman_sims": higman_sims,
                "mclaughlin": mclaughlin}
    if tag not in builders:
        raise GraphError(
            f"unknown sporadic {tag!r}; known: {', '.join(builders)}")
    return builders[tag]()


# ------------------------------------------------------- quadratic spaces

@dataclass(frozen=True)
class QuadraticSpace:
    """Quadratic form on F_2^dim of declared type eps ("+" or "-").

    Plus type is the sum of hyperbolic pairs x1x2 + x3x4 + ...; minus type
    replaces the last pair with the anisotropic tail x^2 + xy + y^2.
    Vectors are encoded as ints with bit i = coordinate i.
    """
    dim: int
    eps: str

    def __post_init__(self) -> None:
        if self.dim < 2 or self.dim % 2:
            raise GraphError(f"dimension must be even >= 2, got {self.dim}")
        if self.eps not in ("+", "-"):
            raise GraphError(f"type must be '+' or '-', got {self.eps!r}")

    def kappa(self, v: int) -> int:
        hyper = self.dim if self.eps == "+" else self.dim - 2
        acc = 0
        for i in range(0, hyper, 2):
            acc ^= (v >> i) & (v >> (i + 1)) & 1
        if self.eps == "-":
            x = (v >> (self.dim - 2)) & 1
            y = (v >> (self.dim - 1)) & 1
            acc ^= x ^ (x & y) ^ y
        return acc

    def bilinear(self, u: int, v: int) -> int:
        """Polar form of kappa."""
        return self.kappa(u ^ v) ^ self.kappa(u) ^ self.kappa(v)

    def singular_vectors(self) -> tuple[int, ...]:
        return tuple(v for v in range(1 << self.dim) if self.kappa(v) == 0)

    def max_totally_singular_dimension(self) -> int:
        """Largest dimension of a subspace on which kappa vanishes, found
        by exhaustive basis extension (d for plus type, d-1 for minus)."""
        sing = [v for v in self.singular_vectors() if v]
        best = 0

        def extend(basis: list[int], span: frozenset[int]) -> None:
            nonlocal best
            best = max(best, len(basis))
            floor = basis[-1] if basis else 0
            for w in sing:
                if w <= floor or w in span:
                    continue
                if all(self.bilinear(w, x) == 0 for x in basis):
                    extend(basis + [w], span | {w ^ s for s in span})

        extend([], frozenset({0}))
        return best

    def verify(self) -> None:
        """Check the declared type against the computed Witt index."""
        want = self.dim // 2 if self.eps == "+" else self.dim // 2 - 1
        got = self.max_totally_singular_dimension()
        if got != want:
            raise IntegrityError(
                f"declared type {self.eps} expects maximal totally singular "
                f"dimension {want}, computed {got}")


@lru_cache(maxsize=None)
def affine_polar(d: int, eps: str) -> ColouredGraph:
    """Affine polar graph on all vectors of F_2^{2d}: u ~ v iff u != v and
    the difference is singular for the type-eps form."""
    if d < 1:
        raise GraphError(f"affine_polar needs d >= 1, got {d}")
    space = QuadraticSpace(2 * d, eps)
    space.verify()
    n = 1 << (2 * d)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if space.kappa(u ^ v) == 0]
    return make_graph(n, edges, [0] * n)


# ------------------------------------------------------- small GF(q) and GQ

class _Field:
    """GF(q) for q in {2, 3, 4, 5} on elements 0..q-1 via lookup tables."""

    def __init__(self, q: int):
        self.q = q
        if q == 4:
            # GF(4) = {0, 1, w, w+1} with w^2 = w + 1; addition is xor
            self._add = [[a ^ b for b in range(4)] for a in range(4)]
            self._mul = [[0, 0, 0, 0], [0, 1, 2, 3],
                         [0, 2, 3, 1], [0, 3, 1, 2]]
            self._neg = [0, 1, 2, 3]
        else:
            self._add = [[(a + b) % q for b in range(q)] for a in range(q)]
            self._mul = [[a * b % q for b in range(q)] for a in range(q)]
            self._neg = [(-a) % q for a in range(q)]
        self._inv = [0] * q
        for a in range(1, q):
            self._inv[a] = next(b for b in range(1, q)
                                if self._mul[a][b] == 1)

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._inv[a]


def _anisotropic_tail(F: _Field) -> tuple[int, int]:
    """Coefficients (b, c) making x^2 + bxy + cy^2 vanish only at (0,0)."""
    for b in range(F.q):
        for c in range(F.q):
            ok = True
            for x, y in product(range(F.q), repeat=2):
                if (x, y) == (0, 0):
                    continue
                val = F.add(F.mul(x, x),
                            F.add(F.mul(b, F.mul(x, y)), F.mul(c, F.mul(y, y))))
                if val == 0:
                    ok = False
                    break
            if ok:
                return b, c
    raise IntegrityError(f"no anisotropic binary form over GF({F.q})")


def _shortest_cycle_through(adj: list[list[int]], root: int) -> int:
    """Length of a shortest cycle found by one BFS (>= girth, and equal to
    it when the root lies on a shortest even cycle)."""
    dist = {root: 0}
    parent = {root: -1}
    best = math.inf
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
            elif parent[u] != w:
                best = min(best, dist[u] + dist[w] + 1)
    return int(best)


@lru_cache(maxsize=None)
def gq_q5minus(q: int) -> ColouredGraph:
    """Incidence graph of the generalized quadrangle of the elliptic
    quadric in F_q^6: colour 0 = singular points, colour 1 = totally
    singular lines, edges = containment.  Verified biregular of girth 8.
    """
    if q not in (2, 3, 4, 5):
        raise GraphError(f"gq_q5minus supports q in {{2, 3, 4, 5}}, got {q}")
    F = _Field(q)
    b, c = _anisotropic_tail(F)

    def kappa(v: tuple[int, ...]) -> int:
        tail = F.add(F.mul(v[4], v[4]),
                     F.add(F.mul(b, F.mul(v[4], v[5])),
                           F.mul(c, F.mul(v[5], v[5]))))
        return F.add(F.add(F.mul(v[0], v[1]), F.mul(v[2], v[3])), tail)

    def vadd(u, v):
        return tuple(F.add(a, e) for a, e in zip(u, v))

    def vscale(a, v):
        return tuple(F.mul(a, e) for e in v)

    def bilinear(u, v):
        return F.sub(F.sub(kappa(vadd(u, v)), kappa(u)), kappa(v))

    def normalize(v):
        lead = next(e for e in v if e)
        return vscale(F.inv(lead), v)

    points = sorted({normalize(v) for v in product(range(q), repeat=6)
                     if any(v) and kappa(v) == 0})
    if len(points) != (q ** 3 + 1) * (q + 1):
        raise IntegrityError(f"gq_q5minus({q}): wrong point count")
    index = {p: i for i, p in enumerate(points)}

    lines_seen: set[tuple[int, ...]] = set()
    for i, j in combinations(range(len(points)), 2):
        if bilinear(points[i], points[j]) != 0:
            continue
        u, v = points[i], points[j]
        members = {index[normalize(vadd(vscale(a, u), vscale(bb, v)))]
                   for a, bb in product(range(q), repeat=2)
                   if (a, bb) != (0, 0)}
        lines_seen.add(tuple(sorted(members)))
    lines = sorted(lines_seen)
    if len(lines) != (q ** 3 + 1) * (q ** 2 + 1):
        raise IntegrityError(f"gq_q5minus({q}): wrong line count")

    P, L = len(points), len(lines)
    edges = [(i, P + k) for k, line in enumerate(lines) for i in line]
    colours = [0] * P + [1] * L
    G = make_graph(P + L, edges, colours)

    # biregularity plus the two forbidden short cycles, then an 8-cycle
    N = np.zeros((P, L), dtype=np.float64)
    for k, line in enumerate(lines):
        N[list(line), k] = 1.0
    if set(N.sum(axis=1)) != {float(q * q + 1)}:
        raise IntegrityError(f"gq_q5minus({q}): points not {q * q + 1}-regular")
    if set(N.sum(axis=0)) != {float(q + 1)}:
        raise IntegrityError(f"gq_q5minus({q}): lines not {q + 1}-regular")
    pp = N @ N.T
    np.fill_diagonal(pp, 0.0)
    if pp.max() > 1.0:
        raise IntegrityError(f"gq_q5minus({q}): two points on two lines")
    coll = (pp > 0).astype(np.float64)
    triangles = float((coll @ coll * coll).sum()) / 6.0
    on_a_line = L * math.comb(q + 1, 3)
    if triangles != on_a_line:
        raise IntegrityError(f"gq_q5minus({q}): collinearity triangle off a line")
    adj_lists: list[list[int]] = [[] for _ in range(P + L)]
    for i, k in edges:
        adj_lists[i].append(k)
        adj_lists[k].append(i)
    if _shortest_cycle_through(adj_lists, 0) != 8:
        raise IntegrityError(f"gq_q5minus({q}): girth is not 8")
    return G


# ------------------------------------------------------------ Witt designs

def _data_text(name: str) -> str:
    try:
        return (resources.files("homreg") / "data" / name).read_text(
            encoding="ascii")
    except OSError as exc:
        raise IntegrityError(f"bundled data file {name} unreadable: {exc}"
                             ) from exc


def _steiner_check(blocks, v: int, t: int) -> bool:
    hits = Counter()
    for blk in blocks:
        hits.update(combinations(sorted(blk), t))
    return (len(hits) == math.comb(v, t)
            and set(hits.values()) == {1})


@lru_cache(maxsize=1)
def witt_support() -> tuple[tuple[tuple[int, ...], ...],
                            tuple[tuple[int, ...], ...]]:
    """The 759 octads of S(5,8,24) (weight-8 Golay words) and the 77
    blocks of the doubly derived S(3,6,22) on points 0..21."""
    rows = [line for line in _data_text("golay_gen.txt").splitlines()
            if line and not line.startswith("#")]
    if len(rows) != 12 or any(len(r) != 24 or set(r) - {"0", "1"}
                              for r in rows):
        raise IntegrityError("golay generator must be 12 rows of 24 bits")
    gen = np.array([[int(ch) for ch in row] for row in rows], dtype=np.uint8)
    msgs = ((np.arange(4096)[:, None] >> np.arange(12)) & 1).astype(np.uint8)
    words = msgs @ gen % 2
    weights = Counter(int(w) for w in words.sum(axis=1))
    if weights != {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}:
        raise IntegrityError(f"golay weight enumerator wrong: {dict(weights)}")
    octads = sorted(tuple(int(i) for i in np.flatnonzero(w))
                    for w in words if w.sum() == 8)
    if not _steiner_check(octads, 24, 5):
        raise IntegrityError("octads do not form S(5,8,24)")
    derived = [set(o) - {23} for o in octads if 23 in o]
    blocks = sorted(tuple(sorted(blk - {22})) for blk in derived if 22 in blk)
    if len(blocks) != 77 or not _steiner_check(blocks, 22, 3):
        raise IntegrityError("derived blocks do not form S(3,6,22)")
    return tuple(octads), tuple(blocks)
