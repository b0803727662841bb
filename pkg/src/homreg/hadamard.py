"""Hadamard matrices, their coloured graphs, and signed-permutation symmetries.

A Hadamard matrix of rank s is a +-1 matrix whose rows are pairwise
orthogonal.  Every such matrix H yields a bipartite-flavoured coloured
graph on 4s vertices (two vertices per row, two per column) whose
isomorphism type captures H up to sign/permutation equivalence; this
module builds those graphs, decides equivalence through them, and
recognizes them.

Symmetries of H are pairs (A, B) of monomial matrices with A H B^-1 = H.
They are stored sparsely as signed permutations.  Besides the generic
calculus (compose, invert, verify) the module constructs three concrete
families used elsewhere in the analysis of highly regular graphs:

* Kronecker lifts of symmetries of Syl(2^t) to Syl(2^{t+1}),
* sign-flips of any one of the first three rows (sylvester_clique_swap),
* column transporters inside the first-two-row agreement classes
  (sylvester_column_map), and tabulated analogues for the rank-12 matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import formats
from .canon import are_isomorphic
from .graphs import ColouredGraph, IntegrityError, build_exact
from .permgroup import Perm


# ---------------------------------------------------------------- matrices

def is_sign_matrix(entries: np.ndarray) -> bool:
    mat = np.asarray(entries)
    return (mat.ndim == 2 and mat.shape[0] == mat.shape[1]
            and mat.shape[0] >= 1 and bool(np.all(np.abs(mat) == 1)))


def is_hadamard(entries: np.ndarray) -> bool:
    if not is_sign_matrix(entries):
        return False
    mat = np.asarray(entries, dtype=np.int64)
    s = mat.shape[0]
    return bool(np.array_equal(mat @ mat.T, s * np.eye(s, dtype=np.int64)))


class HadamardMatrix:
    """Immutable square +-1 matrix with pairwise orthogonal rows."""

    __slots__ = ("entries",)

    def __init__(self, entries) -> None:
        mat = np.array(entries, dtype=np.int8)
        if not is_hadamard(mat):
            raise ValueError("not a Hadamard matrix")
        mat.setflags(write=False)
        object.__setattr__(self, "entries", mat)

    @property
    def s(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, idx):
        return self.entries[idx]

    def __eq__(self, other) -> bool:
        return (isinstance(other, HadamardMatrix)
                and np.array_equal(self.entries, other.entries))

    def __hash__(self) -> int:
        return hash((self.s, self.entries.tobytes()))

    def __repr__(self) -> str:
        return f"HadamardMatrix(s={self.s})"


def kronecker(M, Mp):
    """Kronecker product by the index rule K[mp*r + v, np*c + w] = M[r,c]*Mp[v,w].

    Accepts plain arrays or HadamardMatrix values; returns a HadamardMatrix
    exactly when both inputs are ones (the product is again Hadamard).
    """
    wrap = isinstance(M, HadamardMatrix) and isinstance(Mp, HadamardMatrix)
    a = np.asarray(M.entries if isinstance(M, HadamardMatrix) else M)
    b = np.asarray(Mp.entries if isinstance(Mp, HadamardMatrix) else Mp)
    out = (a[:, None, :, None] * b[None, :, None, :]).reshape(
        a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
    return HadamardMatrix(out) if wrap else out


@lru_cache(maxsize=32)
def sylvester(t: int) -> HadamardMatrix:
    """Rank 2^t matrix from the recursion Syl(2^t) = Syl(2) (x) Syl(2^{t-1})."""
    if t < 1:
        raise ValueError(f"sylvester exponent must be >= 1, got {t}")
    base = np.array([[1, 1], [1, -1]], dtype=np.int8)
    mat = base
    for _ in range(t - 1):
        mat = (base[:, None, :, None] * mat[None, :, None, :]).reshape(
            2 * mat.shape[0], 2 * mat.shape[1])
    return HadamardMatrix(mat)


# Rank-12 Hadamard matrix (unique up to equivalence); '+' is +1, '-' is -1.
_HAD12_ROWS = (
    "++++++++++++",
    "+++------+++",
    "+++---+++---",
    "+--+---++-++",
    "+---+-+-++-+",
    "+----+++-++-",
    "+-+-++-+---+",
    "+-++-+--++--",
    "+-+++-+---+-",
    "++--++--+-+-",
    "++-+-++----+",
    "++-++--+-+--",
)


@lru_cache(maxsize=1)
def had12() -> HadamardMatrix:
    """The rank-12 Hadamard matrix used throughout the symmetry tables."""
    return HadamardMatrix([[1 if ch == "+" else -1 for ch in row]
                           for row in _HAD12_ROWS])


def read_hadamard(path) -> HadamardMatrix:
    return HadamardMatrix(formats.read_hm(path))


def write_hadamard(H: HadamardMatrix, path) -> None:
    formats.write_hm(H.entries, path)


# ------------------------------------------------------- monomial calculus

@dataclass(frozen=True)
class SignedPerm:
    """Monomial +-1 matrix stored as (permutation, signs).

    The matrix maps basis vector e_l to signs[l] * e_{perm[l]}, i.e. its
    only nonzero in column l sits in row perm[l] and equals signs[l].
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise ValueError("perm is not a permutation of 0..n-1")
        if len(self.signs) != n or any(s not in (-1, 1) for s in self.signs):
            raise ValueError("signs must be +-1 and match the degree")

    @property
    def degree(self) -> int:
        return len(self.perm)

    def compose(self, other: "SignedPerm") -> "SignedPerm":
        """Matrix product self * other."""
        perm = tuple(self.perm[k] for k in other.perm)
        signs = tuple(other.signs[l] * self.signs[other.perm[l]]
                      for l in range(len(other.perm)))
        return SignedPerm(perm, signs)

    def inverse(self) -> "SignedPerm":
        n = len(self.perm)
        inv = [0] * n
        for l, k in enumerate(self.perm):
            inv[k] = l
        return SignedPerm(tuple(inv), tuple(self.signs[inv[k]] for k in range(n)))

    def kron(self, other: "SignedPerm") -> "SignedPerm":
        d = other.degree
        perm = []
        signs = []
        for l in range(self.degree):
            for lp in range(d):
                perm.append(d * self.perm[l] + other.perm[lp])
                signs.append(self.signs[l] * other.signs[lp])
        return SignedPerm(tuple(perm), tuple(signs))

    def permutation_part(self) -> Perm:
        """P in the unique factorization self = D * P (P a 0/1 permutation)."""
        return self.perm

    def diagonal_part(self) -> tuple[int, ...]:
        """Diagonal of D in the factorization self = D * P."""
        diag = [0] * len(self.perm)
        for l, k in enumerate(self.perm):
            diag[k] = self.signs[l]
        return tuple(diag)

    def matrix(self) -> np.ndarray:
        out = np.zeros((self.degree, self.degree), dtype=np.int8)
        for l, k in enumerate(self.perm):
            out[k, l] = self.signs[l]
        return out

    def entry(self, k: int, l: int) -> int:
        return self.signs[l] if self.perm[l] == k else 0


def signed_identity(n: int) -> SignedPerm:
    return SignedPerm(tuple(range(n)), (1,) * n)


@dataclass(frozen=True)
class MonomialPair:
    """Pair (A, B) of equal-degree signed permutations acting as H -> A H B^-1."""

    a: SignedPerm
    b: SignedPerm

    def __post_init__(self) -> None:
        if self.a.degree != self.b.degree:
            raise ValueError("A and B must have equal degree")

    @property
    def degree(self) -> int:
        return self.a.degree

    def compose(self, other: "MonomialPair") -> "MonomialPair":
        return MonomialPair(self.a.compose(other.a), self.b.compose(other.b))

    def inverse(self) -> "MonomialPair":
        return MonomialPair(self.a.inverse(), self.b.inverse())

    def apply(self, entries: np.ndarray) -> np.ndarray:
        """A * entries * B^-1 without forming dense monomial matrices."""
        mat = np.asarray(entries, dtype=np.int64)
        ia = np.argsort(np.asarray(self.a.perm))
        ib = np.argsort(np.asarray(self.b.perm))
        sa = np.asarray(self.a.signs)[ia]
        sb = np.asarray(self.b.signs)[ib]
        return mat[np.ix_(ia, ib)] * sa[:, None] * sb[None, :]


def identity_pair(n: int) -> MonomialPair:
    return MonomialPair(signed_identity(n), signed_identity(n))


def kron_pair(outer: MonomialPair, inner: MonomialPair) -> MonomialPair:
    return MonomialPair(outer.a.kron(inner.a), outer.b.kron(inner.b))


def verify_automorphism(H: HadamardMatrix, p: MonomialPair) -> bool:
    """True iff A H B^-1 = H entrywise."""
    if p.degree != H.s:
        raise ValueError(f"pair degree {p.degree} does not match rank {H.s}")
    return bool(np.array_equal(p.apply(H.entries), H.entries))


def nu(p: MonomialPair) -> Perm:
    """Permutation part of the A component (the induced row permutation)."""
    return p.a.permutation_part()


@dataclass(frozen=True)
class OmegaSet:
    """Columns whose first two entries equal those of the base column, up to
    global negation."""

    base: int
    members: tuple[int, ...]

    def __contains__(self, c: int) -> bool:
        return c in self.members

    def __iter__(self):
        return iter(self.members)


def omega(H: HadamardMatrix, c: int) -> OmegaSet:
    if H.s < 2:
        raise ValueError("omega needs at least two rows")
    if not 0 <= c < H.s:
        raise ValueError(f"column {c} out of range")
    head = H.entries[:2, :]
    target = head[:, c]
    hits = np.all(head == target[:, None], axis=0) | np.all(head == -target[:, None], axis=0)
    return OmegaSet(c, tuple(int(j) for j in np.flatnonzero(hits)))


# ------------------------------------------------------------ graph views

def _cross_edges(H: HadamardMatrix) -> list[tuple[int, int]]:
    # row i owns vertices 2i (plus) and 2i+1 (minus); column j owns
    # 2s+2j and 2s+2j+1; a +1 entry joins like signs, a -1 entry unlike
    s = H.s
    out = []
    for i in range(s):
        base = 2 * i
        for j in range(s):
            cbase = 2 * s + 2 * j
            if H.entries[i, j] == 1:
                out.append((base, cbase))
                out.append((base + 1, cbase + 1))
            else:
                out.append((base, cbase + 1))
                out.append((base + 1, cbase))
    return out


def hadamard_graph(H: HadamardMatrix) -> ColouredGraph:
    """Monochromatic graph on 4s vertices with the sign-pattern edges only."""
    return build_exact(4 * H.s, _cross_edges(H), [0] * (4 * H.s))


def extended_hadamard(H: HadamardMatrix) -> ColouredGraph:
    """Sign-pattern graph plus the row/column pair matchings, rows coloured 0
    and columns coloured 1."""
    s = H.s
    edges = _cross_edges(H)
    edges.extend((2 * k, 2 * k + 1) for k in range(2 * s))
    return build_exact(4 * s, edges, [0] * (2 * s) + [1] * (2 * s))


def are_equivalent(H1: HadamardMatrix, H2: HadamardMatrix) -> bool:
    """Equivalence under row/column permutations and negations, decided via
    colour-preserving isomorphism of the extended graphs."""
    if H1.s != H2.s:
        return False
    return are_isomorphic(extended_hadamard(H1), extended_hadamard(H2))


def _matching_pairs(G: ColouredGraph, colour: int) -> list[tuple[int, int]] | None:
    # the colour class must induce a perfect matching (sK2)
    mask = G.class_mask(colour)
    pairs = []
    for v in G.colour_class(colour):
        inside = G.adj[v] & mask
        if inside.bit_count() != 1:
            return None
        w = inside.bit_length() - 1
        if v < w:
            pairs.append((v, w))
    if 2 * len(pairs) != G.class_mask(colour).bit_count():
        return None
    return pairs


def recognize_extended_hadamard(G: ColouredGraph) -> HadamardMatrix | None:
    """Reconstruct H from a graph isomorphic to an extended Hadamard graph.

    Rows are read off the colour-0 matched pairs and columns off the
    colour-1 pairs; the sign of entry (i, j) says whether the chosen row
    representative is adjacent to the chosen column representative.
    Returns None whenever the structure does not fit.
    """
    if G.c != 2:
        return None
    reds = _matching_pairs(G, 0)
    blues = _matching_pairs(G, 1)
    if reds is None or blues is None or len(reds) != len(blues):
        return None
    s = len(reds)
    mat = np.zeros((s, s), dtype=np.int8)
    for i, (u, u2) in enumerate(reds):
        for j, (w, w2) in enumerate(blues):
            like = G.has_edge(u, w)
            # the four cross pairs must form a perfect matching
            if (G.has_edge(u, w2) == like or G.has_edge(u2, w) == like
                    or G.has_edge(u2, w2) != like):
                return None
            mat[i, j] = 1 if like else -1
    if not is_hadamard(mat):
        return None
    return HadamardMatrix(mat)


# -------------------------------------------------- constructive symmetries

_ID2 = signed_identity(2)
_SWAP = SignedPerm((1, 0), (1, 1))
_NEG_SWAP = SignedPerm((1, 0), (-1, -1))
_NEG_FIRST = SignedPerm((0, 1), (-1, 1))    # diag(-1, 1)
_NEG_SECOND = SignedPerm((0, 1), (1, -1))   # diag(1, -1)

# Lifts of Aut(Syl(2^t)) into Aut(Syl(2^{t+1})): tensoring with a degree-2
# pair (X, Y) works exactly when X Syl(2) Y^-1 = Syl(2).
_LIFT_SAME = MonomialPair(_ID2, _ID2)
_LIFT_CROSS = MonomialPair(_NEG_SECOND, _SWAP)

_CLIQUE_SWAP_BASE = (
    MonomialPair(_NEG_SECOND.kron(_NEG_FIRST), _SWAP.kron(_NEG_SWAP)),
    MonomialPair(_ID2.kron(_NEG_SECOND), _ID2.kron(_SWAP)),
    MonomialPair(_NEG_SECOND.kron(_ID2), _SWAP.kron(_ID2)),
)


def sylvester_clique_swap(t: int, i: int) -> MonomialPair:
    """Symmetry of Syl(2^t) negating row i (0-indexed, i < 3) and fixing the
    other two of the first three rows with sign +1."""
    if t < 2:
        raise ValueError(f"need t >= 2, got {t}")
    if i not in (0, 1, 2):
        raise ValueError(f"row index must be 0, 1 or 2, got {i}")
    pair = _CLIQUE_SWAP_BASE[i]
    for _ in range(t - 2):
        pair = kron_pair(_LIFT_SAME, pair)
    return pair


def _column_map(t: int, c: int, j: int) -> MonomialPair:
    if t == 2:
        if c == j:
            return identity_pair(4)
        # swap the two agreement-class columns; fixes rows 0 and 1
        return MonomialPair(_NEG_SECOND.kron(_ID2), _SWAP.kron(_ID2))
    h = 1 << (t - 1)
    inner = _column_map(t - 1, c % h, j % h)
    outer = _LIFT_SAME if (c < h) == (j < h) else _LIFT_CROSS
    return kron_pair(outer, inner)


def sylvester_column_map(t: int, c: int, j: int) -> MonomialPair:
    """Symmetry of Syl(2^t) fixing rows 0 and 1 with sign +1 and carrying
    column j to position c (so B has a nonzero entry at (c, j)).

    Requires j in omega(Syl(2^t), c); for Sylvester matrices that class is
    exactly the columns of equal parity (row 1 alternates signs).
    """
    if t < 2:
        raise ValueError(f"need t >= 2, got {t}")
    s = 1 << t
    if not (0 <= c < s and 0 <= j < s):
        raise ValueError("column index out of range")
    if (c - j) % 2 != 0:
        raise ValueError(f"column {j} is not in the agreement class of column {c}")
    return _column_map(t, c, j)


# ------------------------------------------------- rank-12 symmetry tables

# Each entry: (label, row cycles, row inversion set, column cycles, column
# inversion set), all 1-indexed exactly as tabulated.
_HAD12_ROW_TABLE = (
    (1, ((4, 12, 5, 9), (7, 10, 11, 8)), frozenset({1, 6, 7, 8, 10, 11}),
     ((1, 6), (2, 4, 3, 5), (7, 10, 8, 11), (9, 12)), frozenset(range(1, 13))),
    (2, ((4, 10, 5, 8), (7, 9, 11, 12)), frozenset({2, 6, 7, 9, 11, 12}),
     ((1, 9), (2, 7, 3, 8), (4, 11, 5, 10), (6, 12)), frozenset()),
    (3, ((4, 11, 5, 7), (8, 12, 10, 9)), frozenset({3, 6, 8, 9, 10, 12}),
     ((1, 12), (2, 10, 3, 11), (4, 7, 5, 8), (6, 9)), frozenset()),
)

_HAD12_COLUMN_TABLE = (
    (1, ((3, 12, 11), (4, 9, 6), (5, 7, 8)), frozenset(),
     ((3, 10, 12), (4, 7, 8), (5, 6, 9)), frozenset()),
    (2, ((3, 12), (4, 8), (5, 6), (7, 9)), frozenset({4, 5, 6, 7, 8, 9}),
     ((1, 2), (3, 10), (4, 7), (5, 9)), frozenset()),
    (3, ((3, 9, 7, 8), (4, 10, 12, 5)), frozenset({4, 5, 6, 10, 11, 12}),
     ((1, 3), (2, 11, 12, 10), (4, 8), (5, 6, 9, 7)), frozenset()),
    (4, ((3, 10, 5, 6), (4, 8, 9, 11)), frozenset({2, 3, 5, 6, 7, 10}),
     ((1, 4), (2, 8, 10, 5), (3, 7, 12, 9), (6, 11)), frozenset()),
    (5, ((3, 11, 8, 6), (5, 9, 10, 7)), frozenset({2, 3, 4, 6, 8, 11}),
     ((1, 5), (2, 8, 10, 4), (3, 9), (6, 12, 7, 11)), frozenset()),
    (6, ((3, 12, 4, 5), (6, 7, 8, 10)), frozenset({2, 3, 4, 5, 9, 12}),
     ((1, 6), (2, 7, 12, 4), (3, 9, 11, 8), (5, 10)), frozenset()),
    (7, ((3, 11, 9, 6), (4, 8, 12, 7)), frozenset({2, 4, 7, 8, 10, 12}),
     ((1, 7), (2, 4, 11, 8), (3, 6), (5, 10, 9, 12)), frozenset()),
    (8, ((3, 12, 4, 6), (5, 9, 8, 11)), frozenset({2, 5, 8, 9, 10, 11}),
     ((1, 8), (2, 4, 11, 7), (3, 5, 12, 6), (9, 10)), frozenset()),
    (9, ((3, 10, 8, 5), (6, 7, 11, 9)), frozenset({2, 6, 7, 9, 11, 12}),
     ((1, 9), (2, 6, 10, 7), (3, 5), (4, 12, 8, 11)), frozenset()),
    (10, ((3, 11, 4, 9), (5, 12, 8, 6)), frozenset({3, 4, 7, 9, 10, 11}),
     ((1, 10), (2, 3, 11, 12), (4, 6, 7, 5), (8, 9)), frozenset()),
    (11, ((3, 12), (4, 10), (5, 7), (8, 11)), frozenset({3, 5, 7, 8, 11, 12}),
     ((1, 11), (2, 12), (4, 5), (6, 8)), frozenset()),
    (12, ((3, 12), (4, 11), (6, 9), (8, 10)), frozenset({3, 6, 8, 9, 10, 12}),
     ((1, 12), (2, 11), (6, 8), (7, 9)), frozenset()),
)


def _decode_signed_perm(n: int, cycles, inversions) -> SignedPerm:
    # table data is 1-indexed; this is the only place that converts
    perm = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a - 1] = b - 1
    signs = tuple(-1 if l + 1 in inversions else 1 for l in range(n))
    return SignedPerm(tuple(perm), signs)


@lru_cache(maxsize=1)
def had12_lemma_pairs() -> tuple[tuple[MonomialPair, ...], tuple[MonomialPair, ...]]:
    """Decode and verify the tabulated symmetries of the rank-12 matrix.

    Returns (row_pairs, column_pairs): three pairs that negate exactly one
    of the first three rows, and twelve pairs carrying the first column to
    each possible position.  Every pair is checked against had12(), along
    with the composed pairs that transport any column j onto any column c
    of the same agreement class while fixing rows 0 and 1; a failure
    raises IntegrityError naming the offending row.
    """
    H = had12()
    row_pairs = []
    for label, sa, ia, sb, ib in _HAD12_ROW_TABLE:
        pair = MonomialPair(_decode_signed_perm(12, sa, ia),
                            _decode_signed_perm(12, sb, ib))
        if not verify_automorphism(H, pair):
            raise IntegrityError(f"row table entry {label} is not a symmetry")
        for k in range(3):
            want = -1 if k == label - 1 else 1
            if pair.a.entry(k, k) != want:
                raise IntegrityError(f"row table entry {label} has a wrong diagonal")
        row_pairs.append(pair)
    col_pairs = []
    for label, sa, ia, sb, ib in _HAD12_COLUMN_TABLE:
        pair = MonomialPair(_decode_signed_perm(12, sa, ia),
                            _decode_signed_perm(12, sb, ib))
        if not verify_automorphism(H, pair):
            raise IntegrityError(f"column table entry {label} is not a symmetry")
        if pair.b.perm[0] != label - 1:
            raise IntegrityError(
                f"column table entry {label} does not move the first column there")
        col_pairs.append(pair)
    for c in range(12):
        for j in omega(H, c):
            comp = col_pairs[c].inverse().compose(col_pairs[j])
            if not verify_automorphism(H, comp):
                raise IntegrityError(f"composed pair for columns ({c + 1},{j + 1}) fails")
            if comp.a.entry(0, 0) != 1 or comp.a.entry(1, 1) != 1:
                raise IntegrityError(
                    f"composed pair for columns ({c + 1},{j + 1}) moves a fixed row")
            if comp.b.perm[j] != c:
                raise IntegrityError(
                    f"composed pair for columns ({c + 1},{j + 1}) misses the column entry")
    return tuple(row_pairs), tuple(col_pairs)


def verify_constructive_pairs(t_max: int = 5) -> list[str]:
    """Re-check every constructive symmetry family; returns failure messages.

    Covers the clique swaps and column transporters of Syl(2^t) for
    2 <= t <= t_max and the full tabulated rank-12 battery (including the
    composed column transporters).  An empty list means everything holds.
    """
    failures: list[str] = []
    for t in range(2, t_max + 1):
        H = sylvester(t)
        for i in range(3):
            pair = sylvester_clique_swap(t, i)
            if not verify_automorphism(H, pair):
                failures.append(f"clique swap ({t},{i}) is not a symmetry")
                continue
            for k in range(3):
                want = -1 if k == i else 1
                if pair.a.entry(k, k) != want:
                    failures.append(f"clique swap ({t},{i}) has a wrong diagonal")
                    break
        for c in range(H.s):
            for j in omega(H, c):
                pair = sylvester_column_map(t, c, j)
                if not verify_automorphism(H, pair):
                    failures.append(f"column map ({t},{c},{j}) is not a symmetry")
                elif pair.a.entry(0, 0) != 1 or pair.a.entry(1, 1) != 1:
                    failures.append(f"column map ({t},{c},{j}) moves a fixed row")
                elif pair.b.perm[j] != c:
                    failures.append(f"column map ({t},{c},{j}) misses the column entry")
    try:
        had12_lemma_pairs()
    except IntegrityError as exc:
        failures.append(str(exc))
    return failures
