"""Brute-force reference implementations used to cross-check the library.

Everything here trades speed for obviousness: exhaustive permutation
scans, no canonical forms, no bit tricks beyond packing.  Keep inputs
tiny (n <= 8 or so).
"""

from itertools import combinations, permutations, product

import numpy as np

from homreg.graphs import ColouredGraph, make_graph


def random_coloured_graph(rng, n: int, c: int,
                          p: float = 0.5) -> ColouredGraph:
    """Random graph on n vertices with every colour id 0..c-1 used."""
    if c > n:
        raise ValueError("need n >= c to use every colour")
    while True:
        colours = [rng.randrange(c) for _ in range(n)]
        if len(set(colours)) == c:
            break
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < p]
    return make_graph(n, edges, colours)


# ------------------------------------------------------------ isomorphism

def _maps_correctly(G1: ColouredGraph, G2: ColouredGraph,
                    mapping: list[int]) -> bool:
    for v in range(G1.n):
        if G1.colours[v] != G2.colours[mapping[v]]:
            return False
        for w in range(G1.n):
            if G1.has_edge(v, w) != G2.has_edge(mapping[v], mapping[w]):
                return False
    return True


def brute_force_isomorphism(G1: ColouredGraph, G2: ColouredGraph
                            ) -> tuple[int, ...] | None:
    """First colour-preserving isomorphism found by trying all bijections."""
    if G1.n != G2.n or G1.c != G2.c:
        return None
    classes1 = [G1.colour_class(i) for i in range(G1.c)]
    classes2 = [G2.colour_class(i) for i in range(G2.c)]
    if [len(a) for a in classes1] != [len(b) for b in classes2]:
        return None
    for images in product(*(permutations(cls) for cls in classes2)):
        mapping = [0] * G1.n
        for cls, img in zip(classes1, images):
            for v, w in zip(cls, img):
                mapping[v] = w
        if _maps_correctly(G1, G2, mapping):
            return tuple(mapping)
    return None


def brute_force_automorphism_count(G: ColouredGraph) -> int:
    classes = [G.colour_class(i) for i in range(G.c)]
    count = 0
    for images in product(*(permutations(cls) for cls in classes)):
        mapping = [0] * G.n
        for cls, img in zip(classes, images):
            for v, w in zip(cls, img):
                mapping[v] = w
        if _maps_correctly(G, G, mapping):
            count += 1
    return count


# ------------------------------------------------------------ regularity

def subset_type(G: ColouredGraph, U: tuple[int, ...]):
    """Canonical key of the induced coloured subgraph: minimum over all
    orderings of (colour sequence, upper-triangle adjacency bits)."""
    best = None
    m = len(U)
    for order in permutations(range(m)):
        cols = tuple(G.colours[U[i]] for i in order)
        adj = tuple(G.has_edge(U[order[a]], U[order[b]])
                    for a in range(m) for b in range(a + 1, m))
        key = (cols, adj)
        if best is None or key < best:
            best = key
    return best


def lambda_vector(G: ColouredGraph, U: tuple[int, ...]) -> tuple[int, ...]:
    """Per colour class, how many vertices are adjacent to all of U."""
    counts = [0] * G.c
    for w in range(G.n):
        if w in U:
            continue
        if all(G.has_edge(w, u) for u in U):
            counts[G.colours[w]] += 1
    return tuple(counts)


def naive_k_tuple_regular(G: ColouredGraph, k: int) -> bool:
    """Definition check: same induced type implies same lambda vector,
    for every subset size m = 1..k."""
    for m in range(1, k + 1):
        seen: dict = {}
        for U in combinations(range(G.n), m):
            key = subset_type(G, U)
            vec = lambda_vector(G, U)
            if seen.setdefault(key, vec) != vec:
                return False
    return True


# ------------------------------------------------------------ equivalence

def _signed_perms(s: int):
    for perm in permutations(range(s)):
        base = np.zeros((s, s), dtype=np.int64)
        for l, pl in enumerate(perm):
            base[pl, l] = 1
        for signs in product((1, -1), repeat=s):
            yield base * np.array(signs, dtype=np.int64)


def _is_signed_monomial(M: np.ndarray) -> bool:
    a = np.abs(M)
    return (np.isin(a, (0, 1)).all()
            and (a.sum(axis=0) == 1).all()
            and (a.sum(axis=1) == 1).all())


def monomial_equivalent(E1: np.ndarray, E2: np.ndarray) -> bool:
    """Exhaustive search for signed monomial A, B with A @ E1 @ inv(B) = E2.

    Uses inv(E2) = E2.T / s, so B = E2.T @ A @ E1 / s must come out a
    signed monomial matrix.  Only practical for order <= 4.
    """
    s = E1.shape[0]
    if E2.shape[0] != s:
        return False
    for A in _signed_perms(s):
        M = E2.T @ A @ E1
        if (M % s == 0).all() and _is_signed_monomial(M // s):
            return True
    return False
