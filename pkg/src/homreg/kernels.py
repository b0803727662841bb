"""Hot loops with two interchangeable backends.

The environment variable HOMREG_KERNELS selects the implementation:

* ``numba``  jit-compiled kernels (default whenever numba imports),
* ``numpy``  plain Python/numpy reference path.

Both backends traverse the search spaces in the same order and return
bit-identical results; the reference path is the readable specification,
the jit path the fast one.  benchmarks/bench_kernels.py compares them.

Three scans live here:

* ktr_level_scan: stream all m-subsets in colex order, group them by the
  isomorphism type of their induced coloured subgraph, and report the
  first subset whose common-neighbour count vector disagrees with the
  first representative of its type.
* tuple_orbit_scan: orbits of the automorphism group on ordered m-tuples
  of distinct vertices, returning one representative per orbit.
* bipartition_search: depth-first search for a vertex bipartition with a
  prescribed side size whose two induced graphs are both strongly
  regular (degenerate cases included).

Subset types are keyed by (sorted colour tuple, canonical edge mask);
the canonical mask minimizes the packed upper-triangle adjacency over
all permutations preserving the colour runs, which classifies subsets
exactly like the canonical code of the induced subgraph.  Precomputed
minimization tables keep the per-subset cost at a few table lookups;
they are only built for m <= 5 (larger levels fall back to canonical
codes in the caller).
"""
from __future__ import annotations

import itertools
import os
from functools import lru_cache

import numpy as np

from .graphs import ColouredGraph

MAX_TABLE_LEVEL = 5
_KEY_CAP = 1 << 20


def _numba_available() -> bool:
    global _NUMBA_OK
    if _NUMBA_OK is None:
        try:
            import numba  # noqa: F401
            _NUMBA_OK = True
        except Exception:
            _NUMBA_OK = False
    return _NUMBA_OK


_NUMBA_OK: bool | None = None


def active_backend() -> str:
    """Backend chosen by HOMREG_KERNELS (numba when available otherwise)."""
    choice = os.environ.get("HOMREG_KERNELS", "").strip().lower()
    if choice in ("", "auto"):
        return "numba" if _numba_available() else "numpy"
    if choice == "numba":
        if not _numba_available():
            raise RuntimeError("HOMREG_KERNELS=numba but numba is not importable")
        return "numba"
    if choice in ("numpy", "python"):
        return "numpy"
    raise ValueError(f"unknown HOMREG_KERNELS value {choice!r}")


# ------------------------------------------------------------- packing

def pack_adjacency(G: ColouredGraph) -> np.ndarray:
    """Adjacency rows as uint64 words, bit v of row u = edge uv."""
    W = (G.n + 63) // 64
    out = np.zeros((G.n, W), dtype=np.uint64)
    for u in range(G.n):
        row = G.adj[u]
        for w in range(W):
            out[u, w] = (row >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    return out


def pack_class_masks(G: ColouredGraph) -> np.ndarray:
    W = (G.n + 63) // 64
    out = np.zeros((G.c, W), dtype=np.uint64)
    for r in range(G.c):
        mask = G.class_mask(r)
        for w in range(W):
            out[r, w] = (mask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    return out


# ------------------------------------------------- subset type tables

def _pair_bit(p: int, q: int) -> int:
    # bit index of the (p, q) pair, p < q, in colex pair order
    return q * (q - 1) // 2 + p


@lru_cache(maxsize=8)
def _canon_tables(m: int) -> np.ndarray:
    """tables[runsig, mask] = minimal mask over colour-run-preserving perms.

    runsig bit p-1 says positions p-1 and p carry equal colours after the
    subset is sorted by colour; masks pack the upper triangle in colex
    pair order.
    """
    if not 1 <= m <= MAX_TABLE_LEVEL:
        raise ValueError(f"tables only exist for 1 <= m <= {MAX_TABLE_LEVEL}")
    npairs = m * (m - 1) // 2
    nsig = 1 << (m - 1) if m > 1 else 1
    masks = np.arange(1 << npairs, dtype=np.int64)
    tab = np.empty((nsig, 1 << npairs), dtype=np.uint16)
    for runsig in range(nsig):
        runid = [0] * m
        for p in range(1, m):
            runid[p] = runid[p - 1] if (runsig >> (p - 1)) & 1 else runid[p - 1] + 1
        best = masks.copy()
        for perm in itertools.permutations(range(m)):
            if any(runid[perm[i]] != runid[i] for i in range(m)):
                continue
            moved = np.zeros_like(masks)
            for q in range(1, m):
                for p in range(q):
                    i, j = perm[p], perm[q]
                    if i > j:
                        i, j = j, i
                    moved |= ((masks >> _pair_bit(p, q)) & 1) << _pair_bit(i, j)
            np.minimum(best, moved, out=best)
        tab[runsig] = best
    return tab


def _max_keys(G: ColouredGraph, m: int) -> int:
    import math
    multisets = math.comb(G.c + m - 1, m)
    subsets = math.comb(G.n, m) if m <= G.n else 0
    return max(1, min(multisets << (m * (m - 1) // 2), subsets, _KEY_CAP))


# -------------------------------------------------- numba compilation

@lru_cache(maxsize=1)
def _jit():
    import numba
    from numba import njit

    u64 = np.uint64

    @njit(cache=True, inline="always")
    def pop64(x):
        x = x - ((x >> u64(1)) & u64(0x5555555555555555))
        x = (x & u64(0x3333333333333333)) + ((x >> u64(2)) & u64(0x3333333333333333))
        x = (x + (x >> u64(4))) & u64(0x0F0F0F0F0F0F0F0F)
        return np.int64((x * u64(0x0101010101010101)) >> u64(56))

    @njit(cache=True)
    def ktr_scan(adj, cmasks, colours, m, table, maxk):
        n = adj.shape[0]
        W = adj.shape[1]
        c = cmasks.shape[0]
        rep = np.zeros(m, np.int64)
        bad = np.zeros(m, np.int64)
        if m > n:
            return 0, rep, bad
        a = np.empty(m, np.int64)
        for i in range(m):
            a[i] = i
        sv = np.empty(m, np.int64)
        lam = np.empty(c, np.int64)
        kc = np.empty((maxk, m), np.int64)
        km = np.empty(maxk, np.int64)
        kl = np.empty((maxk, c), np.int64)
        kr = np.empty((maxk, m), np.int64)
        nk = 0
        while True:
            for i in range(m):
                sv[i] = a[i]
            for i in range(1, m):           # stable sort by colour
                x = sv[i]
                cx = colours[x]
                j = i - 1
                while j >= 0 and colours[sv[j]] > cx:
                    sv[j + 1] = sv[j]
                    j -= 1
                sv[j + 1] = x
            runsig = 0
            for p in range(1, m):
                if colours[sv[p]] == colours[sv[p - 1]]:
                    runsig |= 1 << (p - 1)
            mask = 0
            bit = 0
            for q in range(1, m):
                vq = sv[q]
                for p in range(q):
                    vp = sv[p]
                    w = adj[vq, vp >> 6]
                    if (w >> u64(vp & 63)) & u64(1) != u64(0):
                        mask |= 1 << bit
                    bit += 1
            cmask = np.int64(table[runsig, mask])
            for r in range(c):
                acc = np.int64(0)
                for wi in range(W):
                    x = adj[a[0], wi]
                    for i in range(1, m):
                        x &= adj[a[i], wi]
                    acc += pop64(x & cmasks[r, wi])
                lam[r] = acc
            hit = False
            for t in range(nk):
                if km[t] != cmask:
                    continue
                same = True
                for i in range(m):
                    if kc[t, i] != colours[sv[i]]:
                        same = False
                        break
                if not same:
                    continue
                hit = True
                for r in range(c):
                    if kl[t, r] != lam[r]:
                        for i in range(m):
                            rep[i] = kr[t, i]
                            bad[i] = a[i]
                        return 1, rep, bad
                break
            if not hit:
                if nk >= maxk:
                    return 2, rep, bad
                for i in range(m):
                    kc[nk, i] = colours[sv[i]]
                    kr[nk, i] = a[i]
                km[nk] = cmask
                for r in range(c):
                    kl[nk, r] = lam[r]
                nk += 1
            i = 0                           # advance colex
            while i < m:
                nxt = a[i + 1] if i + 1 < m else n
                if a[i] + 1 < nxt:
                    break
                i += 1
            if i == m:
                return 0, rep, bad
            a[i] += 1
            for j in range(i):
                a[j] = j

    @njit(cache=True)
    def orbit_scan(gens, n, m):
        total = np.int64(1)
        for _ in range(m):
            total *= n
        pw = np.empty(m, np.int64)
        pw[m - 1] = 1
        for i in range(m - 2, -1, -1):
            pw[i] = pw[i + 1] * n
        visited = np.zeros(total, np.uint8)
        reps = np.empty(1024, np.int64)
        stack = np.empty(1024, np.int64)
        digs = np.empty(m, np.int64)
        nrep = 0
        g = gens.shape[0]
        for idx in range(total):
            if visited[idx]:
                continue
            distinct = True
            for i in range(m):
                digs[i] = (idx // pw[i]) % n
            for i in range(m):
                for j in range(i + 1, m):
                    if digs[i] == digs[j]:
                        distinct = False
            if not distinct:
                continue
            if nrep >= reps.shape[0]:
                bigger = np.empty(reps.shape[0] * 2, np.int64)
                bigger[:reps.shape[0]] = reps
                reps = bigger
            reps[nrep] = idx
            nrep += 1
            visited[idx] = 1
            stack[0] = idx
            sp = 1
            while sp > 0:
                sp -= 1
                cur = stack[sp]
                for i in range(m):
                    digs[i] = (cur // pw[i]) % n
                for gi in range(g):
                    nidx = np.int64(0)
                    for i in range(m):
                        nidx += gens[gi, digs[i]] * pw[i]
                    if not visited[nidx]:
                        visited[nidx] = 1
                        if sp >= stack.shape[0]:
                            bigger = np.empty(stack.shape[0] * 2, np.int64)
                            bigger[:stack.shape[0]] = stack
                            stack = bigger
                        stack[sp] = nidx
                        sp += 1
        return nrep, reps[:nrep].copy()

    @njit(cache=True, inline="always")
    def srg_part(adj, mask, n):
        deg = np.int64(-1)
        for u in range(n):
            if (mask >> u64(u)) & u64(1) == u64(0):
                continue
            d = pop64(adj[u] & mask)
            if deg == -1:
                deg = d
            elif d != deg:
                return False
        lam = np.int64(-1)
        mu = np.int64(-1)
        for u in range(n):
            if (mask >> u64(u)) & u64(1) == u64(0):
                continue
            for v in range(u + 1, n):
                if (mask >> u64(v)) & u64(1) == u64(0):
                    continue
                common = pop64(adj[u] & adj[v] & mask)
                if (adj[u] >> u64(v)) & u64(1) != u64(0):
                    if lam == -1:
                        lam = common
                    elif common != lam:
                        return False
                else:
                    if mu == -1:
                        mu = common
                    elif common != mu:
                        return False
        return True

    @njit(cache=True)
    def bipartition(adj, n, n1):
        one = u64(1)
        m1 = one          # vertex 0 pinned to side 1
        m2 = u64(0)
        n2 = n - n1
        state = np.zeros(n, np.uint8)
        v = 1
        descending = True
        while v >= 1:
            if v == n:
                if pop64(m1) == n1 and srg_part(adj, m1, n) and srg_part(adj, m2, n):
                    return m1
                descending = False
                v -= 1
                continue
            if descending:
                start = 0
            else:
                s = state[v]
                if s == 1:
                    m1 &= ~(one << u64(v))
                else:
                    m2 &= ~(one << u64(v))
                start = s
            unmask = u64(0)
            for w in range(v + 1, n):
                unmask |= one << u64(w)
            advanced = False
            for side in range(start + 1, 3):
                if side == 1:
                    if pop64(m1) >= n1:
                        continue
                    t1 = m1 | (one << u64(v))
                    t2 = m2
                else:
                    if pop64(m2) >= n2:
                        continue
                    t1 = m1
                    t2 = m2 | (one << u64(v))
                ok = True
                for pick in range(2):
                    tm = t1 if pick == 0 else t2
                    need = n1 if pick == 0 else n2
                    full = pop64(tm) == need
                    lo = np.int64(-1)
                    hi = np.int64(-1)
                    for u in range(v + 1):
                        if (tm >> u64(u)) & u64(1) == u64(0):
                            continue
                        a = pop64(adj[u] & tm)
                        h = a if full else a + pop64(adj[u] & unmask)
                        if lo == -1 or a > lo:
                            lo = a
                        if hi == -1 or h < hi:
                            hi = h
                        if lo > hi:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    if side == 1:
                        m1 = t1
                    else:
                        m2 = t2
                    state[v] = side
                    v += 1
                    descending = True
                    advanced = True
                    break
            if not advanced:
                state[v] = 0
                v -= 1
                descending = False
        return u64(0)

    return ktr_scan, orbit_scan, bipartition


# ----------------------------------------------------- reference path

def _ktr_scan_py(G: ColouredGraph, m: int, table: np.ndarray):
    n = G.n
    if m > n:
        return 0, None, None
    colours = G.colours
    cmasks = [G.class_mask(r) for r in range(G.c)]
    adj = G.adj
    store: dict[tuple, tuple[tuple[int, ...], tuple[int, ...]]] = {}
    a = list(range(m))
    while True:
        sv = sorted(a, key=lambda v: colours[v])
        runsig = 0
        for p in range(1, m):
            if colours[sv[p]] == colours[sv[p - 1]]:
                runsig |= 1 << (p - 1)
        mask = 0
        bit = 0
        for q in range(1, m):
            for p in range(q):
                if adj[sv[q]] >> sv[p] & 1:
                    mask |= 1 << bit
                bit += 1
        key = (tuple(colours[v] for v in sv), int(table[runsig, mask]))
        inter = adj[a[0]]
        for v in a[1:]:
            inter &= adj[v]
        lam = tuple((inter & cm).bit_count() for cm in cmasks)
        prev = store.get(key)
        if prev is None:
            store[key] = (lam, tuple(a))
        elif prev[0] != lam:
            return 1, prev[1], tuple(a)
        i = 0
        while i < m:
            nxt = a[i + 1] if i + 1 < m else n
            if a[i] + 1 < nxt:
                break
            i += 1
        if i == m:
            return 0, None, None
        a[i] += 1
        for j in range(i):
            a[j] = j


def _orbit_scan_py(gens: np.ndarray, n: int, m: int):
    pw = [n ** (m - 1 - i) for i in range(m)]
    total = n ** m
    visited = bytearray(total)
    reps = []
    glist = [tuple(int(x) for x in g) for g in gens]
    for idx in range(total):
        if visited[idx]:
            continue
        digs = [(idx // pw[i]) % n for i in range(m)]
        if len(set(digs)) != m:
            continue
        reps.append(idx)
        visited[idx] = 1
        stack = [idx]
        while stack:
            cur = stack.pop()
            cd = [(cur // pw[i]) % n for i in range(m)]
            for g in glist:
                nidx = 0
                for i in range(m):
                    nidx += g[cd[i]] * pw[i]
                if not visited[nidx]:
                    visited[nidx] = 1
                    stack.append(nidx)
    return len(reps), np.array(reps, dtype=np.int64)


def _srg_part_py(adj: tuple[int, ...], members: list[int], mask: int) -> bool:
    deg = -1
    for u in members:
        d = (adj[u] & mask).bit_count()
        if deg == -1:
            deg = d
        elif d != deg:
            return False
    lam = mu = -1
    for i, u in enumerate(members):
        for v in members[i + 1:]:
            common = (adj[u] & adj[v] & mask).bit_count()
            if adj[u] >> v & 1:
                if lam == -1:
                    lam = common
                elif common != lam:
                    return False
            else:
                if mu == -1:
                    mu = common
                elif common != mu:
                    return False
    return True


def _bipartition_py(G: ColouredGraph, n1: int) -> int:
    n = G.n
    adj = G.adj
    n2 = n - n1

    def feasible(m1: int, m2: int, v: int) -> bool:
        unmask = ((1 << n) - 1) >> (v + 1) << (v + 1)
        for tm, need in ((m1, n1), (m2, n2)):
            size = tm.bit_count()
            if size > need:
                return False
            full = size == need
            lo = hi = -1
            for u in range(v + 1):
                if not tm >> u & 1:
                    continue
                a = (adj[u] & tm).bit_count()
                h = a if full else a + (adj[u] & unmask).bit_count()
                lo = a if lo == -1 or a > lo else lo
                hi = h if hi == -1 or h < hi else hi
                if lo > hi:
                    return False
        return True

    def rec(v: int, m1: int, m2: int) -> int:
        if v == n:
            if m1.bit_count() != n1:
                return 0
            mem1 = [u for u in range(n) if m1 >> u & 1]
            mem2 = [u for u in range(n) if m2 >> u & 1]
            if _srg_part_py(adj, mem1, m1) and _srg_part_py(adj, mem2, m2):
                return m1
            return 0
        for t1, t2 in ((m1 | 1 << v, m2), (m1, m2 | 1 << v)):
            if feasible(t1, t2, v):
                got = rec(v + 1, t1, t2)
                if got:
                    return got
        return 0

    return rec(1, 1, 0)


# ------------------------------------------------------------ dispatch

def ktr_level_scan(G: ColouredGraph, m: int):
    """Scan all m-subsets; return (status, rep, bad).

    status 0: every subset type has a constant common-neighbour vector.
    status 1: rep and bad induce isomorphic subgraphs with different
    vectors; rep is the colex-first representative of the type and bad
    the colex-first offender.
    """
    if m < 1:
        raise ValueError("level must be >= 1")
    if m > MAX_TABLE_LEVEL:
        raise ValueError(f"table-driven scan capped at m = {MAX_TABLE_LEVEL}")
    table = _canon_tables(m)
    if active_backend() == "numba":
        ktr_scan, _, _ = _jit()
        status, rep, bad = ktr_scan(
            pack_adjacency(G), pack_class_masks(G),
            np.array(G.colours, dtype=np.int64), m, table, _max_keys(G, m))
        if status == 2:
            raise RuntimeError("subset type store overflowed")
        if status == 1:
            return 1, tuple(int(v) for v in rep), tuple(int(v) for v in bad)
        return 0, None, None
    status, rep, bad = _ktr_scan_py(G, m, table)
    return status, rep, bad


def tuple_orbit_scan(G: ColouredGraph, generators, m: int):
    """Orbit count and first-seen representatives (encoded indices, ascending)
    of the generated group acting on ordered m-tuples of distinct vertices."""
    n = G.n
    if m < 1:
        raise ValueError("level must be >= 1")
    if n ** m > 1 << 27:
        raise ValueError(f"tuple space n^m = {n}**{m} exceeds the scan limit")
    gens = np.array([list(g) for g in generators], dtype=np.int64)
    if gens.size == 0:
        gens = gens.reshape(0, n)
    if active_backend() == "numba":
        _, orbit_scan, _ = _jit()
        nrep, reps = orbit_scan(gens, n, m)
        return int(nrep), reps
    return _orbit_scan_py(gens, n, m)


def decode_tuples(reps: np.ndarray, n: int, m: int) -> np.ndarray:
    """Vectorized decode of encoded tuple indices into an (len, m) array."""
    out = np.empty((len(reps), m), dtype=np.int64)
    idx = np.asarray(reps, dtype=np.int64)
    for i in range(m - 1, -1, -1):
        out[:, i] = idx % n
        idx = idx // n
    return out


def bipartition_search(G: ColouredGraph, n1: int) -> int:
    """First bipartition (vertex 0 on side 1, |side 1| = n1, DFS in vertex
    order trying side 1 first) whose parts are both strongly regular;
    returns the side-1 bitmask, 0 if none exists."""
    if not 1 <= n1 <= G.n - 1:
        raise ValueError("side size out of range")
    if G.n > 63:
        raise ValueError("bipartition search needs n <= 63")
    if active_backend() == "numba":
        _, _, bipartition = _jit()
        adj = np.array([row & ((1 << G.n) - 1) for row in G.adj], dtype=np.uint64)
        return int(bipartition(adj, G.n, n1))
    return _bipartition_py(G, n1)
