"""Permutation groups with exact order via an orbit-stabilizer chain.

Permutations on {0..n-1} are tuples p with p[i] = image of i.  The chain
is built by the deterministic Schreier-Sims procedure: sift a queued
permutation down the chain; where it escapes a transversal it becomes a
new level generator and all Schreier generators of that level are
re-queued.  Termination follows since levels and orbits only grow.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """(p . q)[i] = p[q[i]] (apply q first)."""
    return tuple(p[x] for x in q)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def is_identity(p: Perm) -> bool:
    return all(i == x for i, x in enumerate(p))


class PermGroup:
    """Group generated by colour-preserving automorphisms (or any perms)."""

    def __init__(self, n: int, generators: Iterable[Sequence[int]]):
        self.n = n
        gens = []
        seen = set()
        for g in generators:
            t = tuple(g)
            if len(t) != n or sorted(t) != list(range(n)):
                raise ValueError("generator is not a permutation of 0..n-1")
            if t not in seen and not is_identity(t):
                seen.add(t)
                gens.append(t)
        self.generators: tuple[Perm, ...] = tuple(gens)
        self._chain: list[_Level] | None = None

    # ------------------------------------------------------------- chain

    def _build_chain(self) -> tuple[list[int], list[dict[int, Perm]]]:
        """Base points and transversals satisfying the strong-generation property.

        A stored generator carries the level at which it was adjoined; it fixes
        every earlier base point.  Level i orbits use all generators stored at
        levels >= i.  Transversal representatives are never replaced once
        assigned, so Schreier generators only need enqueueing for the delta
        (new orbit points x all gens, all points x the new gen).
        """
        if self._chain is not None:
            return self._chain
        n = self.n
        bases: list[int] = []
        trans: list[dict[int, Perm]] = []
        store: list[tuple[Perm, int]] = []   # (gen, level adjoined)

        def extend_orbit(i: int, gens_i: list[Perm]) -> list[int]:
            t = trans[i]
            frontier = deque(t)
            added = []
            while frontier:
                x = frontier.popleft()
                tx = t[x]
                for g in gens_i:
                    y = g[x]
                    if y not in t:
                        t[y] = compose(g, tx)
                        added.append(y)
                        frontier.append(y)
            return added

        todo = deque(self.generators)
        while todo:
            p = todo.popleft()
            level = 0
            while level < len(bases) and not is_identity(p):
                rep = trans[level].get(p[bases[level]])
                if rep is None:
                    break
                p = compose(inverse(rep), p)
                level += 1
            if is_identity(p):
                continue
            if level == len(bases):
                b = next(i for i in range(n) if p[i] != i)
                bases.append(b)
                trans.append({b: identity(n)})
            store.append((p, level))
            for i in range(level + 1):
                gens_i = [g for g, lv in store if lv >= i]
                added = extend_orbit(i, gens_i)
                t = trans[i]
                for x in added:
                    tx = t[x]
                    for g in gens_i:
                        s = compose(inverse(t[g[x]]), compose(g, tx))
                        if not is_identity(s):
                            todo.append(s)
                for x in t:
                    if x in added:
                        continue
                    s = compose(inverse(t[p[x]]), compose(p, t[x]))
                    if not is_identity(s):
                        todo.append(s)
        self._chain = (bases, trans)
        return self._chain

    @property
    def order(self) -> int:
        ord_ = 1
        for t in self._build_chain()[1]:
            ord_ *= len(t)
        return ord_

    def contains(self, p: Sequence[int]) -> bool:
        q = tuple(p)
        if len(q) != self.n:
            return False
        bases, trans = self._build_chain()
        for b, t in zip(bases, trans):
            rep = t.get(q[b])
            if rep is None:
                return False
            q = compose(inverse(rep), q)
        return is_identity(q)

    # ------------------------------------------------------------- orbits

    def vertex_orbits(self) -> list[tuple[int, ...]]:
        """Orbit partition of {0..n-1}, each orbit ascending, ordered by minimum."""
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for v in range(self.n):
                a, b = find(v), find(g[v])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for v in range(self.n):
            groups.setdefault(find(v), []).append(v)
        return [tuple(groups[r]) for r in sorted(groups)]

    def orbit_of_tuple(self, t: Sequence[int]) -> set[tuple[int, ...]]:
        """Closure of an ordered vertex tuple under the generators."""
        start = tuple(t)
        seen = {start}
        frontier = deque([start])
        while frontier:
            cur = frontier.popleft()
            for g in self.generators:
                img = tuple(g[v] for v in cur)
                if img not in seen:
                    seen.add(img)
                    frontier.append(img)
        return seen

    def elements(self, limit: int = 10_000_000) -> set[Perm]:
        """Every group element by brute closure (tests only; guarded by limit)."""
        seen = {identity(self.n)}
        frontier = deque(seen)
        while frontier:
            cur = frontier.popleft()
            for g in self.generators:
                nxt = compose(g, cur)
                if nxt not in seen:
                    if len(seen) >= limit:
                        raise ValueError("group too large to enumerate")
                    seen.add(nxt)
                    frontier.append(nxt)
        return seen
