"""Regularity-preserving graph operations and reduction to cores.

Four operations preserve the tuple-regularity and homogeneity levels of
a coloured graph: complementing the edges between (or within) colour
classes, disjoint union with disjoint colour sets, blowing an
independent colour class up into same-size cliques, and duplicating an
independent class behind a perfect matching.  A graph none of whose
colour-complementation states admits the inverse of one of the latter
three is reduced; `reduce` peels a graph down to its reduced cores and
records a replayable trace.
"""
from __future__ import annotations

from dataclasses import dataclass

from .canon import are_isomorphic
from .graphs import (ColouredGraph, GraphError, bits, build_exact, induced,
                     make_graph, mask_of)

__all__ = [
    "ReductionStep", "ReductionTrace", "Detection", "DETECTOR_COLOUR_CAP",
    "colour_complement", "blow_up", "matching_extension", "disjoint_union",
    "connection_type", "recognize_blow_up", "detect_reduction", "reduce",
]

DETECTOR_COLOUR_CAP = 16


# ------------------------------------------------------------ operations

def colour_complement(G: ColouredGraph, C: int, Cp: int) -> ColouredGraph:
    """Toggle all edges with one endpoint in class C and the other in
    class Cp (within-class when C == Cp, excluding the diagonal)."""
    mc, mcp = G.class_mask(C), G.class_mask(Cp)
    adj = list(G.adj)
    if C == Cp:
        for v in bits(mc):
            adj[v] ^= mc & ~(1 << v)
    else:
        for v in bits(mc):
            adj[v] ^= mcp
        for v in bits(mcp):
            adj[v] ^= mc
    return ColouredGraph(G.n, tuple(adj), G.colours, G.c, G._class_masks)


def _require_independent(G: ColouredGraph, R: int) -> int:
    mask = G.class_mask(R)
    for v in bits(mask):
        if G.adj[v] & mask:
            raise GraphError(f"colour class {R} is not independent")
    return mask


def blow_up(G: ColouredGraph, R: int, t: int) -> ColouredGraph:
    """Replace each vertex r of the independent class R by a t-clique of
    the same colour; a new vertex keeps r's outside neighbourhood."""
    if t < 2:
        raise GraphError(f"clique size {t} < 2")
    mask = _require_independent(G, R)
    edges = list(G.edges())
    colours = list(G.colours)
    nxt = G.n
    for r in bits(mask):
        clique = [r]
        for _ in range(t - 1):
            colours.append(G.colours[r])
            for w in bits(G.adj[r]):
                edges.append((nxt, w))
            clique.append(nxt)
            nxt += 1
        edges.extend((u, v) for i, u in enumerate(clique)
                     for v in clique[i + 1:])
    return build_exact(nxt, edges, colours)


def matching_extension(G: ColouredGraph, R: int,
                       new_colour: int) -> ColouredGraph:
    """Duplicate the independent class R into an unused colour; each
    duplicate is joined to its original and inherits the original's
    neighbourhood."""
    if new_colour < G.c:
        raise GraphError(f"colour {new_colour} already in use")
    mask = _require_independent(G, R)
    edges = list(G.edges())
    colours = list(G.colours)
    nxt = G.n
    for r in bits(mask):
        colours.append(new_colour)
        edges.append((r, nxt))
        edges.extend((nxt, w) for w in bits(G.adj[r]))
        nxt += 1
    return make_graph(nxt, edges, colours)


def disjoint_union(G1: ColouredGraph, G2: ColouredGraph) -> ColouredGraph:
    """Disjoint union with G2's colours relabelled above G1's."""
    edges = list(G1.edges())
    edges.extend((u + G1.n, v + G1.n) for u, v in G2.edges())
    colours = list(G1.colours) + [c + G1.c for c in G2.colours]
    return build_exact(G1.n + G2.n, edges, colours)


def connection_type(G: ColouredGraph, R: int, B: int) -> str:
    """Classify the bipartite connection between two colour classes as
    "homogeneous" (all or no cross edges), "matching" (cross edges or
    cross non-edges a perfect matching), or "other"."""
    if R == B:
        raise GraphError("connection type needs two distinct classes")
    mr, mb = G.class_mask(R), G.class_mask(B)
    degs_r = [(G.adj[v] & mb).bit_count() for v in bits(mr)]
    degs_b = [(G.adj[v] & mr).bit_count() for v in bits(mb)]
    nb, nr = mb.bit_count(), mr.bit_count()
    if all(d == 0 for d in degs_r) or all(d == nb for d in degs_r):
        return "homogeneous"
    if nr == nb:
        if all(d == 1 for d in degs_r) and all(d == 1 for d in degs_b):
            return "matching"
        if (all(d == nb - 1 for d in degs_r)
                and all(d == nr - 1 for d in degs_b)):
            return "matching"
    return "other"


# ------------------------------------------------------------ reduction

@dataclass(frozen=True)
class ReductionStep:
    """One replayable event.

    kind "complement": colours = (C, C') toggled.
    kind "split_union": colours = colour ids of the first part.
    kind "undo_blow_up": colours = (R,), t = clique size removed.
    kind "undo_matching": colours = (kept, dropped).
    """
    kind: str
    colours: tuple[int, ...]
    t: int | None = None

    def as_dict(self) -> dict:
        d: dict = {"kind": self.kind, "colours": list(self.colours)}
        if self.t is not None:
            d["t"] = self.t
        return d


@dataclass(frozen=True)
class Detection:
    steps: tuple[ReductionStep, ...]    # complement prefix + one structural
    parts: tuple[ColouredGraph, ...]    # two graphs after split_union, else one


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[ReductionStep, ...]
    cores: tuple[ColouredGraph, ...]


def _toggle_list(c: int) -> list[tuple[int, int]]:
    singles = [(i, i) for i in range(c)]
    pairs = [(i, j) for i in range(c) for j in range(i + 1, c)]
    return singles + pairs


def _complement_states(G: ColouredGraph):
    """Yield (toggle bitmask, graph) over all complementation states in
    Gray-code order, starting from the untouched graph."""
    toggles = _toggle_list(G.c)
    cur = G
    state = 0
    yield state, cur
    for i in range(1, 1 << len(toggles)):
        bit = (i & -i).bit_length() - 1
        state ^= 1 << bit
        cur = colour_complement(cur, *toggles[bit])
        yield state, cur


def _prefix_steps(state: int, toggles: list[tuple[int, int]]
                  ) -> tuple[ReductionStep, ...]:
    return tuple(ReductionStep("complement", toggles[b])
                 for b in bits(state))


def _find_split(X: ColouredGraph) -> tuple[int, ...] | None:
    """Colour ids of a proper class group with no edges to the rest."""
    if X.c == 1:
        return None
    group = 1            # colour-id bitmask, seeded with colour 0
    masks = [X.class_mask(i) for i in range(X.c)]
    while True:
        vmask = 0
        for i in bits(group):
            vmask |= masks[i]
        reach = 0
        for v in bits(vmask):
            reach |= X.adj[v]
        grown = group
        for j in range(X.c):
            if reach & masks[j]:
                grown |= 1 << j
        if grown == group:
            break
        group = grown
    if group == (1 << X.c) - 1:
        return None
    return tuple(bits(group))


def _class_clique_union(X: ColouredGraph, mask: int) -> list[int] | None:
    """Component masks when the class induces same-size cliques of size
    >= 2, else None."""
    comps = []
    seen = 0
    for v in bits(mask):
        if seen >> v & 1:
            continue
        comp = 0
        frontier = 1 << v
        while frontier:
            comp |= frontier
            grown = 0
            for u in bits(frontier):
                grown |= X.adj[u] & mask
            frontier = grown & ~comp
        seen |= comp
        comps.append(comp)
    t = comps[0].bit_count()
    if t < 2 or any(c.bit_count() != t for c in comps):
        return None
    for comp in comps:
        for u in bits(comp):
            if X.adj[u] & mask != comp & ~(1 << u):
                return None
    return comps


def _find_blow_up(X: ColouredGraph) -> tuple[int, int, list[int]] | None:
    """(R, t, clique masks) for the first class inducing sK_t whose
    cliques are outside-twin sets."""
    for R in range(X.c):
        mask = X.class_mask(R)
        comps = _class_clique_union(X, mask)
        if comps is None:
            continue
        outside_ok = True
        for comp in comps:
            nbhds = {X.adj[u] & ~mask for u in bits(comp)}
            if len(nbhds) != 1:
                outside_ok = False
                break
        if outside_ok:
            return R, comps[0].bit_count(), comps
    return None


def _find_matching(X: ColouredGraph) -> tuple[int, int] | None:
    """(kept, dropped) for the first class pair forming a homogeneous
    matching extension; the higher colour id is dropped."""
    indep = [not any(X.adj[v] & X.class_mask(i)
                     for v in bits(X.class_mask(i))) for i in range(X.c)]
    for a in range(X.c):
        for b in range(a + 1, X.c):
            if not (indep[a] and indep[b]):
                continue
            ma, mb = X.class_mask(a), X.class_mask(b)
            if ma.bit_count() != mb.bit_count():
                continue
            both = ma | mb
            ok = True
            for u in bits(ma):
                cross = X.adj[u] & mb
                if cross.bit_count() != 1:
                    ok = False
                    break
                partner = cross.bit_length() - 1
                if X.adj[u] & ~both != X.adj[partner] & ~both:
                    ok = False
                    break
            if ok and all((X.adj[v] & ma).bit_count() == 1 for v in bits(mb)):
                return a, b
    return None


def recognize_blow_up(G: ColouredGraph) -> tuple[int, int] | None:
    """(R, t) when some colour class induces same-size cliques (t >= 2)
    whose members are pairwise twins outside the class."""
    hit = _find_blow_up(G)
    return None if hit is None else (hit[0], hit[1])


def _recolour(G: ColouredGraph, mapping: dict[int, int]) -> ColouredGraph:
    return make_graph(G.n, list(G.edges()),
                      [mapping[col] for col in G.colours])


def _apply_split(X: ColouredGraph, group: tuple[int, ...]) -> Detection:
    vmask = 0
    for i in group:
        vmask |= X.class_mask(i)
    part1 = induced(X, bits(vmask))
    part2 = induced(X, (v for v in range(X.n) if not vmask >> v & 1))
    step = ReductionStep("split_union", group)
    return Detection((step,), (part1, part2))


def _apply_blow_up(X: ColouredGraph, R: int, t: int,
                   comps: list[int]) -> Detection:
    drop = 0
    for comp in comps:
        drop |= comp & ~(comp & -comp)     # keep each clique's least vertex
    core = induced(X, (v for v in range(X.n) if not drop >> v & 1))
    # no colour vanished, so induced() kept the ids; replay must match
    replay = blow_up(core, R, t)
    assert are_isomorphic(replay, X), "blow-up inverse failed to replay"
    step = ReductionStep("undo_blow_up", (R,), t)
    return Detection((step,), (core,))


def _apply_matching(X: ColouredGraph, kept: int, dropped: int) -> Detection:
    keep_vs = [v for v in range(X.n) if X.colours[v] != dropped]
    core = induced(X, keep_vs)
    kept_core = kept if kept < dropped else kept - 1
    replay = matching_extension(core, kept_core, core.c)
    back = {x: (x if x < dropped else x + 1) for x in range(core.c)}
    back[core.c] = dropped
    assert are_isomorphic(_recolour(replay, back), X), \
        "matching inverse failed to replay"
    step = ReductionStep("undo_matching", (kept, dropped))
    return Detection((step,), (core,))


def detect_reduction(G: ColouredGraph) -> Detection | None:
    """First applicable reduction over all colour-complementation states.

    Operations are tried in the fixed priority union, blow-up, matching;
    within one operation, states are scanned in Gray-code order and the
    first hit wins.  Returns None when the graph is reduced.
    """
    if G.c > DETECTOR_COLOUR_CAP:
        raise GraphError(
            f"{G.c} colours exceed the detector cap {DETECTOR_COLOUR_CAP}")
    toggles = _toggle_list(G.c)
    for state, X in _complement_states(G):
        group = _find_split(X)
        if group is not None:
            det = _apply_split(X, group)
            return Detection(_prefix_steps(state, toggles) + det.steps,
                             det.parts)
    for state, X in _complement_states(G):
        hit = _find_blow_up(X)
        if hit is not None:
            det = _apply_blow_up(X, *hit)
            return Detection(_prefix_steps(state, toggles) + det.steps,
                             det.parts)
    for state, X in _complement_states(G):
        pair = _find_matching(X)
        if pair is not None:
            det = _apply_matching(X, *pair)
            return Detection(_prefix_steps(state, toggles) + det.steps,
                             det.parts)
    return None


def reduce(G: ColouredGraph) -> ReductionTrace:
    """Apply detect_reduction to a fixpoint, depth first through union
    parts; every structural step is replay-verified as it is taken."""
    steps: list[ReductionStep] = []
    cores: list[ColouredGraph] = []
    stack = [G]
    while stack:
        g = stack.pop(0)
        det = detect_reduction(g)
        if det is None:
            cores.append(g)
            continue
        steps.extend(det.steps)
        stack = list(det.parts) + stack
    return ReductionTrace(tuple(steps), tuple(cores))
