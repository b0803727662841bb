"""Regenerate data/mclaughlin.cg from the bundled Golay generator matrix.

Construction: take the Steiner system S(4,7,23) (weight-8 Golay words
through a fixed coordinate, with that coordinate dropped), split its
blocks by a second fixed point oo into 77 hexads (blocks through oo,
oo removed) and 176 heptads (blocks avoiding oo).  Vertices are the 22
remaining points, the hexads and the heptads; edges:

  point  ~ hexad   iff the point avoids the hexad
  point  ~ heptad  iff the point lies in the heptad
  hexad  ~ hexad   iff disjoint
  hexad  ~ heptad  iff they share 3 points
  heptad ~ heptad  iff they share 1 point

The result is validated as SRG(275,112,30,56), which identifies the
McLaughlin graph up to isomorphism, then written as a .cg file.
"""
from pathlib import Path

import numpy as np

from homreg.formats import write_cg
from homreg.graphs import make_graph
from homreg.regularity import srg_parameters

root = Path(__file__).resolve().parent.parent / "src" / "homreg" / "data"
gen = np.array([[int(ch) for ch in line] for line in
                root.joinpath("golay_gen.txt").read_text().splitlines()
                if line and not line.startswith("#")], dtype=np.uint8)
msgs = ((np.arange(4096)[:, None] >> np.arange(12)) & 1).astype(np.uint8)
words = msgs @ gen % 2
octads = [frozenset(np.flatnonzero(w)) for w in words if w.sum() == 8]
assert len(octads) == 759

s4723 = [b - {23} for b in octads if 23 in b]
assert len(s4723) == 253
hexads = sorted(tuple(sorted(b - {22})) for b in s4723 if 22 in b)
heptads = sorted(tuple(sorted(b)) for b in s4723 if 22 not in b)
assert len(hexads) == 77 and len(heptads) == 176

verts = [("p", i) for i in range(22)]
verts += [("h", frozenset(h)) for h in hexads]
verts += [("s", frozenset(s)) for s in heptads]


def adjacent(a, b):
    (ta, xa), (tb, xb) = sorted((a, b))
    if ta == tb == "p":
        return False
    if (ta, tb) == ("h", "p"):
        return xb not in xa
    if (ta, tb) == ("p", "s"):
        return xa in xb
    if ta == tb == "h":
        return not (xa & xb)
    if (ta, tb) == ("h", "s"):
        return len(xa & xb) == 3
    return len(xa & xb) == 1


edges = [(i, j) for i in range(275) for j in range(i + 1, 275)
         if adjacent(verts[i], verts[j])]
G = make_graph(275, edges, [0] * 275)
params = srg_parameters(G)
assert params is not None and params.as_tuple() == (275, 112, 30, 56), params
write_cg(G, root / "mclaughlin.cg")
print(f"wrote {root/'mclaughlin.cg'}: SRG{params} with {G.num_edges()} edges")
