import random
from itertools import combinations

import pytest

from homreg import catalog
from homreg.canon import automorphism_group
from homreg.graphs import GraphError, bits, complement, induced, make_graph, relabelled
from homreg.hadamard import extended_hadamard, sylvester
from homreg.regularity import (SrgParams, is_k_tuple_regular,
                               is_k_ultrahomogeneous, is_primitive,
                               colour_subconstituents, max_regularity,
                               recognize_clique_union,
                               recognize_rook_or_shrikhande, srg_parameters)

from oracles import naive_k_tuple_regular, random_coloured_graph, subset_type



def all_monochromatic(n):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = [p for i, p in enumerate(pairs) if mask >> i & 1]
        yield make_graph(n, edges, [0] * n)


def petersen():
    vs = list(combinations(range(5), 2))
    edges = [(i, j) for i in range(10) for j in range(i + 1, 10)
             if not set(vs[i]) & set(vs[j])]
    return make_graph(10, edges, [0] * 10)


# ------------------------------------------------------------ parameters

def test_srg_parameters_known_graphs():
    assert srg_parameters(catalog.cycle(5)).as_tuple() == (5, 2, 0, 1)
    assert srg_parameters(catalog.rook(3)).as_tuple() == (9, 4, 1, 2)
    assert srg_parameters(catalog.shrikhande()).as_tuple() == (16, 6, 2, 2)
    assert srg_parameters(catalog.clebsch()).as_tuple() == (16, 5, 0, 2)
    assert srg_parameters(petersen()).as_tuple() == (10, 3, 0, 1)
    # imprimitive but still strongly regular by convention
    assert srg_parameters(catalog.union_cliques(2, 3)).as_tuple() == (6, 2, 1, 0)


def test_srg_parameters_degenerate_conventions():
    e = srg_parameters(make_graph(4, [], [0] * 4))
    assert e.as_tuple() == (4, 0, None, 0) and e.edgeless and not e.complete
    k = srg_parameters(catalog.complete(4))
    assert k.as_tuple() == (4, 3, 2, None) and k.complete and not k.edgeless
    one = srg_parameters(make_graph(1, [], [0]))
    assert one.edgeless and one.complete


def test_srg_parameters_rejects_non_srg():
    assert srg_parameters(make_graph(3, [(0, 1)], [0] * 3)) is None     # degrees
    assert srg_parameters(catalog.cycle(6)) is None                     # mu varies
    path4 = make_graph(4, [(0, 1), (1, 2), (2, 3)], [0] * 4)
    assert srg_parameters(path4) is None


def test_srg_parameters_needs_monochromatic():
    with pytest.raises(GraphError):
        srg_parameters(make_graph(2, [], [0, 1]))


def test_srg_params_rendering():
    assert str(SrgParams(9, 4, 1, 2)) == "(9,4,1,2)"
    assert str(SrgParams(4, 0, None, 0)) == "(4,0,-,0)"
    assert str(SrgParams(4, 3, 2, None)) == "(4,3,2,-)"


def test_is_primitive():
    assert is_primitive(catalog.cycle(5))
    assert is_primitive(petersen())
    assert not is_primitive(catalog.union_cliques(2, 3))   # disconnected
    assert not is_primitive(catalog.complete(5))            # complement is
    with pytest.raises(GraphError):
        is_primitive(make_graph(2, [], [0, 1]))


# ------------------------------------------------------------ TR scans

def test_tr_matches_oracle_exhaustive_small():
    # every monochromatic graph on up to 5 vertices, all levels to 4
    for n in range(1, 6):
        for G in all_monochromatic(n):
            expected = naive_k_tuple_regular(G, 4)
            assert is_k_tuple_regular(G, 4).holds == expected


def test_tr_matches_oracle_exhaustive_bichromatic():
    pairs4 = list(combinations(range(4), 2))
    for mask in range(1 << len(pairs4)):        # all graphs on 4 vertices
        edges = [p for i, p in enumerate(pairs4) if mask >> i & 1]
        for colours in ([0, 0, 0, 1], [0, 0, 1, 1], [0, 1, 1, 1]):
            G = make_graph(4, edges, colours)
            for k in (1, 2, 3, 4):
                assert (is_k_tuple_regular(G, k).holds
                        == naive_k_tuple_regular(G, k))


def test_tr_matches_oracle_random():
    rng = random.Random(97)
    for _ in range(1000):
        n = rng.randint(2, 8)
        G = random_coloured_graph(rng, n, rng.randint(1, min(3, n)),
                                  p=rng.choice((0.3, 0.5, 0.7)))
        k = rng.randint(1, 4)
        assert is_k_tuple_regular(G, k).holds == naive_k_tuple_regular(G, k)


def test_tr_witness_is_genuine():
    rng = random.Random(98)
    seen = 0
    while seen < 60:
        n = rng.randint(3, 8)
        G = random_coloured_graph(rng, n, rng.randint(1, min(3, n)))
        verdict = is_k_tuple_regular(G, 4)
        if verdict.holds:
            continue
        seen += 1
        w = verdict.witness
        assert 1 <= w.level <= 4
        assert subset_type(G, w.subset) == subset_type(G, w.other)
        vec1, vec2 = w.lambdas
        assert vec1 != vec2
        assert not verdict
        assert is_k_tuple_regular(G, w.level).holds is False
        if w.level > 1:
            assert is_k_tuple_regular(G, w.level - 1).holds


def test_two_tr_iff_srg_monochromatic():
    for n in range(2, 6):
        for G in all_monochromatic(n):
            assert (is_k_tuple_regular(G, 2).holds
                    == (srg_parameters(G) is not None))
    rng = random.Random(99)
    for _ in range(200):
        G = random_coloured_graph(rng, rng.randint(2, 9), 1)
        assert (is_k_tuple_regular(G, 2).holds
                == (srg_parameters(G) is not None))


def test_tr_level_monotone():
    rng = random.Random(100)
    for _ in range(80):
        n = rng.randint(2, 7)
        G = random_coloured_graph(rng, n, rng.randint(1, 2))
        levels = [is_k_tuple_regular(G, k).holds for k in (1, 2, 3, 4)]
        assert levels == sorted(levels, reverse=True)


def test_tr_argument_validation():
    with pytest.raises(ValueError):
        is_k_tuple_regular(catalog.cycle(5), 0)


# ------------------------------------------------------------ UH scans

def test_uh_implies_tr_randomized():
    rng = random.Random(101)
    for _ in range(150):
        n = rng.randint(2, 10)
        G = random_coloured_graph(rng, n, rng.randint(1, min(3, n)))
        for k in (1, 2, 3):
            if is_k_ultrahomogeneous(G, k).holds:
                assert is_k_tuple_regular(G, k).holds


def test_uh_known_values():
    assert is_k_ultrahomogeneous(catalog.cycle(5), 4).holds
    assert is_k_ultrahomogeneous(catalog.cycle(5), 5, force=True).holds
    assert max_regularity(catalog.complete(4), "UH", 4) == 4
    assert not is_k_ultrahomogeneous(catalog.cycle(6), 2).holds


def test_uh_witness_mapping_extends_to_no_automorphism():
    G = catalog.rook(4)
    verdict = is_k_ultrahomogeneous(G, 4)
    assert not verdict.holds
    w = verdict.witness
    assert w.level == 4 and w.lambdas is None
    src = [a for a, _ in w.mapping]
    dst = [b for _, b in w.mapping]
    # positionwise map really is a coloured-subgraph isomorphism
    for (a, b), (a2, b2) in combinations(w.mapping, 2):
        assert G.has_edge(a, a2) == G.has_edge(b, b2)
    # and no automorphism extends it
    for g in automorphism_group(G).elements():
        assert [g[v] for v in src] != dst


def test_uh_budget_gate():
    with pytest.raises(ValueError, match="force=True"):
        is_k_ultrahomogeneous(catalog.cycle(5), 5)
    big = make_graph(49, [], [0] * 49)
    with pytest.raises(ValueError, match="n <= 48"):
        is_k_ultrahomogeneous(big, 1)
    assert is_k_ultrahomogeneous(big, 1, force=True).holds
    with pytest.raises(ValueError):
        is_k_ultrahomogeneous(catalog.cycle(5), 0)


# ------------------------------------------------------------ max levels

def test_max_regularity_consistency():
    rng = random.Random(102)
    for _ in range(40):
        n = rng.randint(2, 7)
        G = random_coloured_graph(rng, n, rng.randint(1, 2))
        top = max_regularity(G, "TR", 4)
        for k in (1, 2, 3, 4):
            assert is_k_tuple_regular(G, k).holds == (k <= top)


def test_max_regularity_examples():
    assert max_regularity(catalog.cycle(5), "TR", 5) == 5
    path3 = make_graph(3, [(0, 1), (1, 2)], [0] * 3)
    assert max_regularity(path3, "TR", 3) == 0
    eh = extended_hadamard(sylvester(1))
    assert max_regularity(eh, "TR", 4) == 4


def test_max_regularity_validation():
    with pytest.raises(ValueError, match="TR or UH"):
        max_regularity(catalog.cycle(5), "weak", 2)
    with pytest.raises(ValueError):
        max_regularity(catalog.cycle(5), "TR", 0)
    with pytest.raises(ValueError, match="force=True"):
        max_regularity(catalog.cycle(5), "UH", 5)


# ------------------------------------------------------ subconstituents

def test_colour_subconstituents_shapes():
    eh = extended_hadamard(sylvester(2))        # rows 0..7, columns 8..15
    b = eh.colour_class(1)[0]
    first, second = colour_subconstituents(eh, 0, b)
    assert first is not None and second is not None
    assert first.n + second.n == len(eh.colour_class(0))
    inside = set(bits(eh.adj[b] & eh.class_mask(0)))
    assert first.n == len(inside)


def test_colour_subconstituents_inherit_regularity():
    # 3-tuple regular bichromatic graph: both derived graphs are 2-TR
    eh = extended_hadamard(sylvester(2))
    assert is_k_tuple_regular(eh, 3).holds
    for b in eh.colour_class(1)[:3]:
        for part in colour_subconstituents(eh, 0, b):
            if part is not None:
                assert is_k_tuple_regular(part, 2).holds


def test_colour_subconstituents_empty_part():
    G = make_graph(3, [(0, 2)], [0, 0, 1])
    first, second = colour_subconstituents(G, 0, 2)
    assert first is not None and first.n == 1
    assert second is not None and second.n == 1
    H = make_graph(3, [(0, 2), (1, 2)], [0, 0, 1])
    first, second = colour_subconstituents(H, 0, 2)
    assert first.n == 2 and second is None


def test_colour_subconstituents_validation():
    G = make_graph(3, [(0, 2)], [0, 0, 1])
    with pytest.raises(GraphError):
        colour_subconstituents(G, 2, 0)
    with pytest.raises(GraphError):
        colour_subconstituents(G, 0, 0)     # b inside class R
    with pytest.raises(GraphError):
        colour_subconstituents(G, 0, 9)


# ------------------------------------------------------------ recognizers

def test_recognize_clique_union():
    assert recognize_clique_union(catalog.complete(3)) == (1, 3)
    assert recognize_clique_union(catalog.union_cliques(2, 3)) == (2, 3)
    assert recognize_clique_union(make_graph(4, [], [0] * 4)) == (4, 1)
    assert recognize_clique_union(catalog.cycle(5)) is None
    mixed = make_graph(5, [(0, 1), (0, 2), (1, 2), (3, 4)], [0] * 5)
    assert recognize_clique_union(mixed) is None        # K3 + K2
    with pytest.raises(GraphError):
        recognize_clique_union(make_graph(2, [], [0, 1]))


def test_recognize_rook_or_shrikhande():
    assert recognize_rook_or_shrikhande(catalog.rook(3)) == ("rook", 3)
    assert recognize_rook_or_shrikhande(catalog.rook(4)) == ("rook", 4)
    assert recognize_rook_or_shrikhande(catalog.rook(5)) == ("rook", 5)
    assert recognize_rook_or_shrikhande(catalog.shrikhande()) == ("shrikhande", 4)
    assert recognize_rook_or_shrikhande(catalog.cycle(4)) == ("rook", 2)
    assert recognize_rook_or_shrikhande(catalog.clebsch()) is None
    assert recognize_rook_or_shrikhande(petersen()) is None
    assert recognize_rook_or_shrikhande(catalog.cycle(5)) is None


def test_recognizers_ignore_labelling():
    rng = random.Random(103)
    for G, want in ((catalog.rook(4), ("rook", 4)),
                    (catalog.shrikhande(), ("shrikhande", 4))):
        perm = list(range(G.n))
        rng.shuffle(perm)
        assert recognize_rook_or_shrikhande(relabelled(G, perm)) == want


def test_rook_induced_srg_subgraphs_are_cliques_or_rooks():
    # closure property behind the classification: strongly regular induced
    # subgraphs of small rook's graphs are clique unions or rook-type
    for m in (3, 4):
        G = catalog.rook(m)
        n = G.n
        for mask in range(1, 1 << n):
            H = induced(G, bits(mask))
            if srg_parameters(H) is None:
                continue
            assert (recognize_clique_union(H) is not None
                    or recognize_rook_or_shrikhande(H) is not None), bin(mask)
