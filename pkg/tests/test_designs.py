import random
from itertools import combinations
from math import comb

import pytest

from homreg import catalog
from homreg.designs import (DesignReport, IncidenceStructure,
                            clique_pair_design, design_check,
                            incidence_from_colour_classes, read_structure,
                            write_structure)
from homreg.graphs import GraphError, make_graph
from homreg.hadamard import extended_hadamard, sylvester


def fano():
    blocks = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5),
              (1, 4, 6), (2, 3, 6), (2, 4, 5)]
    return IncidenceStructure.of(7, blocks)


# -------------------------------------------------------------- structure

def test_structure_normalization():
    I = IncidenceStructure.of(4, [(2, 0), (3, 1)])
    assert I.blocks == ((0, 2), (1, 3))
    assert I.b == 2
    # duplicates are a multiset, kept and ordered
    J = IncidenceStructure.of(3, [(1, 0), (0, 1)])
    assert J.blocks == ((0, 1), (0, 1))


def test_structure_validation():
    with pytest.raises(GraphError):
        IncidenceStructure.of(0, [])
    with pytest.raises(GraphError):
        IncidenceStructure.of(3, [(0, 3)])
    with pytest.raises(GraphError):
        IncidenceStructure.of(3, [(1, 1)])


def test_structure_file_round_trip(tmp_path):
    I = fano()
    path = tmp_path / "fano.inc"
    write_structure(I, path)
    assert read_structure(path) == I


# ------------------------------------------------------------ design_check

def test_fano_is_symmetric_2_design():
    rep = design_check(fano(), 2)
    assert rep.is_design
    assert (rep.v, rep.b, rep.k, rep.lam) == (7, 7, 3, 1)
    assert rep.symmetric and rep.degenerate is False
    # and a 1-design with replication 3
    assert design_check(fano(), 1).lam == 3


def test_witt_designs():
    octads, hexads = catalog.witt_support()
    big = IncidenceStructure.of(24, octads)
    rep5 = design_check(big, 5)
    assert rep5.is_design and rep5.lam == 1 and rep5.k == 8
    assert rep5.b == 759 and not rep5.symmetric
    small = IncidenceStructure.of(22, hexads)
    assert design_check(small, 3).lam == 1
    assert design_check(small, 2).lam == 5
    assert design_check(small, 1).lam == 21
    assert design_check(small, 3).degenerate is False


def test_design_monotone_in_strength():
    # a t-design with k >= t' is a t'-design for every t' < t
    octads, hexads = catalog.witt_support()
    small = IncidenceStructure.of(22, hexads)
    for t in (0, 1, 2, 3):
        assert design_check(small, t).is_design
    big = IncidenceStructure.of(24, octads)
    for t in (0, 1, 2, 3, 4, 5):
        assert design_check(big, t).is_design


def test_non_design_reports():
    I = IncidenceStructure.of(4, [(0, 1), (0, 2)])
    rep = design_check(I, 2)
    assert rep.k == 2 and rep.lam is None and not rep.is_design
    mixed = IncidenceStructure.of(4, [(0, 1), (0, 1, 2)])
    rep = design_check(mixed, 1)
    assert rep.k is None and rep.degenerate is None and not rep.is_design


def test_design_check_degenerate_flags():
    # block size v-1: every 3-subset lies in exactly v-3 blocks
    v = 6
    blocks = [tuple(p for p in range(v) if p != skip) for skip in range(v)]
    I = IncidenceStructure.of(v, blocks)
    rep = design_check(I, 3)
    assert rep.is_design and rep.lam == v - 3
    assert rep.symmetric and rep.degenerate is True
    singles = IncidenceStructure.of(3, [(0,), (1,), (2,)])
    rep1 = design_check(singles, 1)
    assert rep1.is_design and rep1.lam == 1 and rep1.degenerate is True


def test_design_check_lambda_zero_convention():
    I = IncidenceStructure.of(5, [(0,), (1,)])
    rep = design_check(I, 2)   # no 2-subset covered at all
    assert rep.lam == 0 and rep.k == 1
    with pytest.raises(GraphError):
        design_check(I, 6)


def test_symmetric_three_designs_are_degenerate():
    # randomized search over small uniform symmetric structures: any that
    # passes at strength 3 must be degenerate
    rng = random.Random(77)
    found = 0
    for _ in range(300):
        v = rng.randint(4, 7)
        k = rng.randint(3, v - 1)
        blocks = [tuple(sorted(rng.sample(range(v), k))) for _ in range(v)]
        I = IncidenceStructure.of(v, blocks)
        rep = design_check(I, 3)
        if rep.is_design:
            found += 1
            assert rep.degenerate, (v, blocks)
    assert found > 0          # the seed does hit qualifying structures
    v = 6
    full = IncidenceStructure.of(v, [tuple(p for p in range(v) if p != s)
                                     for s in range(v)])
    assert design_check(full, 3).is_design and design_check(full, 3).degenerate


def test_fisher_inequality_on_suite():
    # every non-degenerate 2-design we ship satisfies b >= v
    octads, hexads = catalog.witt_support()
    for I in (fano(), IncidenceStructure.of(24, octads),
              IncidenceStructure.of(22, hexads)):
        rep = design_check(I, 2)
        if rep.is_design and rep.degenerate is False:
            assert rep.b >= rep.v


# ------------------------------------------------------- graph extraction

def test_incidence_from_colour_classes():
    eh = extended_hadamard(sylvester(1))
    I = incidence_from_colour_classes(eh, 0, 1)
    assert I.v == 4 and I.b == 4
    assert all(len(blk) == 2 for blk in I.blocks)
    rep = design_check(I, 1)
    assert rep.is_design and rep.lam == 2
    with pytest.raises(GraphError):
        incidence_from_colour_classes(eh, 0, 0)


def test_incidence_from_matching_is_degenerate():
    G = make_graph(4, [(0, 2), (1, 3)], [0, 0, 1, 1])
    I = incidence_from_colour_classes(G, 0, 1)
    assert I.blocks == ((0,), (1,))
    assert design_check(I, 1).degenerate is True


def test_clique_pair_design():
    # rows of the rank-2 extended graph vs one column pair
    eh = extended_hadamard(sylvester(1))
    CR = (0, 1)     # a row pair, maximal clique inside colour 0
    CB = (4, 5)     # a column pair inside colour 1
    I = clique_pair_design(eh, CR, CB)
    assert I.v == 2 and I.b == 2
    assert all(len(blk) == 1 for blk in I.blocks)
    with pytest.raises(GraphError):
        clique_pair_design(eh, (0, 1), (2, 3))      # same colour class
    with pytest.raises(GraphError):
        clique_pair_design(eh, (0, 2), (4, 5))      # not a clique
    with pytest.raises(GraphError):
        clique_pair_design(eh, (0,), (4, 5))        # not maximal
    with pytest.raises(GraphError):
        clique_pair_design(eh, (), (4, 5))


def test_clique_pair_design_larger_instance():
    eh = extended_hadamard(sylvester(2))
    CR = (0, 1)
    CB = (8, 9)
    I = clique_pair_design(eh, CR, CB)
    assert I.v == 2 and I.b == 2
    for blk in I.blocks:
        assert len(blk) == 1
