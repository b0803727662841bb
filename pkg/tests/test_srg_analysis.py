"""Parameter-table pruning: derivations, candidate tables, formatting,
and the exhaustive bipartition search."""
from fractions import Fraction
from itertools import combinations

import pytest

from homreg import catalog
from homreg.graphs import GraphError, IntegrityError, build_exact, induced
from homreg.regularity import SrgParams, srg_parameters
from homreg.srg_analysis import (
    CandidateRow,
    ParameterTable,
    PruneReport,
    brute_force_partition,
    derive_partition,
    enumerate_imprimitive_candidates,
    format_appendix,
    format_rational,
    load_brouwer_snapshot,
    prune_partitions,
    srg_identity_check,
)

SCHLAFLI = SrgParams(27, 16, 10, 8)
MCLAUGHLIN = SrgParams(275, 112, 30, 56)


# ------------------------------------------------------------ identity

def test_identity_check_known_values():
    assert srg_identity_check(SrgParams(16, 5, 0, 2)) is True
    assert srg_identity_check(SCHLAFLI) is True
    assert srg_identity_check(MCLAUGHLIN) is True
    assert srg_identity_check(SrgParams(5, 2, 1, 1)) is False


def test_identity_check_rejects_degenerate():
    with pytest.raises(GraphError, match="lam and mu"):
        srg_identity_check(SrgParams(4, 3, 2, None))
    with pytest.raises(GraphError):
        srg_identity_check(SrgParams(4, 0, None, 0))


# ------------------------------------------------------------ derivation

def test_derive_rejects_first_nonnatural_value():
    d = derive_partition(SCHLAFLI, SrgParams(5, 2, 0, 1))
    assert (d.n2, d.d2, d.rejection) == (22, Fraction(141, 11), "d2")
    assert d.lam2 is None and d.mu2 is None
    assert not d.feasible

    d = derive_partition(SCHLAFLI, SrgParams(9, 4, 1, 2))
    assert (d.n2, d.d2, d.lam2, d.rejection) == (18, 10, Fraction(29, 5),
                                                 "lam2")
    assert d.mu2 is None

    d = derive_partition(SCHLAFLI, SrgParams(3, 0, None, 0))
    assert (d.n2, d.d2, d.lam2, d.rejection) == (24, 14, Fraction(60, 7),
                                                 "lam2")

    d = derive_partition(SrgParams(5, 2, 0, 1), SrgParams(1, 0, None, None))
    assert (d.n2, d.d2, d.rejection) == (4, Fraction(3, 2), "d2")


def test_derive_rejects_nonnatural_mu2():
    # d2 and lam2 pass, mu2 = 3/2
    d = derive_partition(SrgParams(9, 4, 1, 2), SrgParams(3, 2, 0, None))
    assert (d.n2, d.d2, d.lam2, d.mu2) == (6, 3, 1, Fraction(3, 2))
    assert d.rejection == "mu2" and not d.feasible
    # negative mu2 is rejected as well
    d = derive_partition(SrgParams(9, 4, 1, 2), SrgParams(5, 4, 1, None))
    assert d.mu2 == -8 and d.rejection == "mu2"


def _triangle_identity(d):
    """Edge/triangle count relating lam2 to lam1, true for any actual
    partition and hence for every feasible derivation with lam2 set."""
    whole, p1 = d.whole, d.part1
    lam1 = 0 if p1.lam is None else p1.lam
    lhs = (whole.d - d.d2) * d.n2 * whole.lam
    rhs = (d.n2 * d.d2 * (whole.lam - d.lam2)
           + p1.n * p1.d * (whole.lam - lam1))
    return lhs == rhs


def test_derive_feasible_splits():
    # Petersen as two pentagons
    d = derive_partition(SrgParams(10, 3, 0, 1), SrgParams(5, 2, 0, 1))
    assert d.feasible
    assert (d.n2, d.d2, d.lam2, d.mu2) == (5, 2, 0, 1)
    assert _triangle_identity(d)

    # triangular graph T(5) as a 4-clique against its complement part
    d = derive_partition(SrgParams(10, 6, 3, 4), SrgParams(4, 3, 2, None))
    assert d.feasible
    assert (d.n2, d.d2, d.lam2, d.mu2) == (6, 4, 2, 4)
    assert _triangle_identity(d)

    # the classic 100-vertex split into two 50-vertex Moore graphs
    d = derive_partition(SrgParams(100, 22, 0, 6), SrgParams(50, 7, 0, 1))
    assert d.feasible
    assert (d.n2, d.d2, d.lam2, d.mu2) == (50, 7, 0, 1)
    assert _triangle_identity(d)


def test_derive_degenerate_part2_clauses():
    # part 2 complete: mu2 arbitrary
    d = derive_partition(SrgParams(4, 3, 2, 1), SrgParams(2, 1, 0, None))
    assert (d.n2, d.d2, d.lam2) == (2, 1, 0)
    assert d.mu2 is None and d.mu2_arbitrary
    assert d.feasible

    # part 2 edgeless: lam2 arbitrary, mu2 vacuously 0
    d = derive_partition(SrgParams(10, 3, 0, 1), SrgParams(5, 0, None, 0))
    assert (d.n2, d.d2, d.mu2) == (5, 0, 0)
    assert d.lam2 is None and d.lam2_arbitrary
    assert not d.mu2_arbitrary
    assert d.feasible

    # naturality has no upper bound: lam2 = 705 passes, then part 2 is
    # complete so mu2 drops out
    d = derive_partition(MCLAUGHLIN, SrgParams(270, 110, 29, None))
    assert (d.n2, d.d2, d.lam2) == (5, 4, 705)
    assert d.mu2 is None and d.mu2_arbitrary
    assert d.feasible


def test_derive_validation():
    with pytest.raises(GraphError, match="primitive"):
        derive_partition(SrgParams(4, 3, 2, None), SrgParams(2, 1, 0, None))
    with pytest.raises(GraphError, match="out of range"):
        derive_partition(SrgParams(10, 3, 0, 1), SrgParams(10, 3, 0, 1))
    with pytest.raises(GraphError, match="out of range"):
        derive_partition(SrgParams(10, 3, 0, 1), SrgParams(0, 0, None, None))
    # lam1 may only be omitted for an edgeless part
    with pytest.raises(GraphError, match="lam undefined"):
        derive_partition(SrgParams(10, 6, 3, 4), SrgParams(4, 3, None, None))


# ------------------------------------------------------------ formatting

def test_format_rational_three_decimals_round_half_up():
    assert format_rational(Fraction(141, 11)) == "12.818"
    assert format_rational(Fraction(29, 5)) == "5.800"
    assert format_rational(Fraction(60, 7)) == "8.571"
    assert format_rational(Fraction(368, 25)) == "14.720"
    assert format_rational(Fraction(57, 4)) == "14.250"
    assert format_rational(Fraction(1, 2)) == "0.500"
    assert format_rational(Fraction(-3, 2)) == "-1.500"
    # integers render without a decimal point
    assert format_rational(10) == "10"
    assert format_rational(Fraction(8, 2)) == "4"
    assert format_rational(0) == "0"
    assert format_rational(None) == "-"
    assert format_rational(None, undefined="?") == "?"


# ------------------------------------------------------------ enumeration

def test_enumerate_family_shapes():
    table = enumerate_imprimitive_candidates(13, 3, 6)
    assert len(table) == 24
    by_label = {r.label: r.params.as_tuple() for r in table.rows}
    assert len(by_label) == 24
    assert all(r.provenance == "imprimitive-enumerated" for r in table.rows)
    assert by_label["K1"] == (1, 0, None, None)
    assert by_label["K4"] == (4, 3, 2, None)
    assert by_label["~K3"] == (3, 0, None, 0)
    assert by_label["2K4"] == (8, 3, 2, 0)
    assert by_label["~3K2"] == (6, 4, 2, 4)
    assert by_label["~2K3"] == (6, 3, 0, 3)
    # report order: cliques, cocliques, clique unions, their complements
    labels = [r.label for r in table.rows]
    assert labels[:8] == ["K1", "K2", "K3", "K4", "K5", "K6", "~K2", "~K3"]
    assert labels.index("2K2") < labels.index("~2K2")


def test_enumerate_whole_prefilter():
    filtered = enumerate_imprimitive_candidates(13, 3, 6, whole=SCHLAFLI)
    assert len(filtered) == 22
    raw = enumerate_imprimitive_candidates(13, 3, 6)
    dropped = ({r.label for r in raw.rows}
               - {r.label for r in filtered.rows})
    assert dropped == {"~4K3", "~6K2"}
    # both drop on mu1 > mu alone
    by_label = {r.label: r.params for r in raw.rows}
    for label in dropped:
        p = by_label[label]
        assert p.n <= SCHLAFLI.n // 2 and p.d <= SCHLAFLI.d
        assert p.lam <= SCHLAFLI.lam
        assert p.mu > SCHLAFLI.mu


def test_enumerate_edge_bounds():
    only_k1 = enumerate_imprimitive_candidates(5, 1, 1)
    assert [r.label for r in only_k1.rows] == ["K1"]
    with pytest.raises(GraphError, match=">= 1"):
        enumerate_imprimitive_candidates(0, 3, 3)


# ------------------------------------------------------------ snapshot

def test_snapshot_bundled_table():
    snap = load_brouwer_snapshot()
    assert len(snap) == 250
    assert all(r.provenance == "brouwer-snapshot" for r in snap.rows)
    assert all(r.label == "" for r in snap.rows)
    assert all(srg_identity_check(r.params) for r in snap.rows)
    assert max(r.params.n for r in snap.rows) <= 137
    small = [r.params.as_tuple() for r in snap.rows if r.params.n <= 13]
    assert small == [(5, 2, 0, 1), (9, 4, 1, 2), (10, 3, 0, 1),
                     (10, 6, 3, 4), (13, 6, 2, 3)]


def test_snapshot_path_override(tmp_path):
    alt = tmp_path / "mini.csv"
    alt.write_text("# comment line\nn,d,lambda,mu\n5,2,0,1\n\n10,3,0,1\n")
    snap = load_brouwer_snapshot(str(alt))
    assert [r.params.as_tuple() for r in snap.rows] == [(5, 2, 0, 1),
                                                        (10, 3, 0, 1)]

    bad = tmp_path / "bad.csv"
    bad.write_text("n,d,lambda,mu\n5,2,1,1\n")
    with pytest.raises(IntegrityError, match="infeasible snapshot row"):
        load_brouwer_snapshot(str(bad))

    empty = tmp_path / "empty.csv"
    empty.write_text("n,d,lambda,mu\n")
    with pytest.raises(IntegrityError, match="snapshot is empty"):
        load_brouwer_snapshot(str(empty))

    with pytest.raises(IntegrityError, match="snapshot unreadable"):
        load_brouwer_snapshot(str(tmp_path / "missing.csv"))


# ------------------------------------------------------------ pruning

# hand-checked rejection table for the 27-vertex whole graph:
# label, part-1 params, n2, d2, lam2, mu2 (as rendered), first rejection
HAND_TABLE = [
    ("",     (5, 2, 0, 1),        22, "12.818", "",      "", "d2"),
    ("",     (9, 4, 1, 2),        18, "10",     "5.800", "", "lam2"),
    ("",     (10, 3, 0, 1),       17, "8.353",  "",      "", "d2"),
    ("",     (10, 6, 3, 4),       17, "10.118", "",      "", "d2"),
    ("",     (13, 6, 2, 3),       14, "6.714",  "",      "", "d2"),
    ("K1",   (1, 0, None, None),  26, "15.385", "",      "", "d2"),
    ("K2",   (2, 1, 0, None),     25, "14.800", "",      "", "d2"),
    ("K3",   (3, 2, 1, None),     24, "14.250", "",      "", "d2"),
    ("K4",   (4, 3, 2, None),     23, "13.739", "",      "", "d2"),
    ("K5",   (5, 4, 3, None),     22, "13.273", "",      "", "d2"),
    ("K6",   (6, 5, 4, None),     21, "12.857", "",      "", "d2"),
    ("~K2",  (2, 0, None, 0),     25, "14.720", "",      "", "d2"),
    ("~K3",  (3, 0, None, 0),     24, "14",     "8.571", "", "lam2"),
    ("2K2",  (4, 1, 0, 0),        23, "13.391", "",      "", "d2"),
    ("3K2",  (6, 1, 0, 0),        21, "11.714", "",      "", "d2"),
    ("2K3",  (6, 2, 1, 0),        21, "12",     "7.095", "", "lam2"),
    ("3K3",  (9, 2, 1, 0),        18, "9",      "3.222", "", "lam2"),
    ("2K4",  (8, 3, 2, 0),        19, "10.526", "",      "", "d2"),
    ("3K4",  (12, 3, 2, 0),       15, "5.600",  "",      "", "d2"),
    ("2K5",  (10, 4, 3, 0),       17, "8.941",  "",      "", "d2"),
    ("2K6",  (12, 5, 4, 0),       15, "7.200",  "",      "", "d2"),
    ("~2K2", (4, 2, 0, 2),        23, "13.565", "",      "", "d2"),
    ("~2K3", (6, 3, 0, 3),        21, "12.286", "",      "", "d2"),
    ("~3K2", (6, 4, 2, 4),        21, "12.571", "",      "", "d2"),
    ("~3K3", (9, 6, 3, 6),        18, "11",     "7.364", "", "lam2"),
    ("~4K2", (8, 6, 4, 6),        19, "11.789", "",      "", "d2"),
    ("~5K2", (10, 8, 6, 8),       17, "11.294", "",      "", "d2"),
]


def _schlafli_report():
    cands = load_brouwer_snapshot() + enumerate_imprimitive_candidates(13, 3,
                                                                       6)
    return prune_partitions(SCHLAFLI, cands)


def test_prune_27_vertex_whole_matches_hand_table():
    report = _schlafli_report()
    assert report.total == 27
    assert report.pruned == 27
    assert report.feasible == ()
    assert len(report.rows) == len(HAND_TABLE)
    for (cand, deriv), exp in zip(report.rows, HAND_TABLE):
        label, p1, n2, d2s, l2s, m2s, rejection = exp
        assert cand.label == label
        assert cand.params.as_tuple() == p1
        assert deriv.n2 == n2
        assert format_rational(deriv.d2) == d2s
        got_l2 = "" if deriv.lam2 is None else format_rational(deriv.lam2)
        assert got_l2 == l2s
        got_m2 = "" if deriv.mu2 is None else format_rational(deriv.mu2)
        assert got_m2 == m2s
        assert deriv.rejection == rejection
        assert not deriv.lam2_arbitrary and not deriv.mu2_arbitrary


def test_appendix_layout_for_hand_table():
    table = format_appendix(_schlafli_report())
    lines = table.splitlines()
    # header, separator, 27 rows, footer
    assert len(lines) == 30
    assert lines[0].split() == ["n1", "d1", "lam1", "mu1", "n2", "d2",
                                "lam2", "mu2", "reason"]
    assert lines[1] == "-" * len(lines[0])
    assert lines[-1] == "27 of 27 parameter combinations were pruned"
    for line, exp in zip(lines[2:-1], HAND_TABLE):
        label, p1, n2, d2s, _, _, rejection = exp
        assert line.startswith(f"{label:8}")
        fields = line.split()
        if label:
            assert fields[0] == label
        assert d2s in fields
        assert line.endswith(f"{rejection} not natural")
    assert "12.818" in table and "5.800" in table and "8.571" in table


def test_appendix_renders_arbitrary_and_feasible_rows():
    # hand-build a report mixing the degenerate clauses
    rows = []
    for whole, part, label in [
            (SrgParams(10, 3, 0, 1), SrgParams(5, 0, None, 0), "~K5"),
            (MCLAUGHLIN, SrgParams(270, 110, 29, None), ""),
            (SrgParams(9, 4, 1, 2), SrgParams(3, 2, 0, None), "K3")]:
        cand = CandidateRow(label, part, "imprimitive-enumerated")
        rows.append((cand, derive_partition(whole, part)))
    feasible = tuple(c for c, d in rows if d.feasible)
    report = PruneReport(SrgParams(10, 3, 0, 1), tuple(rows), feasible)
    assert (report.total, report.pruned) == (3, 1)

    lines = format_appendix(report).splitlines()
    assert lines[-1] == "1 of 3 parameter combinations were pruned"
    row1, row2, row3 = lines[2:5]
    # edgeless part 2: lam2 arbitrary "-", mu2 plain 0
    assert row1.split() == ["~K5", "5", "0", "-", "0", "5", "0", "-", "0",
                            "feasible"]
    # complete part 2: lam2 = 705 kept, mu2 arbitrary "-"
    assert row2.split() == ["270", "110", "29", "-", "5", "4", "705", "-",
                            "feasible"]
    # rejected at mu2: offending value shown, reason named
    assert row3.split() == ["K3", "3", "2", "0", "-", "6", "3", "1", "1.500",
                            "mu2", "not", "natural"]


def test_prune_large_whole_all_rejected():
    cands = (load_brouwer_snapshot()
             + enumerate_imprimitive_candidates(137, 22, 5))
    report = prune_partitions(MCLAUGHLIN, cands)
    assert report.total == 355
    assert report.pruned == 355
    assert report.feasible == ()
    snap_rows = sum(1 for c, _ in report.rows
                    if c.provenance == "brouwer-snapshot")
    assert (snap_rows, report.total - snap_rows) == (180, 175)


def test_prune_validation():
    cands = enumerate_imprimitive_candidates(4, 2, 2)
    with pytest.raises(GraphError, match="primitive"):
        prune_partitions(SrgParams(6, 5, 4, None), cands)


# ------------------------------------------------------------ brute force

def test_bipartition_search_small_graphs():
    res = brute_force_partition(catalog.complete(4))
    assert res == ((0, 1), (2, 3))

    assert brute_force_partition(catalog.cycle(5)) is None

    res = brute_force_partition(build_exact(5, [], colours=[0] * 5))
    assert res is not None
    v1, v2 = res
    # most-balanced split first, vertex 0 pinned to side 1
    assert len(v1) == 2 and 0 in v1
    assert sorted(v1 + v2) == list(range(5))


def test_bipartition_search_finds_pentagon_pair():
    pairs = list(combinations(range(5), 2))
    edges = [(i, j) for i, j in combinations(range(10), 2)
             if not set(pairs[i]) & set(pairs[j])]
    petersen = build_exact(10, edges, colours=[0] * 10)
    assert srg_parameters(petersen).as_tuple() == (10, 3, 0, 1)

    res = brute_force_partition(petersen)
    assert res is not None
    v1, v2 = res
    assert len(v1) == 5 and 0 in v1
    sides = []
    for side in (v1, v2):
        p = srg_parameters(induced(petersen, list(side)))
        assert p.as_tuple() == (5, 2, 0, 1)
        sides.append(p)
    # cross-edge count agrees from either side
    d = srg_parameters(petersen).d
    assert (d - sides[0].d) * len(v1) == (d - sides[1].d) * len(v2)


def test_bipartition_search_validation():
    with pytest.raises(GraphError, match="prune_partitions"):
        brute_force_partition(build_exact(31, [], colours=[0] * 31))
    with pytest.raises(GraphError, match="monochromatic"):
        brute_force_partition(build_exact(2, [], colours=[0, 1]))
    assert brute_force_partition(build_exact(1, [], colours=[0])) is None
