"""Partition-parameter calculus for strongly regular graphs.

If a strongly regular graph splits into two strongly regular induced
subgraphs, the parameters of one part determine the other part's
parameters by exact rational formulas.  This module derives those
values, prunes candidate parameter tables (a bundled feasibility
snapshot plus enumerated imprimitive families) by integrality, and
offers a brute-force bipartition search for small graphs.

All arithmetic is exact; 3-decimal strings exist only in the report
renderer.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from . import kernels
from .graphs import ColouredGraph, GraphError, IntegrityError, bits
from .regularity import SrgParams

__all__ = [
    "CandidateRow", "ParameterTable", "PartitionDerivation", "PruneReport",
    "srg_identity_check", "derive_partition", "load_brouwer_snapshot",
    "enumerate_imprimitive_candidates", "prune_partitions",
    "format_appendix", "format_rational", "brute_force_partition",
]

BRUTE_FORCE_CAP = 30


def srg_identity_check(p: SrgParams) -> bool:
    """The counting identity d(d-lam-1) = (n-d-1)mu."""
    if p.lam is None or p.mu is None:
        raise GraphError(
            "identity needs lam and mu defined; degenerate parameter sets "
            "(complete or edgeless) satisfy it by convention")
    return p.d * (p.d - p.lam - 1) == (p.n - p.d - 1) * p.mu


# ------------------------------------------------------------ derivation

@dataclass(frozen=True)
class PartitionDerivation:
    """Derived part-2 parameters for a proposed part-1 parameter set.

    Values are exact fractions; a value is None when its formula was
    skipped, either because an earlier value already failed integrality
    or because the degenerate clause (part 2 empty or complete) makes it
    arbitrary.  `rejection` names the first non-natural value in the
    order d2, lam2, mu2, or is None when all derived values are natural.
    """
    whole: SrgParams
    part1: SrgParams
    n2: int
    d2: Fraction
    lam2: Fraction | None
    mu2: Fraction | None
    lam2_arbitrary: bool
    mu2_arbitrary: bool
    rejection: str | None

    @property
    def feasible(self) -> bool:
        return self.rejection is None


def _natural(x: Fraction) -> bool:
    return x.denominator == 1 and x >= 0


def derive_partition(whole: SrgParams, part1: SrgParams
                     ) -> PartitionDerivation:
    """Compute (n2, d2, lam2, mu2) from the whole-graph parameters and a
    candidate part-1 parameter set, stopping at the first non-natural
    value."""
    if whole.lam is None or whole.mu is None:
        raise GraphError("whole-graph parameters must be primitive")
    n, d, lam = whole.n, whole.d, whole.lam
    n1, d1 = part1.n, part1.d
    if not 1 <= n1 < n:
        raise GraphError(f"part size {n1} out of range 1..{n - 1}")
    n2 = n - n1
    d2 = d - Fraction((d - d1) * n1, n2)
    lam2: Fraction | None = None
    mu2: Fraction | None = None
    lam2_arbitrary = False
    mu2_arbitrary = False
    rejection: str | None = None
    if not _natural(d2):
        rejection = "d2"
    else:
        if d2 == 0:
            lam2_arbitrary = True
        else:
            lam1 = part1.lam
            if lam1 is None:
                if d1 != 0:
                    raise GraphError("lam undefined for a part with edges")
                lam1 = 0
            lam2 = (lam - Fraction(lam * (d - d2), d2)
                    + Fraction((lam - lam1) * d1 * n1, d2 * n2))
            if not _natural(lam2):
                rejection = "lam2"
        if rejection is None:
            if d2 == n2 - 1:
                mu2_arbitrary = True
            else:
                # with part 2 empty the numerator vanishes for any lam2
                mu2 = Fraction(d2 * (d2 - (lam2 or 0) - 1), n2 - d2 - 1)
                if not _natural(mu2):
                    rejection = "mu2"
    return PartitionDerivation(whole, part1, n2, d2, lam2, mu2,
                               lam2_arbitrary, mu2_arbitrary, rejection)


# ------------------------------------------------------------ candidates

@dataclass(frozen=True)
class CandidateRow:
    label: str          # "" for snapshot rows, else e.g. "K3", "~K3", "2K4"
    params: SrgParams
    provenance: str     # "brouwer-snapshot" | "imprimitive-enumerated"


@dataclass(frozen=True)
class ParameterTable:
    rows: tuple[CandidateRow, ...]

    def __len__(self) -> int:
        return len(self.rows)

    def __add__(self, other: "ParameterTable") -> "ParameterTable":
        return ParameterTable(self.rows + other.rows)


@lru_cache(maxsize=4)
def load_brouwer_snapshot(path: str | None = None) -> ParameterTable:
    """The feasible-parameter snapshot (primitive sets, n <= 137),
    revalidated against the counting identity on load.  Reads the bundled
    CSV unless an alternate path is given."""
    try:
        if path is None:
            text = (resources.files("homreg") / "data"
                    / "brouwer_srg_snapshot.csv").read_text(encoding="ascii")
        else:
            with open(path, encoding="ascii") as fh:
                text = fh.read()
    except OSError as exc:
        raise IntegrityError(f"snapshot unreadable: {exc}") from exc
    rows = []
    body = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    for rec in csv.DictReader(io.StringIO("\n".join(body))):
        p = SrgParams(int(rec["n"]), int(rec["d"]), int(rec["lambda"]),
                      int(rec["mu"]))
        if not srg_identity_check(p) or not 1 <= p.mu <= p.d - 1:
            raise IntegrityError(f"infeasible snapshot row {p}")
        rows.append(CandidateRow("", p, "brouwer-snapshot"))
    if not rows:
        raise IntegrityError("snapshot is empty")
    return ParameterTable(tuple(rows))


def _whole_filter(whole: SrgParams | None):
    if whole is None:
        return lambda p: True

    def keep(p: SrgParams) -> bool:
        if p.n > whole.n // 2 or p.d > whole.d:
            return False
        if (whole.lam is not None and p.lam is not None
                and p.lam > whole.lam):
            return False
        if (whole.mu is not None and p.mu is not None
                and p.mu > whole.mu):
            return False
        return True

    return keep


def enumerate_imprimitive_candidates(n_max: int, s_max: int, t_max: int,
                                     whole: SrgParams | None = None
                                     ) -> ParameterTable:
    """Parameter rows of the imprimitive families inside a graph with
    clique number t_max and independence number s_max, in report order:
    cliques K_t, edgeless ~K_s, unions sK_t (s, t >= 2), and complete
    multipartite ~sK_t (s cliques of size t, complemented).  With
    `whole` given, rows failing the partition prefilter are dropped.
    """
    if min(n_max, s_max, t_max) < 1:
        raise GraphError("bounds must be >= 1")
    keep = _whole_filter(whole)
    rows: list[CandidateRow] = []

    def add(label: str, n: int, d: int, lam: int | None, mu: int | None):
        p = SrgParams(n, d, lam, mu)
        if keep(p):
            rows.append(CandidateRow(label, p, "imprimitive-enumerated"))

    for t in range(1, min(t_max, n_max) + 1):
        add(f"K{t}", t, t - 1, t - 2 if t >= 2 else None, None)
    for s in range(2, min(s_max, n_max) + 1):
        add(f"~K{s}", s, 0, None, 0)
    for t in range(2, t_max + 1):
        for s in range(2, s_max + 1):
            if s * t <= n_max:
                add(f"{s}K{t}", s * t, t - 1, t - 2, 0)
    # complement of sK_t: clique number s, independence number t
    for s in range(2, t_max + 1):
        for t in range(2, s_max + 1):
            if s * t <= n_max:
                add(f"~{s}K{t}", s * t, (s - 1) * t, (s - 2) * t, (s - 1) * t)
    return ParameterTable(tuple(rows))


# ------------------------------------------------------------ pruning

@dataclass(frozen=True)
class PruneReport:
    whole: SrgParams
    rows: tuple[tuple[CandidateRow, PartitionDerivation], ...]
    feasible: tuple[CandidateRow, ...]

    @property
    def total(self) -> int:
        return len(self.rows)

    @property
    def pruned(self) -> int:
        return self.total - len(self.feasible)


def prune_partitions(whole: SrgParams,
                     candidates: ParameterTable) -> PruneReport:
    """Derive part-2 parameters for every candidate part-1 row surviving
    the prefilter n1 <= floor(n/2), d1 <= d, lam1 <= lam, mu1 <= mu."""
    if whole.lam is None or whole.mu is None:
        raise GraphError("whole-graph parameters must be primitive")
    keep = _whole_filter(whole)
    rows = []
    feasible = []
    for cand in candidates.rows:
        if not keep(cand.params):
            continue
        deriv = derive_partition(whole, cand.params)
        rows.append((cand, deriv))
        if deriv.feasible:
            feasible.append(cand)
    return PruneReport(whole, tuple(rows), tuple(feasible))


def format_rational(x: Fraction | int | None, undefined: str = "-") -> str:
    """Canonical table rendering: integers plain, non-integers with
    exactly 3 decimals, round half up; None as the undefined marker."""
    if x is None:
        return undefined
    frac = Fraction(x)
    if frac.denominator == 1:
        return str(frac.numerator)
    sign = "-" if frac < 0 else ""
    scaled = abs(frac) * 1000
    milli = scaled.numerator // scaled.denominator
    if 2 * (scaled.numerator % scaled.denominator) >= scaled.denominator:
        milli += 1
    return f"{sign}{milli // 1000}.{milli % 1000:03d}"


_REASONS = {"d2": "d2 not natural", "lam2": "lam2 not natural",
            "mu2": "mu2 not natural", None: "feasible"}


def format_appendix(report: PruneReport) -> str:
    """Fixed-width candidate table in the layout of the hand calculation:
    part-1 parameters, derived part-2 values (blank once rejected, '-'
    for undefined or arbitrary), and the rejection reason."""
    header = (f"{'':8} {'n1':>4} {'d1':>4} {'lam1':>6} {'mu1':>6} "
              f"{'n2':>4} {'d2':>8} {'lam2':>8} {'mu2':>8}  reason")
    lines = [header, "-" * len(header)]
    for cand, deriv in report.rows:
        p1 = cand.params

        def part2(v: Fraction | None, arbitrary: bool) -> str:
            if arbitrary:
                return "-"
            return "" if v is None else format_rational(v)

        lines.append(
            f"{cand.label:8} {p1.n:>4} {p1.d:>4} "
            f"{format_rational(p1.lam):>6} {format_rational(p1.mu):>6} "
            f"{deriv.n2:>4} {format_rational(deriv.d2):>8} "
            f"{part2(deriv.lam2, deriv.lam2_arbitrary):>8} "
            f"{part2(deriv.mu2, deriv.mu2_arbitrary):>8}  "
            f"{_REASONS[deriv.rejection]}")
    lines.append(f"{report.pruned} of {report.total} "
                 "parameter combinations were pruned")
    return "\n".join(lines)


# ------------------------------------------------------------ brute force

def brute_force_partition(G: ColouredGraph
                          ) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Exhaustive search for a bipartition of a monochromatic graph into
    two strongly regular induced subgraphs (degenerate conventions
    included).  Vertex 0 is pinned to side 1; part sizes are tried most
    balanced first.  Returns (V1, V2) or None.
    """
    if not G.is_monochromatic():
        raise GraphError("bipartition search needs a monochromatic graph")
    n = G.n
    if n > BRUTE_FORCE_CAP:
        raise GraphError(
            f"n = {n} exceeds the exhaustive-search cap {BRUTE_FORCE_CAP}; "
            "use prune_partitions on the parameter table instead")
    if n < 2:
        return None
    for n1 in sorted(range(1, n), key=lambda k: (abs(2 * k - n), k)):
        mask = kernels.bipartition_search(G, n1)
        if mask:
            side1 = tuple(bits(mask))
            side2 = tuple(v for v in range(n) if not mask >> v & 1)
            return side1, side2
    return None
