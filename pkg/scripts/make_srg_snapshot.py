"""Regenerate data/brouwer_srg_snapshot.csv.

The snapshot lists primitive strongly-regular parameter sets with
n <= 137, both orientations (a set and its complement each get a row),
that pass the classical feasibility conditions: the counting identity
d(d-lambda-1) = (n-d-1)mu, integral eigenvalue multiplicities (or the
conference case), the Krein conditions and the absolute bound.  Deeper
nonexistence results are deliberately not encoded; the file stands in
for a point-in-time copy of a published parameter table.
"""
import math
from fractions import Fraction
from pathlib import Path


def multiplicities_ok(n, d, lam, mu):
    disc = (lam - mu) ** 2 + 4 * (d - mu)
    if disc <= 0:
        return False
    num = 2 * d + (n - 1) * (lam - mu)
    root = math.isqrt(disc)
    if root * root != disc:
        return num == 0 and (n - 1) % 2 == 0
    if root == 0 or num % root:
        return False
    f2, g2 = (n - 1) - num // root, (n - 1) + num // root
    return f2 >= 0 and g2 >= 0 and f2 % 2 == 0 and g2 % 2 == 0


def krein_ok(n, d, lam, mu):
    disc = (lam - mu) ** 2 + 4 * (d - mu)
    root = math.isqrt(disc)
    if root * root != disc:
        return True
    r = Fraction(lam - mu + root, 2)
    s = Fraction(lam - mu - root, 2)
    k = Fraction(d)
    return ((r + 1) * (k + r + 2 * r * s) <= (k + r) * (s + 1) ** 2
            and (s + 1) * (k + s + 2 * r * s) <= (k + s) * (r + 1) ** 2)


def absolute_bound_ok(n, d, lam, mu):
    disc = (lam - mu) ** 2 + 4 * (d - mu)
    root = math.isqrt(disc)
    if root * root != disc:
        return True
    num = 2 * d + (n - 1) * (lam - mu)
    f = ((n - 1) - num // root) // 2
    g = ((n - 1) + num // root) // 2
    return n <= f * (f + 3) // 2 and n <= g * (g + 3) // 2


rows = []
for n in range(5, 138):
    for d in range(1, n - 1):
        for lam in range(0, d):
            den = n - d - 1
            if den <= 0 or d * (d - lam - 1) % den:
                continue
            mu = d * (d - lam - 1) // den
            if not 1 <= mu <= d - 1:       # primitive only
                continue
            if (multiplicities_ok(n, d, lam, mu) and krein_ok(n, d, lam, mu)
                    and absolute_bound_ok(n, d, lam, mu)):
                rows.append((n, d, lam, mu))

out = Path(__file__).resolve().parent.parent / "src" / "homreg" / "data" / "brouwer_srg_snapshot.csv"
lines = ["# primitive SRG parameter sets, n <= 137, classical feasibility",
         "n,d,lambda,mu"]
lines += [f"{n},{d},{lam},{mu}" for n, d, lam, mu in rows]
out.write_text("\n".join(lines) + "\n")
print(f"wrote {out}: {len(rows)} rows")
