"""Regenerate data/had12.hm, the order-12 Hadamard matrix in .hm format."""
from pathlib import Path

from homreg.formats import write_hm
from homreg.hadamard import had12, is_hadamard

H = had12()
assert is_hadamard(H.entries)
out = Path(__file__).resolve().parent.parent / "src" / "homreg" / "data" / "had12.hm"
write_hm(H.entries, out)
print(f"wrote {out}")
