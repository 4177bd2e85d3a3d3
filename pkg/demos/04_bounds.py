"""Canonical-degree bounds for three kinds of curves.

1. A line against two smooth sextics (general and smooth bounds).
2. A (-2)-curve disjoint from the boundary (the D-rational bound).
3. The R₊ root on a small (σ, γ) grid, printed as floats for reading.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from logsurf.bmy import curve_invariants
from logsurf.bounds import normalized_invariants, r_plus_interval, select_bound
from logsurf.scenario import load

root = Path(__file__).resolve().parents[1] / "scenarios"

inv = curve_invariants(*load(root / "p2_two_sextics_line.json").require_curve())
print("normalised:", normalized_invariants(inv).to_json())
rep = select_bound(inv, 64)
print(f"A ∈ [{float(rep.A.lo):.12f}, {float(rep.A.hi):.12f}]   (27 + 18√2)")
print(f"B ∈ [{float(rep.B.lo):.8f}, {float(rep.B.hi):.8f}]   (972 + 1350√2)")
print(f"(K+D)·C = {inv.kd_c} <= {float(rep.bound.hi):.4f}")
for name, verdict in rep.verdicts.items():
    print(f"  {name}: {verdict.value}")

inv = curve_invariants(*load(root / "d_rational_minus2.json").require_curve())
rep = select_bound(inv)
print("\n(-2)-curve:", dict(rep.values))

print("\nR₊(σ, γ) - 3γ:")
for sigma in (Fraction(1, 3), Fraction(1, 2), Fraction(9, 10)):
    cells = []
    for gamma in (Fraction(0), Fraction(1), Fraction(5)):
        R = r_plus_interval(sigma, gamma, 64)
        cells.append(f"{float(R.lo - 3 * gamma):10.4f}")
    print(f"  σ = {str(sigma):>5}:", *cells)
