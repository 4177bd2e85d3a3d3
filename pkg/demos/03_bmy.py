"""The Chern-number inequality for a nodal cubic against a smooth quartic.

K+D is the hyperplane class, so κ ≥ 0 is certified by an effective
representative.  The main quadratic in α is −6α² + 24α + 20; the script
walks the inequality chain at a few values of α and shows why the
discriminant form is reported as hypothesis-unmet here.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from logsurf.bmy import (
    chain_validators,
    chern_data,
    curve_invariants,
    discriminant_inequality,
    main_quadratic,
    main_quadratic_coefficients,
    reduction_data,
)
from logsurf.resolution import build_resolved_lattice
from logsurf.scenario import load

scn = load(Path(__file__).resolve().parents[1] / "scenarios" / "quartic_nodal_cubic.json")
model, datum, C = scn.require_curve()
res = build_resolved_lattice(model, datum, C)
inv = curve_invariants(model, datum, C, res)
print(scn.description)
print("quadratic coefficients (α², α, 1):", [str(c) for c in main_quadratic_coefficients(inv)])

for alpha in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1)):
    chern = chern_data(model, datum, C, alpha, res)
    red = reduction_data(res, chern, representative=scn.kd_representative)
    chain = chain_validators(inv, res, chern, red)
    print(f"α = {alpha}:  c2 = {chern.c2_norm}, c1² = {chern.c1sq_norm}, "
          f"principal = {chain.principal} <= quadratic = {main_quadratic(inv, alpha)}: {chain.holds}")
    for row in chain.rows:
        print(f"    {row.name:<24} {row.index or '':>2}  {row.lhs} {row.relation} {row.rhs}")

disc = discriminant_inequality(inv)
print("discriminant value:", disc.value, disc.verdict.value)
for name, status in disc.hypotheses.items():
    print(f"  {name}: {status.value}")
