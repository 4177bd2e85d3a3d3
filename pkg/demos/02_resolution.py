"""From a plane curve singularity to the resolved lattice.

The tacnode y² = x⁴ needs two blow-ups: a double point, then a second
double point infinitely near to it.  The script builds the lattice on
the blown-up surface, reads off the discrepancies and checks adjunction.
"""

from __future__ import annotations

from logsurf import Divisor, SurfaceModel, build_resolved_lattice, check_adjunction, make_datum
from logsurf.resolution import e_prime_dot_c

plane = SurfaceModel(classes=("H",), intersection=((1,),), canonical=Divisor({"H": -3}), euler_top=3)
quartic = Divisor({"H": 4})
tacnode = make_datum(
    [{"stage": "S1", "m": 2}, {"stage": "LATE1", "m": 2, "proximity": [1]}],
    genus=1,
)
res = build_resolved_lattice(plane, tacnode, quartic)

print("classes:", res.model.classes)
print("strict transform:", res.c_tilde, " self-intersection", res.pair(res.c_tilde, res.c_tilde))
print("discrepancies x:", res.discrepancies.x)
for i in (1, 2):
    print(f"  total transform Ebar{i} in strict curves:", res.ebar_in_strict(i))

adj = check_adjunction(plane, tacnode, quartic, res)
print(f"adjunction: {adj.lhs} = {adj.rhs}  (holds: {adj.holds})")
print("E'·C~ on the lattice and by formula:", e_prime_dot_c(res))

# A wrong genus is caught rather than silently accepted.
bad = check_adjunction(plane, make_datum(tacnode.to_json()["centers"], 0), quartic)
print("same curve declared rational: difference", bad.difference)
