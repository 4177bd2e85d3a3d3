"""Zariski decompositions on small lattices.

Run with ``python3 demos/01_zariski.py``.  Every number printed is exact.
"""

from __future__ import annotations

from fractions import Fraction

from logsurf import Cycle, Divisor, SurfaceModel, zariski_absolute, zariski_oracle, zariski_support
from logsurf.zariski import negative_square

# A nef class A and a (-1)-curve E1 orthogonal to it.
blown_up = SurfaceModel(classes=("A", "E1"), intersection=((1, 0), (0, -1)))
D = Divisor({"A": 1, "E1": 2})
res = zariski_support(D, Cycle(("E1",)), blown_up)
print("D = A + 2E1")
print("  P =", res.positive, "  N =", res.negative, "  N² =", negative_square(res, blown_up))
print("  certificate holds:", res.certificate.holds)

# A chain of two (-2)-curves (an A2 configuration) against a curve L meeting
# the first of them once.  The negative part is fractional.
chain = SurfaceModel(
    classes=("L", "E1", "E2"),
    intersection=((1, 1, 0), (1, -2, 1), (0, 1, -2)),
)
E = Cycle(("E1", "E2"))
for d in (Divisor({"L": 1}), Divisor({"L": 1, "E2": 3}), Divisor({"E1": 1, "E2": 1})):
    res = zariski_support(d, E, chain)
    same = zariski_oracle(d, E, chain).negative == res.negative
    print(f"D = {d}:  P = {res.positive},  N = {res.negative}  (oracle agrees: {same})")

# Without a prescribed cycle the search ranges over every curve with P·C < 0.
res = zariski_absolute(Divisor({"L": 1, "E1": 2, "E2": Fraction(5, 2)}), chain)
print("absolute:", "P =", res.positive, " N =", res.negative, " support =", list(res.support))
