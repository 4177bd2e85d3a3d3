"""Plane curves against two boundary curves of nearly equal degree.

Shows the boundary numbers for d₁ = d₂ = 6, the m-bound as λ = d₁/d₂
varies, and finally runs the whole scenario directory through the CLI
batch runner exactly as ``logsurf batch scenarios`` would.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from logsurf.bounds import a_lambda, lemma_check, m_bound, nu_threshold, p2_corollary, plane_numbers
from logsurf.cli import Options, run_batch

n = plane_numbers(6, 6)
print(f"e = {n.e_open}, (K+D)² = {n.kd_sq}, difference = {n.difference}")
print(f"threshold on ν for g = 0: {nu_threshold(0)}")

for d1 in (5, 6):
    lam = Fraction(d1, 6)
    if lam <= Fraction(2, 3):
        continue
    print(f"λ = {lam}: m-bound {m_bound(lam)}, a(λ) ≈ {float(a_lambda(lam)):.4f}, lemma {lemma_check(lam).value}")

rep = p2_corollary(6, 6, 13206, 0, 5)
print("curve of degree 13206, m = 5:", {k: v.value for k, v in rep.verdicts.items()})
print("exit code:", rep.exit_code)

batch = run_batch(Path(__file__).resolve().parents[1] / "scenarios", Options(jobs=2))
print("\nbatch:", batch.result)
for child in batch.children:
    print(f"  {child.scenario:<24} {child.command:<11} {child.status}")
