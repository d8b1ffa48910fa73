"""
Harvesting quadratic residues from a polynomial
================================================

Every odd prime dividing (n + r)^2 - p is a square modulo p. This script
builds that polynomial for a few primes, factors its values, and checks the
harvest against a direct residue test.
"""

from fractions import Fraction

from powres.numtheory import jacobi_symbol
from powres.pipeline import run
from powres.polys import build_poly
from powres.report import Case

# Start small: p = 17, r = 4, f(n) = n^2 + 8n - 1.
f = build_poly(17, Case.QUAD_1_MOD_4, Fraction(1, 4), x_override=3)
print("f coefficients (ascending):", f.coefficients)
print("f(1), f(2), f(3) =", [f(n) for n in (1, 2, 3)])

report, audit = run(17, Case.QUAD_1_MOD_4, Fraction(1, 4), x_override=3)
print("harvested:", report.harvested, "verified:", report.oracle_verified)

# 2 counts because f(1) = 8: only p = 1 (mod 8) makes 8 | (n + r)^2 - p.
for w in report.witnesses:
    print(f"  q={w.q:<3} n={w.n} valuation={w.valuation} reason={w.exclusion_reason}")

# A realistic size: a 36-bit prime at eps = 1/5, no override.
p = 68719476767
assert p % 4 == 3
report, audit = run(p, Case.QUAD_3_MOD_4, Fraction(1, 5))
print(f"\np = {p}: form a, b, c = {report.parameters}")
print(f"x = {report.x_limit}, window ({report.window_low}, {report.window_high}]")
print(f"harvested {report.harvested_count} primes; threshold {report.threshold:.3f}")
print("all squares mod p:", all(jacobi_symbol(q, p) == 1 for q in report.harvested))
print("smallest few:", report.harvested[:8])
