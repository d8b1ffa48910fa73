"""
Counting roots modulo prime powers
==================================

Hensel lifting against brute force, including the one place where the
"at most deg f roots" rule breaks: powers of 2.
"""

from fractions import Fraction

from powres.numtheory import hensel_root_count
from powres.oracle import count_roots_brute
from powres.polys import build_poly
from powres.report import Case

f = build_poly(17, Case.QUAD_1_MOD_4, Fraction(1, 4))  # n^2 + 8n - 1
coeffs = list(f.coefficients)
for q, k in [(3, 1), (2, 2), (2, 3), (2, 6), (13, 2), (67, 2)]:
    print(f"q^k = {q}^{k}: hensel {hensel_root_count(coeffs, q, k)}, brute {count_roots_brute(coeffs, q**k)}")

# 17 = 1 (mod 8), so (n + 4)^2 = 17 has four solutions mod 8 and above.
# Odd primes never exceed the degree.
cubic = build_poly(7, Case.CUBIC, Fraction(1, 2))  # L = M = 1, both odd
print("\ncubic, p = 7:", cubic.coefficients)
print("roots mod 8:", count_roots_brute(list(cubic.coefficients), 8), "(odd n all work)")
print("roots mod 7^3:", hensel_root_count(list(cubic.coefficients), 7, 3))
