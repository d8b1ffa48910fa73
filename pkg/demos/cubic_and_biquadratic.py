"""
Cubic and biquadratic residues
==============================

For p = 1 (mod 3) write 4p = L^2 + 27M^2; for p = 1 (mod 4) write
p = L^2 + 4M^2. The cubic and quartic polynomials built from these pairs
only have prime divisors that are cubes (resp. signed fourth powers) mod p.
"""

from fractions import Fraction

from powres.numtheory import kth_power_residue
from powres.oracle import signed_prime
from powres.pipeline import run
from powres.polys import build_poly
from powres.report import Case
from powres.representations import represent_4p_27, represent_p_4

print("4*13 = L^2 + 27 M^2:", represent_4p_27(13))
print("13 = L^2 + 4 M^2:   ", represent_p_4(13))

cubic = build_poly(13, Case.CUBIC, Fraction(1, 2))
print("\ncubic f(1) =", cubic(1), "-> 40 = 2^3 * 5")
report, _ = run(13, Case.CUBIC, Fraction(1, 2))
print("harvested:", report.harvested, "excluded:", [(w.q, w.exclusion_reason.value) for w in report.excluded])

quartic = build_poly(13, Case.BIQUADRATIC, Fraction(1, 2))
print("\nbiquadratic f(1) =", quartic(1), "-> 172 = 2^2 * 43")
# The criterion certifies q* = (-1)^((q-1)/2) q, not q itself.
print("43 a fourth power mod 13?  ", kth_power_residue(43, 13, 4))
print("-43 a fourth power mod 13? ", kth_power_residue(signed_prime(43), 13, 4))

# When p = 1 (mod 8), -1 is a fourth power and the two readings agree.
# At p = 5 (mod 8) they split: q is certified exactly when q = 1 (mod 4).
p = 1099511627917
report, _ = run(p, Case.BIQUADRATIC, Fraction(1, 2))
flags = report.residue_flags.values()
print(f"\np = {p}: {report.harvested_count} harvested")
print("  q* flag holds:", sum(f["q_star"] for f in flags))
print("  q flag holds: ", sum(f["q"] for f in flags))
