"""
Thresholds, regimes and the Chebyshev-type sum
==============================================

The counting results only apply above astronomically large p. At desk scale
we can still evaluate every threshold and compare it with what the harvest
actually finds.
"""

from fractions import Fraction

import numpy as np

from powres.audit import chebyshev_sum_grid, regime_flags, theorem_threshold
from powres.pipeline import random_primes, run
from powres.report import Case

# sum_{q <= x} log q / (q - 1) against c1(x) (2 + log x)
xs = np.unique(np.round(np.logspace(1, 6, 12)).astype(int))
for a in chebyshev_sum_grid(xs):
    print(f"x={a.x:>8}  lhs={float(a.lhs):8.4f}  rhs={float(a.rhs):8.4f}  gap={float(a.rhs - a.lhs):.4f}")

# Thresholds grow like a small power of p.
for case in (Case.QUAD_3_MOD_4, Case.CUBIC, Case.BIQUADRATIC):
    print(case.value, [f"{float(theorem_threshold(case, 10**d, Fraction(1, 5))):.3f}" for d in (6, 12, 24)])

print("\ncubic regime at ln p = 101:", regime_flags(Case.CUBIC, 73070599793680672726476826340615135890079017, 0.5))

# Empirical counts dwarf the thresholds even far outside the proven regime.
for p in random_primes(40, 3, seed=9, residue_class=(3, 1)):
    report, audit = run(p, Case.CUBIC, Fraction(1, 2))
    print(f"p={p} count={audit.empirical_count} threshold={float(audit.threshold):.2f} "
          f"closing bound={float(audit.lhs):.2f} regime={audit.guaranteed_regime}")
