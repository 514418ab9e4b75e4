"""
A fifth root of a single Jordan block
=====================================

The pair (J_3(-1), Q_3) has an H-selfadjoint fifth root with eigenvalue
-1 (the real fifth root of -1).  The construction solves the triangular
phi-system for a generating vector y, builds the Jordan chain of
J_3(mu)^5 - (-1) I from it, and changes basis.  The result is exactly
upper triangular with known entries.
"""

import numpy as np

import hsroots as hs
from hsroots import descriptor as dsc

np.set_printoptions(precision=6, suppress=True)

d = hs.Descriptor([hs.RealBlock(-1.0, 3, +1)])
ref = dsc.realize(d)

rep = hs.decide(d, 5)
print("fifth root exists:", rep.exists)
print("chosen root eigenvalue:", rep.certificate.root_eigenvalues[0][1])

root = hs.assemble_root(d, 5, rep)
print("\nA =")
print(root.A.real)
print("\nexpected [[-1, 1/5, 2/25], [0, -1, 1/5], [0, 0, -1]]")

# the generating vector behind it: phi_1 = 1, phi_2 = phi_3 = 0
mu = -1.0
y = hs.solve_phi(-1.0, 3, mu, 5)
print("\ngenerating vector y =", y)
print("phi values:", hs.phi_values(-1.0, 3, mu, 5, y))

report, ok = hs.verify_root(root.A, ref.B, ref.H, 5, tol=1e-12)
print("\nverify at 1e-12: %s (power %.2e, selfadjoint %.2e)"
      % ("pass" if ok else "FAIL", report.r_pow, report.r_sa))
