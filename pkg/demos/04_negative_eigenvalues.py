"""
Negative eigenvalues and even root orders
=========================================

For even m, a real matrix root of a negative eigenvalue does not exist;
the root eigenvalue must be a nonreal number mu with mu^m < 0, and its
conjugate comes along with it.  In the canonical form this forces the
negative-eigenvalue blocks to appear in (+1, -1) twin pairs of equal
eigenvalue and size.  A lone block is refused; a balanced pair is
constructed through the conjugate-pair canonical block.
"""

import numpy as np

import hsroots as hs
from hsroots import descriptor as dsc

np.set_printoptions(precision=4, suppress=True)

# a single (J_2(-1), +Q_2): no H-selfadjoint square root exists
single = hs.Descriptor([hs.RealBlock(-1.0, 2, +1)])
rep = hs.decide(single, 2)
print("single block (J_2(-1), +Q_2), m = 2:")
print("  exists:", rep.exists)
print("  refusal: %s — %s" % (rep.refusal.property_id, rep.refusal.witness))

# the balanced pair (J_2(-1), +Q_2) + (J_2(-1), -Q_2) does have one
twins = hs.Descriptor([hs.RealBlock(-1.0, 2, +1),
                       hs.RealBlock(-1.0, 2, -1)])
rep2 = hs.decide(twins, 2)
print("\nbalanced twins, m = 2:")
print("  exists:", rep2.exists)
mu = rep2.certificate.root_eigenvalues[0][1]
print("  root eigenvalue pair: %s, %s" % (mu, np.conj(mu)))

root = hs.assemble_root(twins, 2, rep2)
ref = dsc.realize(twins)
report, ok = hs.verify_root(root.A, ref.B, ref.H, 2, tol=1e-8)
print("  verify: %s (power %.2e, selfadjoint %.2e)"
      % ("pass" if ok else "FAIL", report.r_pow, report.r_sa))
print("\nA (real part):")
print(root.A.real)
print("A (imaginary part):")
print(root.A.imag)

# odd m never has this obstruction: a real negative root eigenvalue works
rep3 = hs.decide(single, 3)
root3 = hs.assemble_root(single, 3, rep3)
print("\nsame single block, m = 3: exists = %s, root eigenvalue %s"
      % (rep3.exists, rep3.certificate.root_eigenvalues[0][1]))
print(root3.A.real)
