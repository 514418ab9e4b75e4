"""
Canonical pairs and their recovery
==================================

A pair (B, H) with H Hermitian invertible and HB = B*H can be brought to
a canonical form: B becomes a direct sum of Jordan blocks and H a direct
sum of +-1 signed sip (backward identity) matrices.  This script builds
such a pair from a block descriptor, hides it behind a random similarity,
and recovers the descriptor numerically.
"""

import numpy as np

import hsroots as hs
from hsroots import descriptor as dsc

np.set_printoptions(precision=4, suppress=True, linewidth=120)

# a descriptor is just a list of blocks: (eigenvalue, size, sign) for real
# eigenvalues, (eigenvalue, size) for a conjugate pair
d = hs.Descriptor([
    hs.RealBlock(2.0, 3, +1),
    hs.RealBlock(2.0, 2, -1),
    hs.RealBlock(0.0, 2, +1),
    hs.PairBlock(1.0 + 1.0j, 2),
])

ref = dsc.realize(d)
print("canonical B:")
print(ref.B.real)
print("canonical H (all entries real):")
print(ref.H.real)

# scramble: B -> S^-1 B S, H -> S* H S with a random S of condition 10
raw, S = dsc.scramble(d, seed=7, conditioning=10.0)
print("\nscrambled B has no visible structure:")
print(np.round(raw.B, 2))

# canonicalize recovers the block structure and the transformation
res = hs.canonicalize(raw)
print("\nrecovered blocks:")
for b in res.descriptor.blocks:
    if isinstance(b, hs.PairBlock):
        print("  conjugate pair  eigenvalue %s  size %d" % (b.eigenvalue, b.size))
    else:
        print("  real block      eigenvalue %+.6f  size %d  sign %+d"
              % (b.eigenvalue.real, b.size, b.sign))
print("residuals: similarity %.2e, congruence %.2e" % (res.r_J, res.r_H))

# the recovered S actually transforms the raw pair to the canonical one
J = dsc.realize(res.descriptor).B
err = np.linalg.norm(np.linalg.solve(res.S, raw.B @ res.S) - J)
print("||S^-1 B S - J|| = %.2e" % err)
