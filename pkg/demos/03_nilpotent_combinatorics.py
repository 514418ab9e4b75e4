"""
Existence at eigenvalue zero is pure combinatorics
==================================================

An m-th root maps each candidate root block J_t(0) to a fixed multiset
of smaller blocks (the division formula t = a*m + r), so existence at 0
reduces to two finite questions:

  1. can the Segre characteristic be regrouped into m-tuples, each
     non-increasing with spread <= 1 (zeros only pad size-1 entries)?
  2. can the +-1 signs be matched by choosing a sign eta per tuple?

This script walks both questions on two worked examples.
"""

import itertools

import hsroots as hs

# --- example 1: Segre (3,3,3,3,3,3,2,2,2,2,2,2), m = 6 --------------------
sizes = (3,) * 6 + (2,) * 6
print("Segre %s, m = 6" % (sizes,))
print("\nall regroupings into 6-tuples:")
for g in hs.enumerate_groupings(sizes, 6):
    print("  %s  -> root sizes %s" % (g, tuple(sum(t) for t in g)))

# each tuple carries a free sign eta; the positive-block counts that are
# reachable for (size 3, size 2) blocks:
feasible = set()
for g in hs.enumerate_groupings(sizes, 6):
    for etas in itertools.product((+1, -1), repeat=len(g)):
        rc = hs.required_positive_counts(g, etas)
        feasible.add((rc.get(3, 0), rc.get(2, 0)))
print("\nreachable (positive Q_3 count, positive Q_2 count):", sorted(feasible))
print("so e.g. 5 positive Q_3 blocks and 5 positive Q_2 blocks is impossible")

# --- example 2: a refusal with no enumeration at all ----------------------
print("\nSegre (5, 3, 2), m = 2:")
ref = hs.quick_refusal_corollary((5, 3, 2), 2)
print("refused outright: %s (%s)" % (ref.property_id, ref.witness))

# --- example 3: the sign table for root sizes t = (15, 12, 10), m = 4 -----
print("\nroot sizes (15, 12, 10) at eigenvalue 0, m = 4:")
print("block sizes after powering: 15 -> %s, 12 -> %s, 10 -> %s"
      % (hs.power_structure(15, 4), hs.power_structure(12, 4),
         hs.power_structure(10, 4)))
for etas in itertools.product((+1, -1), repeat=3):
    rc = hs.required_positive_counts(((4, 4, 4, 3), (3, 3, 3, 3), (3, 3, 2, 2)),
                                     etas)
    print("  eta = %6s  ->  positive counts per size %s"
          % (str(etas), dict(sorted(rc.items(), reverse=True))))
