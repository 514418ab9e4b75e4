"""Independent verification and brute-force oracles.

The residual checks here are the ground truth for every constructed root:
``r_pow`` measures ||A^m - B|| and ``r_sa`` measures ||HA - A*H||.  The
oracles re-decide existence questions by full enumeration, deliberately
sharing no code with the fast deciders, so that the two implementations
have independent failure modes.

The structural fact both oracles lean on: J_n(0)^m has Jordan form

    r blocks of size a+1  and  m-r blocks of size a,   n = a*m + r, 0 < r <= m,

and under H = eta*Q_n the canonical signs within each class of c
equal-length chains split as ceil(c/2) copies of eta and floor(c/2) of
-eta.
"""

from dataclasses import dataclass

import numpy as np


@dataclass
class ResidualReport:
    """Relative Frobenius residuals of a root candidate."""

    r_pow: float
    r_sa: float
    r_simJ: float = 0.0
    r_simH: float = 0.0


def verify_root(A, B, H, m, tol=1e-8):
    """Check that A is an H-selfadjoint m-th root of B.

    Returns (ResidualReport, passed) with
    r_pow = ||A^m - B|| / max(||B||, 1) and
    r_sa  = ||HA - A*H|| / (||H|| ||A||); passed iff both <= tol.
    """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    H = np.asarray(H, dtype=complex)
    if not (A.shape == B.shape == H.shape) or A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("A, B, H must be square matrices of equal size")
    Am = np.linalg.matrix_power(A, m)
    r_pow = np.linalg.norm(Am - B) / max(np.linalg.norm(B), 1.0)
    denom = max(np.linalg.norm(H) * np.linalg.norm(A), np.finfo(float).tiny)
    r_sa = np.linalg.norm(H @ A - A.conj().T @ H) / denom
    report = ResidualReport(float(r_pow), float(r_sa))
    return report, bool(r_pow <= tol and r_sa <= tol)


def power_structure(n, m):
    """Jordan sizes of (J_n(0))^m, as a non-increasing tuple.

    Computed both from the division formula (n = a*m + r, 0 < r <= m gives
    r blocks of size a+1 and m-r of size a, zero sizes dropped) and from a
    numeric rank staircase of the explicit power; the two must agree.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    a, r = divmod(n - 1, m)
    r += 1  # now n = a*m + r with 0 < r <= m
    formula = tuple(sorted([a + 1] * r + [a] * (m - r), reverse=True))
    formula = tuple(s for s in formula if s > 0)

    N = np.zeros((n, n))
    for i in range(n - m):
        N[i, i + m] = 1.0  # J_n(0)^m shifts by m
    ranks = [n]
    P = np.eye(n)
    while ranks[-1] > 0:
        P = P @ N
        ranks.append(int(np.linalg.matrix_rank(P)))
    # number of blocks of size >= s is ranks[s-1] - ranks[s]
    staircase = []
    for s in range(1, len(ranks)):
        staircase.extend([s] * ((ranks[s - 1] - ranks[s]) - (ranks[s] - ranks[s + 1] if s + 1 < len(ranks) else 0)))
    staircase = tuple(sorted(staircase, reverse=True))
    if staircase != formula:
        raise AssertionError(
            "power_structure mismatch for n=%d m=%d: formula %r vs staircase %r"
            % (n, m, formula, staircase))
    return formula


def _partitions(total, cap=None):
    # all partitions of `total` as non-increasing tuples
    if cap is None:
        cap = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, cap), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def _root_block_positive_count(t, eta, m):
    # per-size positive-sign counts contributed by the m-th power of
    # (J_t(0), eta*Q_t), by the ceil/floor sign split per length class
    a, r = divmod(t - 1, m)
    r += 1
    counts = {}
    for length, c in ((a + 1, r), (a, m - r)):
        if length == 0 or c == 0:
            continue
        pos = (c + 1) // 2 if eta == +1 else c // 2
        counts[length] = counts.get(length, 0) + pos
    return counts


def oracle_decide_nilpotent(sizes, positive_counts, m, max_order=14):
    """Brute-force existence decision for the nilpotent part.

    Enumerates every partition {t_k} of the total order, expands each
    root block via power_structure, keeps those whose expanded sizes match
    the Segre multiset, then tries every sign vector eta in {+-1}^p and
    counts positive blocks per size literally.  True iff any combination
    reproduces `positive_counts` (a map size -> number of +1 blocks).
    """
    sizes = tuple(sorted(sizes, reverse=True))
    total = sum(sizes)
    if total > max_order:
        raise ValueError("order %d exceeds exhaustive-regime guard %d" % (total, max_order))
    if total == 0:
        return all(v == 0 for v in positive_counts.values())
    want = {s: c for s, c in positive_counts.items() if c != 0}
    for t in _partitions(total):
        expanded = []
        for tk in t:
            expanded.extend(power_structure(tk, m))
        if tuple(sorted(expanded, reverse=True)) != sizes:
            continue
        p = len(t)
        for mask in range(1 << p):
            etas = [+1 if mask & (1 << k) else -1 for k in range(p)]
            got = {}
            for tk, eta in zip(t, etas):
                for size, c in _root_block_positive_count(tk, eta, m).items():
                    got[size] = got.get(size, 0) + c
            if {s: c for s, c in got.items() if c != 0} == want:
                return True
    return False


def oracle_negative_even(blocks, m):
    """Literal canonical-form check for negative eigenvalues, m even.

    `blocks` is an iterable of (eigenvalue, size, sign) with eigenvalue
    strictly negative real.  True iff for every (eigenvalue, size) the
    +1-signed and -1-signed block counts agree, i.e. the H-part splits
    into Q_k + (-Q_k) pairs.
    """
    if m % 2 != 0:
        raise ValueError("oracle_negative_even requires m even")
    tally = {}
    for lam, size, sign in blocks:
        lam = complex(lam)
        if not (lam.imag == 0 and lam.real < 0):
            raise ValueError("eigenvalues must be strictly negative real")
        key = (lam.real, size)
        tally[key] = tally.get(key, 0) + (1 if sign == +1 else -1)
    return all(v == 0 for v in tally.values())
