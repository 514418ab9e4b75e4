"""Existence decider for H-selfadjoint m-th roots, from a descriptor.

Positive-real and nonreal eigenvalues never obstruct existence, so the
decision reduces to two independent gates:

* eigenvalue 0: the Segre characteristic must reorder into m-tuples,
  each non-increasing with first-minus-last <= 1 (tuple sums t_k are the
  candidate root block sizes), and some sign vector eta must reproduce
  the actual number of positive blocks per size via

      pi_{nu,k} = |B_nu^(k)| / 2            (even count)
                  (|B_nu^(k)| + eta_k) / 2  (odd count),

  where |B_nu^(k)| counts entries equal to nu in tuple k;
* negative real eigenvalues with m even: blocks must pair up as
  (+1, -1)-signed twins of equal eigenvalue and size.

Refusals name the violated property: P1-reordering, P2-signs,
P3-negative-pairing.
"""

from dataclasses import dataclass

from . import descriptor as dsc


@dataclass(frozen=True)
class Refusal:
    property_id: str  # "P1-reordering" | "P2-signs" | "P3-negative-pairing"
    witness: str


@dataclass(frozen=True)
class Certificate:
    """Witness data for an existing root.

    zero_grouping: m-tuples covering the Segre characteristic at 0
    etas: chosen sign per tuple
    zero_root_sizes: tuple sums t_k (root Jordan block sizes at 0)
    negative_pairing: list of (i, j) descriptor block indices matched as
        (+1, -1) twins (m even only)
    root_eigenvalues: list of (block_index, mu) with mu the chosen m-th
        root eigenvalue for each non-nilpotent block
    """

    zero_grouping: tuple
    etas: tuple
    zero_root_sizes: tuple
    negative_pairing: tuple
    root_eigenvalues: tuple


@dataclass(frozen=True)
class DecisionReport:
    exists: bool
    m: int
    certificate: Certificate = None
    refusal: Refusal = None


def _tuple_of_shape(s, r, m):
    # the m-tuple with r entries equal to s and m-r entries equal to s-1
    return (s,) * r + (s - 1,) * (m - r)


def enumerate_groupings(sizes, m):
    """Yield every reordering of `sizes` into m-tuples, each once.

    Tuples are non-increasing with spread <= 1 (trailing zeros allowed
    only via entries s-1 = 0, i.e. tuples like (1,..,1,0,..,0)), and the
    positive entries across all tuples reproduce the input multiset.
    Enumeration is over multisets of tuple shapes: each grouping is
    emitted as its tuples sorted by decreasing sum, and the stream is
    ordered lexicographically in that sorted form (largest-leading
    groupings first).
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    sizes = tuple(sorted(sizes, reverse=True))
    if any(s <= 0 for s in sizes):
        raise ValueError("Segre sizes must be positive")

    counts = {}
    for s in sizes:
        counts[s] = counts.get(s, 0) + 1

    def take(cnt, s, k):
        if k == 0:
            return cnt
        have = cnt.get(s, 0)
        if have < k:
            return None
        out = dict(cnt)
        if have == k:
            del out[s]
        else:
            out[s] = have - k
        return out

    def rec(cnt, prev_s, prev_r):
        if not cnt:
            yield ()
            return
        s = max(cnt)  # the largest remaining size must lead the next tuple
        if s > prev_s:
            return
        r_hi = prev_r if s == prev_s else m
        for r in range(r_hi, 0, -1):
            c1 = take(cnt, s, r)
            if c1 is None:
                continue
            c2 = c1 if s == 1 else take(c1, s - 1, m - r)
            if c2 is None:
                continue
            head = _tuple_of_shape(s, r, m)
            for rest in rec(c2, s, r):
                yield (head,) + rest

    if not sizes:
        yield ()
        return
    yield from rec(counts, sizes[0], m)


def required_positive_counts(grouping, etas):
    """Number of positive blocks each size must have, for this (grouping, etas).

    Returns a map size -> count, summing pi_{nu,k} over tuples k.
    """
    if len(etas) != len(grouping):
        raise ValueError("need one eta per tuple")
    out = {}
    for tup, eta in zip(grouping, etas):
        per = {}
        for nu in tup:
            if nu > 0:
                per[nu] = per.get(nu, 0) + 1
        for nu, c in per.items():
            pi = c // 2 if c % 2 == 0 else (c + eta) // 2
            out[nu] = out.get(nu, 0) + pi
    return out


def _eta_vectors(p):
    # lexicographically largest first: (+1,..,+1), (+1,..,-1), ..., (-1,..,-1)
    for mask in range(1 << p):
        yield tuple(-1 if mask & (1 << (p - 1 - k)) else +1 for k in range(p))


def decide_zero(sizes, positive_counts, m):
    """First feasible (grouping, etas) for the nilpotent part, or a Refusal.

    `positive_counts` maps block size -> number of +1-signed blocks at
    eigenvalue 0.  Groupings are scanned in enumeration order and eta
    vectors with +1 preferred; P1 means no grouping exists at all, P2
    means groupings exist but no sign assignment matches.
    """
    sizes = tuple(sorted(sizes, reverse=True))
    want = {s: c for s, c in positive_counts.items() if c != 0}
    any_grouping = False
    for g in enumerate_groupings(sizes, m):
        any_grouping = True
        for etas in _eta_vectors(len(g)):
            got = required_positive_counts(g, etas)
            if {s: c for s, c in got.items() if c != 0} == want:
                return g, etas
    if not any_grouping:
        return Refusal("P1-reordering",
                       "Segre characteristic %r admits no reordering into "
                       "m-tuples with spread <= 1 for m=%d" % (list(sizes), m))
    return Refusal("P2-signs",
                   "reorderings of %r exist for m=%d but no sign assignment "
                   "produces positive counts %r" % (list(sizes), m, want))


def quick_refusal_corollary(sizes, m):
    """Fast refusal: block count not divisible by m and no size-1 block.

    Such a B has no m-th root at all (tuples could only pad with zeros
    through size-1 entries).  Returns a Refusal or None; decide_zero
    remains authoritative.
    """
    sizes = tuple(sizes)
    if sizes and len(sizes) % m != 0 and 1 not in sizes:
        return Refusal("P1-reordering",
                       "%d blocks at eigenvalue 0 with no size-1 block cannot "
                       "fill m-tuples for m=%d" % (len(sizes), m))
    return None


def decide_negative(blocks, m):
    """Pairing gate for strictly negative eigenvalues.

    `blocks` is a list of (index, eigenvalue, size, sign).  For m odd
    returns None (no constraint).  For m even returns a list of (i, j)
    index pairs matching each +1 block with a -1 twin of equal
    (eigenvalue, size), or a Refusal naming the unbalanced class.
    """
    if m % 2 == 1:
        return None
    groups = {}
    for idx, lam, size, sign in blocks:
        groups.setdefault((float(lam), size), {+1: [], -1: []})[sign].append(idx)
    pairing = []
    for (lam, size), g in sorted(groups.items()):
        if len(g[+1]) != len(g[-1]):
            surplus = len(g[+1]) - len(g[-1])
            return Refusal("P3-negative-pairing",
                           "eigenvalue %g size %d: %+d surplus of %s blocks "
                           "prevents Q/-Q pairing for even m=%d"
                           % (lam, size, abs(surplus),
                              "+1" if surplus > 0 else "-1", m))
        pairing.extend(zip(g[+1], g[-1]))
    return pairing


def _principal_root(lam, m):
    # principal m-th root: argument divided by m (in (-pi, pi])
    import cmath
    lam = complex(lam)
    rad = abs(lam) ** (1.0 / m)
    return rad * cmath.exp(1j * cmath.phase(lam) / m)


def root_eigenvalue_choice(lam, m, tol=dsc.DEFAULT_TOL):
    """Deterministic branch of the m-th root for a non-nilpotent eigenvalue.

    positive lam -> positive real root; negative lam with m odd -> real
    negative root; negative lam with m even and nonreal lam -> principal
    root (im > 0 for negative lam).
    """
    kind = dsc.classify(lam, tol)
    lam = complex(lam)
    if kind == "positive":
        return complex(lam.real ** (1.0 / m))
    if kind == "negative":
        if m % 2 == 1:
            return complex(-((-lam.real) ** (1.0 / m)))
        return _principal_root(lam.real, m)
    if kind == "nonreal":
        return _principal_root(lam, m)
    raise ValueError("eigenvalue 0 has no single root branch")


def decide(d, m, tol=dsc.DEFAULT_TOL):
    """Full existence decision for an H-selfadjoint m-th root of realize(d).

    Splits blocks by eigenvalue class; positive-real and nonreal blocks
    are always feasible, eigenvalue 0 goes through decide_zero and
    negative eigenvalues (m even) through decide_negative.  Returns a
    DecisionReport with either a certificate or the first refusal found.
    """
    bad = dsc.validate(d)
    if bad:
        raise ValueError("invalid descriptor: " + "; ".join(bad))
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        mus = []
        for i, b in enumerate(d.blocks):
            mus.append((i, complex(b.eigenvalue)))
        cert = Certificate((), (), (), (), tuple(mus))
        return DecisionReport(True, m, certificate=cert)

    zero_sizes = []
    zero_pos = {}
    negative = []
    root_mus = []
    for i, b in enumerate(d.blocks):
        if isinstance(b, dsc.PairBlock):
            root_mus.append((i, root_eigenvalue_choice(b.eigenvalue, m, tol)))
            continue
        kind = dsc.classify(b.eigenvalue, tol)
        if kind == "zero":
            zero_sizes.append(b.size)
            if b.sign == +1:
                zero_pos[b.size] = zero_pos.get(b.size, 0) + 1
        elif kind == "negative":
            negative.append((i, b.eigenvalue, b.size, b.sign))
            root_mus.append((i, root_eigenvalue_choice(b.eigenvalue, m, tol)))
        else:
            root_mus.append((i, root_eigenvalue_choice(b.eigenvalue, m, tol)))

    grouping, etas = (), ()
    if zero_sizes:
        zres = decide_zero(zero_sizes, zero_pos, m)
        if isinstance(zres, Refusal):
            return DecisionReport(False, m, refusal=zres)
        grouping, etas = zres

    pairing = decide_negative(negative, m) or []
    if isinstance(pairing, Refusal):
        return DecisionReport(False, m, refusal=pairing)

    cert = Certificate(tuple(grouping), tuple(etas),
                       tuple(sum(t) for t in grouping),
                       tuple(pairing), tuple(root_mus))
    return DecisionReport(True, m, certificate=cert)
