"""Acceptance gate: ten criteria, one test per criterion.

Golden-value checks for the worked small cases, exhaustive combinatorial
sweeps against the brute-force oracles, and seeded end-to-end round trips
through scramble -> canonicalize -> decide -> construct -> verify.
"""

import itertools
from collections import Counter

import numpy as np
import scipy.linalg as sla

import hsroots as hs
from hsroots import descriptor as dsc


# ---------------------------------------------------------------------------
# shared helpers

def _blocks_of(d):
    out = []
    for b in d.blocks:
        if isinstance(b, dsc.PairBlock):
            out.append(("pair", complex(b.eigenvalue), b.size, 0))
        else:
            out.append(("real", complex(b.eigenvalue), b.size, b.sign))
    return out


def _struct(entries):
    # sort on the discrete data first; eigenvalues are rounded so that
    # noise-level parts cannot reorder entries between the two sides
    return sorted(entries, key=lambda t: (
        t[0], t[2], t[3], round(t[1].real, 6), round(t[1].imag, 6)))


def _assert_same_structure(got_entries, want_entries, tol_eig=1e-8):
    got, want = _struct(got_entries), _struct(want_entries)
    assert len(got) == len(want), (got, want)
    for g, w in zip(got, want):
        assert g[0] == w[0] and g[2] == w[2] and g[3] == w[3], (g, w)
        assert abs(g[1] - w[1]) <= tol_eig, (g, w)


def _partitions(total, cap=None):
    if cap is None:
        cap = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, cap), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# 1. fifth-root golden value

def test_c01_fifth_root_golden():
    d = hs.Descriptor([hs.RealBlock(-1.0, 3, +1)])
    rep = hs.decide(d, 5)
    assert rep.exists
    root = hs.assemble_root(d, 5, rep)
    golden = np.array([[-1.0, 1.0 / 5.0, 2.0 / 25.0],
                       [0.0, -1.0, 1.0 / 5.0],
                       [0.0, 0.0, -1.0]])
    assert np.max(np.abs(root.A - golden)) <= 1e-12
    ref = dsc.realize(d)
    _, ok = hs.verify_root(root.A, ref.B, ref.H, 5, tol=1e-12)
    assert ok


# ---------------------------------------------------------------------------
# 2. closed-form solution of the phi-system at n = 3

def test_c02_phi_solution_formulas():
    for lam in (16.0, 81.0):
        for m in (2, 3, 4, 5):
            mu = lam ** (1.0 / m)
            y = hs.solve_phi(lam, 3, mu, m)
            want = np.array([
                -((m - 1) ** 2) / (32.0 * m * mu ** (m + 1)),
                -(m - 1) / (4.0 * m * mu ** m),
                1.0 / (m * mu ** (m - 1)),
            ])
            assert np.max(np.abs(y - want)) <= 1e-12, (lam, m)


# ---------------------------------------------------------------------------
# 3. sign table for t = (15, 12, 10), m = 4: all eight eta combinations

T3_SIZES = (4, 4, 4, 3, 3, 3, 3, 3, 3, 3, 2, 2)


def _t3_row(e1, e2, e3):
    return [e1, e1, -e1, e1, e2, e2, -e2, -e2, e3, -e3, e3, -e3]


def test_c03_sign_table_reproduction():
    for e1, e2, e3 in itertools.product((+1, -1), repeat=3):
        row = _t3_row(e1, e2, e3)
        target = list(zip(T3_SIZES, row))
        At, P = hs.root_nilpotent([(15, e1), (12, e2), (10, e3)], target, 4)
        Ht = sla.block_diag(e1 * dsc.sip(15), e2 * dsc.sip(12), e3 * dsc.sip(10))
        B4 = np.linalg.matrix_power(At, 4)
        res = hs.canonicalize(dsc.MatrixPair(B4, Ht))
        blocks = res.descriptor.blocks
        assert all(abs(b.eigenvalue) <= 1e-8 for b in blocks)
        got = [(b.size, b.sign) for b in blocks]
        want = sorted(target, key=lambda t: (-t[0], -t[1]))
        assert got == want, (e1, e2, e3, got, want)


# ---------------------------------------------------------------------------
# 4. sixth-root regrouping sweep for Segre (3^6, 2^6)

def test_c04_sixth_root_grouping_sweep():
    sizes = (3,) * 6 + (2,) * 6
    groupings = list(hs.enumerate_groupings(sizes, 6))
    assert groupings == [
        ((3, 3, 3, 3, 3, 3), (2, 2, 2, 2, 2, 2)),
        ((3, 3, 3, 3, 3, 2), (3, 2, 2, 2, 2, 2)),
        ((3, 3, 3, 3, 2, 2), (3, 3, 2, 2, 2, 2)),
        ((3, 3, 3, 2, 2, 2), (3, 3, 3, 2, 2, 2)),
    ]
    feasible = set()
    for g in groupings:
        for etas in itertools.product((+1, -1), repeat=len(g)):
            rc = hs.required_positive_counts(g, etas)
            feasible.add((rc.get(3, 0), rc.get(2, 0)))
    assert feasible == {(3, 3), (4, 4), (2, 2)}


# ---------------------------------------------------------------------------
# 5. negative eigenvalue, even m: unbalanced refused, balanced constructed

def test_c05_negative_even_gate():
    single = hs.Descriptor([hs.RealBlock(-1.0, 2, +1)])
    rep = hs.decide(single, 2)
    assert not rep.exists
    assert rep.refusal.property_id == "P3-negative-pairing"

    twins = hs.Descriptor([hs.RealBlock(-1.0, 2, +1), hs.RealBlock(-1.0, 2, -1)])
    rep2 = hs.decide(twins, 2)
    assert rep2.exists
    root = hs.assemble_root(twins, 2, rep2)
    ref = dsc.realize(twins)
    _, ok = hs.verify_root(root.A, ref.B, ref.H, 2, tol=1e-8)
    assert ok


# ---------------------------------------------------------------------------
# 6. fast refusal: three blocks, no size-1 entries, m = 2

def test_c06_three_block_corollary():
    triples = [(a, b, c)
               for a in range(2, 9) for b in range(2, a + 1)
               for c in range(2, b + 1) if a + b + c <= 12]
    assert triples
    for sizes in triples:
        assert hs.quick_refusal_corollary(sizes, 2) is not None, sizes
        for signs in itertools.product((+1, -1), repeat=3):
            d = hs.Descriptor([hs.RealBlock(0.0, s, e)
                               for s, e in zip(sizes, signs)])
            assert not hs.decide(d, 2).exists, (sizes, signs)


# ---------------------------------------------------------------------------
# 7. sign split of (J_n(0))^m, eta Q_n over all n <= 12, m <= 6

def test_c07_power_sign_sweep():
    for n in range(1, 13):
        for m in range(1, 7):
            for eta in (+1, -1):
                B = np.linalg.matrix_power(dsc.jordan_block(0.0, n), m)
                res = hs.canonicalize(dsc.MatrixPair(B, eta * dsc.sip(n)))
                blocks = res.descriptor.blocks
                assert all(abs(b.eigenvalue) <= 1e-8 for b in blocks)
                got = Counter((b.size, b.sign) for b in blocks)
                a, r = divmod(n - 1, m)
                r += 1
                want = Counter()
                for length, c in ((a + 1, r), (a, m - r)):
                    if length == 0 or c == 0:
                        continue
                    want[(length, eta)] += (c + 1) // 2
                    want[(length, -eta)] += c // 2
                want = Counter({k: v for k, v in want.items() if v})
                assert got == want, (n, m, eta, got, want)


# ---------------------------------------------------------------------------
# 8. decision ~ brute-force oracle, exhaustively to order 10

def test_c08_oracle_equivalence_exhaustive():
    cases = 0
    for n in range(1, 11):
        for sizes in _partitions(n):
            mult = Counter(sizes)
            keys = sorted(mult)
            for combo in itertools.product(*(range(mult[s] + 1) for s in keys)):
                pos = dict(zip(keys, combo))
                taken = {}
                blocks = []
                for s in sizes:
                    k = taken.get(s, 0)
                    blocks.append(dsc.RealBlock(0.0, s, +1 if k < pos[s] else -1))
                    taken[s] = k + 1
                d = hs.Descriptor(blocks)
                for m in (2, 3, 4):
                    got = hs.decide(d, m).exists
                    want = hs.oracle_decide_nilpotent(sizes, pos, m)
                    assert got == want, (sizes, pos, m, got, want)
                    cases += 1
    assert cases == 3642


# ---------------------------------------------------------------------------
# 9. seeded end-to-end round trips in scrambled coordinates

# eigenvalue pools chosen so every root branch for m = 2..5 keeps pairwise
# gaps above 0.3, well clear of the cluster-linkage threshold at order 12
_POS_POOL = [0.5, 16.0]
_NEG_POOL = [-0.5, -16.0]
_PAIR_POOL = [2.0j, -4.0 + 4.0j]


def _expanded_zero_blocks(t, eta, m):
    # the power of (J_t(0), eta Q_t): r blocks of size a+1 and m-r of size
    # a, with ceil(c/2) of each class keeping the sign eta
    a, r = divmod(t - 1, m)
    r += 1
    out = []
    for length, c in ((a + 1, r), (a, m - r)):
        if length == 0 or c == 0:
            continue
        n_eta = (c + 1) // 2
        for idx in range(c):
            out.append(dsc.RealBlock(0.0, length, eta if idx < n_eta else -eta))
    return out


def _random_feasible(seed):
    rng = np.random.default_rng(123456 + seed)
    m = int(rng.integers(2, 6))
    budget = 12
    pos = list(_POS_POOL)
    neg = list(_NEG_POOL)
    pairs = list(_PAIR_POOL)
    blocks, used = [], set()
    while budget > 0:
        options = ["zero"]
        if pos:
            options.append("positive")
        if neg and (budget >= 2 or m % 2 == 1):
            options.append("negative")
        if pairs and budget >= 2:
            options.append("pair")
        kind = options[int(rng.integers(0, len(options)))]
        if kind == "zero":
            t = int(rng.integers(1, min(5, budget) + 1))
            eta = +1 if rng.integers(0, 2) else -1
            blocks.extend(_expanded_zero_blocks(t, eta, m))
            budget -= t
        elif kind == "positive":
            s = int(rng.integers(1, min(3, budget) + 1))
            blocks.append(dsc.RealBlock(pos.pop(), s,
                                        +1 if rng.integers(0, 2) else -1))
            budget -= s
        elif kind == "negative":
            lam = neg.pop()
            if m % 2 == 0:
                s = int(rng.integers(1, min(3, budget // 2) + 1))
                blocks.append(dsc.RealBlock(lam, s, +1))
                blocks.append(dsc.RealBlock(lam, s, -1))
                budget -= 2 * s
            else:
                s = int(rng.integers(1, min(3, budget) + 1))
                blocks.append(dsc.RealBlock(lam, s,
                                            +1 if rng.integers(0, 2) else -1))
                budget -= s
        else:
            s = int(rng.integers(1, min(3, budget // 2) + 1))
            blocks.append(dsc.PairBlock(pairs.pop(), s))
            budget -= 2 * s
        used.add(kind)
    order = list(range(len(blocks)))
    rng.shuffle(order)
    return dsc.Descriptor([blocks[i] for i in order]), m, used


def _expected_root_blocks(d, m, cert):
    out = [("real", complex(0.0), t, eta)
           for t, eta in zip(cert.zero_root_sizes, cert.etas)]
    mu_of = dict(cert.root_eigenvalues)
    paired = set()
    for i, j in cert.negative_pairing:
        paired.update((i, j))
        out.append(("pair", mu_of[i], d.blocks[i].size, 0))
    for i, b in enumerate(d.blocks):
        if isinstance(b, dsc.PairBlock):
            out.append(("pair", mu_of[i], b.size, 0))
        elif i in paired or dsc.classify(b.eigenvalue) == "zero":
            continue
        else:
            out.append(("real", mu_of[i], b.size, b.sign))
    return out


def test_c09_end_to_end_round_trips():
    seen = set()
    for seed in range(200):
        d, m, used = _random_feasible(seed)
        seen |= used
        assert d.order <= 12
        raw, _ = dsc.scramble(d, seed, conditioning=float(2 + seed % 9))
        canon = hs.canonicalize(raw)
        rep = hs.decide(canon.descriptor, m)
        assert rep.exists, (seed, m, _blocks_of(d))
        root = hs.assemble_root(canon.descriptor, m, rep)
        moved = hs.transport(raw, canon, root, m)
        _, ok = hs.verify_root(moved.A, raw.B, raw.H, m, tol=1e-7)
        assert ok, (seed, moved.r_pow, moved.r_sa)
        root_pair = hs.canonicalize(dsc.MatrixPair(moved.A, raw.H))
        _assert_same_structure(
            _blocks_of(root_pair.descriptor),
            _expected_root_blocks(canon.descriptor, m, rep.certificate))
    assert seen == {"zero", "positive", "negative", "pair"}


# ---------------------------------------------------------------------------
# 10. canonicalization of scrambled canonical pairs up to order 20

def test_c10_canonicalization_stability():
    cases = [
        hs.Descriptor([hs.RealBlock(0.0, 20, +1)]),
        hs.Descriptor([hs.RealBlock(0.0, 20, -1)]),
        hs.Descriptor([hs.RealBlock(0.0, 4, +1), hs.RealBlock(0.0, 4, -1),
                       hs.RealBlock(3.0, 2, +1), hs.RealBlock(-2.0, 3, -1),
                       hs.PairBlock(1.0 + 2.0j, 2), hs.RealBlock(0.0, 1, +1),
                       hs.RealBlock(3.0, 2, -1)]),
        hs.Descriptor([hs.PairBlock(2.0 + 1.0j, 3), hs.PairBlock(2.0 + 1.0j, 2)]),
        hs.Descriptor([hs.RealBlock(1.0, 3, +1), hs.RealBlock(1.0, 3, -1),
                       hs.RealBlock(1.0, 2, +1)]),
        hs.Descriptor([hs.RealBlock(0.0, 2, +1), hs.RealBlock(0.0, 2, +1),
                       hs.RealBlock(0.0, 2, -1), hs.RealBlock(5.0, 2, +1)]),
    ]
    for ci, d in enumerate(cases):
        assert d.order <= 20
        for seed in (3, 71):
            raw, _ = dsc.scramble(d, seed, conditioning=10.0)
            res = hs.canonicalize(raw)
            assert res.r_J <= 1e-7 and res.r_H <= 1e-7, (ci, seed, res.r_J, res.r_H)
            _assert_same_structure(_blocks_of(res.descriptor), _blocks_of(d))
