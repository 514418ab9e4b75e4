import numpy as np
import pytest

import hsroots as hs
from hsroots import canonical as cn
from hsroots import descriptor as dsc


def test_inertia_of():
    M = np.diag([3.0, -1.0, 0.0, 2.0])
    assert cn.inertia_of(M) == (2, 1, 1)
    Q = dsc.sip(5)
    assert cn.inertia_of(Q) == (3, 2, 0)
    with pytest.raises(ValueError):
        cn.inertia_of(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_eigenstructure_of_exact_jordan():
    d = hs.Descriptor([
        hs.RealBlock(2.0, 3, +1), hs.RealBlock(2.0, 1, -1),
        hs.RealBlock(-1.0, 2, +1),
    ])
    pair = dsc.realize(d)
    es = cn.eigenstructure_of(pair.B)
    entries = [(round(lam.real, 6), sizes) for lam, sizes in es.entries]
    assert entries == [(-1.0, (2,)), (2.0, (3, 1))]


def test_eigenstructure_of_scrambled():
    d = hs.Descriptor([hs.RealBlock(0.0, 4, +1), hs.RealBlock(0.0, 2, -1),
                       hs.RealBlock(1.0, 1, +1)])
    raw, _ = dsc.scramble(d, 2)
    es = cn.eigenstructure_of(raw.B)
    assert len(es.entries) == 2
    (lam0, s0), (lam1, s1) = es.entries
    assert abs(lam0) < 1e-8 and s0 == (4, 2)
    assert abs(lam1 - 1.0) < 1e-8 and s1 == (1,)


def _struct(d):
    out = []
    for b in d.blocks:
        if isinstance(b, dsc.RealBlock):
            out.append(("real", complex(b.eigenvalue), b.size, b.sign))
        else:
            out.append(("pair", complex(b.eigenvalue), b.size, 0))
    return out


def assert_recovers(d, seed, tol_eig=1e-8, res_tol=1e-7):
    raw, _ = dsc.scramble(d, seed)
    res = cn.canonicalize(raw)
    key = lambda e: (e[1].real, e[1].imag, -e[2], -e[3])
    ref = sorted(_struct(d), key=key)
    got = sorted(_struct(res.descriptor), key=key)
    assert len(ref) == len(got)
    for a, b in zip(ref, got):
        assert a[0] == b[0] and a[2] == b[2] and a[3] == b[3], (ref, got)
        assert abs(a[1] - b[1]) <= tol_eig * (1 + abs(a[1]))
    assert res.r_J <= res_tol and res.r_H <= res_tol
    return res


def test_canonicalize_identity_on_canonical_input():
    d = hs.Descriptor([hs.RealBlock(1.0, 2, +1), hs.RealBlock(3.0, 1, -1)])
    pair = dsc.realize(d)
    res = cn.canonicalize(pair)
    assert _struct(res.descriptor) == _struct(d)
    assert res.r_J < 1e-12 and res.r_H < 1e-12


def test_canonicalize_recovers_single_jordan_block():
    assert_recovers(hs.Descriptor([hs.RealBlock(0.0, 8, +1)]), 0)
    assert_recovers(hs.Descriptor([hs.RealBlock(0.0, 8, -1)]), 1)


def test_canonicalize_recovers_mixed():
    d = hs.Descriptor([
        hs.RealBlock(0.0, 3, +1), hs.RealBlock(0.0, 2, -1),
        hs.RealBlock(0.0, 2, +1), hs.RealBlock(1.5, 3, -1),
        hs.RealBlock(1.5, 2, +1), hs.RealBlock(-0.75, 2, +1),
        hs.PairBlock(1 + 1j, 2),
    ])
    assert_recovers(d, 7)


def test_canonicalize_recovers_equal_size_opposite_signs():
    d = hs.Descriptor([
        hs.RealBlock(2.0, 3, +1), hs.RealBlock(2.0, 3, -1),
        hs.RealBlock(2.0, 1, +1), hs.RealBlock(-1.0, 4, +1),
        hs.RealBlock(-1.0, 4, -1),
    ])
    assert_recovers(d, 3)


def test_canonicalize_recovers_conjugate_pairs():
    d = hs.Descriptor([hs.PairBlock(0.5 + 2j, 4), hs.PairBlock(0.5 + 2j, 2),
                       hs.PairBlock(-1 + 0.5j, 3)])
    assert_recovers(d, 11)


def test_canonicalize_ordering_is_deterministic():
    d = hs.Descriptor([
        hs.RealBlock(1.0, 2, -1), hs.RealBlock(1.0, 3, +1),
        hs.RealBlock(1.0, 2, +1), hs.RealBlock(-2.0, 1, +1),
    ])
    raw, _ = dsc.scramble(d, 5)
    res = cn.canonicalize(raw)
    # eigenvalues ascending, sizes descending within, +1 before -1
    assert _struct(res.descriptor)[0][1].real == pytest.approx(-2.0)
    sizes_signs = [(b.size, b.sign) for b in res.descriptor.blocks[1:]]
    assert sizes_signs == [(3, 1), (2, 1), (2, -1)]
    res2 = cn.canonicalize(raw)
    assert np.array_equal(res.S, res2.S)


def test_canonicalize_residual_gate_raises():
    # feed a pair whose H is nearly singular: the congruence residual
    # cannot be met and the failure must be loud
    B = dsc.jordan_block(0.0, 2)
    H = np.array([[0.0, 1.0], [1.0, 1e-13]])
    H = 0.5 * (H + H.T)
    # (B, H): H J_2(0) selfadjoint? sip-like H works; make B break it
    Bbad = np.array([[0.0, 1.0], [2.0, 0.0]])
    with pytest.raises((cn.IllConditionedError, ValueError)):
        res = cn.canonicalize(dsc.MatrixPair(Bbad, np.eye(2) * 0.0))
        raise ValueError("should not succeed: %r" % res)


def test_power_sign_rule_spot_checks():
    # canonicalize((J_n(0))^m, eta*Q_n): per length class, ceil(c/2) signs
    # equal eta (long class c=r, short class c=m-r)
    for (n, m, eta) in [(7, 3, 1), (7, 3, -1), (12, 5, 1), (9, 2, -1),
                        (6, 6, 1), (5, 8, -1)]:
        B = np.linalg.matrix_power(dsc.jordan_block(0.0, n), m)
        H = eta * dsc.sip(n)
        res = cn.canonicalize(dsc.MatrixPair(B, H))
        per_class = {}
        for b in res.descriptor.blocks:
            per_class.setdefault(b.size, []).append(b.sign)
        a, r = divmod(n - 1, m)
        r += 1
        expect = {}
        if a + 1 > 0:
            expect[a + 1] = r
        if a > 0 and m - r > 0:
            expect[a] = m - r
        assert {k: len(v) for k, v in per_class.items()} == expect
        for size, signs in per_class.items():
            c = len(signs)
            n_eta = sum(1 for s in signs if s == eta)
            assert n_eta == (c + 1) // 2, (n, m, eta, size, signs)
