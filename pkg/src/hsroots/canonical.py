"""Reduce a raw pair (B, H) to canonical form.

Given B with HB = B*H (H Hermitian invertible), find S with

    S^-1 B S = J   (Jordan form)         S* H S = H_B (direct sum of
                                          +-sip blocks, sip for pairs),

plus the sign characteristic.  Pipeline:

1. cluster the eigenvalues of B (single linkage; the threshold tracks the
   eps^(1/k) scatter a defective eigenvalue suffers under roundoff);
2. per cluster, deflate with a sorted complex Schur factorization and run
   a rank staircase on N = T11 - lam*I to get the Segre sizes;
3. build Jordan chains from kernel staircases (tops chosen by SVD,
   independent modulo shorter kernels and descents of longer chains);
4. normalize the Gram matrix P*HP chain by chain: strip couplings to
   already-finished chains, congruence-diagonalize the leading
   anti-diagonal coefficient (its eigenvalue signs are the eps_i), then
   clear the higher Hankel layers;  conjugate pairs are normalized
   one-sidedly (only the conj-side chains are rescaled) and carry no sign.

Everything is tolerance-based; rank or clustering decisions that cannot
be made reliably raise IllConditionedError instead of guessing.
"""

from collections import namedtuple
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from . import descriptor as dsc
from .descriptor import DEFAULT_TOL

_EPS = np.finfo(float).eps


class IllConditionedError(RuntimeError):
    """Raised when rank/cluster decisions are unstable at the tolerance."""


Inertia = namedtuple("Inertia", ["plus", "minus", "zero"])


@dataclass
class Eigenstructure:
    """Clustered eigenvalues with their Segre characteristics."""

    entries: list  # of (eigenvalue, sizes tuple), sorted by (re, im)
    tol: float


@dataclass
class CanonicalizationResult:
    descriptor: object
    S: np.ndarray
    r_J: float
    r_H: float


def inertia_of(M, tol=DEFAULT_TOL):
    """Counts of eigenvalues of a Hermitian M above/below/within tol*||M||."""
    M = np.asarray(M, dtype=complex)
    scale = max(np.linalg.norm(M), 1.0)
    if np.linalg.norm(M - M.conj().T) > tol * scale:
        raise ValueError("inertia_of requires a Hermitian matrix")
    w = np.linalg.eigvalsh(0.5 * (M + M.conj().T))
    cut = tol * max(np.max(np.abs(w)), 1.0) if w.size else 0.0
    plus = int(np.sum(w > cut))
    minus = int(np.sum(w < -cut))
    return Inertia(plus, minus, len(w) - plus - minus)


# ---------------------------------------------------------------------------
# eigenvalue clustering

def _cluster_eigenvalues(eigs, n, scale, tol):
    """Single-linkage clusters of the eigenvalue list; returns centers, labels.

    The linkage threshold majorizes the nearest-neighbour gap of the
    eps^(1/k) scatter ring of a maximally defective eigenvalue (k = n),
    with a backward-error budget of ~50*n*eps*scale.
    """
    eigs = np.asarray(eigs)
    budget = 50.0 * n * _EPS * max(scale, 1.0)
    thresh = max(budget, 2.0 * (2.0 * np.pi / n) * budget ** (1.0 / n))
    parent = list(range(len(eigs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(eigs)):
        for j in range(i + 1, len(eigs)):
            if abs(eigs[i] - eigs[j]) <= thresh:
                pi, pj = find(i), find(j)
                if pi != pj:
                    parent[pi] = pj
    roots = sorted(set(find(i) for i in range(len(eigs))),
                   key=lambda r: (eigs[r].real, eigs[r].imag))
    labels = np.array([roots.index(find(i)) for i in range(len(eigs))])
    centers = [complex(np.mean(eigs[labels == c])) for c in range(len(roots))]
    for a in range(len(centers)):
        for b in range(a + 1, len(centers)):
            if abs(centers[a] - centers[b]) <= 2.0 * tol:
                raise IllConditionedError(
                    "eigenvalue clusters %s and %s are closer than 2*tol"
                    % (centers[a], centers[b]))
    return centers, labels


def _deflate(B, centers, ci, expected):
    """Schur-deflate the invariant subspace of cluster ci.

    Returns (T11, Z1) with T11 = Z1* B Z1 upper triangular (order
    `expected`) holding exactly the cluster's eigenvalues.
    """
    carr = np.asarray(centers)

    def member(x):
        return int(np.argmin(np.abs(carr - x))) == ci

    T, Z, sdim = sla.schur(B, output="complex", sort=member)
    if sdim != expected:
        raise IllConditionedError(
            "Schur reordering selected %d eigenvalues for cluster %s "
            "(expected %d)" % (sdim, centers[ci], expected))
    return T[:sdim, :sdim].copy(), Z[:, :sdim].copy()


# ---------------------------------------------------------------------------
# rank staircase and Jordan chains of a (numerically) nilpotent block

def _rank_staircase(N, tol, scale):
    """Ranks of N^s, s = 0, 1, ... until numerically zero.

    A power counts as zero when its largest singular value falls below
    tol * k * max(1, ||N||) * max(1, ||N^(s-1)||) (or an absolute eps
    floor); within a nonzero power, singular values above tol * k * s1
    count towards the rank.
    """
    k = N.shape[0]
    floor_abs = 50.0 * k * _EPS * max(1.0, scale)
    ranks = [k]
    kernels = [np.zeros((k, 0), dtype=complex)]
    P = np.eye(k, dtype=complex)
    prev_s1 = 1.0
    s1_N = None
    while ranks[-1] > 0:
        P = P @ N
        U, sv, Vh = np.linalg.svd(P)
        s1 = sv[0] if sv.size else 0.0
        if s1_N is None:
            s1_N = s1
        guard = max(tol * k * max(1.0, s1_N) * max(1.0, prev_s1), floor_abs)
        if s1 <= guard:
            r = 0
        else:
            r = int(np.sum(sv > tol * k * s1))
        if r >= ranks[-1]:
            raise IllConditionedError(
                "rank staircase stagnated at rank %d (block size %d): "
                "input is not recognizably nilpotent at this tolerance" % (r, k))
        ranks.append(r)
        kernels.append(Vh[r:].conj().T)
        prev_s1 = s1
        if len(ranks) > k + 1:
            raise IllConditionedError("rank staircase exceeded block size")
    return ranks, kernels


def _segre_from_ranks(ranks):
    # blocks of size >= s number ranks[s-1] - ranks[s]
    sizes = []
    q = len(ranks) - 1
    for s in range(1, q + 1):
        d_s = ranks[s - 1] - ranks[s]
        d_next = ranks[s] - ranks[s + 1] if s < q else 0
        if d_s < d_next:
            raise IllConditionedError("rank staircase is not convex")
        sizes.extend([s] * (d_s - d_next))
    return tuple(sorted(sizes, reverse=True))


def _orth_columns(M, rtol=1e-12):
    """Orthonormal basis of the column span of M (may be empty)."""
    if M.shape[1] == 0:
        return M
    Q, R = np.linalg.qr(M)
    keep = np.abs(np.diag(R)) > rtol * max(1.0, np.abs(np.diag(R)).max())
    return Q[:, keep]


def _jordan_chains(N, tol, scale):
    """Jordan chain top vectors of a nilpotent N, longest chains first.

    Returns a list of (top, length).  Tops at level s are chosen from
    ker(N^s) to be independent modulo ker(N^(s-1)) and the descents of
    longer chains, via SVD of the projected kernel basis.
    """
    ranks, kernels = _rank_staircase(N, tol, scale)
    q = len(ranks) - 1
    chains = []
    for s in range(q, 0, -1):
        d_s = ranks[s - 1] - ranks[s]
        d_next = ranks[s] - ranks[s + 1] if s < q else 0
        new = d_s - d_next
        if new == 0:
            continue
        descents = [np.linalg.matrix_power(N, ell - s) @ top
                    for top, ell in chains]
        forb = np.column_stack([kernels[s - 1]] + [v[:, None] for v in descents]) \
            if descents or kernels[s - 1].shape[1] else np.zeros((N.shape[0], 0), dtype=complex)
        QF = _orth_columns(forb)
        Kb = kernels[s]
        proj = Kb - QF @ (QF.conj().T @ Kb) if QF.shape[1] else Kb
        U, sv, _ = np.linalg.svd(proj, full_matrices=False)
        if sv.size < new or (new > 0 and sv[new - 1] <= 1e-8 * max(1.0, sv[0] if sv.size else 0.0)):
            raise IllConditionedError(
                "could not extract %d independent chain tops at level %d" % (new, s))
        for t in range(new):
            chains.append((U[:, t].copy(), s))
    chains.sort(key=lambda c: -c[1])
    if sum(ell for _, ell in chains) != N.shape[0]:
        raise IllConditionedError("chain lengths do not sum to the block size")
    return chains


def _descend(N, top, ell):
    """Chain columns [N^(ell-1) top, ..., N top, top] (heights 1..ell)."""
    cols = [top]
    for _ in range(ell - 1):
        cols.append(N @ cols[-1])
    cols.reverse()
    return cols


# ---------------------------------------------------------------------------
# Gram normalization

def _gram_normalize_real(N, Hk, chains, tol):
    """Normalize chains of a real-eigenvalue cluster so P*HP = direct sum
    of eps*sip blocks.  Returns a list of (columns, length, sign).

    Processing is longest length class first:  strip couplings to finished
    chains, congruence-diagonalize the leading anti-diagonal coefficient
    matrix E (signs of its eigenvalues are the eps), then cancel the
    higher Hankel layers with same-class corrections
    gamma_uv = -1/2 * eps_v * conj(a_uv).
    """
    finished = []  # dicts: cols, length, sign
    lengths = sorted(set(ell for _, ell in chains), reverse=True)
    for ell in lengths:
        tops = [top for top, L in chains if L == ell]
        # --- strip against finished (longer) chains
        for t_idx in range(len(tops)):
            top = tops[t_idx]
            for w in finished:
                lw, ew, wc = w["length"], w["sign"], w["cols"]
                for qp in range(ell):
                    cols = _descend(N, top, ell)
                    i = lw + 1 + qp - ell  # row (w-height) of the probe entry
                    a = wc[i - 1].conj() @ Hk @ cols[ell - 1]
                    top = top - (ew * a) * wc[(ell - qp) - 1]
            tops[t_idx] = top
        # --- leading coefficient E and its congruence diagonalization
        cols_all = [_descend(N, t, ell) for t in tops]
        c = len(tops)
        E = np.empty((c, c), dtype=complex)
        for u in range(c):
            for v in range(c):
                E[u, v] = cols_all[u][0].conj() @ Hk @ cols_all[v][ell - 1]
        E = 0.5 * (E + E.conj().T)
        D, U = np.linalg.eigh(E)
        if np.min(np.abs(D)) <= 1e-10 * max(1.0, np.max(np.abs(D))):
            raise IllConditionedError(
                "degenerate Gram block at chain length %d" % ell)
        T = U @ np.diag(1.0 / np.sqrt(np.abs(D)))
        signs = [int(np.sign(d)) for d in D]
        mixed = [sum(T[u, v] * tops[u] for u in range(c)) for v in range(c)]
        order = sorted(range(c), key=lambda v: -signs[v])  # +1 first
        tops = [mixed[v] for v in order]
        signs = [signs[v] for v in order]
        # --- clear higher Hankel layers d = 1 .. ell-1
        for d in range(1, ell):
            cols_all = [_descend(N, t, ell) for t in tops]
            A = np.empty((c, c), dtype=complex)
            for u in range(c):
                for v in range(c):
                    A[u, v] = cols_all[u][d].conj() @ Hk @ cols_all[v][ell - 1]
            A = 0.5 * (A + A.conj().T)
            new_tops = []
            for u in range(c):
                t = tops[u]
                for v in range(c):
                    gamma = -0.5 * signs[v] * np.conj(A[u, v])
                    t = t + gamma * cols_all[v][(ell - d) - 1]
                new_tops.append(t)
            tops = new_tops
        for t, sg in zip(tops, signs):
            finished.append({"cols": _descend(N, t, ell), "length": ell,
                             "sign": sg})
    return [(f["cols"], f["length"], f["sign"]) for f in finished]


def _gram_normalize_pair(N1, N2, H12, chains1, chains2, tol):
    """Normalize conjugate-pair chains so the cross Gram is sip per pair.

    chains1 live at lam (im > 0), chains2 at conj(lam); H12 is the cross
    Gram Z1* H Z2 in the two deflated coordinate systems.  Only the
    conj-side chains are transformed (one-sided normalization); returns a
    list of (cols1, cols2, length) matched pairs, longest first.
    """
    len1 = sorted((L for _, L in chains1), reverse=True)
    len2 = sorted((L for _, L in chains2), reverse=True)
    if len1 != len2:
        raise IllConditionedError(
            "conjugate clusters disagree on Segre sizes: %r vs %r" % (len1, len2))

    def g(x, z):
        return x.conj() @ H12 @ z

    finished = []  # dicts: cols1, cols2, length
    lengths = sorted(set(len1), reverse=True)
    tops1 = {ell: [t for t, L in chains1 if L == ell] for ell in lengths}
    tops2 = {ell: [t for t, L in chains2 if L == ell] for ell in lengths}
    for ell in lengths:
        t1, t2 = tops1[ell], tops2[ell]
        # --- strip current chains against finished pairs
        for idx in range(len(t1)):
            top = t1[idx]
            for w in finished:
                lw, w1, w2 = w["length"], w["cols1"], w["cols2"]
                for qp in range(ell):
                    cols = _descend(N1, top, ell)
                    i = lw + 1 + qp - ell
                    a = g(cols[ell - 1], w2[i - 1])
                    # the x side sits in the conjugated slot of the form
                    top = top - np.conj(a) * w1[(ell - qp) - 1]
            t1[idx] = top
        for idx in range(len(t2)):
            top = t2[idx]
            for w in finished:
                lw, w1, w2 = w["length"], w["cols1"], w["cols2"]
                for qp in range(ell):
                    cols = _descend(N2, top, ell)
                    i = lw + 1 + qp - ell
                    a = g(w1[i - 1], cols[ell - 1])
                    top = top - a * w2[(ell - qp) - 1]
            t2[idx] = top
        # --- leading cross coefficient F, absorbed entirely on the conj side
        c = len(t1)
        cols1 = [_descend(N1, t, ell) for t in t1]
        cols2 = [_descend(N2, t, ell) for t in t2]
        F = np.empty((c, c), dtype=complex)
        for u in range(c):
            for v in range(c):
                F[u, v] = g(cols1[u][0], cols2[v][ell - 1])
        sv = np.linalg.svd(F, compute_uv=False)
        if sv[-1] <= 1e-10 * max(1.0, sv[0]):
            raise IllConditionedError(
                "degenerate conjugate-pair Gram at chain length %d" % ell)
        Tm = np.linalg.inv(F)
        t2 = [sum(Tm[w, v] * t2[w] for w in range(c)) for v in range(c)]
        # --- clear higher layers by correcting the conj side only
        for d in range(1, ell):
            cols1 = [_descend(N1, t, ell) for t in t1]
            cols2 = [_descend(N2, t, ell) for t in t2]
            A = np.empty((c, c), dtype=complex)
            for u in range(c):
                for v in range(c):
                    A[u, v] = g(cols1[u][d], cols2[v][ell - 1])
            new2 = []
            for v in range(c):
                t = t2[v]
                for u in range(c):
                    t = t - A[u, v] * cols2[u][(ell - d) - 1]
                new2.append(t)
            t2 = new2
        for u in range(c):
            finished.append({"cols1": _descend(N1, t1[u], ell),
                             "cols2": _descend(N2, t2[u], ell),
                             "length": ell})
    finished.sort(key=lambda w: -w["length"])
    return [(w["cols1"], w["cols2"], w["length"]) for w in finished]


# ---------------------------------------------------------------------------
# public operations

def eigenstructure_of(B, tol=DEFAULT_TOL):
    """Clustered eigenvalues of B with Segre sizes from rank staircases."""
    B = np.asarray(B, dtype=complex)
    n = B.shape[0]
    eigs = np.linalg.eigvals(B)
    scale = np.linalg.norm(B)
    centers, labels = _cluster_eigenvalues(eigs, n, scale, tol)
    entries = []
    for ci, center in enumerate(centers):
        k = int(np.sum(labels == ci))
        T11, _ = _deflate(B, centers, ci, k)
        lam = complex(np.trace(T11)) / k
        ranks, _ = _rank_staircase(T11 - lam * np.eye(k), tol, scale)
        entries.append((lam, _segre_from_ranks(ranks)))
    entries.sort(key=lambda e: (e[0].real, e[0].imag))
    return Eigenstructure(entries, tol)


def _match_conjugate_clusters(centers, kinds):
    """Pair indices of nonreal clusters with their conjugates."""
    pairs = []
    used = set()
    for i, c in enumerate(centers):
        if kinds[i] != "nonreal" or i in used:
            continue
        if c.imag < 0:
            continue
        cand = [j for j, c2 in enumerate(centers)
                if j != i and j not in used and kinds[j] == "nonreal" and c2.imag < 0]
        if not cand:
            raise IllConditionedError(
                "nonreal cluster at %s has no conjugate partner" % c)
        j = min(cand, key=lambda j: abs(centers[j] - c.conjugate()))
        if abs(centers[j] - c.conjugate()) > 0.5 * abs(c.imag):
            raise IllConditionedError(
                "nonreal cluster at %s has no conjugate partner" % c)
        used.update((i, j))
        pairs.append((i, j))
    leftovers = [i for i, k in enumerate(kinds)
                 if k == "nonreal" and i not in used]
    if leftovers:
        raise IllConditionedError("unpaired nonreal clusters at %s"
                                  % [centers[i] for i in leftovers])
    return pairs


def canonicalize(pair, tol=DEFAULT_TOL):
    """Canonical form of a raw pair: descriptor, transition S, residuals.

    The output descriptor is deterministically ordered: eigenvalues by
    (re, im), sizes descending, sign +1 before -1.  Residuals
    r_J = ||S^-1 B S - J|| / ||B|| and r_H = ||S* H S - H_B|| / ||H||
    must come out below 1e3 * tol * n, else IllConditionedError.
    """
    B = np.asarray(pair.B, dtype=complex)
    H = np.asarray(pair.H, dtype=complex)
    n = B.shape[0]
    eigs = np.linalg.eigvals(B)
    scale = np.linalg.norm(B)
    centers, labels = _cluster_eigenvalues(eigs, n, scale, tol)
    ksizes = [int(np.sum(labels == ci)) for ci in range(len(centers))]
    kinds = []
    for c in centers:
        if abs(c.imag) <= tol * (1.0 + abs(c.real)):
            kinds.append("real")
        else:
            kinds.append("nonreal")
    pairs = _match_conjugate_clusters(centers, kinds)

    items = []  # (sort_key, block_spec, columns n x size_of_block)
    for ci, center in enumerate(centers):
        if kinds[ci] != "real":
            continue
        k = ksizes[ci]
        T11, Z1 = _deflate(B, centers, ci, k)
        lam = (complex(np.trace(T11)) / k).real
        N = T11 - lam * np.eye(k)
        chains = _jordan_chains(N, tol, scale)
        Hk = Z1.conj().T @ H @ Z1
        for cols, ell, sign in _gram_normalize_real(N, Hk, chains, tol):
            block = dsc.RealBlock(lam, ell, sign)
            C = Z1 @ np.column_stack(cols)
            items.append(((lam, 0.0, -ell, -sign), block, C))
    for (i, j) in pairs:
        ki, kj = ksizes[i], ksizes[j]
        if ki != kj:
            raise IllConditionedError(
                "conjugate clusters %s / %s differ in multiplicity"
                % (centers[i], centers[j]))
        T1, Z1 = _deflate(B, centers, i, ki)
        T2, Z2 = _deflate(B, centers, j, kj)
        lam = 0.5 * (complex(np.trace(T1)) / ki
                     + (complex(np.trace(T2)) / kj).conjugate())
        N1 = T1 - lam * np.eye(ki)
        N2 = T2 - lam.conjugate() * np.eye(kj)
        ch1 = _jordan_chains(N1, tol, scale)
        ch2 = _jordan_chains(N2, tol, scale)
        H12 = Z1.conj().T @ H @ Z2
        for cols1, cols2, ell in _gram_normalize_pair(N1, N2, H12, ch1, ch2, tol):
            block = dsc.PairBlock(lam, ell)
            C = np.column_stack([Z1 @ np.column_stack(cols1),
                                 Z2 @ np.column_stack(cols2)])
            items.append(((lam.real, lam.imag, -ell, 0), block, C))

    items.sort(key=lambda it: it[0])
    d = dsc.Descriptor([it[1] for it in items])
    S = np.column_stack([it[2] for it in items])
    ref = dsc.realize(d)
    r_J = np.linalg.norm(np.linalg.solve(S, B @ S) - ref.B) / max(np.linalg.norm(B), 1.0)
    r_H = np.linalg.norm(S.conj().T @ H @ S - ref.H) / max(np.linalg.norm(H), 1.0)
    tol_out = 1e3 * tol * n
    if not (r_J <= tol_out and r_H <= tol_out):
        raise IllConditionedError(
            "canonicalization residuals (%.3e, %.3e) exceed %.3e; "
            "the Jordan structure is not reliable at tol=%g"
            % (r_J, r_H, tol_out, tol))
    return CanonicalizationResult(d, S, float(r_J), float(r_H))
