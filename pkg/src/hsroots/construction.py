"""Explicit construction of H-selfadjoint m-th roots of canonical pairs.

Every constructor produces a pair (Atilde, P) where Atilde is a root of
the target block in its own Jordan coordinates and P is a Jordan basis of
Atilde^m normalizing the H-part; A := P^-1 Atilde P is then the root in
target coordinates (similarity of pairs preserves selfadjointness).

The nonzero-eigenvalue constructors solve the triangular phi-system

    phi_j(y) = y* Q M^(n-j) y   (conjugated, real eigenvalues)
             = y^T Q M^(n-j) y  (plain, nonreal eigenvalues)

with M = J_n(mu)^m - lam*I, targets phi_1 = 1 and phi_j = 0 for j >= 2,
so that the Jordan basis P = [M^(n-1) y | ... | M y | y] turns the H-part
into the sip matrix exactly.  The nilpotent constructor recombines the
standard-basis Jordan chains of (J_t(0))^m pairwise into (C + C')/sqrt(2)
and (C - C')/sqrt(2), which carry signs +eta and -eta.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from . import canonical as canon
from . import descriptor as dsc
from . import existence as exi
from .descriptor import DEFAULT_TOL, jordan_block, sip


@dataclass
class RootResult:
    """Constructed root A with its transition matrix and residuals."""

    A: np.ndarray
    P: np.ndarray
    r_pow: float
    r_sa: float


def _phi_powers(lam, n, mu, m):
    J = jordan_block(mu, n)
    M = np.linalg.matrix_power(J, m) - complex(lam) * np.eye(n)
    powers = [np.eye(n, dtype=complex)]
    for _ in range(n - 1):
        powers.append(powers[-1] @ M)
    return M, powers


def phi_values(lam, n, mu, m, y, mode="sesquilinear"):
    """Evaluate (phi_1(y), ..., phi_n(y)) for the given block and root."""
    _, powers = _phi_powers(lam, n, mu, m)
    Q = sip(n)
    left = np.conj(y) if mode == "sesquilinear" else np.asarray(y)
    return np.array([left @ Q @ powers[n - j] @ y for j in range(1, n + 1)])


def solve_phi(lam, n, mu, m, mode="sesquilinear"):
    """Solve the phi-system by back-substitution; returns y of length n.

    From phi_1, y_n = (m mu^(m-1))^(-(n-1)/2) (real positive in
    sesquilinear mode, principal root in bilinear mode); each later
    phi_j is affine in y_(n-j+1) with coefficient 2 (m mu^(m-1))^(n-j) y_n
    and is solved exactly.
    """
    lam = complex(lam)
    mu = complex(mu)
    if abs(lam) == 0:
        raise ValueError("phi-system requires a nonzero eigenvalue")
    if abs(mu ** m - lam) > 1e-9 * (1.0 + abs(lam)):
        raise ValueError("mu is not an m-th root of lam")
    if mode == "sesquilinear":
        if abs(lam.imag) > 0 or abs(mu.imag) > 0:
            raise ValueError("sesquilinear mode requires real lam and mu")
        c = float(m) * mu.real ** (m - 1)
        if c <= 0:
            raise ValueError("leading coefficient m mu^(m-1) must be positive")
        y = np.zeros(n, dtype=complex)
        y[n - 1] = c ** (-(n - 1) / 2.0)
    elif mode == "bilinear":
        c = complex(m) * mu ** (m - 1)
        if c == 0:
            raise ValueError("leading coefficient m mu^(m-1) vanished")
        y = np.zeros(n, dtype=complex)
        y[n - 1] = c ** (-(n - 1) / 2.0)
    else:
        raise ValueError("mode must be 'sesquilinear' or 'bilinear'")
    _, powers = _phi_powers(lam, n, mu, m)
    Q = sip(n)
    for j in range(2, n + 1):
        left = np.conj(y) if mode == "sesquilinear" else y
        phi = left @ Q @ powers[n - j] @ y
        coeff = 2.0 * c ** (n - j) * y[n - 1]
        y[n - j] = -phi / coeff
    return y


def _chain_basis(lam, n, mu, m, y):
    # Jordan basis [M^(n-1) y | ... | M y | y] for Atilde^m at eigenvalue lam
    M, _ = _phi_powers(lam, n, mu, m)
    cols = [np.asarray(y, dtype=complex)]
    for _ in range(n - 1):
        cols.append(M @ cols[-1])
    cols.reverse()
    return np.column_stack(cols)


def root_block_real(lam, n, eps, m):
    """Root of (J_n(lam), eps*Q_n) for lam > 0, or lam < 0 with m odd.

    Returns (Atilde, P) with Atilde = J_n(mu), mu the real m-th root, and
    P a Jordan basis with P^-1 Atilde^m P = J_n(lam) and
    P* (eps Q_n) P = eps Q_n.
    """
    lam = float(lam)
    if not (lam > 0 or (lam < 0 and m % 2 == 1)):
        raise ValueError("real branch needs lam > 0, or lam < 0 with m odd")
    mu = lam ** (1.0 / m) if lam > 0 else -((-lam) ** (1.0 / m))
    y = solve_phi(lam, n, mu, m, mode="sesquilinear")
    return jordan_block(mu, n), _chain_basis(lam, n, mu, m, y)


def root_block_conjugate_pair(lam, n, m):
    """Root of (J_n(lam) + J_n(conj lam), Q_2n) for nonreal lam (im > 0).

    Atilde = J_n(mu) + J_n(conj mu) with mu the principal m-th root;
    P = P_1 + conj(P_1) where P_1 solves the bilinear phi-system, so
    P_1^T Q_n P_1 = Q_n and hence P* Q_2n P = Q_2n.
    """
    lam = complex(lam)
    if lam.imag <= 0:
        raise ValueError("conjugate-pair branch needs im(lam) > 0")
    mu = exi.root_eigenvalue_choice(lam, m)
    y = solve_phi(lam, n, mu, m, mode="bilinear")
    P1 = _chain_basis(lam, n, mu, m, y)
    At = sla.block_diag(jordan_block(mu, n), jordan_block(mu.conjugate(), n))
    P = sla.block_diag(P1, np.conj(P1))
    return At, P


def root_block_negative_even(lam, n, m, tol=DEFAULT_TOL):
    """Root of (J_n(lam) + J_n(lam), Q_n + (-Q_n)) for lam < 0 and m even.

    Atilde = J_n(mu) + J_n(conj mu) with mu the principal root (im > 0);
    the pair (Atilde^m, Q_2n) is canonicalized and the resulting S serves
    as P, giving P^-1 Atilde^m P = J_n(lam) + J_n(lam) and
    P* Q_2n P = Q_n + (-Q_n).
    """
    lam = float(lam)
    if not (lam < 0 and m % 2 == 0):
        raise ValueError("this branch needs lam < 0 and m even")
    mu = exi.root_eigenvalue_choice(lam, m)
    At = sla.block_diag(jordan_block(mu, n), jordan_block(mu.conjugate(), n))
    Bm = np.linalg.matrix_power(At, m)
    res = canon.canonicalize(dsc.MatrixPair(Bm, sip(2 * n)), tol)
    blocks = res.descriptor.blocks
    ok = (len(blocks) == 2
          and all(isinstance(b, dsc.RealBlock) and b.size == n for b in blocks)
          and blocks[0].sign == +1 and blocks[1].sign == -1
          and all(abs(b.eigenvalue - lam) <= 1e-6 * (1 + abs(lam)) for b in blocks))
    if not ok:
        raise canon.IllConditionedError(
            "canonicalization of the paired negative block came out wrong: %r"
            % (blocks,))
    return At, res.S


@dataclass(frozen=True)
class ChainPairing:
    """How the Jordan chains of (J_n(0))^m couple under Q_n.

    Chains are indexed 1..m; chains 1..r have length a+1 (n = a*m + r,
    0 < r <= m) and chains r+1..m have length a.  Chain j couples with
    r+1-j (long) or m+r+1-j (short); a chain coupling with itself spans a
    nondegenerate subspace on its own.
    """

    n: int
    m: int
    a: int
    r: int
    long_length: int
    short_length: int
    long_pairs: tuple   # (j, r+1-j), j ascending
    long_self: int      # 0 if none
    short_pairs: tuple  # (r+q, m+1-q), q ascending
    short_self: int     # 0 if none


def chain_pairing(n, m):
    """Pairing structure of the m chains of (J_n(0))^m under Q_n."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    a, r = divmod(n - 1, m)
    r += 1
    long_pairs = tuple((q, r + 1 - q) for q in range(1, r // 2 + 1))
    long_self = (r + 1) // 2 if r % 2 == 1 else 0
    nshort = m - r if a > 0 else 0  # length-0 chains do not exist
    short_pairs = tuple((r + q, m + 1 - q) for q in range(1, nshort // 2 + 1))
    short_self = (m + r + 1) // 2 if nshort % 2 == 1 else 0
    return ChainPairing(n, m, a, r, a + 1, a, long_pairs, long_self,
                        short_pairs, short_self)


def root_nilpotent(parts, target_blocks, m):
    """Root of the nilpotent part from a certificate.

    `parts` is a list of (t_k, eta_k); `target_blocks` is the descriptor's
    zero-part as (size, sign) in order.  Returns (Atilde, P) with
    Atilde the direct sum of J_(t_k)(0) and P real orthogonal columns:
    per root block, paired chains (C, C') of (J_t(0))^m are replaced by
    (C + C')/sqrt(2) with sign eta_k and (C - C')/sqrt(2) with sign
    -eta_k, laid out palindromically (sums ascending, self-paired chain,
    differences descending) within each length class; the whole column
    set is then permuted to match `target_blocks` per (size, sign).
    """
    total = sum(t for t, _ in parts)
    built = []  # (size, sign, list of column vectors)
    offset = 0
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    for t, eta in parts:
        cp = chain_pairing(t, m)

        def cols_of(j, length, base=offset):
            cols = []
            for h in range(length):
                v = np.zeros(total)
                v[base + (j - 1) + h * m] = 1.0
                cols.append(v)
            return cols

        for length, pairs, selfj in ((cp.long_length, cp.long_pairs, cp.long_self),
                                     (cp.short_length, cp.short_pairs, cp.short_self)):
            if length == 0:
                continue
            for (j, j2) in pairs:
                cj, cj2 = cols_of(j, length), cols_of(j2, length)
                built.append((length, eta,
                              [(u + v) * inv_sqrt2 for u, v in zip(cj, cj2)]))
            if selfj:
                built.append((length, eta, cols_of(selfj, length)))
            for (j, j2) in reversed(pairs):
                cj, cj2 = cols_of(j, length), cols_of(j2, length)
                built.append((length, -eta,
                              [(u - v) * inv_sqrt2 for u, v in zip(cj, cj2)]))
        offset += t

    used = [False] * len(built)
    ordered = []
    for (size, sign) in target_blocks:
        for b_idx, (bs, bsg, bcols) in enumerate(built):
            if not used[b_idx] and bs == size and bsg == sign:
                used[b_idx] = True
                ordered.append(bcols)
                break
        else:
            raise ValueError(
                "certificate does not produce a block of size %d with sign %+d"
                % (size, sign))
    if not all(used):
        raise ValueError("certificate produces more blocks than the target has")
    At = sla.block_diag(*[jordan_block(0.0, t) for t, _ in parts])
    P = np.column_stack([c for cols in ordered for c in cols])
    return At, P


def assemble_root(d, m, report, tol=DEFAULT_TOL):
    """Direct-sum the per-block constructions into a root of realize(d).

    Blocks at eigenvalue 0 are built collectively from the certificate's
    (t_k, eta_k); negative-eigenvalue blocks with m even are built per
    certificate pairing, covering both partners at once; everything else
    is per-block.  A global column permutation matches the descriptor's
    block order, so A = P^-1 Atilde P satisfies A^m = J and H J-selfadjointness
    exactly in structure, with roundoff-level residuals.
    """
    if not report.exists:
        raise ValueError("cannot construct: decision report says no root exists")
    ref = dsc.realize(d)
    n = d.order
    if m == 1:
        return RootResult(ref.B.copy(), np.eye(n, dtype=complex), 0.0, 0.0)
    cert = report.certificate
    partner = {}
    for (i, j) in cert.negative_pairing:
        partner[i] = j
        partner[j] = i

    pieces = []  # (Atilde, P, covered descriptor-block indices)
    zero_indices = []
    handled = set()
    for i, b in enumerate(d.blocks):
        if i in handled:
            continue
        if isinstance(b, dsc.PairBlock):
            At, Pp = root_block_conjugate_pair(b.eigenvalue, b.size, m)
            pieces.append((At, Pp, [i]))
            handled.add(i)
            continue
        kind = dsc.classify(b.eigenvalue, tol)
        if kind == "zero":
            zero_indices.append(i)
            handled.add(i)
        elif kind == "negative" and m % 2 == 0:
            if i not in partner:
                raise ValueError("negative block %d missing from certificate pairing" % i)
            j = partner[i]
            plus, minus = (i, j) if b.sign == +1 else (j, i)
            At, Pp = root_block_negative_even(b.eigenvalue, b.size, m, tol)
            pieces.append((At, Pp, [plus, minus]))
            handled.update((i, j))
        else:
            At, Pp = root_block_real(b.eigenvalue, b.size, b.sign, m)
            pieces.append((At, Pp, [i]))
            handled.add(i)
    if zero_indices:
        parts = list(zip(cert.zero_root_sizes, cert.etas))
        target = [(d.blocks[i].size, d.blocks[i].sign) for i in zero_indices]
        At, Pp = root_nilpotent(parts, target, m)
        pieces.append((At, Pp, zero_indices))

    X = sla.block_diag(*[p[0] for p in pieces])
    Pg = sla.block_diag(*[p[1] for p in pieces])
    src = 0
    col_of = {}
    for _, _, covered in pieces:
        for bi in covered:
            w = d.blocks[bi].order
            col_of[bi] = list(range(src, src + w))
            src += w
    order_cols = [c for i in range(len(d.blocks)) for c in col_of[i]]
    P = Pg[:, order_cols]
    A = np.linalg.solve(P, X @ P)
    r_pow, r_sa = _residuals(A, ref.B, ref.H, m)
    return RootResult(A, P, r_pow, r_sa)


def _residuals(A, B, H, m):
    r_pow = np.linalg.norm(np.linalg.matrix_power(A, m) - B) / max(np.linalg.norm(B), 1.0)
    r_sa = np.linalg.norm(H @ A - A.conj().T @ H) / max(
        np.linalg.norm(H) * np.linalg.norm(A), np.finfo(float).tiny)
    return float(r_pow), float(r_sa)


def transport(raw, canon_result, root, m):
    """Carry a root of the canonical pair back to raw coordinates.

    With S from canonicalization (S^-1 B_raw S = J, S* H_raw S = H_J) and
    A the root of (J, H_J), the matrix A_raw = S A S^-1 is an
    H_raw-selfadjoint m-th root of B_raw.
    """
    S = canon_result.S
    Sinv = np.linalg.inv(S)
    A_raw = S @ root.A @ Sinv
    P_raw = root.P @ Sinv
    r_pow, r_sa = _residuals(A_raw, raw.B, raw.H, m)
    return RootResult(A_raw, P_raw, r_pow, r_sa)
