"""Symbolic model of canonical pairs (J, H) in an indefinite inner product.

A canonical pair is a direct sum of primitive blocks of two kinds:

* a real-eigenvalue Jordan block ``J_k(lambda)`` carrying a sign
  ``eps in {+1, -1}``, with H-part ``eps * Q_k``;
* a conjugate pair ``J_k(lambda) + J_k(conj(lambda))`` for a nonreal
  eigenvalue (stored with ``im > 0``), with H-part ``Q_{2k}`` and no sign.

``Q_n`` is the sip matrix (ones on the anti-diagonal).  The descriptor is
the symbolic object; ``realize`` materializes it into dense matrices, and
``scramble`` produces similarity-equivalent pairs for testing the
reduction machinery.
"""

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-9


def sip(n):
    """Return the n-by-n sip matrix Q_n (ones on the anti-diagonal)."""
    return np.eye(n, dtype=complex)[::-1].copy()


def jordan_block(lam, n):
    """Return the upper Jordan block J_n(lam) as a complex array."""
    J = np.eye(n, dtype=complex) * lam
    for i in range(n - 1):
        J[i, i + 1] = 1.0
    return J


@dataclass(frozen=True)
class RealBlock:
    """Jordan block with real eigenvalue and a sign attached to its H-part."""

    eigenvalue: float
    size: int
    sign: int

    @property
    def order(self):
        return self.size


@dataclass(frozen=True)
class PairBlock:
    """Conjugate pair of Jordan blocks for a nonreal eigenvalue (im > 0).

    The H-part is the sip matrix of order ``2 * size``; no sign is
    attached (none exists in the canonical form for nonreal eigenvalues).
    """

    eigenvalue: complex
    size: int

    @property
    def order(self):
        return 2 * self.size


@dataclass(frozen=True)
class Descriptor:
    """Ordered list of blocks describing a canonical pair (J, H)."""

    blocks: tuple

    def __init__(self, blocks):
        object.__setattr__(self, "blocks", tuple(blocks))

    @property
    def order(self):
        return sum(b.order for b in self.blocks)


@dataclass(frozen=True)
class SegreCharacteristic:
    """Non-increasing Jordan block sizes at a fixed eigenvalue."""

    eigenvalue: complex
    sizes: tuple

    def __init__(self, eigenvalue, sizes):
        object.__setattr__(self, "eigenvalue", eigenvalue)
        object.__setattr__(self, "sizes", tuple(sizes))


@dataclass(frozen=True)
class MatrixPair:
    """Dense pair (B, H) with H Hermitian invertible and HB = B*H."""

    B: np.ndarray
    H: np.ndarray

    def __init__(self, B, H):
        object.__setattr__(self, "B", np.asarray(B, dtype=complex))
        object.__setattr__(self, "H", np.asarray(H, dtype=complex))


def classify(lam, tol=DEFAULT_TOL):
    """Classify an eigenvalue as 'zero', 'positive', 'negative' or 'nonreal'.

    An eigenvalue is real when |im| <= tol*(1+|re|) and zero when
    |lam| <= tol.
    """
    lam = complex(lam)
    if abs(lam) <= tol:
        return "zero"
    if abs(lam.imag) <= tol * (1.0 + abs(lam.real)):
        return "positive" if lam.real > 0 else "negative"
    return "nonreal"


def validate(d):
    """Check descriptor invariants.  Returns a list of violations (empty = ok).

    Each violation is a string naming the offending block index and rule;
    violations are data, not exceptions.
    """
    violations = []
    if not d.blocks:
        violations.append("block 0: order must be >= 1 (empty block list)")
        return violations
    for i, b in enumerate(d.blocks):
        if isinstance(b, RealBlock):
            if not np.isfinite(b.eigenvalue):
                violations.append("block %d: eigenvalue must be finite" % i)
            if not (isinstance(b.size, (int, np.integer)) and b.size >= 1):
                violations.append("block %d: size must be a positive integer" % i)
            if b.sign not in (+1, -1):
                violations.append("block %d: sign must be +1 or -1" % i)
        elif isinstance(b, PairBlock):
            lam = complex(b.eigenvalue)
            if not (np.isfinite(lam.real) and np.isfinite(lam.imag)):
                violations.append("block %d: eigenvalue must be finite" % i)
            elif lam.imag <= 0:
                violations.append("block %d: imaginary part must be positive" % i)
            if not (isinstance(b.size, (int, np.integer)) and b.size >= 1):
                violations.append("block %d: size must be a positive integer" % i)
        else:
            violations.append("block %d: unknown block kind %r" % (i, type(b).__name__))
    return violations


def realize(d):
    """Materialize a descriptor into the dense pair (J, H).

    Conjugate pairs expand to J_k(lam) + J_k(conj lam) with H-part Q_{2k};
    real blocks to J_k(lam) with H-part sign * Q_k.  Entries are exact
    (0, +-1 and the eigenvalues themselves), so HJ = J*H holds exactly.
    """
    bad = validate(d)
    if bad:
        raise ValueError("invalid descriptor: " + "; ".join(bad))
    n = d.order
    J = np.zeros((n, n), dtype=complex)
    H = np.zeros((n, n), dtype=complex)
    at = 0
    for b in d.blocks:
        k = b.size
        if isinstance(b, RealBlock):
            J[at:at + k, at:at + k] = jordan_block(b.eigenvalue, k)
            H[at:at + k, at:at + k] = b.sign * sip(k)
            at += k
        else:
            lam = complex(b.eigenvalue)
            J[at:at + k, at:at + k] = jordan_block(lam, k)
            J[at + k:at + 2 * k, at + k:at + 2 * k] = jordan_block(lam.conjugate(), k)
            H[at:at + 2 * k, at:at + 2 * k] = sip(2 * k)
            at += 2 * k
    return MatrixPair(J, H)


def segre_at(d, lam0, tol=DEFAULT_TOL):
    """Sizes of all blocks with eigenvalue within tol of lam0, non-increasing.

    Conjugate-pair blocks match through either lam or conj(lam); the empty
    list means lam0 is not an eigenvalue.
    """
    lam0 = complex(lam0)
    sizes = []
    for b in d.blocks:
        if isinstance(b, RealBlock):
            if abs(b.eigenvalue - lam0) <= tol:
                sizes.append(b.size)
        else:
            lam = complex(b.eigenvalue)
            if abs(lam - lam0) <= tol or abs(lam.conjugate() - lam0) <= tol:
                sizes.append(b.size)
    return SegreCharacteristic(lam0, sorted(sizes, reverse=True))


def _haar_unitary(n, rng):
    # QR of a Ginibre matrix with the R-diagonal phase fix gives Haar measure.
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(G)
    ph = np.diag(R).copy()
    ph /= np.abs(ph)
    return Q * ph


def scramble(d, seed, conditioning=10.0):
    """Produce a similarity-equivalent raw pair (S^-1 J S, S* H S) and S.

    S = U diag(g) V with U, V Haar unitary and g log-spaced in
    [1, conditioning], so cond_2(S) equals `conditioning` exactly.
    Reproducible from `seed`.
    """
    if conditioning < 1.0:
        raise ValueError("conditioning must be >= 1")
    pair = realize(d)
    n = d.order
    rng = np.random.default_rng(seed)
    if conditioning == 1.0:
        S = np.eye(n, dtype=complex) if n > 0 else np.eye(0)
    else:
        U = _haar_unitary(n, rng)
        V = _haar_unitary(n, rng)
        g = np.exp(rng.uniform(0.0, np.log(conditioning), size=n))
        if n >= 2:
            g[0], g[-1] = 1.0, conditioning
        S = U @ np.diag(g) @ V
    B = np.linalg.solve(S, pair.B @ S)
    H = S.conj().T @ pair.H @ S
    H = 0.5 * (H + H.conj().T)  # keep H exactly Hermitian
    return MatrixPair(B, H), S


def pair_violations(B, H, tol=DEFAULT_TOL):
    """Check the raw-pair invariants; returns a list of violations.

    H must be Hermitian within tol, invertible (smallest singular value
    above tol * ||H||), and HB = B*H within tol (relative).
    """
    B = np.asarray(B, dtype=complex)
    H = np.asarray(H, dtype=complex)
    violations = []
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        violations.append("B must be square")
    if H.shape != B.shape:
        violations.append("H must have the same shape as B")
    if violations:
        return violations
    hnorm = max(np.linalg.norm(H), 1.0)
    if np.linalg.norm(H - H.conj().T) > tol * hnorm:
        violations.append("H is not Hermitian within tolerance")
    sv = np.linalg.svd(H, compute_uv=False)
    if sv[-1] <= tol * max(sv[0], 1.0):
        violations.append("H is singular within tolerance")
    r = np.linalg.norm(H @ B - B.conj().T @ H)
    scale = max(np.linalg.norm(H) * np.linalg.norm(B), 1.0)
    if r > max(tol, 1e-7) * scale:
        violations.append("HB = B*H fails: relative residual %.3e" % (r / scale))
    return violations


# ---------------------------------------------------------------------------
# JSON serialization (descriptor schema and [re, im] matrix encoding)

def matrix_to_lists(M):
    """Encode a complex matrix as row-major nested lists of [re, im] pairs."""
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def matrix_from_lists(rows):
    """Decode the [re, im] nested-list encoding back into a complex array."""
    try:
        M = np.array([[complex(e[0], e[1]) for e in row] for row in rows])
    except (TypeError, IndexError) as exc:
        raise ValueError("matrix entries must be [re, im] pairs") from exc
    if M.ndim != 2:
        raise ValueError("matrix must be a rectangular list of rows")
    return M


def descriptor_to_dict(d):
    """Encode a descriptor into the {"blocks": [...]} JSON schema."""
    blocks = []
    for b in d.blocks:
        if isinstance(b, RealBlock):
            blocks.append({"kind": "real", "lambda": float(b.eigenvalue),
                           "size": int(b.size), "sign": int(b.sign)})
        else:
            lam = complex(b.eigenvalue)
            blocks.append({"kind": "pair", "lambda": [lam.real, lam.imag],
                           "size": int(b.size)})
    return {"blocks": blocks}


def descriptor_from_dict(data):
    """Decode the {"blocks": [...]} JSON schema into a Descriptor."""
    if not isinstance(data, dict) or "blocks" not in data:
        raise ValueError("descriptor JSON must be an object with a 'blocks' list")
    blocks = []
    for i, spec in enumerate(data["blocks"]):
        kind = spec.get("kind")
        if kind == "real":
            blocks.append(RealBlock(float(spec["lambda"]), int(spec["size"]),
                                    int(spec["sign"])))
        elif kind == "pair":
            re, im = spec["lambda"]
            blocks.append(PairBlock(complex(re, im), int(spec["size"])))
        else:
            raise ValueError("block %d: kind must be 'real' or 'pair'" % i)
    return Descriptor(blocks)
