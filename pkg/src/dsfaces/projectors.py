"""Orthogonality facts about the boundary-complex vectors: exact squared
norms, biorthogonality across parity classes, and rational orthogonal
projectors onto the distinguished hyperplanes and onto single spanning lines.

The closed norm forms, for 1 <= k <= m:

  |boundary_h(k, m)|^2 = 2 (C(2(m-k), m-k) - (-1)^k C(2(m-k), m)),
  |boundary_f(k, m)|^2 = C(2k, k) - 1.

Boundary h-vectors of opposite parity are orthogonal: one is fixed by the
backward identity and the other is negated by it.

Projectors are built the Gram way, P = B^T (B B^T)^(-1) B, from the spanning
rows of H(m) or F(m); the result is an exact rational matrix that is
symmetric and idempotent and annihilates the orthogonal complement.  The
rank-1 projector onto a single boundary vector has an entirely explicit
entry formula, reproduced here and checked against the Gram construction.
"""

from __future__ import annotations

from fractions import Fraction

from .exact_linalg import (
    Matrix,
    binom,
    dot,
    inverse,
    mat_mul,
    mat_transpose,
    sign_pow,
)
from .bases import boundary_h, fh_bar
from .spaces import hyperplane_spanning


def norm_sq(vec: str, k: int, m: int) -> int:
    """Closed-form squared norm of the boundary f- or h-vector."""
    if not 1 <= k <= m:
        raise ValueError(f"need 1 <= k <= m, got k={k}, m={m}")
    if vec == "h":
        return 2 * (binom(2 * (m - k), m - k) - sign_pow(k) * binom(2 * (m - k), m))
    if vec == "f":
        return binom(2 * k, k) - 1
    raise ValueError(f"vec must be 'f' or 'h', got {vec!r}")


def biorthogonality_check(s: int, t: int, m: int) -> bool:
    """Exact orthogonality of boundary h-vectors of opposite parity."""
    if not (1 <= s <= m and 1 <= t <= m):
        raise ValueError(f"need 1 <= s, t <= m, got s={s}, t={t}, m={m}")
    if (s - t) % 2 == 0:
        raise ValueError("biorthogonality applies to s, t of opposite parity")
    return dot(boundary_h(s, m), boundary_h(t, m)) == 0


def projection_matrix(rows) -> Matrix:
    """P = B^T (B B^T)^(-1) B for a tuple of linearly independent rows."""
    b = tuple(tuple(Fraction(x) for x in row) for row in rows)
    bt = mat_transpose(b)
    gram_inv = inverse(mat_mul(b, bt))
    return mat_mul(mat_mul(bt, gram_inv), b)


def subspace_projector(which: str, m: int) -> Matrix:
    """Orthogonal projector onto H(m) (which='H') or F(m) (which='F')."""
    key = {"H": "h", "F": "f"}.get(which)
    if key is None:
        raise ValueError(f"which must be 'H' or 'F', got {which!r}")
    return projection_matrix(hyperplane_spanning(key, m))


def line_projector(vec: str, k: int, m: int) -> Matrix:
    """Gram-built rank-1 projector onto the boundary f- or h-vector line."""
    return projection_matrix((fh_bar(vec, k, m),))


def rank1_projector_entry(vec: str, k: int, i: int, j: int, m: int) -> Fraction:
    """Closed-form (i, j) entry of the rank-1 projector onto the boundary
    vector line: numerator v_i v_j, denominator the closed-form norm."""
    if not 1 <= k <= m:
        raise ValueError(f"need 1 <= k <= m, got k={k}, m={m}")
    if not (0 <= i <= m and 0 <= j <= m):
        raise ValueError(f"indices out of range: i={i}, j={j}, m={m}")
    if vec == "h":
        num = (
            sign_pow(i + j)
            * (binom(m - k, i) - sign_pow(k) * binom(m - k, i - k))
            * (binom(m - k, j) - sign_pow(k) * binom(m - k, j - k))
        )
        return Fraction(num, norm_sq("h", k, m))
    if vec == "f":
        # v_i = C(k, i) - delta_{k,i}: the delta matters on row/column k.
        num = (binom(k, i) - int(i == k)) * (binom(k, j) - int(j == k))
        return Fraction(num, norm_sq("f", k, m))
    raise ValueError(f"vec must be 'f' or 'h', got {vec!r}")
