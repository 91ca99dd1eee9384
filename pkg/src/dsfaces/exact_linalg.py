"""Exact linear algebra for the structured matrix families of the library.

Everything here is computed over the integers or exact rationals
(``fractions.Fraction``); no floating point is used anywhere.  Matrices are
immutable tuples of row tuples, indexed from zero in both axes, and vectors
are row vectors (tuples) that act on matrices from the left: ``v @ M`` is
``mat_vec(v, M)``.

The named matrix families, all of size (m+1) x (m+1) for an integer m >= 2:

  U      backward identity, entry delta_{i+j,m}; an involutive permutation
         matrix whose fixed row vectors are the palindromic ones.
  T      forward shift, entry delta_{j-i,1}; ``v . T^k`` shifts v right by k.
  I      identity.
  S      upper-triangular signed Pascal matrix, entry (-1)^(j-i) C(m-i, j-i).
         Row k is the long h-vector of a single face of size k, so the map
         v -> v.S carries long f-vectors to long h-vectors.
  S_inv  inverse of S, entry C(m-i, j-i).
  D      S . U . S_inv, entry (-1)^(m-i) C(i, j); lower triangular, acts on
         long f-vectors as U acts on long h-vectors.

Determinants and ranks use fraction-free (Bareiss) elimination; the
characteristic polynomial is computed by the same elimination carried out
over the polynomial ring Z[lambda].
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm

Vector = tuple
Matrix = tuple

MATRIX_NAMES = ("U", "T", "I", "S", "S_inv", "D")

#: Largest matrix admitted to the exhaustive total-unimodularity minor scan.
MINOR_SCAN_CAP = 7


class SingularMatrixError(ValueError):
    """Inversion was requested for a singular matrix."""


class MinorScanTooLargeError(ValueError):
    """Total-unimodularity scan refused: too many minors."""


def binom(n: int, k: int) -> int:
    """C(n, k) with the usual convention that out-of-range k gives 0."""
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def sign_pow(e: int) -> int:
    """(-1)**e as an exact int, defined for negative e as well."""
    return -1 if e % 2 else 1


def _require_m(m: int) -> None:
    if not isinstance(m, int) or m < 2:
        raise ValueError(f"m must be an integer >= 2, got {m!r}")


@lru_cache(maxsize=None)
def build_matrix(name: str, m: int) -> Matrix:
    """Construct one of the named (m+1) x (m+1) integer matrix families."""
    _require_m(m)
    n = m + 1
    if name == "U":
        return tuple(tuple(int(i + j == m) for j in range(n)) for i in range(n))
    if name == "T":
        return tuple(tuple(int(j - i == 1) for j in range(n)) for i in range(n))
    if name == "I":
        return identity_matrix(n)
    if name == "S":
        return tuple(
            tuple(sign_pow(j - i) * binom(m - i, j - i) for j in range(n))
            for i in range(n)
        )
    if name == "S_inv":
        return tuple(
            tuple(binom(m - i, j - i) for j in range(n)) for i in range(n)
        )
    if name == "D":
        return tuple(
            tuple(sign_pow(m - i) * binom(i, j) for j in range(n))
            for i in range(n)
        )
    raise ValueError(f"unknown matrix name {name!r}; expected one of {MATRIX_NAMES}")


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise ValueError("dimension mismatch in mat_mul")
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(v: Vector, a: Matrix) -> Vector:
    """Row vector times matrix: (v . a)_j = sum_i v_i a_ij."""
    if len(v) != len(a):
        raise ValueError("dimension mismatch in mat_vec")
    return tuple(
        sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0]))
    )


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_pow(a: Matrix, k: int) -> Matrix:
    if k < 0:
        raise ValueError("negative matrix power")
    out = identity_matrix(len(a))
    for _ in range(k):
        out = mat_mul(out, a)
    return out


def dot(v: Vector, w: Vector) -> int:
    return sum(x * y for x, y in zip(v, w, strict=True))


# ---------------------------------------------------------------------------
# Fraction-free elimination
# ---------------------------------------------------------------------------

def _integer_rows(mat: Matrix) -> list[list[int]]:
    """Copy of ``mat`` with each row scaled to integers (rank-preserving)."""
    rows = []
    for row in mat:
        den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        rows.append([int(Fraction(x) * den) for x in row])
    return rows


def det(mat: Matrix) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    a = [list(row) for row in mat]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("det requires a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1] if n else 1

def rank(mat: Matrix) -> int:
    """Exact rank; accepts integer or Fraction entries."""
    a = _integer_rows(mat)
    if not a:
        return 0
    n_rows, n_cols = len(a), len(a[0])
    piv = 0
    prev = 1
    for c in range(n_cols):
        if piv == n_rows:
            break
        for r in range(piv, n_rows):
            if a[r][c] != 0:
                a[piv], a[r] = a[r], a[piv]
                break
        else:
            continue
        pivot = a[piv][c]
        for i in range(piv + 1, n_rows):
            aic = a[i][c]
            for j in range(c + 1, n_cols):
                a[i][j] = (a[i][j] * pivot - aic * a[piv][j]) // prev
            a[i][c] = 0
        prev = pivot
        piv += 1
    return piv


def inverse(mat: Matrix) -> Matrix:
    """Exact inverse over the rationals (Gauss-Jordan).

    Raises SingularMatrixError for singular input instead of failing deeper.
    """
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("inverse requires a square matrix")
    a = [[Fraction(x) for x in row] for row in mat]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        for r in range(c, n):
            if a[r][c] != 0:
                a[c], a[r] = a[r], a[c]
                inv[c], inv[r] = inv[r], inv[c]
                break
        else:
            raise SingularMatrixError("matrix is singular, no inverse")
        pivot = a[c][c]
        a[c] = [x / pivot for x in a[c]]
        inv[c] = [x / pivot for x in inv[c]]
        for r in range(n):
            if r == c or a[r][c] == 0:
                continue
            factor = a[r][c]
            a[r] = [x - factor * y for x, y in zip(a[r], a[c])]
            inv[r] = [x - factor * y for x, y in zip(inv[r], inv[c])]
    return tuple(tuple(row) for row in inv)


def is_totally_unimodular(mat: Matrix, max_size: int = MINOR_SCAN_CAP) -> bool:
    """Exhaustively check that every square minor lies in {-1, 0, 1}.

    The scan is combinatorial, so matrices larger than ``max_size`` in either
    dimension are refused with MinorScanTooLargeError.
    """
    n_rows = len(mat)
    n_cols = len(mat[0]) if n_rows else 0
    if n_rows > max_size or n_cols > max_size:
        count = sum(
            comb(n_rows, k) * comb(n_cols, k)
            for k in range(1, min(n_rows, n_cols) + 1)
        )
        raise MinorScanTooLargeError(
            f"minor scan too large: {n_rows}x{n_cols} matrix has {count} "
            f"square minors (cap is {max_size}x{max_size})"
        )
    for k in range(1, min(n_rows, n_cols) + 1):
        for rows in itertools.combinations(range(n_rows), k):
            for cols in itertools.combinations(range(n_cols), k):
                sub = tuple(tuple(mat[r][c] for c in cols) for r in rows)
                if det(sub) not in (-1, 0, 1):
                    return False
    return True


# ---------------------------------------------------------------------------
# Integer polynomials (coefficients ascending by power)
# ---------------------------------------------------------------------------

def poly_trim(p) -> tuple[int, ...]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_add(p, q) -> tuple[int, ...]:
    n = max(len(p), len(q))
    return poly_trim(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
        for i in range(n)
    )


def poly_sub(p, q) -> tuple[int, ...]:
    n = max(len(p), len(q))
    return poly_trim(
        (p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0)
        for i in range(n)
    )


def poly_mul(p, q) -> tuple[int, ...]:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_trim(out)


def poly_pow(p, k: int) -> tuple[int, ...]:
    out = (1,)
    for _ in range(k):
        out = poly_mul(out, p)
    return out


def poly_div_exact(p, q) -> tuple[int, ...]:
    """Quotient p / q in Z[x]; raises if the division is not exact."""
    p = list(poly_trim(p))
    q = poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    if not p:
        return ()
    out = [0] * (len(p) - len(q) + 1)
    lead = q[-1]
    for i in range(len(out) - 1, -1, -1):
        head = p[i + len(q) - 1]
        if head % lead:
            raise ValueError("inexact polynomial division")
        c = head // lead
        out[i] = c
        if c:
            for j, b in enumerate(q):
                p[i + j] -= c * b
    if any(p):
        raise ValueError("inexact polynomial division")
    return poly_trim(out)


def poly_eval(p, x: int) -> int:
    out = 0
    for c in reversed(p):
        out = out * x + c
    return out


def root_multiplicity(p, root: int) -> int:
    """Multiplicity of an integer root of p (0 if not a root)."""
    mult = 0
    p = poly_trim(p)
    while p and poly_eval(p, root) == 0:
        p = poly_div_exact(p, (-root, 1))
        mult += 1
    return mult


def _poly_det_bareiss(a: list[list[tuple[int, ...]]]) -> tuple[int, ...]:
    """Determinant of a matrix over Z[x] by fraction-free elimination."""
    n = len(a)
    sign = 1
    prev: tuple[int, ...] = (1,)
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ()
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = poly_sub(poly_mul(a[i][j], pivot), poly_mul(aik, a[k][j]))
                a[i][j] = poly_div_exact(num, prev)
            a[i][k] = ()
        prev = pivot
    result = a[n - 1][n - 1]
    return result if sign == 1 else poly_trim(-c for c in result)


def char_poly_U(m: int) -> tuple[int, ...]:
    """Coefficients of det(lambda I - U(m)), ascending, by exact elimination."""
    _require_m(m)
    n = m + 1
    a = [
        [
            poly_trim((-int(i + j == m), int(i == j)))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return _poly_det_bareiss(a)


def char_poly_U_product_form(m: int) -> tuple[int, ...]:
    """The same polynomial as the explicit product.

    (lambda - 1)^ceil((m+1)/2) (lambda + 1)^floor((m+1)/2): eigenvalue 1 with
    multiplicity ceil((m+1)/2) and eigenvalue -1 with the complementary one.
    """
    _require_m(m)
    plus = (m + 2) // 2
    minus = (m + 1) // 2
    return poly_mul(poly_pow((-1, 1), plus), poly_pow((1, 1), minus))


def krawtchouk_expansion(t: int, i: int) -> tuple[int, ...]:
    """Coefficient list of (1 - lambda)^i (1 + lambda)^(t-i).

    The s-th coefficient is the Krawtchouk value K_s(t, i).  For t = m + 1 and
    i = ceil((m+1)/2) this equals (-1)^i times det(lambda I - U(m)): the
    binomial product is monic only when i is even.
    """
    if not 0 <= i <= t:
        raise ValueError(f"need 0 <= i <= t, got i={i}, t={t}")
    return poly_mul(poly_pow((1, -1), i), poly_pow((1, 1), t - i))
