"""Fixed spaces of the reversal matrices, their distinguished hyperplanes,
and the nonnegative simplicial cone inside the f-side fixed space.

Write E_h(m) for the space of row vectors fixed by U(m) and E_f(m) for the
space fixed by D(m); both have dimension ceil((m+1)/2).  The library spans
them the way the underlying theory does:

  E_h(m) = lin( boundary_h(k, m) : k = 1 or 2, 3 or 4, ..., m-1 ) + lin(ones)
  E_f(m) = the image of E_h(m) under v -> v . S(m)^(-1)
         = lin( boundary_f(k, m) : same parity family )  +  lin(binomial row)

where k runs over the integers below m of parity opposite to m (odd k for
even m, even k for odd m), ``ones`` is (1, ..., 1), and the binomial row is
(C(m+1,0), ..., C(m+1,m)) = ones . S(m)^(-1).  Dropping the last summand
leaves the hyperplanes H(m) (orthogonal complement of ones inside E_h) and
F(m) = H(m) . S(m)^(-1).

The cone generators are built by shifting simplex f-vectors:

  even m:  w_i = flower(i)   . T^i                      for 0 <= i <= m/2,
  odd  m:  w_i = flower(i+1) . T^i + flower(i) . T^(i+1) for 0 <= i <= (m-1)/2,

where flower(k) is the long f-vector of the full simplex on k vertices.  The
coordinates of w_i (and of w_i . S(m)) over columns 0..#gens-1 form a
unit-diagonal triangular matrix, so the generators are an integral basis of
the lattice points of their span, and membership questions reduce to an
exact triangular solve.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .exact_linalg import (
    Vector,
    binom,
    build_matrix,
    mat_pow,
    mat_vec,
    rank,
    sign_pow,
)
from .bases import basis_vectors, boundary_f, boundary_h

__all__ = [
    "ones",
    "binomial_row",
    "parity_family",
    "hyperplane_spanning",
    "eigenspace_spanning",
    "cone_generators",
    "generator_coords",
    "in_eigenspace",
    "in_cone",
    "table23_entry",
    "generator_image_check",
    "class_structure_verify",
    "same_span",
]


def ones(m: int) -> tuple[int, ...]:
    return (1,) * (m + 1)


def binomial_row(m: int) -> tuple[int, ...]:
    """(C(m+1,0), ..., C(m+1,m)); equals ones(m) . S(m)^(-1)."""
    return tuple(binom(m + 1, j) for j in range(m + 1))


def parity_family(m: int) -> tuple[int, ...]:
    """The k below m with k != m (mod 2): odd k for even m, even k for odd m."""
    start = 1 if m % 2 == 0 else 2
    return tuple(range(start, m, 2))


def hyperplane_spanning(which: str, m: int) -> tuple[Vector, ...]:
    """Spanning rows of H(m) (which='h') or F(m) (which='f')."""
    if which == "h":
        return tuple(boundary_h(k, m) for k in parity_family(m))
    if which == "f":
        return tuple(boundary_f(k, m) for k in parity_family(m))
    raise ValueError(f"which must be 'h' or 'f', got {which!r}")


def eigenspace_spanning(which: str, m: int) -> tuple[Vector, ...]:
    """Spanning rows of the full fixed space E_h(m) or E_f(m)."""
    base = hyperplane_spanning(which, m)
    tail = ones(m) if which == "h" else binomial_row(m)
    return base + (tail,)


def in_eigenspace(v: Vector, which: str, m: int) -> bool:
    """Exact fixed-vector test: v . U = v (h side) or v . D = v (f side)."""
    if len(v) != m + 1:
        raise ValueError(f"vector length {len(v)} != m+1 = {m + 1}")
    name = {"h": "U", "f": "D"}.get(which)
    if name is None:
        raise ValueError(f"which must be 'h' or 'f', got {which!r}")
    return mat_vec(v, build_matrix(name, m)) == tuple(v)


@lru_cache(maxsize=None)
def cone_generators(m: int) -> tuple[Vector, ...]:
    """The ceil((m+1)/2) nonnegative integer generators described above."""
    flower = basis_vectors("Flower", m)
    shift = build_matrix("T", m)
    if m % 2 == 0:
        return tuple(
            mat_vec(flower[i], mat_pow(shift, i)) for i in range(m // 2 + 1)
        )
    return tuple(
        tuple(
            a + b
            for a, b in zip(
                mat_vec(flower[i + 1], mat_pow(shift, i)),
                mat_vec(flower[i], mat_pow(shift, i + 1)),
            )
        )
        for i in range((m - 1) // 2 + 1)
    )


def generator_coords(v: Vector, m: int) -> tuple[Fraction, ...] | None:
    """Coordinates of v over the cone generators, or None if v is not in
    their span.

    The generator matrix restricted to its first columns is triangular with
    unit diagonal, so the candidate coordinates come from a forward solve;
    the remaining columns then verify span membership exactly.
    """
    gens = cone_generators(m)
    if len(v) != m + 1:
        raise ValueError(f"vector length {len(v)} != m+1 = {m + 1}")
    a = [Fraction(0)] * len(gens)
    for i in range(len(gens)):
        residue = Fraction(v[i]) - sum(a[t] * gens[t][i] for t in range(i))
        a[i] = residue  # gens[i][i] == 1
    recon = tuple(
        sum(a[t] * gens[t][j] for t in range(len(gens))) for j in range(m + 1)
    )
    if recon != tuple(Fraction(x) for x in v):
        return None
    return tuple(a)


def in_cone(v: Vector, m: int) -> bool:
    """Membership in the f-side fixed space intersected with the nonnegative
    orthant (the pointed cone the generators sit inside)."""
    return in_eigenspace(v, "f", m) and all(x >= 0 for x in v)


# ---------------------------------------------------------------------------
# Closed coordinate forms for the generators (Tables 2 and 3) and the
# palindromic image identities
# ---------------------------------------------------------------------------

def table23_entry(
    m: int, i: int, l: int, kind: str, image: bool = False
) -> Fraction:
    """Closed form for coordinate l of generator i (or of generator . S(m))
    with respect to one of the six bases; parity of m selects the table."""
    n_gens = m // 2 if m % 2 == 0 else (m - 1) // 2
    if not 0 <= i <= n_gens:
        raise ValueError(f"generator index {i} out of range 0..{n_gens} for m={m}")
    if not 0 <= l <= m:
        raise ValueError(f"need 0 <= l <= m, got l={l}")
    if m % 2 == 0:
        return _table2_entry(m, i, l, kind, image)
    return _table3_entry(m, i, l, kind, image)


def _table2_entry(m: int, i: int, l: int, kind: str, image: bool) -> Fraction:
    if not image:
        if kind == "S":
            return Fraction(binom(i, l - i))
        if kind == "Hdot":
            return Fraction(
                sum(
                    binom(i, s - i) * binom(m - s, m - l)
                    for s in range(i, min(2 * i, l) + 1)
                )
            )
        if kind == "Flower":
            return Fraction(sign_pow(l) * binom(i, l - i))
        if kind == "Hlower":
            return Fraction(
                sign_pow(l)
                * sum(
                    binom(i, s - i) * binom(s, m - l)
                    for s in range(max(i, m - l), 2 * i + 1)
                )
            )
        if kind == "Fupper":
            return Fraction(sign_pow(l - i) * binom(m - 2 * i, l - i))
        if kind == "Hupper":
            return Fraction(binom(i, m - l - i))
    else:
        if kind == "S":
            return Fraction(sign_pow(l - i) * binom(m - 2 * i, l - i))
        if kind == "Hdot":
            return Fraction(binom(i, l - i))
        if kind in ("Flower", "Fupper"):
            return Fraction(
                sign_pow(l - i)
                * sum(
                    binom(s, l) * binom(m - 2 * i, s - i)
                    for s in range(max(i, l), m - i + 1)
                )
            )
        if kind == "Hlower":
            return Fraction(sign_pow(l) * binom(i, l - i))
        if kind == "Hupper":
            return Fraction(sign_pow(l - i) * binom(m - 2 * i, l - i))
    raise ValueError(f"unknown basis kind {kind!r}")


def _table3_entry(m: int, i: int, l: int, kind: str, image: bool) -> Fraction:
    pair = binom(i + 1, l - i) + binom(i, l - i - 1)
    if not image:
        if kind == "S":
            return Fraction(pair)
        if kind == "Hdot":
            return Fraction(
                binom(m - i, m - l)
                + sum(
                    (binom(i + 1, s - i) + binom(i, s - i - 1)) * binom(m - s, m - l)
                    for s in range(i + 1, min(2 * i + 1, l) + 1)
                )
            )
        if kind == "Flower":
            return Fraction(sign_pow(l - 1) * (binom(i, l - i - 1) + binom(i + 1, l - i)))
        if kind == "Hlower":
            return Fraction(
                sign_pow(l - 1)
                * sum(
                    (binom(i + 1, s - i) + binom(i, s - i - 1)) * binom(s, m - l)
                    for s in range(max(i, m - l), 2 * i + 2)
                )
            )
        if kind == "Fupper":
            return Fraction(
                sign_pow(l - i - 1)
                * (binom(m - 2 * i - 1, m - l - i) - binom(m - 2 * i - 1, m - l - i - 1))
            )
        if kind == "Hupper":
            return Fraction(binom(i + 1, m - l - i) + binom(i, m - l - i - 1))
    else:
        if kind == "S":
            return Fraction(
                sign_pow(l - i - 1)
                * (binom(m - 2 * i - 1, m - l - i) - binom(m - 2 * i - 1, m - l - i - 1))
            )
        if kind == "Hdot":
            return Fraction(binom(i, l - i - 1) + binom(i + 1, l - i))
        if kind in ("Flower", "Fupper"):
            return Fraction(
                sign_pow(l - i)
                * sum(
                    (binom(m - 2 * i - 1, s - i) - binom(m - 2 * i - 1, s - i - 1))
                    * binom(s, l)
                    for s in range(max(i, l), m - i + 1)
                )
            )
        if kind == "Hlower":
            return Fraction(
                sign_pow(l - 1) * (binom(i, l - i - 1) + binom(i + 1, l - i))
            )
        if kind == "Hupper":
            return Fraction(
                sign_pow(l - i - 1)
                * (binom(m - 2 * i - 1, m - l - i) - binom(m - 2 * i - 1, m - l - i - 1))
            )
    raise ValueError(f"unknown basis kind {kind!r}")


def generator_image_check(m: int) -> dict:
    """Verify the closed coordinate forms of generator . S(m) and that each
    such image is palindromic (fixed by reversal)."""
    s_mat = build_matrix("S", m)
    failures = []
    checked = 0
    for i, gen in enumerate(cone_generators(m)):
        image = mat_vec(gen, s_mat)
        if image != tuple(reversed(image)):
            failures.append({"i": i, "m": m, "kind": "palindrome", "got": list(image)})
        for j in range(m + 1):
            if m % 2 == 0:
                expect = sign_pow(j - i) * binom(m - 2 * i, j - i)
            else:
                expect = sign_pow(j - i) * (
                    binom(m - 2 * i - 1, j - i) - binom(m - 2 * i - 1, j - i - 1)
                )
            checked += 1
            if image[j] != expect:
                failures.append(
                    {"i": i, "j": j, "m": m, "expected": expect, "got": image[j]}
                )
    return {"m": m, "checked": checked, "failures": failures, "ok": not failures}


# ---------------------------------------------------------------------------
# Span comparisons
# ---------------------------------------------------------------------------

def same_span(vecs_a, vecs_b) -> bool:
    """Exact equality of linear spans via three rank computations."""
    vecs_a = tuple(tuple(v) for v in vecs_a)
    vecs_b = tuple(tuple(v) for v in vecs_b)
    if not vecs_a and not vecs_b:
        return True
    ra = rank(vecs_a) if vecs_a else 0
    rb = rank(vecs_b) if vecs_b else 0
    return ra == rb == rank(vecs_a + vecs_b)


def class_structure_verify(m: int, points, *, complete: bool = True) -> dict:
    """Structural checks on matching-parity DS f-vectors.

    (i)  pointwise: for even m the last two coordinates are (m/2, 1) or
         (0, 0); for odd m they are (0, 0).
    (ii) the first t+1 boundary f-vectors of the parity family span the same
         space as the first t+1 cone generators, for every admissible t.
    (iii) every point lies in E_f(m) (m even) or F(m) (m odd); when
         ``complete`` the points are the whole class and must span it.
    """
    points = [tuple(p) for p in points]
    failures = []
    for p in points:
        if m % 2 == 0:
            ok = (p[m - 1], p[m]) in ((m // 2, 1), (0, 0))
        else:
            ok = p[m - 1] == 0 and p[m] == 0
        if not ok:
            failures.append({"part": "i", "point": list(p)})
    family = parity_family(m)
    gens = cone_generators(m)
    t_max = (m - 2) // 2 if m % 2 == 0 else (m - 3) // 2
    for t in range(t_max + 1):
        lhs = [boundary_f(family[i], m) for i in range(t + 1)]
        rhs = [gens[i] for i in range(t + 1)]
        if not same_span(lhs, rhs):
            failures.append({"part": "ii", "t": t})
    nonzero = [p for p in points if any(p)]
    target = (
        eigenspace_spanning("f", m) if m % 2 == 0 else hyperplane_spanning("f", m)
    )
    r_target = rank(target)
    for p in nonzero:
        if rank(target + (p,)) != r_target:
            failures.append({"part": "iii", "point": list(p)})
    if complete and nonzero and not same_span(nonzero, target):
        failures.append({"part": "iii", "reason": "points do not span the space"})
    return {"m": m, "points": len(points), "failures": failures, "ok": not failures}
