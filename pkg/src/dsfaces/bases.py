"""Six bases of R^(m+1) built from a maximal chain of faces, with the closed
coordinate formulas of the punctured-simplex vectors in each of them.

Fix a chain F_0 < F_1 < ... < F_m with |F_k| = k (canonically F_k = {1..k};
the vectors below depend only on the cardinalities, which the tests verify on
random chains).  The families, each an ordered (m+1)-tuple of row vectors:

  S        standard basis: long f-vectors of the single-face systems {F_k}.
  Hdot     long h-vectors of the single-face systems (the rows of S(m)).
  Flower   long f-vectors of the lower intervals [empty, F_k] (simplices).
  Hlower   long h-vectors of the lower intervals.
  Fupper   long f-vectors of the upper intervals [F_(m-k), F_m].
  Hupper   long h-vectors of the upper intervals: the standard basis reversed.

``boundary_f(k, m)`` / ``boundary_h(k, m)`` are the long vectors of the
boundary complex on [k] (all subsets of [k] except [k] itself); their closed
forms are

  f_l = C(k,l) - delta_{k,l},
  h_l = (-1)^l (C(m-k,l) - (-1)^k C(m-k,l-k)),

and ``table1_entry`` evaluates, exactly as printed, the coordinate of either
vector with respect to any of the six bases.  ``verify_table1`` replays every
closed form against an independent exact solve.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .exact_linalg import (
    Matrix,
    Vector,
    binom,
    inverse,
    mat_vec,
    rank,
    sign_pow,
)
from .face_systems import FaceSystem, boolean_interval, long_f, long_h

BASIS_KINDS = ("S", "Hdot", "Flower", "Hlower", "Fupper", "Hupper")


def canonical_chain(m: int) -> tuple[frozenset, ...]:
    """F_k = {1, ..., k} for k = 0..m."""
    return tuple(frozenset(range(1, k + 1)) for k in range(m + 1))


def bases_from_chain(chain, m: int) -> dict[str, tuple[Vector, ...]]:
    """Build all six families from an explicit chain of faces.

    Everything is computed from actual face systems; no closed forms.
    """
    if len(chain) != m + 1 or any(len(chain[k]) != k for k in range(m + 1)):
        raise ValueError("chain must have |F_k| = k for k = 0..m")
    single = [FaceSystem(m, [chain[k]]) for k in range(m + 1)]
    lower = [boolean_interval(chain[0], chain[k], m) for k in range(m + 1)]
    upper = [boolean_interval(chain[m - k], chain[m], m) for k in range(m + 1)]
    return {
        "S": tuple(long_f(fs) for fs in single),
        "Hdot": tuple(long_h(fs) for fs in single),
        "Flower": tuple(long_f(fs) for fs in lower),
        "Hlower": tuple(long_h(fs) for fs in lower),
        "Fupper": tuple(long_f(fs) for fs in upper),
        "Hupper": tuple(long_h(fs) for fs in upper),
    }


@lru_cache(maxsize=None)
def six_bases(m: int) -> dict[str, tuple[Vector, ...]]:
    """The six families for the canonical chain, checked to be bases."""
    out = bases_from_chain(canonical_chain(m), m)
    for kind, vectors in out.items():
        if rank(vectors) != m + 1:
            raise AssertionError(f"family {kind} is not a basis for m={m}")
    return out


def basis_vectors(kind: str, m: int) -> tuple[Vector, ...]:
    if kind not in BASIS_KINDS:
        raise ValueError(f"unknown basis kind {kind!r}; expected one of {BASIS_KINDS}")
    return six_bases(m)[kind]


@lru_cache(maxsize=None)
def _basis_inverse(kind: str, m: int) -> Matrix:
    return inverse(basis_vectors(kind, m))


def coords(w: Vector, kind: str, m: int) -> tuple[Fraction, ...]:
    """Exact coordinates of w in the named basis: the unique c with c . B = w."""
    if len(w) != m + 1:
        raise ValueError(f"vector length {len(w)} != m+1 = {m + 1}")
    return tuple(Fraction(x) for x in mat_vec(w, _basis_inverse(kind, m)))


# ---------------------------------------------------------------------------
# Punctured simplex (boundary complex) vectors and Table 1
# ---------------------------------------------------------------------------

def _require_k(k: int, m: int) -> None:
    if not 1 <= k <= m:
        raise ValueError(f"need 1 <= k <= m, got k={k}, m={m}")


def boundary_f(k: int, m: int) -> tuple[int, ...]:
    """Long f-vector of the boundary complex on [k]: C(k,l) - delta_{k,l}."""
    _require_k(k, m)
    return tuple(binom(k, l) - int(k == l) for l in range(m + 1))


def boundary_h(k: int, m: int) -> tuple[int, ...]:
    """Long h-vector of the boundary complex on [k]."""
    _require_k(k, m)
    return tuple(
        sign_pow(l) * (binom(m - k, l) - sign_pow(k) * binom(m - k, l - k))
        for l in range(m + 1)
    )


def fh_bar(vec: str, k: int, m: int) -> tuple[int, ...]:
    """Dispatch: the boundary-complex long f- or h-vector."""
    if vec == "f":
        return boundary_f(k, m)
    if vec == "h":
        return boundary_h(k, m)
    raise ValueError(f"vec must be 'f' or 'h', got {vec!r}")


def _pow2(e: int) -> Fraction:
    return Fraction(2) ** e


def table1_entry(vec: str, kind: str, k: int, l: int, m: int) -> Fraction:
    """Closed form for coordinate l of the boundary f/h-vector in a basis.

    Twelve explicit formulas, implemented term by term with no algebraic
    simplification, so a transcription slip fails the verifier instead of
    hiding inside a rearrangement.
    """
    _require_k(k, m)
    if not 0 <= l <= m:
        raise ValueError(f"need 0 <= l <= m, got l={l}, m={m}")
    if kind not in BASIS_KINDS:
        raise ValueError(f"unknown basis kind {kind!r}")
    if vec == "h":
        if kind == "S":
            return Fraction(
                sign_pow(l) * (binom(m - k, l) - sign_pow(k) * binom(m - k, l - k))
            )
        if kind == "Hdot":
            return Fraction(binom(k, l) - int(k == l))
        if kind == "Flower":
            return sign_pow(l) * (
                _pow2(m - k - l) * binom(m - k, l)
                - sign_pow(k)
                * sum(binom(m - k, s - k) * binom(s, l) for s in range(l, m + 1))
            )
        if kind == "Hlower":
            return Fraction(sign_pow(k - l) * (int(k == l) - binom(k, l)))
        if kind == "Fupper":
            return Fraction(
                sign_pow(m - l)
                * sum(
                    (binom(m - k, s) - sign_pow(k) * binom(m - k, s - k))
                    * binom(m - s, l)
                    for s in range(m + 1)
                )
            )
        if kind == "Hupper":
            return Fraction(
                sign_pow(m - l) * (binom(m - k, l - k) - sign_pow(k) * binom(m - k, l))
            )
    elif vec == "f":
        if kind == "S":
            return Fraction(binom(k, l) - int(k == l))
        if kind == "Hdot":
            return Fraction(
                sum(binom(k, s) * binom(m - s, m - l) for s in range(min(k, l) + 1))
                - binom(m - k, m - l)
            )
        if kind == "Flower":
            return Fraction(sign_pow(k - l) * (int(k == l) - binom(k, l)))
        if kind == "Hlower":
            return sign_pow(m - l) * binom(k, m - l) * (_pow2(k + l - m) - 1)
        if kind == "Fupper":
            # The first term needs the (-1)^(m-l) factor: without it the
            # formula disagrees with the exact solve already at
            # m=2, k=1, l=1 (0 instead of -2).
            return Fraction(
                sign_pow(m - l) * binom(m - k, m - l)
                - sign_pow(m - k - l) * binom(m - k, l)
            )
        if kind == "Hupper":
            return Fraction(binom(k, m - l) - int(k == m - l))
    raise ValueError(f"vec must be 'f' or 'h', got {vec!r}")


def verify_table1(m: int) -> dict:
    """Replay every Table-1 closed form against an exact coordinate solve."""
    checked = 0
    failures = []
    for vec in ("f", "h"):
        for k in range(1, m + 1):
            target = fh_bar(vec, k, m)
            for kind in BASIS_KINDS:
                expect = coords(target, kind, m)
                for l in range(m + 1):
                    got = table1_entry(vec, kind, k, l, m)
                    checked += 1
                    if got != expect[l]:
                        failures.append(
                            {
                                "vec": vec,
                                "kind": kind,
                                "k": k,
                                "l": l,
                                "m": m,
                                "expected": str(expect[l]),
                                "got": str(got),
                            }
                        )
    return {"m": m, "checked": checked, "failures": failures, "ok": not failures}
