"""Membership tests for the rational polytopes cut out by the fixed-space
equations and the binomial box, plus the DS-system count carried by each
lattice point.

For m >= 2 and the componentwise box 0 <= x <= (C(m,0), ..., C(m,m)):

  box (Pi)   the box itself; it is the convex hull of the 2^(m+1) vertex
             sums of the scaled standard vectors, which collapses to a
             coordinatewise test.
  Qf         the f-side polytope { x : x . (I - D(m)) = 0 } inside the box;
             its nonzero lattice points are exactly the long f-vectors of
             DS-systems whose size matches m mod 2.
  Pf         the z_0 = 0 slice of Qf, defined for even m only; Qf is the
             prism Pf + [0, e_0].
  Qh         the image of Qf under v -> v . S(m): equivalently
             { x : x . (I - U(m)) = 0 } with x . S(m)^(-1) in the box.

A lattice point z of Qf accounts for prod_k C(C(m,k), z_k) distinct
DS-systems (choose which faces of each cardinality appear).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact_linalg import (
    binom,
    build_matrix,
    identity_matrix,
    mat_sub,
    mat_vec,
)

POLYTOPE_LABELS = ("Qf", "Pf", "Qh", "Pi")


def default_bounds(m: int) -> tuple[int, ...]:
    return tuple(binom(m, k) for k in range(m + 1))


@dataclass(frozen=True)
class PolytopeHandle:
    label: str
    m: int
    bounds: tuple = None

    def __post_init__(self):
        if self.label not in POLYTOPE_LABELS:
            raise ValueError(f"label must be one of {POLYTOPE_LABELS}")
        if self.label == "Pf" and self.m % 2 != 0:
            raise ValueError("the z0 = 0 slice is defined for even m only")
        if self.bounds is None:
            object.__setattr__(self, "bounds", default_bounds(self.m))
        else:
            bounds = tuple(self.bounds)
            if len(bounds) != self.m + 1 or any(b < 0 for b in bounds):
                raise ValueError("bounds must be m+1 nonnegative integers")
            object.__setattr__(self, "bounds", bounds)


@lru_cache(maxsize=None)
def _i_minus(name: str, m: int):
    return mat_sub(identity_matrix(m + 1), build_matrix(name, m))


@lru_cache(maxsize=None)
def _s_inverse(m: int):
    return build_matrix("S_inv", m)


def _as_fractions(x, m: int) -> tuple[Fraction, ...]:
    x = tuple(Fraction(v) for v in x)
    if len(x) != m + 1:
        raise ValueError(f"vector length {len(x)} != m+1 = {m + 1}")
    return x


def box_contains(x, m: int, bounds=None) -> bool:
    x = _as_fractions(x, m)
    bounds = default_bounds(m) if bounds is None else bounds
    return all(0 <= v <= b for v, b in zip(x, bounds))


def qf_contains(x, m: int, bounds=None) -> bool:
    x = _as_fractions(x, m)
    return all(v == 0 for v in mat_vec(x, _i_minus("D", m))) and box_contains(
        x, m, bounds
    )


def pf_contains(x, m: int, bounds=None) -> bool:
    if m % 2 != 0:
        raise ValueError("the z0 = 0 slice is defined for even m only")
    x = _as_fractions(x, m)
    return x[0] == 0 and qf_contains(x, m, bounds)


def qh_contains(x, m: int, bounds=None) -> bool:
    """Fixed by U(m) and the preimage under S(m) lies in the box."""
    x = _as_fractions(x, m)
    if any(v != 0 for v in mat_vec(x, _i_minus("U", m))):
        return False
    return box_contains(mat_vec(x, _s_inverse(m)), m, bounds)


def contains(handle: PolytopeHandle, x) -> bool:
    fn = {
        "Qf": qf_contains,
        "Pf": pf_contains,
        "Qh": qh_contains,
        "Pi": box_contains,
    }[handle.label]
    return fn(x, handle.m, handle.bounds)


def multiplicity(z, m: int) -> int:
    """Number of DS-systems sharing the lattice point z as long f-vector."""
    z = tuple(z)
    if len(z) != m + 1:
        raise ValueError(f"vector length {len(z)} != m+1 = {m + 1}")
    out = 1
    for k, zk in enumerate(z):
        cap = binom(m, k)
        if not 0 <= zk <= cap:
            raise ValueError(f"coordinate {k} = {zk} outside [0, C({m},{k}) = {cap}]")
        out *= binom(cap, zk)
    return out


def prism_check(m: int, qf_points, pf_points) -> dict:
    """Verify that the Qf lattice splits as {beta, beta + e_0 : beta in Pf}.

    ``qf_points`` and ``pf_points`` are the enumerated lattice point lists;
    the report records the explicit bijection or the first obstruction.
    """
    if m % 2 != 0:
        raise ValueError("prism decomposition applies to even m only")
    qf = set(map(tuple, qf_points))
    pf = set(map(tuple, pf_points))
    failures = []
    for beta in pf:
        if beta[0] != 0:
            failures.append({"kind": "slice", "point": list(beta)})
    lifted = set()
    for beta in pf:
        shifted = (beta[0] + 1,) + beta[1:]
        lifted.add(beta)
        lifted.add(shifted)
    if lifted != qf:
        failures.append(
            {
                "kind": "bijection",
                "missing": sorted(map(list, qf - lifted)),
                "extra": sorted(map(list, lifted - qf)),
            }
        )
    if len(qf) != 2 * len(pf):
        failures.append({"kind": "count", "qf": len(qf), "pf": len(pf)})
    return {
        "m": m,
        "qf_count": len(qf),
        "pf_count": len(pf),
        "failures": failures,
        "ok": not failures,
    }
