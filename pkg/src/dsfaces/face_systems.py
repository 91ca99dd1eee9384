"""Face systems in a simplex and their long / classical f- and h-vectors.

A face system is an arbitrary finite family of subsets of [m] = {1, ..., m}
(duplicates collapse, the empty face is allowed, downward closure is *not*
assumed).  For a system F the long f-vector counts faces by cardinality,

    f_i = #{ F in the system : |F| = i },        0 <= i <= m,

and the long h-vector is its image under the triangular change of basis S(m),
equivalently the coefficient vector defined by

    sum_i h_i y^(m-i)  =  sum_i f_i (y-1)^(m-i).

A system is a Dehn-Sommerville system (DS-system) when the long h-vector is
palindromic up to the sign (-1)^(m - size):

    h_l = (-1)^(m - size) h_(m-l)   for all l,

where size is the largest face cardinality.  The empty system is taken to be
DS: the condition is vacuous and the zero vector satisfies every linear
relation (this convention is also what makes the enumeration counts add up).

File format: a face system serializes to JSON as
``{"m": int, "faces": [[...], ...]}`` with 1-based sorted element lists,
faces ordered by (cardinality, lexicographic); ``[]`` denotes the empty face.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .exact_linalg import binom, build_matrix, mat_vec, sign_pow


class FaceSystemFormatError(ValueError):
    """Malformed face-system input (bad element, duplicate face, bad JSON)."""


@dataclass(frozen=True)
class FaceSystem:
    """An immutable family of subsets of [m] = {1, ..., m}, m >= 2."""

    m: int
    faces: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 2:
            raise FaceSystemFormatError(f"m must be an integer >= 2, got {self.m!r}")
        faces = frozenset(frozenset(face) for face in self.faces)
        for face in faces:
            for v in face:
                if not isinstance(v, int) or not 1 <= v <= self.m:
                    raise FaceSystemFormatError(
                        f"face element {v!r} outside [{self.m}] = 1..{self.m}"
                    )
        object.__setattr__(self, "faces", faces)

    @property
    def count(self) -> int:
        return len(self.faces)

    @property
    def size(self) -> int:
        """Largest face cardinality; undefined (raises) for the empty system."""
        if not self.faces:
            raise ValueError("size is undefined for the empty face system")
        return max(len(face) for face in self.faces)

    @property
    def vertex_union(self) -> frozenset:
        out: frozenset = frozenset()
        for face in self.faces:
            out |= face
        return out

    def canonical_faces(self) -> tuple[tuple[int, ...], ...]:
        """Faces as sorted tuples, ordered by (cardinality, lexicographic)."""
        return tuple(
            sorted((tuple(sorted(face)) for face in self.faces), key=lambda f: (len(f), f))
        )

    def __contains__(self, face) -> bool:
        return frozenset(face) in self.faces


def full_simplex(m: int) -> FaceSystem:
    """All subsets of [m]."""
    universe = list(range(1, m + 1))
    faces = []
    for mask in range(1 << m):
        faces.append([universe[i] for i in range(m) if mask >> i & 1])
    return FaceSystem(m, faces)


def boundary_complex(k: int, m: int) -> FaceSystem:
    """All subsets of [k] except [k] itself, viewed inside [m] (1 <= k <= m)."""
    if not 1 <= k <= m:
        raise ValueError(f"need 1 <= k <= m, got k={k}, m={m}")
    top = (1 << k) - 1
    faces = [
        [v + 1 for v in range(k) if mask >> v & 1]
        for mask in range(top)
    ]
    return FaceSystem(m, faces)


def boolean_interval(bottom: Iterable[int], top: Iterable[int], m: int) -> FaceSystem:
    """The interval {B : bottom <= B <= top} as a face system in [m]."""
    bottom = frozenset(bottom)
    top = frozenset(top)
    if not bottom <= top:
        raise ValueError("interval bottom must be a subset of top")
    free = sorted(top - bottom)
    faces = []
    for mask in range(1 << len(free)):
        extra = {free[i] for i in range(len(free)) if mask >> i & 1}
        faces.append(bottom | extra)
    return FaceSystem(m, faces)


# ---------------------------------------------------------------------------
# Long vectors
# ---------------------------------------------------------------------------

def long_f(fs: FaceSystem) -> tuple[int, ...]:
    """Counts of faces by cardinality: an (m+1)-vector."""
    return long_f_at(fs, fs.m)


def long_f_at(fs: FaceSystem, n: int) -> tuple[int, ...]:
    """Face counts by cardinality in an ambient [n]; needs n >= every |F|."""
    counts = [0] * (n + 1)
    for face in fs.faces:
        if len(face) > n:
            raise ValueError(f"ambient size {n} below face cardinality {len(face)}")
        counts[len(face)] += 1
    return tuple(counts)


def long_h(fs: FaceSystem) -> tuple[int, ...]:
    """The long h-vector, computed as long_f . S(m)."""
    return mat_vec(long_f(fs), build_matrix("S", fs.m))


def long_h_at(fs: FaceSystem, n: int) -> tuple[int, ...]:
    if n < 2:
        # S(n) is only built for n >= 2; expand the defining polynomial instead.
        return h_from_f_polynomial(long_f_at(fs, n))
    return mat_vec(long_f_at(fs, n), build_matrix("S", n))


def h_from_f_polynomial(f: tuple[int, ...]) -> tuple[int, ...]:
    """h from f by expanding sum_i f_i (y-1)^(n-i) and reading coefficients.

    Independent of the matrix route; used as its cross-check.
    """
    n = len(f) - 1
    coeffs = [0] * (n + 1)  # ascending powers of y
    for i, fi in enumerate(f):
        if fi == 0:
            continue
        for j in range(n - i + 1):
            coeffs[j] += fi * binom(n - i, j) * sign_pow(n - i - j)
    return tuple(coeffs[n - l] for l in range(n + 1))


def classical_fh(fs: FaceSystem) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Classical (f, h) of a nonempty system of size d >= 1.

    f = (f_0, ..., f_(d-1)) counts faces of cardinality i+1; h comes from
    sum_i h_i y^(d-i) = sum_i f_(i-1) (y-1)^(d-i) with f_(-1) = 1 exactly
    when the empty face is present.
    """
    if fs.count == 0:
        raise ValueError("classical vectors need a nonempty system")
    d = fs.size
    if d < 1:
        raise ValueError("classical vectors need size >= 1")
    counts = long_f(fs)
    f = tuple(counts[i + 1] for i in range(d))
    f_prev = (counts[0],) + f  # f_(-1), f_0, ..., f_(d-1);  f_(-1) = [empty in fs]
    coeffs = [0] * (d + 1)
    for i in range(d + 1):
        for j in range(d - i + 1):
            coeffs[j] += f_prev[i] * binom(d - i, j) * sign_pow(d - i - j)
    h = tuple(coeffs[d - l] for l in range(d + 1))
    return f, h


# ---------------------------------------------------------------------------
# Dehn-Sommerville predicates
# ---------------------------------------------------------------------------

def ambient_threshold(fs: FaceSystem) -> int:
    """Least n >= |union of faces| with n congruent to size(fs) mod 2."""
    if fs.count == 0:
        raise ValueError("threshold undefined for the empty system")
    u = len(fs.vertex_union)
    return u if (u - fs.size) % 2 == 0 else u + 1


def is_ds(fs: FaceSystem) -> bool:
    """Whether the long h-vector satisfies h_l = (-1)^(m-size) h_(m-l)."""
    if fs.count == 0:
        return True
    m = fs.m
    sign = sign_pow(m - fs.size)
    h = long_h(fs)
    return all(h[l] == sign * h[m - l] for l in range(m + 1))


def is_ds_family(fs: FaceSystem, samples: int = 3) -> bool:
    """Check the ambient-independent form of the DS condition.

    For n of the same parity as size(fs), n at least the threshold (and at
    least 1), the long h-vector over [n] must be fixed by reversal.  The first
    ``samples`` admissible n are checked; agreement with :func:`is_ds` over
    every sampled n is a theorem, so this doubles as a consistency probe.
    """
    if fs.count == 0:
        raise ValueError("family check needs a nonempty system")
    start = ambient_threshold(fs)
    if start < 1:
        start = 2  # n ranges over positive integers of the right parity
    for idx in range(samples):
        n = start + 2 * idx
        h = long_h_at(fs, n)
        if h != tuple(reversed(h)):
            return False
    return True


def is_complex(fs: FaceSystem) -> bool:
    """Downward closure (which already forces every vertex singleton)."""
    face_set = fs.faces
    for face in face_set:
        for v in face:
            if frozenset(face - {v}) not in face_set:
                return False
    return True


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def to_json_dict(fs: FaceSystem) -> dict:
    return {"m": fs.m, "faces": [list(face) for face in fs.canonical_faces()]}


def from_json_dict(data) -> FaceSystem:
    if not isinstance(data, dict) or set(data) != {"m", "faces"}:
        raise FaceSystemFormatError('expected an object with keys "m" and "faces"')
    m = data["m"]
    faces = data["faces"]
    if not isinstance(faces, list) or any(not isinstance(f, list) for f in faces):
        raise FaceSystemFormatError('"faces" must be a list of element lists')
    seen = set()
    for f in faces:
        key = frozenset(f)
        if key in seen:
            raise FaceSystemFormatError(f"duplicate face {sorted(f)}")
        seen.add(key)
    return FaceSystem(m, faces)


def load_face_system(path) -> FaceSystem:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FaceSystemFormatError(f"cannot read face system from {path}: {exc}")
    return from_json_dict(data)


def save_face_system(fs: FaceSystem, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_json_dict(fs), fh, sort_keys=True)
        fh.write("\n")
