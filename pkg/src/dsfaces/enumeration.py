"""Lattice-point engine for the boxed fixed-point system

    z . (I - D(m)) = 0,      0 <= z <= b       (componentwise),

whose nonzero integer solutions at the binomial box b_k = C(m, k) are exactly
the long f-vectors of DS-systems with size congruent to m mod 2.

How the engine works
--------------------
I - D(m) is lower triangular; its column j has diagonal entry
1 - (-1)^(m-j), i.e. 2 when m - j is odd and 0 when m - j is even.  The
columns with odd m - j have their top nonzero entries on distinct rows, so
they are linearly independent; since they number floor((m+1)/2) = rank, every
remaining column is a combination of them and can be dropped.  Each kept
column forces one coordinate from the ones above it:

    2 z_j = sum_{i > j} (-1)^(m-i) C(i, j) z_i        (m - j odd).

The search therefore walks coordinates from z_m downward, branching only on
the free coordinates z_j with m - j even and deriving each forced coordinate
as it is reached; a forced value that is negative, odd (division by 2 is a
pruning event, not an error), or above its bound kills the branch.  Raw leaf
count is prod over free j of (b_j + 1) -- about 3.8e8 at m = 10 -- but the
forced-coordinate checks prune the tree by orders of magnitude, and in
count-only mode the innermost free coordinate collapses to an interval count
in O(1), so the walk never visits the deepest level at all.

Parallel mode partitions the values of the top free coordinate across a
process pool; each task is an independent sub-walk, results merge in task
order and are finally sorted, so output is identical for any worker count.

Brute-force oracles (a full box scan and a scan over every face system) and
the generating-function count identities live here too, as the independent
checks of the engine.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb

import numpy as np

from .exact_linalg import build_matrix, mat_vec
from .polytopes import default_bounds, multiplicity

PARITY_CLASSES = ("matching", "opposite", "all")

#: Hard default on the engine's m (the m+1 run for the opposite class is the
#: costliest call a Table-4 row makes).  Override via DSFACES_MAX_M.
DEFAULT_ENGINE_CAP = 11

BOX_ORACLE_CAP = 7
POWERSET_ORACLE_CAP = 4
TOTAL_COUNT_CAP = 8


class CapExceededError(ValueError):
    """A scan was refused because its configured size cap was exceeded."""

    def __init__(self, message: str, estimate: int):
        super().__init__(message)
        self.estimate = estimate


def engine_cap() -> int:
    return int(os.environ.get("DSFACES_MAX_M", DEFAULT_ENGINE_CAP))


@dataclass(frozen=True)
class EnumerationReport:
    m: int
    parity_class: str
    bounds: tuple
    count: int
    points: tuple | None
    total_multiplicity: int | None = None
    wall_time: float = 0.0


def _raw_leaves(m: int, bounds) -> int:
    out = 1
    for j in range(m % 2, m + 1, 2):
        out *= bounds[j] + 1
    return out


def _check_bounds(m: int, bounds) -> tuple[int, ...]:
    if bounds is None:
        return default_bounds(m)
    bounds = tuple(int(b) for b in bounds)
    if len(bounds) != m + 1 or any(b < 0 for b in bounds):
        raise ValueError("bounds must be m+1 nonnegative integers")
    return bounds


def _forced_coefficients(m: int) -> list:
    """coef[j][i] = (-1)^(m-i) C(i, j) for forced j (m - j odd), else None."""
    coef: list = [None] * (m + 1)
    for j in range(m + 1):
        if (m - j) % 2 == 1:
            coef[j] = [(-1) ** (m - i) * comb(i, j) for i in range(m + 1)]
    return coef


def _scan(
    m: int,
    bounds: tuple,
    count_only: bool,
    top_value: int | None = None,
):
    """One descending walk.  Returns (count, points or None).

    ``top_value`` pins the top free coordinate (the unit of parallel work).
    """
    free = list(range(m, -1, -2))
    coef = _forced_coefficients(m)
    # below[i]: every forced coordinate under i, whatever i's own parity is
    # (a forced coordinate contributes to the forced columns two below it).
    below = [
        tuple(j for j in range(i - 1, -1, -1) if coef[j] is not None)
        for i in range(m + 1)
    ]
    sums = [0] * (m + 1)
    z = [0] * (m + 1)
    points: list | None = None if count_only else []
    count = 0
    n_free = len(free)
    shortcut_idx = n_free - 2 if m % 2 == 0 else n_free - 1

    def emit() -> None:
        nonlocal count
        count += 1
        if points is not None:
            points.append(tuple(z))

    def walk(idx: int) -> None:
        nonlocal count
        i = free[idx]
        bi = bounds[i]
        below_i = below[i]
        lo_v, hi_v = 0, bi
        if idx == 0 and top_value is not None:
            lo_v = hi_v = top_value

        if count_only and idx == shortcut_idx:
            if m % 2 == 0:
                # i == 2: z_1 = sums[1]/2 + z_2 must land in [0, b_1]; any
                # z_0 then completes a solution (the coefficient of z_2 in
                # the column-1 relation is exactly 2).
                r = sums[1]
                if r % 2 == 0:
                    half = r // 2
                    lo = max(lo_v, -half)
                    hi = min(hi_v, bounds[1] - half)
                    if hi >= lo:
                        count += (hi - lo + 1) * (bounds[0] + 1)
            else:
                # i == 1: z_0 = (sums[0] + z_1)/2 constrains z_1 to one
                # parity class of an interval.
                r = sums[0]
                lo = max(lo_v, -r)
                hi = min(hi_v, 2 * bounds[0] - r)
                if hi >= lo:
                    first = lo if (lo - r) % 2 == 0 else lo + 1
                    if first <= hi:
                        count += (hi - first) // 2 + 1
            return

        if lo_v:
            for j in below_i:
                sums[j] += coef[j][i] * lo_v
        try:
            for v in range(lo_v, hi_v + 1):
                if v > lo_v:
                    for j in below_i:
                        sums[j] += coef[j][i]
                z[i] = v
                if i == 0:
                    emit()
                    continue
                jf = i - 1
                r = sums[jf]
                if r < 0 or r % 2 == 1:
                    continue
                w = r // 2
                if w > bounds[jf]:
                    continue
                z[jf] = w
                below_j = below[jf]
                if w:
                    for j in below_j:
                        sums[j] += coef[j][jf] * w
                if idx + 1 < n_free:
                    walk(idx + 1)
                else:
                    emit()
                if w:
                    for j in below_j:
                        sums[j] -= coef[j][jf] * w
        finally:
            for j in below_i:
                sums[j] -= coef[j][i] * hi_v

    walk(0)
    return count, points


def _scan_task(args):
    m, bounds, count_only, top_value = args
    return _scan(m, bounds, count_only, top_value)


_POINTS_CACHE: dict = {}
_COUNT_CACHE: dict = {}


def enumerate_eigen_lattice(
    m: int,
    bounds=None,
    *,
    count_only: bool = False,
    workers: int = 1,
    max_m: int | None = None,
) -> EnumerationReport:
    """All integer points of the system for the given box (zero included)."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    cap = engine_cap() if max_m is None else max_m
    bounds = _check_bounds(m, bounds)
    if m > cap:
        raise CapExceededError(
            f"enumeration at m={m} exceeds the cap {cap}; raw search space "
            f"is {_raw_leaves(m, bounds)} leaves (set DSFACES_MAX_M to override)",
            _raw_leaves(m, bounds),
        )
    start = time.perf_counter()
    key = (m, bounds)
    if count_only and key in _COUNT_CACHE:
        count, points = _COUNT_CACHE[key], None
    elif not count_only and key in _POINTS_CACHE:
        points = _POINTS_CACHE[key]
        count = len(points)
    else:
        count, points = _run_scan(m, bounds, count_only, max(1, workers))
        if count_only:
            _COUNT_CACHE[key] = count
        else:
            _POINTS_CACHE[key] = points
            _COUNT_CACHE[key] = count
    return EnumerationReport(
        m=m,
        parity_class="all",
        bounds=bounds,
        count=count,
        points=points,
        wall_time=time.perf_counter() - start,
    )


def _run_scan(m, bounds, count_only, workers):
    top_bound = bounds[m]
    if workers == 1 or top_bound == 0:
        count, points = _scan(m, bounds, count_only)
    else:
        tasks = [(m, bounds, count_only, v) for v in range(top_bound + 1)]
        count = 0
        points = None if count_only else []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for sub_count, sub_points in pool.map(_scan_task, tasks):
                count += sub_count
                if points is not None:
                    points.extend(sub_points)
    if points is not None:
        points = tuple(sorted(points))
    return count, points


def ds_fvectors(
    m: int,
    parity: str = "matching",
    *,
    count_only: bool = False,
    workers: int = 1,
    max_m: int | None = None,
) -> EnumerationReport:
    """Nonzero long f-vectors of DS-systems in [m], by size-parity class.

    matching: size = m (mod 2); these are the nonzero box points of the
    system at m.  opposite: size = m+1 (mod 2); every such system also lives
    in [m+1] where its parity matches, so the engine runs at m+1 with the
    tightened box (C(m,0), ..., C(m,m), 0) and the trailing zero is dropped.
    """
    if parity not in ("matching", "opposite"):
        raise ValueError(f"parity must be 'matching' or 'opposite', got {parity!r}")
    start = time.perf_counter()
    if parity == "matching":
        inner = enumerate_eigen_lattice(
            m, count_only=count_only, workers=workers, max_m=max_m
        )
        points = None
        if inner.points is not None:
            points = tuple(p for p in inner.points if any(p))
        return EnumerationReport(
            m=m,
            parity_class="matching",
            bounds=inner.bounds,
            count=inner.count - 1,
            points=points,
            wall_time=time.perf_counter() - start,
        )
    lifted_bounds = default_bounds(m) + (0,)
    inner = enumerate_eigen_lattice(
        m + 1, lifted_bounds, count_only=count_only, workers=workers, max_m=max_m
    )
    points = None
    if inner.points is not None:
        points = tuple(p[:-1] for p in inner.points if any(p))
    return EnumerationReport(
        m=m,
        parity_class="opposite",
        bounds=default_bounds(m),
        count=inner.count - 1,
        points=points,
        wall_time=time.perf_counter() - start,
    )


def table4_row(m: int, *, workers: int = 1, max_m: int | None = None):
    """(matching count, opposite count, total distinct DS f-vectors).

    The third column counts the zero vector once on top of the two disjoint
    nonzero classes.
    """
    cap = engine_cap() if max_m is None else max_m
    if m + 1 > cap:
        # fail before the (potentially long) matching-class walk: the
        # opposite class needs the engine at m + 1
        raise CapExceededError(
            f"table row at m={m} needs enumeration at m={m + 1}, beyond the "
            f"cap {cap} (set DSFACES_MAX_M to override)",
            _raw_leaves(m + 1, default_bounds(m + 1)),
        )
    count_only = m > 8
    matching = ds_fvectors(m, "matching", count_only=count_only, workers=workers,
                           max_m=max_m)
    opposite = ds_fvectors(m, "opposite", count_only=count_only, workers=workers,
                           max_m=max_m)
    if not count_only:
        overlap = set(matching.points) & set(opposite.points)
        if overlap:
            raise AssertionError(
                f"parity classes are not disjoint at m={m}: {sorted(overlap)[:3]}"
            )
    return matching.count, opposite.count, matching.count + opposite.count + 1


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------

def oracle_box(m: int, *, max_m: int = BOX_ORACLE_CAP) -> dict:
    """Scan every integer vector of the binomial box and keep the DS ones.

    A vector z qualifies when its h-image h = z . S(m) satisfies
    h_l = (-1)^(m - s) h_(m-l) with s = max{i : z_i > 0}; the class is
    'matching' when s = m (mod 2) and 'opposite' otherwise.  Exhaustive and
    entirely independent of the engine's forced-coordinate algebra; the
    arithmetic is int64 (exact: all values stay far below 2^63).
    """
    if m > max_m:
        estimate = 1
        for b in default_bounds(m):
            estimate *= b + 1
        raise CapExceededError(
            f"box oracle at m={m} exceeds the cap {max_m}: "
            f"{estimate} vectors to scan",
            estimate,
        )
    bounds = default_bounds(m)
    n = m + 1
    s_mat = np.array(build_matrix("S", m), dtype=np.int64)

    # Split coordinates into a python-level outer prefix and a vectorized
    # inner grid of at most ~4e5 rows.
    split = n
    inner_rows = 1
    for j in range(n - 1, -1, -1):
        if inner_rows * (bounds[j] + 1) > 400_000:
            break
        inner_rows *= bounds[j] + 1
        split = j
    inner_axes = [np.arange(bounds[j] + 1, dtype=np.int64) for j in range(split, n)]
    if inner_axes:
        grid = np.meshgrid(*inner_axes, indexing="ij")
        inner = np.stack([g.reshape(-1) for g in grid], axis=1)
    else:
        inner = np.zeros((1, 0), dtype=np.int64)
    inner_h = inner @ s_mat[split:, :]
    idx = np.arange(split, n, dtype=np.int64)
    inner_size = np.where(
        (inner > 0).any(axis=1), (np.where(inner > 0, idx, -1)).max(axis=1), -1
    )

    out = {"matching": set(), "opposite": set()}
    outer_ranges = [range(bounds[j] + 1) for j in range(split)]
    for outer in itertools.product(*outer_ranges):
        outer_arr = np.array(outer, dtype=np.int64)
        h = inner_h + outer_arr @ s_mat[:split, :] if split else inner_h
        outer_size = max((j for j in range(split) if outer[j] > 0), default=-1)
        size = np.maximum(inner_size, outer_size)
        nonzero = size >= 0
        sign = np.where((m - size) % 2 == 0, 1, -1)
        ds = (h == sign[:, None] * h[:, ::-1]).all(axis=1) & nonzero
        match = ds & (size % 2 == m % 2)
        for row in np.nonzero(match)[0]:
            out["matching"].add(outer + tuple(int(v) for v in inner[row]))
        for row in np.nonzero(ds & ~match)[0]:
            out["opposite"].add(outer + tuple(int(v) for v in inner[row]))
    return {k: frozenset(v) for k, v in out.items()}


def _powerset_scan(m: int):
    """Scan all face systems in [m]: distinct DS f-vectors and DS-system
    counts per parity class."""
    n_subsets = 1 << m
    card = [bin(mask).count("1") for mask in range(n_subsets)]
    s_mat = build_matrix("S", m)
    vectors = {"matching": set(), "opposite": set()}
    systems = {"matching": 0, "opposite": 0}
    for family in range(1, 1 << n_subsets):
        f = [0] * (m + 1)
        size = 0
        rest = family
        while rest:
            low = rest & -rest
            sub = low.bit_length() - 1
            c = card[sub]
            f[c] += 1
            if c > size:
                size = c
            rest ^= low
        sign = 1 if (m - size) % 2 == 0 else -1
        h = mat_vec(tuple(f), s_mat)
        if all(h[l] == sign * h[m - l] for l in range(m + 1)):
            cls = "matching" if size % 2 == m % 2 else "opposite"
            vectors[cls].add(tuple(f))
            systems[cls] += 1
    return (
        {k: frozenset(v) for k, v in vectors.items()},
        systems,
    )


def oracle_powerset(m: int, *, max_m: int = POWERSET_ORACLE_CAP) -> dict:
    """Ground truth: distinct DS long f-vectors from scanning every one of
    the 2^(2^m) face systems, split by parity class."""
    if m > max_m:
        raise CapExceededError(
            f"powerset oracle at m={m} exceeds the cap {max_m}: "
            f"2^{1 << m} face systems",
            1 << (1 << m),
        )
    return _powerset_scan(m)[0]


def powerset_ds_system_counts(m: int, *, max_m: int = POWERSET_ORACLE_CAP) -> dict:
    """Number of DS-systems (not vectors) per parity class, by full scan."""
    if m > max_m:
        raise CapExceededError(
            f"powerset oracle at m={m} exceeds the cap {max_m}: "
            f"2^{1 << m} face systems",
            1 << (1 << m),
        )
    return _powerset_scan(m)[1]


def total_ds_count(m: int, parity: str, *, max_m: int = TOTAL_COUNT_CAP) -> int:
    """Exact number of DS-systems in the class: each lattice point z carries
    prod_k C(C(m,k), z_k) systems."""
    if m > max_m:
        raise CapExceededError(
            f"total DS-system count at m={m} exceeds the cap {max_m}",
            _raw_leaves(m, default_bounds(m)),
        )
    report = ds_fvectors(m, parity)
    return sum(multiplicity(p, m) for p in report.points)


# ---------------------------------------------------------------------------
# Generating-function count identities
# ---------------------------------------------------------------------------

def genfun_identity_check(m: int, *, max_m: int = TOTAL_COUNT_CAP) -> dict:
    """Verify the support decomposition of the DS f-vector generating
    function, specialized to counts and to explicit support sets.

    Even m:  all = -1 + (1 + x_0)-doubled slice of the z_0 = 0 points of the
    system at m, plus the points (gamma, 0, 0) of the system at m+1 with
    gamma below (C(m,0), ..., C(m,m-1)).
    Odd m:   all = -1 + points (beta, 0, 0) of the system at m, plus the
    doubled slice (0, gamma, 0, 0) of the system at m+1 with gamma below
    (C(m,1), ..., C(m,m-1)).
    """
    if m > max_m:
        raise CapExceededError(f"generating-function check capped at {max_m}", 0)
    matching = set(ds_fvectors(m, "matching").points)
    opposite = set(ds_fvectors(m, "opposite").points)
    zero = (0,) * (m + 1)
    lhs_support = {zero} | matching | opposite
    failures = []
    box = default_bounds(m)
    if m % 2 == 0:
        slice_report = enumerate_eigen_lattice(m, (0,) + box[1:])
        doubled = set()
        for beta in slice_report.points:
            doubled.add(beta)
            doubled.add((1,) + beta[1:])
        tail_bounds = box[:-1] + (0, 0)
        tail_report = enumerate_eigen_lattice(m + 1, tail_bounds)
        tail = {p[:-1] for p in tail_report.points}
        rhs_support = doubled | tail
        rhs_count = -1 + 2 * slice_report.count + tail_report.count
    else:
        first = set(ds_fvectors(m, "matching").points) | {zero}
        for p in first:
            if p[m - 1] != 0 or p[m] != 0:
                failures.append({"kind": "trailing", "point": list(p)})
        slice_bounds = (0,) + box[1:-1] + (0, 0)
        slice_report = enumerate_eigen_lattice(m + 1, slice_bounds)
        doubled = set()
        for p in slice_report.points:
            beta = p[:-1]
            doubled.add(beta)
            doubled.add((1,) + beta[1:])
        rhs_support = first | doubled
        rhs_count = -1 + len(first) + 2 * slice_report.count
    if rhs_support != lhs_support:
        failures.append(
            {
                "kind": "support",
                "missing": sorted(map(list, lhs_support - rhs_support))[:5],
                "extra": sorted(map(list, rhs_support - lhs_support))[:5],
            }
        )
    lhs_count = 1 + len(matching) + len(opposite)
    if rhs_count != lhs_count:
        failures.append({"kind": "count", "lhs": lhs_count, "rhs": rhs_count})
    return {
        "m": m,
        "total": lhs_count,
        "failures": failures,
        "ok": not failures,
    }
