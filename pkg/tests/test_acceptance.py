"""Acceptance suite: one test per criterion, every tolerance exact.

Each test prints one summary line through the terminal hook in conftest.py.
Runtime-sensitive criteria run the command-line tool in a fresh subprocess so
no warm in-process cache flatters the measurement.
"""

import json
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from dsfaces.bases import verify_table1
from dsfaces.enumeration import (
    ds_fvectors,
    enumerate_eigen_lattice,
    genfun_identity_check,
    oracle_box,
    oracle_powerset,
    table4_row,
)
from dsfaces.exact_linalg import (
    build_matrix,
    char_poly_U,
    char_poly_U_product_form,
    identity_matrix,
    is_totally_unimodular,
    krawtchouk_expansion,
    mat_mul,
    mat_sub,
    mat_transpose,
    mat_vec,
    rank,
    root_multiplicity,
)
from dsfaces.polytopes import prism_check, qf_contains, qh_contains
from dsfaces.projectors import (
    biorthogonality_check,
    line_projector,
    norm_sq,
    rank1_projector_entry,
    subspace_projector,
)
from dsfaces.bases import fh_bar
from dsfaces.spaces import (
    cone_generators,
    class_structure_verify,
    generator_image_check,
    generator_coords,
    hyperplane_spanning,
    ones,
)
from dsfaces.verify import verify_table23

TABLE4 = {
    2: (3, 1, 5),
    3: (1, 7, 9),
    4: (19, 5, 25),
    5: (7, 71, 79),
    6: (291, 41, 333),
    7: (103, 2223, 2327),
    8: (17465, 1107, 18573),
    9: (4905, 271619, 276525),
    10: (3959091, 103057, 4062149),
}


def run_cli(*argv):
    return subprocess.run(
        [sys.executable, "-m", "dsfaces.cli", *argv],
        capture_output=True,
        text=True,
        timeout=900,
    )


def qf_points(m):
    return enumerate_eigen_lattice(m).points


def test_criterion_1_table4_reproduction():
    start = time.perf_counter()
    small = run_cli("table4", "--max-m", "8")
    small_elapsed = time.perf_counter() - start
    assert small.returncode == 0, small.stderr
    assert small_elapsed < 10.0, f"m <= 8 rows took {small_elapsed:.1f}s"

    start = time.perf_counter()
    full = run_cli("table4", "--max-m", "10")
    full_elapsed = time.perf_counter() - start
    assert full.returncode == 0, full.stderr
    assert full_elapsed < 600.0, f"full table took {full_elapsed:.1f}s"
    doc = json.loads(full.stdout)
    rows = {
        r["m"]: (r["matching"], r["opposite"], r["all"])
        for r in doc["result"]["rows"]
    }
    assert rows == TABLE4
    assert doc["result"]["mismatches"] == []


def test_criterion_2_figure_examples():
    points = set(qf_points(2))
    assert points == {(0, 0, 0), (1, 0, 0), (0, 1, 1), (1, 1, 1)}
    s_mat = build_matrix("S", 2)
    h_points = {mat_vec(p, s_mat) for p in points}
    assert h_points == {(0, 0, 0), (1, -2, 1), (0, 1, 0), (1, -1, 1)}


def test_criterion_3_three_way_oracle_agreement():
    start = time.perf_counter()
    for m in range(2, 8):
        box = oracle_box(m)
        for parity in ("matching", "opposite"):
            engine = frozenset(ds_fvectors(m, parity).points)
            assert engine == box[parity], (m, parity)
        if m <= 4:
            power = oracle_powerset(m)
            for parity in ("matching", "opposite"):
                assert box[parity] == power[parity], (m, parity)
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"oracle agreement took {elapsed:.1f}s"


@pytest.mark.parametrize("m", range(2, 9))
def test_criterion_4_identity_suites(m):
    t1 = verify_table1(m)
    assert t1["ok"], t1["failures"][:3]
    t23 = verify_table23(m)
    assert t23["ok"], t23["failures"][:3]
    img = generator_image_check(m)
    assert img["ok"], img["failures"][:3]


@pytest.mark.parametrize("m", range(2, 9))
def test_criterion_5_spectral_suite(m):
    cp = char_poly_U(m)
    assert cp == char_poly_U_product_form(m)
    i = (m + 2) // 2
    kraw = krawtchouk_expansion(m + 1, i)
    assert cp == (kraw if i % 2 == 0 else tuple(-c for c in kraw))
    assert root_multiplicity(cp, 1) == (m + 2) // 2
    i_mat = identity_matrix(m + 1)
    i_minus_u = mat_sub(i_mat, build_matrix("U", m))
    i_minus_d = mat_sub(i_mat, build_matrix("D", m))
    assert rank(i_minus_u) == rank(i_minus_d) == (m + 1) // 2
    assert {i_minus_d[i][i] for i in range(m + 1)} <= {0, 2}
    if m <= 5:
        assert is_totally_unimodular(i_minus_u)


@pytest.mark.parametrize("m", range(2, 9))
def test_criterion_6_eigen_fixedness(m):
    d_mat = build_matrix("D", m)
    u_mat = build_matrix("U", m)
    s_mat = build_matrix("S", m)
    from math import comb

    sign_m = -1 if m % 2 else 1
    images = set()
    for z in qf_points(m):
        assert mat_vec(z, d_mat) == z
        for l in range(m + 1):
            assert z[l] == sign_m * sum(
                (-1 if i % 2 else 1) * comb(i, l) * z[i] for i in range(l, m + 1)
            )
        assert qf_contains(z, m)
        h = mat_vec(z, s_mat)
        images.add(h)
        assert mat_vec(h, u_mat) == h
        assert qh_contains(h, m)
    # the change of basis is a lattice bijection: image counts match
    assert len(images) == len(qf_points(m))


@pytest.mark.parametrize("m", range(2, 9))
def test_criterion_7_structural_identities(m):
    if m % 2 == 0:
        points = qf_points(m)
        pf = [p for p in points if p[0] == 0]
        report = prism_check(m, points, pf)
        assert report["ok"], report["failures"]
    if m <= 7:
        gf = genfun_identity_check(m)
        assert gf["ok"], gf["failures"]
        assert gf["total"] == TABLE4[m][2]
    matching = set(ds_fvectors(m, "matching").points)
    opposite = set(ds_fvectors(m, "opposite").points)
    assert not matching & opposite
    assert table4_row(m) == (
        len(matching), len(opposite), len(matching) + len(opposite) + 1
    )


@pytest.mark.parametrize("m", range(2, 9))
def test_criterion_8_class_structure(m):
    matching = [p for p in qf_points(m) if any(p)]
    report = class_structure_verify(m, matching, complete=True)
    assert report["ok"], report["failures"][:3]
    # opposite-class vectors satisfy the pointwise claim at level m+1
    if m <= 7:
        padded = [p + (0,) for p in ds_fvectors(m, "opposite").points]
        rep = class_structure_verify(m + 1, padded, complete=False)
        pointwise = [f for f in rep["failures"] if f["part"] == "i"]
        assert not pointwise, pointwise[:3]


def test_criterion_9_appendix_suite():
    for m in range(2, 11):
        for s in range(1, m + 1):
            for t in range(1, m + 1):
                if (s - t) % 2 == 1:
                    assert biorthogonality_check(s, t, m)
        for vec in ("f", "h"):
            for k in range(1, m + 1):
                assert norm_sq(vec, k, m) == sum(x * x for x in fh_bar(vec, k, m))
    for m in range(2, 7):
        for which, key in (("H", "h"), ("F", "f")):
            p = subspace_projector(which, m)
            assert p == mat_transpose(p)
            assert mat_mul(p, p) == p
            for v in hyperplane_spanning(key, m):
                assert mat_vec(v, p) == tuple(Fraction(x) for x in v)
        assert all(x == 0 for x in mat_vec(ones(m), subspace_projector("H", m)))
    for m in range(2, 9):
        for vec in ("f", "h"):
            for k in range(1, m + 1):
                gram = line_projector(vec, k, m)
                for i in range(m + 1):
                    for j in range(m + 1):
                        assert rank1_projector_entry(vec, k, i, j, m) == gram[i][j]


@pytest.mark.parametrize("m", range(2, 9))
def test_criterion_10_unimodular_basis_integrality(m):
    gens = cone_generators(m)
    assert rank(gens) == len(gens) == (m + 2) // 2
    for z in qf_points(m):
        coords = generator_coords(z, m)
        assert coords is not None, z
        assert all(c.denominator == 1 for c in coords), (z, coords)
        if m in (2, 3, 4):
            assert all(c >= 0 for c in coords), (z, coords)


def test_criterion_11_determinism():
    first = run_cli("enumerate", "--m", "6", "--class", "matching")
    second = run_cli("enumerate", "--m", "6", "--class", "matching")
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout

    single = run_cli("table4", "--max-m", "6", "--workers", "1")
    multi = run_cli("table4", "--max-m", "6", "--workers", "2")
    assert single.returncode == multi.returncode == 0
    assert single.stdout == multi.stdout

    w1 = run_cli("enumerate", "--m", "5", "--class", "all", "--workers", "1")
    w2 = run_cli("enumerate", "--m", "5", "--class", "all", "--workers", "3")
    assert w1.stdout == w2.stdout
