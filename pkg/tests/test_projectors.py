from fractions import Fraction

import pytest

from dsfaces.bases import fh_bar
from dsfaces.exact_linalg import build_matrix, mat_mul, mat_transpose, mat_vec
from dsfaces.projectors import (
    biorthogonality_check,
    line_projector,
    norm_sq,
    rank1_projector_entry,
    subspace_projector,
)
from dsfaces.spaces import eigenspace_spanning, hyperplane_spanning, ones


def test_norm_sq_examples():
    assert norm_sq("h", 1, 2) == 6
    assert norm_sq("f", 2, 3) == 5
    assert norm_sq("h", 2, 2) == 2
    with pytest.raises(ValueError):
        norm_sq("h", 0, 2)
    with pytest.raises(ValueError):
        norm_sq("g", 1, 2)


@pytest.mark.parametrize("m", range(2, 11))
def test_norms_match_direct(m):
    for vec in ("f", "h"):
        for k in range(1, m + 1):
            direct = sum(x * x for x in fh_bar(vec, k, m))
            assert direct == norm_sq(vec, k, m)


def test_biorthogonality_examples():
    assert biorthogonality_check(1, 2, 2)
    assert biorthogonality_check(1, 2, 3)
    assert biorthogonality_check(2, 3, 4)
    with pytest.raises(ValueError):
        biorthogonality_check(1, 3, 4)
    with pytest.raises(ValueError):
        biorthogonality_check(0, 1, 4)


@pytest.mark.parametrize("m", range(2, 11))
def test_biorthogonality_all_pairs(m):
    for s in range(1, m + 1):
        for t in range(1, m + 1):
            if (s - t) % 2 == 1:
                assert biorthogonality_check(s, t, m)


def test_projector_h2_is_scaled_outer_square():
    p = subspace_projector("H", 2)
    v = (1, -2, 1)
    expected = tuple(
        tuple(Fraction(v[i] * v[j], 6) for j in range(3)) for i in range(3)
    )
    assert p == expected
    assert mat_vec(ones(2), p) == (0, 0, 0)


def test_projector_f3_is_scaled_outer_square():
    p = subspace_projector("F", 3)
    v = (1, 2, 0, 0)
    expected = tuple(
        tuple(Fraction(v[i] * v[j], 5) for j in range(4)) for i in range(4)
    )
    assert p == expected


def test_subspace_projector_rejects_unknown():
    with pytest.raises(ValueError):
        subspace_projector("G", 3)


@pytest.mark.parametrize("m", range(2, 7))
def test_projector_properties(m):
    n = m + 1
    for which, key in (("H", "h"), ("F", "f")):
        p = subspace_projector(which, m)
        assert p == mat_transpose(p)
        assert mat_mul(p, p) == p
        for v in hyperplane_spanning(key, m):
            assert mat_vec(v, p) == tuple(Fraction(x) for x in v)
    p_h = subspace_projector("H", m)
    assert all(x == 0 for x in mat_vec(ones(m), p_h))
    # orthogonal decomposition of the h-side fixed space
    ones_proj = tuple(tuple(Fraction(1, n) for _ in range(n)) for _ in range(n))
    for v in eigenspace_spanning("h", m):
        total = tuple(
            a + b for a, b in zip(mat_vec(v, p_h), mat_vec(v, ones_proj))
        )
        assert total == tuple(Fraction(x) for x in v)
    # reversal symmetry: conjugating by the backward identity fixes it
    u = build_matrix("U", m)
    assert mat_mul(mat_mul(u, p_h), u) == p_h


def test_rank1_entry_examples():
    assert rank1_projector_entry("h", 1, 0, 0, 2) == Fraction(1, 6)
    assert rank1_projector_entry("f", 2, 0, 1, 3) == Fraction(2, 5)
    for i in range(3, 5):
        assert rank1_projector_entry("f", 2, i, 0, 4) == 0
    with pytest.raises(ValueError):
        rank1_projector_entry("f", 0, 0, 0, 3)
    with pytest.raises(ValueError):
        rank1_projector_entry("f", 1, 5, 0, 3)


@pytest.mark.parametrize("m", range(2, 9))
def test_rank1_closed_forms_match_gram(m):
    for vec in ("f", "h"):
        for k in range(1, m + 1):
            gram = line_projector(vec, k, m)
            for i in range(m + 1):
                for j in range(m + 1):
                    assert rank1_projector_entry(vec, k, i, j, m) == gram[i][j]


@pytest.mark.parametrize("m", range(2, 7))
def test_rank1_h_projector_reversal_invariant(m):
    u = build_matrix("U", m)
    for k in range(1, m + 1):
        p = line_projector("h", k, m)
        assert mat_mul(mat_mul(u, p), u) == p
