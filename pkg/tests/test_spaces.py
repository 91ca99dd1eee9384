from fractions import Fraction
from math import comb

import pytest

from dsfaces.bases import boundary_f
from dsfaces.exact_linalg import build_matrix, dot, mat_vec
from dsfaces.enumeration import enumerate_eigen_lattice
from dsfaces.spaces import (
    binomial_row,
    cone_generators,
    class_structure_verify,
    eigenspace_spanning,
    generator_image_check,
    generator_coords,
    hyperplane_spanning,
    in_cone,
    in_eigenspace,
    ones,
    same_span,
    table23_entry,
)
from dsfaces.verify import verify_table23


def test_eigenspace_spanning_examples():
    assert eigenspace_spanning("h", 2) == ((1, -2, 1), (1, 1, 1))
    assert eigenspace_spanning("f", 2) == ((1, 0, 0), (1, 3, 3))
    assert eigenspace_spanning("f", 3) == ((1, 2, 0, 0), (1, 4, 6, 4))


@pytest.mark.parametrize("m", range(2, 9))
def test_spanning_vectors_are_fixed(m):
    u = build_matrix("U", m)
    d = build_matrix("D", m)
    for v in eigenspace_spanning("h", m):
        assert mat_vec(v, u) == v
    for v in eigenspace_spanning("f", m):
        assert mat_vec(v, d) == v


@pytest.mark.parametrize("m", range(2, 11))
def test_hyperplane_orthogonal_to_ones(m):
    for v in hyperplane_spanning("h", m):
        assert dot(v, ones(m)) == 0


@pytest.mark.parametrize("m", range(2, 11))
def test_binomial_row_is_ones_image(m):
    s_inv = build_matrix("S_inv", m)
    assert mat_vec(ones(m), s_inv) == binomial_row(m)


@pytest.mark.parametrize("m", range(2, 9))
def test_binomial_row_extends_to_boundary_f(m):
    assert binomial_row(m) + (0, 0) == boundary_f(m + 1, m + 2)


@pytest.mark.parametrize("m", range(2, 9))
def test_f_side_vectors_in_affine_slice(m):
    for v in hyperplane_spanning("f", m) + (binomial_row(m),):
        assert v[0] == 1


@pytest.mark.parametrize("m", range(2, 9))
def test_images_of_h_spaces(m):
    s_inv = build_matrix("S_inv", m)
    image_h = [mat_vec(v, s_inv) for v in hyperplane_spanning("h", m)]
    assert same_span(image_h, hyperplane_spanning("f", m))
    image_e = [mat_vec(v, s_inv) for v in eigenspace_spanning("h", m)]
    assert same_span(image_e, eigenspace_spanning("f", m))


def test_cone_generators_examples():
    assert cone_generators(2) == ((1, 0, 0), (0, 1, 1))
    assert cone_generators(3)[0] == (1, 2, 0, 0)
    assert cone_generators(4)[2] == (0, 0, 1, 2, 1)


@pytest.mark.parametrize("m", range(2, 9))
def test_generators_by_closed_shift_form(m):
    """Construction route (matrix powers) equals direct coordinate shifts."""
    def shift(v, k):
        return (0,) * k + v[: len(v) - k]

    flower = tuple(
        tuple(comb(k, l) if 0 <= l <= k else 0 for l in range(m + 1))
        for k in range(m + 1)
    )
    gens = cone_generators(m)
    if m % 2 == 0:
        expected = tuple(shift(flower[i], i) for i in range(m // 2 + 1))
    else:
        expected = tuple(
            tuple(
                a + b
                for a, b in zip(shift(flower[i + 1], i), shift(flower[i], i + 1))
            )
            for i in range((m - 1) // 2 + 1)
        )
    assert gens == expected


def test_table23_entry_examples():
    assert table23_entry(2, 1, 2, "S") == 1
    assert table23_entry(2, 1, 1, "S", image=True) == 1
    s2 = build_matrix("S", 2)
    assert mat_vec((0, 1, 1), s2) == (0, 1, 0)
    assert table23_entry(3, 0, 1, "S") == 2


def test_table23_entry_range_checks():
    with pytest.raises(ValueError):
        table23_entry(2, 2, 0, "S")  # only generators 0..m/2 exist
    with pytest.raises(ValueError):
        table23_entry(2, 0, 3, "S")
    with pytest.raises(ValueError):
        table23_entry(2, 0, 0, "nope")


@pytest.mark.parametrize("m", range(2, 9))
def test_table23_full_verification(m):
    report = verify_table23(m)
    assert report["ok"], report["failures"][:3]


@pytest.mark.parametrize("m", range(2, 9))
def test_generator_image_check(m):
    report = generator_image_check(m)
    assert report["ok"], report["failures"][:3]
    s_mat = build_matrix("S", m)
    for gen in cone_generators(m):
        image = mat_vec(gen, s_mat)
        assert image == tuple(reversed(image))


def test_generator_image_examples():
    assert mat_vec((1, 2, 0, 0), build_matrix("S", 3)) == (1, -1, -1, 1)


def test_in_eigenspace_examples():
    assert in_eigenspace((1, 1, 1), "f", 2)
    assert not in_eigenspace((0, 1, -1), "f", 2)
    assert in_cone((1, 2, 0, 0), 3)
    assert not in_cone((1, -2, 0, 0), 3)


def test_generator_coords_triangular_solve():
    c = generator_coords((1, 1, 1), 2)
    assert c == (Fraction(1), Fraction(1))
    assert generator_coords((0, 1, 0), 2) is None  # not in the span


@pytest.mark.parametrize("m", range(2, 9))
def test_generator_triangular_structure(m):
    gens = cone_generators(m)
    for i, gen in enumerate(gens):
        assert gen[i] == 1
        assert all(gen[l] == 0 for l in range(i))
        assert min(gen) >= 0
    assert same_span(gens, eigenspace_spanning("f", m))


def test_class_structure_examples():
    ok = class_structure_verify(2, [(1, 1, 1)], complete=False)
    assert ok["ok"]
    ok = class_structure_verify(3, [(1, 2, 0, 0)])  # the whole class at m = 3
    assert ok["ok"]
    bad = class_structure_verify(2, [(1, 2, 0)], complete=False)
    assert not bad["ok"]  # opposite-parity vector fails the pointwise check


@pytest.mark.parametrize("m", range(2, 7))
def test_class_structure_on_enumerated_points(m):
    points = [p for p in enumerate_eigen_lattice(m).points if any(p)]
    report = class_structure_verify(m, points)
    assert report["ok"], report["failures"][:3]
