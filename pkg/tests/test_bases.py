import random
from fractions import Fraction

import pytest

from dsfaces.bases import (
    BASIS_KINDS,
    bases_from_chain,
    basis_vectors,
    boundary_f,
    boundary_h,
    canonical_chain,
    coords,
    fh_bar,
    six_bases,
    table1_entry,
    verify_table1,
)
from dsfaces.exact_linalg import rank
from dsfaces.face_systems import boundary_complex, long_f, long_h


def test_basis_examples_m2():
    assert basis_vectors("Flower", 2)[1] == (1, 1, 0)
    assert basis_vectors("Hdot", 2)[0] == (1, -2, 1)
    assert basis_vectors("Fupper", 2)[0] == (0, 0, 1)


def test_standard_basis_is_standard():
    assert basis_vectors("S", 3) == (
        (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)
    )


@pytest.mark.parametrize("m", range(2, 7))
def test_hupper_is_reversed_standard(m):
    expected = tuple(reversed(basis_vectors("S", m)))
    assert basis_vectors("Hupper", m) == expected


@pytest.mark.parametrize("m", range(2, 9))
def test_all_families_are_bases(m):
    for kind in BASIS_KINDS:
        assert rank(basis_vectors(kind, m)) == m + 1


@pytest.mark.parametrize("m", range(2, 7))
def test_chain_independence(m):
    canonical = six_bases(m)
    rng = random.Random(m * 101)
    for _ in range(20):
        order = list(range(1, m + 1))
        rng.shuffle(order)
        chain = tuple(frozenset(order[:k]) for k in range(m + 1))
        assert bases_from_chain(chain, m) == canonical


def test_coords_examples():
    assert coords(boundary_h(1, 2), "Hdot", 2) == (1, 0, 0)
    # closed form (-1)^(k-l) (delta - C(k,l)) at k=2, m=3, checked by solve
    assert coords(boundary_f(2, 3), "Flower", 3) == (-1, 2, 0, 0)
    w = (4, -7, 11)
    assert coords(w, "S", 2) == w


def test_coords_rejects_bad_length():
    with pytest.raises(ValueError):
        coords((1, 2, 3), "S", 3)


@pytest.mark.parametrize("m", range(2, 9))
def test_reconstruction(m):
    rng = random.Random(m * 17)
    for _ in range(10):
        w = tuple(rng.randint(-30, 30) for _ in range(m + 1))
        for kind in BASIS_KINDS:
            basis = basis_vectors(kind, m)
            c = coords(w, kind, m)
            recon = tuple(
                sum(c[i] * basis[i][l] for i in range(m + 1))
                for l in range(m + 1)
            )
            assert recon == w


def test_fh_bar_examples():
    assert fh_bar("h", 1, 2) == (1, -2, 1)
    assert fh_bar("f", 2, 3) == (1, 2, 0, 0)
    assert fh_bar("h", 2, 2) == (1, 0, -1)
    assert fh_bar("h", 2, 2) == long_h(boundary_complex(2, 2))
    with pytest.raises(ValueError):
        fh_bar("f", 0, 3)
    with pytest.raises(ValueError):
        fh_bar("f", 4, 3)


@pytest.mark.parametrize("m", range(2, 9))
def test_fh_bar_matches_explicit_complex(m):
    for k in range(1, m + 1):
        system = boundary_complex(k, m)
        assert boundary_f(k, m) == long_f(system)
        assert boundary_h(k, m) == long_h(system)


def test_table1_entry_examples():
    assert table1_entry("f", "Hupper", 1, 2, 2) == 1
    assert table1_entry("h", "S", 1, 0, 2) == 1
    for k in range(1, 4):
        assert table1_entry("h", "Hlower", k, k, 4) == 0


def test_table1_entry_range_checks():
    with pytest.raises(ValueError):
        table1_entry("h", "S", 0, 0, 3)
    with pytest.raises(ValueError):
        table1_entry("h", "S", 1, 5, 3)
    with pytest.raises(ValueError):
        table1_entry("g", "S", 1, 1, 3)
    with pytest.raises(ValueError):
        table1_entry("h", "Q", 1, 1, 3)


def test_fractional_intermediate_values_cancel():
    # rows with 2^(negative) factors only ever multiply a vanishing binomial
    val = table1_entry("f", "Hlower", 1, 0, 2)
    assert val == Fraction(0)


@pytest.mark.parametrize("m", [2, 5, 8])
def test_verify_table1(m):
    report = verify_table1(m)
    assert report["ok"], report["failures"][:3]
    assert report["checked"] == 12 * m * (m + 1)


@pytest.mark.parametrize("m", range(2, 7))
def test_table1_values_are_integers(m):
    """The power-of-two factors in two of the rows are fractional exactly
    when the binomial they multiply vanishes, so every entry is integral."""
    for vec in ("f", "h"):
        for kind in BASIS_KINDS:
            for k in range(1, m + 1):
                for l in range(m + 1):
                    assert table1_entry(vec, kind, k, l, m).denominator == 1


def test_canonical_chain_shape():
    chain = canonical_chain(4)
    assert chain[0] == frozenset()
    assert chain[4] == {1, 2, 3, 4}
    assert all(len(chain[k]) == k for k in range(5))
