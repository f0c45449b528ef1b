from fractions import Fraction

import pytest

from e36verify.characters import (ModuleLabel, ch_irreducible, ch_verma, closed_form_a, closed_form_a_zero,
                                  d_series_shift, dim_f, dual_piece_label, dual_piece_sizes,
                                  enumerated_verma_series, label_from_weight, label_of, negative_coefficients,
                                  parity_split, size_formula, size_of, verify_sizes, verma_size)
from e36verify.exact_linalg import RationalFunction, series_of
from e36verify.exceptions import NotDegenerate
from e36verify.nabla_operators import Node


@pytest.mark.parametrize("series, a, r, size", [
    ('A', 1, 1, 16), ('A', 0, 1, 1), ('A', 1, 0, 3), ('A', 0, 0, 0), ('B', 0, 0, 5),
    ('D', 1, 0, 45), ('D', 2, 1, 147), ('D', 1, 1, 79),
])
def test_sizes(series, a, r, size):
    label = ModuleLabel(series, a, r)
    assert size_formula(label) == size
    assert size_of(label) == size


def test_parity_split_is_balanced():
    for label in (ModuleLabel('A', 1, 2), ModuleLabel('C', 0, 1), ModuleLabel('D', 1, 1)):
        even, odd = parity_split(label)
        assert even == odd == size_of(label) / 2


def test_labels():
    assert str(ModuleLabel('D', 1, 1)) == 'I(0,1;1;1/3)'
    assert str(ModuleLabel('A', 0, 1)) == 'I(0,0;1;-1)'
    assert label_of(Node('C', 0, 0)) == ModuleLabel('C', 0, 0)
    assert label_of(Node('D', -1, -2)) == ModuleLabel('D', 1, 2)
    assert label_from_weight(0, 0, 0, 2) == ModuleLabel('B', 0, 0)
    assert label_from_weight(0, 1, 1, Fraction(1, 3)) == ModuleLabel('D', 1, 1)
    with pytest.raises(NotDegenerate):
        label_of(Node('A', -1, 0))
    with pytest.raises(NotDegenerate):
        label_from_weight(1, 1, 0, 0)


def test_trivial_module():
    assert ch_irreducible(ModuleLabel('A', 0, 0)) == RationalFunction.constant(1)
    assert ch_irreducible(ModuleLabel('D', 0, 0)) == 1


def test_verma_characters():
    assert dim_f(1, 1, 1) == 16
    assert verma_size(1, 0, 2) == 16 * dim_f(1, 0, 2)
    with pytest.raises(ValueError):
        ch_verma(0, 0, 0, Fraction(1, 2))


@pytest.mark.parametrize("p, q, r, y", [(0, 0, 0, 0), (1, 0, 1, Fraction(-1, 3)), (0, 1, 0, Fraction(4, 3))])
def test_verma_series_counts_pbw_monomials(p, q, r, y):
    base = int(-3 * y)
    expected = enumerated_verma_series(p, q, r, y, 4).coefficients
    assert series_of(ch_verma(p, q, r, y), base + 4).coefficients == expected


@pytest.mark.parametrize("r", [1, 2, 3])
def test_closed_form_a_zero(r):
    assert ch_irreducible(ModuleLabel('A', 0, r)) == closed_form_a_zero(r)


@pytest.mark.parametrize("p, r", [(1, 0), (2, 1), (2, 2)])
def test_closed_form_a(p, r):
    assert ch_irreducible(ModuleLabel('A', p, r)) == closed_form_a(p, r)


@pytest.mark.parametrize("q, r", [(0, 1), (2, 0), (2, 2)])
def test_d_series_by_inversion(q, r):
    left, inverted, _ = d_series_shift(q, r)
    assert left == inverted


def test_dual_pieces():
    assert dual_piece_label(-1) == ModuleLabel('A', 0, 1)
    assert dual_piece_label(2) == ModuleLabel('B', 0, 1)
    for j, (computed, expected) in dual_piece_sizes(4).items():
        assert computed == expected == 2 * j + 3
    with pytest.raises(ValueError):
        dual_piece_label(-2)


@pytest.mark.parametrize("label", [ModuleLabel('A', 1, 1), ModuleLabel('B', 1, 0), ModuleLabel('D', 1, 2)])
def test_characters_are_positive(label):
    assert negative_coefficients(label, 8) is None


def test_verify_sizes():
    rows = verify_sizes(2)
    assert len(rows) == 4 * 9
    assert all(row.passed for row in rows), [str(row.label) for row in rows if not row.passed]
    exceptional, = [row for row in rows if row.label == ModuleLabel('D', 1, 1)]
    assert exceptional.computed == 79
