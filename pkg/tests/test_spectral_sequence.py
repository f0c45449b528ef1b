from fractions import Fraction

import pytest

from e36verify.exact_linalg import SparseMatrix
from e36verify.exceptions import CompositionNotZero
from e36verify.nabla_operators import Node
from e36verify.spectral_sequence import (FilteredComplex, converge, degeneration_report, page,
                                         page_recurrence_holds, random_filtered_complex, verma_filtered_complex)


@pytest.fixture
def hand_complex():
    # x at level 2, y at level 0, z at level 1, dx = y
    return FilteredComplex(SparseMatrix(3, 3, {(1, 0): Fraction(1)}), (2, 0, 1), 1, 'hand')


def test_hand_example(hand_complex):
    result = converge(hand_complex)
    assert result.stable_page == 3
    assert result.limit == {0: 0, 1: 1, 2: 0}
    assert result.agrees
    assert degeneration_report(hand_complex, 1) == (False, 2)
    assert page(hand_complex, 0).dims == {0: 1, 1: 1, 2: 1}


def test_zero_differential():
    fc = FilteredComplex(SparseMatrix.zero(4, 4), (0, 1, 1, 2), 1, 'zero')
    for r in range(4):
        assert page(fc, r).dims == {0: 1, 1: 2, 2: 1}
    assert degeneration_report(fc, 0) == (True, None)


@pytest.mark.parametrize("seed", range(5))
def test_random_complexes_converge(seed):
    fc = random_filtered_complex(seed, dim=10, shift=seed % 3)
    result = converge(fc)
    assert result.agrees
    assert sum(result.limit.values()) == fc.homology_dimension()
    assert page_recurrence_holds(fc, fc.shift - 1)


def test_pages_below_start_are_the_associated_graded():
    fc = random_filtered_complex(3, dim=6, shift=2)
    graded = {p: fc.levels.count(p) for p in fc.filtration_range}
    for r in (-1, 0):
        early = page(fc, r)
        assert early.dims == graded
        assert early.is_zero_differential()
    assert page(fc, 1).dims == graded


def test_verma_complex_degenerates_at_first_page():
    fc = verma_filtered_complex('A', Node('A', 2, 2), 1, 3)
    assert fc.shift == 0
    assert degeneration_report(fc, 1) == (True, None)
    assert converge(fc).agrees


def test_rejects_bad_differentials():
    with pytest.raises(CompositionNotZero):
        FilteredComplex(SparseMatrix(2, 2, {(0, 1): 1, (1, 0): 1}), (0, 0))
    with pytest.raises(ValueError):
        FilteredComplex(SparseMatrix(2, 2, {(1, 0): 1}), (0, 1))
